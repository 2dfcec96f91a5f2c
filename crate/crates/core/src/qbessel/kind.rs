use serde::Serialize;

use crate::error::{QError, QResult};
use crate::real::Real;

/// The three families. Each is tied to the `δ` of its difference
/// equation: kind 1 → 2, kind 2 → 0, kind 3 → 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Kind {
    One,
    Two,
    Three,
}

impl Kind {
    pub const ALL: [Kind; 3] = [Kind::One, Kind::Two, Kind::Three];

    pub fn from_j(j: u8) -> QResult<Self> {
        match j {
            1 => Ok(Kind::One),
            2 => Ok(Kind::Two),
            3 => Ok(Kind::Three),
            _ => Err(QError::Domain(format!("kind must be 1, 2 or 3 (got {j})"))),
        }
    }

    pub fn j(self) -> u8 {
        match self {
            Kind::One => 1,
            Kind::Two => 2,
            Kind::Three => 3,
        }
    }

    pub fn delta(self) -> i32 {
        match self {
            Kind::One => 2,
            Kind::Two => 0,
            Kind::Three => 1,
        }
    }

    /// `c = (2 − δ)/2`, the argument shift exponent of the ladder maps.
    pub fn shift<R: Real>(self) -> R {
        R::from_f64(f64::from(2 - self.delta()) / 2.0)
    }

    /// `δ/2`.
    pub fn half_delta<R: Real>(self) -> R {
        R::from_f64(f64::from(self.delta()) / 2.0)
    }
}

impl std::fmt::Display for Kind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.j())
    }
}
