//! Scalar abstraction shared by the standard (`f64`) and extended
//! ([`DoubleDouble`](crate::DoubleDouble)) evaluation paths.
//!
//! Everything numeric in the crate is generic over [`Real`], so the same
//! code produces the fast double-precision value and the ~31-digit oracle
//! value used for golden files.

use std::fmt::{Debug, Display};
use std::ops::{AddAssign, DivAssign, MulAssign, Neg, SubAssign};

use num_traits::Num;

use crate::DoubleDouble;

/// Real scalar with the elementary functions the q-series need.
pub trait Real:
    Num
    + Copy
    + PartialOrd
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
    /// Unit roundoff of the representation.
    fn epsilon() -> Self;
    fn from_f64(x: f64) -> Self;
    fn to_f64(self) -> f64;
    fn pi() -> Self;

    fn abs(self) -> Self;
    fn sqrt(self) -> Self;
    fn exp(self) -> Self;
    fn ln(self) -> Self;
    fn sin(self) -> Self;
    fn cos(self) -> Self;
    fn atan2(self, x: Self) -> Self;
    fn floor(self) -> Self;
    fn is_finite(self) -> bool;
    /// Exact widening to double-double.
    fn to_dd(self) -> DoubleDouble;
    fn from_dd(x: DoubleDouble) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_f64(n as f64)
    }

    fn round(self) -> Self {
        (self + Self::from_f64(0.5)).floor()
    }

    /// `self^p` for `self > 0`.
    fn powf(self, p: Self) -> Self {
        if p == Self::zero() {
            return Self::one();
        }
        (p * self.ln()).exp()
    }

    /// Integer power by repeated squaring (exact in the exponent).
    fn powi(self, n: i64) -> Self {
        let mut base = if n < 0 { Self::one() / self } else { self };
        let mut e = n.unsigned_abs();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc *= base;
            }
            base *= base;
            e >>= 1;
        }
        acc
    }

    fn hypot(self, other: Self) -> Self {
        let (a, b) = (self.abs(), other.abs());
        let (big, small) = if a >= b { (a, b) } else { (b, a) };
        if big == Self::zero() {
            return big;
        }
        let r = small / big;
        big * (Self::one() + r * r).sqrt()
    }

    fn max(self, other: Self) -> Self {
        if self >= other {
            self
        } else {
            other
        }
    }

    fn min(self, other: Self) -> Self {
        if self <= other {
            self
        } else {
            other
        }
    }
}

impl Real for f64 {
    fn epsilon() -> Self {
        f64::EPSILON
    }
    fn from_f64(x: f64) -> Self {
        x
    }
    fn to_f64(self) -> f64 {
        self
    }
    fn pi() -> Self {
        std::f64::consts::PI
    }
    fn abs(self) -> Self {
        f64::abs(self)
    }
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    fn exp(self) -> Self {
        f64::exp(self)
    }
    fn ln(self) -> Self {
        f64::ln(self)
    }
    fn sin(self) -> Self {
        f64::sin(self)
    }
    fn cos(self) -> Self {
        f64::cos(self)
    }
    fn atan2(self, x: Self) -> Self {
        f64::atan2(self, x)
    }
    fn floor(self) -> Self {
        f64::floor(self)
    }
    fn round(self) -> Self {
        f64::round(self)
    }
    fn is_finite(self) -> bool {
        f64::is_finite(self)
    }
    fn to_dd(self) -> DoubleDouble {
        DoubleDouble::from(self)
    }
    fn from_dd(x: DoubleDouble) -> Self {
        x.to_f64()
    }
    fn powf(self, p: Self) -> Self {
        f64::powf(self, p)
    }
    fn powi(self, n: i64) -> Self {
        match i32::try_from(n) {
            Ok(n) => f64::powi(self, n),
            Err(_) => f64::powf(self, n as f64),
        }
    }
    fn hypot(self, other: Self) -> Self {
        f64::hypot(self, other)
    }
}
