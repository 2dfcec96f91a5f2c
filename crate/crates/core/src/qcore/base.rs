use crate::error::{QError, QResult};
use crate::real::Real;

/// The deformation parameter `0 < q < 1` together with the derived
/// quantities every series uses.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QBase<R = f64> {
    q: R,
    q_sq: R,
    one_minus_q_sq: R,
}

impl<R: Real> QBase<R> {
    pub fn new(q: R) -> QResult<Self> {
        if !(q.is_finite() && q > R::zero() && q < R::one()) {
            return Err(QError::InvalidBase(q.to_f64()));
        }
        let q_sq = q * q;
        Ok(Self { q, q_sq, one_minus_q_sq: R::one() - q_sq })
    }

    pub fn q(&self) -> R {
        self.q
    }

    pub fn q_sq(&self) -> R {
        self.q_sq
    }

    pub fn one_minus_q_sq(&self) -> R {
        self.one_minus_q_sq
    }

    /// `q^x`.
    pub fn pow(&self, x: R) -> R {
        self.q.powf(x)
    }

    /// `λ = (1 − q²)/2`, the factor mapping `z` to the natural series
    /// variable `w = λz`.
    pub fn lambda(&self) -> R {
        self.one_minus_q_sq / R::from_f64(2.0)
    }

    /// Radius `2/(1 − q²)` of the kind-1 series, also the modulus of its
    /// first pole.
    pub fn kind1_radius(&self) -> R {
        R::one() / self.lambda()
    }

    /// Radius `2q/(1 − q²)` outside of which `Φ_ν` converges.
    pub fn laurent_radius(&self) -> R {
        self.q / self.lambda()
    }

    pub fn to_f64(&self) -> QBase<f64> {
        QBase::new(self.q.to_f64()).expect("a valid base stays valid in f64")
    }
}
