//! q-calculus primitives: Pochhammer symbols, q-gamma, the q-exponentials,
//! basic hypergeometric series, the q-derivative and Jackson integrals.

mod base;
mod calculus;
mod exp;
mod gamma;
mod hyper;
mod pochhammer;
pub(crate) mod series;

pub use base::QBase;
pub use calculus::{jackson_integral_bilateral, jackson_sum, q_derivative, Sides};
pub(crate) use exp::{e_big, e_small, exp_small_pole};
pub use exp::{q_exp_big, q_exp_big_product, q_exp_big_series, q_exp_small, q_exp_small_product, q_exp_small_series};
pub use gamma::{qgamma, qgamma_real, rqgamma_real};
pub use hyper::{basic_hyper, q_binomial};
pub(crate) use pochhammer::{prod_inf_real, prod_ratio};
pub use pochhammer::{q_number, qpoch_finite, qpoch_infinite};
pub use series::{CompensatedSum, SeriesPolicy, SeriesResult};

use crate::error::{QError, QResult};
use crate::real::Real;

/// Distance (in the natural scaled coordinate) below which an argument
/// counts as sitting on a pole.
pub const POLE_TOL: f64 = 1e-12;

pub(crate) fn check_base<R: Real>(base: R) -> QResult<()> {
    if base.is_finite() && base > R::zero() && base < R::one() {
        Ok(())
    } else {
        Err(QError::InvalidBase(base.to_f64()))
    }
}
