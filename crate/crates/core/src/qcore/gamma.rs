use super::pochhammer::prod_ratio;
use super::{check_base, POLE_TOL};
use crate::cx::{self, C};
use crate::error::{QError, QResult};
use crate::real::Real;

/// If `x` lies within `POLE_TOL` of `0, −1, −2, …`, the `r` with `x ≈ −r`.
pub(crate) fn gamma_pole<R: Real>(x: R) -> Option<i64> {
    let n = x.round();
    if n <= R::zero() && (x - n).abs().to_f64() < POLE_TOL {
        Some(-n.to_f64() as i64)
    } else {
        None
    }
}

fn pole_error(r: i64) -> QError {
    QError::Pole { what: format!("q-gamma argument x = {}", -r), r }
}

/// `Γ_base(x) = (base;base)_∞ / (base^x;base)_∞ · (1 − base)^{1−x}`.
pub fn qgamma<R: Real>(x: C<R>, base: R) -> QResult<C<R>> {
    check_base(base)?;
    if x.im.abs().to_f64() < POLE_TOL {
        if let Some(r) = gamma_pole(x.re) {
            return Err(pole_error(r));
        }
    }
    // the quotient is taken factor by factor: near q = 1 both products
    // underflow long before their ratio does
    let ratio = prod_ratio(cx::re(base), cx::exp(x * base.ln()), base)?;
    let pw = cx::exp((C::new(R::one(), R::zero()) - x) * (R::one() - base).ln());
    Ok(pw * ratio)
}

/// Real-argument `Γ_base(x)`.
pub fn qgamma_real<R: Real>(x: R, base: R) -> QResult<R> {
    check_base(base)?;
    if let Some(r) = gamma_pole(x) {
        return Err(pole_error(r));
    }
    let ratio = prod_ratio(cx::re(base), cx::re(base.powf(x)), base)?.re;
    Ok((R::one() - base).powf(R::one() - x) * ratio)
}

/// `1/Γ_base(x)`, which is entire: exactly 0 at the poles of Γ.
pub fn rqgamma_real<R: Real>(x: R, base: R) -> QResult<R> {
    check_base(base)?;
    if gamma_pole(x).is_some() {
        return Ok(R::zero());
    }
    let ratio = prod_ratio(cx::re(base.powf(x)), cx::re(base), base)?.re;
    Ok((R::one() - base).powf(x - R::one()) * ratio)
}
