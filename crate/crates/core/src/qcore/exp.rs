//! The two q-exponentials, `e_q(x) = 1/(x;q)_∞` (poles at `q^{−r}`) and
//! `E_q(x) = (−x;q)_∞` (entire), with `e_q(x)·E_q(−x) = 1`.

use num_traits::{One, Zero};

use super::pochhammer::qpoch_infinite;
use super::series::{sum_terms, SeriesPolicy, SeriesResult};
use super::{check_base, POLE_TOL};
use crate::cx::{self, C};
use crate::error::{QError, QResult};
use crate::real::Real;

/// The `r ≥ 0` with `x` within `POLE_TOL` of `base^{−r}`, if any.
pub(crate) fn exp_small_pole<R: Real>(x: C<R>, base: R) -> Option<i64> {
    let m = cx::abs(x);
    if m < R::from_f64(0.5) {
        return None;
    }
    let r = (-(m.ln()) / base.ln()).round();
    if r < R::zero() {
        return None;
    }
    let r = r.to_f64() as i64;
    (cx::abs(x * base.powi(r) - C::<R>::one()).to_f64() < POLE_TOL).then_some(r)
}

fn pole_error<R: Real>(x: C<R>, r: i64) -> QError {
    QError::Pole { what: format!("e_q argument {} = q^-{r}", cx::to_f64(x)), r }
}

/// `e_base(x)` via `Σ xⁿ/(base;base)_n`; only sensible for `|x| < 1`.
pub fn q_exp_small_series<R: Real>(x: C<R>, base: R, policy: &SeriesPolicy) -> QResult<SeriesResult<R>> {
    check_base(base)?;
    policy.validate()?;
    if cx::abs(x) >= R::one() {
        return Err(QError::DivergentSeries("e_q series needs |x| < 1".into()));
    }
    let mut t = C::<R>::one();
    let mut bn = base;
    sum_terms(policy, None, |n| {
        if n > 0 {
            t = t * x / (R::one() - bn);
            bn *= base;
        }
        t
    })
}

/// `e_base(x)` via `1/(x;base)_∞`.
pub fn q_exp_small_product<R: Real>(x: C<R>, base: R, policy: &SeriesPolicy) -> QResult<SeriesResult<R>> {
    check_base(base)?;
    if let Some(r) = exp_small_pole(x, base) {
        return Err(pole_error(x, r));
    }
    let p = qpoch_infinite(x, base, policy)?;
    let inv = C::<R>::one() / p.value;
    Ok(SeriesResult { value: inv, tail_bound: p.tail_bound * cx::abs(inv).to_f64().powi(2), ..p })
}

/// `e_base(x)`: the series for `|x| < 1/2` unless its terms cancel, the
/// product otherwise.
pub fn q_exp_small<R: Real>(x: C<R>, base: R, policy: &SeriesPolicy) -> QResult<SeriesResult<R>> {
    check_base(base)?;
    if let Some(r) = exp_small_pole(x, base) {
        return Err(pole_error(x, r));
    }
    if cx::abs(x) < R::from_f64(0.5) {
        let s = q_exp_small_series(x, base, policy)?;
        // Σ|terms| = e(|x|); for x off the positive axis and base near 1 it
        // can exceed the sum by orders of magnitude
        let magnitude = q_exp_small_series(cx::re(cx::abs(x)), base, policy)?.value.re;
        if magnitude <= R::from_f64(CANCELLATION_LIMIT) * cx::abs(s.value) {
            return Ok(s);
        }
    }
    q_exp_small_product(x, base, policy)
}

const CANCELLATION_LIMIT: f64 = 16.0;

/// `E_base(x)` via `Σ base^{n(n−1)/2} xⁿ/(base;base)_n`.
pub fn q_exp_big_series<R: Real>(x: C<R>, base: R, policy: &SeriesPolicy) -> QResult<SeriesResult<R>> {
    check_base(base)?;
    policy.validate()?;
    let mut t = C::<R>::one();
    let mut bn = R::one();
    sum_terms(policy, None, |n| {
        if n > 0 {
            t = t * x * bn / (R::one() - bn * base);
            bn *= base;
        }
        t
    })
}

/// `E_base(x)` via `(−x;base)_∞`.
pub fn q_exp_big_product<R: Real>(x: C<R>, base: R, policy: &SeriesPolicy) -> QResult<SeriesResult<R>> {
    qpoch_infinite(-x, base, policy)
}

/// `E_base(x)`; the product form, which has no cancellation for large `|x|`.
pub fn q_exp_big<R: Real>(x: C<R>, base: R, policy: &SeriesPolicy) -> QResult<SeriesResult<R>> {
    q_exp_big_product(x, base, policy)
}

/// Working-precision `e_base(x)`.
pub(crate) fn e_small<R: Real>(x: C<R>, base: R) -> QResult<C<R>> {
    if x.is_zero() {
        return Ok(C::<R>::one());
    }
    q_exp_small_product(x, base, &SeriesPolicy::internal::<R>()).map(|r| r.value)
}

/// Working-precision `E_base(x)`.
pub(crate) fn e_big<R: Real>(x: C<R>, base: R) -> QResult<C<R>> {
    q_exp_big_product(x, base, &SeriesPolicy::internal::<R>()).map(|r| r.value)
}
