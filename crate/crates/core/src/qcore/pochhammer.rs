use num_traits::{One, Zero};

use super::check_base;
use super::series::{SeriesPolicy, SeriesResult};
use crate::cx::{self, C};
use crate::error::{QError, QResult};
use crate::real::Real;

/// `(a; base)_n = ∏_{k<n} (1 − a·base^k)`.
pub fn qpoch_finite<R: Real>(a: C<R>, base: R, n: usize) -> C<R> {
    let mut p = C::<R>::one();
    let mut t = a;
    for _ in 0..n {
        p = p * (C::<R>::one() - t);
        t = t * base;
    }
    p
}

/// `(a; base)_∞`, truncated once the factors are 1 to within `eps_series`
/// and the log-remainder `|a|·base^{k+1}/(1 − base)` is below it too.
pub fn qpoch_infinite<R: Real>(a: C<R>, base: R, policy: &SeriesPolicy) -> QResult<SeriesResult<R>> {
    check_base(base)?;
    policy.validate()?;
    if a.is_zero() {
        return Ok(SeriesResult::exact(C::<R>::one(), 1));
    }
    let one_minus_b = (R::one() - base).to_f64();
    let mut p = C::<R>::one();
    let mut t = a;
    let mut run = 0;
    for k in 0..policy.max_terms {
        let f = C::<R>::one() - t;
        if f.is_zero() {
            return Ok(SeriesResult::exact(C::<R>::zero(), k + 1));
        }
        p = p * f;
        run = if cx::abs(t).to_f64() < policy.eps_series { run + 1 } else { 0 };
        t = t * base;
        let pm = cx::abs(p).to_f64();
        let tail = pm * cx::abs(t).to_f64() / one_minus_b;
        if run >= policy.consecutive_small && tail <= policy.eps_series * pm.max(policy.floor_scale) {
            return Ok(SeriesResult { value: p, terms_used: k + 1, tail_bound: tail, converged: true });
        }
    }
    Err(QError::NotConverged { terms: policy.max_terms, tail: f64::INFINITY })
}

/// `(a; base)_∞` at working precision.
pub(crate) fn prod_inf<R: Real>(a: C<R>, base: R) -> QResult<C<R>> {
    qpoch_infinite(a, base, &SeriesPolicy::internal::<R>()).map(|r| r.value)
}

/// Real-argument `(a; base)_∞` at working precision.
pub(crate) fn prod_inf_real<R: Real>(a: R, base: R) -> QResult<R> {
    check_base(base)?;
    let eps = R::epsilon() / R::from_f64(4.0);
    let mut p = R::one();
    let mut t = a;
    for _ in 0..SeriesPolicy::internal::<R>().max_terms {
        if t.abs() < eps * (R::one() - base) {
            return Ok(p);
        }
        p *= R::one() - t;
        t *= base;
    }
    Err(QError::NotConverged { terms: SeriesPolicy::internal::<R>().max_terms, tail: f64::INFINITY })
}

/// `(a; base)_∞ / (b; base)_∞` multiplied factor by factor, so that the
/// quotient stays representable when both products over- or underflow.
pub(crate) fn prod_ratio<R: Real>(a: C<R>, b: C<R>, base: R) -> QResult<C<R>> {
    check_base(base)?;
    let eps = R::epsilon() / R::from_f64(4.0) * (R::one() - base);
    let max_terms = SeriesPolicy::internal::<R>().max_terms;
    let (mut p, mut ta, mut tb) = (C::<R>::one(), a, b);
    for k in 0..max_terms {
        if cx::abs(ta) < eps && cx::abs(tb) < eps {
            return Ok(p);
        }
        let den = C::<R>::one() - tb;
        if den.is_zero() {
            return Err(QError::Pole { what: format!("denominator product vanishes at factor {k}"), r: k as i64 });
        }
        p = p * (C::<R>::one() - ta) / den;
        if p.is_zero() {
            return Ok(p);
        }
        ta = ta * base;
        tb = tb * base;
    }
    Err(QError::NotConverged { terms: max_terms, tail: f64::INFINITY })
}

/// The q-number `[x]_base = (1 − base^x)/(1 − base)`.
pub fn q_number<R: Real>(x: R, base: R) -> R {
    (R::one() - base.powf(x)) / (R::one() - base)
}
