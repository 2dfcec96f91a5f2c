//! The basic hypergeometric series
//! `rΦs(a; b; q, z) = Σ (a;q)_n / ((q;q)_n (b;q)_n) [(−1)ⁿ q^{n(n−1)/2}]^{1+s−r} zⁿ`.

use num_traits::{One, Zero};

use super::check_base;
use super::exp::exp_small_pole;
use super::pochhammer::prod_inf;
use super::series::{sum_terms, SeriesPolicy, SeriesResult};
use crate::cx::{self, C};
use crate::error::{QError, QResult};
use crate::real::Real;

pub fn basic_hyper<R: Real>(
    upper: &[C<R>],
    lower: &[C<R>],
    base: R,
    z: C<R>,
    policy: &SeriesPolicy,
) -> QResult<SeriesResult<R>> {
    check_base(base)?;
    policy.validate()?;
    // an upper parameter base^{-n} cuts the series after n + 1 terms
    let last = upper.iter().filter_map(|&a| exp_small_pole(a, base)).min().map(|n| n as usize);
    for &b in lower {
        if let Some(m) = exp_small_pole(b, base) {
            if last.is_none_or(|n| n > m as usize) {
                return Err(QError::LowerParamPole(format!("lower parameter {} = q^-{m}", cx::to_f64(b))));
            }
        }
    }
    let (r, s) = (upper.len() as i64, lower.len() as i64);
    if last.is_none() && !z.is_zero() {
        if r == s + 1 && cx::abs(z) >= R::one() {
            return Err(QError::DivergentSeries(format!("{r}Φ{s} needs |z| < 1")));
        }
        if r > s + 1 {
            return Err(QError::DivergentSeries(format!("{r}Φ{s} has zero radius of convergence")));
        }
    }
    let power = 1 + s - r;
    let mut t = C::<R>::one();
    let mut bn = R::one();
    sum_terms(policy, last, |n| {
        if n > 0 {
            let mut num = C::<R>::one();
            for &a in upper {
                num = num * (C::<R>::one() - a * bn);
            }
            let mut den = cx::re(R::one() - bn * base);
            for &b in lower {
                den = den * (C::<R>::one() - b * bn);
            }
            let sign = (-bn).powi(power);
            t = t * num / den * z * sign;
            bn *= base;
        }
        t
    })
}

/// The q-binomial theorem, `₁Φ₀(a; −; q, z) = (az;q)_∞/(z;q)_∞`.
pub fn q_binomial<R: Real>(a: C<R>, base: R, z: C<R>) -> QResult<C<R>> {
    check_base(base)?;
    if let Some(r) = exp_small_pole(z, base) {
        return Err(QError::Pole { what: format!("q-binomial argument {} = q^-{r}", cx::to_f64(z)), r });
    }
    Ok(prod_inf(a * z, base)? / prod_inf(z, base)?)
}
