//! The Jackson q-derivative and q-integral.

use num_traits::Zero;

use super::check_base;
use super::series::{CompensatedSum, SeriesPolicy};
use crate::cx::{self, C};
use crate::error::{QError, QResult};
use crate::real::Real;

/// `∂_q f(z) = (f(z) − f(qz)) / ((1 − q) z)`.
pub fn q_derivative<R: Real>(f: impl Fn(C<R>) -> QResult<C<R>>, z: C<R>, base: R) -> QResult<C<R>> {
    check_base(base)?;
    if cx::abs(z).to_f64() < SeriesPolicy::default().floor_scale {
        return Err(QError::ZeroArgument);
    }
    Ok((f(z)? - f(z * base)?) / (z * (R::one() - base)))
}

/// Which half-lattices a Jackson sum visits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sides {
    /// `s = +q^m` only.
    Positive,
    /// `s = ±q^m`.
    Both,
}

/// `(1 − q) Σ_{m=lo}^{hi} q^m [f(q^m) (+ f(−q^m))]` over a fixed window,
/// summed in increasing `m`.
pub fn jackson_sum<R: Real>(
    f: impl Fn(C<R>) -> QResult<C<R>>,
    base: R,
    lo: i64,
    hi: i64,
    sides: Sides,
) -> QResult<C<R>> {
    check_base(base)?;
    let mut acc = CompensatedSum::new();
    for m in lo..=hi {
        acc.add(shell(&f, base, m, sides)?);
    }
    Ok(acc.value() * (R::one() - base))
}

fn shell<R: Real>(f: &impl Fn(C<R>) -> QResult<C<R>>, base: R, m: i64, sides: Sides) -> QResult<C<R>> {
    let s = base.powi(m);
    let v = match sides {
        Sides::Positive => f(cx::re(s))?,
        Sides::Both => f(cx::re(s))? + f(cx::re(-s))?,
    };
    Ok(v * s)
}

/// Bilateral Jackson integral `∫_{−∞}^{∞} f(s) d_q s`, starting from the
/// window `[m_min, m_max]` and doubling it until the newly added shells
/// change the sum by less than `eps_series` (relative).
pub fn jackson_integral_bilateral<R: Real>(
    f: impl Fn(C<R>) -> QResult<C<R>>,
    base: R,
    m_min: i64,
    m_max: i64,
    policy: &SeriesPolicy,
) -> QResult<C<R>> {
    check_base(base)?;
    if m_min > m_max {
        return Err(QError::Domain(format!("empty lattice window [{m_min}, {m_max}]")));
    }
    let mut lo = m_min;
    let mut hi = m_max;
    let mut total = jackson_sum(&f, base, lo, hi, Sides::Both)?;
    loop {
        let w = (hi - lo + 1).max(1);
        if (hi - lo + 1 + 2 * w) as usize > policy.max_terms {
            return Err(QError::NotConverged { terms: (hi - lo + 1) as usize, tail: f64::INFINITY });
        }
        let left = jackson_sum(&f, base, lo - w, lo - 1, Sides::Both)?;
        let right = jackson_sum(&f, base, hi + 1, hi + w, Sides::Both)?;
        let added = left + right;
        total = left + total + right;
        lo -= w;
        hi += w;
        let scale = cx::abs(total).to_f64().max(policy.floor_scale);
        if cx::abs(added).to_f64() < policy.eps_series * scale || added.is_zero() {
            return Ok(total);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cx::re;

    #[test]
    fn derivative_of_monomial() {
        let d = q_derivative(|z: C<f64>| Ok(z * z * z), re(2.0), 0.5).unwrap();
        assert!((d - re(7.0)).norm() < 1e-14);
        let c = q_derivative(|_: C<f64>| Ok(re(3.0)), re(2.0), 0.5).unwrap();
        assert_eq!(c, re(0.0));
        assert_eq!(q_derivative(|z: C<f64>| Ok(z), re(0.0), 0.5), Err(QError::ZeroArgument));
    }

    #[test]
    fn odd_integrand_vanishes() {
        let p = SeriesPolicy::default();
        let v = jackson_integral_bilateral(|s: C<f64>| Ok(s * s * s * (-(s * s)).exp()), 0.7, -10, 10, &p).unwrap();
        assert!(v.norm() < 1e-15);
    }

    #[test]
    fn indicator_integrates_to_two() {
        let p = SeriesPolicy::default();
        let q = 0.6;
        let f = |s: C<f64>| Ok(re(if s.norm() <= 1.0 + 1e-12 { 1.0 } else { 0.0 }));
        let v = jackson_integral_bilateral(f, q, 0, 40, &p).unwrap();
        assert!((v.re - 2.0).abs() < 1e-13);
    }
}
