//! Large-argument machinery: `Φ_ν`, the normalization coefficients `a_ν`
//! and the Laurent-type representation of `I^(1)`, `I^(2)`.
//!
//! `Φ_ν(z) = ₂Φ₁(q^{ν+½}, q^{−ν+½}; −q; q, 2q/((1−q²)z))`, convergent for
//! `|z| > 2q/(1−q²)`.

use serde::Serialize;

use crate::cx::{self, C};
use crate::error::{QError, QResult};
use crate::qbessel::{fundamental_system_degenerate, modified_i, Kind};
use crate::qcore::{basic_hyper, e_big, e_small, prod_inf_real, QBase, SeriesPolicy, SeriesResult};
use crate::real::Real;

/// `Φ_ν(z)`; `DivergentSeries` for `|z| ≤ 2q/(1−q²)`.
pub fn phi_nu<R: Real>(nu: R, z: C<R>, qb: &QBase<R>, policy: &SeriesPolicy) -> QResult<SeriesResult<R>> {
    if cx::abs(z) == R::zero() {
        return Err(QError::ZeroArgument);
    }
    let q = qb.q();
    let half = R::from_f64(0.5);
    let upper = [cx::re(q.powf(nu + half)), cx::re(q.powf(half - nu))];
    let x = cx::re(q / qb.lambda()) / z;
    basic_hyper(&upper, &[cx::re(-q)], q, x, policy)
}

/// The coefficient `a_ν` together with where it was computed.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ACoeff<R = f64> {
    pub nu: R,
    pub value: R,
    #[serde(skip)]
    pub qb: QBase<R>,
}

/// Offsets used for ε-limits at integer order, chosen from the working
/// precision: cancellation costs about `log10(1/ε)` digits.
pub(crate) fn limit_steps<R: Real>() -> (R, R) {
    if R::epsilon().to_f64() < 1e-20 {
        (R::from_f64(1e-8), R::from_f64(1e-10))
    } else {
        (R::from_f64(1e-4), R::from_f64(1e-6))
    }
}

/// `lim_{ε→0} [f(n+ε) + f(n−ε)]/2`, Richardson-extrapolated in `ε²` from
/// the two offsets of [`limit_steps`].
pub(crate) fn integer_limit<R: Real>(n: R, f: impl Fn(R) -> QResult<C<R>>) -> QResult<C<R>> {
    let (e1, e2) = limit_steps::<R>();
    let two = R::from_f64(2.0);
    let g = |e: R| -> QResult<C<R>> { Ok((f(n + e)? + f(n - e)?) / two) };
    let (g1, g2) = (g(e1)?, g(e2)?);
    let (s1, s2) = (e1 * e1, e2 * e2);
    Ok((g2 * s1 - g1 * s2) / (s1 - s2))
}

fn a_direct<R: Real>(nu: R, qb: &QBase<R>, policy: &SeriesPolicy) -> QResult<C<R>> {
    // The coefficient of the recessive combination at w = q^{−1/2}, where
    // E_q(−w) = (w;q)_∞ and Φ_ν(−z) are both safely away from zero.
    let q = qb.q();
    let ws = q.powf(R::from_f64(-0.5));
    let zs = cx::re(ws / qb.lambda());
    let diff = modified_i(Kind::Two, -nu, zs, qb, policy)?.value - modified_i(Kind::Two, nu, zs, qb, policy)?.value;
    let den = e_big(cx::re(-ws), q)? * phi_nu(nu, -zs, qb, policy)?.value * (R::from_f64(2.0) * (nu * R::pi()).sin());
    Ok(diff * cx::sqrt(zs) / den)
}

/// `a_ν`, normalized so that `(a_ν/√z)·E_q(−(1−q²)z/2)·Φ_ν(−z)` is the
/// decaying combination `(I^(2)_{−ν} − I^(2)_ν)/(2 sin νπ)`.
///
/// The result satisfies `a_{ν+1} = q^{−ν−½} a_ν`, `a_ν = a_{−ν}` and
/// `a_ν a_{−ν} = q^{−ν+½}/(2 Γ_{q²}(ν) Γ_{q²}(1−ν) sin νπ)`. Integer orders
/// are reached by an ε-limit.
///
/// The difference of the two I-series cancels heavily (about 6 digits at
/// q = 0.8, 22 at q = 0.95), so it is always formed in double-double; past
/// q ≈ 0.9 fewer than 10 correct digits remain.
pub fn a_coeff<R: Real>(nu: R, qb: &QBase<R>, policy: &SeriesPolicy) -> QResult<ACoeff<R>> {
    policy.validate()?;
    if !nu.is_finite() {
        return Err(QError::Domain("non-finite order".into()));
    }
    let wide = QBase::new(qb.q().to_dd())?;
    let wp =
        SeriesPolicy { eps_series: policy.eps_series.min(1e-32), max_terms: policy.max_terms.max(200_000), ..*policy };
    let nd = nu.to_dd();
    let v = if fundamental_system_degenerate(nd) {
        integer_limit(nd.round(), |x| a_direct(x, &wide, &wp))?
    } else {
        a_direct(nd, &wide, &wp)?
    };
    Ok(ACoeff { nu, value: R::from_dd(v.re), qb: *qb })
}

/// The coefficient read off at the lattice point `z = 2/(1−q²)`:
/// `√(2/(1−q²)) I^(2)_ν(2/(1−q²)) / ((−1;q)_∞ Φ_ν(2/(1−q²)))`.
///
/// Kept for comparison; it does not satisfy the ladder and product
/// relations that [`a_coeff`] does.
pub fn a_coeff_lattice<R: Real>(nu: R, qb: &QBase<R>, policy: &SeriesPolicy) -> QResult<ACoeff<R>> {
    let z0 = cx::re(qb.kind1_radius());
    let i2 = modified_i(Kind::Two, nu, z0, qb, policy)?.value;
    let den = phi_nu(nu, z0, qb, policy)?.value * prod_inf_real(-R::one(), qb.q())?;
    Ok(ACoeff { nu, value: (cx::sqrt(z0) * i2 / den).re, qb: *qb })
}

/// `(a_ν/√z)[φ(z)Φ_ν(z) + i e^{iνπ} φ(−z)Φ_ν(−z)]` with `φ = e_q(w)` for
/// kind 1 and `E_q(w)` for kind 2, `w = (1−q²)z/2`.
///
/// Requires `|z| > 2q/(1−q²)`. This reproduces `I_ν` only up to a
/// log-periodic discrepancy of relative size about `exp(−π²/(2 ln q⁻¹))`
/// (~1e−3 at q = 0.5, ~1e−9 at q = 0.8) that does not die out as `|z|`
/// grows.
pub fn laurent_rep_i<R: Real>(
    kind: Kind,
    nu: R,
    z: C<R>,
    qb: &QBase<R>,
    policy: &SeriesPolicy,
) -> QResult<SeriesResult<R>> {
    let phi = |x: C<R>| match kind {
        Kind::One => e_small(x, qb.q()),
        Kind::Two => e_big(x, qb.q()),
        Kind::Three => Err(QError::Domain("the Laurent-type form exists for kinds 1 and 2 only".into())),
    };
    let w = z * qb.lambda();
    let plus = phi_nu(nu, z, qb, policy)?;
    let minus = phi_nu(nu, -z, qb, policy)?;
    let a = a_coeff(nu, qb, policy)?.value;
    let rot = cx::cis(nu * R::pi()) * C::new(R::zero(), R::one());
    let k = cx::re(a) / cx::sqrt(z);
    Ok(plus.combine(phi(w)? * k, minus, phi(-w)? * rot * k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cx::re;
    use crate::qcore::qgamma_real;

    fn qb(q: f64) -> QBase<f64> {
        QBase::new(q).unwrap()
    }

    #[test]
    fn phi_tends_to_one_and_is_even_in_nu() {
        let p = SeriesPolicy::default();
        let b = qb(0.5);
        let far = phi_nu(0.3, re(1e12), &b, &p).unwrap().value;
        assert!((far.re - 1.0).abs() < 1e-11);
        let a = phi_nu(0.3, re(10.0), &b, &p).unwrap().value;
        let c = phi_nu(-0.3, re(10.0), &b, &p).unwrap().value;
        assert!(cx::rel_err(a, c) < 1e-15);
        assert!(matches!(phi_nu(0.3, re(0.5), &b, &p), Err(QError::DivergentSeries(_))));
    }

    #[test]
    fn order_ladder() {
        let p = SeriesPolicy::default();
        let (nu, q) = (0.4, 0.7);
        let b = qb(q);
        let r = a_coeff(nu + 1.0, &b, &p).unwrap().value / a_coeff(nu, &b, &p).unwrap().value;
        assert!((r / q.powf(-nu - 0.5) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn product_formula() {
        let p = SeriesPolicy::default();
        let (nu, q) = (0.3, 0.8);
        let b = qb(q);
        let lhs = a_coeff(nu, &b, &p).unwrap().value * a_coeff(-nu, &b, &p).unwrap().value;
        let g = qgamma_real(nu, q * q).unwrap() * qgamma_real(1.0 - nu, q * q).unwrap();
        let rhs = q.powf(0.5 - nu) / (2.0 * g * (nu * std::f64::consts::PI).sin());
        assert!((lhs / rhs - 1.0).abs() < 1e-9);
    }

    #[test]
    fn integer_order_square() {
        let p = SeriesPolicy::default();
        let q: f64 = 0.6;
        let a1 = a_coeff(1.0, &qb(q), &p).unwrap().value;
        let expect = q.powf(-0.5) * (q.powi(-2)).ln() / (2.0 * std::f64::consts::PI * (1.0 - q * q));
        assert!((a1 * a1 / expect - 1.0).abs() < 1e-6);
    }

    #[test]
    fn positive_on_unit_interval() {
        let p = SeriesPolicy::default();
        for nu in [0.1, 0.5, 0.9] {
            assert!(a_coeff(nu, &qb(0.8), &p).unwrap().value > 0.0);
        }
    }

    #[test]
    fn laurent_form_tracks_the_series() {
        let p = SeriesPolicy::default();
        let b = qb(0.5);
        for z in [8.0, 16.0, 32.0] {
            let v = laurent_rep_i(Kind::Two, 0.3, re(z), &b, &p).unwrap().value;
            let s = modified_i(Kind::Two, 0.3, re(z), &b, &p).unwrap().value;
            assert!(cx::rel_err(v, s) < 1e-2);
        }
        assert!(matches!(laurent_rep_i(Kind::Three, 0.3, re(8.0), &b, &p), Err(QError::Domain(_))));
    }
}
