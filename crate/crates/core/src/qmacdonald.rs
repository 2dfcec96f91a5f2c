//! q-Bessel-Macdonald functions
//!
//! ```text
//! K_ν^(j)((1−q²)z; q²) = ½ q^{−ν²+ν} Γ_{q²}(ν) Γ_{q²}(1−ν) (I_{−ν}^(j) − I_ν^(j))
//! ```
//!
//! for all three kinds. (The general definition weights the two terms by
//! `√(a_ν/a_{−ν})` and its inverse; with `a_ν = a_{−ν}` both weights are 1.)
//! Integer orders are two-sided ε-limits.

use serde::Serialize;

use crate::cx::{self, C};
use crate::error::{QError, QResult};
use crate::qbessel::identities::{ladder_generic, recurrence_generic};
use crate::qbessel::wronskian::wronskian_factor;
use crate::qbessel::{fundamental_system_degenerate, i_eval_path, modified_i, EvalPath, Kind, Recurrence, Residual};
use crate::qcore::{e_big, e_small, qgamma_real, QBase, SeriesPolicy, SeriesResult};
use crate::qlaurent::{a_coeff, integer_limit, phi_nu};
use crate::real::Real;

/// A fully specified evaluation point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MacdonaldPoint<R = f64> {
    pub kind: Kind,
    pub nu: R,
    pub z: C<R>,
    pub qb: QBase<R>,
}

impl<R: Real> MacdonaldPoint<R> {
    pub fn value(&self, policy: &SeriesPolicy) -> QResult<SeriesResult<R>> {
        macdonald_k(self.kind, self.nu, self.z, &self.qb, policy)
    }
}

fn k_direct<R: Real>(kind: Kind, nu: R, z: C<R>, qb: &QBase<R>, policy: &SeriesPolicy) -> QResult<SeriesResult<R>> {
    let q2 = qb.q_sq();
    let pre = qb.q().powf(nu - nu * nu) * qgamma_real(nu, q2)? * qgamma_real(R::one() - nu, q2)? / R::from_f64(2.0);
    let minus = modified_i(kind, -nu, z, qb, policy)?;
    let plus = modified_i(kind, nu, z, qb, policy)?;
    Ok(minus.combine(cx::re(pre), plus, cx::re(-pre)))
}

/// `[K_{n+ε} + K_{n−ε}]/2`, the symmetric approximant whose `ε → 0` limit
/// defines integer orders.
pub fn k_symmetric<R: Real>(kind: Kind, n: R, eps: R, z: C<R>, qb: &QBase<R>, policy: &SeriesPolicy) -> QResult<C<R>> {
    let a = k_direct(kind, n + eps, z, qb, policy)?.value;
    let b = k_direct(kind, n - eps, z, qb, policy)?.value;
    Ok((a + b) / R::from_f64(2.0))
}

/// How [`macdonald_k`] evaluates at this point.
pub fn k_eval_path<R: Real>(kind: Kind, nu: R, z: C<R>, qb: &QBase<R>) -> EvalPath {
    if fundamental_system_degenerate(nu) {
        EvalPath::Limit
    } else {
        i_eval_path(kind, z, qb)
    }
}

/// `K_ν^(j)((1−q²)z; q²)`. Even in `ν` bit for bit: the order is replaced by
/// `|ν|` before anything is computed.
pub fn macdonald_k<R: Real>(
    kind: Kind,
    nu: R,
    z: C<R>,
    qb: &QBase<R>,
    policy: &SeriesPolicy,
) -> QResult<SeriesResult<R>> {
    policy.validate()?;
    if !nu.is_finite() || !cx::is_finite(z) {
        return Err(QError::Domain("non-finite order or argument".into()));
    }
    if cx::abs(z) == R::zero() {
        return Err(QError::ZeroArgument);
    }
    let nu = nu.abs();
    if fundamental_system_degenerate(nu) {
        let n = nu.round();
        let (_, e2) = crate::qlaurent::limit_steps::<R>();
        let diag = k_direct(kind, n + e2, z, qb, policy)?;
        let value = integer_limit(n, |x| k_direct(kind, x, z, qb, policy).map(|r| r.value))?;
        return Ok(SeriesResult { value, ..diag });
    }
    k_direct(kind, nu, z, qb, policy)
}

fn closed_common<R: Real>(nu: R, z: C<R>, qb: &QBase<R>, policy: &SeriesPolicy, phi: C<R>) -> QResult<C<R>> {
    let a = a_coeff(nu, qb, policy)?.value * a_coeff(-nu, qb, policy)?.value;
    let pre = qb.q().powf(R::from_f64(0.5) - nu * nu) / (R::from_f64(2.0) * a.sqrt());
    Ok(phi * phi_nu(nu, -z, qb, policy)?.value * pre / cx::sqrt(z))
}

/// `K^(1)` as `q^{−ν²+½}/(2√(a_ν a_{−ν}) √z) · e_q(−(1−q²)z/2) Φ_ν(−z)`,
/// valid for `Re z > 2q/(1−q²)`.
pub fn macdonald_k1_closed<R: Real>(nu: R, z: C<R>, qb: &QBase<R>, policy: &SeriesPolicy) -> QResult<C<R>> {
    if !(z.re > qb.laurent_radius()) {
        return Err(QError::Domain(format!("closed form of K^(1) needs Re z > 2q/(1-q^2) = {}", qb.laurent_radius())));
    }
    closed_common(nu, z, qb, policy, e_small(-(z * qb.lambda()), qb.q())?)
}

/// `K^(2)` as `q^{−ν²+½}/(2√(a_ν a_{−ν}) √z) · E_q(−(1−q²)z/2) Φ_ν(−z)`,
/// evaluated where the `Φ_ν` series converges, `|z| > 2q/(1−q²)`.
pub fn macdonald_k2_closed<R: Real>(nu: R, z: C<R>, qb: &QBase<R>, policy: &SeriesPolicy) -> QResult<C<R>> {
    if !(cx::abs(z) > qb.laurent_radius()) {
        return Err(QError::Domain(format!("closed form of K^(2) needs |z| > 2q/(1-q^2) = {}", qb.laurent_radius())));
    }
    closed_common(nu, z, qb, policy, e_big(-(z * qb.lambda()), qb.q())?)
}

/// The two ladder maps of `K`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum KLadder {
    /// `2/((1+q)z) ∂_q[z^ν K_ν] = −q^{−c(ν−1)} z^{ν−1} K_{ν−1}(q^c z)`.
    Lower,
    /// `2/((1+q)z) ∂_q[z^{−ν} K_ν] = −q^{c(ν+1)} z^{−ν−1} K_{ν+1}(q^c z)`.
    Raise,
}

fn k_family<'a, R: Real>(
    kind: Kind,
    qb: &'a QBase<R>,
    policy: &'a SeriesPolicy,
) -> impl Fn(R, C<R>) -> QResult<C<R>> + 'a {
    move |nu, z| macdonald_k(kind, nu, z, qb, policy).map(|r| r.value)
}

/// Residual of a ladder map for `K` (`c = (2−δ)/2`).
pub fn k_ladder_check<R: Real>(
    kind: Kind,
    nu: R,
    z: C<R>,
    qb: &QBase<R>,
    which: KLadder,
    policy: &SeriesPolicy,
) -> QResult<Residual<R>> {
    let fam = k_family(kind, qb, policy);
    let c: R = kind.shift();
    let one = R::one();
    match which {
        KLadder::Lower => ladder_generic(&fam, kind, z, qb, nu, nu, nu - one, -c * (nu - one), nu - one, -one),
        KLadder::Raise => ladder_generic(&fam, kind, z, qb, -nu, nu, nu + one, c * (nu + one), -nu - one, -one),
    }
}

/// Residual of a three-term relation for `K`: the relations of `I` with
/// the right-hand sides negated.
pub fn k_recurrence_check<R: Real>(
    kind: Kind,
    nu: R,
    z: C<R>,
    qb: &QBase<R>,
    which: Recurrence,
    policy: &SeriesPolicy,
) -> QResult<Residual<R>> {
    recurrence_generic(&k_family(kind, qb, policy), kind, nu, z, qb, which, -R::one())
}

/// Closed form of `W(I_ν, K_ν)(z)`: `½ q^{−ν²}(1−q²)` times `e_{q²}(w²)`,
/// 1 or `E_{q²}(−q²w²)` for δ = 2, 1, 0.
pub fn wronskian_ik<R: Real>(kind: Kind, nu: R, z: C<R>, qb: &QBase<R>) -> QResult<C<R>> {
    let k = qb.q().powf(-nu * nu) * qb.one_minus_q_sq() / R::from_f64(2.0);
    Ok(wronskian_factor(kind, z, qb)? * k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cx::re;
    use crate::qbessel::{q_wronskian, WronskianPair};

    fn qb(q: f64) -> QBase<f64> {
        QBase::new(q).unwrap()
    }

    #[test]
    fn even_in_order() {
        let p = SeriesPolicy::default();
        let b = qb(0.8);
        for nu in [0.7, 2.0] {
            let a = macdonald_k(Kind::Three, nu, re(1.2), &b, &p).unwrap().value;
            let c = macdonald_k(Kind::Three, -nu, re(1.2), &b, &p).unwrap().value;
            assert_eq!(a, c);
        }
    }

    #[test]
    fn small_argument_limit() {
        let p = SeriesPolicy::default();
        let (nu, q) = (1.8, 0.7);
        let b = qb(q);
        let z = 1e-6;
        let v = (z / 2.0).powf(nu) * macdonald_k(Kind::Three, nu, re(z), &b, &p).unwrap().value.re;
        let lim = 0.5 * q.powf(nu - nu * nu) * qgamma_real(nu, q * q).unwrap();
        assert!((v / lim - 1.0).abs() < 1e-8);
    }

    #[test]
    fn decays_along_lattice() {
        let p = SeriesPolicy::default();
        let b = qb(0.8);
        let vals: Vec<f64> = (0..=8)
            .map(|m| {
                let z = 0.8f64.powi(-m) / b.lambda();
                macdonald_k(Kind::Three, 2.0, re(z), &b, &p).unwrap().value.re
            })
            .collect();
        assert!(vals.windows(2).all(|w| w[1] < w[0]), "{vals:?}");
    }

    #[test]
    fn closed_forms_agree_with_combination() {
        let p = SeriesPolicy::default();
        let b = qb(0.5);
        let k1 = macdonald_k1_closed(0.4, re(6.0), &b, &p).unwrap();
        let s1 = macdonald_k(Kind::One, 0.4, re(6.0), &b, &p).unwrap().value;
        assert!(cx::rel_err(k1, s1) < 1e-8, "{k1} {s1}");
        let k2 = macdonald_k2_closed(0.4, re(6.0), &b, &p).unwrap();
        let s2 = macdonald_k(Kind::Two, 0.4, re(6.0), &b, &p).unwrap().value;
        assert!(cx::rel_err(k2, s2) < 1e-8, "{k2} {s2}");
        assert!(k1.im.abs() < 1e-10 * k1.norm());
        assert!(matches!(macdonald_k1_closed(0.5, re(0.1), &qb(0.9), &p), Err(QError::Domain(_))));
    }

    #[test]
    fn ladders_and_recurrences() {
        let p = SeriesPolicy::default();
        let r = k_ladder_check(Kind::Three, 1.1, re(0.9), &qb(0.85), KLadder::Lower, &p).unwrap();
        assert!(r.relative < 1e-9, "{}", r.relative);
        let r = k_ladder_check(Kind::Two, 0.6, re(1.4), &qb(0.7), KLadder::Raise, &p).unwrap();
        assert!(r.relative < 1e-9, "{}", r.relative);
        let r = k_recurrence_check(Kind::One, 0.4, re(4.0), &qb(0.5), Recurrence::Difference, &p).unwrap();
        assert!(r.relative < 1e-9, "{}", r.relative);
        let r = k_recurrence_check(Kind::Three, 2.2, re(1.0), &qb(0.9), Recurrence::Sum, &p).unwrap();
        assert!(r.relative < 1e-9, "{}", r.relative);
    }

    #[test]
    fn wronskian_with_i() {
        let p = SeriesPolicy::default();
        let b = qb(0.7);
        for z in [0.5, 1.3] {
            let pair = WronskianPair {
                f1: |z| modified_i(Kind::Three, 0.8, z, &b, &p).map(|r| r.value),
                f2: |z| macdonald_k(Kind::Three, 0.8, z, &b, &p).map(|r| r.value),
                qb: b,
            };
            let w = q_wronskian(&pair, re(z)).unwrap();
            let c = wronskian_ik(Kind::Three, 0.8, re(z), &b).unwrap();
            assert!(cx::rel_err(w, c) < 1e-9);
        }
    }
}
