use super::{kind1_pole, Kind};
use crate::cx::{self, C};
use crate::error::QResult;
use crate::qcore::{e_big, e_small, rqgamma_real, QBase, POLE_TOL};
use crate::real::Real;

/// Two solutions of the same difference equation.
pub struct WronskianPair<F1, F2, R = f64> {
    pub f1: F1,
    pub f2: F2,
    pub qb: QBase<R>,
}

/// `W(f1, f2)(z) = f1(z) f2(qz) − f1(qz) f2(z)`.
pub fn q_wronskian<R: Real, F1, F2>(pair: &WronskianPair<F1, F2, R>, z: C<R>) -> QResult<C<R>>
where
    F1: Fn(C<R>) -> QResult<C<R>>,
    F2: Fn(C<R>) -> QResult<C<R>>,
{
    let qz = z * pair.qb.q();
    Ok((pair.f1)(z)? * (pair.f2)(qz)? - (pair.f1)(qz)? * (pair.f2)(z)?)
}

/// True where `I_ν` and `I_{−ν}` coincide (integer `ν`) and stop being a
/// fundamental system.
pub fn fundamental_system_degenerate<R: Real>(nu: R) -> bool {
    (nu - nu.round()).abs().to_f64() < POLE_TOL
}

/// The factor carrying the z-dependence of both Wronskian closed forms:
/// `e_{q²}(w²)` for δ = 2, 1 for δ = 1, `E_{q²}(−q²w²)` for δ = 0.
pub(crate) fn wronskian_factor<R: Real>(kind: Kind, z: C<R>, qb: &QBase<R>) -> QResult<C<R>> {
    let w = z * qb.lambda();
    let w2 = w * w;
    match kind {
        Kind::One => {
            kind1_pole(w, qb, R::one())?;
            e_small(w2, qb.q_sq())
        }
        Kind::Two => e_big(-(w2 * qb.q_sq()), qb.q_sq()),
        Kind::Three => Ok(cx::re(R::one())),
    }
}

/// Closed form of `W(I_ν, I_{−ν})(z)`:
/// `q^{−ν}(1−q²) / (Γ_{q²}(ν) Γ_{q²}(1−ν))` times the kind's factor.
pub fn wronskian_closed_form_ii<R: Real>(kind: Kind, nu: R, z: C<R>, qb: &QBase<R>) -> QResult<C<R>> {
    let q2 = qb.q_sq();
    let k = qb.q().powf(-nu) * qb.one_minus_q_sq() * rqgamma_real(nu, q2)? * rqgamma_real(R::one() - nu, q2)?;
    Ok(wronskian_factor(kind, z, qb)? * k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cx::re;
    use crate::qbessel::modified_i;
    use crate::qcore::SeriesPolicy;

    #[test]
    fn antisymmetry() {
        let b = QBase::new(0.7).unwrap();
        let f = |z: C<f64>| Ok(z * z + re(1.0));
        let g = |z: C<f64>| Ok(z.exp());
        let w1 = q_wronskian(&WronskianPair { f1: f, f2: g, qb: b }, re(0.8)).unwrap();
        let w2 = q_wronskian(&WronskianPair { f1: g, f2: f, qb: b }, re(0.8)).unwrap();
        assert_eq!(w1, -w2);
        assert_eq!(q_wronskian(&WronskianPair { f1: f, f2: f, qb: b }, re(0.8)).unwrap(), re(0.0));
    }

    #[test]
    fn series_match_closed_forms() {
        let p = SeriesPolicy::default();
        let b = QBase::new(0.8).unwrap();
        for k in Kind::ALL {
            let pair = WronskianPair {
                f1: |z| modified_i(k, 0.4, z, &b, &p).map(|r| r.value),
                f2: |z| modified_i(k, -0.4, z, &b, &p).map(|r| r.value),
                qb: b,
            };
            let w = q_wronskian(&pair, re(0.9)).unwrap();
            let c = wronskian_closed_form_ii(k, 0.4, re(0.9), &b).unwrap();
            assert!(cx::rel_err(w, c) < 1e-10, "kind {k}");
        }
    }

    #[test]
    fn middle_branch_is_constant() {
        let b = QBase::new(0.7).unwrap();
        let a = wronskian_closed_form_ii(Kind::Three, 0.3, re(0.5), &b).unwrap();
        let c = wronskian_closed_form_ii(Kind::Three, 0.3, re(2.0), &b).unwrap();
        assert_eq!(a, c);
        assert!(fundamental_system_degenerate(2.0) && !fundamental_system_degenerate(0.3));
    }

    #[test]
    fn second_kind_closed_form_vanishes_on_its_zero_lattice() {
        // E_{q²}(−q²w²) = (q²w²;q²)_∞ vanishes first at w = 1/q
        let q = 0.6;
        let b = QBase::new(q).unwrap();
        let z = re(1.0 / (q * b.lambda()));
        let at_zero = wronskian_closed_form_ii(Kind::Two, 0.4, z, &b).unwrap();
        let nearby = wronskian_closed_form_ii(Kind::Two, 0.4, z * 0.9, &b).unwrap();
        assert!(at_zero.norm() < 1e-14 * nearby.norm());
        let p = SeriesPolicy::default();
        assert!(cx::is_finite(modified_i(Kind::Two, 0.4, z, &b, &p).unwrap().value));
    }
}
