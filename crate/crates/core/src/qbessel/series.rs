//! Power series of `I_ν^(j)` and `J_ν^(j)` in the rescaled argument.
//!
//! term_k = c_k (1−q²)^k (z/2)^{ν+2k} / ((q²;q²)_k Γ_{q²}(ν+k+1)) with
//! c_k = 1, q^{2k(ν+k)}, q^{k(ν+k)} for kinds 1, 2, 3. Successive terms are
//! generated from the ratio
//!     t_{k+1}/t_k = ρ_k w² / ((1 − q^{2k+2})(1 − q^{2ν+2k+2})),  w = (1−q²)z/2,
//! so only one q-gamma evaluation is needed per series.

use num_traits::{One, Zero};
use serde::Serialize;

use super::Kind;
use crate::cx::{self, C};
use crate::error::{QError, QResult};
use crate::qcore::{
    basic_hyper, e_small, exp_small_pole, prod_ratio, qpoch_finite, rqgamma_real, series::sum_terms, QBase,
    SeriesPolicy, SeriesResult, POLE_TOL,
};
use crate::real::Real;

/// Above this `|w|` the kind-1 series converges too slowly and the
/// continuation through kind 2 is used instead.
pub const KIND1_SWITCH: f64 = 0.9;

/// How a value was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EvalPath {
    Series,
    /// Kind 1 evaluated as `e_{q²}(w²)·I^(2)`.
    Continuation,
    ClosedForm,
    /// Integer order reached by an ε-limit.
    Limit,
}

/// A fully specified evaluation point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BesselPoint<R = f64> {
    pub kind: Kind,
    pub nu: R,
    pub z: C<R>,
    pub qb: QBase<R>,
}

impl<R: Real> BesselPoint<R> {
    pub fn modified_i(&self, policy: &SeriesPolicy) -> QResult<SeriesResult<R>> {
        modified_i(self.kind, self.nu, self.z, &self.qb, policy)
    }

    pub fn jackson_j(&self, policy: &SeriesPolicy) -> QResult<SeriesResult<R>> {
        jackson_j(self.kind, self.nu, self.z, &self.qb, policy)
    }
}

/// If `ν` is (within `POLE_TOL` of) a negative integer `−n`, return `n`.
pub(crate) fn negative_integer<R: Real>(nu: R) -> Option<i64> {
    let n = nu.round();
    (n < R::zero() && (nu - n).abs().to_f64() < POLE_TOL).then(|| -n.to_f64() as i64)
}

/// Which path `modified_i` takes at this point.
pub fn i_eval_path<R: Real>(kind: Kind, z: C<R>, qb: &QBase<R>) -> EvalPath {
    if kind == Kind::One && (cx::abs(z) * qb.lambda()).to_f64() >= KIND1_SWITCH {
        EvalPath::Continuation
    } else {
        EvalPath::Series
    }
}

pub(crate) fn kind1_pole<R: Real>(w: C<R>, qb: &QBase<R>, sign: R) -> QResult<()> {
    if let Some(r) = exp_small_pole(w * w * sign, qb.q_sq()) {
        return Err(QError::Pole {
            what: format!("kind-1 pole z = ±2q^-{r}/(1-q^2) (z = {})", cx::to_f64(w / qb.lambda())),
            r,
        });
    }
    Ok(())
}

/// The series with `w²` replaced by `sign·w²` (`+1` for I, `−1` for J).
fn direct_series<R: Real>(
    kind: Kind,
    nu: R,
    z: C<R>,
    qb: &QBase<R>,
    policy: &SeriesPolicy,
    sign: R,
) -> QResult<SeriesResult<R>> {
    let (q, q2) = (qb.q(), qb.q_sq());
    let two = R::from_f64(2.0);
    let (nu, k0) = match negative_integer(nu) {
        Some(n) => (R::from_i64(-n), n as usize),
        None => (nu, 0),
    };
    let half_z = z / two;
    if z.is_zero() {
        return if nu == R::zero() {
            Ok(SeriesResult::exact(C::<R>::one(), 1))
        } else if nu > R::zero() || k0 > 0 {
            Ok(SeriesResult::exact(C::<R>::zero(), 1))
        } else {
            Err(QError::Domain(format!("order {nu} < 0 is singular at z = 0")))
        };
    }
    let w = z * qb.lambda();
    let w2 = w * w * sign;
    // first nonzero term
    let mut t = if k0 == 0 {
        cx::powr(half_z, nu) * rqgamma_real(nu + R::one(), q2)?
    } else {
        // ν = −n: term_n = ± (1−q²)^n (z/2)^n / (q²;q²)_n
        let s = if sign < R::zero() { R::from_i64(if k0 % 2 == 0 { 1 } else { -1 }) } else { R::one() };
        cx::powi(half_z, k0 as i64) * (qb.one_minus_q_sq().powi(k0 as i64) * s) / qpoch_finite(cx::re(q2), q2, k0)
    };
    let k0f = R::from_i64(k0 as i64);
    let mut q2k = q2.powi(k0 as i64 + 1); // q^{2k+2}
    let mut q2nuk = q2.powf(nu + k0f + R::one()); // q^{2ν+2k+2}
    let mut rho = match kind {
        Kind::One => R::one(),
        Kind::Two => q.powf(two * (nu + two * k0f + R::one())),
        Kind::Three => q.powf(nu + two * k0f + R::one()),
    };
    let rho_step = match kind {
        Kind::One => R::one(),
        Kind::Two => q2 * q2,
        Kind::Three => q2,
    };
    sum_terms(policy, None, |n| {
        if n > 0 {
            t = t * w2 * rho / ((R::one() - q2k) * (R::one() - q2nuk));
            q2k *= q2;
            q2nuk *= q2;
            rho *= rho_step;
        }
        if n == 1 && policy.fault != 0.0 {
            t * R::from_f64(1.0 + policy.fault)
        } else {
            t
        }
    })
}

/// `I_ν^(j)((1−q²)z; q²)`.
///
/// For `ν = −n` the series starts at `k = n` (1/Γ vanishes at its poles),
/// which makes `I_{−n} = I_n` hold term by term. Kind 1 beyond
/// `|w| ≥ KIND1_SWITCH` is evaluated as `e_{q²}(w²)·I^(2)`; its poles at
/// `z = ±2q^{−r}/(1−q²)` are reported as errors. `(z/2)^ν` uses the
/// principal branch (cut along the negative real axis).
pub fn modified_i<R: Real>(
    kind: Kind,
    nu: R,
    z: C<R>,
    qb: &QBase<R>,
    policy: &SeriesPolicy,
) -> QResult<SeriesResult<R>> {
    policy.validate()?;
    if !cx::is_finite(z) || !nu.is_finite() {
        return Err(QError::Domain("non-finite order or argument".into()));
    }
    if kind == Kind::One {
        let w = z * qb.lambda();
        kind1_pole(w, qb, R::one())?;
        if i_eval_path(kind, z, qb) == EvalPath::Continuation {
            let factor = e_small(w * w, qb.q_sq())?;
            return Ok(direct_series(Kind::Two, nu, z, qb, policy, R::one())?.scaled(factor));
        }
    }
    direct_series(kind, nu, z, qb, policy, R::one())
}

/// Jackson's `J_ν^(j)((1−q²)z; q²)` via its `δΦ₁` series in base `q²`:
///   δ = 2: ₂Φ₁(0, 0; q^{2ν+2}; q², −w²),
///   δ = 0: ₀Φ₁(−; q^{2ν+2}; q², −q^{2ν+2} w²),
///   δ = 1: ₁Φ₁(0; q^{2ν+2}; q², q^{ν+1} w²),
/// times `(q^{2ν+2};q²)_∞/(q²;q²)_∞ · w^ν`. It satisfies
/// `I_ν(z) = e^{−iνπ/2} J_ν(e^{iπ/2} z)`. Negative integer orders, where
/// the lower parameter is a pole, use the alternating power series.
pub fn jackson_j<R: Real>(
    kind: Kind,
    nu: R,
    z: C<R>,
    qb: &QBase<R>,
    policy: &SeriesPolicy,
) -> QResult<SeriesResult<R>> {
    policy.validate()?;
    if !cx::is_finite(z) || !nu.is_finite() {
        return Err(QError::Domain("non-finite order or argument".into()));
    }
    let (q, q2) = (qb.q(), qb.q_sq());
    let w = z * qb.lambda();
    if kind == Kind::One {
        kind1_pole(w, qb, -R::one())?;
        if (cx::abs(w)).to_f64() >= KIND1_SWITCH {
            let factor = e_small(-(w * w), q2)?;
            return Ok(jackson_j(Kind::Two, nu, z, qb, policy)?.scaled(factor));
        }
    }
    if negative_integer(nu).is_some() || z.is_zero() {
        return direct_series(kind, nu, z, qb, policy, -R::one());
    }
    let b = q2.powf(nu + R::one());
    let lower = [cx::re(b)];
    let w2 = w * w;
    let series = match kind {
        Kind::One => basic_hyper(&[C::<R>::zero(), C::<R>::zero()], &lower, q2, -w2, policy)?,
        Kind::Two => basic_hyper(&[], &lower, q2, -(w2 * b), policy)?,
        Kind::Three => basic_hyper(&[C::<R>::zero()], &lower, q2, w2 * q.powf(nu + R::one()), policy)?,
    };
    let pre = prod_ratio(cx::re(b), cx::re(q2), q2)?.re;
    Ok(series.scaled(cx::powr(w, nu) * pre))
}
