//! Residuals of the difference equation, ladder maps and three-term
//! recurrences.
//!
//! With `c = (2 − δ)/2` and `w = (1 − q²)z/2`:
//!
//! ```text
//! f(z/q) − (q^{−ν} + q^ν) f(z) + f(qz) = q^{−δ} w² f(q^{1−δ} z)
//! 2/((1+q)z) ∂_q[z^ν I_ν](z)      = q^{−c(ν−1)} z^{ν−1} I_{ν−1}(q^c z)
//! 2/((1+q)z) ∂_q[z^ν I_{−ν}](z)   = q^{−c(ν−1)} z^{ν−1} I_{1−ν}(q^c z)
//! q^{−cν} I_{ν−1}(z) ∓ q^{cν} I_{ν+1}(z)
//!     = (2/((1−q²)z)) (q^{−ν} − q^ν) I_ν(q^{δ/2} z)                      (−)
//!     = (4/((1−q²)z)) I_ν(q^{−c} z) − (2/((1−q²)z)) (q^{−ν} + q^ν) I_ν(q^{δ/2} z)  (+)
//! ```
//!
//! The K-functions obey the same ladder and recurrence relations with the
//! right-hand sides negated, so the generic forms here take a sign.

use num_traits::Zero;
use serde::Serialize;

use super::{modified_i, Kind};
use crate::cx::{self, C};
use crate::error::QResult;
use crate::qcore::{q_derivative, QBase, SeriesPolicy};
use crate::real::Real;

/// Raw and scale-normalized residual of one identity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Residual<R = f64> {
    pub raw: C<R>,
    /// Largest magnitude among the participating values.
    pub scale: f64,
    pub relative: f64,
}

impl<R: Real> Residual<R> {
    pub(crate) fn new(raw: C<R>, scale: f64) -> Self {
        let a = cx::abs(raw).to_f64();
        let relative = if scale > 0.0 { a / scale } else { a };
        Self { raw, scale, relative }
    }

    /// `Σ lhs − Σ rhs`, scaled by the largest single term.
    pub(crate) fn from_sides(lhs: &[C<R>], rhs: &[C<R>]) -> Self {
        let raw = lhs.iter().fold(C::<R>::zero(), |a, &b| a + b) - rhs.iter().fold(C::<R>::zero(), |a, &b| a + b);
        let scale = lhs.iter().chain(rhs).map(|&t| cx::abs(t).to_f64()).fold(0.0, f64::max);
        Self::new(raw, scale)
    }
}

/// Residual of the governing difference equation for the solution `f`.
pub fn diffeq_residual<R: Real>(
    kind: Kind,
    nu: R,
    z: C<R>,
    qb: &QBase<R>,
    f: impl Fn(C<R>) -> QResult<C<R>>,
) -> QResult<Residual<R>> {
    let q = qb.q();
    let up = f(z / q)?;
    let mid = f(z)?;
    let down = f(z * q)?;
    let shifted = match kind.delta() {
        2 => up,
        0 => down,
        _ => mid,
    };
    let w = z * qb.lambda();
    let lhs = up - mid * (q.powf(-nu) + q.powf(nu)) + down;
    let rhs = w * w * shifted * q.powi(-i64::from(kind.delta()));
    let scale = [up, mid, down].iter().map(|&v| cx::abs(v).to_f64()).fold(0.0, f64::max);
    Ok(Residual::new(lhs - rhs, scale))
}

/// Which of the two ladder maps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Ladder {
    /// `z^ν I_ν ↦ I_{ν−1}`.
    Nu,
    /// `z^ν I_{−ν} ↦ I_{1−ν}`.
    MinusNu,
}

/// Which three-term relation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Recurrence {
    Difference,
    Sum,
}

/// `2/((1+q)z) ∂_q[z^p f_a](z) = sign·q^{e} z^{p'} f_b(q^c z)` with the
/// exponent bookkeeping supplied by the caller.
#[allow(clippy::too_many_arguments)]
pub(crate) fn ladder_generic<R: Real>(
    fam: &impl Fn(R, C<R>) -> QResult<C<R>>,
    kind: Kind,
    z: C<R>,
    qb: &QBase<R>,
    power: R,
    order_in: R,
    order_out: R,
    q_exp: R,
    z_power: R,
    sign: R,
) -> QResult<Residual<R>> {
    let q = qb.q();
    let c: R = kind.shift();
    let two = R::from_f64(2.0);
    let g = |x: C<R>| -> QResult<C<R>> { Ok(cx::powr(x, power) * fam(order_in, x)?) };
    let lhs = q_derivative(g, z, q)? * two / (z * (R::one() + q));
    let rhs = cx::powr(z, z_power) * fam(order_out, z * q.powf(c))? * (q.powf(q_exp) * sign);
    Ok(Residual::from_sides(&[lhs], &[rhs]))
}

#[allow(clippy::too_many_arguments)]
pub(crate) fn recurrence_generic<R: Real>(
    fam: &impl Fn(R, C<R>) -> QResult<C<R>>,
    kind: Kind,
    nu: R,
    z: C<R>,
    qb: &QBase<R>,
    which: Recurrence,
    sign: R,
) -> QResult<Residual<R>> {
    let q = qb.q();
    let c: R = kind.shift();
    let one = R::one();
    let lower = fam(nu - one, z)? * q.powf(-c * nu);
    let upper = fam(nu + one, z)? * q.powf(c * nu);
    let k = cx::re(R::from_f64(2.0) / qb.one_minus_q_sq()) / z;
    let at_half_delta = fam(nu, z * q.powf(kind.half_delta()))?;
    Ok(match which {
        Recurrence::Difference => {
            let rhs = k * at_half_delta * ((q.powf(-nu) - q.powf(nu)) * sign);
            Residual::from_sides(&[lower, -upper], &[rhs])
        }
        Recurrence::Sum => {
            let first = k * fam(nu, z * q.powf(-c))? * (R::from_f64(2.0) * sign);
            let second = -(k * at_half_delta * ((q.powf(-nu) + q.powf(nu)) * sign));
            Residual::from_sides(&[lower, upper], &[first, second])
        }
    })
}

fn i_family<'a, R: Real>(
    kind: Kind,
    qb: &'a QBase<R>,
    policy: &'a SeriesPolicy,
) -> impl Fn(R, C<R>) -> QResult<C<R>> + 'a {
    move |nu, z| modified_i(kind, nu, z, qb, policy).map(|r| r.value)
}

/// Residual of one of the two ladder maps for `I`.
pub fn ladder_check<R: Real>(
    kind: Kind,
    nu: R,
    z: C<R>,
    qb: &QBase<R>,
    which: Ladder,
    policy: &SeriesPolicy,
) -> QResult<Residual<R>> {
    let fam = i_family(kind, qb, policy);
    let c: R = kind.shift();
    let one = R::one();
    let (order_in, order_out) = match which {
        Ladder::Nu => (nu, nu - one),
        Ladder::MinusNu => (-nu, one - nu),
    };
    ladder_generic(&fam, kind, z, qb, nu, order_in, order_out, -c * (nu - one), nu - one, one)
}

/// Residual of one of the three-term recurrences for `I`.
pub fn recurrence_check<R: Real>(
    kind: Kind,
    nu: R,
    z: C<R>,
    qb: &QBase<R>,
    which: Recurrence,
    policy: &SeriesPolicy,
) -> QResult<Residual<R>> {
    recurrence_generic(&i_family(kind, qb, policy), kind, nu, z, qb, which, R::one())
}
