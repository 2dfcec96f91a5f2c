//! Jackson-integral representations of the K-functions for `ν > 3/2`,
//! the lattice constant `Q_ν` and the normal-ordered kernels.
//!
//! The kernels are power series in a word `(zs)^k` of non-commuting
//! variables with `zs = q·sz`. Before summation each word is rewritten as a
//! multiple of a commuting monomial:
//!
//! ```text
//! z before s:  (zs)^k = q^{−k(k−1)/2} z^k s^k
//! s before z:  (zs)^k = q^{ k(k+1)/2} s^k z^k
//! ```
//!
//! Only the first ordering reproduces `K^(1)`; with it the E-type kernel
//! becomes `e_q(i(1−q²)zs/2)`. The ₀Φ₁ and ₀Φ₂ kernels grow too fast in
//! `s` under either ordering for the lattice integral to converge.

use serde::Serialize;

use crate::cx::{self, C};
use crate::error::{QError, QResult};
use crate::qbessel::Kind;
use crate::qcore::series::{sum_terms, CompensatedSum};
use crate::qcore::{exp_small_pole, prod_inf_real, prod_ratio, qgamma_real, QBase, SeriesPolicy, SeriesResult};
use crate::real::Real;

/// `Q_ν = (1−q) Σ_{m∈ℤ} 1/(q^{m+ν−½} + q^{−m−ν+½})`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct QConst<R = f64> {
    pub nu: R,
    pub value: R,
    #[serde(skip)]
    pub qb: QBase<R>,
    /// Lattice points summed.
    pub terms: usize,
}

const Q_CONST_MAX_TERMS: usize = 50_000_000;

/// Sum until the geometric tail is below the working precision.
pub fn q_const<R: Real>(nu: R, qb: &QBase<R>) -> QResult<QConst<R>> {
    if !nu.is_finite() {
        return Err(QError::Domain("non-finite order".into()));
    }
    let q = qb.q();
    let lnq = q.ln();
    let x = nu - R::from_f64(0.5);
    let eps = R::epsilon();
    let term = |m: i64| {
        let a = ((R::from_i64(m) + x).abs() * lnq).exp();
        a / (R::one() + a * a)
    };
    let mut acc = CompensatedSum::new();
    let mut terms = 0;
    for dir in [1i64, -1] {
        let mut m = if dir > 0 { 0 } else { -1 };
        loop {
            let t = term(m);
            acc.add(cx::re(t));
            terms += 1;
            // terms on the far side of the peak shrink at least like q^|m|
            let past_peak = (R::from_i64(m) + x) * R::from_i64(dir) > R::zero();
            if past_peak && t / (R::one() - q) < eps * acc.value().re {
                break;
            }
            if terms > Q_CONST_MAX_TERMS {
                return Err(QError::NotConverged { terms, tail: t.to_f64() });
            }
            m += dir;
        }
    }
    Ok(QConst { nu, value: acc.value().re * (R::one() - q), qb: *qb, terms })
}

/// The three kernel series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum KernelFamily {
    /// `E_q(iλ zs)`, base q.
    ExpBig,
    /// `₀Φ₁(−; 0; q, iλ zs)`.
    ZeroPhiOne,
    /// `₀Φ₂(−; 0, −q^{½}; q^{½}, −iλ zs)`.
    ZeroPhiTwo,
}

/// How mixed words are normal-ordered.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Ordering {
    #[default]
    ZBeforeS,
    SBeforeZ,
}

impl Ordering {
    /// Exponent `e` in `(zs)^k = q^e × (ordered monomial)`.
    pub fn exponent(self, k: i64) -> i64 {
        match self {
            Ordering::ZBeforeS => -k * (k - 1) / 2,
            Ordering::SBeforeZ => k * (k + 1) / 2,
        }
    }
}

/// A kernel with its ordering, as a series in the commuting product `sz`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NOKernel<R = f64> {
    pub family: KernelFamily,
    pub ordering: Ordering,
    pub qb: QBase<R>,
}

impl<R: Real> NOKernel<R> {
    pub fn new(family: KernelFamily, qb: QBase<R>) -> Self {
        Self { family, ordering: Ordering::default(), qb }
    }

    /// `c_{k+1}/c_k` for the coefficients of `(sz)^k`.
    fn ratio(&self, k: i64) -> C<R> {
        let q = self.qb.q();
        let il = C::new(R::zero(), self.qb.lambda());
        // q^{k(k−1)/2}, q^{k(k−1)} and q^{3k(k−1)/4} for the three families
        let own = match self.family {
            KernelFamily::ExpBig => q.powi(k),
            KernelFamily::ZeroPhiOne => q.powi(2 * k),
            KernelFamily::ZeroPhiTwo => q.powf(R::from_f64(1.5) * R::from_i64(k)),
        };
        let reorder = match self.ordering {
            Ordering::ZBeforeS => q.powi(-k),
            Ordering::SBeforeZ => q.powi(k + 1),
        };
        il * (own * reorder / (R::one() - q.powi(k + 1)))
    }

    /// Coefficient of `(sz)^k`.
    pub fn coeff(&self, k: usize) -> C<R> {
        (0..k as i64).fold(C::<R>::new(R::one(), R::zero()), |c, j| c * self.ratio(j))
    }

    /// Coefficient of the word `(zs)^k` before reordering.
    pub fn word_coeff(&self, k: usize) -> C<R> {
        let q = self.qb.q();
        self.coeff(k) * q.powi(-self.ordering.exponent(k as i64))
    }
}

/// The kernel at the commuting product `x = s·z`.
pub fn no_kernel_eval<R: Real>(
    kernel: &NOKernel<R>,
    s: C<R>,
    z: C<R>,
    policy: &SeriesPolicy,
) -> QResult<SeriesResult<R>> {
    let x = s * z;
    if kernel.family == KernelFamily::ExpBig && kernel.ordering == Ordering::ZBeforeS {
        // coefficients 1/(q;q)_k: the series is e_q and has radius 1
        let y = C::new(R::zero(), kernel.qb.lambda()) * x;
        if let Some(r) = exp_small_pole(y, kernel.qb.q()) {
            return Err(QError::Pole { what: format!("kernel argument {} = q^-{r}", cx::to_f64(y)), r });
        }
        return Ok(SeriesResult::exact(prod_ratio(C::<R>::new(R::zero(), R::zero()), y, kernel.qb.q())?, 0));
    }
    let mut t = C::<R>::new(R::one(), R::zero());
    sum_terms(policy, None, |k| {
        if k > 0 {
            t = t * kernel.ratio(k as i64 - 1) * x;
        }
        t
    })
}

struct Representation<R> {
    prefactor: R,
    family: KernelFamily,
    /// `(c_num, c_den)` in `(−c_num s²;q²)_∞ / (−c_den s²;q²)_∞`.
    weight: (R, R),
}

fn representation<R: Real>(kind: Kind, nu: R, qb: &QBase<R>) -> QResult<Representation<R>> {
    let (q, q2) = (qb.q(), qb.q_sq());
    let half = R::from_f64(0.5);
    let quarter = R::from_f64(0.25);
    let g = qgamma_real(nu + half, q2)? * qgamma_real(half, q2)? / R::from_f64(4.0);
    let one = R::one();
    Ok(match kind {
        Kind::One => Representation {
            prefactor: q.powf(half - nu * nu) * g / q_const(nu, qb)?.value,
            family: KernelFamily::ExpBig,
            weight: (q2, q.powf(one - R::from_f64(2.0) * nu)),
        },
        Kind::Two => Representation {
            prefactor: q.powf(nu - nu * nu) * g / q_const(half, qb)?.value,
            family: KernelFamily::ZeroPhiOne,
            weight: (q.powf(R::from_f64(2.0) * nu + one), one),
        },
        Kind::Three => Representation {
            prefactor: q.powf(nu * half + quarter - nu * nu) * g / q_const(nu * half + quarter, qb)?.value,
            family: KernelFamily::ZeroPhiTwo,
            weight: (q.powf(nu + R::from_f64(1.5)), q.powf(half - nu)),
        },
    })
}

/// The even weight of the kind's representation at `s`.
pub fn integral_weight<R: Real>(kind: Kind, nu: R, s: C<R>, qb: &QBase<R>) -> QResult<C<R>> {
    let (a, b) = representation(kind, nu, qb)?.weight;
    weight_at(a, b, s, qb)
}

fn weight_at<R: Real>(a: R, b: R, s: C<R>, qb: &QBase<R>) -> QResult<C<R>> {
    let s2 = s * s;
    prod_ratio(-(s2 * a), -(s2 * b), qb.q_sq())
}

const WINDOW_STEP: i64 = 8;
const WINDOW_CAP: i64 = 400;
const SHELL_TOL: f64 = 1e-12;

/// `∫_{−∞}^{∞} f(s) d_q s` over the symmetric window `m ∈ [−M, M]`, `M`
/// grown in steps of 8 until both outermost shells are below 1e−12 of the
/// total. Fails with `NotConverged` past `M = 400`.
pub fn lattice_integral<R: Real>(f: impl Fn(C<R>) -> QResult<C<R>>, qb: &QBase<R>) -> QResult<SeriesResult<R>> {
    let q = qb.q();
    let shell = |m: i64| -> QResult<C<R>> {
        let s = q.powi(m);
        Ok((f(cx::re(s))? + f(cx::re(-s))?) * s)
    };
    let mut acc = CompensatedSum::new();
    acc.add(shell(0)?);
    let mut m = 0;
    loop {
        let mut outer = (C::<R>::new(R::zero(), R::zero()), C::<R>::new(R::zero(), R::zero()));
        for j in m + 1..=m + WINDOW_STEP {
            outer = (shell(-j)?, shell(j)?);
            acc.add(outer.0);
            acc.add(outer.1);
        }
        m += WINDOW_STEP;
        let total = cx::abs(acc.value()).to_f64();
        let edge = cx::abs(outer.0).to_f64().max(cx::abs(outer.1).to_f64());
        if !total.is_finite() {
            return Err(QError::NotConverged { terms: (2 * m + 1) as usize, tail: f64::INFINITY });
        }
        if edge < SHELL_TOL * total {
            return Ok(SeriesResult {
                value: acc.value() * (R::one() - q),
                terms_used: (2 * m + 1) as usize,
                tail_bound: edge * (1.0 - q.to_f64()),
                converged: true,
            });
        }
        if m >= WINDOW_CAP {
            return Err(QError::NotConverged { terms: (2 * m + 1) as usize, tail: edge * (1.0 - q.to_f64()) });
        }
    }
}

/// `K_ν^(j)` from its Jackson-integral representation, words ordered z
/// before s.
pub fn k_integral_rep<R: Real>(
    kind: Kind,
    nu: R,
    z: C<R>,
    qb: &QBase<R>,
    policy: &SeriesPolicy,
) -> QResult<SeriesResult<R>> {
    k_integral_rep_ordered(kind, nu, z, qb, Ordering::ZBeforeS, policy)
}

/// As [`k_integral_rep`] with an explicit word ordering.
pub fn k_integral_rep_ordered<R: Real>(
    kind: Kind,
    nu: R,
    z: C<R>,
    qb: &QBase<R>,
    ordering: Ordering,
    policy: &SeriesPolicy,
) -> QResult<SeriesResult<R>> {
    if !(nu > R::from_f64(1.5)) {
        return Err(QError::Domain(format!("integral representation needs nu > 3/2, got {nu}")));
    }
    if cx::abs(z) == R::zero() {
        return Err(QError::ZeroArgument);
    }
    let rep = representation(kind, nu, qb)?;
    let kernel = NOKernel { family: rep.family, ordering, qb: *qb };
    let (a, b) = rep.weight;
    let integrand =
        |s: C<R>| -> QResult<C<R>> { Ok(no_kernel_eval(&kernel, s, z, policy)?.value * weight_at(a, b, s, qb)?) };
    let int = lattice_integral(integrand, qb)?;
    let pre = cx::powr(z / R::from_f64(2.0), -nu) * rep.prefactor;
    Ok(int.scaled(pre))
}

/// `2 q^{ν/2−¼} Q_{ν/2+¼} (q^{2ν+1}, q; q²)_∞ / (q^{2ν}, q²; q²)_∞`, the
/// closed form of the lattice integral of the kind-3 weight.
pub fn int_closed_form<R: Real>(nu: R, qb: &QBase<R>) -> QResult<R> {
    let (q, q2) = (qb.q(), qb.q_sq());
    let half = R::from_f64(0.5);
    let quarter = R::from_f64(0.25);
    let two = R::from_f64(2.0);
    let qc = q_const(nu * half + quarter, qb)?.value;
    let num = prod_inf_real(q.powf(two * nu + R::one()), q2)? * prod_inf_real(q, q2)?;
    let den = prod_inf_real(q.powf(two * nu), q2)? * prod_inf_real(q2, q2)?;
    Ok(two * q.powf(nu * half - quarter) * qc * num / den)
}

/// The lattice integral of the kind-3 weight, summed directly.
pub fn int_lattice<R: Real>(nu: R, qb: &QBase<R>) -> QResult<SeriesResult<R>> {
    lattice_integral(|s| integral_weight(Kind::Three, nu, s, qb), qb)
}

/// `(z/2)^ν K^(3)_ν` at `z = 0` from the integral representation, divided
/// by `½ q^{−ν²+ν} Γ_{q²}(ν)`; equals 1 when the normalization constant of
/// the kind-3 function is 1.
pub fn small_z_check_k3<R: Real>(nu: R, qb: &QBase<R>) -> QResult<R> {
    if !(nu > R::from_f64(1.5)) {
        return Err(QError::Domain(format!("integral representation needs nu > 3/2, got {nu}")));
    }
    let rep = representation(Kind::Three, nu, qb)?;
    let at_zero = rep.prefactor * int_closed_form(nu, qb)?;
    let target = qb.q().powf(nu - nu * nu) * qgamma_real(nu, qb.q_sq())? / R::from_f64(2.0);
    Ok(at_zero / target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cx::re;
    use crate::qcore::{jackson_sum, Sides};
    use crate::qmacdonald::macdonald_k;

    fn qb(q: f64) -> QBase<f64> {
        QBase::new(q).unwrap()
    }

    #[test]
    fn q_const_is_periodic_in_order() {
        let b = qb(0.8);
        let a = q_const(0.5, &b).unwrap().value;
        let c = q_const(1.5, &b).unwrap().value;
        assert!((a / c - 1.0).abs() < 1e-14);
        assert!(a > 0.0);
    }

    #[test]
    fn q_const_tends_to_half_pi() {
        let errs: Vec<f64> = [0.9, 0.99, 0.999]
            .iter()
            .map(|&q| (q_const(0.75, &qb(q)).unwrap().value - std::f64::consts::FRAC_PI_2).abs())
            .collect();
        assert!(errs[0] > errs[1] && errs[1] > errs[2] && errs[2] < 5e-3, "{errs:?}");
    }

    /// Rewrite the word (zs)^k by adjacent swaps, counting powers of q.
    fn rewrite(k: usize, ordering: Ordering) -> i64 {
        let mut word: Vec<bool> = (0..k).flat_map(|_| [true, false]).collect(); // true = z
        let mut e = 0;
        loop {
            let swap = word.windows(2).position(|w| match ordering {
                Ordering::SBeforeZ => w[0] && !w[1],
                Ordering::ZBeforeS => !w[0] && w[1],
            });
            let Some(i) = swap else { break };
            word.swap(i, i + 1);
            // zs = q sz, so sz = q^{-1} zs
            e += if ordering == Ordering::SBeforeZ { 1 } else { -1 };
        }
        e
    }

    #[test]
    fn reordering_matches_word_rewriting() {
        for ordering in [Ordering::ZBeforeS, Ordering::SBeforeZ] {
            for k in 0..=6 {
                assert_eq!(rewrite(k, ordering), ordering.exponent(k as i64), "{ordering:?} {k}");
            }
        }
        let q = 0.7;
        let kern = NOKernel { family: KernelFamily::ExpBig, ordering: Ordering::SBeforeZ, qb: qb(q) };
        let lam = qb(q).lambda();
        // E_q word coefficient q^{k(k-1)/2} (iλ)^k/(q;q)_k at k = 2
        let expect = C::new(0.0, lam).powi(2) * q / ((1.0 - q) * (1.0 - q * q));
        assert!(cx::rel_err(kern.word_coeff(2), expect) < 1e-14);
        assert!(cx::rel_err(kern.coeff(2), expect * q.powi(3)) < 1e-14);
    }

    #[test]
    fn kernels_are_one_at_origin() {
        let p = SeriesPolicy::default();
        for family in [KernelFamily::ExpBig, KernelFamily::ZeroPhiOne, KernelFamily::ZeroPhiTwo] {
            for ordering in [Ordering::ZBeforeS, Ordering::SBeforeZ] {
                let k = NOKernel { family, ordering, qb: qb(0.6) };
                assert_eq!(no_kernel_eval(&k, re(0.0), re(1.3), &p).unwrap().value, re(1.0));
            }
        }
    }

    #[test]
    fn weight_integral_closed_form() {
        let b = qb(0.8);
        let num = int_lattice(2.0, &b).unwrap().value.re;
        let closed = int_closed_form(2.0, &b).unwrap();
        assert!((num / closed - 1.0).abs() < 1e-10);
    }

    #[test]
    fn even_weight_is_twice_one_side() {
        let b = qb(0.8);
        let f = |s| integral_weight(Kind::Three, 2.0, s, &b);
        let both = jackson_sum(f, 0.8, -100, 100, Sides::Both).unwrap();
        let one = jackson_sum(f, 0.8, -100, 100, Sides::Positive).unwrap();
        assert!((both - one * 2.0).norm() < 1e-15 * both.norm());
    }

    #[test]
    fn unit_normalization_at_small_argument() {
        for (nu, q) in [(2.5, 0.6), (1.75, 0.9)] {
            let r = small_z_check_k3(nu, &qb(q)).unwrap();
            assert!((r - 1.0).abs() < 1e-8, "{nu} {q}: {r}");
        }
    }

    #[test]
    fn first_kind_integral_matches_series() {
        let p = SeriesPolicy::default();
        let b = qb(0.6);
        let int = k_integral_rep(Kind::One, 2.0, re(1.0), &b, &p).unwrap().value;
        let ser = macdonald_k(Kind::One, 2.0, re(1.0), &b, &p).unwrap().value;
        assert!(cx::rel_err(int, ser) < 1e-6, "{int} {ser}");
    }

    #[test]
    fn order_restriction() {
        let p = SeriesPolicy::default();
        assert!(matches!(k_integral_rep(Kind::Three, 1.5, re(1.0), &qb(0.8), &p), Err(QError::Domain(_))));
    }
}
