//! Truncation policy, compensated accumulation and the generic summation
//! driver used by every series in the crate.

use num_complex::Complex;
use num_traits::Zero;
use serde::Serialize;

use crate::cx::{self, C};
use crate::error::{QError, QResult};
use crate::real::Real;

/// When to stop summing.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SeriesPolicy {
    /// Relative size below which a term counts as negligible.
    pub eps_series: f64,
    pub max_terms: usize,
    /// How many negligible terms in a row end the sum.
    pub consecutive_small: usize,
    /// Absolute floor for the relative test, so zero sums terminate.
    pub floor_scale: f64,
    /// Relative perturbation applied to the `k = 1` coefficient of the
    /// I-series. Exists so the verification harness can prove it notices
    /// a wrong coefficient; always 0 in normal use.
    #[doc(hidden)]
    pub fault: f64,
}

impl Default for SeriesPolicy {
    fn default() -> Self {
        Self { eps_series: 1e-14, max_terms: 20_000, consecutive_small: 3, floor_scale: 1e-300, fault: 0.0 }
    }
}

impl SeriesPolicy {
    /// Policy for ~31-digit evaluation.
    pub fn oracle() -> Self {
        Self { eps_series: 1e-32, max_terms: 200_000, ..Self::default() }
    }

    pub fn validate(&self) -> QResult<()> {
        if !(self.eps_series > 0.0) || self.max_terms == 0 || self.consecutive_small == 0 {
            return Err(QError::Domain(
                "series policy needs eps_series > 0, max_terms >= 1, consecutive_small >= 1".into(),
            ));
        }
        Ok(())
    }

    /// Policy for infinite products that feed other quantities: the
    /// truncation follows the working precision, not `eps_series`.
    pub(crate) fn internal<R: Real>() -> Self {
        Self { eps_series: R::epsilon().to_f64() / 4.0, max_terms: 4_000_000, ..Self::default() }
    }
}

/// Value plus truncation diagnostics.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesResult<R = f64> {
    pub value: C<R>,
    pub terms_used: usize,
    pub tail_bound: f64,
    pub converged: bool,
}

impl<R: Real> SeriesResult<R> {
    pub fn exact(value: C<R>, terms_used: usize) -> Self {
        Self { value, terms_used, tail_bound: 0.0, converged: true }
    }

    /// Multiply the value (and its error bound) by `k`.
    pub fn scaled(self, k: C<R>) -> Self {
        let m = cx::abs(k).to_f64();
        Self { value: self.value * k, tail_bound: self.tail_bound * m, ..self }
    }

    /// `a·self + b·other`, combining the diagnostics.
    pub fn combine(self, a: C<R>, other: Self, b: C<R>) -> Self {
        Self {
            value: self.value * a + other.value * b,
            terms_used: self.terms_used + other.terms_used,
            tail_bound: self.tail_bound * cx::abs(a).to_f64() + other.tail_bound * cx::abs(b).to_f64(),
            converged: self.converged && other.converged,
        }
    }
}

/// Neumaier's variant of Kahan summation, applied per component.
#[derive(Clone, Copy, Debug)]
pub struct CompensatedSum<R> {
    sum: C<R>,
    comp: C<R>,
}

fn neumaier<R: Real>(sum: &mut R, comp: &mut R, x: R) {
    let t = *sum + x;
    if sum.abs() >= x.abs() {
        *comp += (*sum - t) + x;
    } else {
        *comp += (x - t) + *sum;
    }
    *sum = t;
}

impl<R: Real> Default for CompensatedSum<R> {
    fn default() -> Self {
        Self { sum: C::<R>::zero(), comp: C::<R>::zero() }
    }
}

impl<R: Real> CompensatedSum<R> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: C<R>) {
        neumaier(&mut self.sum.re, &mut self.comp.re, x.re);
        neumaier(&mut self.sum.im, &mut self.comp.im, x.im);
    }

    pub fn value(&self) -> C<R> {
        Complex::new(self.sum.re + self.comp.re, self.sum.im + self.comp.im)
    }
}

/// The stopping rule: `consecutive_small` terms below `eps·|partial sum|`
/// and a geometric tail estimate `|last|/(1 − ratio)` (ratio clamped
/// below 0.99) that is itself below `eps·|partial sum|`.
#[derive(Clone, Debug)]
pub(crate) struct Truncation {
    eps: f64,
    floor: f64,
    need: usize,
    run: usize,
    last: f64,
    pub tail: f64,
}

impl Truncation {
    pub fn new(policy: &SeriesPolicy) -> Self {
        Self {
            eps: policy.eps_series,
            floor: policy.floor_scale,
            need: policy.consecutive_small,
            run: 0,
            last: f64::NAN,
            tail: f64::INFINITY,
        }
    }

    /// Record a term; returns true once the sum may stop.
    pub fn push(&mut self, term: f64, sum: f64) -> bool {
        let ratio = if self.last > 0.0 { (term / self.last).min(0.99) } else { 0.0 };
        self.last = term;
        self.tail = term / (1.0 - ratio);
        let scale = self.eps * sum.max(self.floor);
        if term < scale {
            self.run += 1;
        } else {
            self.run = 0;
        }
        self.run >= self.need && self.tail <= scale
    }
}

/// Sum `next(0), next(1), …` under `policy`. If `last_index` is given the
/// series is known to terminate there and is summed exactly.
pub(crate) fn sum_terms<R: Real>(
    policy: &SeriesPolicy,
    last_index: Option<usize>,
    mut next: impl FnMut(usize) -> C<R>,
) -> QResult<SeriesResult<R>> {
    let mut acc = CompensatedSum::new();
    let mut trunc = Truncation::new(policy);
    for n in 0..policy.max_terms {
        let t = next(n);
        if !cx::is_finite(t) {
            return Err(QError::NotConverged { terms: n + 1, tail: f64::INFINITY });
        }
        acc.add(t);
        if last_index == Some(n) {
            return Ok(SeriesResult::exact(acc.value(), n + 1));
        }
        if trunc.push(cx::abs(t).to_f64(), cx::abs(acc.value()).to_f64()) {
            return Ok(SeriesResult { value: acc.value(), terms_used: n + 1, tail_bound: trunc.tail, converged: true });
        }
    }
    Err(QError::NotConverged { terms: policy.max_terms, tail: trunc.tail })
}
