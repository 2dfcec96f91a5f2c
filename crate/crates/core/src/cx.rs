//! Complex helpers for `Complex<R>` where `R` is not `num_traits::Float`.

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::real::Real;

pub type C<R> = Complex<R>;

pub fn re<R: Real>(x: R) -> C<R> {
    Complex::new(x, R::zero())
}

pub fn abs<R: Real>(z: C<R>) -> R {
    z.re.hypot(z.im)
}

pub fn arg<R: Real>(z: C<R>) -> R {
    z.im.atan2(z.re)
}

pub fn cis<R: Real>(theta: R) -> C<R> {
    Complex::new(theta.cos(), theta.sin())
}

pub fn exp<R: Real>(z: C<R>) -> C<R> {
    cis(z.im) * z.re.exp()
}

pub fn ln<R: Real>(z: C<R>) -> C<R> {
    Complex::new(abs(z).ln(), arg(z))
}

/// Principal branch of `z^p` for real `p`; the cut lies on the negative
/// real axis, where the upper-side value `|z|^p e^{iπp}` is returned.
pub fn powr<R: Real>(z: C<R>, p: R) -> C<R> {
    if p == R::zero() {
        return C::<R>::one();
    }
    if z.is_zero() {
        return C::<R>::zero();
    }
    if z.im == R::zero() && z.re > R::zero() {
        return re(z.re.powf(p));
    }
    cis(arg(z) * p) * abs(z).powf(p)
}

/// `z^n` by repeated squaring.
pub fn powi<R: Real>(z: C<R>, n: i64) -> C<R> {
    let mut base = if n < 0 { C::<R>::one() / z } else { z };
    let mut e = n.unsigned_abs();
    let mut acc = C::<R>::one();
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base;
        }
        base = base * base;
        e >>= 1;
    }
    acc
}

/// Principal square root.
pub fn sqrt<R: Real>(z: C<R>) -> C<R> {
    if z.im == R::zero() {
        return if z.re >= R::zero() { re(z.re.sqrt()) } else { Complex::new(R::zero(), (-z.re).sqrt()) };
    }
    let m = abs(z);
    let two = R::from_f64(2.0);
    let a = ((m + z.re) / two).sqrt();
    let b = ((m - z.re) / two).sqrt();
    Complex::new(a, if z.im < R::zero() { -b } else { b })
}

pub fn to_f64<R: Real>(z: C<R>) -> Complex<f64> {
    Complex::new(z.re.to_f64(), z.im.to_f64())
}

pub fn is_finite<R: Real>(z: C<R>) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// Relative distance `|a − b| / max(|b|, tiny)`.
pub fn rel_err<R: Real>(a: C<R>, b: C<R>) -> f64 {
    let d = abs(a - b).to_f64();
    let s = abs(b).to_f64();
    if s == 0.0 {
        d
    } else {
        d / s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn principal_branches() {
        let z = Complex::new(-4.0, 0.0);
        assert!((sqrt(z) - Complex::new(0.0, 2.0)).norm() < 1e-15);
        let w = powr(Complex::new(0.0, 1.0), 0.5);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((w - Complex::new(h, h)).norm() < 1e-15);
        assert_eq!(powr(re(4.0), 0.5), re(2.0));
        assert_eq!(powi(Complex::new(0.0, 1.0), 2), re(-1.0));
        let s = sqrt(Complex::new(3.0, -4.0));
        assert!((s - Complex::new(2.0, -1.0)).norm() < 1e-15);
    }
}
