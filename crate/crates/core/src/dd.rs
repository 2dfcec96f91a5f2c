//! Double-double arithmetic: an unevaluated sum `hi + lo` with
//! `|lo| <= ulp(hi)/2`, giving ~106 bits (~31 decimal digits).
//!
//! Only what the q-series need is provided: the four operations, `sqrt`,
//! `exp`, `ln`, `sin`, `cos`, `atan2`, decimal parsing and printing.
//! Algorithms follow Hida, Li & Bailey's QD library; transcendental
//! functions use argument reduction plus Taylor series or Newton steps.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Rem, Sub, SubAssign};
use std::str::FromStr;

use num_traits::{Num, One, Zero};

use crate::real::Real;

#[derive(Clone, Copy, Default, PartialEq)]
pub struct DoubleDouble {
    hi: f64,
    lo: f64,
}

const PI: DoubleDouble = DoubleDouble::from_parts(std::f64::consts::PI, 1.2246467991473532e-16);
const FRAC_PI_2: DoubleDouble = DoubleDouble::from_parts(std::f64::consts::FRAC_PI_2, 6.123233995736766e-17);
const LN2: DoubleDouble = DoubleDouble::from_parts(std::f64::consts::LN_2, 2.3190468138462996e-17);

/// Below this a Taylor term no longer affects the sum.
const TAYLOR_CUTOFF: f64 = 1e-36;

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl DoubleDouble {
    pub const fn from_parts(hi: f64, lo: f64) -> Self {
        Self { hi, lo }
    }

    pub fn hi(self) -> f64 {
        self.hi
    }

    pub fn lo(self) -> f64 {
        self.lo
    }

    fn renorm(hi: f64, lo: f64) -> Self {
        if !hi.is_finite() {
            return Self { hi, lo: 0.0 };
        }
        let (hi, lo) = quick_two_sum(hi, lo);
        Self { hi, lo }
    }

    /// Multiply by `2^k` (exact barring over/underflow).
    fn ldexp(self, k: i32) -> Self {
        let (k1, k2) = (k / 2, k - k / 2);
        let (f1, f2) = (2f64.powi(k1), 2f64.powi(k2));
        Self { hi: self.hi * f1 * f2, lo: self.lo * f1 * f2 }
    }

    fn mul_f64(self, b: f64) -> Self {
        let (p, e) = two_prod(self.hi, b);
        Self::renorm(p, e + self.lo * b)
    }

    fn sin_cos_taylor(t: Self) -> (Self, Self) {
        let t2 = t * t;
        let mut s = t;
        let mut term = t;
        let mut k = 1.0;
        while term.hi.abs() > TAYLOR_CUTOFF {
            term = -(term * t2) / Self::from((2.0 * k) * (2.0 * k + 1.0));
            s += term;
            k += 1.0;
        }
        let mut c = Self::one();
        let mut term = Self::one();
        let mut k = 1.0;
        while term.hi.abs() > TAYLOR_CUTOFF {
            term = -(term * t2) / Self::from((2.0 * k - 1.0) * (2.0 * k));
            c += term;
            k += 1.0;
        }
        (s, c)
    }

    pub fn sin_cos(self) -> (Self, Self) {
        if self.hi == 0.0 {
            return (Self::zero(), Self::one());
        }
        let j = (self.hi / FRAC_PI_2.hi).round();
        let t = self - FRAC_PI_2.mul_f64(j);
        let (s, c) = Self::sin_cos_taylor(t);
        match (j as i64).rem_euclid(4) {
            0 => (s, c),
            1 => (c, -s),
            2 => (-s, -c),
            _ => (-c, s),
        }
    }

    /// Scientific notation with `digits` significant digits.
    pub fn to_sci_string(self, digits: usize) -> String {
        if !self.hi.is_finite() {
            return format!("{}", self.hi);
        }
        if self.hi == 0.0 {
            return "0".to_string();
        }
        let digits = digits.max(1);
        let neg = self.hi < 0.0;
        let x = self.abs();
        let mut e = x.hi.log10().floor() as i32;
        let mut y = x / Self::from(10.0).powi(e as i64);
        if y.hi >= 10.0 {
            y /= Self::from(10.0);
            e += 1;
        } else if y.hi < 1.0 {
            y *= Self::from(10.0);
            e -= 1;
        }
        let mut ds: Vec<u8> = Vec::with_capacity(digits + 1);
        for _ in 0..=digits {
            let d = y.hi.floor().clamp(0.0, 9.0);
            ds.push(d as u8);
            y = (y - Self::from(d)) * Self::from(10.0);
        }
        let round_up = ds.pop().unwrap_or(0) >= 5;
        if round_up {
            let mut i = ds.len();
            loop {
                if i == 0 {
                    ds.insert(0, 1);
                    ds.pop();
                    e += 1;
                    break;
                }
                i -= 1;
                if ds[i] == 9 {
                    ds[i] = 0;
                } else {
                    ds[i] += 1;
                    break;
                }
            }
        }
        let mut out = String::with_capacity(digits + 8);
        if neg {
            out.push('-');
        }
        out.push((b'0' + ds[0]) as char);
        if ds.len() > 1 {
            out.push('.');
            for d in &ds[1..] {
                out.push((b'0' + d) as char);
            }
        }
        out.push_str(&format!("e{e}"));
        out
    }
}

impl From<f64> for DoubleDouble {
    fn from(x: f64) -> Self {
        Self { hi: x, lo: 0.0 }
    }
}

impl Add for DoubleDouble {
    type Output = Self;
    fn add(self, b: Self) -> Self {
        let (s1, s2) = two_sum(self.hi, b.hi);
        if !s1.is_finite() {
            return Self { hi: s1, lo: 0.0 };
        }
        let (t1, t2) = two_sum(self.lo, b.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        Self::renorm(s1, s2 + t2)
    }
}

impl Sub for DoubleDouble {
    type Output = Self;
    fn sub(self, b: Self) -> Self {
        self + (-b)
    }
}

impl Neg for DoubleDouble {
    type Output = Self;
    fn neg(self) -> Self {
        Self { hi: -self.hi, lo: -self.lo }
    }
}

impl Mul for DoubleDouble {
    type Output = Self;
    fn mul(self, b: Self) -> Self {
        let (p, e) = two_prod(self.hi, b.hi);
        Self::renorm(p, e + (self.hi * b.lo + self.lo * b.hi))
    }
}

impl Div for DoubleDouble {
    type Output = Self;
    fn div(self, b: Self) -> Self {
        let q1 = self.hi / b.hi;
        if !q1.is_finite() {
            return Self { hi: q1, lo: 0.0 };
        }
        let r = self - b.mul_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b.mul_f64(q2);
        let q3 = r.hi / b.hi;
        let (q1, q2) = quick_two_sum(q1, q2);
        Self { hi: q1, lo: q2 } + Self::from(q3)
    }
}

impl Rem for DoubleDouble {
    type Output = Self;
    fn rem(self, b: Self) -> Self {
        let n = self / b;
        let n = if n.hi < 0.0 { -(-n).floor() } else { n.floor() };
        self - b * n
    }
}

macro_rules! assign_ops {
    ($($tr:ident $m:ident $op:tt),*) => {$(
        impl $tr for DoubleDouble {
            fn $m(&mut self, b: Self) {
                *self = *self $op b;
            }
        }
    )*};
}
assign_ops!(AddAssign add_assign +, SubAssign sub_assign -, MulAssign mul_assign *, DivAssign div_assign /);

impl PartialOrd for DoubleDouble {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi)? {
            Ordering::Equal => self.lo.partial_cmp(&other.lo),
            o => Some(o),
        }
    }
}

impl Zero for DoubleDouble {
    fn zero() -> Self {
        Self { hi: 0.0, lo: 0.0 }
    }
    fn is_zero(&self) -> bool {
        self.hi == 0.0
    }
}

impl One for DoubleDouble {
    fn one() -> Self {
        Self { hi: 1.0, lo: 0.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseDoubleDoubleError;

impl fmt::Display for ParseDoubleDoubleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("invalid decimal literal")
    }
}

impl std::error::Error for ParseDoubleDoubleError {}

impl FromStr for DoubleDouble {
    type Err = ParseDoubleDoubleError;

    /// Parses a decimal literal exactly to double-double precision, so
    /// that e.g. `"0.9"` is 0.9 to ~31 digits rather than the nearest f64.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let check: f64 = s.parse().map_err(|_| ParseDoubleDoubleError)?;
        if !check.is_finite() {
            return Ok(Self::from(check));
        }
        let (neg, body) = match s.as_bytes().first() {
            Some(b'-') => (true, &s[1..]),
            Some(b'+') => (false, &s[1..]),
            _ => (false, s),
        };
        let (mant, exp) = match body.find(['e', 'E']) {
            Some(i) => (&body[..i], body[i + 1..].parse::<i64>().map_err(|_| ParseDoubleDoubleError)?),
            None => (body, 0),
        };
        let ten = Self::from(10.0);
        let mut acc = Self::zero();
        let mut frac_digits = 0i64;
        let mut seen_point = false;
        for c in mant.chars() {
            match c {
                '.' => seen_point = true,
                '0'..='9' => {
                    acc = acc * ten + Self::from(f64::from(c as u8 - b'0'));
                    if seen_point {
                        frac_digits += 1;
                    }
                }
                _ => return Err(ParseDoubleDoubleError),
            }
        }
        let e = exp - frac_digits;
        let v = if e >= 0 { acc * ten.powi(e) } else { acc / ten.powi(-e) };
        Ok(if neg { -v } else { v })
    }
}

impl Num for DoubleDouble {
    type FromStrRadixErr = ParseDoubleDoubleError;
    fn from_str_radix(s: &str, radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        if radix != 10 {
            return Err(ParseDoubleDoubleError);
        }
        s.parse()
    }
}

impl fmt::Display for DoubleDouble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_sci_string(f.precision().unwrap_or(32)))
    }
}

impl fmt::Debug for DoubleDouble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DoubleDouble({})", self.to_sci_string(32))
    }
}

impl Real for DoubleDouble {
    fn epsilon() -> Self {
        Self::from(4.93038065763132e-32) // 2^-104
    }

    fn from_f64(x: f64) -> Self {
        Self::from(x)
    }

    fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    fn to_dd(self) -> DoubleDouble {
        self
    }

    fn from_dd(x: DoubleDouble) -> Self {
        x
    }

    fn pi() -> Self {
        PI
    }

    fn abs(self) -> Self {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    fn sqrt(self) -> Self {
        if self.hi <= 0.0 {
            return Self::from(if self.hi == 0.0 { 0.0 } else { f64::NAN });
        }
        let a = self.hi.sqrt();
        let (p, e) = two_prod(a, a);
        let r = self - Self { hi: p, lo: e };
        Self::renorm(a, r.hi / (2.0 * a))
    }

    fn exp(self) -> Self {
        if self.hi > 709.7 {
            return Self::from(f64::INFINITY);
        }
        if self.hi < -745.0 {
            return Self::zero();
        }
        let m = (self.hi / LN2.hi).round();
        let r = (self - LN2.mul_f64(m)).ldexp(-10);
        // expm1(r) by Taylor, |r| < 3.4e-4
        let mut s = r;
        let mut term = r;
        let mut k = 2.0;
        while term.hi.abs() > TAYLOR_CUTOFF {
            term = term * r / Self::from(k);
            s += term;
            k += 1.0;
        }
        for _ in 0..10 {
            s = s.ldexp(1) + s * s;
        }
        (s + Self::one()).ldexp(m as i32)
    }

    fn ln(self) -> Self {
        if self.hi <= 0.0 {
            return Self::from(if self.hi == 0.0 { f64::NEG_INFINITY } else { f64::NAN });
        }
        if !self.hi.is_finite() {
            return self;
        }
        let mut y = Self::from(self.hi.ln());
        for _ in 0..2 {
            y = y + self * (-y).exp() - Self::one();
        }
        y
    }

    fn sin(self) -> Self {
        self.sin_cos().0
    }

    fn cos(self) -> Self {
        self.sin_cos().1
    }

    fn atan2(self, x: Self) -> Self {
        let y = self;
        if y.hi == 0.0 {
            return if x.hi >= 0.0 { Self::zero() } else { PI };
        }
        if x.hi == 0.0 {
            return if y.hi > 0.0 { FRAC_PI_2 } else { -FRAC_PI_2 };
        }
        let mut t = Self::from(y.hi.atan2(x.hi));
        for _ in 0..2 {
            let (s, c) = t.sin_cos();
            t += (y * c - x * s) / (x * c + y * s);
        }
        t
    }

    fn floor(self) -> Self {
        let fh = self.hi.floor();
        if fh == self.hi {
            Self::renorm(fh, self.lo.floor())
        } else {
            Self::from(fh)
        }
    }

    fn is_finite(self) -> bool {
        self.hi.is_finite()
    }
}
