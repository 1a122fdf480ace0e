//! Double-double arithmetic: a value is the unevaluated sum `hi + lo` of two
//! `f64` with `|lo| ≤ ulp(hi)/2`, giving about 32 significant digits.
//!
//! Basic operations follow the error-free transformations of Dekker and
//! Knuth (`two_sum`, `two_prod` via FMA). Transcendentals reduce the argument
//! in double-double and sum Taylor series, or refine an `f64` guess with one
//! Newton step. Only what `num_traits::Float` requires is provided; the
//! rarely used inverse hyperbolics go through logarithms.

use std::cmp::Ordering;
use std::fmt;
use std::num::FpCategory;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Rem, RemAssign, Sub, SubAssign};

use num_traits::{Float, FloatConst, FromPrimitive, Num, NumCast, One, ToPrimitive, Zero};

#[derive(Clone, Copy, Default)]
pub struct DoubleDouble {
    hi: f64,
    lo: f64,
}

#[inline]
fn dd(x: f64) -> DoubleDouble {
    DoubleDouble { hi: x, lo: 0.0 }
}

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
    pub const fn new(hi: f64, lo: f64) -> Self {
        DoubleDouble { hi, lo }
    }

    /// Normalizes an arbitrary pair.
    pub fn from_sum(a: f64, b: f64) -> Self {
        let (hi, lo) = two_sum(a, b);
        DoubleDouble { hi, lo }
    }

    pub fn hi(self) -> f64 {
        self.hi
    }

    pub fn lo(self) -> f64 {
        self.lo
    }

    fn renorm(hi: f64, lo: f64) -> Self {
        if !hi.is_finite() {
            return DoubleDouble { hi, lo: 0.0 };
        }
        let (hi, lo) = quick_two_sum(hi, lo);
        DoubleDouble { hi, lo }
    }

    fn mul_f64(self, b: f64) -> Self {
        let (p, e) = two_prod(self.hi, b);
        Self::renorm(p, e + self.lo * b)
    }

    fn ldexp(self, e: i32) -> Self {
        let s = 2f64.powi(e);
        DoubleDouble { hi: self.hi * s, lo: self.lo * s }
    }

    fn sqr(self) -> Self {
        self * self
    }

    /// `e^x − 1` for `|x| ≤ ln2/2`, without cancellation.
    fn expm1_reduced(r: Self) -> Self {
        // scale down, sum the series, undo with s ↦ s(2 + s)
        const SQUARINGS: i32 = 9;
        let t = r.ldexp(-SQUARINGS);
        let mut term = t;
        let mut sum = t;
        let mut k = 2.0;
        while term.hi.abs() > 1e-36 * sum.hi.abs().max(1e-300) {
            term = term * t / dd(k);
            sum += term;
            k += 1.0;
            if k > 60.0 {
                break;
            }
        }
        let two = dd(2.0);
        for _ in 0..SQUARINGS {
            sum = sum * (two + sum);
        }
        sum
    }

    /// `(sin t, cos t)` for `|t| ≤ π/4` by Taylor series.
    fn sin_cos_reduced(t: Self) -> (Self, Self) {
        let t2 = t.sqr();
        let mut s = t;
        let mut term = t;
        let mut k = 1.0;
        while term.hi.abs() > 1e-35 {
            term = -(term * t2) / dd((k + 1.0) * (k + 2.0));
            s += term;
            k += 2.0;
        }
        let mut c = dd(1.0);
        let mut term = c;
        let mut k = 0.0;
        while term.hi.abs() > 1e-35 {
            term = -(term * t2) / dd((k + 1.0) * (k + 2.0));
            c += term;
            k += 2.0;
        }
        (s, c)
    }

    fn sin_cos_impl(self) -> (Self, Self) {
        if !self.hi.is_finite() {
            return (Self::nan(), Self::nan());
        }
        if self.hi.abs() < 1e-300 {
            return (self, Self::one());
        }
        let half_pi = <Self as FloatConst>::FRAC_PI_2();
        let j = (self / half_pi).round();
        let t = self - j * half_pi;
        let (s, c) = Self::sin_cos_reduced(t);
        match (j.hi.rem_euclid(4.0)) as i64 {
            0 => (s, c),
            1 => (c, -s),
            2 => (-s, -c),
            _ => (-c, s),
        }
    }

    fn from_parts_const(p: (f64, f64)) -> Self {
        DoubleDouble { hi: p.0, lo: p.1 }
    }
}

impl fmt::Debug for DoubleDouble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DoubleDouble({:e} + {:e})", self.hi, self.lo)
    }
}

impl fmt::Display for DoubleDouble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.hi.is_finite() || self.hi == 0.0 {
            return fmt::Display::fmt(&self.hi, f);
        }
        let digits = f.precision().unwrap_or(31).min(33);
        let neg = self.hi < 0.0;
        let mut x = self.abs();
        let mut exp10 = x.hi.log10().floor() as i32;
        x *= dd(10.0).powi(-exp10);
        if x.hi >= 10.0 {
            x /= dd(10.0);
            exp10 += 1;
        } else if x.hi < 1.0 {
            x *= dd(10.0);
            exp10 -= 1;
        }
        let mut out = Vec::with_capacity(digits + 1);
        for _ in 0..=digits {
            let d = x.hi.floor().clamp(0.0, 9.0);
            out.push(d as u8);
            x = (x - dd(d)) * dd(10.0);
        }
        // round on the extra digit
        if out[digits] >= 5 {
            let mut i = digits;
            loop {
                if i == 0 {
                    out.insert(0, 1);
                    exp10 += 1;
                    break;
                }
                i -= 1;
                if out[i] == 9 {
                    out[i] = 0;
                } else {
                    out[i] += 1;
                    break;
                }
            }
        }
        out.truncate(digits);
        let mut s = String::new();
        if neg {
            s.push('-');
        }
        s.push((b'0' + out[0]) as char);
        if digits > 1 {
            s.push('.');
            for d in &out[1..] {
                s.push((b'0' + d) as char);
            }
        }
        s.push_str(&format!("e{exp10}"));
        f.write_str(&s)
    }
}

impl From<f64> for DoubleDouble {
    fn from(x: f64) -> Self {
        DoubleDouble { hi: x, lo: 0.0 }
    }
}

impl PartialEq for DoubleDouble {
    fn eq(&self, other: &Self) -> bool {
        self.hi == other.hi && self.lo == other.lo
    }
}

impl PartialOrd for DoubleDouble {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi)? {
            Ordering::Equal => self.lo.partial_cmp(&other.lo),
            o => Some(o),
        }
    }
}

impl Neg for DoubleDouble {
    type Output = Self;
    fn neg(self) -> Self {
        DoubleDouble { hi: -self.hi, lo: -self.lo }
    }
}

impl Add for DoubleDouble {
    type Output = Self;
    fn add(self, b: Self) -> Self {
        let (s, e) = two_sum(self.hi, b.hi);
        if !s.is_finite() {
            return DoubleDouble { hi: s, lo: 0.0 };
        }
        let (t, f) = two_sum(self.lo, b.lo);
        let (s, e) = quick_two_sum(s, e + t);
        Self::renorm(s, e + f)
    }
}

impl Sub for DoubleDouble {
    type Output = Self;
    fn sub(self, b: Self) -> Self {
        self + (-b)
    }
}

impl Mul for DoubleDouble {
    type Output = Self;
    fn mul(self, b: Self) -> Self {
        let (p, e) = two_prod(self.hi, b.hi);
        if !p.is_finite() {
            return DoubleDouble { hi: p, lo: 0.0 };
        }
        Self::renorm(p, e + (self.hi * b.lo + self.lo * b.hi))
    }
}

impl Div for DoubleDouble {
    type Output = Self;
    fn div(self, b: Self) -> Self {
        let q1 = self.hi / b.hi;
        if !q1.is_finite() || q1 == 0.0 && self.hi == 0.0 {
            return DoubleDouble { hi: q1, lo: 0.0 };
        }
        let r = self - b.mul_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b.mul_f64(q2);
        let q3 = r.hi / b.hi;
        let (q1, q2) = quick_two_sum(q1, q2);
        DoubleDouble { hi: q1, lo: q2 } + dd(q3)
    }
}

impl Rem for DoubleDouble {
    type Output = Self;
    fn rem(self, b: Self) -> Self {
        self - (self / b).trunc() * b
    }
}

macro_rules! assign_op {
    ($tr:ident, $m:ident, $op:tt) => {
        impl $tr for DoubleDouble {
            fn $m(&mut self, b: Self) {
                *self = *self $op b;
            }
        }
    };
}
assign_op!(AddAssign, add_assign, +);
assign_op!(SubAssign, sub_assign, -);
assign_op!(MulAssign, mul_assign, *);
assign_op!(DivAssign, div_assign, /);
assign_op!(RemAssign, rem_assign, %);

impl Zero for DoubleDouble {
    fn zero() -> Self {
        DoubleDouble { hi: 0.0, lo: 0.0 }
    }
    fn is_zero(&self) -> bool {
        self.hi == 0.0
    }
}

impl One for DoubleDouble {
    fn one() -> Self {
        DoubleDouble { hi: 1.0, lo: 0.0 }
    }
}

impl Num for DoubleDouble {
    type FromStrRadixErr = std::num::ParseFloatError;
    fn from_str_radix(s: &str, radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        assert_eq!(radix, 10, "only decimal parsing is supported");
        s.parse::<f64>().map(dd)
    }
}

impl ToPrimitive for DoubleDouble {
    fn to_i64(&self) -> Option<i64> {
        let t = self.trunc();
        (t.hi as i128 + t.lo as i128).try_into().ok()
    }
    fn to_u64(&self) -> Option<u64> {
        let t = self.trunc();
        (t.hi as i128 + t.lo as i128).try_into().ok()
    }
    fn to_f64(&self) -> Option<f64> {
        Some(self.hi + self.lo)
    }
}

impl FromPrimitive for DoubleDouble {
    fn from_i64(n: i64) -> Option<Self> {
        let hi = n as f64;
        let lo = (n as i128 - hi as i128) as f64;
        Some(DoubleDouble::from_sum(hi, lo))
    }
    fn from_u64(n: u64) -> Option<Self> {
        let hi = n as f64;
        let lo = (n as i128 - hi as i128) as f64;
        Some(DoubleDouble::from_sum(hi, lo))
    }
    fn from_f64(x: f64) -> Option<Self> {
        Some(dd(x))
    }
}

impl NumCast for DoubleDouble {
    fn from<T: ToPrimitive>(n: T) -> Option<Self> {
        n.to_f64().map(dd)
    }
}

macro_rules! dd_const {
    ($($name:ident = $l:expr;)*) => {
        impl FloatConst for DoubleDouble {
            $(fn $name() -> Self { DoubleDouble::from_parts_const((std::f64::consts::$name, $l)) })*
        }
    };
}

dd_const! {
    PI = 1.2246467991473532e-16;
    TAU = 2.4492935982947064e-16;
    FRAC_PI_2 = 6.123233995736766e-17;
    FRAC_PI_3 = -1.072081766451091e-16;
    FRAC_PI_4 = 3.061616997868383e-17;
    FRAC_PI_6 = -5.360408832255455e-17;
    FRAC_PI_8 = 1.5308084989341915e-17;
    FRAC_1_PI = -1.9678676675182486e-17;
    FRAC_2_PI = -3.935735335036497e-17;
    FRAC_2_SQRT_PI = 1.533545961316588e-17;
    SQRT_2 = -9.667293313452913e-17;
    FRAC_1_SQRT_2 = -4.833646656726457e-17;
    E = 1.4456468917292502e-16;
    LN_2 = 2.3190468138462996e-17;
    LN_10 = -2.1707562233822494e-16;
    LOG2_E = 2.0355273740931033e-17;
    LOG10_E = 1.098319650216765e-17;
    LOG2_10 = 1.661617516973592e-16;
    LOG10_2 = -2.8037281277851704e-18;
}

impl Float for DoubleDouble {
    fn nan() -> Self {
        dd(f64::NAN)
    }
    fn infinity() -> Self {
        dd(f64::INFINITY)
    }
    fn neg_infinity() -> Self {
        dd(f64::NEG_INFINITY)
    }
    fn neg_zero() -> Self {
        dd(-0.0)
    }
    fn min_value() -> Self {
        dd(f64::MIN)
    }
    fn min_positive_value() -> Self {
        dd(f64::MIN_POSITIVE)
    }
    fn epsilon() -> Self {
        // 2^-104
        dd(4.930_380_657_631_324e-32)
    }
    fn max_value() -> Self {
        dd(f64::MAX)
    }
    fn is_nan(self) -> bool {
        self.hi.is_nan() || self.lo.is_nan()
    }
    fn is_infinite(self) -> bool {
        self.hi.is_infinite()
    }
    fn is_finite(self) -> bool {
        self.hi.is_finite() && self.lo.is_finite()
    }
    fn is_normal(self) -> bool {
        self.hi.is_normal()
    }
    fn classify(self) -> FpCategory {
        self.hi.classify()
    }
    fn floor(self) -> Self {
        let hi = self.hi.floor();
        if hi == self.hi {
            Self::renorm(hi, self.lo.floor())
        } else {
            dd(hi)
        }
    }
    fn ceil(self) -> Self {
        -(-self).floor()
    }
    fn round(self) -> Self {
        let half = dd(0.5);
        if self.hi >= 0.0 {
            (self + half).floor()
        } else {
            -((-self) + half).floor()
        }
    }
    fn trunc(self) -> Self {
        if self.hi >= 0.0 {
            self.floor()
        } else {
            self.ceil()
        }
    }
    fn fract(self) -> Self {
        self - self.trunc()
    }
    fn abs(self) -> Self {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }
    fn signum(self) -> Self {
        dd(self.hi.signum())
    }
    fn is_sign_positive(self) -> bool {
        self.hi.is_sign_positive()
    }
    fn is_sign_negative(self) -> bool {
        self.hi.is_sign_negative()
    }
    fn mul_add(self, a: Self, b: Self) -> Self {
        self * a + b
    }
    fn recip(self) -> Self {
        Self::one() / self
    }
    fn powi(self, n: i32) -> Self {
        if n == 0 {
            return Self::one();
        }
        let mut base = self;
        let mut e = n.unsigned_abs();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc *= base;
            }
            base = base.sqr();
            e >>= 1;
        }
        if n < 0 {
            acc.recip()
        } else {
            acc
        }
    }
    fn powf(self, n: Self) -> Self {
        if self.hi == 0.0 {
            return if n.hi == 0.0 { Self::one() } else { Self::zero() };
        }
        (n * self.ln()).exp()
    }
    fn sqrt(self) -> Self {
        if self.hi <= 0.0 {
            return if self.hi == 0.0 { Self::zero() } else { Self::nan() };
        }
        if !self.hi.is_finite() {
            return self;
        }
        let q = self.hi.sqrt();
        let s = dd(q);
        let r = self - dd(q).sqr();
        s + dd(r.hi / (2.0 * q))
    }
    fn exp(self) -> Self {
        if self.hi > 709.78 {
            return Self::infinity();
        }
        if self.hi < -745.2 {
            return Self::zero();
        }
        if self.hi == 0.0 {
            return Self::one();
        }
        let ln2 = <Self as FloatConst>::LN_2();
        let k = (self.hi / ln2.hi).round();
        let r = self - ln2.mul_f64(k);
        (Self::expm1_reduced(r) + Self::one()).ldexp(k as i32)
    }
    fn exp2(self) -> Self {
        (self * <Self as FloatConst>::LN_2()).exp()
    }
    fn ln(self) -> Self {
        if self.hi <= 0.0 {
            return if self.hi == 0.0 { Self::neg_infinity() } else { Self::nan() };
        }
        if !self.hi.is_finite() {
            return self;
        }
        // Newton on exp: y ← y + x e^{-y} − 1, from the f64 logarithm
        let mut y = dd(self.hi.ln());
        for _ in 0..2 {
            y = y + self * (-y).exp() - Self::one();
        }
        y
    }
    fn log(self, base: Self) -> Self {
        self.ln() / base.ln()
    }
    fn log2(self) -> Self {
        self.ln() * <Self as FloatConst>::LOG2_E()
    }
    fn log10(self) -> Self {
        self.ln() * <Self as FloatConst>::LOG10_E()
    }
    fn max(self, other: Self) -> Self {
        if self.is_nan() || other > self {
            other
        } else {
            self
        }
    }
    fn min(self, other: Self) -> Self {
        if self.is_nan() || other < self {
            other
        } else {
            self
        }
    }
    fn abs_sub(self, other: Self) -> Self {
        if self > other {
            self - other
        } else {
            Self::zero()
        }
    }
    fn cbrt(self) -> Self {
        if self.hi == 0.0 {
            return self;
        }
        let mut y = dd(self.hi.cbrt());
        let three = dd(3.0);
        y = y - (y.powi(3) - self) / (three * y.sqr());
        y
    }
    fn hypot(self, other: Self) -> Self {
        let (a, b) = (self.abs(), other.abs());
        let m = if a > b { a } else { b };
        if m.hi == 0.0 || !m.hi.is_finite() {
            return m;
        }
        let e = m.hi.log2().floor() as i32;
        let (a, b) = (a.ldexp(-e), b.ldexp(-e));
        (a.sqr() + b.sqr()).sqrt().ldexp(e)
    }
    fn sin(self) -> Self {
        self.sin_cos_impl().0
    }
    fn cos(self) -> Self {
        self.sin_cos_impl().1
    }
    fn tan(self) -> Self {
        let (s, c) = self.sin_cos_impl();
        s / c
    }
    fn asin(self) -> Self {
        self.atan2((Self::one() - self.sqr()).sqrt())
    }
    fn acos(self) -> Self {
        (Self::one() - self.sqr()).sqrt().atan2(self)
    }
    fn atan(self) -> Self {
        self.atan2(Self::one())
    }
    fn atan2(self, other: Self) -> Self {
        let (y, x) = (self, other);
        if x.hi == 0.0 && y.hi == 0.0 {
            return dd(y.hi.atan2(x.hi));
        }
        // one Newton step on the angle from the f64 estimate
        let z = dd(y.hi.atan2(x.hi));
        let (s, c) = z.sin_cos_impl();
        z + (y * c - x * s) / (x * c + y * s)
    }
    fn sin_cos(self) -> (Self, Self) {
        self.sin_cos_impl()
    }
    fn exp_m1(self) -> Self {
        if self.hi.abs() < 0.34 {
            Self::expm1_reduced(self)
        } else {
            self.exp() - Self::one()
        }
    }
    fn ln_1p(self) -> Self {
        if self.hi.abs() < 1e-3 {
            // atanh form: ln(1+x) = 2 atanh(x/(2+x)), series in u²
            let u = self / (dd(2.0) + self);
            let u2 = u.sqr();
            let mut term = u;
            let mut sum = u;
            let mut k = 3.0;
            while term.hi.abs() > 1e-35 * sum.hi.abs() {
                term *= u2;
                sum += term / dd(k);
                k += 2.0;
            }
            sum * dd(2.0)
        } else {
            (Self::one() + self).ln()
        }
    }
    fn sinh(self) -> Self {
        if self.hi.abs() < 0.5 {
            let x2 = self.sqr();
            let mut term = self;
            let mut sum = self;
            let mut k = 1.0;
            while term.hi.abs() > 1e-35 * sum.hi.abs() {
                term = term * x2 / dd((k + 1.0) * (k + 2.0));
                sum += term;
                k += 2.0;
            }
            sum
        } else {
            let e = self.exp();
            (e - e.recip()) * dd(0.5)
        }
    }
    fn cosh(self) -> Self {
        let e = self.exp();
        (e + e.recip()) * dd(0.5)
    }
    fn tanh(self) -> Self {
        self.sinh() / self.cosh()
    }
    fn asinh(self) -> Self {
        let a = self.abs();
        let r = (a + (a.sqr() + Self::one()).sqrt()).ln();
        if self.hi < 0.0 {
            -r
        } else {
            r
        }
    }
    fn acosh(self) -> Self {
        (self + (self.sqr() - Self::one()).sqrt()).ln()
    }
    fn atanh(self) -> Self {
        ((Self::one() + self) / (Self::one() - self)).ln() * dd(0.5)
    }
    fn integer_decode(self) -> (u64, i16, i8) {
        self.hi.integer_decode()
    }
    fn to_degrees(self) -> Self {
        self * dd(180.0) / <Self as FloatConst>::PI()
    }
    fn to_radians(self) -> Self {
        self * <Self as FloatConst>::PI() / dd(180.0)
    }
}
