//! Scalar abstraction shared by every numerical module.
//!
//! The kernels are written once against [`Real`] and instantiated for `f32`,
//! `f64` and the double-double type [`DoubleDouble`]. The extended type is
//! what makes the strongly ill-conditioned small-`ε` detuning solves usable.

use std::fmt::{Debug, Display};

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

use crate::double_double::DoubleDouble;

/// Floating point scalar accepted by the solvers.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Send + Sync + 'static
{
    /// Converts an `f64` literal. Exact for every supported type except `f32`.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal is representable")
    }

    /// Builds a value from an unevaluated sum `hi + lo`; types narrower than
    /// double-double simply round the sum.
    #[inline]
    fn from_parts(hi: f64, lo: f64) -> Self {
        Self::lit(hi) + Self::lit(lo)
    }

    /// Lossy conversion to `f64` for reporting.
    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// Approximate number of significant decimal digits.
    fn digits() -> f64 {
        -Self::epsilon().as_f64().log10()
    }

    /// Euler–Mascheroni constant.
    fn euler_gamma() -> Self {
        Self::from_parts(0.577_215_664_901_532_9, -4.942_915_152_430_645e-18)
    }

    #[inline]
    fn from_index(n: usize) -> Self {
        Self::lit(n as f64)
    }
}

impl Real for f32 {}
impl Real for f64 {}
impl Real for DoubleDouble {}

/// Complex number over a [`Real`] scalar.
pub type Cx<T> = Complex<T>;

/// Converts a complex value between scalar types (through `f64` parts when
/// narrowing, exactly when both sides are double-double).
pub trait CastComplex<U: Real> {
    fn cast(self) -> Cx<U>;
}

impl<T: Real, U: Real> CastComplex<U> for Cx<T> {
    #[inline]
    fn cast(self) -> Cx<U> {
        Complex::new(cast_real(self.re), cast_real(self.im))
    }
}

/// Converts a real scalar between supported types, keeping the low word of a
/// double-double when the target can hold it.
pub fn cast_real<T: Real, U: Real>(x: T) -> U {
    let hi = x.as_f64();
    if !hi.is_finite() {
        return U::lit(hi);
    }
    let lo = (x - T::lit(hi)).as_f64();
    U::from_parts(hi, lo)
}
