use crate::error::{Error, Result};
use crate::scalar::Real;

const MAX_ITERATIONS: usize = 200;

/// Brent's method on a sign-changing bracket `[lo, hi]`.
///
/// Inverse quadratic / secant steps are taken when they stay inside the
/// bracket and shrink it fast enough; otherwise the step is a bisection.
/// Stops once the bracket is narrower than `20·eps·max(1, |x|)` on each side.
pub fn find_root<T: Real, F: FnMut(T) -> T>(mut f: F, lo: T, hi: T) -> Result<T> {
    let (mut a, mut b) = (lo, hi);
    let (mut fa, mut fb) = (f(a), f(b));
    if fa == T::zero() {
        return Ok(a);
    }
    if fb == T::zero() {
        return Ok(b);
    }
    if !(fa.is_finite() && fb.is_finite()) || fa.signum() == fb.signum() {
        return Err(Error::NoSignChange { lo: lo.as_f64(), hi: hi.as_f64() });
    }
    let two = T::lit(2.0);
    let half = T::lit(0.5);
    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;
    for _ in 0..MAX_ITERATIONS {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol = T::lit(20.0) * T::epsilon() * b.abs().max(T::one());
        let m = half * (c - b);
        if m.abs() <= tol || fb == T::zero() {
            return Ok(b);
        }
        if e.abs() >= tol && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = two * m * s;
                q = T::one() - s;
            } else {
                let q0 = fa / fc;
                let r = fb / fc;
                p = s * (two * m * q0 * (q0 - r) - (b - a) * (r - T::one()));
                q = (q0 - T::one()) * (r - T::one()) * (s - T::one());
            }
            if p > T::zero() {
                q = -q;
            } else {
                p = -p;
            }
            if two * p < (T::lit(3.0) * m * q - (tol * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b = if d.abs() > tol { b + d } else { b + tol * m.signum() };
        fb = f(b);
        if !fb.is_finite() {
            return Err(Error::NoConvergence { iterations: MAX_ITERATIONS, last_x: b.as_f64() });
        }
    }
    Err(Error::NoConvergence { iterations: MAX_ITERATIONS, last_x: b.as_f64() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::double_double::DoubleDouble;
    use num_traits::Float;

    #[test]
    fn linear() {
        let x = find_root(|x: f64| x - 1.0, 0.0, 2.0).unwrap();
        assert!((x - 1.0).abs() < 1e-15);
    }

    #[test]
    fn tan_minus_x() {
        let x = find_root(|x: f64| x.tan() - x, 4.2, 4.6).unwrap();
        assert!((x - 4.493_409_457_909_064).abs() < 1e-13);
    }

    #[test]
    fn no_sign_change() {
        let err = find_root(|x: f64| x * x + 1.0, -1.0, 1.0).unwrap_err();
        assert!(matches!(err, Error::NoSignChange { .. }));
    }

    #[test]
    fn double_double_precision() {
        let two = DoubleDouble::from(2.0);
        let x = find_root(|x: DoubleDouble| x * x - two, DoubleDouble::from(1.0), DoubleDouble::from(2.0))
            .unwrap();
        assert!((x * x - two).abs().as_f64() < 1e-29);
    }
}
