use super::ResonanceSpec;
use crate::error::{Error, Result};
use crate::scalar::{Cx, Real};
use crate::specfun::{cyl_bessel, find_root, sph_bessel, BesselEval, CylKind, SphKind};
use serde::{Deserialize, Serialize};

/// Which tuning equation pins the interior wavenumber near resonance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum TuningVariant {
    /// Tuning equation with the leading-order small-argument forms of `y_0` / `Y_0`.
    Paper,
    /// Zero of the imaginary part of the `α_0` denominator with exact Bessel
    /// functions; makes `α_0 = −1` hold to working precision.
    #[default]
    Exact,
}

/// Result of a tuning solve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tuning<T: Real = f64> {
    pub variant: TuningVariant,
    /// Interior Bessel argument at the unit radius.
    pub k_eps: T,
    /// `k_ε / k`.
    pub sigma_literal: T,
    /// `(k_ε / k)²`, the density giving interior wavenumber `k_ε`.
    pub sigma_consistent: T,
}

fn real<T: Real>(x: T) -> Cx<T> {
    Cx::new(x, T::zero())
}

fn regular<T: Real>(d: u32, x: T) -> Result<BesselEval<T>> {
    if d == 3 {
        sph_bessel(SphKind::J, 0, real(x))
    } else {
        cyl_bessel(CylKind::J, 0, real(x))
    }
}

fn outgoing<T: Real>(d: u32, x: T) -> Result<BesselEval<T>> {
    if d == 3 {
        sph_bessel(SphKind::H1, 0, real(x))
    } else {
        cyl_bessel(CylKind::H1, 0, real(x))
    }
}

fn check_dimension(d: u32) -> Result<()> {
    if d == 2 || d == 3 {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("dimension must be 2 or 3, got {d}")))
    }
}

/// `α_0` of the rescaled single inclusion: unit ball with interior Bessel
/// argument `k_eps` and flux factor `ε^{2−d}`, exterior wavenumber `kε`.
pub fn alpha0_closed_form<T: Real>(d: u32, k: T, eps: T, k_eps: T) -> Result<Cx<T>> {
    check_dimension(d)?;
    if !(k > T::zero()) || !(eps > T::zero()) || !(k_eps > T::zero()) {
        return Err(Error::InvalidInput("k, ε and k_ε must be positive".into()));
    }
    let flux = if d == 3 { eps.recip() } else { T::one() };
    let t = k * eps;
    let inner = regular(d, k_eps)?;
    let je = regular(d, t)?;
    let he = outgoing(d, t)?;
    let a_in = inner.derivative * (flux * k_eps);
    let num = a_in * je.value - je.derivative * inner.value * t;
    let den = a_in * he.value - he.derivative * inner.value * t;
    let scale = (a_in * he.value).norm() + (he.derivative * inner.value * t).norm();
    if den.norm() <= T::epsilon() * scale {
        return Err(Error::DivisionByZero(den.norm().as_f64()));
    }
    Ok(-num / den)
}

/// Solves for the interior wavenumber that drives `α_0` to `−1`, bracketing
/// within `κ* ± 0.5` of the mode-0 resonance.
pub fn tune_sigma<T: Real>(d: u32, k: T, eps: T, spec: &ResonanceSpec, variant: TuningVariant) -> Result<Tuning<T>> {
    check_dimension(d)?;
    if spec.dimension != d || spec.mode != 0 {
        return Err(Error::InvalidInput("tuning needs the mode-0 resonance of the same dimension".into()));
    }
    if !(k > T::zero()) || !(eps > T::zero()) || eps > T::lit(0.3) {
        return Err(Error::InvalidInput(format!("tuning needs k > 0 and ε in (0, 0.3], got ε = {eps}")));
    }
    let t = k * eps;
    let f: Box<dyn Fn(T) -> Result<T>> = match (d, variant) {
        (3, TuningVariant::Exact) => {
            // x j0'(x) = k ε² y0'(kε)/y0(kε) j0(x)
            let y = sph_bessel(SphKind::Y, 0, real(t))?;
            let c = k * eps * eps * (y.derivative.re / y.value.re);
            Box::new(move |x| {
                let j = regular(3, x)?;
                Ok(x * j.derivative.re - c * j.value.re)
            })
        }
        (3, TuningVariant::Paper) => {
            // j0'(x)/j0(x) = −ε − k ε² tan(kε)
            let c = -eps - k * eps * eps * t.tan();
            Box::new(move |x| {
                let j = regular(3, x)?;
                Ok(j.derivative.re - c * j.value.re)
            })
        }
        (_, TuningVariant::Exact) => {
            // x J0'(x) = kε Y0'(kε)/Y0(kε) J0(x)
            let y = cyl_bessel(CylKind::Y, 0, real(t))?;
            let c = t * (y.derivative.re / y.value.re);
            Box::new(move |x| {
                let j = regular(2, x)?;
                Ok(x * j.derivative.re - c * j.value.re)
            })
        }
        (_, TuningVariant::Paper) => {
            // x J0'(x)/J0(x) = 1/ln(kε/2)
            let c = (t / T::lit(2.0)).ln().recip();
            Box::new(move |x| {
                let j = regular(2, x)?;
                Ok(x * j.derivative.re - c * j.value.re)
            })
        }
    };
    let center = spec.kappa_star;
    let lo = T::lit(center - 0.5);
    let hi = T::lit(center + 0.5);
    let (flo, fhi) = (f(lo)?, f(hi)?);
    if !(flo * fhi < T::zero()) {
        return Err(Error::BracketFailure { center });
    }
    let mut failure = None;
    let k_eps = find_root(
        |x| match f(x) {
            Ok(v) => v,
            Err(e) => {
                failure.get_or_insert(e);
                T::nan()
            }
        },
        lo,
        hi,
    )?;
    if let Some(e) = failure {
        return Err(e);
    }
    let ratio = k_eps / k;
    Ok(Tuning { variant, k_eps, sigma_literal: ratio, sigma_consistent: ratio * ratio })
}
