use super::TAIL_TOLERANCE;
use crate::error::{Error, Result};
use crate::specfun::{cyl_bessel, BesselTable, CylKind, Family};
use crate::transform::norm;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Point sources must sit in this radial window.
pub const SOURCE_RADII: (f64, f64) = (2.5, 4.5);
/// Largest radius at which a point source's regular expansion is used.
const POINT_SOURCE_TAIL_RADIUS: f64 = 2.0;

fn unit() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

/// Free field illuminating the cloak.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum IncidentSpec {
    /// `A e^{i k η·x}`.
    PlaneWave {
        direction: Vec<f64>,
        #[serde(default = "unit")]
        amplitude: Complex64,
    },
    /// `A G(x, x₀)` with the outgoing free-space kernel
    /// `e^{ik|x|}/(4π|x|)` (3D) or `(i/4) H₀(k|x|)` (2D).
    PointSource {
        location: Vec<f64>,
        #[serde(default = "unit")]
        amplitude: Complex64,
    },
}

impl IncidentSpec {
    /// Unit plane wave along the first axis.
    pub fn plane_wave(dimension: u32) -> Self {
        let mut direction = vec![0.0; dimension as usize];
        direction[0] = 1.0;
        IncidentSpec::PlaneWave { direction, amplitude: unit() }
    }

    pub fn validate(&self, dimension: u32) -> Result<()> {
        let d = dimension as usize;
        match self {
            IncidentSpec::PlaneWave { direction, amplitude } => {
                if direction.len() != d {
                    return Err(Error::InvalidInput(format!("direction must have {d} components")));
                }
                if (norm(direction) - 1.0).abs() > 1e-12 {
                    return Err(Error::InvalidInput("direction must be a unit vector".into()));
                }
                check_amplitude(*amplitude)
            }
            IncidentSpec::PointSource { location, amplitude } => {
                if location.len() != d {
                    return Err(Error::InvalidInput(format!("location must have {d} components")));
                }
                let r0 = norm(location);
                if !(r0 > SOURCE_RADII.0 && r0 < SOURCE_RADII.1) {
                    return Err(Error::InvalidInput(format!(
                        "point source radius {r0} outside ({}, {})",
                        SOURCE_RADII.0, SOURCE_RADII.1
                    )));
                }
                check_amplitude(*amplitude)
            }
        }
    }

    pub fn amplitude(&self) -> Complex64 {
        match self {
            IncidentSpec::PlaneWave { amplitude, .. } | IncidentSpec::PointSource { amplitude, .. } => *amplitude,
        }
    }

    /// Symmetry axis of the field.
    pub fn axis(&self) -> Vec<f64> {
        match self {
            IncidentSpec::PlaneWave { direction, .. } => direction.clone(),
            IncidentSpec::PointSource { location, .. } => {
                let r = norm(location);
                location.iter().map(|c| c / r).collect()
            }
        }
    }

    /// Radius at which the truncation tail is measured.
    pub fn tail_radius(&self, r_max: f64) -> f64 {
        match self {
            IncidentSpec::PlaneWave { .. } => r_max,
            IncidentSpec::PointSource { .. } => r_max.min(POINT_SOURCE_TAIL_RADIUS),
        }
    }

    /// Kernel prefactors `c_n`: the point-source mode `n` is
    /// `c_n R_n(k r_<) H_n(k r_>)`.
    fn kernel_prefactors(&self, dimension: u32, k: f64, nmax: usize) -> Vec<Complex64> {
        let a = self.amplitude();
        let i = Complex64::i();
        (0..=nmax)
            .map(|n| {
                if dimension == 3 {
                    a * i * k * (2 * n + 1) as f64 / (4.0 * PI)
                } else if n == 0 {
                    a * i / 4.0
                } else {
                    a * i / 2.0
                }
            })
            .collect()
    }

    /// Coefficients `b_n` of the regular expansion `Σ b_n R_n(k r) Θ_n`.
    pub fn coefficients(&self, dimension: u32, k: f64, nmax: usize) -> Result<Vec<Complex64>> {
        match self {
            IncidentSpec::PlaneWave { amplitude, .. } => Ok((0..=nmax)
                .map(|n| {
                    let ipow = Complex64::i().powu(n as u32);
                    let w = if dimension == 3 {
                        (2 * n + 1) as f64
                    } else if n == 0 {
                        1.0
                    } else {
                        2.0
                    };
                    amplitude * ipow * w
                })
                .collect()),
            IncidentSpec::PointSource { location, .. } => {
                let r0 = norm(location);
                let c = self.kernel_prefactors(dimension, k, nmax);
                let t = BesselTable::new(Family::for_dimension(dimension), nmax, Complex64::new(k * r0, 0.0), true)?;
                Ok((0..=nmax).map(|n| c[n] * t.hankel(n).value).collect())
            }
        }
    }

    /// For a point source, its radius and the coefficients of the outgoing
    /// expansion valid beyond it.
    pub fn outer_coefficients(&self, dimension: u32, k: f64, nmax: usize) -> Result<Option<(f64, Vec<Complex64>)>> {
        match self {
            IncidentSpec::PlaneWave { .. } => Ok(None),
            IncidentSpec::PointSource { location, .. } => {
                let r0 = norm(location);
                let c = self.kernel_prefactors(dimension, k, nmax);
                let t = BesselTable::new(Family::for_dimension(dimension), nmax, Complex64::new(k * r0, 0.0), false)?;
                Ok(Some((r0, (0..=nmax).map(|n| c[n] * t.regular(n).value).collect())))
            }
        }
    }

    /// Closed-form value at `x`.
    pub fn direct(&self, dimension: u32, k: f64, x: &[f64]) -> Result<Complex64> {
        match self {
            IncidentSpec::PlaneWave { direction, amplitude } => {
                let phase: f64 = direction.iter().zip(x).map(|(a, b)| a * b).sum();
                Ok(amplitude * Complex64::new(0.0, k * phase).exp())
            }
            IncidentSpec::PointSource { location, amplitude } => {
                let diff: Vec<f64> = x.iter().zip(location).map(|(a, b)| a - b).collect();
                let r = norm(&diff);
                if r == 0.0 {
                    return Err(Error::Domain("incident field evaluated at the point source".into()));
                }
                if dimension == 3 {
                    Ok(amplitude * Complex64::new(0.0, k * r).exp() / (4.0 * PI * r))
                } else {
                    let h = cyl_bessel(CylKind::H1, 0, Complex64::new(k * r, 0.0))?.value;
                    Ok(amplitude * Complex64::i() / 4.0 * h)
                }
            }
        }
    }
}

fn check_amplitude(a: Complex64) -> Result<()> {
    if a.re.is_finite() && a.im.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidInput("amplitude must be finite".into()))
    }
}

/// `b_0 ..= b_nmax`, rejecting truncations whose last term
/// `|b_N R_N(k r_eval)|` is not negligible against the largest term.
pub fn incident_coefficients(
    spec: &IncidentSpec,
    dimension: u32,
    k: f64,
    nmax: usize,
    r_eval: f64,
) -> Result<Vec<Complex64>> {
    spec.validate(dimension)?;
    let b = spec.coefficients(dimension, k, nmax)?;
    let t = BesselTable::new(Family::for_dimension(dimension), nmax, Complex64::new(k * r_eval, 0.0), false)?;
    let mags: Vec<f64> = (0..=nmax).map(|n| (b[n] * t.regular(n).value).norm()).collect();
    let max = mags.iter().copied().fold(0.0, f64::max);
    let tail = if max > 0.0 { mags[nmax] / max } else { 0.0 };
    if tail > TAIL_TOLERANCE {
        return Err(Error::TruncationInsufficient { n: nmax, tail });
    }
    Ok(b)
}
