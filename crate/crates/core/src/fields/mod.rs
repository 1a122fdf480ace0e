//! Modal field series: incident expansions, point evaluation in the virtual
//! and physical frames, annulus norms and interior limit fields.
//!
//! Every field here is axisymmetric about one axis (the plane-wave direction
//! or the point-source location), so mode `n` carries the angular factor
//! `P_n(cos γ)` in 3D and `cos(nγ)` in 2D.

mod grid;
mod incident;
mod limit;
mod norms;

pub use grid::{dump_field, GridSpec, MAX_GRID_POINTS};
pub use incident::{incident_coefficients, IncidentSpec};
pub use limit::{eigenfunction_normalization, interior_limit, resonant_mode, RESONANCE_THRESHOLD};
pub use norms::{norm_annulus, outgoing_mode0_norm, Norms, Reference, Which, NORM_TOLERANCE};

use crate::config::CloakConfig;
use crate::error::{Error, Result};
use crate::mie::{
    interior_source_mode_solve, mode_solve_all, virtual_medium, LayeredMedium, ModeSolution, ResonanceSpec,
};
use crate::specfun::{BesselTable, MAX_ORDER};
use crate::transform::BlowupMap;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Relative size of the last retained mode against the largest one.
pub const TAIL_TOLERANCE: f64 = 1e-14;
/// Outer radius of the default probe region `B_4 \ B_2`.
pub const PROBE_OUTER: f64 = 4.0;

/// Frame a series is evaluated in.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Domain {
    /// Coordinates of the layered medium itself.
    Virtual,
    /// Cloak coordinates: points are pulled back through `F_ε⁻¹` first.
    Physical { epsilon: f64 },
}

/// How many modes to keep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Truncation {
    /// Start at `⌈e k r_max / 2⌉ + 15` and grow until the tail criterion holds.
    Auto { r_max: f64 },
    /// Exactly `0..=n`; the tail criterion is still enforced at `r_max`.
    Fixed { n: usize, r_max: f64 },
}

/// Which piece of a field to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Part {
    Total,
    Scattered,
    Incident,
}

pub fn default_truncation(k: f64, r_max: f64) -> usize {
    ((std::f64::consts::E * k * r_max / 2.0).ceil() as usize + 15).min(MAX_ORDER)
}

/// Angular factors `Θ_0 ..= Θ_nmax` at `t = cos γ`.
pub fn angular(dimension: u32, nmax: usize, t: f64) -> Vec<f64> {
    let mut p = Vec::with_capacity(nmax + 1);
    p.push(1.0);
    if nmax >= 1 {
        p.push(t);
    }
    for n in 1..nmax {
        let nf = n as f64;
        let next = if dimension == 3 {
            ((2.0 * nf + 1.0) * t * p[n] - nf * p[n - 1]) / (nf + 1.0)
        } else {
            2.0 * t * p[n] - p[n - 1]
        };
        p.push(next);
    }
    p
}

/// `∫ Θ_n² dΩ` over the unit sphere or circle.
pub fn angular_weight(dimension: u32, n: usize) -> f64 {
    use std::f64::consts::PI;
    if dimension == 3 {
        4.0 * PI / (2 * n + 1) as f64
    } else if n == 0 {
        2.0 * PI
    } else {
        PI
    }
}

/// Eigenvalue of the angular Laplacian for mode `n`.
pub fn angular_eigenvalue(dimension: u32, n: usize) -> f64 {
    let nf = n as f64;
    if dimension == 3 {
        nf * (nf + 1.0)
    } else {
        nf * nf
    }
}

/// A truncated modal expansion of a solution.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldSeries {
    pub dimension: u32,
    pub k: f64,
    pub k_exterior: f64,
    pub truncation: usize,
    pub modes: Vec<ModeSolution<f64>>,
    pub domain: Domain,
    pub medium: LayeredMedium<f64>,
    pub incident: Option<IncidentSpec>,
    /// Unit symmetry axis.
    pub axis: Vec<f64>,
}

fn zero_mode(n: usize, layers: usize) -> ModeSolution<f64> {
    let z = Complex64::new(0.0, 0.0);
    ModeSolution { n, b_n: z, alpha_n: z, layer_coeffs: vec![(z, z); layers], particular: None }
}

impl FieldSeries {
    /// Solves the layered medium under the given incident field.
    pub fn solve(
        medium: LayeredMedium<f64>,
        k: f64,
        incident: &IncidentSpec,
        domain: Domain,
        truncation: Truncation,
    ) -> Result<Self> {
        incident.validate(medium.dimension)?;
        let d = medium.dimension;
        let k_ext = medium.exterior_wavenumber(k);
        let (mut n, r_max, grow) = match truncation {
            Truncation::Auto { r_max } => (default_truncation(k_ext, r_max), r_max, true),
            Truncation::Fixed { n, r_max } => (n, r_max, false),
        };
        let r_tail = incident.tail_radius(r_max);
        loop {
            let b = incident.coefficients(d, k_ext, n)?;
            let modes = mode_solve_all(&medium, k, &b)?;
            let tail = tail_ratio(d, k_ext, r_tail, &modes)?;
            if tail <= TAIL_TOLERANCE {
                return Ok(FieldSeries {
                    dimension: d,
                    k,
                    k_exterior: k_ext,
                    truncation: n,
                    modes,
                    domain,
                    medium,
                    incident: Some(incident.clone()),
                    axis: incident.axis(),
                });
            }
            if !grow || n >= MAX_ORDER {
                return Err(Error::TruncationInsufficient { n, tail });
            }
            n = (n + 5).min(MAX_ORDER);
        }
    }

    /// Physical-frame series of a cloak: the virtual small inclusion under the
    /// configured incident field.
    pub fn cloak(config: &CloakConfig, truncation: Truncation) -> Result<Self> {
        config.validate()?;
        let medium = virtual_medium::<f64>(config)?;
        Self::solve(medium, config.k, &config.incident, Domain::Physical { epsilon: config.epsilon }, truncation)
    }

    /// Field radiated by the interior eigenfunction source of `spec` with no
    /// incident wave. `medium` is the virtual medium, so its innermost radius
    /// is `ε`.
    pub fn with_interior_source(
        medium: LayeredMedium<f64>,
        k: f64,
        spec: &ResonanceSpec,
        normalization: f64,
        domain: Domain,
    ) -> Result<Self> {
        let sol = interior_source_mode_solve(&medium, k, spec, normalization)?;
        Ok(Self::from_mode(medium, k, sol, domain))
    }

    /// Series made of a single solved mode (lower modes zero).
    pub fn from_mode(medium: LayeredMedium<f64>, k: f64, sol: ModeSolution<f64>, domain: Domain) -> Self {
        let n = sol.n;
        let mut modes: Vec<_> = (0..n).map(|m| zero_mode(m, medium.layers.len())).collect();
        modes.push(sol);
        FieldSeries {
            dimension: medium.dimension,
            k,
            k_exterior: medium.exterior_wavenumber(k),
            truncation: n,
            modes,
            domain,
            axis: first_axis(medium.dimension),
            medium,
            incident: None,
        }
    }

    /// Replaces the solution of one mode, e.g. with a higher-precision solve.
    pub fn replace_mode(&mut self, sol: ModeSolution<f64>) {
        let n = sol.n;
        self.modes[n] = sol;
    }

    /// Virtual radius of a point at radius `r` in this series' frame, and the
    /// factor `ds/dr`.
    fn pull_back(&self, r: f64) -> Result<(f64, f64)> {
        match self.domain {
            Domain::Virtual => Ok((r, 1.0)),
            Domain::Physical { epsilon } => {
                let m = BlowupMap::new(epsilon, self.dimension)?;
                let s = m.radial_inverse(r);
                Ok((s, 1.0 / m.radial_derivative(s)?))
            }
        }
    }

    /// Radii (in this series' frame) where the modal functions are not smooth.
    pub fn breaks(&self) -> Vec<f64> {
        let mut out = Vec::new();
        let push_image = |out: &mut Vec<f64>, s: f64| match self.domain {
            Domain::Virtual => out.push(s),
            Domain::Physical { epsilon } => {
                if let Ok(m) = BlowupMap::new(epsilon, self.dimension) {
                    if let Ok(r) = m.radial(s) {
                        out.push(r)
                    }
                }
            }
        };
        for l in &self.medium.layers {
            push_image(&mut out, l.outer_radius);
        }
        if let Domain::Physical { .. } = self.domain {
            out.push(1.0);
            out.push(2.0);
        }
        if let Some(IncidentSpec::PointSource { location, .. }) = &self.incident {
            push_image(&mut out, crate::transform::norm(location));
        }
        out
    }

    /// `(f_n(r), f_n'(r))` for every mode at radius `r` of this series' frame.
    pub fn radial(&self, part: Part, r: f64) -> Result<Vec<(Complex64, Complex64)>> {
        let (s, ds) = self.pull_back(r)?;
        let v = self.radial_virtual(part, s)?;
        Ok(v.into_iter().map(|(f, df)| (f, df * ds)).collect())
    }

    fn incident_radial(&self, s: f64) -> Result<Vec<(Complex64, Complex64)>> {
        let n = self.truncation;
        let fam = self.medium.family();
        let ke = self.k_exterior;
        // without an incident spec the regular part comes from the stored b_n
        let outer = match &self.incident {
            Some(inc) => inc.outer_coefficients(self.dimension, ke, n)?,
            None => None,
        };
        match outer {
            Some((r0, c)) if s > r0 => {
                let t = BesselTable::new(fam, n, Complex64::new(ke * s, 0.0), true)?;
                Ok((0..=n).map(|m| {
                    let h = t.hankel(m);
                    (c[m] * h.value, c[m] * h.derivative * ke)
                }).collect())
            }
            _ => {
                let t = BesselTable::new(fam, n, Complex64::new(ke * s, 0.0), false)?;
                Ok(self
                    .modes
                    .iter()
                    .map(|m| {
                        let e = t.regular(m.n);
                        (m.b_n * e.value, m.b_n * e.derivative * ke)
                    })
                    .collect())
            }
        }
    }

    /// Modal functions at virtual radius `s`.
    pub fn radial_virtual(&self, part: Part, s: f64) -> Result<Vec<(Complex64, Complex64)>> {
        let n = self.truncation;
        let fam = self.medium.family();
        let need_incident = part != Part::Total || self.medium.layer_at(s)?.is_none();
        let inc = if need_incident { Some(self.incident_radial(s)?) } else { None };
        if part == Part::Incident {
            return Ok(inc.unwrap());
        }
        match self.medium.layer_at(s)? {
            Some(j) => {
                let layer = &self.medium.layers[j];
                let kappa = layer.wavenumber(self.k);
                let t = BesselTable::new(fam, n, kappa * s, j > 0)?;
                let mut out = Vec::with_capacity(n + 1);
                for m in &self.modes {
                    let (c, d) = m.layer_coeffs[j];
                    let r = t.regular(m.n);
                    let mut f = c * r.value;
                    let mut df = c * r.derivative * kappa;
                    if j > 0 {
                        let sg = t.singular(m.n);
                        f += d * sg.value;
                        df += d * sg.derivative * kappa;
                    }
                    if j == 0 {
                        if let Some(p) = &m.particular {
                            let (pv, pd) = p.eval(s);
                            f += pv;
                            df += pd;
                        }
                    }
                    out.push((f, df));
                }
                if part == Part::Scattered {
                    let inc = inc.unwrap();
                    for (o, i) in out.iter_mut().zip(inc) {
                        o.0 -= i.0;
                        o.1 -= i.1;
                    }
                }
                Ok(out)
            }
            None => {
                let ke = self.k_exterior;
                let t = BesselTable::new(fam, n, Complex64::new(ke * s, 0.0), true)?;
                let mut out: Vec<_> = self
                    .modes
                    .iter()
                    .map(|m| {
                        let h = t.hankel(m.n);
                        (m.alpha_n * h.value, m.alpha_n * h.derivative * ke)
                    })
                    .collect();
                if part == Part::Total {
                    for (o, i) in out.iter_mut().zip(inc.unwrap()) {
                        o.0 += i.0;
                        o.1 += i.1;
                    }
                }
                Ok(out)
            }
        }
    }

    /// Value of the requested part at a point of this series' frame.
    pub fn eval_part(&self, part: Part, x: &[f64]) -> Result<Complex64> {
        if x.len() != self.dimension as usize {
            return Err(Error::InvalidInput(format!("point must have {} coordinates", self.dimension)));
        }
        let r = crate::transform::norm(x);
        let (s, _) = self.pull_back(r)?;
        let outside = self.medium.layer_at(s)?.is_none();
        // outside the scatterer the incident wave is evaluated in closed form
        if let (true, Some(incident)) = (outside && part != Part::Scattered, &self.incident) {
            let virt: Vec<f64> = if r > 0.0 { x.iter().map(|c| c * s / r).collect() } else { x.to_vec() };
            let inc = incident.direct(self.dimension, self.k_exterior, &virt)?;
            if part == Part::Incident {
                return Ok(inc);
            }
            return Ok(inc + self.sum_modes(Part::Scattered, x, r, s)?);
        }
        self.sum_modes(part, x, r, s)
    }

    fn sum_modes(&self, part: Part, x: &[f64], r: f64, s: f64) -> Result<Complex64> {
        let t = if r > 0.0 { x.iter().zip(&self.axis).map(|(a, b)| a * b).sum::<f64>() / r } else { 1.0 };
        let theta = angular(self.dimension, self.truncation, t.clamp(-1.0, 1.0));
        let f = self.radial_virtual(part, s)?;
        Ok(f.iter().zip(&theta).map(|((v, _), th)| v * th).sum())
    }

    /// Total field at a point of this series' frame.
    pub fn eval(&self, x: &[f64]) -> Result<Complex64> {
        self.eval_part(Part::Total, x)
    }
}

fn first_axis(dimension: u32) -> Vec<f64> {
    let mut v = vec![0.0; dimension as usize];
    v[0] = 1.0;
    v
}

/// `|α_N| + |b_N R_N(k r)|` relative to the largest mode.
fn tail_ratio(d: u32, k: f64, r: f64, modes: &[ModeSolution<f64>]) -> Result<f64> {
    let n = modes.len() - 1;
    let fam = crate::specfun::Family::for_dimension(d);
    let t = BesselTable::new(fam, n, Complex64::new(k * r, 0.0), false)?;
    let mags: Vec<f64> = modes.iter().map(|m| m.alpha_n.norm() + (m.b_n * t.regular(m.n).value).norm()).collect();
    let max = mags.iter().copied().fold(0.0, f64::max);
    if max == 0.0 {
        return Ok(0.0);
    }
    Ok(mags[n] / max)
}

/// Total field of `f` at `x` in the series' frame.
pub fn eval_field(f: &FieldSeries, x: &[f64]) -> Result<Complex64> {
    f.eval(x)
}
