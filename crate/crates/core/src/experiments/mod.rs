//! Experiment drivers: invisibility-rate sweeps, the detuning instability,
//! resonance blow-up, small-frequency resonance scans and rate fits.
//!
//! Rows of a sweep run in parallel and are collected in input order, so the
//! output does not depend on the thread count.

mod fit;

pub use fit::{fit_points, fit_rate, RateFit, RateModel};

use crate::config::CloakConfig;
use crate::double_double::DoubleDouble;
use crate::error::{Error, Result};
use crate::fields::{
    eigenfunction_normalization, interior_limit, norm_annulus, resonant_mode, Domain, FieldSeries, Norms, Reference,
    Truncation, Which, PROBE_OUTER,
};
use crate::mie::{
    first_resonance, mode_solve, resonance_determinant, tune_sigma, virtual_medium, Layer, LayeredMedium,
    ResonanceSpec, TuningVariant,
};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::ops::Range;

/// Inner radius of the default probe region `B_4 \ B_2`.
pub const PROBE_INNER: f64 = 2.0;
/// Modes inspected when checking a configuration for resonance.
const RESONANCE_MODES: Range<usize> = 0..21;

/// Row flag for a singular interface system.
pub const FLAG_SINGULAR: &str = "singular";

/// One row of an experiment table. Norms of failed rows are NaN and the row
/// carries a flag.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub epsilon: f64,
    /// `‖u_c − u∘F_0⁻¹‖` over the probe annulus (for source-driven runs, `‖u_c‖`).
    pub visibility_l2: f64,
    pub visibility_h1: f64,
    /// Over `B_1`: deviation from the interior limit in rate sweeps, the
    /// field itself in instability and blow-up sweeps.
    pub interior_l2: f64,
    pub interior_h1: f64,
    /// Tuned density, `(k_ε/k)²` convention.
    pub sigma_eps: Option<f64>,
    /// Tuned density, `k_ε/k` convention.
    pub sigma_literal: Option<f64>,
    pub alpha0: Option<Complex64>,
    /// `ε⁻¹|σ_ε − σ_0|` (3D) or `|ln ε| |σ_ε − σ_0|` (2D), in both conventions.
    pub detuning: Option<f64>,
    pub detuning_literal: Option<f64>,
    pub flags: Vec<String>,
}

impl SweepRecord {
    pub(crate) fn new(epsilon: f64, visibility: Norms, interior: Norms) -> Self {
        SweepRecord {
            epsilon,
            visibility_l2: visibility.l2,
            visibility_h1: visibility.h1,
            interior_l2: interior.l2,
            interior_h1: interior.h1,
            sigma_eps: None,
            sigma_literal: None,
            alpha0: None,
            detuning: None,
            detuning_literal: None,
            flags: Vec::new(),
        }
    }

    fn failed(epsilon: f64, flag: &str) -> Self {
        let nan = Norms { l2: f64::NAN, h1: f64::NAN };
        let mut r = SweepRecord::new(epsilon, nan, nan);
        r.flags.push(flag.to_string());
        r
    }

    pub fn is_flagged(&self) -> bool {
        !self.flags.is_empty()
    }
}

/// Knobs shared by the sweeps.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepOptions {
    /// Fixed mode count; `None` grows it until the tail criterion holds.
    pub truncation: Option<usize>,
    /// Probe annulus radii.
    pub probe: (f64, f64),
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions { truncation: None, probe: (PROBE_INNER, PROBE_OUTER) }
    }
}

impl SweepOptions {
    fn truncation(&self) -> Truncation {
        let r_max = self.probe.1.max(PROBE_OUTER);
        match self.truncation {
            Some(n) => Truncation::Fixed { n, r_max },
            None => Truncation::Auto { r_max },
        }
    }

    fn validate(&self) -> Result<()> {
        let (a, b) = self.probe;
        if !(a >= 0.0 && b > a && b <= 5.0) {
            return Err(Error::InvalidInput(format!("probe annulus ({a}, {b}) must satisfy 0 <= r_in < r_out <= 5")));
        }
        Ok(())
    }
}

/// Output of a rate sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceSweep {
    pub records: Vec<SweepRecord>,
    pub model: RateModel,
    pub fit: Option<RateFit>,
    /// Why no fit was produced.
    pub fit_note: Option<String>,
}

fn check_eps_list(eps_list: &[f64]) -> Result<()> {
    if eps_list.iter().any(|&e| !(e > 0.0 && e <= 1.0)) {
        return Err(Error::InvalidInput("every epsilon must lie in (0, 1]".into()));
    }
    Ok(())
}

/// Runs `row` over `eps_list` in parallel, keeping input order. Singular
/// systems become flagged rows; any other failure aborts with its `ε`.
fn sweep_rows(eps_list: &[f64], row: impl Fn(f64) -> Result<SweepRecord> + Sync) -> Result<Vec<SweepRecord>> {
    eps_list
        .par_iter()
        .map(|&eps| match row(eps) {
            Ok(r) => Ok(r),
            Err(Error::SingularSystem { .. }) => Ok(SweepRecord::failed(eps, FLAG_SINGULAR)),
            Err(e) => Err(e.at_eps(eps)),
        })
        .collect()
}

/// Rejects configurations whose homogeneous interior resonates at `k`.
fn ensure_nonresonant(config: &CloakConfig) -> Result<()> {
    if let Some((a, sigma)) = config.homogeneous_interior() {
        if let Some(n) = resonant_mode(config.dimension, a, sigma, config.k)? {
            return Err(Error::Resonant { mode: n as u32, k: config.k });
        }
    }
    Ok(())
}

/// Free field at the origin, the value the interior limit is built from.
fn free_field_at_origin(config: &CloakConfig) -> Result<Complex64> {
    let origin = vec![0.0; config.dimension as usize];
    config.incident.direct(config.dimension, config.k, &origin)
}

/// Visibility and interior deviation of one cloak.
fn convergence_row(config: &CloakConfig, opts: &SweepOptions) -> Result<SweepRecord> {
    let f = FieldSeries::cloak(config, opts.truncation())?;
    let (r_in, r_out) = opts.probe;
    let vis = norm_annulus(&f, &Which::DiffVsReference(Reference::FreeFieldLimit), r_in, r_out)?;
    let interior = if config.homogeneous_interior().is_some() {
        let lim = interior_limit(config.dimension, config, free_field_at_origin(config)?)?;
        norm_annulus(&f, &Which::DiffVsReference(Reference::Series(&lim)), 0.0, 1.0)?
    } else {
        // a passive non-resonant interior tends to zero
        norm_annulus(&f, &Which::Total, 0.0, 1.0)?
    };
    Ok(SweepRecord::new(config.epsilon, vis, interior))
}

/// Rate model matching the dimension's invisibility estimate.
pub fn rate_model(dimension: u32) -> RateModel {
    if dimension == 3 {
        RateModel::LogEps
    } else {
        RateModel::LogInvLnEps
    }
}

/// Visibility and interior deviation over `eps_list`, with a rate fit
/// against `ε` (3D) or `1/|ln ε|` (2D) when the data support one.
pub fn convergence_sweep(config: &CloakConfig, eps_list: &[f64], opts: &SweepOptions) -> Result<ConvergenceSweep> {
    config.validate()?;
    opts.validate()?;
    check_eps_list(eps_list)?;
    ensure_nonresonant(config)?;
    let records = sweep_rows(eps_list, |eps| convergence_row(&config.with_epsilon(eps), opts))?;
    let model = rate_model(config.dimension);
    let usable: Vec<SweepRecord> = records.iter().filter(|r| !r.is_flagged()).cloned().collect();
    let (fit, fit_note) = match fit_rate(&usable, model) {
        Ok(f) => (Some(f), None),
        Err(e @ (Error::DegenerateData(_) | Error::InvalidInput(_))) => (None, Some(e.to_string())),
        Err(e) => return Err(e),
    };
    Ok(ConvergenceSweep { records, model, fit, fit_note })
}

/// Deviation of the interior field from its `ε → 0` limit, resonant
/// configurations included, with a fit of the `L²(B_1)` deviation against `ε`.
pub fn interior_limit_sweep(config: &CloakConfig, eps_list: &[f64], opts: &SweepOptions) -> Result<ConvergenceSweep> {
    config.validate()?;
    opts.validate()?;
    check_eps_list(eps_list)?;
    if config.homogeneous_interior().is_none() {
        return Err(Error::Unsupported("interior limit needs a single homogeneous layer".into()));
    }
    let records = sweep_rows(eps_list, |eps| convergence_row(&config.with_epsilon(eps), opts))?;
    let data: Vec<(f64, f64)> =
        records.iter().filter(|r| !r.is_flagged()).map(|r| (r.epsilon, r.interior_l2)).collect();
    let (fit, fit_note) = match fit_points(&data, RateModel::LogEps) {
        Ok(f) => (Some(f), None),
        Err(e @ (Error::DegenerateData(_) | Error::InvalidInput(_))) => (None, Some(e.to_string())),
        Err(e) => return Err(e),
    };
    Ok(ConvergenceSweep { records, model: RateModel::LogEps, fit, fit_note })
}

/// `ε⁻¹ |σ − σ_0|` in 3D, `|ln ε| |σ − σ_0|` in 2D.
pub fn detuning_product(dimension: u32, eps: f64, sigma: f64, sigma0: f64) -> f64 {
    let gap = (sigma - sigma0).abs();
    if dimension == 3 {
        gap / eps
    } else {
        gap * eps.ln().abs()
    }
}

/// Cloak with interior `(spec.a, σ)` whose mode 0 is solved in double-double:
/// near resonance `α_0 + 1` cancels to `~ε³` in 3D. Records the scattered
/// norm over the probe annulus and the field norm over `B_1`.
fn detuned_row(spec: &ResonanceSpec, eps: f64, sigma: DoubleDouble, opts: &SweepOptions) -> Result<SweepRecord> {
    type D = DoubleDouble;
    let d = spec.dimension;
    let k = spec.k;
    let e = D::from(eps);
    let di = d as i32;
    let a_v = D::from(spec.a) * num_traits::Float::powi(e, 2 - di);
    let s_v = sigma * num_traits::Float::powi(e, -di);
    let zero = D::from(0.0);
    let medium = LayeredMedium::new(d, vec![Layer::new(e, a_v, num_complex::Complex::new(s_v, zero))], D::from(1.0))?;
    let config = CloakConfig::homogeneous(d, k, eps, spec.a, sigma.hi());
    let b0 = config.incident.coefficients(d, k, 0)?[0];
    let sol = mode_solve(&medium, D::from(k), 0, num_complex::Complex::new(D::from(b0.re), D::from(b0.im)))?;

    let mut f = FieldSeries::cloak(&config, opts.truncation())?;
    f.replace_mode(sol.cast::<f64>());
    let (r_in, r_out) = opts.probe;
    let vis = norm_annulus(&f, &Which::Scattered, r_in, r_out)?;
    let interior = norm_annulus(&f, &Which::Total, 0.0, 1.0)?;
    let mut r = SweepRecord::new(eps, vis, interior);
    r.sigma_eps = Some(sigma.hi());
    r.alpha0 = Some(Complex64::new(sol.alpha_n.re.hi(), sol.alpha_n.im.hi()));
    r.detuning = Some(detuning_product(d, eps, sigma.hi(), spec.sigma0));
    Ok(r)
}

fn instability_row(
    spec: &ResonanceSpec,
    eps: f64,
    variant: TuningVariant,
    opts: &SweepOptions,
) -> Result<SweepRecord> {
    type D = DoubleDouble;
    let t = tune_sigma::<D>(spec.dimension, D::from(spec.k), D::from(eps), spec, variant)?;
    let mut r = detuned_row(spec, eps, t.sigma_consistent, opts)?;
    let sigma0_literal = (spec.sigma0 / spec.a).sqrt();
    r.sigma_literal = Some(t.sigma_literal.hi());
    r.detuning_literal = Some(detuning_product(spec.dimension, eps, t.sigma_literal.hi(), sigma0_literal));
    Ok(r)
}

/// Tunes the interior density near the first radial resonance of a unit
/// homogeneous ball (`a = 1`) so that `α_0 = −1`, and records the scattered
/// norm over the probe annulus together with the detuning rates.
pub fn instability_sweep(
    dimension: u32,
    k: f64,
    eps_list: &[f64],
    variant: TuningVariant,
    opts: &SweepOptions,
) -> Result<Vec<SweepRecord>> {
    opts.validate()?;
    check_eps_list(eps_list)?;
    let spec = first_resonance(dimension, 0, 1.0, k)?;
    sweep_rows(eps_list, |eps| instability_row(&spec, eps, variant, opts))
}

/// Control arm of [`instability_sweep`]: the same measurement with the
/// density held at `σ_0 + offset` instead of tuned. Far from resonance the
/// visibility decays at the invisibility rate.
pub fn instability_control_sweep(
    dimension: u32,
    k: f64,
    eps_list: &[f64],
    offset: f64,
    opts: &SweepOptions,
) -> Result<Vec<SweepRecord>> {
    opts.validate()?;
    check_eps_list(eps_list)?;
    let spec = first_resonance(dimension, 0, 1.0, k)?;
    let sigma = spec.sigma0 + offset;
    if !(sigma > 0.0) {
        return Err(Error::InvalidInput(format!("control density sigma0 + offset = {sigma} must be positive")));
    }
    let config = CloakConfig::homogeneous(dimension, k, 1.0, spec.a, sigma);
    ensure_nonresonant(&config)?;
    sweep_rows(eps_list, |eps| detuned_row(&spec, eps, DoubleDouble::from(sigma), opts))
}

/// Interior and exterior norms of the field radiated by the normalized
/// resonant eigenfunction placed inside the cloak.
pub fn blowup_sweep(spec: &ResonanceSpec, eps_list: &[f64], opts: &SweepOptions) -> Result<Vec<SweepRecord>> {
    opts.validate()?;
    check_eps_list(eps_list)?;
    let norm = eigenfunction_normalization(spec.dimension, spec.mode, spec.kappa_star)?;
    sweep_rows(eps_list, |eps| {
        let config = CloakConfig::homogeneous(spec.dimension, spec.k, eps, spec.a, spec.sigma0);
        let medium = virtual_medium::<f64>(&config)?;
        let f = FieldSeries::with_interior_source(medium, spec.k, spec, norm, Domain::Physical { epsilon: eps })?;
        let (r_in, r_out) = opts.probe;
        let ext = norm_annulus(&f, &Which::Total, r_in, r_out)?;
        let int = norm_annulus(&f, &Which::Total, 0.0, 1.0)?;
        Ok(SweepRecord::new(eps, ext, int))
    })
}

/// Smallest normalized resonance determinant of a homogeneous unit ball
/// `(a, σ)` over the frequency grid and modes. `+∞` for an empty grid or
/// mode range.
pub fn nonresonance_scan(dimension: u32, a: f64, sigma: f64, k_grid: &[f64], modes: Range<usize>) -> Result<f64> {
    if !(a > 0.0 && sigma > 0.0) {
        return Err(Error::InvalidInput("a and sigma must be positive".into()));
    }
    let ratio = (sigma / a).sqrt();
    let mins: Vec<f64> = k_grid
        .par_iter()
        .map(|&k| {
            if !(k > 0.0) {
                return Err(Error::InvalidInput(format!("grid frequency {k} must be positive")));
            }
            modes.clone().try_fold(f64::INFINITY, |m, n| Ok(m.min(resonance_determinant(dimension, n, a, k * ratio)?)))
        })
        .collect::<Result<_>>()?;
    Ok(mins.into_iter().fold(f64::INFINITY, f64::min))
}

/// Modes checked by [`nonresonance_scan`] callers that want the default set.
pub fn default_scan_modes() -> Range<usize> {
    RESONANCE_MODES
}
