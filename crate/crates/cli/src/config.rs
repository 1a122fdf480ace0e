//! Run configuration: the TOML schema read by `--config`, the overrides
//! taken from the command line, and validation.

use crate::error::CliError;
use cloakwave::fields::{GridSpec, IncidentSpec};
use cloakwave::mie::TuningVariant;
use cloakwave::{CloakConfig, MaterialLayer};
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

/// Rate-sweep epsilons.
pub const SWEEP_EPS: [f64; 5] = [1e-1, 3e-2, 1e-2, 3e-3, 1e-3];
/// Instability and blow-up epsilons.
pub const RESONANT_EPS: [f64; 3] = [1e-2, 1e-3, 1e-4];
const MAX_SCAN_POINTS: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Experiment {
    Sweep,
    Instability,
    Blowup,
    Resonances,
    ScanK,
    Field,
    Modes,
}

impl Experiment {
    pub fn name(self) -> &'static str {
        match self {
            Experiment::Sweep => "sweep",
            Experiment::Instability => "instability",
            Experiment::Blowup => "blowup",
            Experiment::Resonances => "resonances",
            Experiment::ScanK => "scan-k",
            Experiment::Field => "field",
            Experiment::Modes => "modes",
        }
    }

    /// Table file written when `output.results` is not set.
    pub fn default_table(self) -> &'static str {
        match self {
            Experiment::Sweep | Experiment::Instability | Experiment::Blowup => "results.csv",
            Experiment::Resonances => "resonances.csv",
            Experiment::ScanK => "scan.csv",
            Experiment::Field => "field.csv",
            Experiment::Modes => "modes.csv",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OutputConfig {
    pub dir: PathBuf,
    /// Table file name inside `dir`; defaults per experiment.
    pub results: Option<String>,
    pub summary: String,
}

impl Default for OutputConfig {
    fn default() -> Self {
        OutputConfig { dir: PathBuf::from("cloakwave-out"), results: None, summary: "summary.json".into() }
    }
}

/// Frequency window for resonance detection and `scan-k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ScanConfig {
    pub k_min: f64,
    pub k_max: f64,
    /// Grid points for `scan-k`.
    pub points: usize,
    /// Highest angular mode checked.
    pub max_mode: usize,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig { k_min: 0.05, k_max: 5.0, points: 100, max_mode: 20 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct InstabilityConfig {
    /// Density offset from `σ_0` of the untuned control arm; `None` skips it.
    pub control_offset: Option<f64>,
}

impl Default for InstabilityConfig {
    fn default() -> Self {
        InstabilityConfig { control_offset: Some(0.5) }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct BlowupConfig {
    /// Resonant mode; 0 in 3D and 1 in 2D when unset.
    pub mode: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub experiment: Option<Experiment>,
    pub dimension: u32,
    pub k: f64,
    /// Cloak parameter for the single-cloak runs (`field`, `modes`).
    pub epsilon: f64,
    pub interior: Vec<MaterialLayer>,
    /// Unit plane wave along the first axis when unset.
    pub incident: Option<IncidentSpec>,
    pub eps_list: Option<Vec<f64>>,
    pub probe: [f64; 2],
    pub truncation: Option<usize>,
    pub tuning: TuningVariant,
    pub output: OutputConfig,
    pub scan: ScanConfig,
    pub instability: InstabilityConfig,
    pub blowup: BlowupConfig,
    pub grid: Option<GridSpec>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            experiment: None,
            dimension: 3,
            k: 1.0,
            epsilon: 0.1,
            interior: vec![MaterialLayer::new(1.0, 1.0, 1.0)],
            incident: None,
            eps_list: None,
            probe: [2.0, 4.0],
            truncation: None,
            tuning: TuningVariant::Exact,
            output: OutputConfig::default(),
            scan: ScanConfig::default(),
            instability: InstabilityConfig::default(),
            blowup: BlowupConfig::default(),
            grid: None,
        }
    }
}

/// Command-line settings that take precedence over the file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub experiment: Option<Experiment>,
    pub out: Option<PathBuf>,
    pub truncation: Option<usize>,
    pub tuning: Option<TuningVariant>,
    pub dimension: Option<u32>,
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    pub fn apply(&mut self, o: &Overrides) {
        if let Some(e) = o.experiment {
            self.experiment = Some(e);
        }
        if let Some(dir) = &o.out {
            self.output.dir = dir.clone();
        }
        if let Some(n) = o.truncation {
            self.truncation = Some(n);
        }
        if let Some(t) = o.tuning {
            self.tuning = t;
        }
        if let Some(d) = o.dimension {
            self.dimension = d;
        }
    }

    pub fn cloak(&self) -> CloakConfig {
        CloakConfig {
            dimension: self.dimension,
            k: self.k,
            epsilon: self.epsilon,
            interior: self.interior.clone(),
            incident: self.incident.clone().unwrap_or_else(|| IncidentSpec::plane_wave(self.dimension)),
        }
    }

    pub fn experiment(&self) -> Result<Experiment, CliError> {
        self.experiment.ok_or_else(|| CliError::Config("no experiment selected".into()))
    }

    /// The configured epsilons or the experiment's default list.
    pub fn eps_list(&self) -> Vec<f64> {
        match (&self.eps_list, self.experiment) {
            (Some(l), _) => l.clone(),
            (None, Some(Experiment::Instability | Experiment::Blowup)) => RESONANT_EPS.to_vec(),
            _ => SWEEP_EPS.to_vec(),
        }
    }

    pub fn blowup_mode(&self) -> usize {
        self.blowup.mode.unwrap_or(if self.dimension == 2 { 1 } else { 0 })
    }

    pub fn table_name(&self) -> Result<String, CliError> {
        Ok(self.output.results.clone().unwrap_or_else(|| self.experiment().map(|e| e.default_table()).unwrap_or("results.csv").into()))
    }

    /// Every check that can fail before any computation starts.
    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |m: String| Err(CliError::Config(m));
        let experiment = self.experiment()?;
        self.cloak().validate().map_err(CliError::Core)?;

        let eps = self.eps_list();
        if eps.is_empty() {
            return bad("eps_list is empty".into());
        }
        if let Some(&e) = eps.iter().find(|&&e| !(e > 0.0 && e <= 1.0)) {
            return bad(format!("every epsilon must lie in (0, 1], got {e}"));
        }
        if experiment == Experiment::Sweep {
            if eps.len() < 3 {
                return bad(format!("a rate sweep needs at least 3 epsilons, got {}", eps.len()));
            }
            if eps.windows(2).any(|w| w[1] >= w[0]) {
                return bad("eps_list must be strictly decreasing".into());
            }
        }

        let [r_in, r_out] = self.probe;
        if !(r_in >= 0.0 && r_out > r_in && r_out <= 5.0) {
            return bad(format!("probe ({r_in}, {r_out}) must satisfy 0 <= r_in < r_out <= 5"));
        }
        if self.truncation == Some(0) {
            return bad("truncation must be at least 1".into());
        }
        let s = &self.scan;
        if !(s.k_min > 0.0 && s.k_max >= s.k_min && s.k_max.is_finite()) {
            return bad(format!("scan window [{}, {}] must satisfy 0 < k_min <= k_max", s.k_min, s.k_max));
        }
        if s.points == 0 || s.points > MAX_SCAN_POINTS {
            return bad(format!("scan points must lie in [1, {MAX_SCAN_POINTS}]"));
        }
        if let Some(off) = self.instability.control_offset {
            if !off.is_finite() {
                return bad("instability control_offset must be finite".into());
            }
        }
        if experiment == Experiment::Blowup && self.cloak().homogeneous_interior().is_none() {
            return bad("blowup needs a single homogeneous interior layer".into());
        }
        if experiment == Experiment::Field {
            self.grid_spec().validate(self.dimension).map_err(CliError::Core)?;
        }
        if self.output.summary.is_empty() || self.table_name()?.is_empty() {
            return bad("output file names must not be empty".into());
        }
        Ok(())
    }

    /// The configured grid, or a 71 × 71 plot of `[−3.5, 3.5]²` (the `z = 0`
    /// slice in 3D).
    pub fn grid_spec(&self) -> GridSpec {
        self.grid.clone().unwrap_or_else(|| {
            let d = self.dimension as usize;
            let mut g = GridSpec { lower: vec![-3.5; d], upper: vec![3.5; d], counts: vec![71; d] };
            if d == 3 {
                g.lower[2] = 0.0;
                g.upper[2] = 0.0;
                g.counts[2] = 1;
            }
            g
        })
    }
}
