//! Experiment dispatch and output rendering.

use crate::config::{Experiment, RunConfig};
use crate::error::CliError;
use cloakwave::experiments::{
    blowup_sweep, convergence_sweep, fit_points, fit_rate, instability_control_sweep, instability_sweep,
    nonresonance_scan, rate_model, RateModel, SweepOptions, SweepRecord,
};
use cloakwave::fields::{dump_field, outgoing_mode0_norm, FieldSeries, Truncation};
use cloakwave::mie::{detect_resonances, first_resonance, ResonanceSpec};
use rayon::prelude::*;
use serde_json::{json, Map, Value};
use std::path::Path;

pub const RESULTS_HEADER: &str =
    "epsilon,visibility_l2,visibility_h1,interior_l2,interior_h1,sigma_eps,alpha0_re,alpha0_im,flags";
/// Field and mode dumps are taken with the series valid out to here.
const DUMP_RADIUS: f64 = 5.0;

/// Everything a run writes.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub table_name: String,
    pub table: String,
    pub summary_name: String,
    pub summary: Value,
}

impl Report {
    pub fn write(&self, dir: &Path) -> Result<(), CliError> {
        let io = |e: std::io::Error| CliError::Io(format!("{}: {e}", dir.display()));
        std::fs::create_dir_all(dir).map_err(io)?;
        std::fs::write(dir.join(&self.table_name), &self.table).map_err(io)?;
        let mut text = serde_json::to_string_pretty(&self.summary).map_err(|e| CliError::Io(e.to_string()))?;
        text.push('\n');
        std::fs::write(dir.join(&self.summary_name), text).map_err(io)
    }
}

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn opt(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

pub fn records_csv(rows: &[SweepRecord]) -> String {
    let mut out = String::from(RESULTS_HEADER);
    out.push('\n');
    for r in rows {
        let cells = [
            num(r.epsilon),
            num(r.visibility_l2),
            num(r.visibility_h1),
            num(r.interior_l2),
            num(r.interior_h1),
            opt(r.sigma_eps),
            opt(r.alpha0.map(|a| a.re)),
            opt(r.alpha0.map(|a| a.im)),
            r.flags.join(";"),
        ];
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

fn record_json(r: &SweepRecord) -> Value {
    json!({
        "epsilon": r.epsilon,
        "visibility_l2": r.visibility_l2,
        "visibility_h1": r.visibility_h1,
        "interior_l2": r.interior_l2,
        "interior_h1": r.interior_h1,
        "sigma_eps": r.sigma_eps,
        "sigma_literal": r.sigma_literal,
        "alpha0_re": r.alpha0.map(|a| a.re),
        "alpha0_im": r.alpha0.map(|a| a.im),
        "detuning": r.detuning,
        "detuning_literal": r.detuning_literal,
        "flags": r.flags,
    })
}

fn records_json(rows: &[SweepRecord]) -> Value {
    Value::Array(rows.iter().map(record_json).collect())
}

/// Largest over smallest of the finite positive values; `None` if there are none.
fn spread(values: &[f64]) -> Option<f64> {
    let v: Vec<f64> = values.iter().copied().filter(|x| x.is_finite() && *x > 0.0).collect();
    if v.is_empty() {
        return None;
    }
    Some(v.iter().copied().fold(0.0, f64::max) / v.iter().copied().fold(f64::INFINITY, f64::min))
}

fn fit_json(data: &[(f64, f64)], model: RateModel) -> Value {
    match fit_points(data, model) {
        Ok(f) => json!(f),
        Err(e) => json!({ "error": e.to_string() }),
    }
}

/// Visibility divided by the predicted rate: `ε` in 3D, `1/|ln ε|` in 2D.
fn rate_scaled(dimension: u32, r: &SweepRecord) -> f64 {
    if dimension == 3 {
        r.visibility_l2 / r.epsilon
    } else {
        r.visibility_l2 * r.epsilon.ln().abs()
    }
}

fn options(cfg: &RunConfig) -> SweepOptions {
    SweepOptions { truncation: cfg.truncation, probe: (cfg.probe[0], cfg.probe[1]) }
}

fn truncation(cfg: &RunConfig) -> Truncation {
    match cfg.truncation {
        Some(n) => Truncation::Fixed { n, r_max: DUMP_RADIUS },
        None => Truncation::Auto { r_max: DUMP_RADIUS },
    }
}

/// Resonances of a lossless homogeneous interior in the scan window (widened
/// to include `k`); empty for any other interior.
fn resonances(cfg: &RunConfig) -> Result<Vec<ResonanceSpec>, CliError> {
    match cfg.cloak().homogeneous_interior() {
        Some((a, sigma)) if sigma.im == 0.0 => {
            let lo = cfg.scan.k_min.min(cfg.k);
            let hi = cfg.scan.k_max.max(cfg.k);
            Ok(detect_resonances(cfg.dimension, a, sigma.re, lo, hi, 0..cfg.scan.max_mode + 1)?)
        }
        _ => Ok(Vec::new()),
    }
}

fn lossless_interior(cfg: &RunConfig) -> Result<(f64, f64), CliError> {
    match cfg.cloak().homogeneous_interior() {
        Some((a, sigma)) if sigma.im == 0.0 => Ok((a, sigma.re)),
        _ => Err(CliError::Config("this experiment needs a single lossless homogeneous interior layer".into())),
    }
}

/// Validates `cfg` and runs its experiment. Nothing is written.
pub fn execute(cfg: &RunConfig) -> Result<Report, CliError> {
    cfg.validate()?;
    let experiment = cfg.experiment()?;
    if matches!(experiment, Experiment::Resonances | Experiment::ScanK) {
        lossless_interior(cfg)?;
    }
    let (table, body) = match experiment {
        Experiment::Sweep => sweep(cfg)?,
        Experiment::Instability => instability(cfg)?,
        Experiment::Blowup => blowup(cfg)?,
        Experiment::Resonances => resonance_table(cfg)?,
        Experiment::ScanK => scan_k(cfg)?,
        Experiment::Field => field(cfg)?,
        Experiment::Modes => modes(cfg)?,
    };
    let mut summary = Map::new();
    summary.insert("tool".into(), json!("cloakwave"));
    summary.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    summary.insert("experiment".into(), json!(experiment.name()));
    summary.insert("config".into(), serde_json::to_value(cfg).map_err(|e| CliError::Io(e.to_string()))?);
    summary.insert("resonances".into(), json!(resonances(cfg)?));
    if let Value::Object(extra) = body {
        summary.extend(extra);
    }
    Ok(Report {
        table_name: cfg.table_name()?,
        table,
        summary_name: cfg.output.summary.clone(),
        summary: Value::Object(summary),
    })
}

fn sweep(cfg: &RunConfig) -> Result<(String, Value), CliError> {
    let d = cfg.dimension;
    let out = convergence_sweep(&cfg.cloak(), &cfg.eps_list(), &options(cfg))?;
    let interior: Vec<(f64, f64)> = out.records.iter().map(|r| (r.epsilon, r.interior_l2)).collect();
    let scaled: Vec<f64> = out.records.iter().map(|r| rate_scaled(d, r)).collect();
    let body = json!({
        "fits": {
            "model": out.model,
            "visibility_l2": out.fit,
            "visibility_note": out.fit_note,
            "interior_l2": fit_json(&interior, out.model),
        },
        "rate_scaled_visibility": scaled,
        "rate_scaled_spread": spread(&scaled),
        "records": records_json(&out.records),
    });
    Ok((records_csv(&out.records), body))
}

fn instability(cfg: &RunConfig) -> Result<(String, Value), CliError> {
    let (d, k) = (cfg.dimension, cfg.k);
    let eps = cfg.eps_list();
    let opts = options(cfg);
    let rows = instability_sweep(d, k, &eps, cfg.tuning, &opts)?;
    let spec = first_resonance(d, 0, 1.0, k)?;
    let h0 = outgoing_mode0_norm(d, k, cfg.probe[0], cfg.probe[1])?;
    let detuning: Vec<f64> = rows.iter().filter_map(|r| r.detuning).collect();
    let literal: Vec<f64> = rows.iter().filter_map(|r| r.detuning_literal).collect();
    let control = match cfg.instability.control_offset {
        Some(offset) => {
            let c = instability_control_sweep(d, k, &eps, offset, &opts)?;
            let fit = match fit_rate(&c, rate_model(d)) {
                Ok(f) => json!(f),
                Err(e) => json!({ "error": e.to_string() }),
            };
            let scaled: Vec<f64> = c.iter().map(|r| rate_scaled(d, r)).collect();
            json!({
                "offset": offset,
                "sigma": spec.sigma0 + offset,
                "fit": fit,
                "rate_scaled_visibility": scaled,
                "rate_scaled_spread": spread(&scaled),
                "records": records_json(&c),
            })
        }
        None => Value::Null,
    };
    let body = json!({
        "tuning": cfg.tuning,
        "resonance": spec,
        "outgoing_mode0_norm": h0,
        "fits": {
            "detuning_spread": spread(&detuning),
            "detuning_literal_spread": spread(&literal),
        },
        "records": records_json(&rows),
        "control": control,
    });
    Ok((records_csv(&rows), body))
}

fn blowup(cfg: &RunConfig) -> Result<(String, Value), CliError> {
    let (a, _) = cfg.cloak().homogeneous_interior().ok_or_else(|| CliError::Config("blowup needs a homogeneous interior".into()))?;
    let spec = first_resonance(cfg.dimension, cfg.blowup_mode(), a, cfg.k)?;
    let rows = blowup_sweep(&spec, &cfg.eps_list(), &options(cfg))?;
    let products: Vec<f64> = rows.iter().map(|r| r.epsilon * r.interior_h1).collect();
    let h1: Vec<(f64, f64)> = rows.iter().map(|r| (r.epsilon, r.interior_h1)).collect();
    let growth = match (rows.first(), rows.last()) {
        (Some(f), Some(l)) => Some(l.interior_h1 / f.interior_h1),
        _ => None,
    };
    let body = json!({
        "resonance": spec,
        "fits": {
            "interior_h1": fit_json(&h1, RateModel::LogEps),
            "eps_interior_h1_spread": spread(&products),
            "interior_h1_growth": growth,
        },
        "eps_interior_h1": products,
        "records": records_json(&rows),
    });
    Ok((records_csv(&rows), body))
}

fn resonance_table(cfg: &RunConfig) -> Result<(String, Value), CliError> {
    let list = resonances(cfg)?;
    let mut out = String::from("mode,kappa_star,k,sigma0\n");
    for r in &list {
        out.push_str(&format!("{},{},{},{}\n", r.mode, num(r.kappa_star), num(r.k), num(r.sigma0)));
    }
    Ok((out, json!({ "window": [cfg.scan.k_min.min(cfg.k), cfg.scan.k_max.max(cfg.k)] })))
}

fn scan_k(cfg: &RunConfig) -> Result<(String, Value), CliError> {
    let (a, sigma) = lossless_interior(cfg)?;
    let s = &cfg.scan;
    let grid: Vec<f64> = (0..s.points)
        .map(|i| if s.points == 1 { s.k_min } else { s.k_min + (s.k_max - s.k_min) * i as f64 / (s.points - 1) as f64 })
        .collect();
    let dets = grid
        .par_iter()
        .map(|&k| nonresonance_scan(cfg.dimension, a, sigma, &[k], 0..s.max_mode + 1))
        .collect::<Result<Vec<f64>, _>>()?;
    let mut out = String::from("k,min_determinant\n");
    let mut best = (f64::NAN, f64::INFINITY);
    for (&k, &v) in grid.iter().zip(&dets) {
        out.push_str(&format!("{},{}\n", num(k), num(v)));
        if v < best.1 {
            best = (k, v);
        }
    }
    Ok((out, json!({ "min_determinant": best.1, "k_at_min": best.0 })))
}

fn field(cfg: &RunConfig) -> Result<(String, Value), CliError> {
    let f = FieldSeries::cloak(&cfg.cloak(), truncation(cfg))?;
    let grid = cfg.grid_spec();
    let mut buf = Vec::new();
    dump_field(&f, &grid, &mut buf)?;
    let table = String::from_utf8(buf).map_err(|e| CliError::Io(e.to_string()))?;
    Ok((table, json!({ "epsilon": cfg.epsilon, "grid": grid, "truncation": f.truncation })))
}

fn modes(cfg: &RunConfig) -> Result<(String, Value), CliError> {
    let f = FieldSeries::cloak(&cfg.cloak(), truncation(cfg))?;
    let mut out = String::from("n,b_re,b_im,alpha_re,alpha_im,alpha_abs\n");
    for m in &f.modes {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            m.n,
            num(m.b_n.re),
            num(m.b_n.im),
            num(m.alpha_n.re),
            num(m.alpha_n.im),
            num(m.alpha_n.norm())
        ));
    }
    Ok((out, json!({ "epsilon": cfg.epsilon, "truncation": f.truncation, "k_exterior": f.k_exterior })))
}
