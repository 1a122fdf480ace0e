use super::SweepRecord;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Abscissa of a rate fit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RateModel {
    /// `log ε`
    LogEps,
    /// `log(1/|ln ε|)`
    LogInvLnEps,
}

impl RateModel {
    fn abscissa(self, eps: f64) -> f64 {
        match self {
            RateModel::LogEps => eps.ln(),
            RateModel::LogInvLnEps => -eps.ln().abs().ln(),
        }
    }
}

/// Least-squares line `log v = slope · x + intercept`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RateFit {
    pub slope: f64,
    pub intercept: f64,
    /// Largest absolute deviation from the line in log coordinates.
    pub residual: f64,
    pub model: RateModel,
}

/// Fits the visibility (`L²`) of the records against the model abscissa.
pub fn fit_rate(records: &[SweepRecord], model: RateModel) -> Result<RateFit> {
    let data: Vec<(f64, f64)> = records.iter().map(|r| (r.epsilon, r.visibility_l2)).collect();
    fit_points(&data, model)
}

/// Fits `(ε, value)` pairs against the model abscissa.
pub fn fit_points(data: &[(f64, f64)], model: RateModel) -> Result<RateFit> {
    if data.len() < 3 {
        return Err(Error::InvalidInput(format!("a rate fit needs at least 3 records, got {}", data.len())));
    }
    let mut pts = Vec::with_capacity(data.len());
    for &(eps, v) in data {
        if !(v > 0.0 && v.is_finite()) {
            return Err(Error::InvalidInput(format!("value at eps = {eps} is not positive")));
        }
        if !(eps > 0.0 && eps < 1.0) && model == RateModel::LogInvLnEps {
            return Err(Error::InvalidInput("the 1/|ln eps| model needs eps in (0, 1)".into()));
        }
        pts.push((model.abscissa(eps), v.ln()));
    }
    let (lo, hi) = pts.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| (lo.min(p.1), hi.max(p.1)));
    if hi - lo < std::f64::consts::LN_10 {
        return Err(Error::DegenerateData(format!(
            "values span {:.3} decades, less than one",
            (hi - lo) / std::f64::consts::LN_10
        )));
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx == 0.0 {
        return Err(Error::DegenerateData("all epsilons coincide".into()));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residual = pts.iter().map(|p| (p.1 - slope * p.0 - intercept).abs()).fold(0.0, f64::max);
    Ok(RateFit { slope, intercept, residual, model })
}
