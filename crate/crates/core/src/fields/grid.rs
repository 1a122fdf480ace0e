use super::FieldSeries;
use crate::error::{Error, Result};
use crate::transform::norm;
use serde::{Deserialize, Serialize};
use std::io::Write;

pub const MAX_GRID_POINTS: usize = 1_000_000;
/// Grids must stay inside this ball.
const GRID_RADIUS: f64 = 5.0;

/// Axis-aligned tensor grid; `counts[i]` points from `lower[i]` to `upper[i]`
/// inclusive (a single point sits at `lower[i]`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    pub counts: Vec<usize>,
}

impl GridSpec {
    pub fn validate(&self, dimension: u32) -> Result<()> {
        let d = dimension as usize;
        if self.lower.len() != d || self.upper.len() != d || self.counts.len() != d {
            return Err(Error::InvalidInput(format!("grid needs {d} entries per field")));
        }
        if self.counts.contains(&0) {
            return Err(Error::InvalidInput("grid counts must be positive".into()));
        }
        let total = self.counts.iter().try_fold(1usize, |acc, &c| acc.checked_mul(c));
        match total {
            Some(t) if t <= MAX_GRID_POINTS => {}
            _ => return Err(Error::InvalidInput(format!("grid too large: more than {MAX_GRID_POINTS} points"))),
        }
        // the farthest corner bounds every point
        let far: Vec<f64> = self.lower.iter().zip(&self.upper).map(|(a, b)| a.abs().max(b.abs())).collect();
        if !(norm(&far) <= GRID_RADIUS) {
            return Err(Error::InvalidInput(format!("grid leaves the ball of radius {GRID_RADIUS}")));
        }
        Ok(())
    }

    fn coord(&self, axis: usize, i: usize) -> f64 {
        let c = self.counts[axis];
        if c == 1 {
            self.lower[axis]
        } else {
            self.lower[axis] + (self.upper[axis] - self.lower[axis]) * i as f64 / (c - 1) as f64
        }
    }
}

/// Writes `x,y[,z],re,im,abs` rows in row-major order (last axis fastest).
/// Points landing exactly on a material interface are nudged outward by a
/// relative `1e-9`.
pub fn dump_field<W: Write>(f: &FieldSeries, grid: &GridSpec, out: &mut W) -> Result<()> {
    grid.validate(f.dimension)?;
    let io = |e: std::io::Error| Error::Io(e.to_string());
    let d = f.dimension as usize;
    let names = ["x", "y", "z"];
    writeln!(out, "{},re,im,abs", names[..d].join(",")).map_err(io)?;
    let total: usize = grid.counts.iter().product();
    let mut idx = vec![0usize; d];
    let mut x = vec![0.0; d];
    for _ in 0..total {
        for a in 0..d {
            x[a] = grid.coord(a, idx[a]);
        }
        let u = match f.eval(&x) {
            Err(Error::OnInterface { .. }) => {
                let nudged: Vec<f64> = x.iter().map(|c| c * (1.0 + 1e-9)).collect();
                f.eval(&nudged)?
            }
            other => other?,
        };
        let coords: Vec<String> = x.iter().map(|c| format!("{c:.16e}")).collect();
        writeln!(out, "{},{:.16e},{:.16e},{:.16e}", coords.join(","), u.re, u.im, u.norm()).map_err(io)?;
        for a in (0..d).rev() {
            idx[a] += 1;
            if idx[a] < grid.counts[a] {
                break;
            }
            idx[a] = 0;
        }
    }
    Ok(())
}
