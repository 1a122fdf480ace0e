use crate::error::{Error, Result};
use crate::specfun::{find_root, BesselTable, Family};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::ops::Range;

/// A resonant interior mode of a homogeneous unit ball.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResonanceSpec {
    pub dimension: u32,
    pub mode: usize,
    /// Interior Bessel argument at the unit radius.
    pub kappa_star: f64,
    /// Interior density resonating at `k`: `a (κ*/k)²`.
    pub sigma0: f64,
    pub a: f64,
    pub k: f64,
}

fn regular(d: u32, n: usize, kappa: f64) -> Result<(f64, f64)> {
    let t = BesselTable::new(Family::for_dimension(d), n, Complex64::new(kappa, 0.0), false)?;
    let e = t.regular(n);
    Ok((e.value.re, e.derivative.re))
}

/// Field/flux pair of the interior mode and the exterior direction it must
/// match for a resonance: the Neumann condition in 3D and for the 2D radial
/// mode, a decaying `r^{−n}` harmonic for 2D modes `n ≥ 1`.
fn pair(d: u32, n: usize, a: f64, kappa: f64) -> Result<((f64, f64), (f64, f64))> {
    let (r, dr) = regular(d, n, kappa)?;
    let c = (r, a * kappa * dr);
    let e = if d == 2 && n >= 1 { (1.0, -(n as f64)) } else { (1.0, 0.0) };
    Ok((c, e))
}

/// Resonance function whose zeros are the resonances of mode `n`:
/// `j_n'(κ)` in 3D, `J_0'(κ)` for the 2D radial mode and
/// `a κ J_n'(κ) + n J_n(κ)` for 2D modes `n ≥ 1`.
pub fn resonance_condition(d: u32, n: usize, a: f64, kappa: f64) -> Result<f64> {
    let (r, dr) = regular(d, n, kappa)?;
    Ok(if d == 2 && n >= 1 { a * kappa * dr + n as f64 * r } else { dr })
}

/// `|c × e| / (|c| |e|)` for the interior trace `c` and the matching direction
/// `e`; vanishes exactly at a resonance.
pub fn resonance_determinant(d: u32, n: usize, a: f64, kappa: f64) -> Result<f64> {
    let (c, e) = pair(d, n, a, kappa)?;
    let cross = (c.0 * e.1 - c.1 * e.0).abs();
    let norm = c.0.hypot(c.1) * e.0.hypot(e.1);
    Ok(if norm == 0.0 { 0.0 } else { cross / norm })
}

fn check(d: u32, a: f64) -> Result<()> {
    if !(d == 2 || d == 3) {
        return Err(Error::InvalidInput(format!("dimension must be 2 or 3, got {d}")));
    }
    if !(a > 0.0) {
        return Err(Error::InvalidInput("stiffness must be positive".into()));
    }
    Ok(())
}

/// Sign changes of `g` on a uniform grid over `[lo, hi]`, refined to roots.
fn roots_on(g: impl Fn(f64) -> Result<f64>, lo: f64, hi: f64, steps: usize) -> Result<Vec<f64>> {
    let mut out: Vec<f64> = Vec::new();
    let h = (hi - lo) / steps as f64;
    let mut x0 = lo;
    let mut g0 = g(x0)?;
    for i in 1..=steps {
        let x1 = if i == steps { hi } else { lo + h * i as f64 };
        let g1 = g(x1)?;
        if g0 == 0.0 {
            out.push(x0);
        } else if g0 * g1 < 0.0 {
            let mut err = None;
            let r = find_root(
                |x| {
                    g(x).unwrap_or_else(|e| {
                        err.get_or_insert(e);
                        f64::NAN
                    })
                },
                x0,
                x1,
            )?;
            if let Some(e) = err {
                return Err(e);
            }
            out.push(r);
        }
        x0 = x1;
        g0 = g1;
    }
    if g0 == 0.0 {
        out.push(x0);
    }
    out.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * b.abs().max(1.0));
    Ok(out)
}

/// First resonance of mode `n` for stiffness `a`, with the matching density
/// at frequency `k`.
pub fn first_resonance(d: u32, n: usize, a: f64, k: f64) -> Result<ResonanceSpec> {
    check(d, a)?;
    if !(k > 0.0) {
        return Err(Error::InvalidInput("k must be positive".into()));
    }
    let mut lo = 1e-3;
    while lo < 1e3 {
        let hi = lo + 2.0;
        let roots = roots_on(|x| resonance_condition(d, n, a, x), lo, hi, 100)?;
        if let Some(&kappa_star) = roots.first() {
            return Ok(ResonanceSpec { dimension: d, mode: n, kappa_star, sigma0: a * (kappa_star / k).powi(2), a, k });
        }
        lo = hi;
    }
    Err(Error::NoConvergence { iterations: 0, last_x: lo })
}

/// Every frequency in `[k_lo, k_hi]` at which a homogeneous unit ball with
/// coefficients `(a, σ)` resonates in one of `modes`, sorted by frequency.
pub fn detect_resonances(d: u32, a: f64, sigma: f64, k_lo: f64, k_hi: f64, modes: Range<usize>) -> Result<Vec<ResonanceSpec>> {
    check(d, a)?;
    if !(sigma > 0.0) || !(k_lo > 0.0) || !(k_hi >= k_lo) {
        return Err(Error::InvalidInput("need σ > 0 and 0 < k_lo ≤ k_hi".into()));
    }
    let speed = (sigma / a).sqrt();
    let (lo, hi) = (k_lo * speed, k_hi * speed);
    let steps = (((hi - lo) / 0.02).ceil() as usize).max(200);
    let mut out = Vec::new();
    for n in modes {
        for kappa in roots_on(|x| resonance_condition(d, n, a, x), lo, hi, steps)? {
            out.push(ResonanceSpec { dimension: d, mode: n, kappa_star: kappa, sigma0: sigma, a, k: kappa / speed });
        }
    }
    out.sort_by(|x, y| x.k.total_cmp(&y.k).then(x.mode.cmp(&y.mode)));
    Ok(out)
}
