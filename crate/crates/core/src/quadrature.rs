//! Globally adaptive Gauss–Kronrod (7/15) quadrature for vector integrands.

// node and weight tables keep their published digits
#![allow(clippy::excessive_precision)]

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_3,
    0.949_107_912_342_758_524_526_189_684_047_9,
    0.864_864_423_359_769_072_789_712_788_640_9,
    0.741_531_185_599_394_439_863_864_773_280_8,
    0.586_087_235_467_691_130_294_144_845_693_0,
    0.405_845_151_377_397_166_906_606_412_076_9,
    0.207_784_955_007_898_467_600_689_403_773_2,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_97,
    0.063_092_092_629_978_553_290_700_663_189_2,
    0.104_790_010_322_250_183_839_876_322_541_5,
    0.140_653_259_715_525_918_745_189_590_510_2,
    0.169_004_726_639_267_902_826_583_426_598_6,
    0.190_350_578_064_785_409_913_256_402_421_0,
    0.204_432_940_075_298_892_414_161_999_234_6,
    0.209_482_141_084_727_828_012_999_174_891_7,
];
/// Gauss weights for the odd-indexed Kronrod nodes and the centre.
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_1,
    0.279_705_391_489_276_667_901_467_771_423_8,
    0.381_830_050_505_118_944_950_369_775_488_9,
    0.417_959_183_673_469_387_755_102_040_816_3,
];

/// Maximum number of subintervals before giving up.
pub const MAX_INTERVALS: usize = 4000;

struct Piece<const M: usize> {
    a: f64,
    b: f64,
    value: [f64; M],
    error: [f64; M],
}

fn rule<const M: usize>(f: &mut impl FnMut(f64) -> Result<[f64; M]>, a: f64, b: f64) -> Result<Piece<M>> {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c)?;
    let mut k = [0.0; M];
    let mut g = [0.0; M];
    for m in 0..M {
        k[m] = WGK[7] * fc[m];
        g[m] = WG[3] * fc[m];
    }
    for j in 0..7 {
        let x = h * XGK[j];
        let f1 = f(c - x)?;
        let f2 = f(c + x)?;
        for m in 0..M {
            let s = f1[m] + f2[m];
            k[m] += WGK[j] * s;
            if j % 2 == 1 {
                g[m] += WG[j / 2] * s;
            }
        }
    }
    let mut value = [0.0; M];
    let mut error = [0.0; M];
    for m in 0..M {
        value[m] = k[m] * h;
        error[m] = ((k[m] - g[m]) * h).abs();
    }
    Ok(Piece { a, b, value, error })
}

/// Integrates each component of `f` over `[a, b]`, first splitting at the
/// given `breaks`, until every component's error estimate is below
/// `rel_tol · |value|` (or a roundoff floor). Refinement always bisects the
/// piece with the largest error, with ties going to the leftmost piece.
pub fn integrate<const M: usize>(
    f: impl FnMut(f64) -> Result<[f64; M]>,
    a: f64,
    b: f64,
    breaks: &[f64],
    rel_tol: f64,
) -> Result<[f64; M]> {
    integrate_with(f, a, b, breaks, |total| total.map(|t| rel_tol * t.abs()))
}

/// As [`integrate`], with absolute per-component tolerances computed from the
/// current totals.
pub fn integrate_with<const M: usize>(
    mut f: impl FnMut(f64) -> Result<[f64; M]>,
    a: f64,
    b: f64,
    breaks: &[f64],
    tolerance: impl Fn(&[f64; M]) -> [f64; M],
) -> Result<[f64; M]> {
    if !(a < b) {
        return Ok([0.0; M]);
    }
    // breaks closer than this to a neighbour are merged into it
    let gap = 1e-12 * a.abs().max(b.abs());
    let mut inner: Vec<f64> = breaks.iter().copied().filter(|&x| x > a + gap && x < b - gap).collect();
    inner.sort_by(f64::total_cmp);
    let mut cuts: Vec<f64> = vec![a];
    for x in inner {
        if x - cuts[cuts.len() - 1] > gap {
            cuts.push(x);
        }
    }
    cuts.push(b);
    let mut pieces = Vec::new();
    for w in cuts.windows(2) {
        pieces.push(rule(&mut f, w[0], w[1])?);
    }
    loop {
        let mut total = [0.0; M];
        let mut err = [0.0; M];
        let mut absum = [0.0; M];
        for p in &pieces {
            for m in 0..M {
                total[m] += p.value[m];
                err[m] += p.error[m];
                absum[m] += p.value[m].abs();
            }
        }
        let tol = tolerance(&total);
        let done = (0..M).all(|m| err[m] <= tol[m] || err[m] <= 50.0 * f64::EPSILON * absum[m]);
        if done {
            return Ok(total);
        }
        if pieces.len() >= MAX_INTERVALS {
            return Err(Error::QuadratureNonConvergence { a, b });
        }
        // worst piece relative to each component's tolerance
        let weight = |p: &Piece<M>| -> f64 {
            (0..M).map(|m| p.error[m] / tol[m].max(f64::MIN_POSITIVE)).fold(0.0, f64::max)
        };
        let mut worst = 0;
        let mut worst_w = weight(&pieces[0]);
        for (i, p) in pieces.iter().enumerate().skip(1) {
            let w = weight(p);
            if w > worst_w {
                worst = i;
                worst_w = w;
            }
        }
        let p = pieces.remove(worst);
        let mid = 0.5 * (p.a + p.b);
        if !(mid > p.a && mid < p.b) {
            return Err(Error::QuadratureNonConvergence { a: p.a, b: p.b });
        }
        let left = rule(&mut f, p.a, mid)?;
        let right = rule(&mut f, mid, p.b)?;
        pieces.insert(worst, right);
        pieces.insert(worst, left);
    }
}
