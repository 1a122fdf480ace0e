use super::{angular_eigenvalue, angular_weight, Domain, FieldSeries, Part};
use crate::error::{Error, Result};
use crate::quadrature::{integrate, integrate_with};
use crate::specfun::{BesselTable, Family};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Relative tolerance of the radial quadrature.
pub const NORM_TOLERANCE: f64 = 1e-9;

/// `L²` norm and full `H¹` norm (`L²` plus gradient) over a region.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Norms {
    pub l2: f64,
    pub h1: f64,
}

/// Field subtracted before taking a difference norm.
#[derive(Debug, Clone, Copy)]
pub enum Reference<'a> {
    /// The free incident field composed with `F_0⁻¹`: `u(y)` outside `B_2`,
    /// `u(2(|y| − 1) ŷ)` in the shell and `u(0)` inside `B_1`.
    FreeFieldLimit,
    /// Another series sharing the same axis, evaluated in its own frame.
    Series(&'a FieldSeries),
}

#[derive(Debug, Clone, Copy)]
pub enum Which<'a> {
    Total,
    Scattered,
    DiffVsReference(Reference<'a>),
}

fn free_field_limit(f: &FieldSeries, r: f64) -> Result<Vec<(Complex64, Complex64)>> {
    let (s, ds) = if r >= 2.0 {
        (r, 1.0)
    } else if r >= 1.0 {
        (2.0 * (r - 1.0), 2.0)
    } else {
        (0.0, 0.0)
    };
    let v = f.radial_virtual(Part::Incident, s)?;
    Ok(v.into_iter().map(|(a, b)| (a, b * ds)).collect())
}

/// Modal functions of the selected field and, for differences, of the
/// subtracted reference.
type Modal = Vec<(Complex64, Complex64)>;

fn modal(f: &FieldSeries, which: &Which, r: f64) -> Result<(Modal, Option<Modal>)> {
    match which {
        Which::Total => Ok((f.radial(Part::Total, r)?, None)),
        Which::Scattered => Ok((f.radial(Part::Scattered, r)?, None)),
        // outside B_2 the limit map is the identity: the difference is the scattered field
        Which::DiffVsReference(Reference::FreeFieldLimit) if r >= 2.0 => Ok((f.radial(Part::Scattered, r)?, None)),
        Which::DiffVsReference(reference) => {
            let mut v = f.radial(Part::Total, r)?;
            let g = match reference {
                Reference::FreeFieldLimit => free_field_limit(f, r)?,
                Reference::Series(g) => g.radial(Part::Total, r)?,
            };
            let zero = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
            if g.len() > v.len() {
                v.resize(g.len(), zero);
            }
            let mut g = g;
            g.resize(v.len(), zero);
            let diff = v.iter().zip(&g).map(|(a, b)| (a.0 - b.0, a.1 - b.1)).collect();
            let scale = v.iter().zip(&g).map(|(a, b)| (a.0.norm() + b.0.norm(), a.1.norm() + b.1.norm()));
            Ok((diff, Some(scale.map(|(x, y)| (Complex64::new(x, 0.0), Complex64::new(y, 0.0))).collect())))
        }
    }
}

fn accumulate(d: u32, r: f64, v: &Modal) -> [f64; 2] {
    let jac = r.powi(d as i32 - 1);
    let mut l2 = 0.0;
    let mut grad = 0.0;
    for (n, (u, du)) in v.iter().enumerate() {
        let w = angular_weight(d, n);
        let lam = angular_eigenvalue(d, n);
        let u2 = u.norm_sqr();
        l2 += w * u2 * jac;
        grad += w * du.norm_sqr() * jac;
        if lam > 0.0 {
            grad += w * lam * u2 / (r * r) * jac;
        }
    }
    [l2, grad]
}

/// Norms of the selected field over `r_in < |x| < r_out` in the series'
/// frame. Angular integration is exact by orthogonality of the modes; the
/// radial integral uses adaptive Gauss–Kronrod split at every interface.
pub fn norm_annulus(f: &FieldSeries, which: &Which, r_in: f64, r_out: f64) -> Result<Norms> {
    if !(r_in >= 0.0 && r_out > r_in && r_out.is_finite()) {
        return Err(Error::InvalidInput(format!("need 0 <= r_in < r_out, got ({r_in}, {r_out})")));
    }
    if let Which::DiffVsReference(Reference::FreeFieldLimit) = which {
        if f.domain == Domain::Virtual {
            return Err(Error::InvalidInput("the F_0 reference needs a physical-frame series".into()));
        }
    }
    let d = f.dimension;
    let mut breaks = f.breaks();
    if let Which::DiffVsReference(reference) = which {
        breaks.extend([1.0, 2.0]);
        if let Reference::Series(g) = reference {
            breaks.extend(g.breaks());
        }
    }
    // components: difference (l2, grad) and, for differences, the magnitude
    // scale (l2, grad) bounding the roundoff of the subtraction
    let integrand = |r: f64| -> Result<[f64; 4]> {
        let (v, scale) = modal(f, which, r)?;
        let [l2, grad] = accumulate(d, r, &v);
        let [sl2, sgrad] = scale.map(|s| accumulate(d, r, &s)).unwrap_or([0.0; 2]);
        Ok([l2, grad, sl2, sgrad])
    };
    let tolerance = |t: &[f64; 4]| {
        let mut tol = t.map(|x| NORM_TOLERANCE * x.abs());
        for m in 0..2 {
            // attainable accuracy of ∫|u − v|² when u and v carry relative
            // error ~1e-15: about 2e-15 · ‖u − v‖ · (‖u‖ + ‖v‖)
            tol[m] = tol[m].max(1e-13 * (t[m].abs() * t[m + 2].abs()).sqrt());
        }
        tol
    };
    let [l2, grad, _, _] = integrate_with(integrand, r_in, r_out, &breaks, tolerance)?;
    Ok(Norms { l2: l2.sqrt(), h1: (l2 + grad).sqrt() })
}

/// `‖h_0(k|·|)‖` (3D) or `‖H_0(k|·|)‖` (2D) in `L²` over the annulus.
pub fn outgoing_mode0_norm(dimension: u32, k: f64, r_in: f64, r_out: f64) -> Result<f64> {
    let fam = Family::for_dimension(dimension);
    let w = angular_weight(dimension, 0);
    let jexp = dimension as i32 - 1;
    let v = integrate(
        |r| {
            let t = BesselTable::new(fam, 0, Complex64::new(k * r, 0.0), true)?;
            Ok([w * t.hankel(0).value.norm_sqr() * r.powi(jexp)])
        },
        r_in,
        r_out,
        &[],
        NORM_TOLERANCE,
    )?;
    Ok(v[0].sqrt())
}
