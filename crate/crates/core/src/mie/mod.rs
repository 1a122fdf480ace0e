//! Per-mode transmission solves for concentric isotropic layers.
//!
//! In layer `j` a mode is `c_j R_n(κ_j r) + d_j S_n(κ_j r)` with `R` regular
//! (`J_n`/`j_n`) and `S` singular (`Y_n`/`y_n`); outside it is
//! `b_n R_n(k_e r) + α_n H_n(k_e r)`. Field and flux `a ∂_r u` are continuous
//! at every interface. Coefficients are pushed outward one interface at a time
//! with 2×2 transfer matrices whose inverses come from the analytic Wronskian,
//! and the last interface gives a 2×2 system for the inner amplitude and `α_n`.

mod closed_form;
mod resonance;
mod source;

pub use closed_form::{alpha0_closed_form, tune_sigma, Tuning, TuningVariant};
pub use resonance::{
    detect_resonances, first_resonance, resonance_condition, resonance_determinant, ResonanceSpec,
};
pub use source::{interior_source_mode_solve, mode_solve_with_source, InteriorSourceMode, ParticularSolution};

use crate::config::CloakConfig;
use crate::error::{Error, Result};
use crate::scalar::{cast_real, CastComplex, Cx, Real};
use crate::specfun::{BesselEval, BesselTable, Family, MAX_ORDER};

/// Largest frequency accepted by the solver.
pub const MAX_WAVENUMBER: f64 = 50.0;
/// Interface systems with an equilibrated condition number above this are
/// reported as singular.
pub const SINGULAR_CONDITION: f64 = 1e12;

/// One homogeneous isotropic shell `r_{j-1} < r < outer_radius`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Layer<T: Real = f64> {
    pub outer_radius: T,
    pub a: T,
    pub sigma: Cx<T>,
}

impl<T: Real> Layer<T> {
    pub fn new(outer_radius: T, a: T, sigma: Cx<T>) -> Self {
        Layer { outer_radius, a, sigma }
    }

    /// `κ = k √(σ/a)` on the principal branch.
    pub fn wavenumber(&self, k: T) -> Cx<T> {
        (self.sigma / self.a).sqrt() * k
    }

    pub fn cast<U: Real>(&self) -> Layer<U> {
        Layer { outer_radius: cast_real(self.outer_radius), a: cast_real(self.a), sigma: self.sigma.cast() }
    }
}

/// Concentric layers inside an exterior with `a = 1` and real density.
#[derive(Debug, Clone, PartialEq)]
pub struct LayeredMedium<T: Real = f64> {
    pub dimension: u32,
    pub layers: Vec<Layer<T>>,
    pub exterior_sigma: T,
}

impl<T: Real> LayeredMedium<T> {
    pub fn new(dimension: u32, layers: Vec<Layer<T>>, exterior_sigma: T) -> Result<Self> {
        if !(dimension == 2 || dimension == 3) {
            return Err(Error::InvalidInput(format!("dimension must be 2 or 3, got {dimension}")));
        }
        if layers.is_empty() {
            return Err(Error::InvalidInput("medium needs at least one layer".into()));
        }
        let mut last = T::zero();
        for (j, l) in layers.iter().enumerate() {
            if !(l.outer_radius > last) || !l.outer_radius.is_finite() {
                return Err(Error::InvalidInput(format!("layer {j}: radii must increase strictly")));
            }
            if !(l.a > T::zero()) || !l.a.is_finite() {
                return Err(Error::InvalidInput(format!("layer {j}: stiffness must be positive")));
            }
            if !(l.sigma.re > T::zero()) || l.sigma.im < T::zero() || !l.sigma.re.is_finite() {
                return Err(Error::InvalidInput(format!(
                    "layer {j}: density needs Re σ > 0 and Im σ ≥ 0"
                )));
            }
            last = l.outer_radius;
        }
        if !(exterior_sigma > T::zero()) || !exterior_sigma.is_finite() {
            return Err(Error::InvalidInput("exterior density must be positive".into()));
        }
        Ok(LayeredMedium { dimension, layers, exterior_sigma })
    }

    pub fn family(&self) -> Family {
        Family::for_dimension(self.dimension)
    }

    pub fn exterior_wavenumber(&self, k: T) -> T {
        k * self.exterior_sigma.sqrt()
    }

    pub fn outer_radius(&self) -> T {
        self.layers[self.layers.len() - 1].outer_radius
    }

    /// Index of the layer containing `r`, `None` outside. Points within a
    /// relative `1e-12` of an interface are rejected.
    pub fn layer_at(&self, r: T) -> Result<Option<usize>> {
        let tol = T::lit(1e-12);
        for (j, l) in self.layers.iter().enumerate() {
            if (r - l.outer_radius).abs() <= tol * l.outer_radius {
                return Err(Error::OnInterface { radius: l.outer_radius.as_f64() });
            }
            if r < l.outer_radius {
                return Ok(Some(j));
            }
        }
        Ok(None)
    }

    pub fn cast<U: Real>(&self) -> LayeredMedium<U> {
        LayeredMedium {
            dimension: self.dimension,
            layers: self.layers.iter().map(|l| l.cast()).collect(),
            exterior_sigma: cast_real(self.exterior_sigma),
        }
    }
}

/// Coefficients of one angular mode.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeSolution<T: Real = f64> {
    pub n: usize,
    pub b_n: Cx<T>,
    pub alpha_n: Cx<T>,
    /// `(c_j, d_j)` per layer, innermost first; `d_0 = 0`.
    pub layer_coeffs: Vec<(Cx<T>, Cx<T>)>,
    /// Source term added to the innermost layer.
    pub particular: Option<ParticularSolution<T>>,
}

impl<T: Real> ModeSolution<T> {
    pub fn cast<U: Real>(&self) -> ModeSolution<U> {
        ModeSolution {
            n: self.n,
            b_n: self.b_n.cast(),
            alpha_n: self.alpha_n.cast(),
            layer_coeffs: self.layer_coeffs.iter().map(|(c, d)| (c.cast(), d.cast())).collect(),
            particular: self.particular.map(|p| p.cast()),
        }
    }
}

/// Interior layers of a cloak pulled back through `F_ε`: a small inclusion of
/// radius `ε` in free space with coefficients `(ε^{2−d} a, ε^{−d} σ)`.
pub fn virtual_medium<T: Real>(config: &CloakConfig) -> Result<LayeredMedium<T>> {
    let eps: T = T::lit(config.epsilon);
    let d = config.dimension as i32;
    let layers = config
        .interior
        .iter()
        .map(|l| {
            let l: Layer<T> = l.to_layer().cast();
            Layer {
                outer_radius: l.outer_radius * eps,
                a: l.a * eps.powi(2 - d),
                sigma: l.sigma * eps.powi(-d),
            }
        })
        .collect();
    LayeredMedium::new(config.dimension, layers, T::one())
}

/// The same problem rescaled by `x ↦ x/ε`: unit inclusion, coefficients
/// `(ε^{2−d} a, ε^{2−d} σ)` and exterior density `ε²`. Outgoing coefficients
/// coincide with those of [`virtual_medium`].
pub fn scaled_medium<T: Real>(config: &CloakConfig) -> Result<LayeredMedium<T>> {
    let eps: T = T::lit(config.epsilon);
    let d = config.dimension as i32;
    let layers = config
        .interior
        .iter()
        .map(|l| {
            let l: Layer<T> = l.to_layer().cast();
            Layer { outer_radius: l.outer_radius, a: l.a * eps.powi(2 - d), sigma: l.sigma * eps.powi(2 - d) }
        })
        .collect();
    LayeredMedium::new(config.dimension, layers, eps * eps)
}

/// Bessel tables on both sides of every interface, for orders `0..=nmax`.
pub(crate) struct InterfaceTables<T: Real> {
    /// Layer `j` evaluated at its own outer radius.
    inside: Vec<BesselTable<T>>,
    /// Layer `j + 1` (or the exterior) evaluated at the outer radius of `j`.
    outside: Vec<BesselTable<T>>,
}

impl<T: Real> InterfaceTables<T> {
    pub(crate) fn new(medium: &LayeredMedium<T>, k: T, nmax: usize) -> Result<Self> {
        let fam = medium.family();
        let n_layers = medium.layers.len();
        let mut inside = Vec::with_capacity(n_layers);
        let mut outside = Vec::with_capacity(n_layers);
        for (j, l) in medium.layers.iter().enumerate() {
            let r = l.outer_radius;
            inside.push(BesselTable::new(fam, nmax, l.wavenumber(k) * r, j > 0)?);
            let kappa_out = if j + 1 < n_layers {
                medium.layers[j + 1].wavenumber(k)
            } else {
                Cx::new(medium.exterior_wavenumber(k), T::zero())
            };
            outside.push(BesselTable::new(fam, nmax, kappa_out * r, true)?);
        }
        Ok(InterfaceTables { inside, outside })
    }
}

fn check_inputs<T: Real>(k: T, n: usize) -> Result<()> {
    if !(k > T::zero()) || k.as_f64() > MAX_WAVENUMBER {
        return Err(Error::InvalidInput(format!("wavenumber k = {k} must lie in (0, {MAX_WAVENUMBER}]")));
    }
    if n > MAX_ORDER {
        return Err(Error::InvalidInput(format!("mode {n} exceeds the cap {MAX_ORDER}")));
    }
    Ok(())
}

/// Solves mode `n` for incident coefficient `b_n`.
pub fn mode_solve<T: Real>(medium: &LayeredMedium<T>, k: T, n: usize, b_n: Cx<T>) -> Result<ModeSolution<T>> {
    check_inputs(k, n)?;
    let tables = InterfaceTables::new(medium, k, n)?;
    solve_with_tables(medium, k, n, b_n, None, &tables)
}

/// Solves modes `0..b.len()` sharing one set of Bessel tables.
pub fn mode_solve_all<T: Real>(medium: &LayeredMedium<T>, k: T, b: &[Cx<T>]) -> Result<Vec<ModeSolution<T>>> {
    if b.is_empty() {
        return Ok(Vec::new());
    }
    check_inputs(k, b.len() - 1)?;
    let tables = InterfaceTables::new(medium, k, b.len() - 1)?;
    b.iter().enumerate().map(|(n, &bn)| solve_with_tables(medium, k, n, bn, None, &tables)).collect()
}

/// `(u, a u')` of `c R + d S` in a layer with stiffness `a` and wavenumber `κ`.
fn trace<T: Real>(a: T, kappa: Cx<T>, r: BesselEval<T>, s: Option<BesselEval<T>>, c: Cx<T>, d: Cx<T>) -> (Cx<T>, Cx<T>) {
    let mut u = r.value * c;
    let mut f = r.derivative * c;
    if let Some(s) = s {
        u = u + s.value * d;
        f = f + s.derivative * d;
    }
    (u, f * kappa * a)
}

/// Coefficients in a layer reproducing a given `(u, a u')` trace.
#[allow(clippy::too_many_arguments)]
fn untrace<T: Real>(fam: Family, a: T, kappa: Cx<T>, z: Cx<T>, r: BesselEval<T>, s: BesselEval<T>, u: Cx<T>, flux: Cx<T>) -> (Cx<T>, Cx<T>) {
    let ak = kappa * a;
    let det = ak * fam.wronskian(z);
    let c = (ak * s.derivative * u - s.value * flux) / det;
    let d = (r.value * flux - ak * r.derivative * u) / det;
    (c, d)
}

pub(crate) fn solve_with_tables<T: Real>(
    medium: &LayeredMedium<T>,
    k: T,
    n: usize,
    b_n: Cx<T>,
    particular: Option<ParticularSolution<T>>,
    tables: &InterfaceTables<T>,
) -> Result<ModeSolution<T>> {
    let fam = medium.family();
    let zero = Cx::new(T::zero(), T::zero());
    let one = Cx::new(T::one(), T::zero());
    let n_layers = medium.layers.len();

    // homogeneous solution started from (1, 0), particular from (0, 0) + source
    let mut hom = vec![(one, zero)];
    let mut par = vec![(zero, zero)];
    let mut trace_h = (zero, zero);
    let mut trace_p = (zero, zero);
    for j in 0..n_layers {
        let l = &medium.layers[j];
        let kappa = l.wavenumber(k);
        let t_in = &tables.inside[j];
        let s_in = if j > 0 { Some(t_in.singular(n)) } else { None };
        let (ch, dh) = hom[j];
        let (cp, dp) = par[j];
        trace_h = trace(l.a, kappa, t_in.regular(n), s_in, ch, dh);
        trace_p = trace(l.a, kappa, t_in.regular(n), s_in, cp, dp);
        if j == 0 {
            if let Some(p) = &particular {
                let (pu, pd) = p.eval(l.outer_radius);
                trace_p = (trace_p.0 + pu, trace_p.1 + pd * l.a);
            }
        }
        if j + 1 < n_layers {
            let next = &medium.layers[j + 1];
            let kn = next.wavenumber(k);
            let t_out = &tables.outside[j];
            let z = t_out.argument();
            let (r, s) = (t_out.regular(n), t_out.singular(n));
            hom.push(untrace(fam, next.a, kn, z, r, s, trace_h.0, trace_h.1));
            par.push(untrace(fam, next.a, kn, z, r, s, trace_p.0, trace_p.1));
        }
    }

    // c·trace_h + trace_p = b·E_R + α·E_H at the outer radius (exterior a = 1)
    let ke = Cx::new(medium.exterior_wavenumber(k), T::zero());
    let t_ext = &tables.outside[n_layers - 1];
    let er = t_ext.regular(n);
    let eh = t_ext.hankel(n);
    let (r_u, r_f) = (er.value, er.derivative * ke);
    let (h_u, h_f) = (eh.value, eh.derivative * ke);

    // unknowns (c, α): [trace_h, −E_H] (c, α)^T = b E_R − trace_p
    let m = [[trace_h.0, -h_u], [trace_h.1, -h_f]];
    let rhs = [b_n * r_u - trace_p.0, b_n * r_f - trace_p.1];
    let cond = equilibrated_condition(m);
    if !(cond <= SINGULAR_CONDITION) {
        return Err(Error::SingularSystem { mode: n as u32, condition: cond });
    }
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    let c = (rhs[0] * m[1][1] - m[0][1] * rhs[1]) / det;
    let alpha = (m[0][0] * rhs[1] - m[1][0] * rhs[0]) / det;

    let layer_coeffs: Vec<_> = hom
        .iter()
        .zip(&par)
        .map(|(&(ch, dh), &(cp, dp))| (ch * c + cp, dh * c + dp))
        .collect();
    let finite = |z: &Cx<T>| z.re.is_finite() && z.im.is_finite();
    if !finite(&alpha) || !layer_coeffs.iter().all(|(c, d)| finite(c) && finite(d)) {
        return Err(Error::Overflow(format!("mode {n} transfer solve")));
    }
    Ok(ModeSolution { n, b_n, alpha_n: alpha, layer_coeffs, particular })
}

/// 2-norm condition number of a 2×2 complex matrix after equilibration: the
/// smaller of the rows-then-columns and columns-then-rows scalings. Scaling
/// rows first can underflow a column whose entries are hundreds of orders
/// below the other one, as happens for high orders on a small inclusion.
fn equilibrated_condition<T: Real>(m: [[Cx<T>; 2]; 2]) -> f64 {
    condition_after_scaling(m, true).min(condition_after_scaling(m, false))
}

fn scale_rows<T: Real>(m: &mut [[Cx<T>; 2]; 2]) {
    for row in m.iter_mut() {
        let s = row[0].norm().max(row[1].norm());
        if s > T::zero() {
            row[0] = row[0] / s;
            row[1] = row[1] / s;
        }
    }
}

fn scale_columns<T: Real>(m: &mut [[Cx<T>; 2]; 2]) {
    let [r0, r1] = m;
    for (a, b) in r0.iter_mut().zip(r1.iter_mut()) {
        let s = a.norm().max(b.norm());
        if s > T::zero() {
            *a = *a / s;
            *b = *b / s;
        }
    }
}

fn condition_after_scaling<T: Real>(mut m: [[Cx<T>; 2]; 2], rows_first: bool) -> f64 {
    if rows_first {
        scale_rows(&mut m);
        scale_columns(&mut m);
    } else {
        scale_columns(&mut m);
        scale_rows(&mut m);
    }
    let det = (m[0][0] * m[1][1] - m[0][1] * m[1][0]).norm().as_f64();
    let fro2: f64 = m.iter().flatten().map(|z| z.norm_sqr().as_f64()).sum();
    if det == 0.0 {
        return f64::INFINITY;
    }
    // σ_max/σ_min from σ_max σ_min = |det| and σ_max² + σ_min² = ‖m‖_F²
    let disc = (fro2 * fro2 - 4.0 * det * det).max(0.0).sqrt();
    let smax2 = 0.5 * (fro2 + disc);
    let smin2 = det * det / smax2;
    (smax2 / smin2).sqrt()
}
