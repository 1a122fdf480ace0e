use super::{check_inputs, solve_with_tables, InterfaceTables, LayeredMedium, ModeSolution, ResonanceSpec};
use crate::error::{Error, Result};
use crate::scalar::{cast_real, CastComplex, Cx, Real};
use crate::specfun::{BesselTable, Family};

/// Relative wavenumber gap below which the source is treated as resonant
/// with the layer and the divided difference is taken at the midpoint.
const MERGE_GAP: f64 = 1e-6;

/// A single-mode source `amplitude · R_n(kappa r)` in the innermost layer,
/// given in the frame of the medium it is solved in.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InteriorSourceMode<T: Real = f64> {
    pub mode: usize,
    pub kappa: Cx<T>,
    pub amplitude: Cx<T>,
}

/// Particular solution of `a (Δ_n + κ²) P = amplitude · R_n(κ_s r)`:
/// `P = amplitude [R_n(κ_s r) − R_n(κ r)] / (a (κ² − κ_s²))`, which tends to
/// `−amplitude r R_n'(κ r) / (2 a κ)` as `κ_s → κ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParticularSolution<T: Real = f64> {
    pub family: Family,
    pub mode: usize,
    pub amplitude: Cx<T>,
    pub kappa_source: Cx<T>,
    pub kappa: Cx<T>,
    pub a: T,
}

fn regular_with_second<T: Real>(fam: Family, n: usize, z: Cx<T>) -> (Cx<T>, Cx<T>, Cx<T>) {
    let t = BesselTable::new(fam, n, z, false).expect("argument validated by the layer solve");
    let e = t.regular(n);
    let nn = T::from_index(n);
    let (c, lam) = match fam {
        Family::Cylindrical => (T::one(), nn * nn),
        Family::Spherical => (T::lit(2.0), nn * (nn + T::one())),
    };
    // Bessel ODE: R'' = −(c/z) R' − (1 − λ/z²) R
    let one = Cx::new(T::one(), T::zero());
    let second = -e.derivative * c / z - e.value * (one - (one * lam) / (z * z));
    (e.value, e.derivative, second)
}

impl<T: Real> ParticularSolution<T> {
    /// `(P(r), P'(r))`.
    pub fn eval(&self, r: T) -> (Cx<T>, Cx<T>) {
        let zero = Cx::new(T::zero(), T::zero());
        if self.amplitude == zero || r == T::zero() {
            // P(0) = 0 for every mode; derivatives are only used off the centre
            return (zero, zero);
        }
        let gap = (self.kappa_source - self.kappa).norm();
        if gap <= T::lit(MERGE_GAP) * self.kappa.norm() {
            self.merged(r)
        } else {
            self.split(r)
        }
    }

    /// Divided differences in `κ` of `R(κ r)` and `κ R'(κ r)` by the midpoint rule.
    fn merged(&self, r: T) -> (Cx<T>, Cx<T>) {
        let (ks, k) = (self.kappa_source, self.kappa);
        let mid = (ks + k) * T::lit(0.5);
        let (_, d1, d2) = regular_with_second(self.family, self.mode, mid * r);
        let dd_value = d1 * r;
        let dd_deriv = d1 + mid * d2 * r;
        let pre = -self.amplitude / ((ks + k) * self.a);
        (pre * dd_value, pre * dd_deriv)
    }

    fn split(&self, r: T) -> (Cx<T>, Cx<T>) {
        let (ks, k) = (self.kappa_source, self.kappa);
        let (rs, drs, _) = regular_with_second(self.family, self.mode, ks * r);
        let (rk, drk, _) = regular_with_second(self.family, self.mode, k * r);
        let den = (k * k - ks * ks) * self.a;
        (self.amplitude * (rs - rk) / den, self.amplitude * (drs * ks - drk * k) / den)
    }

    pub fn cast<U: Real>(&self) -> ParticularSolution<U> {
        ParticularSolution {
            family: self.family,
            mode: self.mode,
            amplitude: self.amplitude.cast(),
            kappa_source: self.kappa_source.cast(),
            kappa: self.kappa.cast(),
            a: cast_real(self.a),
        }
    }
}

/// Solves mode `source.mode` with the given interior source and incident
/// coefficient `b_n`.
pub fn mode_solve_with_source<T: Real>(
    medium: &LayeredMedium<T>,
    k: T,
    b_n: Cx<T>,
    source: InteriorSourceMode<T>,
) -> Result<ModeSolution<T>> {
    let n = source.mode;
    check_inputs(k, n)?;
    let inner = &medium.layers[0];
    let particular = ParticularSolution {
        family: medium.family(),
        mode: n,
        amplitude: source.amplitude,
        kappa_source: source.kappa,
        kappa: inner.wavenumber(k),
        a: inner.a,
    };
    let tables = InterfaceTables::new(medium, k, n)?;
    solve_with_tables(medium, k, n, b_n, Some(particular), &tables)
}

/// Virtual-frame solve for a cloak whose unit interior ball (pulled back to
/// the innermost layer of radius `ε`) carries the source
/// `normalization · R_n(κ* |y|)` of the resonant mode in `spec`, with no
/// incident field. The pull-back scales the source by `ε^{−d}` and its
/// wavenumber by `1/ε`.
pub fn interior_source_mode_solve<T: Real>(
    medium: &LayeredMedium<T>,
    k: T,
    spec: &ResonanceSpec,
    normalization: T,
) -> Result<ModeSolution<T>> {
    if spec.dimension != medium.dimension {
        return Err(Error::InvalidInput("resonance and medium dimensions differ".into()));
    }
    let eps = medium.layers[0].outer_radius;
    let d = medium.dimension as i32;
    let source = InteriorSourceMode {
        mode: spec.mode,
        kappa: Cx::new(T::lit(spec.kappa_star) / eps, T::zero()),
        amplitude: Cx::new(normalization * eps.powi(-d), T::zero()),
    };
    mode_solve_with_source(medium, k, Cx::new(T::zero(), T::zero()), source)
}
