//! The radial blow-up map `F_ε` and the material tensors it pushes forward.
//!
//! `F_ε` is the identity outside `B_2`, stretches `B_ε` onto `B_1` and maps the
//! annulus `ε ≤ |x| < 2` affinely (in the radius) onto the shell `1 ≤ |y| < 2`.
//! `ε = 0` is the limit map `F_0`, which sends the punctured ball `B_2 \ {0}`
//! onto the shell.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// `F_ε` in dimension 2 or 3; `epsilon = 0` denotes `F_0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlowupMap<T: Real = f64> {
    pub epsilon: T,
    pub dimension: u32,
}

/// Eigen-decomposition of `A_c = F_*I` plus the scalar `σ_c = F_*1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShellTensors<T: Real = f64> {
    pub radial_a: T,
    /// Multiplicity `d − 1`.
    pub tangential_a: T,
    pub sigma_c: T,
}

impl<T: Real> BlowupMap<T> {
    pub fn new(epsilon: T, dimension: u32) -> Result<Self> {
        if !(dimension == 2 || dimension == 3) {
            return Err(Error::InvalidInput(format!("dimension must be 2 or 3, got {dimension}")));
        }
        if !(epsilon >= T::zero() && epsilon <= T::one()) {
            return Err(Error::InvalidInput(format!("epsilon must lie in [0, 1], got {epsilon}")));
        }
        Ok(BlowupMap { epsilon, dimension })
    }

    fn two() -> T {
        T::lit(2.0)
    }

    /// Radial profile `ρ(r) = |F_ε(x)|` for `|x| = r`.
    pub fn radial(&self, r: T) -> Result<T> {
        let two = Self::two();
        let e = self.epsilon;
        if r >= two {
            Ok(r)
        } else if r >= e && r > T::zero() {
            Ok((two - two * e) / (two - e) + r / (two - e))
        } else if e > T::zero() {
            Ok(r / e)
        } else {
            Err(Error::Domain("F_0 is undefined at the origin".into()))
        }
    }

    /// `ρ'(r)`, taking the outer branch on interfaces.
    pub fn radial_derivative(&self, r: T) -> Result<T> {
        let two = Self::two();
        let e = self.epsilon;
        if r >= two {
            Ok(T::one())
        } else if r >= e && r > T::zero() {
            Ok((two - e).recip())
        } else if e > T::zero() {
            Ok(e.recip())
        } else {
            Err(Error::Domain("F_0 is undefined at the origin".into()))
        }
    }

    /// Inverse radial profile `r(ρ)`. For `F_0` the ball `B_1` has no preimage
    /// and is sent to the origin.
    pub fn radial_inverse(&self, rho: T) -> T {
        let two = Self::two();
        let e = self.epsilon;
        if rho >= two {
            rho
        } else if rho >= T::one() {
            (two - e) * rho - (two - two * e)
        } else {
            e * rho
        }
    }

    /// `det DF_ε = ρ'(r) (ρ(r)/r)^{d−1}` at radius `r > 0`.
    pub fn jacobian_det(&self, r: T) -> Result<T> {
        let rho = self.radial(r)?;
        let dr = self.radial_derivative(r)?;
        if r == T::zero() {
            return Ok(dr.powi(self.dimension as i32));
        }
        Ok(dr * (rho / r).powi(self.dimension as i32 - 1))
    }

    /// Push-forward tensors at a physical radius strictly inside the shell.
    pub fn shell_tensors(&self, physical_radius: T) -> Result<ShellTensors<T>> {
        let y = physical_radius;
        if !(y > T::one() && y < Self::two()) {
            return Err(Error::Domain(format!("radius {y} is outside the shell (1, 2)")));
        }
        if self.epsilon <= T::zero() {
            return Err(Error::Domain("shell tensors are singular for F_0".into()));
        }
        let r = self.radial_inverse(y);
        let dr = (Self::two() - self.epsilon).recip();
        let stretch = y / r;
        let d = self.dimension as i32;
        let det = dr * stretch.powi(d - 1);
        Ok(ShellTensors {
            radial_a: dr * dr / det,
            tangential_a: stretch * stretch / det,
            sigma_c: det.recip(),
        })
    }

    pub fn map_forward(&self, x: &[T]) -> Result<Vec<T>> {
        self.check_point(x)?;
        let r = norm(x);
        if r == T::zero() {
            if self.epsilon > T::zero() {
                return Ok(x.to_vec());
            }
            return Err(Error::Domain("F_0 is undefined at the origin".into()));
        }
        let s = self.radial(r)? / r;
        Ok(x.iter().map(|&c| c * s).collect())
    }

    pub fn map_inverse(&self, y: &[T]) -> Result<Vec<T>> {
        self.check_point(y)?;
        let rho = norm(y);
        if rho == T::zero() {
            return Ok(y.to_vec());
        }
        let s = self.radial_inverse(rho) / rho;
        Ok(y.iter().map(|&c| c * s).collect())
    }

    fn check_point(&self, x: &[T]) -> Result<()> {
        if x.len() != self.dimension as usize {
            return Err(Error::InvalidInput(format!(
                "point has {} coordinates, map is {}D",
                x.len(),
                self.dimension
            )));
        }
        Ok(())
    }
}

pub fn map_forward<T: Real>(m: &BlowupMap<T>, x: &[T]) -> Result<Vec<T>> {
    m.map_forward(x)
}

pub fn map_inverse<T: Real>(m: &BlowupMap<T>, y: &[T]) -> Result<Vec<T>> {
    m.map_inverse(y)
}

pub fn shell_tensors<T: Real>(m: &BlowupMap<T>, physical_radius: T) -> Result<ShellTensors<T>> {
    m.shell_tensors(physical_radius)
}

pub(crate) fn norm<T: Real>(x: &[T]) -> T {
    x.iter().fold(T::zero(), |acc, &c| acc + c * c).sqrt()
}

/// Finite-difference residual of `div(A_c ∇u) + k² σ_c u` at shell points.
///
/// The operator is discretized in flux form with half steps, so each
/// evaluation is second order in `h`. The residual is also evaluated at `h/2`
/// and `h/4`; when the differences between the three levels rise above the
/// rounding floor, their ratio must be near 4, otherwise `h` is rejected.
/// Returns the largest residual at step `h`, divided by the local magnitude
/// of `u` over the stencil.
pub fn pde_residual<F>(field: F, k: f64, m: &BlowupMap<f64>, points: &[Vec<f64>], h: f64) -> Result<f64>
where
    F: Fn(&[f64]) -> Result<Complex64>,
{
    if !(1e-4..=1e-2).contains(&h) {
        return Err(Error::InvalidInput(format!("step h = {h} outside [1e-4, 1e-2]")));
    }
    if m.epsilon <= 0.0 {
        return Err(Error::Domain("residual needs ε > 0".into()));
    }
    let mut worst = 0.0f64;
    let (mut d1, mut d2, mut floor) = (0.0f64, 0.0f64, 0.0f64);
    for p in points {
        if p.len() != m.dimension as usize {
            return Err(Error::InvalidInput("sample point has the wrong dimension".into()));
        }
        let r = norm(p);
        if r - 1.0 <= 3.0 * h || 2.0 - r <= 3.0 * h {
            return Err(Error::InvalidInput(format!(
                "sample point at radius {r} is within 3h of an interface"
            )));
        }
        let (l0, scale, coef) = residual_at(&field, k, m, p, h)?;
        let (l1, _, _) = residual_at(&field, k, m, p, h / 2.0)?;
        let (l2, _, _) = residual_at(&field, k, m, p, h / 4.0)?;
        worst = worst.max(l0.norm() / scale);
        d1 = d1.max((l0 - l1).norm() / scale);
        d2 = d2.max((l1 - l2).norm() / scale);
        floor = floor.max(1e3 * f64::EPSILON * coef / (h / 4.0).powi(2));
    }
    if d1 > floor && d2 > floor {
        let ratio = d1 / d2;
        if !(2.5..=6.5).contains(&ratio) {
            return Err(Error::StepTooLarge { ratio });
        }
    }
    Ok(worst)
}

/// Returns `(L_h u, max |u| over the stencil, largest coefficient)`.
fn residual_at<F>(field: &F, k: f64, m: &BlowupMap<f64>, p: &[f64], h: f64) -> Result<(Complex64, f64, f64)>
where
    F: Fn(&[f64]) -> Result<Complex64>,
{
    let d = p.len();
    let mut scale = 0.0f64;
    let mut coef = 0.0f64;
    let mut eval = |q: &[f64]| -> Result<Complex64> {
        let v = field(q)?;
        scale = scale.max(v.norm());
        Ok(v)
    };
    let center = eval(p)?;
    let mut div = Complex64::new(0.0, 0.0);
    for i in 0..d {
        for sign in [1.0, -1.0] {
            let mut q = p.to_vec();
            q[i] += sign * h / 2.0;
            let mut grad = vec![Complex64::new(0.0, 0.0); d];
            for (j, g) in grad.iter_mut().enumerate() {
                let mut plus = q.clone();
                let mut minus = q.clone();
                plus[j] += h / 2.0;
                minus[j] -= h / 2.0;
                *g = (eval(&plus)? - eval(&minus)?) / h;
            }
            let a = tensor_row(m, &q, i)?;
            coef = coef.max(a.iter().fold(0.0f64, |acc, v| acc.max(v.abs())));
            let flux: Complex64 = a.iter().zip(&grad).map(|(aij, g)| g * *aij).sum();
            div += flux * sign / h;
        }
    }
    let sigma = m.shell_tensors(norm(p))?.sigma_c;
    coef = coef.max(k * k * sigma);
    Ok((div + center * (k * k * sigma), scale.max(f64::MIN_POSITIVE), coef))
}

/// Row `i` of the Cartesian matrix `A_c(y)`.
fn tensor_row(m: &BlowupMap<f64>, y: &[f64], i: usize) -> Result<Vec<f64>> {
    let r = norm(y);
    let t = m.shell_tensors(r)?;
    Ok((0..y.len())
        .map(|j| {
            let proj = y[i] * y[j] / (r * r);
            let id = if i == j { 1.0 } else { 0.0 };
            t.radial_a * proj + t.tangential_a * (id - proj)
        })
        .collect())
}
