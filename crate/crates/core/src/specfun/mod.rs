//! Bessel-family kernel for integer order and complex argument.
//!
//! Regular functions (`J_n`, `j_n`) come from Miller's downward recurrence,
//! singular ones (`Y_n`, `y_n`) from upward recurrence seeded with orders 0
//! and 1. Everything is generic over [`Real`] so the same code runs in `f64`
//! and in double-double.

mod cylindrical;
mod root;
mod spherical;

pub use root::find_root;

use crate::error::{Error, Result};
use crate::scalar::{Cx, Real};

/// Largest supported order.
pub const MAX_ORDER: usize = 200;
/// Largest supported argument modulus.
pub const MAX_ARGUMENT: f64 = 1e4;

/// Value of a Bessel-type function together with its argument derivative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselEval<T: Real = f64> {
    pub value: Cx<T>,
    pub derivative: Cx<T>,
}

/// Cylindrical kinds: `J_n`, `Y_n` and `H_n^(1) = J_n + iY_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CylKind {
    J,
    Y,
    H1,
}

/// Spherical kinds: `j_n`, `y_n` and `h_n^(1) = j_n + iy_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SphKind {
    J,
    Y,
    H1,
}

/// Radial function family of a dimension: cylindrical in 2D, spherical in 3D.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Cylindrical,
    Spherical,
}

impl Family {
    pub fn for_dimension(d: u32) -> Self {
        if d == 2 {
            Family::Cylindrical
        } else {
            Family::Spherical
        }
    }

    /// Wronskian `R S' − R' S` of the regular/singular pair at `x`.
    pub fn wronskian<T: Real>(self, x: Cx<T>) -> Cx<T> {
        match self {
            Family::Cylindrical => (x * T::PI()).inv() * T::lit(2.0),
            Family::Spherical => (x * x).inv(),
        }
    }
}

/// Evaluates a cylindrical Bessel function and its derivative.
pub fn cyl_bessel<T: Real>(kind: CylKind, n: usize, z: Cx<T>) -> Result<BesselEval<T>> {
    let singular = kind != CylKind::J;
    let table = BesselTable::new(Family::Cylindrical, n, z, singular)?;
    Ok(match kind {
        CylKind::J => table.regular(n),
        CylKind::Y => table.singular(n),
        CylKind::H1 => table.hankel(n),
    })
}

/// Evaluates a spherical Bessel function and its derivative.
pub fn sph_bessel<T: Real>(kind: SphKind, n: usize, z: Cx<T>) -> Result<BesselEval<T>> {
    let singular = kind != SphKind::J;
    let table = BesselTable::new(Family::Spherical, n, z, singular)?;
    Ok(match kind {
        SphKind::J => table.regular(n),
        SphKind::Y => table.singular(n),
        SphKind::H1 => table.hankel(n),
    })
}

/// All orders `0..=nmax` of one family at a single argument, with derivatives.
#[derive(Debug, Clone)]
pub struct BesselTable<T: Real = f64> {
    family: Family,
    z: Cx<T>,
    regular: Vec<Cx<T>>,
    singular: Option<Vec<Cx<T>>>,
}

impl<T: Real> BesselTable<T> {
    pub fn new(family: Family, nmax: usize, z: Cx<T>, with_singular: bool) -> Result<Self> {
        validate(nmax, z, with_singular)?;
        // one extra order feeds the derivative recurrence
        let regular = match family {
            Family::Cylindrical => cylindrical::bessel_j(nmax + 1, z)?,
            Family::Spherical => spherical::bessel_j(nmax + 1, z)?,
        };
        let singular = if with_singular {
            Some(match family {
                Family::Cylindrical => cylindrical::bessel_y(nmax + 1, z)?,
                Family::Spherical => spherical::bessel_y(nmax + 1, z)?,
            })
        } else {
            None
        };
        Ok(BesselTable { family, z, regular, singular })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn argument(&self) -> Cx<T> {
        self.z
    }

    pub fn max_order(&self) -> usize {
        self.regular.len() - 2
    }

    pub fn regular(&self, n: usize) -> BesselEval<T> {
        BesselEval { value: self.regular[n], derivative: self.derivative(&self.regular, n) }
    }

    /// Panics if the table was built without singular functions.
    pub fn singular(&self, n: usize) -> BesselEval<T> {
        let s = self.singular.as_ref().expect("table built without singular functions");
        BesselEval { value: s[n], derivative: self.derivative(s, n) }
    }

    pub fn hankel(&self, n: usize) -> BesselEval<T> {
        let r = self.regular(n);
        let s = self.singular(n);
        let i = Cx::<T>::i();
        BesselEval { value: r.value + i * s.value, derivative: r.derivative + i * s.derivative }
    }

    fn derivative(&self, c: &[Cx<T>], n: usize) -> Cx<T> {
        if n == 0 {
            return -c[1];
        }
        if self.z == Cx::new(T::zero(), T::zero()) {
            // only the regular table can be evaluated at the origin
            return match (self.family, n) {
                (Family::Cylindrical, 1) => Cx::new(T::lit(0.5), T::zero()),
                (Family::Spherical, 1) => Cx::new(T::one() / T::lit(3.0), T::zero()),
                _ => Cx::new(T::zero(), T::zero()),
            };
        }
        let m = match self.family {
            Family::Cylindrical => T::from_index(n),
            Family::Spherical => T::from_index(n + 1),
        };
        c[n - 1] - c[n] * m / self.z
    }
}

fn validate<T: Real>(nmax: usize, z: Cx<T>, singular: bool) -> Result<()> {
    if nmax > MAX_ORDER {
        return Err(Error::Domain(format!("order {nmax} exceeds the cap {MAX_ORDER}")));
    }
    let az = z.norm().as_f64();
    if !az.is_finite() {
        return Err(Error::Domain("non-finite argument".into()));
    }
    if az > MAX_ARGUMENT {
        return Err(Error::Domain(format!("|z| = {az:.3e} exceeds {MAX_ARGUMENT:e}")));
    }
    if singular && az == 0.0 {
        return Err(Error::Domain("singular Bessel function at z = 0".into()));
    }
    Ok(())
}

/// Index at which to start the downward recurrence `f_{k-1} = (w(k)/z) f_k − f_{k+1}`
/// so that orders up to `nmax` come out with full precision. The forward
/// recurrence from `(0, 1)` is run on `|z|` until it has grown past the target
/// number of digits.
fn miller_start(nmax: usize, az: f64, weight: impl Fn(usize) -> f64, digits: f64) -> usize {
    let target = 10f64.powf(digits + 3.0);
    let mut k = nmax.max(az.ceil() as usize) + 1;
    let (mut p0, mut p1) = (0.0f64, 1.0f64);
    while p1.abs() < target && k < 1_000_000 {
        let p2 = weight(k) / az * p1 - p0;
        p0 = p1;
        p1 = p2;
        k += 1;
    }
    k + 10
}

/// Unnormalized minimal solution of the three-term recurrence on `0..=start`.
fn miller_downward<T: Real>(
    z: Cx<T>,
    start: usize,
    weight: impl Fn(usize) -> T,
) -> Result<Vec<Cx<T>>> {
    let big = T::max_value().sqrt().sqrt();
    let zero = Cx::new(T::zero(), T::zero());
    let mut f = vec![zero; start + 2];
    f[start] = Cx::new(T::one(), T::zero());
    for k in (1..=start).rev() {
        let next = f[k] * weight(k) / z - f[k + 1];
        if !(next.re.is_finite() && next.im.is_finite()) {
            return Err(Error::Overflow("downward Bessel recurrence".into()));
        }
        f[k - 1] = next;
        if next.norm() > big {
            let s = big.recip();
            for v in &mut f[k - 1..] {
                *v = *v * s;
            }
        }
    }
    Ok(f)
}

fn check_finite<T: Real>(v: &[Cx<T>], what: &str) -> Result<()> {
    if v.iter().all(|c| c.re.is_finite() && c.im.is_finite()) {
        Ok(())
    } else {
        Err(Error::Overflow(what.into()))
    }
}
