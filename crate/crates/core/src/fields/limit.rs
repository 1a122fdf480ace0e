use super::{angular_weight, Domain, FieldSeries, NORM_TOLERANCE};
use crate::config::CloakConfig;
use crate::error::{Error, Result};
use crate::mie::{resonance_determinant, Layer, LayeredMedium, ModeSolution};
use crate::quadrature::integrate;
use crate::specfun::{BesselTable, Family};
use num_complex::Complex64;

/// Normalized resonance determinants below this count as resonant.
pub const RESONANCE_THRESHOLD: f64 = 1e-8;
/// Modes checked when classifying an interior.
const CLASSIFY_MODES: usize = 20;

/// `N` with `‖N R_n(κ|x|) Θ_n‖_{L²(B_1)} = 1`.
pub fn eigenfunction_normalization(dimension: u32, n: usize, kappa: f64) -> Result<f64> {
    let fam = Family::for_dimension(dimension);
    let jexp = dimension as i32 - 1;
    let v = integrate(
        |r| {
            let t = BesselTable::new(fam, n, Complex64::new(kappa * r, 0.0), false)?;
            Ok([t.regular(n).value.norm_sqr() * r.powi(jexp)])
        },
        0.0,
        1.0,
        &[],
        NORM_TOLERANCE * 1e-3,
    )?;
    Ok(1.0 / (angular_weight(dimension, n) * v[0]).sqrt())
}

/// Lowest mode at which a homogeneous unit ball `(a, σ)` resonates at
/// frequency `k`, if any among the first few modes. Lossy interiors never do.
pub fn resonant_mode(dimension: u32, a: f64, sigma: Complex64, k: f64) -> Result<Option<usize>> {
    if sigma.im > 0.0 {
        return Ok(None);
    }
    let kappa = k * (sigma.re / a).sqrt();
    for n in 0..=CLASSIFY_MODES {
        if resonance_determinant(dimension, n, a, kappa)? < RESONANCE_THRESHOLD {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

/// Limit as `ε → 0` of the field inside `B_1` for a passive homogeneous
/// interior, given the free field's value at the origin.
///
/// Non-resonant interiors (2D or 3D) tend to zero. A 3D interior resonant in
/// mode 0 tends to `u(0) j_0(κ* r)/j_0(κ*)`. Other resonant cases have no
/// modal closed form here and are reported as unsupported.
///
/// The result is a series over the unit ball in its own coordinates; outside
/// `B_1` it is zero.
pub fn interior_limit(dimension: u32, config: &CloakConfig, u_at_origin: Complex64) -> Result<FieldSeries> {
    if dimension != config.dimension {
        return Err(Error::InvalidInput("dimension disagrees with the configuration".into()));
    }
    config.validate()?;
    let (a, sigma) = config
        .homogeneous_interior()
        .ok_or_else(|| Error::Unsupported("interior limit needs a single homogeneous layer".into()))?;
    let medium = LayeredMedium::new(dimension, vec![Layer::new(1.0, a, sigma)], 1.0)?;
    let kappa = medium.layers[0].wavenumber(config.k);
    let zero = Complex64::new(0.0, 0.0);
    let coeff = match resonant_mode(dimension, a, sigma, config.k)? {
        None => zero,
        Some(0) if dimension == 3 => {
            let t = BesselTable::new(Family::Spherical, 0, kappa, false)?;
            u_at_origin / t.regular(0).value
        }
        Some(n) => {
            return Err(Error::Unsupported(format!(
                "no interior limit for a {dimension}D interior resonant in mode {n}"
            )))
        }
    };
    let sol = ModeSolution { n: 0, b_n: zero, alpha_n: zero, layer_coeffs: vec![(coeff, zero)], particular: None };
    Ok(FieldSeries::from_mode(medium, config.k, sol, Domain::Virtual))
}
