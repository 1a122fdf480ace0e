//! One cloaking experiment instance.

use crate::error::{Error, Result};
use crate::fields::IncidentSpec;
use crate::mie::{Layer, MAX_WAVENUMBER};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// An interior shell at unit scale: `radius` is its outer radius in `B_1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MaterialLayer {
    pub radius: f64,
    pub a: f64,
    /// `[re, im]`
    pub sigma: Complex64,
}

impl MaterialLayer {
    pub fn new(radius: f64, a: f64, sigma: f64) -> Self {
        MaterialLayer { radius, a, sigma: Complex64::new(sigma, 0.0) }
    }

    pub fn to_layer(&self) -> Layer<f64> {
        Layer::new(self.radius, self.a, self.sigma)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CloakConfig {
    pub dimension: u32,
    pub k: f64,
    pub epsilon: f64,
    /// Concentric interior layers filling `B_1`, innermost first.
    pub interior: Vec<MaterialLayer>,
    pub incident: IncidentSpec,
}

impl CloakConfig {
    /// Unit-ball interior `(a, σ)` under a unit plane wave along the first axis.
    pub fn homogeneous(dimension: u32, k: f64, epsilon: f64, a: f64, sigma: f64) -> Self {
        CloakConfig {
            dimension,
            k,
            epsilon,
            interior: vec![MaterialLayer::new(1.0, a, sigma)],
            incident: IncidentSpec::plane_wave(dimension),
        }
    }

    pub fn with_epsilon(&self, epsilon: f64) -> Self {
        CloakConfig { epsilon, ..self.clone() }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidInput(m));
        if !(self.dimension == 2 || self.dimension == 3) {
            return bad(format!("dimension must be 2 or 3, got {}", self.dimension));
        }
        if !(self.k > 0.0 && self.k <= MAX_WAVENUMBER) {
            return bad(format!("k must lie in (0, {MAX_WAVENUMBER}], got {}", self.k));
        }
        if !(self.epsilon > 0.0 && self.epsilon <= 1.0) {
            return bad(format!("epsilon must lie in (0, 1], got {}", self.epsilon));
        }
        if self.interior.is_empty() {
            return bad("at least one interior layer is required".into());
        }
        let mut last = 0.0;
        for (j, l) in self.interior.iter().enumerate() {
            if !(l.radius > last) {
                return bad(format!("interior layer {j}: radii must increase strictly"));
            }
            if !(l.a > 0.0) || !l.a.is_finite() {
                return bad(format!("interior layer {j}: a must be positive"));
            }
            if !(l.sigma.re > 0.0) || !(l.sigma.im >= 0.0) || !l.sigma.re.is_finite() {
                return bad(format!("interior layer {j}: sigma needs Re > 0 and Im >= 0"));
            }
            last = l.radius;
        }
        if last != 1.0 {
            return bad(format!("the outermost interior layer must end at radius 1, got {last}"));
        }
        self.incident.validate(self.dimension)
    }

    /// The single homogeneous interior layer, if that is what the config holds.
    pub fn homogeneous_interior(&self) -> Option<(f64, Complex64)> {
        match self.interior.as_slice() {
            [l] => Some((l.a, l.sigma)),
            _ => None,
        }
    }
}
