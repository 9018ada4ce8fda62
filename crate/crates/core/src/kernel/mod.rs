//! Fixed-length transition kernels and the propagators built from them.

mod closed;
mod lattice;
mod mc;
mod propagator;
mod superposition;

use serde::{Deserialize, Serialize};

pub use closed::{kernel_closed, kernel_discretized, DiscretizedKernel};
pub use lattice::{lattice_kernel, lattice_multiplier, lattice_propagator, propagate_lattice};
pub use mc::{kernel_mc, kernel_mc_with_potential, McConfig, McEstimate};
pub use propagator::{
    euclidean_propagator_complex_mass, propagator_momentum, propagator_onshell_part,
    propagator_position, PropagatorParams,
};
pub use superposition::{kernel_mass_superposition, MassGrid, MassSuperposition, SuperpositionResult};

use crate::error::{Error, Result};
use crate::geometry::Signature;

/// Parameters of a fixed-length kernel `K(Δx; T)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelParams {
    pub mass: f64,
    /// Intrinsic length T (the Euclidean τ in Euclidean mode).
    pub length: f64,
    pub dim: usize,
    pub signature: Signature,
    /// Damping used by improper integrals; unused by the closed form.
    pub epsilon: f64,
}

impl KernelParams {
    pub fn new(mass: f64, length: f64, dim: usize, signature: Signature) -> Result<Self> {
        let params = Self { mass, length, dim, signature, epsilon: 1e-3 };
        params.validate()?;
        Ok(params)
    }

    pub fn with_epsilon(mut self, epsilon: f64) -> Self {
        self.epsilon = epsilon;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.length > 0.0) {
            return Err(Error::Domain(format!("kernel length must be positive, got {}", self.length)));
        }
        if !(self.mass >= 0.0) {
            return Err(Error::Domain(format!("mass must be non-negative, got {}", self.mass)));
        }
        if self.dim == 0 {
            return Err(Error::Domain("dimension must be at least 1".into()));
        }
        Ok(())
    }
}

/// The residual weight over path lengths left after gauge fixing.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum WeightFunction {
    /// f(T) = 1
    #[default]
    Uniform,
    /// f(T) = exp(−T²/2w²) above the threshold, 0 at or below it.
    GaussianThresholded { width: f64, threshold: f64 },
}

impl WeightFunction {
    pub fn gaussian(width: f64, threshold: f64) -> Result<Self> {
        if !(width > 0.0) || !(threshold >= 0.0) {
            return Err(Error::Domain(format!(
                "weight needs width > 0 and threshold ≥ 0, got {width}, {threshold}"
            )));
        }
        Ok(Self::GaussianThresholded { width, threshold })
    }

    pub fn eval(&self, t: f64) -> f64 {
        match *self {
            Self::Uniform => 1.0,
            Self::GaussianThresholded { width, threshold } => {
                if t > threshold {
                    (-t * t / (2.0 * width * width)).exp()
                } else {
                    0.0
                }
            }
        }
    }

    pub fn threshold(&self) -> f64 {
        match *self {
            Self::Uniform => 0.0,
            Self::GaussianThresholded { threshold, .. } => threshold,
        }
    }

    pub fn width(&self) -> Option<f64> {
        match *self {
            Self::Uniform => None,
            Self::GaussianThresholded { width, .. } => Some(width),
        }
    }
}
