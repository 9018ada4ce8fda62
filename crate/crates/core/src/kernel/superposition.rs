//! The kernel as a superposition of propagators over mass-squared, in the
//! Euclidean continuation:
//!
//! `K_E(Δx; τ) = (2π)^{−1} ∫dw e^{iτw} Δ_E(Δx; m² + iw)`,
//!
//! discretized with the trapezoid rule on `w ∈ [−W, W]`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::propagator::euclidean_propagator_complex_mass;
use crate::error::{Error, Result};
use crate::geometry::{FourVector, Signature};

/// Uniform grid of mass-squared offsets `w_k = −W + k·h`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MassGrid {
    pub window: f64,
    pub points: usize,
}

impl MassGrid {
    pub fn new(window: f64, points: usize) -> Self {
        Self { window, points }
    }

    pub fn spacing(&self) -> f64 {
        if self.points < 2 {
            return 0.0;
        }
        2.0 * self.window / (self.points - 1) as f64
    }

    fn nodes(&self) -> Vec<(f64, f64)> {
        let h = self.spacing();
        (0..self.points)
            .map(|k| {
                let w = -self.window + k as f64 * h;
                let weight = if k == 0 || k + 1 == self.points { 0.5 * h } else { h };
                (w, weight)
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SuperpositionResult {
    pub value: Complex64,
    pub window: f64,
    pub spacing: f64,
    /// Set when `W·τ < 4π`: the window cannot resolve the kernel.
    pub insufficient_window: bool,
}

/// Propagator values tabulated on a mass grid, reusable across τ.
#[derive(Debug, Clone)]
pub struct MassSuperposition {
    grid: MassGrid,
    samples: Vec<(f64, f64, Complex64)>,
    epsilon: f64,
}

impl MassSuperposition {
    pub fn new(dx: &FourVector, mass: f64, epsilon: f64, grid: MassGrid) -> Result<Self> {
        if !(mass > 0.0) {
            return Err(Error::Domain(format!("mass must be positive, got {mass}")));
        }
        if !(grid.window >= 0.0) {
            return Err(Error::Domain(format!("window must be non-negative, got {}", grid.window)));
        }
        let r = dx.dot(dx, Signature::Euclidean)?.sqrt();
        let base = mass * mass + epsilon;
        let samples = if grid.window == 0.0 || grid.points < 2 {
            Vec::new()
        } else {
            grid.nodes()
                .into_iter()
                .map(|(w, weight)| {
                    euclidean_propagator_complex_mass(r, Complex64::new(base, w), dx.dim())
                        .map(|d| (w, weight, d))
                })
                .collect::<Result<_>>()?
        };
        Ok(Self { grid, samples, epsilon })
    }

    /// Kernel at length τ, with the `e^{−ετ}` damping of the tabulated
    /// propagators divided back out.
    pub fn kernel_at(&self, tau: f64) -> Result<SuperpositionResult> {
        if !(tau > 0.0) {
            return Err(Error::Domain(format!("τ must be positive, got {tau}")));
        }
        let sum: Complex64 = self
            .samples
            .iter()
            .map(|&(w, weight, d)| Complex64::from_polar(weight, tau * w) * d)
            .sum();
        Ok(SuperpositionResult {
            value: sum * ((self.epsilon * tau).exp() / (2.0 * PI)),
            window: self.grid.window,
            spacing: self.grid.spacing(),
            insufficient_window: self.grid.window * tau < 4.0 * PI,
        })
    }
}

/// One-shot version of [`MassSuperposition::kernel_at`].
pub fn kernel_mass_superposition(
    dx: &FourVector,
    tau: f64,
    mass: f64,
    epsilon: f64,
    grid: MassGrid,
) -> Result<SuperpositionResult> {
    MassSuperposition::new(dx, mass, epsilon, grid)?.kernel_at(tau)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_window_gives_zero() {
        let dx = FourVector::from([0.0, 1.0]);
        let r = kernel_mass_superposition(&dx, 1.0, 1.0, 1e-6, MassGrid::new(0.0, 801)).unwrap();
        assert_eq!(r.value, Complex64::new(0.0, 0.0));
        assert!(r.insufficient_window);
    }

    #[test]
    fn small_window_is_flagged() {
        let dx = FourVector::from([0.0, 2.0]);
        let r = kernel_mass_superposition(&dx, 1.0, 1.0, 0.0, MassGrid::new(10.0, 201)).unwrap();
        assert!(r.insufficient_window);
        assert!((r.spacing - 0.1).abs() < 1e-15);
    }
}
