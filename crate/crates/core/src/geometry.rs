//! Spacetime points and momenta with signature (−,+,…,+).
//!
//! Index 0 is always the time (or energy) component. The dimension is a
//! runtime quantity; D = 2 and D = 4 are the supported cases throughout the
//! crate, but nothing in this module depends on that.

use std::ops::{Add, Index, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Metric signature used for inner products and phase conventions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Signature {
    /// (−,+,…,+)
    #[default]
    Minkowski,
    /// (+,+,…,+), the Wick-rotated continuation.
    Euclidean,
}

/// A point or momentum in D-dimensional spacetime.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FourVector {
    components: Vec<f64>,
}

impl FourVector {
    pub fn new(components: Vec<f64>) -> Self {
        assert!(!components.is_empty(), "a spacetime vector needs at least one component");
        Self { components }
    }

    pub fn zero(dim: usize) -> Self {
        Self::new(vec![0.0; dim])
    }

    /// Builds `(t, x⃗)` from a time component and spatial components.
    pub fn from_time_space(t: f64, space: &[f64]) -> Self {
        let mut components = Vec::with_capacity(space.len() + 1);
        components.push(t);
        components.extend_from_slice(space);
        Self { components }
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[f64] {
        &self.components
    }

    pub fn time(&self) -> f64 {
        self.components[0]
    }

    pub fn space(&self) -> &[f64] {
        &self.components[1..]
    }

    pub fn space_norm_sqr(&self) -> f64 {
        self.space().iter().map(|x| x * x).sum()
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self::new(self.components.iter().map(|c| c * factor).collect())
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: other.dim() });
        }
        Ok(())
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(Self::new(self.components.iter().zip(&other.components).map(|(a, b)| a - b).collect()))
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(Self::new(self.components.iter().zip(&other.components).map(|(a, b)| a + b).collect()))
    }

    /// Inner product in the requested signature.
    pub fn dot(&self, other: &Self, signature: Signature) -> Result<f64> {
        match signature {
            Signature::Minkowski => minkowski_dot(self, other),
            Signature::Euclidean => euclidean_dot(self, other),
        }
    }
}

impl Index<usize> for FourVector {
    type Output = f64;
    fn index(&self, index: usize) -> &f64 {
        &self.components[index]
    }
}

impl From<Vec<f64>> for FourVector {
    fn from(components: Vec<f64>) -> Self {
        Self::new(components)
    }
}

impl<const N: usize> From<[f64; N]> for FourVector {
    fn from(components: [f64; N]) -> Self {
        Self::new(components.to_vec())
    }
}

impl Add for &FourVector {
    type Output = FourVector;
    fn add(self, rhs: Self) -> FourVector {
        self.checked_add(rhs).expect("dimension mismatch in FourVector addition")
    }
}

impl Sub for &FourVector {
    type Output = FourVector;
    fn sub(self, rhs: Self) -> FourVector {
        self.checked_sub(rhs).expect("dimension mismatch in FourVector subtraction")
    }
}

impl Neg for &FourVector {
    type Output = FourVector;
    fn neg(self) -> FourVector {
        self.scale(-1.0)
    }
}

/// −a₀b₀ + Σᵢ aᵢbᵢ
pub fn minkowski_dot(a: &FourVector, b: &FourVector) -> Result<f64> {
    a.check_dim(b)?;
    let time = -a.components[0] * b.components[0];
    let space: f64 = a.components[1..].iter().zip(&b.components[1..]).map(|(x, y)| x * y).sum();
    Ok(time + space)
}

pub fn euclidean_dot(a: &FourVector, b: &FourVector) -> Result<f64> {
    a.check_dim(b)?;
    Ok(a.components.iter().zip(&b.components).map(|(x, y)| x * y).sum())
}

/// On-shell energy √(p⃗² + m²).
pub fn onshell_energy(space_momentum_sqr: f64, mass: f64) -> f64 {
    (space_momentum_sqr + mass * mass).sqrt()
}
