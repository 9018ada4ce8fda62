use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Whether a species is the normal member of a pair or its conjugate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Conjugation {
    #[default]
    Normal,
    Anti,
}

/// A scalar particle species. The mass is strictly positive; the tachyonic
/// branch is not representable.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParticleType {
    label: String,
    mass: f64,
    #[serde(default)]
    conjugation: Conjugation,
}

impl ParticleType {
    pub fn new(label: impl Into<String>, mass: f64, conjugation: Conjugation) -> Result<Self> {
        if !(mass > 0.0 && mass.is_finite()) {
            return Err(Error::Domain(format!("particle mass must be positive, got {mass}")));
        }
        Ok(Self { label: label.into(), mass, conjugation })
    }

    pub fn normal(label: impl Into<String>, mass: f64) -> Result<Self> {
        Self::new(label, mass, Conjugation::Normal)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn mass_sqr(&self) -> f64 {
        self.mass * self.mass
    }

    pub fn conjugation(&self) -> Conjugation {
        self.conjugation
    }
}
