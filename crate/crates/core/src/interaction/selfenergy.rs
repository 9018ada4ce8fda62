//! Euclidean one-loop self-energy integrals in radial–angular form.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::FourVector;
use crate::quad::{integrate_checked, integrate_with_breaks, log_breaks, Tolerance};
use crate::regularization::RegulatorSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    /// Sharp momentum cutoff, uniform proper-time weight.
    Cutoff,
    /// Proper-time weight integrated inside the momentum integral.
    Lambda,
    /// Superposition of unregulated integrals over a mass spectrum.
    MassSpectrum,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelfEnergyResult {
    pub value: Complex64,
    pub error: f64,
    pub route: Route,
    pub dim: usize,
    pub cutoff: Option<f64>,
    pub regulator: Option<RegulatorSpec>,
}

/// Loop geometry shared by every route: external momentum and masses.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Loop {
    pub p: f64,
    pub ma2: f64,
    pub mb2: f64,
    pub dim: usize,
}

impl Loop {
    pub fn new(p: &FourVector, ma: f64, mb: f64) -> Result<Self> {
        let dim = p.dim();
        if dim != 2 && dim != 4 {
            return Err(Error::Unsupported(format!("self-energy needs D = 2 or 4, got {dim}")));
        }
        if !(ma > 0.0 && mb > 0.0) {
            return Err(Error::Domain(format!("masses must be positive, got {ma}, {mb}")));
        }
        let p2: f64 = p.components().iter().map(|x| x * x).sum();
        Ok(Self { p: p2.sqrt(), ma2: ma * ma, mb2: mb * mb, dim })
    }

    /// `∫dΩ [(p−k)² + m_B²]^{−1}` over directions of `k`.
    pub fn angular(&self, k: f64) -> f64 {
        let b = self.p * self.p + k * k + self.mb2;
        let c = 2.0 * self.p * k;
        if c == 0.0 {
            return self.solid_angle() / b;
        }
        let tol = Tolerance::new(1e-300, 1e-13);
        match self.dim {
            2 => 2.0 * integrate_with_breaks(|t: f64| 1.0 / (b - c * t.cos()), &[0.0, PI / 2.0, PI], tol).value,
            _ => {
                let f = |t: f64| {
                    let s = t.sin();
                    s * s / (b - c * t.cos())
                };
                4.0 * PI * integrate_with_breaks(f, &[0.0, PI / 2.0, PI], tol).value
            }
        }
    }

    pub fn solid_angle(&self) -> f64 {
        match self.dim {
            2 => 2.0 * PI,
            _ => 2.0 * PI * PI,
        }
    }

    /// Radial breakpoints on `[0, k_max]`: linear below the mass scale,
    /// logarithmic above.
    pub fn radial_breaks(&self, k_max: f64) -> Vec<f64> {
        let scale = self.ma2.sqrt().min(self.mb2.sqrt()).min(1.0).max(self.p.min(1.0)) * 0.5;
        let mut breaks = vec![0.0];
        if k_max <= scale {
            breaks.push(k_max);
            return breaks;
        }
        let pieces = (((k_max / scale).log10() * 6.0).ceil() as usize).max(1);
        breaks.extend(log_breaks(scale, k_max, pieces));
        if self.p > scale && self.p < k_max {
            breaks.push(self.p);
            breaks.sort_by(f64::total_cmp);
        }
        breaks
    }

    /// `∫₀^{k_max} dk k^{D−1} w(k) A(k)` with `A` the angular factor.
    pub fn radial(&self, weight: impl Fn(f64) -> f64, k_max: f64, rel: f64) -> Result<(f64, f64)> {
        let d = self.dim as i32;
        let integrand = |k: f64| k.powi(d - 1) * weight(k) * self.angular(k);
        let tol = Tolerance::new(1e-300, rel).with_max_intervals(20_000);
        let q = integrate_checked(integrand, &self.radial_breaks(k_max), tol)?;
        Ok((q.value, q.error))
    }
}

/// `∫_{|k|≤Λ} dᴰk [(k²+m_A²)((p−k)²+m_B²)]^{−1}` in Euclidean signature.
pub fn self_energy_unregulated(p: &FourVector, ma: f64, mb: f64, cutoff: f64) -> Result<SelfEnergyResult> {
    let geometry = Loop::new(p, ma, mb)?;
    if !(cutoff > 10.0 * ma.max(mb)) {
        return Err(Error::Contract(format!(
            "cutoff {cutoff} must exceed ten times the largest mass {}",
            ma.max(mb)
        )));
    }
    let (value, error) = geometry.radial(|k| 1.0 / (k * k + geometry.ma2), cutoff, 1e-11)?;
    Ok(SelfEnergyResult {
        value: Complex64::new(value, 0.0),
        error,
        route: Route::Cutoff,
        dim: geometry.dim,
        cutoff: Some(cutoff),
        regulator: None,
    })
}
