//! Particle and antiparticle momentum states as long-time limits, the
//! induced inner product with its dual bases, and the two localization
//! conventions.
//!
//! A continuum delta `δᵈ(p⃗ − p⃗′)` is represented on grids as a Kronecker
//! delta divided by the cell volume `Δpᵈ`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{onshell_energy, FourVector};

/// Sign of the on-shell energy: particles propagate forward, antiparticles
/// backward in coordinate time.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EnergySign {
    Particle,
    Antiparticle,
}

impl EnergySign {
    pub fn factor(self) -> f64 {
        match self {
            Self::Particle => 1.0,
            Self::Antiparticle => -1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DualConvention {
    /// Bra weight 2E against a plain ket: plane-wave localized states.
    Induced2E,
    /// √(2E) on both sides: Newton–Wigner localized states.
    SymmetricSqrt2E,
}

/// An on-shell momentum label with cached energy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OnShellState {
    pub sign: EnergySign,
    pub momentum: Vec<f64>,
    pub mass: f64,
    pub energy: f64,
}

impl OnShellState {
    pub fn new(sign: EnergySign, momentum: Vec<f64>, mass: f64) -> Result<Self> {
        if !(mass > 0.0) {
            return Err(Error::Domain(format!("mass must be positive, got {mass}")));
        }
        let energy = onshell_energy(momentum.iter().map(|p| p * p).sum(), mass);
        Ok(Self { sign, momentum, mass, energy })
    }

    /// `(±E_p, p⃗)`
    pub fn four_momentum(&self) -> FourVector {
        FourVector::from_time_space(self.sign.factor() * self.energy, &self.momentum)
    }
}

/// Symmetric grid of spatial momenta, `2K+1` points per axis at spacing Δp.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentumGrid {
    dim: usize,
    half: usize,
    spacing: f64,
}

impl MomentumGrid {
    pub fn new(dim: usize, half: usize, spacing: f64) -> Result<Self> {
        if dim == 0 || !(spacing > 0.0) {
            return Err(Error::Domain(format!("invalid momentum grid: d={dim}, Δp={spacing}")));
        }
        Ok(Self { dim, half, spacing })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn per_axis(&self) -> usize {
        2 * self.half + 1
    }

    pub fn len(&self) -> usize {
        self.per_axis().pow(self.dim as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn cell_volume(&self) -> f64 {
        self.spacing.powi(self.dim as i32)
    }

    pub fn momentum(&self, index: usize) -> Vec<f64> {
        let n = self.per_axis();
        let mut rest = index;
        let mut out = vec![0.0; self.dim];
        for axis in (0..self.dim).rev() {
            out[axis] = ((rest % n) as f64 - self.half as f64) * self.spacing;
            rest /= n;
        }
        out
    }

    /// Index of a momentum lying on the grid (within 1e−9 of a node).
    pub fn index_of(&self, p: &[f64]) -> Result<usize> {
        if p.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: p.len() });
        }
        let n = self.per_axis();
        let mut index = 0;
        for &component in p {
            let k = component / self.spacing + self.half as f64;
            let rounded = k.round();
            if (k - rounded).abs() > 1e-9 || rounded < 0.0 || rounded >= n as f64 {
                return Err(Error::Contract(format!("momentum {p:?} is not on the grid")));
            }
            index = index * n + rounded as usize;
        }
        Ok(index)
    }

    pub fn energy(&self, index: usize, mass: f64) -> f64 {
        onshell_energy(self.momentum(index).iter().map(|p| p * p).sum(), mass)
    }

    /// Extent of the dual position lattice, `2π/Δp`.
    pub fn dual_extent(&self) -> f64 {
        2.0 * PI / self.spacing
    }
}

/// Amplitudes over a momentum grid.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentumWavefunction {
    pub grid: MomentumGrid,
    pub values: Vec<Complex64>,
}

impl MomentumWavefunction {
    pub fn new(grid: MomentumGrid, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::DimensionMismatch { expected: grid.len(), got: values.len() });
        }
        Ok(Self { grid, values })
    }

    pub fn from_fn(grid: MomentumGrid, mut f: impl FnMut(&[f64]) -> Complex64) -> Self {
        let values = (0..grid.len()).map(|i| f(&grid.momentum(i))).collect();
        Self { grid, values }
    }

    /// Grid version of the continuum basis state: `1/Δpᵈ` at one node.
    pub fn basis(grid: MomentumGrid, index: usize) -> Self {
        let mut values = vec![Complex64::new(0.0, 0.0); grid.len()];
        values[index] = Complex64::new(grid.cell_volume().recip(), 0.0);
        Self { grid, values }
    }

    /// Plain `Σ Δpᵈ |ψ|²`.
    pub fn l2_norm_sqr(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).sum::<f64>() * self.grid.cell_volume()
    }

    pub fn l2_distance(&self, other: &Self) -> f64 {
        let s: f64 = self.values.iter().zip(&other.values).map(|(a, b)| (a - b).norm_sqr()).sum();
        (s * self.grid.cell_volume()).sqrt()
    }
}

/// `(2E_p)^{−1} · i·s/(p⁰ − s·E_p + i·s·ε)` with `s = ±1`.
pub fn onshell_propagator_momentum(p: &FourVector, mass: f64, sign: EnergySign, epsilon: f64) -> Complex64 {
    let e = onshell_energy(p.space_norm_sqr(), mass);
    let s = sign.factor();
    Complex64::new(0.0, s) / Complex64::new(p.time() - s * e, s * epsilon) / (2.0 * e)
}

/// Uniform grid of energies for off-shell profiles.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnergyAxis {
    pub start: f64,
    pub spacing: f64,
    pub count: usize,
}

impl EnergyAxis {
    /// `count` points centered on `center` covering `±halfwidth`.
    pub fn centered(center: f64, halfwidth: f64, count: usize) -> Self {
        let spacing = 2.0 * halfwidth / (count - 1) as f64;
        Self { start: center - halfwidth, spacing, count }
    }

    pub fn value(&self, k: usize) -> f64 {
        self.start + k as f64 * self.spacing
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnergyProfile {
    pub axis: EnergyAxis,
    pub amplitudes: Vec<Complex64>,
    /// `±E_p`, where the profile peaks.
    pub center: f64,
}

impl EnergyProfile {
    pub fn argmax(&self) -> f64 {
        let (k, _) = self
            .amplitudes
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.norm_sqr().total_cmp(&b.1.norm_sqr()))
            .expect("non-empty profile");
        self.axis.value(k)
    }
}

/// Energy profile of a state built from paths that started in the far past
/// (particle) or end in the far future (antiparticle), damped at rate ε
/// away from the observation time `t`:
///
/// `(2π)^{−1/2}(2E)^{−1} e^{iνt}/(ε ± iν)` with `ν = p⁰ ∓ E`.
pub fn momentum_state_profile(
    momentum: &[f64],
    mass: f64,
    sign: EnergySign,
    t: f64,
    epsilon: f64,
    axis: EnergyAxis,
) -> Result<EnergyProfile> {
    if !(epsilon > 0.0) {
        return Err(Error::Domain(format!("ε must be positive, got {epsilon}")));
    }
    let state = OnShellState::new(sign, momentum.to_vec(), mass)?;
    let s = sign.factor();
    let center = s * state.energy;
    let prefactor = (2.0 * PI).powf(-0.5) / (2.0 * state.energy);
    let amplitudes = (0..axis.count)
        .map(|k| {
            let nu = axis.value(k) - center;
            Complex64::from_polar(prefactor, nu * t) / Complex64::new(epsilon, s * nu)
        })
        .collect();
    Ok(EnergyProfile { axis, amplitudes, center })
}

/// Fraction of `|profile|²` within `window` of its on-shell center.
pub fn concentration(profile: &EnergyProfile, window: f64) -> Result<f64> {
    if !(window > 0.0) {
        return Err(Error::Domain(format!("window must be positive, got {window}")));
    }
    let (mut inside, mut total) = (0.0, 0.0);
    for (k, a) in profile.amplitudes.iter().enumerate() {
        let w = a.norm_sqr();
        total += w;
        if (profile.axis.value(k) - profile.center).abs() < window {
            inside += w;
        }
    }
    Ok(if total > 0.0 { inside / total } else { 0.0 })
}

/// `Σ_p Δpᵈ (2E_p)^{−1} ψ₁(p)* ψ₂(p)`.
pub fn induced_inner_product(a: &MomentumWavefunction, b: &MomentumWavefunction, mass: f64) -> Result<Complex64> {
    if a.grid != b.grid {
        return Err(Error::GridMismatch("wavefunctions live on different momentum grids".into()));
    }
    let sum: Complex64 = a
        .values
        .iter()
        .zip(&b.values)
        .enumerate()
        .map(|(i, (x, y))| x.conj() * y / (2.0 * a.grid.energy(i, mass)))
        .sum();
    Ok(sum * a.grid.cell_volume())
}

/// Expands ψ in the on-shell basis through the induced pairing and sums it
/// back with the measure `Δpᵈ 2E_p`.
pub fn identity_resolution_apply(psi: &MomentumWavefunction, mass: f64) -> Result<MomentumWavefunction> {
    let grid = psi.grid.clone();
    let cell = grid.cell_volume();
    let mut out = vec![Complex64::new(0.0, 0.0); grid.len()];
    for k in 0..grid.len() {
        let basis = MomentumWavefunction::basis(grid.clone(), k);
        let coefficient = induced_inner_product(&basis, psi, mass)? * (cell * 2.0 * grid.energy(k, mass));
        for (slot, b) in out.iter_mut().zip(&basis.values) {
            if b.re != 0.0 {
                *slot += coefficient * b;
            }
        }
    }
    MomentumWavefunction::new(grid, out)
}

/// Induced pairing of the bra `⟨p_bra|` and ket `|p_ket⟩`, both evolved to
/// time `t0`, computed as a sum over the dual position lattice. Equals
/// `δ/(2E Δpᵈ)` for every `t0`.
pub fn basis_pairing(
    grid: &MomentumGrid,
    bra: usize,
    ket: usize,
    mass: f64,
    sign: EnergySign,
    t0: f64,
) -> Complex64 {
    let d = grid.dim();
    let n = grid.per_axis();
    let a = grid.dual_extent() / n as f64;
    let (pb, pk) = (grid.momentum(bra), grid.momentum(ket));
    let (eb, ek) = (grid.energy(bra, mass), grid.energy(ket, mass));
    let s = sign.factor();
    let norm = (2.0 * PI).powf(-(d as f64) / 2.0);
    let mut sum = Complex64::new(0.0, 0.0);
    for site in 0..n.pow(d as u32) {
        let mut rest = site;
        let mut phase_b = -s * eb * t0;
        let mut phase_k = -s * ek * t0;
        for axis in (0..d).rev() {
            let x = (rest % n) as f64 * a;
            rest /= n;
            phase_b += pb[axis] * x;
            phase_k += pk[axis] * x;
        }
        let wave_b = Complex64::from_polar(norm, phase_b);
        let wave_k = Complex64::from_polar(norm, phase_k);
        sum += wave_b.conj() * wave_k;
    }
    sum * a.powi(d as i32) / (2.0 * ek)
}

/// Position-space wavefunction of a state localized at `(t, x⃗)`, evaluated
/// at momentum `p⃗`.
pub fn localized_wavefunction(
    x: &[f64],
    t: f64,
    momentum: &[f64],
    mass: f64,
    sign: EnergySign,
    convention: DualConvention,
) -> Result<Complex64> {
    if x.len() != momentum.len() {
        return Err(Error::DimensionMismatch { expected: momentum.len(), got: x.len() });
    }
    let d = momentum.len() as f64;
    let e = onshell_energy(momentum.iter().map(|p| p * p).sum(), mass);
    let px: f64 = x.iter().zip(momentum).map(|(a, b)| a * b).sum();
    let plane = Complex64::from_polar((2.0 * PI).powf(-d / 2.0), sign.factor() * e * t - px);
    Ok(match convention {
        DualConvention::Induced2E => plane,
        DualConvention::SymmetricSqrt2E => plane / (2.0 * e).sqrt(),
    })
}

/// Multiplies each amplitude by `e^{±iE_pΔt}`.
pub fn fw_phase_evolve(psi: &MomentumWavefunction, mass: f64, sign: EnergySign, dt: f64) -> MomentumWavefunction {
    phase_evolve(psi, sign, dt, |p2| (p2 + mass * mass).sqrt())
}

/// Multiplies each amplitude by `e^{±i(m + p²/2m)Δt}`.
pub fn nonrelativistic_phase_evolve(
    psi: &MomentumWavefunction,
    mass: f64,
    sign: EnergySign,
    dt: f64,
) -> MomentumWavefunction {
    phase_evolve(psi, sign, dt, |p2| mass + p2 / (2.0 * mass))
}

fn phase_evolve(
    psi: &MomentumWavefunction,
    sign: EnergySign,
    dt: f64,
    rate: impl Fn(f64) -> f64,
) -> MomentumWavefunction {
    let values = psi
        .values
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let p2: f64 = psi.grid.momentum(i).iter().map(|p| p * p).sum();
            v * Complex64::from_polar(1.0, sign.factor() * rate(p2) * dt)
        })
        .collect();
    MomentumWavefunction { grid: psi.grid.clone(), values }
}
