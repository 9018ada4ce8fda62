use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::model::InteractionModel;
use crate::error::{Error, Result};
use crate::fock::{Contraction, FockVector};
use crate::geometry::{onshell_energy, FourVector};
use crate::kernel::propagator_momentum;
use crate::lattice::LatticeSpec;
use crate::onshell::{EnergySign, MomentumGrid};
use crate::particle::ParticleType;

/// Highest order accepted by [`amplitude_order_m`] unless raised.
pub const DEFAULT_MAX_ORDER: usize = 3;

/// `⟨out| (−i)^m/m! V^m |in⟩` with `V` summed over the lattice sites.
pub fn amplitude_order_m(
    incoming: &FockVector,
    outgoing: &FockVector,
    model: &InteractionModel,
    spec: &LatticeSpec,
    contraction: &dyn Contraction,
    order: usize,
) -> Result<Complex64> {
    if order > DEFAULT_MAX_ORDER {
        return Err(Error::Contract(format!("order {order} exceeds the maximum {DEFAULT_MAX_ORDER}")));
    }
    let expr = model.lattice_expr(spec);
    let cap = incoming.max_particles() + 3 * order;
    let mut state = incoming.clone();
    for _ in 0..order {
        state = expr.apply(&state, contraction, cap)?;
    }
    let factorial: f64 = (1..=order).map(|k| k as f64).product();
    let phase = Complex64::new(0.0, -1.0).powu(order as u32);
    Ok(outgoing.inner(&state, contraction)? * phase / factorial)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExternalLine {
    FinalParticle,
    FinalAntiparticle,
    InitialParticle,
    InitialAntiparticle,
}

/// `(2π)^{−d/2}(2E_p)^{−1/2} e^{iφ}` for an external leg attached at `x`.
pub fn external_line_factor(kind: ExternalLine, momentum: &[f64], mass: f64, x: &FourVector) -> Result<Complex64> {
    if x.dim() != momentum.len() + 1 {
        return Err(Error::DimensionMismatch { expected: momentum.len() + 1, got: x.dim() });
    }
    let d = momentum.len() as f64;
    let e = onshell_energy(momentum.iter().map(|p| p * p).sum(), mass);
    let px: f64 = momentum.iter().zip(x.space()).map(|(p, y)| p * y).sum();
    let forward = e * x.time() - px;
    let phase = match kind {
        ExternalLine::FinalParticle | ExternalLine::InitialAntiparticle => forward,
        ExternalLine::FinalAntiparticle | ExternalLine::InitialParticle => -forward,
    };
    Ok(Complex64::from_polar((2.0 * PI).powf(-d / 2.0) / (2.0 * e).sqrt(), phase))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExternalLeg {
    pub momentum: Vec<f64>,
    pub particle: ParticleType,
    pub sign: EnergySign,
}

impl ExternalLeg {
    pub fn particle(momentum: Vec<f64>, particle: ParticleType) -> Self {
        Self { momentum, particle, sign: EnergySign::Particle }
    }

    pub fn energy(&self) -> f64 {
        onshell_energy(self.momentum.iter().map(|p| p * p).sum(), self.particle.mass())
    }

    pub fn four_momentum(&self) -> FourVector {
        FourVector::from_time_space(self.energy(), &self.momentum)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScatterSpec {
    pub incoming: Vec<ExternalLeg>,
    pub outgoing: Vec<ExternalLeg>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScatterAmplitude {
    /// Full amplitude including `(2π)ᴰ` times the conservation indicator.
    pub value: Complex64,
    /// Amplitude with the conservation delta stripped.
    pub reduced: Complex64,
    pub conserved: bool,
}

/// Tree-level `A A → A A` through one exchanged B quantum, both crossing
/// assignments included.
pub fn scatter_tree_2to2(
    spec: &ScatterSpec,
    coupling: f64,
    exchanged: &ParticleType,
    epsilon: f64,
    grid: &MomentumGrid,
) -> Result<ScatterAmplitude> {
    if spec.incoming.len() != 2 || spec.outgoing.len() != 2 {
        return Err(Error::Contract("tree-level scattering needs two incoming and two outgoing legs".into()));
    }
    let legs = spec.incoming.iter().chain(&spec.outgoing);
    let first = &spec.incoming[0].particle;
    for leg in legs.clone() {
        grid.index_of(&leg.momentum)?;
        if &leg.particle != first || leg.sign != EnergySign::Particle {
            return Err(Error::Contract("all legs must be particles of one species".into()));
        }
    }
    let [p1, p2] = [spec.incoming[0].four_momentum(), spec.incoming[1].four_momentum()];
    let [q1, q2] = [spec.outgoing[0].four_momentum(), spec.outgoing[1].four_momentum()];
    let direct = propagator_momentum(&(&p1 - &q1), exchanged.mass(), epsilon);
    let crossed = propagator_momentum(&(&p1 - &q2), exchanged.mass(), epsilon);
    let d = grid.dim() as f64;
    let external: f64 = legs.map(|l| (2.0 * PI).powf(-d / 2.0) / (2.0 * l.energy()).sqrt()).product();
    let reduced = (direct + crossed) * (coupling * coupling * external);

    let total_in = p1.checked_add(&p2)?;
    let total_out = q1.checked_add(&q2)?;
    let tol = 1e-9 * total_in.time().abs().max(1.0);
    let conserved = total_in.components().iter().zip(total_out.components()).all(|(a, b)| (a - b).abs() <= tol);
    let value = if conserved { reduced * (2.0 * PI).powf(d + 1.0) } else { Complex64::new(0.0, 0.0) };
    Ok(ScatterAmplitude { value, reduced, conserved })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn final_and_initial_are_conjugate() {
        let x = FourVector::from([0.3, -1.2, 0.4]);
        let p = [0.2, 0.5];
        let f = external_line_factor(ExternalLine::FinalParticle, &p, 1.3, &x).unwrap();
        let i = external_line_factor(ExternalLine::InitialParticle, &p, 1.3, &x).unwrap();
        assert!((f - i.conj()).norm() < 1e-15);
    }

    #[test]
    fn factor_at_origin() {
        let f = external_line_factor(ExternalLine::FinalParticle, &[0.0], 2.0, &FourVector::zero(2)).unwrap();
        assert!((f.re - (2.0 * PI).powf(-0.5) / 2.0).abs() < 1e-15 && f.im == 0.0);
    }

    #[test]
    fn zero_coupling_scatters_nothing() {
        let a = ParticleType::normal("A", 1.0).unwrap();
        let b = ParticleType::normal("B", 0.5).unwrap();
        let grid = MomentumGrid::new(1, 4, 0.25).unwrap();
        let spec = ScatterSpec {
            incoming: vec![ExternalLeg::particle(vec![0.5], a.clone()), ExternalLeg::particle(vec![-0.5], a.clone())],
            outgoing: vec![ExternalLeg::particle(vec![-0.5], a.clone()), ExternalLeg::particle(vec![0.5], a)],
        };
        let amp = scatter_tree_2to2(&spec, 0.0, &b, 1e-6, &grid).unwrap();
        assert!(amp.conserved);
        assert_eq!(amp.value.norm(), 0.0);
    }
}
