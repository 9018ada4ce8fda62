//! λ-evolution of parametrized wavefunctions.
//!
//! Coordinate time is an ordinary lattice axis; λ is the external evolution
//! parameter. The generator is diagonal in momentum space, so a step of any
//! size is an exact multiplication by `e^{−iΔλ(p²+m²)}`. On a Euclidean
//! lattice the same code applies the heat-kernel factor `e^{−Δλ(p²+m²)}`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::{FourVector, Signature};
use crate::kernel::{lattice_multiplier, propagate_lattice};
use crate::lattice::{ComplexField, LatticeSpec, Representation};

#[derive(Debug, Clone, PartialEq)]
pub struct ParametrizedWavefunction {
    field: ComplexField,
    lambda: f64,
    mass: f64,
}

impl ParametrizedWavefunction {
    pub fn new(field: ComplexField, lambda: f64, mass: f64) -> Result<Self> {
        if !(mass > 0.0) {
            return Err(Error::Domain(format!("mass must be positive, got {mass}")));
        }
        Ok(Self { field: field.to_position(), lambda, mass })
    }

    /// Normalized Gaussian packet `exp(−|x−c|²/4σ² + ik·x)` with `k·x` in the
    /// lattice signature. Centers should sit well inside the box.
    pub fn gaussian_packet(
        spec: LatticeSpec,
        center: &FourVector,
        width: f64,
        momentum: &FourVector,
        mass: f64,
    ) -> Result<Self> {
        let sig = spec.signature();
        let field = ComplexField::from_fn(spec, Representation::Position, |x| {
            let d = x - center;
            let r2 = d.dot(&d, Signature::Euclidean).expect("same dim");
            let phase = momentum.dot(x, sig).expect("same dim");
            Complex64::from_polar((-r2 / (4.0 * width * width)).exp(), phase)
        });
        Self::new(field, 0.0, mass)?.normalized()
    }

    pub fn normalized(mut self) -> Result<Self> {
        let n = self.norm();
        if !(n > 0.0) {
            return Err(Error::Domain("cannot normalize a zero wavefunction".into()));
        }
        self.field.scale(Complex64::new(n.sqrt().recip(), 0.0));
        Ok(self)
    }

    pub fn field(&self) -> &ComplexField {
        &self.field
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    /// `Σ|ψ|² aᴰ` in position space.
    pub fn norm(&self) -> f64 {
        self.field.norm_sqr()
    }

    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        self.field.inner(&other.field)
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        let mut out = self.clone();
        out.field.scale(c);
        out
    }

    pub fn evolve(&self, step: f64) -> Self {
        Self {
            field: propagate_lattice(&self.field, self.mass, step),
            lambda: self.lambda + step,
            mass: self.mass,
        }
    }

    /// L² norm of `−i(ψ(λ+h) − ψ(λ−h))/2h − (□ − m²)ψ(λ)`, with the
    /// d'Alembertian applied spectrally. Minkowski lattices only.
    pub fn stueckelberg_residual(&self, probe: f64) -> Result<f64> {
        let spec = self.field.spec();
        if spec.signature() != Signature::Minkowski {
            return Err(Error::Unsupported("the λ-Schrödinger residual needs a Minkowski lattice".into()));
        }
        if !(probe > 0.0) {
            return Err(Error::Domain(format!("probe step must be positive, got {probe}")));
        }
        let forward = self.evolve(probe).field;
        let backward = self.evolve(-probe).field;
        let mut generator = self.field.to_momentum();
        let m2 = self.mass * self.mass;
        generator.multiply_by(|p| Complex64::new(-(p.dot(p, Signature::Minkowski).expect("self") + m2), 0.0));
        let generator = generator.to_position();
        let scale = Complex64::new(0.0, -1.0 / (2.0 * probe));
        let residual: f64 = forward
            .amplitudes()
            .iter()
            .zip(backward.amplitudes())
            .zip(generator.amplitudes())
            .map(|((f, b), g)| ((f - b) * scale - g).norm_sqr())
            .sum();
        Ok((residual * spec.cell_volume()).sqrt())
    }
}

/// `Σ_k h e^{−εkh} K(kh) ψ` for `k = 0..steps`, accumulated in momentum
/// space one evolution step at a time.
pub fn superposed_evolution(
    source: &ComplexField,
    mass: f64,
    epsilon: f64,
    step: f64,
    steps: usize,
) -> ComplexField {
    let sig = source.spec().signature();
    let mut current = source.to_momentum();
    let mut total = ComplexField::zeros(source.spec().clone(), Representation::Momentum);
    let decay = (-epsilon * step).exp();
    let mut weight = step;
    let spec = source.spec().clone();
    let factors: Vec<Complex64> = (0..spec.site_count())
        .map(|i| lattice_multiplier(sig, mass, step, &spec.momentum(i)))
        .collect();
    for _ in 0..=steps {
        for (t, c) in total.amplitudes_mut().iter_mut().zip(current.amplitudes()) {
            *t += c * weight;
        }
        for (c, f) in current.amplitudes_mut().iter_mut().zip(&factors) {
            *c *= f;
        }
        weight *= decay;
    }
    total.to_position()
}

/// Lattice delta of unit integral at `site`: `1/aᴰ` there, zero elsewhere.
pub fn lattice_delta(spec: &LatticeSpec, site: usize) -> ComplexField {
    let mut field = ComplexField::zeros(spec.clone(), Representation::Position);
    field.amplitudes_mut()[site] = Complex64::new(spec.cell_volume().recip(), 0.0);
    field
}

/// Analytic residual of a plane wave with `ω = p² + m²`: `|ω − sin(hω)/h|`.
pub fn plane_wave_residual(omega: f64, probe: f64) -> f64 {
    (omega - (probe * omega).sin() / probe).abs()
}

/// Periodized closed Euclidean kernel sampled at a lattice displacement.
pub fn periodized_heat_kernel(spec: &LatticeSpec, site: usize, mass: f64, tau: f64, images: i64) -> f64 {
    let x = spec.position(site);
    let dim = spec.dim();
    let mut total = 0.0;
    let mut offsets = vec![-images; dim];
    loop {
        let r2: f64 = (0..dim)
            .map(|a| {
                let y = x[a] + offsets[a] as f64 * spec.extents()[a];
                y * y
            })
            .sum();
        total += (-r2 / (4.0 * tau)).exp();
        let mut axis = 0;
        loop {
            if axis == dim {
                return total * (4.0 * PI * tau).powf(-(dim as f64) / 2.0) * (-tau * mass * mass).exp();
            }
            offsets[axis] += 1;
            if offsets[axis] <= images {
                break;
            }
            offsets[axis] = -images;
            axis += 1;
        }
    }
}
