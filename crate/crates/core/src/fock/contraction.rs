//! Single-particle pairings `⟨x′, n′ | x, n⟩` used by the multiparticle
//! pairing and by annihilation operators.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::state::{Entry, Label};
use crate::error::{Error, Result};
use crate::geometry::{FourVector, Signature};
use crate::kernel::{lattice_propagator, propagator_onshell_part, propagator_position, PropagatorParams};
use crate::lattice::{ComplexField, LatticeSpec};
use crate::particle::{Conjugation, ParticleType};

/// Pairing of a bra entry with a ket entry. Entries of different species
/// pair to zero.
pub trait Contraction {
    fn contract(&self, bra: &Entry, ket: &Entry) -> Result<Complex64>;
}

/// Which single-particle pairing a field uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum FieldKind {
    /// The full propagator `Δ(x′−x)`.
    #[default]
    Plain,
    /// The positive-energy part `Δ⁺(x′−x)`; antiparticles use `Δ⁻(x−x′)`.
    OnShell,
}

/// Contraction given by a closure on `(species, bra label, ket label)`,
/// called only when the species agree.
pub struct FnContraction<F>(pub F);

impl<F> Contraction for FnContraction<F>
where
    F: Fn(&ParticleType, &Label, &Label) -> Complex64,
{
    fn contract(&self, bra: &Entry, ket: &Entry) -> Result<Complex64> {
        if bra.particle != ket.particle {
            return Ok(Complex64::new(0.0, 0.0));
        }
        Ok((self.0)(&bra.particle, &bra.label, &ket.label))
    }
}

fn site(label: &Label) -> Result<usize> {
    match label {
        Label::Site(s) => Ok(*s),
        other => Err(Error::Contract(format!("lattice contraction needs site labels, got {other:?}"))),
    }
}

/// Contractions on a periodic lattice.
///
/// Plain fields use the lattice propagator from the momentum-space
/// multiplier. On-shell fields sum `e^{∓iE_p t + ip⃗·x⃗}/2E_p` over the
/// spatial lattice momenta, with the unpaired Nyquist modes split evenly
/// between `±π/a`, and use the actual (unwrapped) time difference.
pub struct LatticeContraction {
    spec: LatticeSpec,
    kind: FieldKind,
    epsilon: f64,
    tables: Vec<(f64, ComplexField)>,
}

impl LatticeContraction {
    /// `species` lists the masses that will be contracted; plain tables are
    /// precomputed for them.
    pub fn new(spec: LatticeSpec, kind: FieldKind, epsilon: f64, species: &[ParticleType]) -> Result<Self> {
        if kind == FieldKind::OnShell && spec.dim() < 2 {
            return Err(Error::UnsupportedSpec("on-shell fields need a time axis and a space axis".into()));
        }
        let mut tables: Vec<(f64, ComplexField)> = Vec::new();
        if kind == FieldKind::Plain {
            for p in species {
                if !tables.iter().any(|(m, _)| *m == p.mass()) {
                    tables.push((p.mass(), lattice_propagator(&spec, p.mass(), epsilon)));
                }
            }
        }
        Ok(Self { spec, kind, epsilon, tables })
    }

    pub fn spec(&self) -> &LatticeSpec {
        &self.spec
    }

    pub fn kind(&self) -> FieldKind {
        self.kind
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// Plain lattice propagator between two sites, `Δ(x_to − x_from)`.
    pub fn plain(&self, mass: f64, to: usize, from: usize) -> Result<Complex64> {
        let (_, table) = self
            .tables
            .iter()
            .find(|(m, _)| *m == mass)
            .ok_or_else(|| Error::Contract(format!("no propagator table for mass {mass}")))?;
        Ok(table.amplitudes()[self.spec.displacement(to, from)])
    }

    /// Lattice `Δ±(x_to − x_from)`; `positive` selects `Δ⁺`.
    pub fn onshell(&self, mass: f64, to: usize, from: usize, positive: bool) -> Complex64 {
        let spec = &self.spec;
        let (xa, xb) = (spec.position(to), spec.position(from));
        let t = xa.time() - xb.time();
        let dx: Vec<f64> = xa.space().iter().zip(xb.space()).map(|(a, b)| a - b).collect();
        let sign = if positive { -1.0 } else { 1.0 };
        let d = spec.dim() - 1;
        let axes: Vec<(usize, f64)> = (1..=d).map(|a| (spec.points()[a], spec.extents()[a])).collect();
        let volume: f64 = axes.iter().map(|(_, l)| l).product();

        let mut total = Complex64::new(0.0, 0.0);
        let mut modes: Vec<i64> = axes.iter().map(|(n, _)| -(*n as i64) / 2).collect();
        loop {
            let mut weight = 1.0;
            let mut p2 = 0.0;
            let mut phase = 0.0;
            for (a, (&k, &(n, l))) in modes.iter().zip(&axes).enumerate() {
                if k.unsigned_abs() as usize * 2 == n {
                    weight *= 0.5;
                }
                let p = 2.0 * PI * k as f64 / l;
                p2 += p * p;
                phase += p * dx[a];
            }
            let e = (p2 + mass * mass).sqrt();
            total += Complex64::from_polar(weight / (2.0 * e), sign * e * t + phase);

            let mut axis = 0;
            loop {
                if axis == d {
                    return total / volume;
                }
                modes[axis] += 1;
                if modes[axis] <= axes[axis].0 as i64 / 2 {
                    break;
                }
                modes[axis] = -(axes[axis].0 as i64) / 2;
                axis += 1;
            }
        }
    }
}

impl Contraction for LatticeContraction {
    fn contract(&self, bra: &Entry, ket: &Entry) -> Result<Complex64> {
        if bra.particle != ket.particle {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let (xb, xk) = (site(&bra.label)?, site(&ket.label)?);
        let mass = bra.particle.mass();
        match (self.kind, bra.particle.conjugation()) {
            (FieldKind::Plain, Conjugation::Normal) => self.plain(mass, xb, xk),
            (FieldKind::Plain, Conjugation::Anti) => self.plain(mass, xk, xb),
            (FieldKind::OnShell, Conjugation::Normal) => Ok(self.onshell(mass, xb, xk, true)),
            (FieldKind::OnShell, Conjugation::Anti) => Ok(self.onshell(mass, xk, xb, false)),
        }
    }
}

/// Continuum contractions between position labels: the proper-time
/// propagator for plain fields, the damped on-shell parts otherwise.
pub struct ContinuumContraction {
    pub kind: FieldKind,
    pub signature: Signature,
    /// `ε` for plain fields, momentum damping for on-shell fields.
    pub regulator: f64,
}

impl ContinuumContraction {
    fn pair(&self, mass: f64, to: &[f64], from: &[f64], positive: bool) -> Result<Complex64> {
        if to.len() != from.len() {
            return Err(Error::DimensionMismatch { expected: to.len(), got: from.len() });
        }
        let dx = FourVector::new(to.iter().zip(from).map(|(a, b)| a - b).collect());
        match self.kind {
            FieldKind::Plain => propagator_position(&dx, &PropagatorParams::new(mass, self.regulator, self.signature)),
            FieldKind::OnShell => propagator_onshell_part(&dx, mass, positive, self.regulator),
        }
    }
}

impl Contraction for ContinuumContraction {
    fn contract(&self, bra: &Entry, ket: &Entry) -> Result<Complex64> {
        if bra.particle != ket.particle {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let (Label::Position(xb), Label::Position(xk)) = (&bra.label, &ket.label) else {
            return Err(Error::Contract("continuum contraction needs position labels".into()));
        };
        let mass = bra.particle.mass();
        match bra.particle.conjugation() {
            Conjugation::Normal => self.pair(mass, xb, xk, true),
            Conjugation::Anti => self.pair(mass, xk, xb, false),
        }
    }
}
