use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::contraction::Contraction;
use super::state::{Entry, FockState, FockVector, LambdaTag, Label};
use crate::error::{Error, Result};
use crate::particle::ParticleType;

/// The four field generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GeneratorKind {
    /// `ψ†(x, n; λ₀)`
    CreateStart,
    /// `ψ†(x, n)`
    CreateIntegrated,
    /// `ψ(x, n)`
    Annihilate,
    /// `ψ(x, n; λ₀)`
    AnnihilateStart,
}

impl GeneratorKind {
    pub fn is_creation(self) -> bool {
        matches!(self, Self::CreateStart | Self::CreateIntegrated)
    }

    /// `ψ ↔ ψ†(·;λ₀)`, `ψ(·;λ₀) ↔ ψ†`.
    pub fn adjoint(self) -> Self {
        match self {
            Self::Annihilate => Self::CreateStart,
            Self::CreateStart => Self::Annihilate,
            Self::AnnihilateStart => Self::CreateIntegrated,
            Self::CreateIntegrated => Self::AnnihilateStart,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Generator {
    pub kind: GeneratorKind,
    pub label: Label,
    pub particle: ParticleType,
}

impl Generator {
    pub fn new(kind: GeneratorKind, label: Label, particle: ParticleType) -> Self {
        Self { kind, label, particle }
    }

    pub fn adjoint(&self) -> Self {
        Self { kind: self.kind.adjoint(), ..self.clone() }
    }
}

/// `coefficient × g₁ g₂ … g_k`; the rightmost generator acts first.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub coefficient: Complex64,
    pub generators: Vec<Generator>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct OperatorExpr {
    pub terms: Vec<Term>,
}

impl OperatorExpr {
    pub fn single(coefficient: Complex64, generators: Vec<Generator>) -> Self {
        Self { terms: vec![Term { coefficient, generators }] }
    }

    pub fn generator(g: Generator) -> Self {
        Self::single(Complex64::new(1.0, 0.0), vec![g])
    }

    pub fn plus(mut self, other: Self) -> Self {
        self.terms.extend(other.terms);
        self
    }

    pub fn scaled(mut self, c: Complex64) -> Self {
        for t in &mut self.terms {
            t.coefficient *= c;
        }
        self
    }

    /// Operator product `self · other`.
    pub fn compose(&self, other: &Self) -> Self {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                let mut generators = a.generators.clone();
                generators.extend(b.generators.iter().cloned());
                terms.push(Term { coefficient: a.coefficient * b.coefficient, generators });
            }
        }
        Self { terms }
    }

    /// Applies the operator to a vector, never exceeding `max_particles`
    /// at any intermediate step.
    pub fn apply(&self, state: &FockVector, contraction: &dyn Contraction, max_particles: usize) -> Result<FockVector> {
        let mut out = FockVector::zero();
        for term in &self.terms {
            let mut current = state.clone();
            for g in term.generators.iter().rev() {
                current = apply_field_vector(g, &current, contraction, max_particles)?;
            }
            out.add_scaled(&current, term.coefficient);
        }
        Ok(out)
    }
}

/// Generator map, string reversal and coefficient conjugation.
pub fn special_adjoint(expr: &OperatorExpr) -> OperatorExpr {
    let terms = expr
        .terms
        .iter()
        .map(|t| Term {
            coefficient: t.coefficient.conj(),
            generators: t.generators.iter().rev().map(Generator::adjoint).collect(),
        })
        .collect();
    OperatorExpr { terms }
}

/// Creation appends an entry with unit coefficient; annihilation sums the
/// contractions against each entry, removing it.
pub fn apply_field(
    generator: &Generator,
    state: &FockState,
    contraction: &dyn Contraction,
    max_particles: usize,
) -> Result<FockVector> {
    let mut out = FockVector::zero();
    let entries = state.entries();
    match generator.kind {
        GeneratorKind::CreateStart | GeneratorKind::CreateIntegrated => {
            if entries.len() + 1 > max_particles {
                return Err(Error::Sector(format!(
                    "creation would exceed the sector bound {max_particles}"
                )));
            }
            let tag = if generator.kind == GeneratorKind::CreateStart {
                LambdaTag::Start
            } else {
                LambdaTag::Integrated
            };
            let added = Entry::new(generator.label.clone(), generator.particle.clone(), tag);
            let at = entries.partition_point(|e| *e <= added);
            let mut next = entries.to_vec();
            next.insert(at, added);
            out.add(next, state.coefficient());
        }
        GeneratorKind::Annihilate | GeneratorKind::AnnihilateStart => {
            let probe = Entry::new(generator.label.clone(), generator.particle.clone(), LambdaTag::Integrated);
            for i in 0..entries.len() {
                let c = contraction.contract(&probe, &entries[i])?;
                if c == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let mut rest = entries.to_vec();
                rest.remove(i);
                out.add(rest, state.coefficient() * c);
            }
        }
    }
    Ok(out)
}

pub fn apply_field_vector(
    generator: &Generator,
    state: &FockVector,
    contraction: &dyn Contraction,
    max_particles: usize,
) -> Result<FockVector> {
    let mut out = FockVector::zero();
    for s in state.states() {
        out.add_scaled(&apply_field(generator, &s, contraction, max_particles)?, Complex64::new(1.0, 0.0));
    }
    Ok(out)
}

/// Vacuum expectation of `[ψ(x′, n′), ψ‡(x, n)]`.
pub fn commutator_value(
    bra_label: &Label,
    bra_particle: &ParticleType,
    ket_label: &Label,
    ket_particle: &ParticleType,
    contraction: &dyn Contraction,
) -> Result<Complex64> {
    let annihilate = Generator::new(GeneratorKind::Annihilate, bra_label.clone(), bra_particle.clone());
    let create = Generator::new(GeneratorKind::Annihilate, ket_label.clone(), ket_particle.clone()).adjoint();
    let vacuum = FockVector::from_state(FockState::vacuum());
    let forward = OperatorExpr::single(Complex64::new(1.0, 0.0), vec![annihilate.clone(), create.clone()]);
    let backward = OperatorExpr::single(Complex64::new(1.0, 0.0), vec![create, annihilate]);
    let a = forward.apply(&vacuum, contraction, 1)?;
    let b = backward.apply(&vacuum, contraction, 1)?;
    let project = |v: &FockVector| {
        v.terms().filter(|(e, _)| e.is_empty()).map(|(_, c)| c).sum::<Complex64>()
    };
    Ok(project(&a) - project(&b))
}
