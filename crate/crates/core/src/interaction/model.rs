use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::fock::{Generator, GeneratorKind, Label, OperatorExpr, Term};
use crate::lattice::LatticeSpec;
use crate::particle::ParticleType;

/// One local monomial: coefficient times an ordered string of generators
/// at a common point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VertexTerm {
    pub coefficient: Complex64,
    pub legs: Vec<(GeneratorKind, ParticleType)>,
}

impl VertexTerm {
    pub fn new(legs: Vec<(GeneratorKind, ParticleType)>) -> Self {
        Self { coefficient: Complex64::new(1.0, 0.0), legs }
    }

    pub fn adjoint(&self) -> Self {
        Self {
            coefficient: self.coefficient.conj(),
            legs: self.legs.iter().rev().map(|(k, p)| (k.adjoint(), p.clone())).collect(),
        }
    }
}

/// `V = g Σ_terms ∫dᴰx term(x)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InteractionModel {
    pub coupling: f64,
    pub terms: Vec<VertexTerm>,
}

impl InteractionModel {
    /// `g[ψ_A‡ ψ_B ψ_A + ψ_A‡ ψ_B‡ ψ_A]`: an A line emitting or absorbing a
    /// self-adjoint B quantum.
    pub fn cubic(coupling: f64, a: ParticleType, b: ParticleType) -> Self {
        use GeneratorKind::{Annihilate, CreateStart};
        let absorb = VertexTerm::new(vec![(CreateStart, a.clone()), (Annihilate, b.clone()), (Annihilate, a.clone())]);
        let emit = VertexTerm::new(vec![(CreateStart, a.clone()), (CreateStart, b), (Annihilate, a)]);
        Self { coupling, terms: vec![absorb, emit] }
    }

    /// The cubic model without its absorption term; not self-adjoint.
    pub fn emission_only(coupling: f64, a: ParticleType, b: ParticleType) -> Self {
        let mut model = Self::cubic(coupling, a, b);
        model.terms.remove(0);
        model
    }

    pub fn with_coupling(&self, coupling: f64) -> Self {
        Self { coupling, terms: self.terms.clone() }
    }

    pub fn adjoint(&self) -> Self {
        Self { coupling: self.coupling, terms: self.terms.iter().map(VertexTerm::adjoint).collect() }
    }

    /// Whether the adjoint has the same terms, up to order and `tol` in
    /// the coefficients.
    pub fn is_self_adjoint(&self, tol: f64) -> bool {
        let adjoint = self.adjoint();
        let mut used = vec![false; self.terms.len()];
        adjoint.terms.iter().all(|t| {
            let hit = self.terms.iter().enumerate().position(|(i, s)| {
                !used[i] && s.legs == t.legs && (s.coefficient - t.coefficient).norm() <= tol
            });
            match hit {
                Some(i) => {
                    used[i] = true;
                    true
                }
                None => false,
            }
        }) && used.iter().all(|&u| u)
    }

    /// All species that appear in a leg.
    pub fn species(&self) -> Vec<ParticleType> {
        let mut out: Vec<ParticleType> = Vec::new();
        for (_, p) in self.terms.iter().flat_map(|t| &t.legs) {
            if !out.contains(p) {
                out.push(p.clone());
            }
        }
        out
    }

    /// Local operator at one site, weighted by `weight · g`.
    pub fn local_expr(&self, label: &Label, weight: f64) -> OperatorExpr {
        let terms = self
            .terms
            .iter()
            .map(|t| Term {
                coefficient: t.coefficient * (self.coupling * weight),
                generators: t.legs.iter().map(|(k, p)| Generator::new(*k, label.clone(), p.clone())).collect(),
            })
            .collect();
        OperatorExpr { terms }
    }

    /// `V` with the position integral replaced by a sum over lattice sites.
    pub fn lattice_expr(&self, spec: &LatticeSpec) -> OperatorExpr {
        let weight = spec.cell_volume();
        (0..spec.site_count()).fold(OperatorExpr::default(), |acc, s| acc.plus(self.local_expr(&Label::Site(s), weight)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair() -> (ParticleType, ParticleType) {
        (ParticleType::normal("A", 1.0).unwrap(), ParticleType::normal("B", 0.5).unwrap())
    }

    #[test]
    fn cubic_model_is_self_adjoint() {
        let (a, b) = pair();
        assert!(InteractionModel::cubic(0.1, a.clone(), b.clone()).is_self_adjoint(0.0));
        assert!(!InteractionModel::emission_only(0.1, a, b).is_self_adjoint(0.0));
    }

    #[test]
    fn complex_coefficient_breaks_self_adjointness() {
        let (a, b) = pair();
        let mut model = InteractionModel::cubic(1.0, a, b);
        model.terms[0].coefficient = Complex64::new(0.0, 1.0);
        model.terms[1].coefficient = Complex64::new(0.0, 1.0);
        assert!(!model.is_self_adjoint(1e-12));
    }

    #[test]
    fn lattice_expr_has_one_copy_per_site() {
        let (a, b) = pair();
        let spec = LatticeSpec::cubic(2, 2, 2.0, crate::geometry::Signature::Euclidean).unwrap();
        let expr = InteractionModel::cubic(0.3, a, b).lattice_expr(&spec);
        assert_eq!(expr.terms.len(), 8);
        assert!((expr.terms[0].coefficient.re - 0.3).abs() < 1e-15);
    }
}
