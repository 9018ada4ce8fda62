use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::contraction::Contraction;
use super::permanent::permanent;
use crate::error::{Error, Result};
use crate::particle::ParticleType;

/// Where a single-particle entry sits.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "kind", content = "value")]
pub enum Label {
    /// Flat lattice site index.
    Site(usize),
    Position(Vec<f64>),
    Momentum(Vec<f64>),
}

impl Label {
    fn rank(&self) -> u8 {
        match self {
            Self::Site(_) => 0,
            Self::Position(_) => 1,
            Self::Momentum(_) => 2,
        }
    }

    fn total_cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Self::Site(a), Self::Site(b)) => a.cmp(b),
            (Self::Position(a), Self::Position(b)) | (Self::Momentum(a), Self::Momentum(b)) => cmp_slices(a, b),
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

fn cmp_slices(a: &[f64], b: &[f64]) -> Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.total_cmp(y))
        .find(|o| o.is_ne())
        .unwrap_or_else(|| a.len().cmp(&b.len()))
}

/// Whether an entry refers to a fixed starting parameter or has had its
/// parameter integrated out. Bookkeeping only.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum LambdaTag {
    #[default]
    Start,
    Integrated,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Entry {
    pub label: Label,
    pub particle: ParticleType,
    #[serde(default)]
    pub tag: LambdaTag,
}

impl Entry {
    pub fn new(label: Label, particle: ParticleType, tag: LambdaTag) -> Self {
        Self { label, particle, tag }
    }

    pub fn start(label: Label, particle: ParticleType) -> Self {
        Self::new(label, particle, LambdaTag::Start)
    }
}

impl Eq for Entry {}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        self.particle
            .label()
            .cmp(other.particle.label())
            .then_with(|| (self.particle.conjugation() as u8).cmp(&(other.particle.conjugation() as u8)))
            .then_with(|| self.particle.mass().total_cmp(&other.particle.mass()))
            .then_with(|| self.label.total_cmp(&other.label))
            .then_with(|| self.tag.cmp(&other.tag))
    }
}

/// A symmetrized product of single-particle entries times a coefficient.
///
/// Entries are kept as a sorted multiset. The normalization is chosen so
/// that the pairing of two product states is the bare permanent of the
/// contraction matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FockState {
    entries: Vec<Entry>,
    coefficient: Complex64,
}

impl FockState {
    pub fn vacuum() -> Self {
        Self { entries: Vec::new(), coefficient: Complex64::new(1.0, 0.0) }
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub fn coefficient(&self) -> Complex64 {
        self.coefficient
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn with_coefficient(mut self, coefficient: Complex64) -> Self {
        self.coefficient = coefficient;
        self
    }
}

/// Canonical symmetric state from entries in any order.
pub fn symmetrize(mut entries: Vec<Entry>, max_particles: usize) -> Result<FockState> {
    if entries.len() > max_particles {
        return Err(Error::Sector(format!(
            "{} entries exceed the sector bound {max_particles}",
            entries.len()
        )));
    }
    entries.sort();
    Ok(FockState { entries, coefficient: Complex64::new(1.0, 0.0) })
}

/// Pairing of two product states: `conj(c_bra) c_ket` times the permanent of
/// the contraction matrix. Different entry counts pair to zero.
pub fn fock_inner(bra: &FockState, ket: &FockState, contraction: &dyn Contraction) -> Result<Complex64> {
    if bra.len() != ket.len() {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let rows: Vec<Vec<Complex64>> = bra
        .entries
        .iter()
        .map(|b| ket.entries.iter().map(|k| contraction.contract(b, k)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    Ok(bra.coefficient.conj() * ket.coefficient * permanent(&rows)?)
}

/// Finite linear combination of product states, keyed by canonical entries.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FockVector {
    terms: BTreeMap<Vec<Entry>, Complex64>,
}

impl FockVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_state(state: FockState) -> Self {
        let mut out = Self::zero();
        out.add_state(state);
        out
    }

    /// Unit-coefficient product state of entries in any order.
    pub fn product(entries: Vec<Entry>) -> Self {
        let mut out = Self::zero();
        out.add(entries, Complex64::new(1.0, 0.0));
        out
    }

    pub fn add_state(&mut self, state: FockState) {
        self.add(state.entries, state.coefficient);
    }

    /// Adds `coefficient` times the product state `entries`, in any order.
    pub fn add(&mut self, mut entries: Vec<Entry>, coefficient: Complex64) {
        if !entries.windows(2).all(|w| w[0] <= w[1]) {
            entries.sort();
        }
        *self.terms.entry(entries).or_insert(Complex64::new(0.0, 0.0)) += coefficient;
    }

    pub fn add_scaled(&mut self, other: &Self, factor: Complex64) {
        for (entries, c) in &other.terms {
            self.add(entries.clone(), c * factor);
        }
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, factor);
        out
    }

    pub fn states(&self) -> impl Iterator<Item = FockState> + '_ {
        self.terms.iter().map(|(e, &c)| FockState { entries: e.clone(), coefficient: c })
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[Entry], Complex64)> {
        self.terms.iter().map(|(e, &c)| (e.as_slice(), c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.values().all(|c| *c == Complex64::new(0.0, 0.0))
    }

    pub fn max_particles(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    /// Sesquilinear extension of [`fock_inner`].
    pub fn inner(&self, ket: &Self, contraction: &dyn Contraction) -> Result<Complex64> {
        let mut total = Complex64::new(0.0, 0.0);
        for b in self.states() {
            for k in ket.states() {
                total += fock_inner(&b, &k, contraction)?;
            }
        }
        Ok(total)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn particle(name: &str) -> ParticleType {
        ParticleType::normal(name, 1.0).unwrap()
    }

    #[test]
    fn permutations_share_a_canonical_form() {
        let a = Entry::start(Label::Site(3), particle("A"));
        let b = Entry::start(Label::Site(1), particle("A"));
        let c = Entry::start(Label::Position(vec![0.5, 1.0]), particle("B"));
        let s1 = symmetrize(vec![a.clone(), b.clone(), c.clone()], 3).unwrap();
        let s2 = symmetrize(vec![c, a, b], 3).unwrap();
        assert_eq!(s1, s2);
    }

    #[test]
    fn sector_overflow() {
        let a = Entry::start(Label::Site(0), particle("A"));
        assert!(matches!(symmetrize(vec![a.clone(), a], 1), Err(Error::Sector(_))));
    }

    #[test]
    fn vector_merges_terms() {
        let s = symmetrize(vec![Entry::start(Label::Site(2), particle("A"))], 2).unwrap();
        let mut v = FockVector::from_state(s.clone());
        v.add_state(s.with_coefficient(Complex64::new(0.0, 1.0)));
        assert_eq!(v.len(), 1);
        assert_eq!(v.terms().next().unwrap().1, Complex64::new(1.0, 1.0));
    }
}
