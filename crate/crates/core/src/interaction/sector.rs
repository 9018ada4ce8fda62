//! Truncated Fock sectors on a lattice and operators represented on them.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_complex::Complex64;

use super::model::InteractionModel;
use crate::error::{Error, Result};
use crate::fock::{Contraction, Entry, FockVector, Label};
use crate::lattice::LatticeSpec;
use crate::particle::ParticleType;

/// Allowed occupation range of one species.
#[derive(Debug, Clone, PartialEq)]
pub struct SpeciesRange {
    pub particle: ParticleType,
    pub min: usize,
    pub max: usize,
}

impl SpeciesRange {
    pub fn new(particle: ParticleType, min: usize, max: usize) -> Self {
        Self { particle, min, max }
    }
}

/// Every product state of site-labelled entries whose per-species counts
/// fall in the given ranges.
#[derive(Debug, Clone)]
pub struct SectorBasis {
    spec: LatticeSpec,
    species: Vec<SpeciesRange>,
    states: Vec<Vec<Entry>>,
    index: BTreeMap<Vec<Entry>, usize>,
}

fn multisets(sites: usize, size: usize) -> Vec<Vec<usize>> {
    if size == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for smaller in multisets(sites, size - 1) {
        let start = smaller.last().copied().unwrap_or(0);
        for s in start..sites {
            let mut next = smaller.clone();
            next.push(s);
            out.push(next);
        }
    }
    out
}

impl SectorBasis {
    pub fn enumerate(spec: LatticeSpec, species: Vec<SpeciesRange>) -> Result<Self> {
        if let Some(bad) = species.iter().find(|s| s.min > s.max) {
            return Err(Error::Sector(format!("empty range {}..={} for {}", bad.min, bad.max, bad.particle.label())));
        }
        let sites = spec.site_count();
        let mut states: Vec<Vec<Entry>> = vec![Vec::new()];
        for range in &species {
            let choices: Vec<Vec<usize>> = (range.min..=range.max).flat_map(|n| multisets(sites, n)).collect();
            let mut next = Vec::with_capacity(states.len() * choices.len());
            for state in &states {
                for choice in &choices {
                    let mut entries = state.clone();
                    entries.extend(choice.iter().map(|&s| Entry::start(Label::Site(s), range.particle.clone())));
                    next.push(entries);
                }
            }
            states = next;
        }
        for s in &mut states {
            s.sort();
        }
        states.sort();
        let index = states.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        Ok(Self { spec, species, states, index })
    }

    pub fn spec(&self) -> &LatticeSpec {
        &self.spec
    }

    pub fn species(&self) -> &[SpeciesRange] {
        &self.species
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn state(&self, i: usize) -> &[Entry] {
        &self.states[i]
    }

    pub fn index_of(&self, entries: &[Entry]) -> Option<usize> {
        self.index.get(entries).copied()
    }

    /// Number of entries of `particle` in basis state `i`.
    pub fn count(&self, i: usize, particle: &ParticleType) -> usize {
        self.states[i].iter().filter(|e| &e.particle == particle).count()
    }

    pub fn describe(&self, entries: &[Entry]) -> String {
        describe(entries)
    }

    /// Expands a Fock vector in the basis, failing on components outside.
    pub fn coordinates(&self, v: &FockVector) -> Result<Vec<Complex64>> {
        let mut out = vec![Complex64::new(0.0, 0.0); self.len()];
        for (entries, c) in v.terms() {
            match self.index_of(entries) {
                Some(i) => out[i] += c,
                None if c == Complex64::new(0.0, 0.0) => {}
                None => return Err(Error::Leakage { state: describe(entries) }),
            }
        }
        Ok(out)
    }

    pub fn to_vector(&self, coords: &[Complex64]) -> FockVector {
        let mut v = FockVector::zero();
        for (i, c) in coords.iter().enumerate() {
            if *c != Complex64::new(0.0, 0.0) {
                v.add(self.states[i].clone(), *c);
            }
        }
        v
    }
}

fn describe(entries: &[Entry]) -> String {
    let parts: Vec<String> = entries
        .iter()
        .map(|e| match &e.label {
            Label::Site(s) => format!("{}@{s}", e.particle.label()),
            other => format!("{}@{other:?}", e.particle.label()),
        })
        .collect();
    format!("|{}⟩", parts.join(","))
}

/// Nonzero entries of one column, or the label of the state that left the
/// sector.
type SparseColumn = std::result::Result<Vec<(usize, Complex64)>, String>;

/// Column-sparse matrix. A column is absent when applying the operator to
/// that basis state leaves the sector; the leaving state is recorded.
#[derive(Debug, Clone)]
pub struct SparseMatrix {
    columns: Vec<SparseColumn>,
}

impl SparseMatrix {
    pub fn zero(dim: usize) -> Self {
        Self { columns: vec![Ok(Vec::new()); dim] }
    }

    pub fn dim(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, j: usize) -> std::result::Result<&[(usize, Complex64)], &str> {
        self.columns[j].as_deref().map_err(String::as_str)
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| matches!(c, Ok(v) if v.iter().all(|(_, x)| *x == Complex64::new(0.0, 0.0))))
    }

    /// `M x`; touching a leaking column with a nonzero weight is an error.
    pub fn apply(&self, x: &[Complex64]) -> Result<Vec<Complex64>> {
        let mut out = vec![Complex64::new(0.0, 0.0); self.dim()];
        for (j, &xj) in x.iter().enumerate() {
            if xj == Complex64::new(0.0, 0.0) {
                continue;
            }
            match &self.columns[j] {
                Ok(col) => {
                    for &(i, v) in col {
                        out[i] += v * xj;
                    }
                }
                Err(state) => return Err(Error::Leakage { state: state.clone() }),
            }
        }
        Ok(out)
    }

    /// Entry `(i, j)`, treating a leaking column as an error.
    pub fn get(&self, i: usize, j: usize) -> Result<Complex64> {
        match &self.columns[j] {
            Ok(col) => Ok(col.iter().filter(|(r, _)| *r == i).map(|(_, v)| *v).sum()),
            Err(state) => Err(Error::Leakage { state: state.clone() }),
        }
    }

    fn scaled(&self, c: Complex64) -> Self {
        let columns = self
            .columns
            .iter()
            .map(|col| col.as_ref().map(|v| v.iter().map(|&(i, x)| (i, x * c)).collect()).map_err(Clone::clone))
            .collect();
        Self { columns }
    }
}

/// An operator on a sector as a polynomial in the coupling: `Σ_k g^k M_k`.
#[derive(Debug, Clone)]
pub struct TruncatedOperator {
    basis: Arc<SectorBasis>,
    orders: Vec<SparseMatrix>,
    warnings: Vec<String>,
}

impl TruncatedOperator {
    pub fn basis(&self) -> &SectorBasis {
        &self.basis
    }

    pub fn max_order(&self) -> usize {
        self.orders.len() - 1
    }

    pub fn order(&self, k: usize) -> Option<&SparseMatrix> {
        self.orders.get(k)
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn is_zero(&self) -> bool {
        self.orders.iter().all(SparseMatrix::is_zero)
    }

    /// `Σ_k g^k M_k x`.
    pub fn apply(&self, coupling: f64, x: &[Complex64]) -> Result<Vec<Complex64>> {
        let mut out = vec![Complex64::new(0.0, 0.0); self.basis.len()];
        let mut power = 1.0;
        for m in &self.orders {
            for (o, v) in out.iter_mut().zip(m.apply(x)?) {
                *o += v * power;
            }
            power *= coupling;
        }
        Ok(out)
    }

    /// Largest entrywise difference over columns both operators define.
    pub fn max_difference(&self, other: &Self) -> Result<f64> {
        let dim = self.basis.len();
        let mut worst = 0.0f64;
        let zero = SparseMatrix::zero(dim);
        for k in 0..self.orders.len().max(other.orders.len()) {
            let (a, b) = (self.orders.get(k).unwrap_or(&zero), other.orders.get(k).unwrap_or(&zero));
            for j in 0..dim {
                let (Ok(ca), Ok(cb)) = (a.column(j), b.column(j)) else { continue };
                let mut dense: BTreeMap<usize, Complex64> = BTreeMap::new();
                for &(i, v) in ca {
                    *dense.entry(i).or_default() += v;
                }
                for &(i, v) in cb {
                    *dense.entry(i).or_default() -= v;
                }
                worst = dense.values().fold(worst, |w, v| w.max(v.norm()));
            }
        }
        Ok(worst)
    }
}

/// Coupling-stripped `V/g` on the sector.
fn bare_vertex(model: &InteractionModel, basis: &SectorBasis, contraction: &dyn Contraction) -> Result<SparseMatrix> {
    let unit = model.with_coupling(1.0);
    let expr = unit.lattice_expr(basis.spec());
    let cap = basis.species().iter().map(|s| s.max).sum::<usize>() + 3;
    let mut columns = Vec::with_capacity(basis.len());
    for j in 0..basis.len() {
        let v = FockVector::product(basis.state(j).to_vec());
        let image = expr.apply(&v, contraction, cap)?;
        columns.push(match basis.coordinates(&image) {
            Ok(coords) => Ok(coords
                .into_iter()
                .enumerate()
                .filter(|(_, c)| *c != Complex64::new(0.0, 0.0))
                .collect()),
            Err(Error::Leakage { state }) => Err(state),
            Err(e) => return Err(e),
        });
    }
    Ok(SparseMatrix { columns })
}

/// `−iV` on the sector: order 0 is zero and order 1 holds `−i V/g`.
pub fn vertex_operator(
    model: &InteractionModel,
    basis: Arc<SectorBasis>,
    contraction: &dyn Contraction,
) -> Result<TruncatedOperator> {
    let bare = bare_vertex(model, &basis, contraction)?;
    let mut warnings = Vec::new();
    if bare.columns.iter().all(|c| c.is_err()) {
        warnings.push("every vertex application leaves the sector; the operator is empty".to_string());
    }
    let dim = basis.len();
    Ok(TruncatedOperator {
        basis,
        orders: vec![SparseMatrix::zero(dim), bare.scaled(Complex64::new(0.0, -1.0))],
        warnings,
    })
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

fn unit_vector(dim: usize, j: usize) -> Vec<Complex64> {
    let mut v = vec![Complex64::new(0.0, 0.0); dim];
    v[j] = Complex64::new(1.0, 0.0);
    v
}

/// `V/g` recovered from a vertex operator.
fn bare_from(vertex: &TruncatedOperator) -> Result<&SparseMatrix> {
    vertex.order(1).ok_or_else(|| Error::Contract("vertex operator has no first-order part".into()))
}

/// `Σ_{m≤K} (−i)^m/m! V^m` on the columns listed in `inputs`. Other columns
/// are left empty.
pub fn dyson_truncated(vertex: &TruncatedOperator, order: usize, inputs: &[usize]) -> Result<TruncatedOperator> {
    let minus_i_v = bare_from(vertex)?;
    let dim = vertex.basis.len();
    let mut orders: Vec<Vec<SparseColumn>> =
        vec![vec![Ok(Vec::new()); dim]; order + 1];
    for &j in inputs {
        let mut v = unit_vector(dim, j);
        for (m, slot) in orders.iter_mut().enumerate() {
            if m > 0 {
                v = minus_i_v.apply(&v)?;
            }
            let scale = factorial(m).recip();
            slot[j] = Ok(v
                .iter()
                .enumerate()
                .filter(|(_, c)| **c != Complex64::new(0.0, 0.0))
                .map(|(i, c)| (i, c * scale))
                .collect());
        }
    }
    Ok(TruncatedOperator {
        basis: vertex.basis.clone(),
        orders: orders.into_iter().map(|columns| SparseMatrix { columns }).collect(),
        warnings: Vec::new(),
    })
}

/// Coefficients of `G‡G − 1` in powers of g, for truncated `G`, per input.
#[derive(Debug, Clone)]
pub struct UnitarityResidual {
    /// `orders[k][n]` is the order-k residual applied to the n-th input.
    pub orders: Vec<Vec<Vec<Complex64>>>,
}

impl UnitarityResidual {
    fn norm(vectors: &[Vec<Complex64>]) -> f64 {
        vectors.iter().flatten().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn order_norms(&self) -> Vec<f64> {
        self.orders.iter().map(|o| Self::norm(o)).collect()
    }

    /// Norm of the full residual at coupling `g`.
    pub fn norm_at(&self, coupling: f64) -> f64 {
        let inputs = self.orders.first().map_or(0, Vec::len);
        let dim = self.orders.first().and_then(|o| o.first()).map_or(0, Vec::len);
        let mut total = vec![vec![Complex64::new(0.0, 0.0); dim]; inputs];
        let mut power = 1.0;
        for order in &self.orders {
            for (t, r) in total.iter_mut().zip(order) {
                for (a, b) in t.iter_mut().zip(r) {
                    *a += b * power;
                }
            }
            power *= coupling;
        }
        Self::norm(&total)
    }
}

/// Residual of `G‡G = 1` with `G = Σ_{m≤K}(−igV₁)^m/m!` and `G‡` built
/// from the vertex of the adjoint model.
pub fn unitarity_residual(
    vertex: &TruncatedOperator,
    adjoint_vertex: &TruncatedOperator,
    order: usize,
    inputs: &[usize],
) -> Result<UnitarityResidual> {
    let minus_i_v = bare_from(vertex)?;
    // `−iV₁‡`, so `(iV₁‡)^a = (−1)^a (−iV₁‡)^a`.
    let minus_i_vd = bare_from(adjoint_vertex)?;
    let dim = vertex.basis.len();
    let mut orders = vec![vec![vec![Complex64::new(0.0, 0.0); dim]; inputs.len()]; 2 * order + 1];
    for (n, &j) in inputs.iter().enumerate() {
        let mut right = unit_vector(dim, j);
        for b in 0..=order {
            if b > 0 {
                right = minus_i_v.apply(&right)?;
            }
            let mut left = right.clone();
            for a in 0..=order {
                if a > 0 {
                    left = minus_i_vd.apply(&left)?;
                }
                let sign = if a % 2 == 0 { 1.0 } else { -1.0 };
                let scale = sign / (factorial(a) * factorial(b));
                for (o, v) in orders[a + b][n].iter_mut().zip(&left) {
                    *o += v * scale;
                }
            }
        }
        orders[0][n][j] -= Complex64::new(1.0, 0.0);
    }
    Ok(UnitarityResidual { orders })
}
