//! Periodic spacetime lattices, complex fields on them and the discrete
//! spectral transform between position and momentum representations.
//!
//! The transform is normalized to mimic the continuum:
//!
//! ```text
//! ψ̃(p) = (2π)^{−D/2} aᴰ Σₓ e^{−ip·x} ψ(x)
//! ψ(x) = (2π)^{−D/2} Δpᴰ Σₚ e^{+ip·x} ψ̃(p)
//! ```
//!
//! with `p·x` taken in the lattice signature, so on a Minkowski lattice the
//! time axis carries the opposite frequency sign. With this choice
//! `Σ|ψ|² aᴰ = Σ|ψ̃|² Δpᴰ` holds exactly.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftDirection, FftPlanner};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{FourVector, Signature};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LatticeSpec {
    points: Vec<usize>,
    extents: Vec<f64>,
    signature: Signature,
}

impl LatticeSpec {
    pub fn new(points: Vec<usize>, extents: Vec<f64>, signature: Signature) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::UnsupportedSpec("lattice needs at least one axis".into()));
        }
        if points.len() != extents.len() {
            return Err(Error::DimensionMismatch { expected: points.len(), got: extents.len() });
        }
        for (axis, &n) in points.iter().enumerate() {
            if n < 2 || !n.is_power_of_two() {
                return Err(Error::UnsupportedSpec(format!(
                    "axis {axis} has {n} points; need a power of two ≥ 2"
                )));
            }
        }
        for (axis, &l) in extents.iter().enumerate() {
            if !(l > 0.0 && l.is_finite()) {
                return Err(Error::UnsupportedSpec(format!("axis {axis} has extent {l}")));
            }
        }
        Ok(Self { points, extents, signature })
    }

    /// Same number of points and extent on every axis.
    pub fn cubic(dim: usize, points: usize, extent: f64, signature: Signature) -> Result<Self> {
        Self::new(vec![points; dim], vec![extent; dim], signature)
    }

    pub fn dim(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[usize] {
        &self.points
    }

    pub fn extents(&self) -> &[f64] {
        &self.extents
    }

    pub fn signature(&self) -> Signature {
        self.signature
    }

    pub fn site_count(&self) -> usize {
        self.points.iter().product()
    }

    pub fn spacing(&self, axis: usize) -> f64 {
        self.extents[axis] / self.points[axis] as f64
    }

    pub fn momentum_spacing(&self, axis: usize) -> f64 {
        2.0 * PI / self.extents[axis]
    }

    pub fn cell_volume(&self) -> f64 {
        (0..self.dim()).map(|a| self.spacing(a)).product()
    }

    pub fn momentum_cell_volume(&self) -> f64 {
        (0..self.dim()).map(|a| self.momentum_spacing(a)).product()
    }

    /// Row-major multi-index of a flat site index (last axis fastest).
    pub fn unflatten(&self, mut index: usize) -> Vec<usize> {
        let mut out = vec![0; self.dim()];
        for axis in (0..self.dim()).rev() {
            out[axis] = index % self.points[axis];
            index /= self.points[axis];
        }
        out
    }

    pub fn flatten(&self, multi: &[usize]) -> usize {
        multi
            .iter()
            .zip(&self.points)
            .fold(0, |acc, (&i, &n)| acc * n + (i % n))
    }

    /// Signed FFT frequency index: k for k < N/2, k − N otherwise.
    pub fn signed_mode(&self, axis: usize, k: usize) -> i64 {
        let n = self.points[axis];
        if k < n / 2 {
            k as i64
        } else {
            k as i64 - n as i64
        }
    }

    pub fn position(&self, index: usize) -> FourVector {
        let multi = self.unflatten(index);
        FourVector::new(
            multi.iter().enumerate().map(|(a, &i)| i as f64 * self.spacing(a)).collect(),
        )
    }

    pub fn momentum(&self, index: usize) -> FourVector {
        let multi = self.unflatten(index);
        FourVector::new(
            multi
                .iter()
                .enumerate()
                .map(|(a, &k)| self.signed_mode(a, k) as f64 * self.momentum_spacing(a))
                .collect(),
        )
    }

    /// Flat index of the periodic difference `a − b` of two sites.
    pub fn displacement(&self, a: usize, b: usize) -> usize {
        let ma = self.unflatten(a);
        let mb = self.unflatten(b);
        let diff: Vec<usize> = ma
            .iter()
            .zip(&mb)
            .zip(&self.points)
            .map(|((&x, &y), &n)| (x + n - y) % n)
            .collect();
        self.flatten(&diff)
    }

    /// Flat index of the negated displacement.
    pub fn negate(&self, index: usize) -> usize {
        let multi = self.unflatten(index);
        let neg: Vec<usize> = multi.iter().zip(&self.points).map(|(&x, &n)| (n - x) % n).collect();
        self.flatten(&neg)
    }

    /// Momentum-squared in the lattice signature, with continuum dispersion.
    pub fn momentum_sqr(&self, index: usize) -> f64 {
        let p = self.momentum(index);
        p.dot(&p, self.signature).expect("momentum has lattice dimension")
    }

    pub fn same_grid(&self, other: &LatticeSpec) -> bool {
        self == other
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Representation {
    Position,
    Momentum,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// position → momentum
    Forward,
    /// momentum → position
    Inverse,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComplexField {
    spec: LatticeSpec,
    amplitudes: Vec<Complex64>,
    representation: Representation,
}

impl ComplexField {
    pub fn new(
        spec: LatticeSpec,
        amplitudes: Vec<Complex64>,
        representation: Representation,
    ) -> Result<Self> {
        if amplitudes.len() != spec.site_count() {
            return Err(Error::DimensionMismatch {
                expected: spec.site_count(),
                got: amplitudes.len(),
            });
        }
        Ok(Self { spec, amplitudes, representation })
    }

    pub fn zeros(spec: LatticeSpec, representation: Representation) -> Self {
        let n = spec.site_count();
        Self { spec, amplitudes: vec![Complex64::new(0.0, 0.0); n], representation }
    }

    /// Samples `f` at every site (positions or momenta depending on the tag).
    pub fn from_fn(
        spec: LatticeSpec,
        representation: Representation,
        mut f: impl FnMut(&FourVector) -> Complex64,
    ) -> Self {
        let amplitudes = (0..spec.site_count())
            .map(|i| match representation {
                Representation::Position => f(&spec.position(i)),
                Representation::Momentum => f(&spec.momentum(i)),
            })
            .collect();
        Self { spec, amplitudes, representation }
    }

    pub fn spec(&self) -> &LatticeSpec {
        &self.spec
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amplitudes
    }

    pub fn representation(&self) -> Representation {
        self.representation
    }

    /// `Σ|ψ|²` times the cell volume of the current representation.
    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>() * self.measure()
    }

    /// Sesquilinear product `Σ conj(self)·other` times the cell volume.
    pub fn inner(&self, other: &ComplexField) -> Result<Complex64> {
        if !self.spec.same_grid(&other.spec) || self.representation != other.representation {
            return Err(Error::Contract("inner product of fields on different grids".into()));
        }
        let sum: Complex64 =
            self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| a.conj() * b).sum();
        Ok(sum * self.measure())
    }

    fn measure(&self) -> f64 {
        match self.representation {
            Representation::Position => self.spec.cell_volume(),
            Representation::Momentum => self.spec.momentum_cell_volume(),
        }
    }

    pub fn scale(&mut self, factor: Complex64) {
        self.amplitudes.iter_mut().for_each(|a| *a *= factor);
    }

    /// Multiplies every amplitude by a function of its site coordinate.
    pub fn multiply_by(&mut self, mut f: impl FnMut(&FourVector) -> Complex64) {
        for (i, a) in self.amplitudes.iter_mut().enumerate() {
            let coord = match self.representation {
                Representation::Position => self.spec.position(i),
                Representation::Momentum => self.spec.momentum(i),
            };
            *a *= f(&coord);
        }
    }

    pub fn to_momentum(&self) -> ComplexField {
        match self.representation {
            Representation::Momentum => self.clone(),
            Representation::Position => spectral_transform(self, Direction::Forward)
                .expect("representation tag checked"),
        }
    }

    pub fn to_position(&self) -> ComplexField {
        match self.representation {
            Representation::Position => self.clone(),
            Representation::Momentum => spectral_transform(self, Direction::Inverse)
                .expect("representation tag checked"),
        }
    }

    pub fn max_abs_diff(&self, other: &ComplexField) -> f64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Discrete transform between representations; see the module docs for the
/// normalization and sign conventions.
pub fn spectral_transform(field: &ComplexField, direction: Direction) -> Result<ComplexField> {
    let expected = match direction {
        Direction::Forward => Representation::Position,
        Direction::Inverse => Representation::Momentum,
    };
    if field.representation != expected {
        return Err(Error::Contract(format!(
            "{direction:?} transform needs a {expected:?}-space field"
        )));
    }
    if let Some(bad) = field.amplitudes.iter().position(|a| !(a.re.is_finite() && a.im.is_finite()))
    {
        return Err(Error::Domain(format!("non-finite amplitude at site {bad}")));
    }
    let spec = &field.spec;
    let dim = spec.dim();
    let mut data = field.amplitudes.clone();
    let mut planner = FftPlanner::new();

    for axis in 0..dim {
        // e^{−ip·x} on space axes for the forward transform; the Minkowski
        // time axis flips.
        let flipped = axis == 0 && spec.signature == Signature::Minkowski;
        let fft_dir = match (direction, flipped) {
            (Direction::Forward, false) | (Direction::Inverse, true) => FftDirection::Forward,
            _ => FftDirection::Inverse,
        };
        let fft = planner.plan_fft(spec.points[axis], fft_dir);
        transform_axis(&mut data, spec.points(), axis, &fft);
    }

    let norm = (2.0 * PI).powf(-(dim as f64) / 2.0)
        * match direction {
            Direction::Forward => spec.cell_volume(),
            Direction::Inverse => spec.momentum_cell_volume(),
        };
    data.iter_mut().for_each(|a| *a *= norm);

    Ok(ComplexField {
        spec: spec.clone(),
        amplitudes: data,
        representation: match direction {
            Direction::Forward => Representation::Momentum,
            Direction::Inverse => Representation::Position,
        },
    })
}

fn transform_axis(data: &mut [Complex64], points: &[usize], axis: usize, fft: &Arc<dyn Fft<f64>>) {
    let n = points[axis];
    let stride: usize = points[axis + 1..].iter().product();
    let block = n * stride;
    let mut line = vec![Complex64::new(0.0, 0.0); n];
    for outer in (0..data.len()).step_by(block) {
        for inner in 0..stride {
            let base = outer + inner;
            for (k, slot) in line.iter_mut().enumerate() {
                *slot = data[base + k * stride];
            }
            fft.process(&mut line);
            for (k, value) in line.iter().enumerate() {
                data[base + k * stride] = *value;
            }
        }
    }
}
