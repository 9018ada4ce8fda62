//! Discretized spacetime paths and their action.
//!
//! A path is sampled at parameter values `λ̄_0 < … < λ̄_N` with points
//! `q̄_j`. Segment `j` (1-based) joins `q̄_{j−1}` to `q̄_j`, has length
//! `Δλ̄_j` and backward-difference velocity `(q̄_j − q̄_{j−1})/Δλ̄_j`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{FourVector, Signature};

/// A monotone map from the fiducial parameter `s ∈ [0,1]` to `λ`, sampled at
/// `s_j = j/M`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Parametrization {
    lambdas: Vec<f64>,
}

impl Parametrization {
    pub fn from_lambdas(lambdas: Vec<f64>) -> Result<Self> {
        if lambdas.len() < 2 {
            return Err(Error::Contract("parametrization needs at least two samples".into()));
        }
        let m = (lambdas.len() - 1) as f64;
        for (j, w) in lambdas.windows(2).enumerate() {
            let lapse = (w[1] - w[0]) * m;
            if !(lapse > 0.0) {
                return Err(Error::LapsePositivity { index: j + 1, lapse });
            }
        }
        Ok(Self { lambdas })
    }

    /// Constant lapse `T` over `segments` steps, starting at λ = 0.
    pub fn uniform(segments: usize, total: f64) -> Result<Self> {
        Self::from_lambdas((0..=segments).map(|j| total * j as f64 / segments as f64).collect())
    }

    /// Step lengths growing by `ratio` per segment, rescaled to total `T`.
    pub fn geometric(segments: usize, total: f64, ratio: f64) -> Result<Self> {
        let steps: Vec<f64> = (0..segments).map(|j| ratio.powi(j as i32)).collect();
        let sum: f64 = steps.iter().sum();
        let mut lambdas = vec![0.0];
        let mut acc = 0.0;
        for s in steps {
            acc += total * s / sum;
            lambdas.push(acc);
        }
        Self::from_lambdas(lambdas)
    }

    pub fn segments(&self) -> usize {
        self.lambdas.len() - 1
    }

    pub fn lambdas(&self) -> &[f64] {
        &self.lambdas
    }

    /// `w_j = (λ_j − λ_{j−1})/(s_j − s_{j−1})` for j = 1..M.
    pub fn lapse(&self) -> Vec<f64> {
        let m = self.segments() as f64;
        self.lambdas.windows(2).map(|w| (w[1] - w[0]) * m).collect()
    }

    pub fn intrinsic_length(&self) -> f64 {
        self.lambdas[self.lambdas.len() - 1] - self.lambdas[0]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscretePath {
    lambdas: Vec<f64>,
    points: Vec<FourVector>,
    signature: Signature,
}

impl DiscretePath {
    pub fn new(lambdas: Vec<f64>, points: Vec<FourVector>, signature: Signature) -> Result<Self> {
        if lambdas.len() != points.len() {
            return Err(Error::DimensionMismatch { expected: lambdas.len(), got: points.len() });
        }
        if points.len() < 2 {
            return Err(Error::Contract("a path needs at least one segment".into()));
        }
        let dim = points[0].dim();
        if let Some(p) = points.iter().find(|p| p.dim() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, got: p.dim() });
        }
        for (j, w) in lambdas.windows(2).enumerate() {
            let length = w[1] - w[0];
            if !(length > 0.0) {
                return Err(Error::DegeneratePath { segment: j + 1, length });
            }
        }
        Ok(Self { lambdas, points, signature })
    }

    /// Evenly spaced parameter values over `[0, T]`.
    pub fn uniform(points: Vec<FourVector>, total: f64, signature: Signature) -> Result<Self> {
        let n = points.len().saturating_sub(1).max(1);
        let lambdas = (0..points.len()).map(|j| total * j as f64 / n as f64).collect();
        Self::new(lambdas, points, signature)
    }

    pub fn segments(&self) -> usize {
        self.points.len() - 1
    }

    pub fn lambdas(&self) -> &[f64] {
        &self.lambdas
    }

    pub fn points(&self) -> &[FourVector] {
        &self.points
    }

    pub fn signature(&self) -> Signature {
        self.signature
    }

    pub fn intrinsic_length(&self) -> f64 {
        self.lambdas[self.lambdas.len() - 1] - self.lambdas[0]
    }

    pub fn segment_length(&self, j: usize) -> f64 {
        self.lambdas[j] - self.lambdas[j - 1]
    }

    /// Adds a constant vector to every sample.
    pub fn translated(&self, shift: &FourVector) -> Result<Self> {
        let points = self.points.iter().map(|p| p.checked_add(shift)).collect::<Result<_>>()?;
        Ok(Self { lambdas: self.lambdas.clone(), points, signature: self.signature })
    }

    /// Replaces sample `k` and leaves everything else untouched.
    pub fn with_point(&self, k: usize, point: FourVector) -> Self {
        let mut out = self.clone();
        out.points[k] = point;
        out
    }

    fn segment_term(&self, j: usize, mass: f64) -> f64 {
        let dl = self.segment_length(j);
        let dq = &self.points[j] - &self.points[j - 1];
        let v2 = dq.dot(&dq, self.signature).expect("dimensions validated") / (dl * dl);
        dl * (0.25 * v2 - mass * mass)
    }
}

/// `Σ_j Δλ̄_j (¼ q̄̇_j² − m²)` with the path's own signature.
pub fn action(path: &DiscretePath, mass: f64) -> f64 {
    (1..=path.segments()).map(|j| path.segment_term(j, mass)).sum()
}

/// Action of the sub-path between samples `j_lo` and `j_hi`.
pub fn action_restrict(path: &DiscretePath, j_lo: usize, j_hi: usize, mass: f64) -> Result<f64> {
    if j_lo >= j_hi || j_hi > path.segments() {
        return Err(Error::Contract(format!(
            "restriction [{j_lo}, {j_hi}] is empty or exceeds {} segments",
            path.segments()
        )));
    }
    Ok((j_lo + 1..=j_hi).map(|j| path.segment_term(j, mass)).sum())
}

/// Exponent of the Euclidean path weight, `−Σ Δλ̄ (¼ q̄̇_E² + m²)`.
pub fn euclidean_exponent(path: &DiscretePath, mass: f64) -> f64 {
    (1..=path.segments())
        .map(|j| {
            let dl = path.segment_length(j);
            let dq = &path.points[j] - &path.points[j - 1];
            let v2 = dq.dot(&dq, Signature::Euclidean).expect("dimensions validated") / (dl * dl);
            -dl * (0.25 * v2 + mass * mass)
        })
        .sum()
}

/// Path amplitude: `e^{iS}` for Minkowski paths, `e^{S_E}` with the Euclidean
/// exponent otherwise.
pub fn path_amplitude(path: &DiscretePath, mass: f64) -> Complex64 {
    match path.signature {
        Signature::Minkowski => Complex64::from_polar(1.0, action(path, mass)),
        Signature::Euclidean => Complex64::new(euclidean_exponent(path, mass).exp(), 0.0),
    }
}

/// Swaps the parameter grid of a path for `param`, keeping the geometric
/// samples. The new grid starts at the old `λ̄_0`.
pub fn reparametrize(path: &DiscretePath, param: &Parametrization) -> Result<DiscretePath> {
    if param.segments() != path.segments() {
        return Err(Error::DimensionMismatch { expected: path.segments(), got: param.segments() });
    }
    let offset = path.lambdas[0] - param.lambdas[0];
    let lambdas = param.lambdas.iter().map(|l| l + offset).collect();
    DiscretePath::new(lambdas, path.points.clone(), path.signature)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(dx: [f64; 2], n: usize, total: f64, signature: Signature) -> DiscretePath {
        let pts = (0..=n)
            .map(|j| FourVector::from([dx[0] * j as f64 / n as f64, dx[1] * j as f64 / n as f64]))
            .collect();
        DiscretePath::uniform(pts, total, signature).unwrap()
    }

    #[test]
    fn stationary_path() {
        let p = line([0.0, 0.0], 4, 1.0, Signature::Minkowski);
        assert!((action(&p, 1.0) + 1.0).abs() < 1e-15);
    }

    #[test]
    fn euclidean_straight_line() {
        let p = line([0.0, 2.0], 1, 1.0, Signature::Euclidean);
        assert_eq!(action(&p, 1.0), 0.0);
        let p8 = line([0.0, 2.0], 8, 1.0, Signature::Euclidean);
        assert!(action(&p8, 1.0).abs() < 1e-14);
    }

    #[test]
    fn degenerate_segment() {
        let pts = vec![FourVector::zero(2); 3];
        let err = DiscretePath::new(vec![0.0, 0.5, 0.5], pts, Signature::Minkowski).unwrap_err();
        assert_eq!(err, Error::DegeneratePath { segment: 2, length: 0.0 });
    }

    #[test]
    fn lapse_positivity() {
        let err = Parametrization::from_lambdas(vec![0.0, 0.3, 0.2, 1.0]).unwrap_err();
        assert!(matches!(err, Error::LapsePositivity { index: 2, .. }));
    }

    #[test]
    fn reparametrization_changes_only_weights() {
        let p = line([1.0, 2.0], 4, 1.0, Signature::Minkowski);
        let same = reparametrize(&p, &Parametrization::uniform(4, 1.0).unwrap()).unwrap();
        assert_eq!(same, p);
        let geo = reparametrize(&p, &Parametrization::geometric(4, 1.0, 2.0).unwrap()).unwrap();
        assert!((geo.intrinsic_length() - 1.0).abs() < 1e-15);
        assert_eq!(geo.points(), p.points());
        let doubled = reparametrize(&p, &Parametrization::uniform(4, 2.0).unwrap()).unwrap();
        assert_eq!(doubled.intrinsic_length(), 2.0);
    }

    #[test]
    fn empty_restriction_is_rejected() {
        let p = line([1.0, 2.0], 4, 1.0, Signature::Minkowski);
        assert!(action_restrict(&p, 2, 2, 1.0).is_err());
        assert!(action_restrict(&p, 0, 5, 1.0).is_err());
    }
}
