use std::f64::consts::PI;

use num_complex::Complex64;

use super::KernelParams;
use crate::error::{Error, Result};
use crate::geometry::{FourVector, Signature};

/// `e^{−iπ(D−2)/4}`: the net Fresnel phase of D−1 space axes and one
/// reversed time axis.
fn minkowski_phase(dim: usize) -> Complex64 {
    Complex64::from_polar(1.0, -PI * (dim as f64 - 2.0) / 4.0)
}

/// Normalization of a single segment of length `t`.
fn segment_norm(dim: usize, t: f64, signature: Signature) -> Complex64 {
    let base = Complex64::new((4.0 * PI * t).powf(-(dim as f64) / 2.0), 0.0);
    match signature {
        Signature::Euclidean => base,
        Signature::Minkowski => base * minkowski_phase(dim),
    }
}

/// Gaussian coefficient `c` of `exp(−c y²)` for one axis of a segment.
fn segment_coefficient(axis: usize, t: f64, signature: Signature) -> Complex64 {
    match signature {
        Signature::Euclidean => Complex64::new(1.0 / (4.0 * t), 0.0),
        Signature::Minkowski if axis == 0 => Complex64::new(0.0, 1.0 / (4.0 * t)),
        Signature::Minkowski => Complex64::new(0.0, -1.0 / (4.0 * t)),
    }
}

fn mass_factor(mass: f64, t: f64, signature: Signature) -> Complex64 {
    match signature {
        Signature::Euclidean => Complex64::new((-t * mass * mass).exp(), 0.0),
        Signature::Minkowski => Complex64::from_polar(1.0, -t * mass * mass),
    }
}

/// Closed-form kernel `K(Δx; T)`.
///
/// Euclidean: `(4πτ)^{−D/2} exp(−|Δx|²/4τ − τm²)`. Minkowski:
/// `(4πT)^{−D/2} e^{−iπ(D−2)/4} exp(i(Δx²/4T − Tm²))`, whose momentum
/// representation is `(2π)^{−D}∫dᴰp e^{ip·Δx} e^{−iT(p²+m²)}`.
pub fn kernel_closed(dx: &FourVector, params: &KernelParams) -> Result<Complex64> {
    params.validate()?;
    if dx.dim() != params.dim {
        return Err(Error::DimensionMismatch { expected: params.dim, got: dx.dim() });
    }
    let t = params.length;
    let norm = segment_norm(params.dim, t, params.signature);
    let s = dx.dot(dx, params.signature)?;
    let exponent = match params.signature {
        Signature::Euclidean => Complex64::new(-s / (4.0 * t) - t * params.mass * params.mass, 0.0),
        Signature::Minkowski => Complex64::new(0.0, s / (4.0 * t) - t * params.mass * params.mass),
    };
    Ok(norm * exponent.exp())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscretizedKernel {
    pub value: Complex64,
    /// Collapsed prefactor relative to the closed-form normalization; 1 up
    /// to rounding when the per-segment normalization is used.
    pub zeta: Complex64,
    pub segments: usize,
}

/// Kernel from an N-segment discretization, integrating out the interior
/// points one at a time.
///
/// Each segment contributes a Gaussian `η̄_j e^{−Δλ_j m²} exp(−Σ_μ c_μ y_μ²)`.
/// Convolving two such Gaussians over an interior point multiplies the
/// prefactors by `Π_μ √(π/(c_μ+c′_μ))` and combines the coefficients as
/// `c c′/(c+c′)`.
pub fn kernel_discretized(
    x: &FourVector,
    x0: &FourVector,
    segments: &[f64],
    params: &KernelParams,
) -> Result<DiscretizedKernel> {
    params.validate()?;
    let dx = x.checked_sub(x0)?;
    if dx.dim() != params.dim {
        return Err(Error::DimensionMismatch { expected: params.dim, got: dx.dim() });
    }
    if segments.is_empty() {
        return Err(Error::Contract("at least one segment is required".into()));
    }
    if let Some((j, &len)) = segments.iter().enumerate().find(|(_, &l)| !(l > 0.0)) {
        return Err(Error::DegeneratePath { segment: j + 1, length: len });
    }
    let total: f64 = segments.iter().sum();
    if (total - params.length).abs() > 1e-12 * params.length.max(1.0) {
        return Err(Error::Contract(format!(
            "segment lengths sum to {total}, expected {}",
            params.length
        )));
    }

    let (dim, sig) = (params.dim, params.signature);
    let mut prefactor = Complex64::new(1.0, 0.0);
    let mut masses = Complex64::new(1.0, 0.0);
    let mut coeff: Vec<Complex64> = Vec::new();
    for (j, &t) in segments.iter().enumerate() {
        prefactor *= segment_norm(dim, t, sig);
        masses *= mass_factor(params.mass, t, sig);
        let next: Vec<Complex64> = (0..dim).map(|a| segment_coefficient(a, t, sig)).collect();
        if j == 0 {
            coeff = next;
            continue;
        }
        for (c, cn) in coeff.iter_mut().zip(&next) {
            let sum = *c + cn;
            prefactor *= (Complex64::new(PI, 0.0) / sum).sqrt();
            *c = *c * cn / sum;
        }
    }
    let exponent: Complex64 =
        coeff.iter().zip(dx.components()).map(|(c, y)| -c * y * y).sum();
    let zeta = prefactor / segment_norm(dim, total, sig);
    Ok(DiscretizedKernel { value: prefactor * masses * exponent.exp(), zeta, segments: segments.len() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euclidean_reference_value() {
        let p = KernelParams::new(1.0, 1.0, 2, Signature::Euclidean).unwrap();
        let k = kernel_closed(&FourVector::zero(2), &p).unwrap();
        assert!((k.re - 0.029_274_915_762_159_584).abs() < 1e-16);
        assert_eq!(k.im, 0.0);
    }

    #[test]
    fn massless_peak() {
        let p = KernelParams::new(0.0, 0.7, 4, Signature::Euclidean).unwrap();
        let k = kernel_closed(&FourVector::zero(4), &p).unwrap();
        assert!((k.re - (4.0 * PI * 0.7f64).powi(-2)).abs() < 1e-15);
    }

    #[test]
    fn single_segment_is_closed_form() {
        for sig in [Signature::Euclidean, Signature::Minkowski] {
            let p = KernelParams::new(1.3, 0.8, 4, sig).unwrap();
            let x = FourVector::from([0.3, -0.2, 0.5, 1.0]);
            let d = kernel_discretized(&x, &FourVector::zero(4), &[0.8], &p).unwrap();
            let k = kernel_closed(&x, &p).unwrap();
            assert!((d.value - k).norm() <= 1e-15 * k.norm());
            assert!((d.zeta - 1.0).norm() < 1e-15);
        }
    }

    #[test]
    fn minkowski_d4_phase_is_minus_i() {
        assert!((minkowski_phase(4) - Complex64::new(0.0, -1.0)).norm() < 1e-15);
        assert_eq!(minkowski_phase(2), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn segment_sum_is_checked() {
        let p = KernelParams::new(1.0, 1.0, 2, Signature::Euclidean).unwrap();
        let z = FourVector::zero(2);
        assert!(matches!(kernel_discretized(&z, &z, &[0.5, 0.4], &p), Err(Error::Contract(_))));
        assert!(matches!(
            kernel_discretized(&z, &z, &[1.5, -0.5], &p),
            Err(Error::DegeneratePath { segment: 2, .. })
        ));
    }
}
