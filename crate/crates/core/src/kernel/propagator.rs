//! Propagators as proper-time integrals of the kernel, in momentum space,
//! and the positive/negative-energy on-shell parts.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{kernel_closed, KernelParams, WeightFunction};
use crate::error::{Error, Result};
use crate::geometry::{minkowski_dot, FourVector, Signature};
use crate::quad::{integrate_checked, integrate_with_breaks, linear_breaks, QuadResult, Tolerance};

/// Exponent magnitude beyond which an integrand is treated as zero.
const CUTOFF_EXPONENT: f64 = 745.0;

/// Inputs of a proper-time propagator evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PropagatorParams {
    pub mass: f64,
    pub epsilon: f64,
    pub weight: WeightFunction,
    pub signature: Signature,
}

impl PropagatorParams {
    pub fn new(mass: f64, epsilon: f64, signature: Signature) -> Self {
        Self { mass, epsilon, weight: WeightFunction::Uniform, signature }
    }

    pub fn with_weight(mut self, weight: WeightFunction) -> Self {
        self.weight = weight;
        self
    }
}

/// `∫₀^∞ dT f(T) K(Δx; T) e^{−εT}`.
///
/// Euclidean mode integrates along the real T axis. Minkowski mode deforms
/// the contour into the lower half plane at large T and, for timelike
/// separations, into the upper half plane at small T, so that every factor
/// decays along the path.
pub fn propagator_position(dx: &FourVector, params: &PropagatorParams) -> Result<Complex64> {
    if !(params.mass > 0.0) {
        return Err(Error::Domain(format!("propagator needs positive mass, got {}", params.mass)));
    }
    if params.epsilon < 0.0 {
        return Err(Error::Domain(format!("ε must be non-negative, got {}", params.epsilon)));
    }
    if params.epsilon == 0.0 && params.weight == WeightFunction::Uniform {
        return Err(Error::Domain("uniform weight needs ε > 0 for convergence".into()));
    }
    match params.signature {
        Signature::Euclidean => euclidean_position(dx, params),
        Signature::Minkowski => minkowski_position(dx, params),
    }
}

fn upper_length(params: &PropagatorParams, decay_scale: f64) -> Result<f64> {
    let rate = params.mass * params.mass * decay_scale + params.epsilon;
    let mut hi = f64::INFINITY;
    if rate > 0.0 {
        hi = CUTOFF_EXPONENT / rate;
    }
    if let Some(w) = params.weight.width() {
        hi = hi.min(w * (2.0 * CUTOFF_EXPONENT).sqrt());
    }
    if !hi.is_finite() {
        return Err(Error::Domain("proper-time integral does not converge".into()));
    }
    Ok(hi)
}

fn euclidean_position(dx: &FourVector, params: &PropagatorParams) -> Result<Complex64> {
    let dim = dx.dim();
    let r2 = dx.dot(dx, Signature::Euclidean)?;
    let threshold = params.weight.threshold();
    if r2 == 0.0 && threshold == 0.0 && dim >= 2 {
        return Err(Error::Domain("coincident points: the propagator diverges".into()));
    }
    let hi = upper_length(params, 1.0)?;
    let lo = threshold.max(if r2 > 0.0 { r2 / (4.0 * CUTOFF_EXPONENT) } else { hi * 1e-16 });
    if lo >= hi {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let kp = KernelParams { mass: params.mass, length: 1.0, dim, signature: Signature::Euclidean, epsilon: 0.0 };
    let f = |u: f64| {
        let t = u.exp();
        let k = kernel_closed(dx, &KernelParams { length: t, ..kp }).expect("validated");
        k.re * params.weight.eval(t) * (-params.epsilon * t).exp() * t
    };
    let pieces = ((hi / lo).ln().ceil() as usize).clamp(8, 200);
    let result: QuadResult<f64> =
        integrate_checked(f, &linear_breaks(lo.ln(), hi.ln(), pieces), Tolerance::new(1e-300, 1e-12))?;
    Ok(Complex64::new(result.value, 0.0))
}

/// Angle of the deformed proper-time contour.
const CONTOUR_ANGLE: f64 = 0.2 * PI;

fn minkowski_position(dx: &FourVector, params: &PropagatorParams) -> Result<Complex64> {
    let dim = dx.dim();
    let s = minkowski_dot(dx, dx)?;
    let delta = params.weight.threshold();
    if s == 0.0 && delta == 0.0 {
        return Err(Error::Domain(
            "lightlike or coincident separation: the integral needs a threshold".into(),
        ));
    }
    let m2 = params.mass * params.mass;
    let theta = CONTOUR_ANGLE;
    // Stationary point of the phase for timelike separations.
    let pivot = if s < 0.0 { (-s).sqrt() / (2.0 * params.mass) } else { 1.0 };
    let timelike = s < 0.0;
    let angle = |u: f64| if timelike { -theta * (u - pivot.ln()).tanh() } else { -theta };
    let dangle = |u: f64| {
        if timelike {
            let c = (u - pivot.ln()).cosh();
            -theta / (c * c)
        } else {
            0.0
        }
    };

    let hi = upper_length(params, theta.sin())?;
    let lo = if delta > 0.0 {
        delta * 1e-14
    } else {
        s.abs() * theta.sin() / (4.0 * CUTOFF_EXPONENT)
    };
    let phase = Complex64::from_polar(1.0, -PI * (dim as f64 - 2.0) / 4.0);
    let f = |u: f64| -> Complex64 {
        let t = u.exp();
        let phi = angle(u);
        let dir = Complex64::from_polar(1.0, phi);
        let big_t = delta + t * dir;
        // dT/du = t e^{iφ}(1 + i dφ/du)
        let jac = t * dir * Complex64::new(1.0, dangle(u));
        let norm = (4.0 * PI * big_t).powf(-(dim as f64) / 2.0) * phase;
        let mut exponent = Complex64::new(0.0, 1.0) * (s / (4.0 * big_t) - big_t * m2) - params.epsilon * big_t;
        if let Some(w) = params.weight.width() {
            exponent -= big_t * big_t / (2.0 * w * w);
        }
        norm * exponent.exp() * jac
    };
    if lo >= hi {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let pieces = ((hi / lo).ln().ceil() as usize * 2).clamp(16, 400);
    let result = integrate_checked(f, &linear_breaks(lo.ln(), hi.ln(), pieces), Tolerance::new(1e-300, 1e-11))?;
    Ok(result.value)
}

/// `−i/(p² + m² − iε)` with the Minkowski square.
pub fn propagator_momentum(p: &FourVector, mass: f64, epsilon: f64) -> Complex64 {
    let p2 = minkowski_dot(p, p).expect("a vector always matches itself");
    Complex64::new(0.0, -1.0) / Complex64::new(p2 + mass * mass, -epsilon)
}

/// `(2π)^{−d}∫dᵈp e^{i(∓E_p Δx⁰ + p⃗·Δx⃗)} e^{−damping p⃗²}/(2E_p)`, for
/// `d = 1` and `d = 3`. `positive` selects the upper sign.
pub fn propagator_onshell_part(dx: &FourVector, mass: f64, positive: bool, damping: f64) -> Result<Complex64> {
    if !(damping > 0.0) {
        return Err(Error::Domain(format!("damping must be positive, got {damping}")));
    }
    if !(mass > 0.0) {
        return Err(Error::Domain(format!("mass must be positive, got {mass}")));
    }
    let d = dx.dim() - 1;
    let t = dx.time();
    let r = dx.space_norm_sqr().sqrt();
    let sign = if positive { -1.0 } else { 1.0 };
    let p_max = (40.0 / damping).sqrt();
    let pieces = ((p_max * (t.abs() + r + 1.0) / PI).ceil() as usize).clamp(8, 50_000);
    let breaks = linear_breaks(0.0, p_max, pieces);
    let tol = Tolerance::new(1e-15, 1e-11).with_max_intervals(4 * pieces + 4000);
    let energy_factor = |p: f64| {
        let e = (p * p + mass * mass).sqrt();
        Complex64::from_polar((-damping * p * p).exp() / (2.0 * e), sign * e * t)
    };
    let value = match d {
        1 => {
            let x = dx.space()[0];
            let q = integrate_with_breaks(|p: f64| energy_factor(p) * (p * x).cos(), &breaks, tol);
            q.value * (2.0 / (2.0 * PI))
        }
        3 => {
            let radial = |p: f64| {
                let sinc = if p * r == 0.0 { 1.0 } else { (p * r).sin() / (p * r) };
                energy_factor(p) * (p * p * sinc)
            };
            let q = integrate_with_breaks(radial, &breaks, tol);
            q.value * (4.0 * PI / (2.0 * PI).powi(3))
        }
        _ => {
            return Err(Error::Unsupported(format!(
                "on-shell parts need 1 or 3 spatial dimensions, got {d}"
            )))
        }
    };
    Ok(value)
}

/// Euclidean propagator with a complex mass-squared, `Re M² > 0`:
/// `∫₀^∞ dT (4πT)^{−D/2} e^{−r²/4T − T M²}`, evaluated along the ray on which
/// `T M²` is real.
pub fn euclidean_propagator_complex_mass(r: f64, mass_sqr: Complex64, dim: usize) -> Result<Complex64> {
    if !(mass_sqr.re > 0.0) {
        return Err(Error::Domain(format!("complex mass needs Re M² > 0, got {mass_sqr}")));
    }
    if r == 0.0 && dim >= 2 {
        return Err(Error::Domain("coincident points: the propagator diverges".into()));
    }
    let alpha = mass_sqr.arg();
    let modulus = mass_sqr.norm();
    let dir = Complex64::from_polar(1.0, -alpha);
    let hi = CUTOFF_EXPONENT / modulus;
    let lo = if r > 0.0 { r * r * alpha.cos() / (4.0 * CUTOFF_EXPONENT) } else { hi * 1e-16 };
    let f = |u: f64| {
        let t = u.exp();
        let big_t = t * dir;
        (4.0 * PI * big_t).powf(-(dim as f64) / 2.0) * (-r * r / (4.0 * big_t) - t * modulus).exp() * big_t
    };
    let pieces = ((hi / lo).ln().ceil() as usize).clamp(8, 200);
    let breaks = linear_breaks(lo.ln(), hi.ln(), pieces);
    // Far from the real axis the value is a small remainder of an
    // oscillating integrand; accuracy is measured against its modulus.
    let scale = integrate_with_breaks(|u| f(u).norm(), &breaks, Tolerance::new(1e-300, 1e-6)).value;
    let q = integrate_checked(f, &breaks, Tolerance::new(1e-13 * scale, 1e-12))?;
    Ok(q.value)
}
