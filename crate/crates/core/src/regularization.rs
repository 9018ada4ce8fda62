//! Regulated self-energy from a thresholded Gaussian proper-time weight,
//! `f(λ) = e^{−λ²/2Δλ²}` for `λ > δ` and zero below.
//!
//! Two routes give the same number: integrating the weight against the
//! heat kernel of the A line inside the momentum integral, or superposing
//! unregulated loops over the mass spectrum `F_E(w)`, the Fourier transform
//! of the weight. Everything is Euclidean.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::FourVector;
use crate::interaction::selfenergy::Loop;
use crate::interaction::{Route, SelfEnergyResult};
use crate::quad::{gk21_nodes, integrate_with_breaks, linear_breaks, log_breaks, Tolerance};
use crate::special::erfcx;

/// Exponent below which contributions are dropped.
const NEGLIGIBLE_EXPONENT: f64 = 40.0;

/// Above this `|w|Δλ` the mass spectrum uses its endpoint expansion.
const ASYMPTOTIC_SWITCH: f64 = 40.0;

/// Angle of the mass-spectrum contour rays above the real axis.
const RAY_ANGLE: f64 = PI / 4.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegulatorSpec {
    /// Correlation length Δλ, in units of mass⁻².
    pub correlation: f64,
    /// Threshold δ, in units of mass⁻².
    pub threshold: f64,
    /// Optional hard momentum cutoff; `None` integrates to where the weight
    /// has died off.
    pub cutoff: Option<f64>,
    /// Mass of the regulated line.
    pub mass: f64,
}

impl RegulatorSpec {
    pub fn new(correlation: f64, threshold: f64, mass: f64) -> Result<Self> {
        let spec = Self { correlation, threshold, cutoff: None, mass };
        spec.validate()?;
        Ok(spec)
    }

    /// `Δλ = 10/m²`, `δ = 0.01/m²`.
    pub fn default_for(mass: f64) -> Result<Self> {
        Self::new(10.0 / (mass * mass), 0.01 / (mass * mass), mass)
    }

    pub fn with_cutoff(mut self, cutoff: f64) -> Self {
        self.cutoff = Some(cutoff);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.correlation > 0.0) {
            return Err(Error::Domain(format!("correlation length must be positive, got {}", self.correlation)));
        }
        if !(self.threshold >= 0.0) {
            return Err(Error::Domain(format!("threshold must be non-negative, got {}", self.threshold)));
        }
        if !(self.mass > 0.0) {
            return Err(Error::Domain(format!("mass must be positive, got {}", self.mass)));
        }
        if let Some(c) = self.cutoff {
            if !(c > 0.0) {
                return Err(Error::Domain(format!("cutoff must be positive, got {c}")));
            }
        }
        Ok(())
    }

    /// `f(λ)`, zero at and below the threshold.
    pub fn weight(&self, lambda: f64) -> f64 {
        if lambda > self.threshold {
            (-lambda * lambda / (2.0 * self.correlation * self.correlation)).exp()
        } else {
            0.0
        }
    }

    /// `∫_δ^∞ dλ f(λ) e^{−aλ}` in closed form.
    pub fn laplace_weight(&self, a: f64) -> f64 {
        let (s, d) = (self.correlation, self.threshold);
        let x = (d / s + a * s) / 2f64.sqrt();
        s * (PI / 2.0).sqrt() * erfcx(x) * (-d * d / (2.0 * s * s) - a * d).exp()
    }
}

/// `(2π)^{−1}∫_δ^{8Δλ} dλ e^{iλ(m²−m_A²)} f(λ)`.
pub fn spectral_density(mass_sqr: f64, spec: &RegulatorSpec) -> Result<Complex64> {
    spec.validate()?;
    Ok(fourier_weight(Complex64::new(mass_sqr - spec.mass * spec.mass, 0.0), spec))
}

/// `(2π)^{−1}∫_δ^∞ dλ e^{iλw} f(λ)` for `Im w ≥ 0`.
fn fourier_weight(w: Complex64, spec: &RegulatorSpec) -> Complex64 {
    let (s, d) = (spec.correlation, spec.threshold);
    if w.norm() * s > ASYMPTOTIC_SWITCH {
        return endpoint_expansion(w, spec) / (2.0 * PI);
    }
    let hi = 8.0 * s;
    if d >= hi {
        return Complex64::new(0.0, 0.0);
    }
    let oscillations = (w.norm() * (hi - d) / PI).ceil() as usize;
    let f = |l: f64| (Complex64::new(0.0, l) * w).exp() * spec.weight(l.max(d * (1.0 + f64::EPSILON)));
    let q = integrate_with_breaks(f, &linear_breaks(d, hi, oscillations.clamp(4, 400)), Tolerance::new(1e-300, 1e-12));
    q.value / (2.0 * PI)
}

/// `−e^{iwδ} Σ_n (−1)^n f⁽ⁿ⁾(δ)/(iw)^{n+1}`, from repeated integration by
/// parts; the derivatives of the Gaussian are Hermite polynomials.
fn endpoint_expansion(w: Complex64, spec: &RegulatorSpec) -> Complex64 {
    let (s, d) = (spec.correlation, spec.threshold);
    let x = d / s;
    let f0 = (-x * x / 2.0).exp();
    let iw = Complex64::new(0.0, 1.0) * w;
    let (mut he_prev, mut he) = (0.0, 1.0);
    let mut sum = Complex64::new(0.0, 0.0);
    let mut power = iw;
    for n in 0..24 {
        // f⁽ⁿ⁾(δ) = (−1/s)ⁿ Heₙ(δ/s) f(δ); combined with (−1)ⁿ the signs cancel.
        let term = he * s.powi(-n) * f0 / power;
        sum += term;
        if term.norm() < 1e-17 * sum.norm() {
            break;
        }
        let next = x * he - n as f64 * he_prev;
        he_prev = he;
        he = next;
        power *= iw;
    }
    -(iw * d).exp() * sum
}

fn natural_extent(spec: &RegulatorSpec, dim: usize) -> Result<f64> {
    let natural = if spec.threshold > 0.0 {
        (NEGLIGIBLE_EXPONENT / spec.threshold).sqrt()
    } else if dim == 2 {
        1e6 * spec.mass.max(1.0)
    } else {
        f64::INFINITY
    };
    let extent = spec.cutoff.map_or(natural, |c| c.min(natural));
    if !extent.is_finite() {
        return Err(Error::Domain(
            "without a threshold or cutoff the four-dimensional loop diverges".into(),
        ));
    }
    Ok(extent)
}

/// `∫dᴰk ∫_δ^∞dλ f(λ) e^{−λ(k²+m_A²)} [(p−k)²+m_B²]^{−1}`, by either route.
pub fn self_energy_regulated(
    p: &FourVector,
    ma: f64,
    mb: f64,
    spec: &RegulatorSpec,
    route: Route,
) -> Result<SelfEnergyResult> {
    spec.validate()?;
    let geometry = Loop::new(p, ma, mb)?;
    let extent = natural_extent(spec, geometry.dim)?;
    let (value, error) = match route {
        Route::Lambda => {
            let (v, e) = geometry.radial(|k| spec.laplace_weight(k * k + geometry.ma2), extent, 1e-10)?;
            (Complex64::new(v, 0.0), e)
        }
        Route::MassSpectrum => mass_spectrum_route(&geometry, spec, extent),
        Route::Cutoff => {
            return Err(Error::Contract("the cutoff route is not a regulated route".into()));
        }
    };
    Ok(SelfEnergyResult { value, error, route, dim: geometry.dim, cutoff: spec.cutoff, regulator: Some(*spec) })
}

/// `∫dw F_E(w) I(p; m_A² + iw)` with `I` on a fixed radial rule.
///
/// The integrand has a pole at `w = i(k² + m_A²)`, so the real `w` axis is
/// swung up onto the rays `arg w = β` and `arg w = π − β`, on which `F_E`
/// decays.
fn mass_spectrum_route(geometry: &Loop, spec: &RegulatorSpec, extent: f64) -> (Complex64, f64) {
    let d = geometry.dim as i32;
    let radial: Vec<(f64, f64)> = geometry
        .radial_breaks(extent)
        .windows(2)
        .flat_map(|w| {
            let mid = 0.5 * (w[0] + w[1]);
            [(w[0], mid), (mid, w[1])]
        })
        .flat_map(|(a, b)| gk21_nodes(a, b))
        .map(|(k, wt)| (k * k + geometry.ma2, wt * k.powi(d - 1) * geometry.angular(k)))
        .collect();

    let s = spec.correlation;
    let t_lo = 1e-8 / s;
    let t_hi = if spec.threshold > 0.0 {
        (NEGLIGIBLE_EXPONENT + 20.0) / (spec.threshold * RAY_ANGLE.sin())
    } else {
        1e12 / s
    };
    let decades = (t_hi / t_lo).log10();
    let panels = log_breaks(t_lo, t_hi, (decades * 16.0).ceil() as usize);
    let mut nodes: Vec<(f64, f64)> = gk21_nodes(0.0, t_lo).to_vec();
    for w in panels.windows(2) {
        nodes.extend(gk21_nodes(w[0], w[1]));
    }

    let mut total = Complex64::new(0.0, 0.0);
    for angle in [RAY_ANGLE, PI - RAY_ANGLE] {
        let dir = Complex64::from_polar(1.0, angle);
        // The left ray is traversed inwards.
        let orientation = if angle < PI / 2.0 { 1.0 } else { -1.0 };
        for &(t, wt) in &nodes {
            let w = dir * t;
            let weight = fourier_weight(w, spec) * dir * (wt * orientation);
            let iw = Complex64::new(0.0, 1.0) * w;
            let loop_sum: Complex64 = radial.iter().map(|&(a, r)| r / (a + iw)).sum();
            total += weight * loop_sum;
        }
    }
    (total, 0.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PvReport {
    pub value_at_zero: Complex64,
    pub derivative_at_zero: Complex64,
    pub pass: bool,
}

/// Values of `F̃(λ) = f(λ) e^{−iλm_A²}` and of its right derivative at
/// `λ = 0⁺`. Both vanish when the threshold is positive.
pub fn pv_conditions(spec: &RegulatorSpec) -> Result<PvReport> {
    spec.validate()?;
    let m2 = spec.mass * spec.mass;
    let tilde = |l: f64| Complex64::from_polar(spec.weight(l), -l * m2);
    let origin = if spec.threshold > 0.0 { 0.0 } else { f64::MIN_POSITIVE };
    let h = if spec.threshold > 0.0 { spec.threshold / 2.0 } else { 1e-8 * spec.correlation.min(1.0 / m2) };
    let value = tilde(origin);
    let derivative = (tilde(origin + h) - value) / h;
    let pass = value.norm() == 0.0 && derivative.norm() == 0.0;
    Ok(PvReport { value_at_zero: value, derivative_at_zero: derivative, pass })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    pub threshold: f64,
    pub value: Complex64,
    pub error: f64,
}

/// Least-squares line `value = intercept + slope · ln(1/δ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    /// Slope ± two standard errors.
    pub slope_interval: (f64, f64),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DivergenceScan {
    pub rows: Vec<ScanRow>,
    pub fit: LogFit,
}

fn fit_log(rows: &[ScanRow]) -> Result<LogFit> {
    let n = rows.len() as f64;
    if rows.len() < 3 {
        return Err(Error::Contract("a scan needs at least three thresholds".into()));
    }
    let xs: Vec<f64> = rows.iter().map(|r| (1.0 / r.threshold).ln()).collect();
    let ys: Vec<f64> = rows.iter().map(|r| r.value.re).collect();
    let (mx, my) = (xs.iter().sum::<f64>() / n, ys.iter().sum::<f64>() / n);
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let sse: f64 = xs.iter().zip(&ys).map(|(x, y)| (y - intercept - slope * x).powi(2)).sum();
    let r_squared = if syy > 0.0 { 1.0 - sse / syy } else { 1.0 };
    let se = (sse / (n - 2.0) / sxx).sqrt();
    Ok(LogFit { slope, intercept, r_squared, slope_interval: (slope - 2.0 * se, slope + 2.0 * se) })
}

/// Regulated values over decreasing thresholds at fixed correlation length.
pub fn divergence_scan(
    p: &FourVector,
    ma: f64,
    mb: f64,
    correlation: f64,
    thresholds: &[f64],
) -> Result<DivergenceScan> {
    if thresholds.windows(2).any(|w| !(w[1] < w[0])) {
        return Err(Error::Contract("thresholds must be strictly decreasing".into()));
    }
    let rows = thresholds
        .iter()
        .map(|&d| {
            let spec = RegulatorSpec::new(correlation, d, ma)?;
            let r = self_energy_regulated(p, ma, mb, &spec, Route::Lambda)?;
            Ok(ScanRow { threshold: d, value: r.value, error: r.error })
        })
        .collect::<Result<Vec<_>>>()?;
    let fit = fit_log(&rows)?;
    Ok(DivergenceScan { rows, fit })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn laplace_weight_matches_quadrature() {
        let spec = RegulatorSpec::new(3.0, 0.05, 1.0).unwrap();
        for a in [0.5, 4.0, 300.0] {
            let q = integrate_with_breaks(
                |l: f64| spec.weight(l) * (-a * l).exp(),
                &log_breaks(0.05, 40.0, 40),
                Tolerance::new(1e-300, 1e-13),
            );
            assert!((spec.laplace_weight(a) - q.value).abs() < 1e-11 * q.value, "a={a}");
        }
    }

    #[test]
    fn on_shell_density_is_half_gaussian() {
        let spec = RegulatorSpec::new(2.0, 1e-9, 1.0).unwrap();
        let f = spectral_density(1.0, &spec).unwrap();
        let exact = 2.0 / (2.0 * (2.0 * PI).sqrt());
        assert!((f.re - exact).abs() < 1e-8 && f.im.abs() < 1e-12);
    }

    #[test]
    fn expansion_matches_quadrature_at_the_switch() {
        let spec = RegulatorSpec::new(1.0, 0.3, 1.0).unwrap();
        let w = Complex64::from_polar(45.0, RAY_ANGLE);
        let hi = 8.0;
        let q = integrate_with_breaks(
            |l: f64| (Complex64::new(0.0, l) * w).exp() * spec.weight(l.max(0.3 + 1e-15)),
            &linear_breaks(0.3, hi, 200),
            Tolerance::new(1e-300, 1e-13),
        );
        let asym = endpoint_expansion(w, &spec);
        assert!((q.value - asym).norm() < 1e-10 * asym.norm());
    }

    #[test]
    fn pv_report() {
        let spec = RegulatorSpec::default_for(1.0).unwrap();
        let r = pv_conditions(&spec).unwrap();
        assert!(r.pass && r.value_at_zero.norm() == 0.0 && r.derivative_at_zero.norm() == 0.0);
        let bare = RegulatorSpec::new(10.0, 0.0, 1.0).unwrap();
        let r = pv_conditions(&bare).unwrap();
        assert!(!r.pass && (r.value_at_zero.re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn four_dimensions_need_a_regulator() {
        let spec = RegulatorSpec::new(10.0, 0.0, 1.0).unwrap();
        assert!(self_energy_regulated(&FourVector::zero(4), 1.0, 1.0, &spec, Route::Lambda).is_err());
    }
}
