//! Globally adaptive Gauss–Kronrod quadrature (10-point Gauss embedded in the
//! 21-point Kronrod rule), for real and complex integrands.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

const XGK: [f64; 11] = [
    0.995_657_163_025_808_1,
    0.973_906_528_517_171_7,
    0.930_157_491_355_708_2,
    0.865_063_366_688_984_5,
    0.780_817_726_586_416_9,
    0.679_409_568_299_024_4,
    0.562_757_134_668_604_7,
    0.433_395_394_129_247_2,
    0.294_392_862_701_460_2,
    0.148_874_338_981_631_2,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874,
    0.032_558_162_307_964_73,
    0.054_755_896_574_351_996,
    0.075_039_674_810_919_95,
    0.093_125_454_583_697_6,
    0.109_387_158_802_297_64,
    0.123_491_976_262_065_85,
    0.134_709_217_311_473_33,
    0.142_775_938_577_060_08,
    0.147_739_104_901_338_49,
    0.149_445_554_002_916_9,
];

// Gauss weights for the odd-indexed Kronrod nodes.
const WG: [f64; 5] = [
    0.066_671_344_308_688_14,
    0.149_451_349_150_580_6,
    0.219_086_362_515_982_04,
    0.269_266_719_309_996_35,
    0.295_524_224_714_752_87,
];

/// Values that can be integrated: reals and complex numbers.
pub trait Integrand:
    Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> + Default
{
    fn magnitude(&self) -> f64;
}

impl Integrand for f64 {
    fn magnitude(&self) -> f64 {
        self.abs()
    }
}

impl Integrand for Complex64 {
    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult<T> {
    pub value: T,
    pub error: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
    pub max_intervals: usize,
}

impl Tolerance {
    pub fn new(abs: f64, rel: f64) -> Self {
        Self { abs, rel, max_intervals: 4000 }
    }

    pub fn with_max_intervals(mut self, max_intervals: usize) -> Self {
        self.max_intervals = max_intervals;
        self
    }

    fn target<T: Integrand>(&self, value: &T) -> f64 {
        self.abs.max(self.rel * value.magnitude())
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self::new(1e-14, 1e-11)
    }
}

/// Nodes and weights of the 21-point Kronrod rule on `[a, b]`.
pub fn gk21_nodes(a: f64, b: f64) -> [(f64, f64); 21] {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut out = [(center, WGK[10] * half); 21];
    for j in 0..10 {
        out[2 * j] = (center - half * XGK[j], WGK[j] * half);
        out[2 * j + 1] = (center + half * XGK[j], WGK[j] * half);
    }
    out
}

/// One application of the 21-point rule on `[a, b]`: (Kronrod value, error).
pub fn gk21<T: Integrand>(f: &mut impl FnMut(f64) -> T, a: f64, b: f64) -> (T, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[10];
    let mut gauss = T::default();
    for j in 0..10 {
        let dx = half * XGK[j];
        let pair = f(center - dx) + f(center + dx);
        kronrod = kronrod + pair * WGK[j];
        if j % 2 == 1 {
            gauss = gauss + pair * WG[j / 2];
        }
    }
    let value = kronrod * half;
    let error = ((kronrod - gauss) * half).magnitude();
    (value, error)
}

struct Segment<T> {
    a: f64,
    b: f64,
    value: T,
    error: f64,
}

impl<T> PartialEq for Segment<T> {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl<T> Eq for Segment<T> {}
impl<T> PartialOrd for Segment<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<T> Ord for Segment<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// Adaptive integration over `[a, b]`, starting from the given breakpoints.
///
/// Never fails: if the interval budget runs out, the best estimate is
/// returned together with its (too large) error. Use [`integrate_checked`]
/// to turn that into an error.
pub fn integrate_with_breaks<T: Integrand>(
    mut f: impl FnMut(f64) -> T,
    breaks: &[f64],
    tol: Tolerance,
) -> QuadResult<T> {
    let mut heap = BinaryHeap::new();
    let mut total = T::default();
    let mut total_err = 0.0;
    let mut evaluations = 0;
    for w in breaks.windows(2) {
        let (value, error) = gk21(&mut f, w[0], w[1]);
        evaluations += 21;
        total = total + value;
        total_err += error;
        heap.push(Segment { a: w[0], b: w[1], value, error });
    }
    while total_err > tol.target(&total) && heap.len() < tol.max_intervals {
        let Some(worst) = heap.pop() else { break };
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            heap.push(worst);
            break;
        }
        let (lv, le) = gk21(&mut f, worst.a, mid);
        let (rv, re) = gk21(&mut f, mid, worst.b);
        evaluations += 42;
        total = total - worst.value + lv + rv;
        total_err += le + re - worst.error;
        heap.push(Segment { a: worst.a, b: mid, value: lv, error: le });
        heap.push(Segment { a: mid, b: worst.b, value: rv, error: re });
    }
    // Re-sum to shed the drift of the running updates.
    let (value, error) = heap
        .iter()
        .fold((T::default(), 0.0), |(v, e), s| (v + s.value, e + s.error));
    QuadResult { value, error, evaluations }
}

pub fn integrate<T: Integrand>(f: impl FnMut(f64) -> T, a: f64, b: f64, tol: Tolerance) -> QuadResult<T> {
    integrate_with_breaks(f, &[a, b], tol)
}

/// As [`integrate_with_breaks`] but reports an accuracy error when the
/// requested tolerance is not reached.
pub fn integrate_checked<T: Integrand>(
    f: impl FnMut(f64) -> T,
    breaks: &[f64],
    tol: Tolerance,
) -> Result<QuadResult<T>> {
    let result = integrate_with_breaks(f, breaks, tol);
    let target = tol.target(&result.value);
    if result.error > target {
        return Err(Error::Accuracy { achieved: result.error, requested: target });
    }
    Ok(result)
}

/// `∫_a^∞ f(x) dx` through `x = a + t/(1−t)`.
pub fn integrate_semi_infinite<T: Integrand>(
    mut f: impl FnMut(f64) -> T,
    a: f64,
    tol: Tolerance,
) -> QuadResult<T> {
    let g = move |t: f64| {
        if t >= 1.0 {
            return T::default();
        }
        let s = 1.0 - t;
        f(a + t / s) * (1.0 / (s * s))
    };
    integrate_with_breaks(g, &[0.0, 0.5, 0.9, 0.99, 1.0], tol)
}

/// Log-spaced breakpoints between two positive numbers, handy for integrands
/// with structure across many decades.
pub fn log_breaks(lo: f64, hi: f64, pieces: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..=pieces).map(|i| (a + (b - a) * i as f64 / pieces as f64).exp()).collect()
}

/// Evenly spaced breakpoints.
pub fn linear_breaks(lo: f64, hi: f64, pieces: usize) -> Vec<f64> {
    (0..=pieces).map(|i| lo + (hi - lo) * i as f64 / pieces as f64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_nodes_integrate_polynomials() {
        let sum: f64 = gk21_nodes(1.0, 3.0).iter().map(|(x, w)| w * x.powi(5)).sum();
        assert!((sum - (3f64.powi(6) - 1.0) / 6.0).abs() < 1e-12);
    }

    #[test]
    fn kronrod_is_exact_for_degree_31() {
        let (v, _) = gk21(&mut |x: f64| x.powi(30) + x.powi(31), 0.0, 1.0);
        assert!((v - (1.0 / 31.0 + 1.0 / 32.0)).abs() < 1e-14);
    }

    #[test]
    fn gauss_weights_sum_to_two() {
        let total: f64 = WG.iter().sum::<f64>() * 2.0;
        assert!((total - 2.0).abs() < 1e-14);
        let k: f64 = WGK[..10].iter().sum::<f64>() * 2.0 + WGK[10];
        assert!((k - 2.0).abs() < 1e-14);
    }

    #[test]
    fn adaptive_handles_peaks() {
        let r = integrate(|x: f64| 1.0 / (1e-4 + x * x), -1.0, 1.0, Tolerance::new(1e-13, 1e-12));
        let exact = 2.0 * (1.0 / 1e-4f64.sqrt()) * (1.0 / 1e-4f64.sqrt()).atan();
        assert!((r.value - exact).abs() / exact < 1e-11, "{} vs {exact}", r.value);
    }

    #[test]
    fn semi_infinite_exponential() {
        let r = integrate_semi_infinite(|x: f64| (-x).exp(), 0.0, Tolerance::default());
        assert!((r.value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn complex_oscillation() {
        let r = integrate(
            |x: f64| Complex64::new(0.0, 5.0 * x).exp(),
            0.0,
            2.0,
            Tolerance::default(),
        );
        let exact = (Complex64::new(0.0, 10.0).exp() - 1.0) / Complex64::new(0.0, 5.0);
        assert!((r.value - exact).norm() < 1e-12);
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let tol = Tolerance::new(0.0, 1e-15).with_max_intervals(3);
        let err = integrate_checked(|x: f64| (1.0 / x).sin(), &[1e-3, 1.0], tol).unwrap_err();
        assert!(err.is_accuracy());
    }
}
