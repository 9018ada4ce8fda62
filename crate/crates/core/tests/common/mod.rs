#![allow(dead_code)]

use std::f64::consts::PI;

use itertools::Itertools;
use num_complex::Complex64;

/// Composite Simpson rule with `n` (even) panels.
pub fn simpson<T>(f: impl Fn(f64) -> T, a: f64, b: f64, n: usize) -> T
where
    T: Copy + std::ops::Add<Output = T> + std::ops::Mul<f64, Output = T>,
{
    assert!(n.is_multiple_of(2));
    let h = (b - a) / n as f64;
    let mut total = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        total = total + f(a + i as f64 * h) * w;
    }
    total * (h / 3.0)
}

/// `K₀(z) = ∫₀^∞ e^{−z cosh t} dt`.
pub fn bessel_k0(z: f64) -> f64 {
    let upper = (2.0 * (800.0 / z).ln().max(1.0)).max(3.0) + 5.0;
    simpson(|t: f64| (-z * t.cosh()).exp(), 0.0, upper, 40_000)
}

/// `J₀` and `Y₀` from their power series; fine for `z ≲ 10`.
pub fn bessel_j0_y0(z: f64) -> (f64, f64) {
    const EULER: f64 = 0.577_215_664_901_532_9;
    let q = z * z / 4.0;
    let (mut j, mut s) = (0.0, 0.0);
    let (mut term, mut harmonic) = (1.0, 0.0);
    for k in 0..120 {
        if k > 0 {
            term *= -q / (k * k) as f64;
            harmonic += 1.0 / k as f64;
        }
        j += term;
        s += term * harmonic;
    }
    (j, (2.0 / PI) * (((z / 2.0).ln() + EULER) * j - s))
}

/// Two-dimensional Feynman propagator: `K₀(m√s)/2π` for spacelike `s`,
/// `−(i/4)H₀⁽²⁾(m√−s)` for timelike `s`.
pub fn feynman_2d(s: f64, m: f64) -> Complex64 {
    if s > 0.0 {
        Complex64::new(bessel_k0(m * s.sqrt()) / (2.0 * PI), 0.0)
    } else {
        let (j, y) = bessel_j0_y0(m * (-s).sqrt());
        Complex64::new(-y / 4.0, -j / 4.0)
    }
}

/// Permanent by enumerating permutations with itertools.
pub fn permanent_oracle(rows: &[Vec<Complex64>]) -> Complex64 {
    let n = rows.len();
    (0..n)
        .permutations(n)
        .map(|p| (0..n).map(|i| rows[i][p[i]]).product::<Complex64>())
        .sum()
}

/// Row-major multi-index helpers for an `n^dim` periodic lattice.
pub fn unflatten(mut i: usize, n: usize, dim: usize) -> Vec<usize> {
    let mut out = vec![0; dim];
    for a in (0..dim).rev() {
        out[a] = i % n;
        i /= n;
    }
    out
}

pub fn flatten(multi: &[usize], n: usize) -> usize {
    multi.iter().fold(0, |acc, &x| acc * n + x)
}

/// Lattice propagator by a direct discrete Fourier sum over all modes:
/// `(1/V) Σ_p e^{ip·x} g(p)` with `p = 2πk/L`, `k ∈ [−n/2, n/2)`.
pub fn dft_propagator(n: usize, extent: f64, dim: usize, g: impl Fn(&[f64]) -> Complex64) -> Vec<Complex64> {
    let sites = n.pow(dim as u32);
    let spacing = extent / n as f64;
    let volume = extent.powi(dim as i32);
    let momenta: Vec<Vec<f64>> = (0..sites)
        .map(|k| {
            unflatten(k, n, dim)
                .into_iter()
                .map(|m| {
                    let signed = if m < n / 2 { m as f64 } else { m as f64 - n as f64 };
                    2.0 * PI * signed / extent
                })
                .collect()
        })
        .collect();
    let values: Vec<Complex64> = momenta.iter().map(|p| g(p)).collect();
    (0..sites)
        .map(|x| {
            let pos: Vec<f64> = unflatten(x, n, dim).iter().map(|&m| m as f64 * spacing).collect();
            momenta
                .iter()
                .zip(&values)
                .map(|(p, v)| v * Complex64::from_polar(1.0, p.iter().zip(&pos).map(|(a, b)| a * b).sum()))
                .sum::<Complex64>()
                / volume
        })
        .collect()
}

/// Periodic difference of two flat site indices.
pub fn site_difference(a: usize, b: usize, n: usize, dim: usize) -> usize {
    let (ma, mb) = (unflatten(a, n, dim), unflatten(b, n, dim));
    let diff: Vec<usize> = ma.iter().zip(&mb).map(|(x, y)| (x + n - y) % n).collect();
    flatten(&diff, n)
}

pub fn rel_err(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm()
}
