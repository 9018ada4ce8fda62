//! Euclidean Monte Carlo for the fixed-length kernel.
//!
//! Paths are pinned Brownian bridges from `x0` to `x` whose increments have
//! variance `2Δλ` per axis, so the kinetic weight is sampled exactly and its
//! normalization `(4πτ)^{−D/2} e^{−|Δx|²/4τ}` is applied analytically. The
//! mass term acts as a killing rate: a path survives segment `j` with
//! probability `e^{−(m² + V)Δλ_j}`, and the estimator is the normalization
//! times the survival indicator.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::KernelParams;
use crate::error::{Error, Result};
use crate::geometry::{FourVector, Signature};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct McConfig {
    pub segments: usize,
    pub samples: usize,
    pub seed: u64,
    pub workers: usize,
}

impl McConfig {
    pub fn new(segments: usize, samples: usize, seed: u64) -> Self {
        Self { segments, samples, seed, workers: 4 }
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub estimate: Complex64,
    pub stderr: f64,
    pub samples: usize,
}

#[derive(Debug, Clone, Copy, Default)]
struct Welford {
    count: usize,
    mean: f64,
    m2: f64,
}

impl Welford {
    fn push(&mut self, x: f64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (x - self.mean);
    }

    fn merge(self, other: Welford) -> Welford {
        if self.count == 0 {
            return other;
        }
        if other.count == 0 {
            return self;
        }
        let count = self.count + other.count;
        let delta = other.mean - self.mean;
        let mean = self.mean + delta * other.count as f64 / count as f64;
        let m2 = self.m2 + other.m2 + delta * delta * (self.count * other.count) as f64 / count as f64;
        Welford { count, mean, m2 }
    }

    fn stderr(&self) -> f64 {
        if self.count < 2 {
            return 0.0;
        }
        (self.m2 / (self.count - 1) as f64 / self.count as f64).sqrt()
    }
}

/// Monte Carlo estimate of the Euclidean kernel.
pub fn kernel_mc(
    x: &FourVector,
    x0: &FourVector,
    params: &KernelParams,
    config: &McConfig,
) -> Result<McEstimate> {
    kernel_mc_with_potential(x, x0, params, config, |_| 0.0)
}

/// As [`kernel_mc`] with an additional non-negative potential `V(q)`
/// evaluated at segment midpoints.
pub fn kernel_mc_with_potential(
    x: &FourVector,
    x0: &FourVector,
    params: &KernelParams,
    config: &McConfig,
    potential: impl Fn(&[f64]) -> f64 + Sync,
) -> Result<McEstimate> {
    params.validate()?;
    if params.signature != Signature::Euclidean {
        return Err(Error::Unsupported("Monte Carlo kernel is Euclidean only".into()));
    }
    if config.samples < 1000 {
        return Err(Error::Contract(format!("need at least 1000 samples, got {}", config.samples)));
    }
    if config.segments == 0 || config.workers == 0 {
        return Err(Error::Contract("segments and workers must be positive".into()));
    }
    let dx = x.checked_sub(x0)?;
    if dx.dim() != params.dim {
        return Err(Error::DimensionMismatch { expected: params.dim, got: dx.dim() });
    }
    let tau = params.length;
    let norm = (4.0 * PI * tau).powf(-(params.dim as f64) / 2.0)
        * (-dx.dot(&dx, Signature::Euclidean)? / (4.0 * tau)).exp();

    let per_worker = config.samples / config.workers;
    let extra = config.samples % config.workers;
    let potential = &potential;
    let accumulators: Vec<Welford> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..config.workers)
            .map(|w| {
                let count = per_worker + usize::from(w < extra);
                let (start, end) = (x0.components(), x.components());
                scope.spawn(move || {
                    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
                    rng.set_stream(w as u64);
                    let mut acc = Welford::default();
                    let mut q = vec![0.0; start.len()];
                    let mut mid = vec![0.0; start.len()];
                    for _ in 0..count {
                        acc.push(norm * survive(&mut rng, start, end, tau, params.mass, config.segments, &mut q, &mut mid, potential));
                    }
                    acc
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    let total = accumulators.into_iter().fold(Welford::default(), Welford::merge);
    Ok(McEstimate {
        estimate: Complex64::new(total.mean, 0.0),
        stderr: total.stderr(),
        samples: total.count,
    })
}

/// Samples one bridge and returns 1 if it survives every segment, else 0.
#[allow(clippy::too_many_arguments)]
fn survive(
    rng: &mut ChaCha8Rng,
    start: &[f64],
    end: &[f64],
    tau: f64,
    mass: f64,
    segments: usize,
    q: &mut [f64],
    mid: &mut [f64],
    potential: &impl Fn(&[f64]) -> f64,
) -> f64 {
    let dl = tau / segments as f64;
    q.copy_from_slice(start);
    let mut alive = true;
    for j in 0..segments {
        let remaining = tau - j as f64 * dl;
        let frac = dl / remaining;
        let var = 2.0 * dl * (remaining - dl) / remaining;
        for a in 0..q.len() {
            let old = q[a];
            let z: f64 = rng.sample(StandardNormal);
            q[a] = old + (end[a] - old) * frac + var.sqrt() * z;
            mid[a] = 0.5 * (old + q[a]);
        }
        let rate = mass * mass + potential(mid);
        let u: f64 = rng.gen();
        if u >= (-rate * dl).exp() {
            alive = false;
        }
    }
    if alive {
        1.0
    } else {
        0.0
    }
}
