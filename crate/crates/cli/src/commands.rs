//! Subcommand parameters and their mapping onto library operations.

use std::f64::consts::PI;

use clap::{Args, ValueEnum};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use worldline::evolution::ParametrizedWavefunction;
use worldline::fock::{Entry, FieldKind, FockVector, Label, LatticeContraction};
use worldline::interaction::{
    scatter_tree_2to2, self_energy_unregulated, ExternalLeg, Route, ScatterSpec,
};
use worldline::kernel::{
    kernel_closed, kernel_discretized, kernel_mc, propagator_momentum, propagator_onshell_part,
    propagator_position, KernelParams, McConfig, PropagatorParams,
};
use worldline::onshell::{concentration, momentum_state_profile, EnergyAxis, EnergySign, MomentumGrid};
use worldline::regularization::{divergence_scan, pv_conditions, self_energy_regulated, RegulatorSpec};
use worldline::{Conjugation, FourVector, LatticeSpec, ParticleType, Signature};

use crate::config::{required, Json, Reals};
use crate::error::CliError;
use crate::record::{Cell, Check, Column, ColumnKind, Record, Table};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Minkowski,
    Euclidean,
}

impl From<Mode> for Signature {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Minkowski => Signature::Minkowski,
            Mode::Euclidean => Signature::Euclidean,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Particle,
    Antiparticle,
}

impl From<Sign> for EnergySign {
    fn from(s: Sign) -> Self {
        match s {
            Sign::Particle => EnergySign::Particle,
            Sign::Antiparticle => EnergySign::Antiparticle,
        }
    }
}

fn vector(r: &Reals) -> FourVector {
    FourVector::new(r.0.clone())
}

/// The vector, checked against an explicit dimension when one is given.
fn sized_vector(r: &Reals, dim: Option<usize>) -> Result<FourVector, CliError> {
    match dim {
        Some(d) if d != r.0.len() => Err(worldline::Error::DimensionMismatch { expected: d, got: r.0.len() }.into()),
        _ => Ok(vector(r)),
    }
}

fn real_column(name: &str) -> Column {
    Column::new(name, ColumnKind::Real)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum KernelMethod {
    Closed,
    Discretized,
    Mc,
}

/// Fixed-length kernel `K(Δx; T)`.
#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct KernelArgs {
    #[arg(long)]
    pub dim: Option<usize>,
    #[arg(long, value_enum)]
    pub mode: Option<Mode>,
    #[arg(long)]
    pub mass: Option<f64>,
    /// Intrinsic path length.
    #[arg(long)]
    pub tau: Option<f64>,
    /// Separation, time first.
    #[arg(long, allow_hyphen_values = true)]
    pub dx: Option<Reals>,
    #[arg(long, value_enum)]
    pub method: Option<KernelMethod>,
    #[arg(long)]
    pub segments: Option<usize>,
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
}

pub fn kernel(a: &KernelArgs, record: &mut Record) -> Result<(), CliError> {
    let mode = a.mode.unwrap_or(Mode::Minkowski);
    let dx = sized_vector(&required(&a.dx, "dx")?, a.dim)?;
    let dim = dx.dim();
    let params = KernelParams::new(required(&a.mass, "mass")?, required(&a.tau, "tau")?, dim, mode.into())?;
    let closed = kernel_closed(&dx, &params)?;
    let segments = a.segments.unwrap_or(16);
    match a.method.unwrap_or(KernelMethod::Closed) {
        KernelMethod::Closed => {
            record.operation = "kernel::kernel_closed".into();
            record.scalar("value", closed);
        }
        KernelMethod::Discretized => {
            record.operation = "kernel::kernel_discretized".into();
            let lengths = vec![params.length / segments as f64; segments];
            let d = kernel_discretized(&dx, &FourVector::zero(dim), &lengths, &params)?;
            record.scalar("value", d.value);
            record.scalar("segments", segments);
            record.checks.push(Check::absolute(
                "relative distance to closed form",
                (d.value - closed).norm() / closed.norm(),
                0.0,
                1e-10,
            ));
        }
        KernelMethod::Mc => {
            record.operation = "kernel::kernel_mc".into();
            let seed = a.seed.unwrap_or(0);
            let cfg = McConfig::new(segments, a.samples.unwrap_or(100_000), seed);
            let est = kernel_mc(&dx, &FourVector::zero(dim), &params, &cfg)?;
            record.scalar("value", est.estimate);
            record.scalar("stderr", est.stderr);
            record.scalar("samples", est.samples);
            record.seed = Some(seed);
            record.checks.push(Check::absolute(
                "closed form within three standard errors",
                est.estimate.re,
                closed.re,
                3.0 * est.stderr,
            ));
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Part {
    Feynman,
    Positive,
    Negative,
}

/// Propagator in position or momentum space.
#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct PropagatorArgs {
    #[arg(long)]
    pub dim: Option<usize>,
    #[arg(long, value_enum)]
    pub mode: Option<Mode>,
    #[arg(long)]
    pub mass: Option<f64>,
    /// Convergence factor; also the damping of the on-shell parts.
    #[arg(long)]
    pub epsilon: Option<f64>,
    /// Position-space separation, time first.
    #[arg(long, allow_hyphen_values = true)]
    pub dx: Option<Reals>,
    /// Momentum, energy first; selects the momentum-space propagator.
    #[arg(long, allow_hyphen_values = true)]
    pub p: Option<Reals>,
    #[arg(long, value_enum)]
    pub part: Option<Part>,
}

pub fn propagator(a: &PropagatorArgs, record: &mut Record) -> Result<(), CliError> {
    let mass = required(&a.mass, "mass")?;
    let epsilon = a.epsilon.unwrap_or(1e-3);
    match (&a.dx, &a.p) {
        (Some(_), Some(_)) => Err(CliError::Config("give either `dx` or `p`, not both".into())),
        (None, None) => Err(CliError::Config("missing parameter `dx` or `p`".into())),
        (None, Some(p)) => {
            record.operation = "kernel::propagator_momentum".into();
            record.scalar("value", propagator_momentum(&sized_vector(p, a.dim)?, mass, epsilon));
            Ok(())
        }
        (Some(dx), None) => {
            let dx = sized_vector(dx, a.dim)?;
            let value = match a.part.unwrap_or(Part::Feynman) {
                Part::Feynman => {
                    record.operation = "kernel::propagator_position".into();
                    let mode = a.mode.unwrap_or(Mode::Minkowski);
                    propagator_position(&dx, &PropagatorParams::new(mass, epsilon, mode.into()))?
                }
                part => {
                    record.operation = "kernel::propagator_onshell_part".into();
                    propagator_onshell_part(&dx, mass, part == Part::Positive, epsilon)?
                }
            };
            record.scalar("value", value);
            Ok(())
        }
    }
}

/// λ-evolution of a Gaussian packet on a periodic lattice.
#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct EvolveArgs {
    #[arg(long)]
    pub dim: Option<usize>,
    #[arg(long)]
    pub points: Option<usize>,
    #[arg(long)]
    pub extent: Option<f64>,
    #[arg(long, value_enum)]
    pub mode: Option<Mode>,
    #[arg(long)]
    pub mass: Option<f64>,
    #[arg(long)]
    pub width: Option<f64>,
    /// Packet momentum, time component first.
    #[arg(long, allow_hyphen_values = true)]
    pub momentum: Option<Reals>,
    #[arg(long)]
    pub step: Option<f64>,
    #[arg(long)]
    pub steps: Option<usize>,
    #[arg(long)]
    pub record_every: Option<usize>,
}

pub fn evolve(a: &EvolveArgs, record: &mut Record) -> Result<(), CliError> {
    let dim = a.dim.unwrap_or(2);
    let points = a.points.unwrap_or(64);
    let extent = a.extent.unwrap_or(32.0);
    let mode = a.mode.unwrap_or(Mode::Minkowski);
    let step = required(&a.step, "step")?;
    let steps = required(&a.steps, "steps")?;
    let every = a.record_every.unwrap_or(1).max(1);
    let spec = LatticeSpec::cubic(dim, points, extent, mode.into())?;
    let center = FourVector::new(vec![extent / 2.0; dim]);
    let momentum = a.momentum.as_ref().map(vector).unwrap_or_else(|| FourVector::zero(dim));
    let mut psi = ParametrizedWavefunction::gaussian_packet(
        spec,
        &center,
        a.width.unwrap_or(2.0),
        &momentum,
        required(&a.mass, "mass")?,
    )?;
    record.operation = "evolution::ParametrizedWavefunction::evolve".into();
    let n0 = psi.norm();
    let mut table = Table::new(vec![
        Column::new("step", ColumnKind::Int),
        real_column("lambda"),
        real_column("norm"),
    ]);
    table.push(vec![Cell::from(0usize), psi.lambda().into(), n0.into()]);
    let mut drift = 0.0f64;
    for k in 1..=steps {
        psi = psi.evolve(step);
        let n = psi.norm();
        drift = drift.max((n - n0).abs());
        if k % every == 0 || k == steps {
            table.push(vec![Cell::from(k), psi.lambda().into(), n.into()]);
        }
    }
    record.scalar("max_norm_drift", drift);
    if mode == Mode::Minkowski {
        let h = step.abs().max(1e-4);
        let ratio = psi.stueckelberg_residual(h)? / psi.stueckelberg_residual(h / 2.0)?;
        record.scalar("residual_ratio", ratio);
        record.checks.push(Check::relative("residual ratio under probe halving", ratio, 4.0, 0.1));
        record.checks.push(Check::absolute("norm drift", drift, 0.0, 1e-12));
    }
    record.table = Some(table);
    Ok(())
}

/// Off-shell energy profile of a momentum state.
#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct OnshellArgs {
    #[arg(long)]
    pub mass: Option<f64>,
    /// Spatial momentum.
    #[arg(long, allow_hyphen_values = true)]
    pub p: Option<Reals>,
    #[arg(long, value_enum)]
    pub sign: Option<Sign>,
    /// Observation time.
    #[arg(long, allow_hyphen_values = true)]
    pub t: Option<f64>,
    #[arg(long)]
    pub epsilon: Option<f64>,
    /// Half-width of the energy window for the concentration.
    #[arg(long)]
    pub window: Option<f64>,
    /// Half-width of the sampled energy axis.
    #[arg(long)]
    pub halfwidth: Option<f64>,
    #[arg(long)]
    pub points: Option<usize>,
}

pub fn onshell(a: &OnshellArgs, record: &mut Record) -> Result<(), CliError> {
    let mass = required(&a.mass, "mass")?;
    let p = required(&a.p, "p")?.0;
    let sign: EnergySign = a.sign.unwrap_or(Sign::Particle).into();
    let epsilon = required(&a.epsilon, "epsilon")?;
    let window = a.window.unwrap_or(10.0 * epsilon);
    let energy = (p.iter().map(|x| x * x).sum::<f64>() + mass * mass).sqrt();
    let axis = EnergyAxis::centered(sign.factor() * energy, a.halfwidth.unwrap_or(20.0), a.points.unwrap_or(4001));
    let profile = momentum_state_profile(&p, mass, sign, a.t.unwrap_or(0.0), epsilon, axis)?;
    record.operation = "onshell::momentum_state_profile".into();
    let c = concentration(&profile, window)?;
    record.scalar("concentration", c);
    record.scalar("peak_energy", profile.argmax());
    record.checks.push(Check::relative(
        "concentration against the Lorentzian arctangent",
        c,
        2.0 / PI * (window / epsilon).atan(),
        0.01,
    ));
    let mut table = Table::new(vec![real_column("energy"), Column::new("amplitude", ColumnKind::Complex)]);
    for (k, amp) in profile.amplitudes.iter().enumerate() {
        table.push(vec![axis.value(k).into(), (*amp).into()]);
    }
    record.table = Some(table);
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpeciesSpec {
    pub label: String,
    pub mass: f64,
    #[serde(default)]
    pub conjugation: Conjugation,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntrySpec {
    pub species: String,
    #[serde(default)]
    pub conjugation: Conjugation,
    pub site: usize,
}

/// `coefficient × |entries⟩`; the coefficient is `[re, im]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateSpec {
    #[serde(default = "unit")]
    pub coefficient: [f64; 2],
    pub entries: Vec<EntrySpec>,
}

fn unit() -> [f64; 2] {
    [1.0, 0.0]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Plain,
    OnShell,
}

/// Pairing of two multiparticle lattice states.
#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct FockArgs {
    #[arg(long)]
    pub dim: Option<usize>,
    #[arg(long)]
    pub points: Option<usize>,
    #[arg(long)]
    pub extent: Option<f64>,
    #[arg(long, value_enum)]
    pub mode: Option<Mode>,
    #[arg(long, value_enum)]
    pub kind: Option<Kind>,
    #[arg(long)]
    pub epsilon: Option<f64>,
    /// JSON list of `{label, mass, conjugation}`.
    #[arg(long)]
    pub species: Option<Json<Vec<SpeciesSpec>>>,
    /// JSON list of `{coefficient, entries: [{species, conjugation, site}]}`.
    #[arg(long)]
    pub bra: Option<Json<Vec<StateSpec>>>,
    #[arg(long)]
    pub ket: Option<Json<Vec<StateSpec>>>,
}

fn build_vector(states: &[StateSpec], species: &[ParticleType]) -> Result<FockVector, CliError> {
    let mut v = FockVector::zero();
    for s in states {
        let entries = s
            .entries
            .iter()
            .map(|e| {
                species
                    .iter()
                    .find(|p| p.label() == e.species && p.conjugation() == e.conjugation)
                    .map(|p| Entry::start(Label::Site(e.site), p.clone()))
                    .ok_or_else(|| CliError::Config(format!("unknown species `{}` ({:?})", e.species, e.conjugation)))
            })
            .collect::<Result<Vec<_>, _>>()?;
        v.add(entries, Complex64::new(s.coefficient[0], s.coefficient[1]));
    }
    Ok(v)
}

pub fn fock(a: &FockArgs, record: &mut Record) -> Result<(), CliError> {
    let mode = a.mode.unwrap_or(Mode::Euclidean);
    let spec = LatticeSpec::cubic(a.dim.unwrap_or(2), a.points.unwrap_or(8), a.extent.unwrap_or(8.0), mode.into())?;
    let kind = match a.kind.unwrap_or(Kind::Plain) {
        Kind::Plain => FieldKind::Plain,
        Kind::OnShell => FieldKind::OnShell,
    };
    let species = required(&a.species, "species")?
        .0
        .iter()
        .map(|s| ParticleType::new(s.label.clone(), s.mass, s.conjugation))
        .collect::<Result<Vec<_>, _>>()?;
    if let Some(bad) = [&a.bra, &a.ket]
        .iter()
        .flat_map(|s| s.iter().flat_map(|j| j.0.iter().flat_map(|st| st.entries.iter())))
        .find(|e| e.site >= spec.site_count())
    {
        return Err(worldline::Error::Contract(format!("site {} is outside the lattice", bad.site)).into());
    }
    let bra = build_vector(&required(&a.bra, "bra")?.0, &species)?;
    let ket = build_vector(&required(&a.ket, "ket")?.0, &species)?;
    let contraction = LatticeContraction::new(spec, kind, a.epsilon.unwrap_or(0.0), &species)?;
    record.operation = "fock::FockVector::inner".into();
    record.scalar("value", bra.inner(&ket, &contraction)?);
    Ok(())
}

/// Tree-level 2 → 2 amplitude with one exchanged species.
#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct ScatterArgs {
    #[arg(long)]
    pub mass: Option<f64>,
    #[arg(long)]
    pub exchanged_mass: Option<f64>,
    #[arg(long)]
    pub coupling: Option<f64>,
    #[arg(long)]
    pub epsilon: Option<f64>,
    /// Incoming spatial momenta.
    #[arg(long, allow_hyphen_values = true)]
    pub p1: Option<Reals>,
    #[arg(long, allow_hyphen_values = true)]
    pub p2: Option<Reals>,
    /// Outgoing spatial momenta.
    #[arg(long, allow_hyphen_values = true)]
    pub q1: Option<Reals>,
    #[arg(long, allow_hyphen_values = true)]
    pub q2: Option<Reals>,
    /// Momentum grid: `2·half + 1` points per axis.
    #[arg(long)]
    pub grid_half: Option<usize>,
    #[arg(long)]
    pub grid_spacing: Option<f64>,
}

pub fn scatter(a: &ScatterArgs, record: &mut Record) -> Result<(), CliError> {
    let a_type = ParticleType::normal("A", required(&a.mass, "mass")?)?;
    let b_type = ParticleType::normal("B", required(&a.exchanged_mass, "exchanged-mass")?)?;
    let momenta = [
        required(&a.p1, "p1")?.0,
        required(&a.p2, "p2")?.0,
        required(&a.q1, "q1")?.0,
        required(&a.q2, "q2")?.0,
    ];
    let grid = MomentumGrid::new(momenta[0].len(), a.grid_half.unwrap_or(8), a.grid_spacing.unwrap_or(0.25))?;
    let leg = |p: &Vec<f64>| ExternalLeg::particle(p.clone(), a_type.clone());
    let spec = ScatterSpec {
        incoming: vec![leg(&momenta[0]), leg(&momenta[1])],
        outgoing: vec![leg(&momenta[2]), leg(&momenta[3])],
    };
    let (g, eps) = (required(&a.coupling, "coupling")?, a.epsilon.unwrap_or(1e-6));
    let amp = scatter_tree_2to2(&spec, g, &b_type, eps, &grid)?;
    let swapped = ScatterSpec { incoming: spec.incoming.clone(), outgoing: vec![leg(&momenta[3]), leg(&momenta[2])] };
    let amp_swapped = scatter_tree_2to2(&swapped, g, &b_type, eps, &grid)?;
    record.operation = "interaction::scatter_tree_2to2".into();
    record.scalar("value", amp.value);
    record.scalar("reduced", amp.reduced);
    record.scalar("conserved", amp.conserved);
    record.checks.push(Check::absolute(
        "outgoing exchange symmetry",
        (amp.value - amp_swapped.value).norm(),
        0.0,
        0.0,
    ));
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum RouteArg {
    Cutoff,
    Lambda,
    MassSpectrum,
}

/// One-loop self-energy, sharp cutoff or regulated.
#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct SelfEnergyArgs {
    #[arg(long)]
    pub dim: Option<usize>,
    /// External momentum; its length sets the dimension.
    #[arg(long, allow_hyphen_values = true)]
    pub p: Option<Reals>,
    #[arg(long)]
    pub ma: Option<f64>,
    #[arg(long)]
    pub mb: Option<f64>,
    #[arg(long)]
    pub cutoff: Option<f64>,
    #[arg(long, value_enum)]
    pub route: Option<RouteArg>,
    /// Correlation length of the proper-time weight.
    #[arg(long)]
    pub correlation: Option<f64>,
    /// Lower threshold of the proper-time weight.
    #[arg(long)]
    pub threshold: Option<f64>,
}

fn regulator(a: &SelfEnergyArgs, ma: f64) -> Result<RegulatorSpec, CliError> {
    let base = RegulatorSpec::default_for(ma)?;
    let spec = RegulatorSpec::new(
        a.correlation.unwrap_or(base.correlation),
        a.threshold.unwrap_or(base.threshold),
        ma,
    )?;
    Ok(match a.cutoff {
        Some(c) => spec.with_cutoff(c),
        None => spec,
    })
}

pub fn selfenergy(a: &SelfEnergyArgs, record: &mut Record) -> Result<(), CliError> {
    let p = sized_vector(&required(&a.p, "p")?, a.dim)?;
    let (ma, mb) = (required(&a.ma, "ma")?, required(&a.mb, "mb")?);
    let route = a.route.unwrap_or(if a.correlation.is_some() || a.threshold.is_some() {
        RouteArg::Lambda
    } else {
        RouteArg::Cutoff
    });
    match route {
        RouteArg::Cutoff => {
            let cutoff = required(&a.cutoff, "cutoff")?;
            let r = self_energy_unregulated(&p, ma, mb, cutoff)?;
            record.operation = "interaction::self_energy_unregulated".into();
            record.scalar("value", r.value);
            record.scalar("error", r.error);
            if p.components().iter().all(|&x| x == 0.0) && ma == mb {
                let (m2, l2) = (ma * ma, cutoff * cutoff);
                let exact = match p.dim() {
                    2 => PI * (1.0 / m2 - 1.0 / (l2 + m2)),
                    _ => PI * PI * ((1.0 + l2 / m2).ln() + m2 / (l2 + m2) - 1.0),
                };
                record.checks.push(Check::relative("closed form at zero momentum", r.value.re, exact, 1e-8));
            }
        }
        RouteArg::Lambda | RouteArg::MassSpectrum => {
            let spec = regulator(a, ma)?;
            let (main, other) = if route == RouteArg::Lambda {
                (Route::Lambda, Route::MassSpectrum)
            } else {
                (Route::MassSpectrum, Route::Lambda)
            };
            let r = self_energy_regulated(&p, ma, mb, &spec, main)?;
            let cross = self_energy_regulated(&p, ma, mb, &spec, other)?;
            record.operation = "regularization::self_energy_regulated".into();
            record.scalar("value", r.value);
            record.scalar("error", r.error);
            let pv = pv_conditions(&spec)?;
            record.scalar("pv_value_at_zero", pv.value_at_zero);
            record.scalar("pv_derivative_at_zero", pv.derivative_at_zero);
            record.scalar("pv_pass", pv.pass);
            record.checks.push(Check::absolute(
                "relative distance to the other route",
                (r.value - cross.value).norm() / cross.value.norm(),
                0.0,
                0.01,
            ));
        }
    }
    Ok(())
}

/// Regulated self-energy over decreasing thresholds.
#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct ScanArgs {
    #[arg(long)]
    pub dim: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub p: Option<Reals>,
    #[arg(long)]
    pub ma: Option<f64>,
    #[arg(long)]
    pub mb: Option<f64>,
    #[arg(long)]
    pub correlation: Option<f64>,
    /// Strictly decreasing thresholds.
    #[arg(long)]
    pub thresholds: Option<Reals>,
}

pub fn scan(a: &ScanArgs, record: &mut Record) -> Result<(), CliError> {
    let p = sized_vector(&required(&a.p, "p")?, a.dim)?;
    let (ma, mb) = (required(&a.ma, "ma")?, required(&a.mb, "mb")?);
    let thresholds = required(&a.thresholds, "thresholds")?.0;
    let correlation = a.correlation.unwrap_or(10.0 / (ma * ma));
    record.operation = "regularization::divergence_scan".into();
    let mut table = Table::new(vec![
        real_column("threshold"),
        Column::new("value", ColumnKind::Complex),
        real_column("error"),
    ]);
    if !thresholds.is_empty() {
        let scan = divergence_scan(&p, ma, mb, correlation, &thresholds)?;
        for row in &scan.rows {
            table.push(vec![row.threshold.into(), row.value.into(), row.error.into()]);
        }
        record.scalar("slope", scan.fit.slope);
        record.scalar("intercept", scan.fit.intercept);
        record.scalar("r_squared", scan.fit.r_squared);
        record.scalar("slope_low", scan.fit.slope_interval.0);
        record.scalar("slope_high", scan.fit.slope_interval.1);
    }
    record.table = Some(table);
    Ok(())
}
