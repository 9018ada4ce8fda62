//! Local interaction vertices, amplitudes order by order, the truncated
//! Dyson series on finite sectors, tree-level scattering and the one-loop
//! self-energy.

mod amplitude;
mod model;
mod sector;
pub(crate) mod selfenergy;

pub use amplitude::{
    amplitude_order_m, external_line_factor, scatter_tree_2to2, ExternalLeg, ExternalLine, ScatterAmplitude,
    ScatterSpec, DEFAULT_MAX_ORDER,
};
pub use model::{InteractionModel, VertexTerm};
pub use sector::{
    dyson_truncated, unitarity_residual, vertex_operator, SectorBasis, SparseMatrix, SpeciesRange, TruncatedOperator,
    UnitarityResidual,
};
pub use selfenergy::{self_energy_unregulated, Route, SelfEnergyResult};
