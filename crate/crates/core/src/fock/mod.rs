//! Symmetric multiparticle states on truncated sectors, the permanent
//! pairing, and creation/annihilation fields with the special adjoint.

mod contraction;
mod operator;
mod permanent;
mod state;

pub use contraction::{Contraction, ContinuumContraction, FieldKind, FnContraction, LatticeContraction};
pub use operator::{
    apply_field, apply_field_vector, commutator_value, special_adjoint, Generator, GeneratorKind, OperatorExpr, Term,
};
pub use permanent::{permanent, MAX_PERMANENT};
pub use state::{fock_inner, symmetrize, Entry, FockState, FockVector, LambdaTag, Label};
