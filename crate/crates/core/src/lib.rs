//! Relativistic quantum mechanics of massive scalar particles in the
//! spacetime-path formulation: paths are parametrized by an evolution
//! parameter λ independent of coordinate time, and propagators arise by
//! integrating fixed-length kernels over the intrinsic path length.
//!
//! Dimensions are runtime values; D = 2 and D = 4 are the supported cases.
//! Signature is (−,+,…,+) with index 0 the time component.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod action;
pub mod error;
pub mod evolution;
pub mod fock;
pub mod geometry;
pub mod interaction;
pub mod kernel;
pub mod lattice;
pub mod onshell;
pub mod particle;
pub mod quad;
pub mod regularization;
pub mod special;

pub use error::{Error, Result};
pub use geometry::{euclidean_dot, minkowski_dot, FourVector, Signature};
pub use lattice::{spectral_transform, ComplexField, Direction, LatticeSpec, Representation};
pub use particle::{Conjugation, ParticleType};
