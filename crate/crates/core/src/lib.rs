//! Lee–Yang zeros of one-dimensional Ising chains as eigenvalues of unitary
//! Floquet CMV matrices, for couplings driven by dynamical systems, with
//! integrated density of states, gap detection and gap-label matching.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod cmv;
pub mod dynamics;
pub mod error;
pub mod export;
pub mod ising;
pub mod linalg;
pub mod model;
pub mod sequence;
pub mod spectral;
pub mod szego;
pub mod verify;

pub use error::{Error, Result};
pub use model::{GeneratedModel, ModelSpec, Pipeline};
pub use num_complex::Complex64;
pub use sequence::{CoefficientSequence, CouplingSequence};
pub use spectral::{EigenphaseList, GapReport, IdsCurve, LabelGroup, LabelMatch, Normalization};
