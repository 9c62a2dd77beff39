//! Generalized T-inversion maps for multipartite density matrices and the
//! correlation constraints, monogamy inequalities, shadow inequalities,
//! entropy inequalities, detection maps and marginal-compatibility witnesses
//! that follow from their positivity.

pub mod error;
pub mod cli;
pub mod constraints;
pub mod gellmann;
pub mod invariants;
pub mod inversion;
pub mod tensor;
pub mod verify;
pub mod zoo;

pub use error::{Error, Result};
pub use tensor::{
    DenseOperator, DensityMatrix, LinearEntropyVector, Matrix, PartyMask, PureState,
    SubsystemDims, C64,
};
