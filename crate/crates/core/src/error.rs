use thiserror::Error;

/// Errors raised by operator construction and the inversion machinery.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("subsystem dimension {dim} at party {party} is below 2")]
    DegenerateParty { party: usize, dim: usize },

    #[error("at least one party is required")]
    NoParties,

    #[error("total dimension {total} exceeds the cap {cap}")]
    DimensionCap { total: usize, cap: usize },

    #[error("mask {mask:#b} references parties outside 1..={parties}")]
    InvalidMask { mask: u32, parties: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("operator is not Hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("trace {trace:e} is not within tolerance of 1")]
    BadTrace { trace: f64 },

    #[error("operator has eigenvalue {min_eigenvalue:e} below -tol")]
    NotPositive { min_eigenvalue: f64 },

    #[error("state vector norm {norm} is not within tolerance of 1")]
    BadNorm { norm: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid grouping: {0}")]
    InvalidGrouping(String),

    #[error("imaginary residue {residue:e} exceeds tolerance")]
    ImaginaryResidue { residue: f64 },

    #[error("missing marginal for parties {0}")]
    MissingMarginal(String),

    #[error("marginals disagree on overlap {subset} (deviation {deviation:e})")]
    InconsistentMarginals { subset: String, deviation: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
