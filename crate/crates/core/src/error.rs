use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("non-physical covariance matrix: {0}")]
    NonPhysical(String),

    #[error("matrix is not symmetric (max asymmetry {0:e})")]
    NotSymmetric(f64),

    #[error("degenerate local block: a·b = 0")]
    DegenerateBlock,

    #[error("matrix is not symplectic (|SΩSᵀ − Ω| = {0:e})")]
    NotSymplectic(f64),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("invalid mode frequencies: {0}")]
    InvalidModes(String),

    #[error("globally pure state: global passive energy vanishes, relative gap undefined")]
    DegeneratePurity,

    #[error("argument {0} outside the domain x ≥ 1")]
    Domain(f64),

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("no grid point satisfies the separability-side condition")]
    EmptyRegion,

    #[error("photon subtraction from a state with no excitations in mode A")]
    SubtractionFromVacuum,

    #[error("spectrum has {needed} entries but only {available} levels were provided")]
    InsufficientLevels { needed: usize, available: usize },

    #[error("invalid probability spectrum: {0}")]
    InvalidSpectrum(String),

    #[error("operation requires a Gaussian state, got family {0}")]
    NonGaussian(String),

    #[error("state file: {0}")]
    Format(String),
}
