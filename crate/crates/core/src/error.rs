use thiserror::Error;

/// Errors shared by the linear algebra, module, and oracle layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("engine mismatch: {0} vs {1}")]
    EngineMismatch(String, String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("operation requires a Euclidean-domain engine, got {0}")]
    NotEuclidean(String),

    #[error("operation requires a residue-class engine, got {0}")]
    NotResidue(String),

    #[error("invalid engine parameter: {0}")]
    InvalidEngine(String),

    #[error("element {0} is zero or a unit")]
    ZeroOrUnit(String),

    #[error("map is not compatible with the presentations: {0}")]
    IncompatibleMap(String),

    #[error("{what} cap exceeded: {got} > {cap}")]
    CapExceeded { what: &'static str, got: u64, cap: u64 },

    #[error("search cap exceeded while {0}; verdict unknown")]
    SearchCapExceeded(String),

    #[error("finite structure axiom failure: {0}")]
    AxiomFailure(String),

    #[error("{0} is not a submodule")]
    NotSubmodule(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown {kind}: {name}")]
    Unknown { kind: &'static str, name: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code for the CLI: 2 for malformed input, 1 for domain errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) | Error::Unknown { .. } => 2,
            _ => 1,
        }
    }

    /// Stable machine-readable keyword identifying the error class.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::EngineMismatch(..) => "engine_mismatch",
            Error::DimensionMismatch(..) => "dimension_mismatch",
            Error::NotEuclidean(..) => "not_euclidean",
            Error::NotResidue(..) => "not_residue",
            Error::InvalidEngine(..) => "invalid_engine",
            Error::ZeroOrUnit(..) => "zero_or_unit",
            Error::IncompatibleMap(..) => "incompatible_map",
            Error::CapExceeded { .. } => "cap_exceeded",
            Error::SearchCapExceeded(..) => "search_cap_exceeded",
            Error::AxiomFailure(..) => "axiom_failure",
            Error::NotSubmodule(..) => "not_submodule",
            Error::Parse(..) => "parse_error",
            Error::Unknown { .. } => "unknown_name",
        }
    }
}
