use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("structural error: {0}")]
    Structural(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("model validation failed: {0}")]
    Validation(String),
    #[error("unknown model `{0}`")]
    UnknownModel(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("generator series does not terminate on the orbit of e0 within {0} terms")]
    NonNilpotent(usize),
    #[error("point lies on the polar divisor (e0 component {0:e})")]
    PolarDivisor(f64),
    #[error("point is off the coherent-state orbit (relative residual {0:e})")]
    OffOrbit(f64),
    #[error("degenerate point: K(z, conj z) = {0:e} is not positive")]
    DegeneratePoint(f64),
    #[error("no polynomial realization of `{label}` up to degree {cap} (best residual {residual:e})")]
    NonPolynomialRealization { label: String, cap: u32, residual: f64 },
    #[error("realization table is partial: {0}")]
    PartialTable(String),
    #[error("unsupported check: {0}")]
    UnsupportedCheck(String),
    #[error("no adjoint partner declared for generator {0}")]
    MissingAdjoint(usize),
    #[error("singular linear system: {0}")]
    Singular(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed model file: {0}")]
    Parse(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
