use alloc::string::String;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("data length {len} does not match a {rows}x{cols} matrix")]
    DataLength { rows: usize, cols: usize, len: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("non-finite matrix entry")]
    NonFinite,
    #[error("matrix is not Hermitian (deviation {0:e})")]
    NotHermitian(f64),
    #[error("dimension must be at least 2, got {0}")]
    DimensionTooSmall(usize),
    #[error("trace {0} differs from 1")]
    NotUnitTrace(f64),
    #[error("density matrix has negative eigenvalue {0:e}")]
    NotPositive(f64),
    #[error("channel needs at least one Kraus operator")]
    EmptyKraus,
    #[error("map is not completely positive (minimum Choi eigenvalue {0:e})")]
    NotCompletelyPositive(f64),
    #[error("map is not trace preserving (deviation {0:e})")]
    NotTracePreserving(f64),
    #[error("invalid weights: {0}")]
    InvalidWeights(String),
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("generator power {n} is not the identity")]
    GeneratorOrder { n: usize },
    #[error("group closure exceeded {0} elements")]
    GroupTooLarge(usize),
    #[error("matrices do not form a representation: {0}")]
    NotARepresentation(String),
    #[error("representations are incompatible: {0}")]
    GroupMismatch(String),
    #[error("multiplicity {0} is not an integer")]
    NonIntegerMultiplicity(f64),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("sum of A^dagger A is not proportional to the identity (deviation {0:e})")]
    NotProportionalToIdentity(f64),
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("unknown irrep `{0}`")]
    UnknownIrrep(String),
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: String, reason: String },
    #[error("constraint violated: {description} (residual {residual:e})")]
    ConstraintViolated { description: String, residual: f64 },
}
