use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable lists differ: {left:?} vs {right:?}")]
    VariableMismatch { left: Vec<String>, right: Vec<String> },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("series leading coefficient must be 1, found {0}")]
    LeadingCoefficientNotOne(String),
    #[error("root index must be positive")]
    ZeroRootIndex,
    #[error("series constant term must be 1 for the principal logarithm, found {0}")]
    LogConstantNotOne(String),
    #[error("series constant term must vanish for the exponential, found {0}")]
    ExpConstantNotZero(String),
    #[error("composition needs an inner series of positive valuation and an outer power series")]
    BadComposition,
    #[error("series must start at the linear term with nonzero coefficient")]
    ZeroLinearTerm,
    #[error("coefficient of exponent {exponent} requested but series is only known below {order}")]
    TruncationExceeded { exponent: i64, order: i64 },
    #[error("denominator is not squarefree")]
    NotSquarefree,
    #[error("denominator is constant")]
    ConstantDenominator,
    #[error("singular matrix")]
    SingularMatrix,
    #[error("matrix dimensions do not match: {0}")]
    DimensionMismatch(String),
    #[error("no finite-dimension certificate up to degree {degree_bound}")]
    CertificateNotFound { degree_bound: u32 },
    #[error("non-invertible leading coefficient during elimination")]
    NonInvertibleLeading,
    #[error("parameter must be at least 2, got {0}")]
    InvalidExponent(usize),
    #[error("base point lies on the discriminant (epsilon = 0)")]
    OnDiscriminant,
    #[error("fiber is not smooth at this base point")]
    SingularFiber,
    #[error("expected {expected} base coordinates, got {got}")]
    BadBasePoint { expected: usize, got: usize },
    #[error("ambient dimension must be {expected}, got {got}")]
    WrongAmbientDimension { expected: usize, got: usize },
    #[error("not enough columns for maximal minors: {rows} rows, {cols} columns")]
    NoMinors { rows: usize, cols: usize },
    #[error("vector field `{0}` is not in the logarithmic frame")]
    NotInFrame(String),
    #[error("algebra dimension {got} at the evaluation point differs from expected {expected}")]
    DimensionDrop { expected: usize, got: usize },
    #[error("algebra at the evaluation point is not reduced; first-order deformation is not unique")]
    NotReduced,
    #[error("no lift of `{0}` tangent to the total space up to the degree bound")]
    NoLift(String),
    #[error("unsupported stratum ideal: {0}")]
    UnsupportedStratum(String),
    #[error("vector fields of the frame do not commute")]
    NonCommutingFrame,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
