use thiserror::Error;

/// Error classes shared across the crate. Each variant corresponds to one
/// machine-readable failure mode surfaced by the CLI.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("EmptyExponentSet: the exponent set has no frequencies")]
    EmptyExponentSet,
    #[error("DuplicateFrequency: frequencies {0} and {1} have identical rational coordinates")]
    DuplicateFrequency(usize, usize),
    #[error("InvalidGenerator: {0}")]
    InvalidGenerator(String),
    #[error("InvalidCoefficient: {0}")]
    InvalidCoefficient(String),
    #[error("NotABasis: {0}")]
    NotABasis(String),
    #[error("ToleranceInExactMode: exact systems must be solved with tol = 0")]
    ToleranceInExactMode,
    #[error("InvalidTolerance: numeric systems require a positive tolerance")]
    InvalidTolerance,
    #[error("DimensionMismatch: {0}")]
    DimensionMismatch(String),
    #[error("OutsideStrip: sigma = {sigma} is outside the strip ({alpha}, {beta})")]
    OutsideStrip { sigma: f64, alpha: f64, beta: f64 },
    #[error("InvalidStrip: {0}")]
    InvalidStrip(String),
    #[error("BadDiscretization: {0}")]
    BadDiscretization(String),
    #[error("ExponentSetMismatch: the two sums are not over the same ordered exponent set")]
    ExponentSetMismatch,
    #[error("MixedCoefficientModes: cannot mix exact-polar and numeric coefficients")]
    MixedCoefficientModes,
    #[error("ResidueOutOfRange: residue {residue} at row {row} must lie in [0, {denominator})")]
    ResidueOutOfRange {
        row: usize,
        residue: String,
        denominator: String,
    },
    #[error("BudgetExceeded: torus sampling would produce {requested} points (budget {budget})")]
    BudgetExceeded { requested: u128, budget: u128 },
    #[error("EmptyCloud: value cloud has no points")]
    EmptyCloud,
    #[error("NoCertificate: the verdict carries no feasibility certificate")]
    NoCertificate,
    #[error("NotEquivalent: inputs are not equivalent; refusing to verify")]
    NotEquivalent,
    #[error("ParseError: {0}")]
    Parse(String),
}

/// Stable machine-readable class name for exit reporting.
impl Error {
    pub fn class(&self) -> &'static str {
        match self {
            Error::EmptyExponentSet => "EmptyExponentSet",
            Error::DuplicateFrequency(..) => "DuplicateFrequency",
            Error::InvalidGenerator(..) => "InvalidGenerator",
            Error::InvalidCoefficient(..) => "InvalidCoefficient",
            Error::NotABasis(..) => "NotABasis",
            Error::ToleranceInExactMode => "ToleranceInExactMode",
            Error::InvalidTolerance => "InvalidTolerance",
            Error::DimensionMismatch(..) => "DimensionMismatch",
            Error::OutsideStrip { .. } => "OutsideStrip",
            Error::InvalidStrip(..) => "InvalidStrip",
            Error::BadDiscretization(..) => "BadDiscretization",
            Error::ExponentSetMismatch => "ExponentSetMismatch",
            Error::MixedCoefficientModes => "MixedCoefficientModes",
            Error::ResidueOutOfRange { .. } => "ResidueOutOfRange",
            Error::BudgetExceeded { .. } => "BudgetExceeded",
            Error::EmptyCloud => "EmptyCloud",
            Error::NoCertificate => "NoCertificate",
            Error::NotEquivalent => "NotEquivalent",
            Error::Parse(..) => "ParseError",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
