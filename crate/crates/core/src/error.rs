use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the library can report. The CLI maps each variant to an
/// exit code via [`Error::exit_code`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("unsupported field: {0}")]
    UnsupportedField(String),
    #[error("unsupported characteristic: {0}")]
    UnsupportedCharacteristic(String),
    #[error("invalid structure constants: {0}")]
    InvalidStructureConstants(String),
    #[error("dimension cap exceeded: {0}")]
    DimensionCap(String),
    #[error("not an ideal: {0}")]
    NotAnIdeal(String),
    #[error("too large: {0}")]
    TooLarge(String),
    #[error("infinite field: {0}")]
    InfiniteField(String),
    #[error("coefficient {value} has a denominator not invertible in {ring}")]
    CoefficientDenominator { value: String, ring: String },
    #[error("unanalyzable atom {atom}: {reason}")]
    UnanalyzableAtom { atom: String, reason: String },
    #[error("hypothesis unsatisfied: {clause}")]
    HypothesisUnsatisfied { clause: String },
    #[error("not central simple: {0}")]
    NotCentralSimple(String),
    #[error("rank nonzero: {0}")]
    RankNonzero(String),
    #[error("rank not invertible: {0}")]
    RankNotInvertible(String),
    #[error("no nilpotence within bound {bound}")]
    NoNilpotenceWithinBound { bound: u32 },
    #[error("ring axiom violation at generators {triple:?}: {detail}")]
    AxiomViolation { triple: Vec<usize>, detail: String },
    #[error("resource guard: {0}")]
    ResourceGuard(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("schema violation at \"{path}\": {message}")]
    Schema { path: String, message: String },
}

impl Error {
    /// 2 = a mathematical hypothesis failed, 3 = bad input, 4 = resource cap.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::HypothesisUnsatisfied { .. }
            | Error::RankNotInvertible(_)
            | Error::RankNonzero(_)
            | Error::NoNilpotenceWithinBound { .. }
            | Error::NotCentralSimple(_)
            | Error::UnsupportedCharacteristic(_)
            | Error::UnanalyzableAtom { .. }
            | Error::CoefficientDenominator { .. } => 2,
            Error::DimensionCap(_) | Error::TooLarge(_) | Error::ResourceGuard(_) => 4,
            _ => 3,
        }
    }

    /// Stable short name used in JSON reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::FieldMismatch(_) => "field-mismatch",
            Error::UnsupportedField(_) => "unsupported-field",
            Error::UnsupportedCharacteristic(_) => "unsupported-characteristic",
            Error::InvalidStructureConstants(_) => "invalid-structure-constants",
            Error::DimensionCap(_) => "dimension-cap",
            Error::NotAnIdeal(_) => "not-an-ideal",
            Error::TooLarge(_) => "too-large",
            Error::InfiniteField(_) => "infinite-field",
            Error::CoefficientDenominator { .. } => "coefficient-denominator-not-invertible",
            Error::UnanalyzableAtom { .. } => "unanalyzable-atom",
            Error::HypothesisUnsatisfied { .. } => "hypothesis-unsatisfied",
            Error::NotCentralSimple(_) => "not-central-simple",
            Error::RankNonzero(_) => "rank-nonzero",
            Error::RankNotInvertible(_) => "rank-not-invertible",
            Error::NoNilpotenceWithinBound { .. } => "no-nilpotence-within-bound",
            Error::AxiomViolation { .. } => "axiom-violation",
            Error::ResourceGuard(_) => "resource-guard",
            Error::InvalidArgument(_) => "invalid-argument",
            Error::Parse(_) => "parse-error",
            Error::Schema { .. } => "schema-violation",
        }
    }
}
