use thiserror::Error;

/// Errors raised by the algebraic and operator routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("syllable at vertex `{0}` is the identity")]
    TrivialSyllable(String),

    #[error("element does not belong to the factor at vertex `{0}`")]
    FactorMismatch(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid Coxeter matrix: {0}")]
    InvalidCoxeterMatrix(String),

    #[error("Coxeter matrix is not of finite type: {0}")]
    NotFiniteType(String),

    #[error("subword reversing did not terminate; no common multiple")]
    NoCommonMultiple,

    #[error("element is not in PP^-1")]
    NotInPPInv,

    #[error("element is not positive")]
    NotPositive,

    #[error("ball exceeds the size cap of {0} elements")]
    BallTooLarge(usize),

    #[error("weights have empty support")]
    EmptySupport,

    #[error("negative weight {0}")]
    NegativeWeight(f64),

    #[error("element lies outside the ball")]
    OutsideBall,

    #[error("matrix for `{name}` is not an isometry (residual {residual:.3e})")]
    NonIsometry { name: String, residual: f64 },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("relation violated: {0}")]
    RelationViolation(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::UnknownVertex(_) => "UnknownVertex",
            Error::UnknownGenerator(_) => "UnknownGenerator",
            Error::TrivialSyllable(_) => "TrivialSyllable",
            Error::FactorMismatch(_) => "FactorMismatch",
            Error::InvalidGraph(_) => "InvalidGraph",
            Error::InvalidCoxeterMatrix(_) => "InvalidCoxeterMatrix",
            Error::NotFiniteType(_) => "NotFiniteType",
            Error::NoCommonMultiple => "NoCommonMultiple",
            Error::NotInPPInv => "NotInPPInv",
            Error::NotPositive => "NotPositive",
            Error::BallTooLarge(_) => "BallTooLarge",
            Error::EmptySupport => "EmptySupport",
            Error::NegativeWeight(_) => "NegativeWeight",
            Error::OutsideBall => "OutsideBall",
            Error::NonIsometry { .. } => "NonIsometry",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::RelationViolation(_) => "RelationViolation",
            Error::Parse(_) => "Parse",
            Error::Io(_) => "Io",
        }
    }

    /// Whether the error comes from malformed input rather than the algebra.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Parse(_)
                | Error::Io(_)
                | Error::UnknownVertex(_)
                | Error::UnknownGenerator(_)
                | Error::TrivialSyllable(_)
                | Error::FactorMismatch(_)
                | Error::InvalidGraph(_)
                | Error::InvalidCoxeterMatrix(_)
                | Error::NotFiniteType(_)
                | Error::DimensionMismatch(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
