use thiserror::Error;

/// Crate-wide error type. Every variant carries a stable machine-readable
/// code (see [`Error::code`]) so CLI consumers can dispatch without parsing
/// messages.
#[derive(Debug, Error)]
pub enum Error {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("variable count mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),
    #[error("zero input not allowed: {0}")]
    ZeroInput(&'static str),
    #[error("projective dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("map undefined: all defining forms vanish at the point")]
    IndeterminacyPoint,
    #[error("composite map is identically zero")]
    ZeroComposite,
    #[error("maps are not mutually inverse: {0}")]
    NotInverse(String),
    #[error("degenerate position: {0}")]
    DegeneratePosition(&'static str),
    #[error("points are not pairwise distinct")]
    NonDistinctPoints,
    #[error("wrong vertex multiplicity: {0}")]
    WrongMultiplicity(String),
    #[error("denominator form is identically zero")]
    DegenerateDenominator,
    #[error("determinant form F0*G - F*G0 is identically zero")]
    ZeroDeterminant,
    #[error("linear system has projective dimension {got}, expected {expected}")]
    WrongSystemDimension { expected: i64, got: i64 },
    #[error("vertex lies on the scheme")]
    VertexOnScheme,
    #[error("no solution at degree {0}")]
    NoSolutionAtDegree(usize),
    #[error("genericity resampling exhausted: {0}")]
    GenericityExhausted(&'static str),
    #[error("cone-avoidance resampling exhausted")]
    AvoidanceExhausted,
    #[error("rejection sampling budget exhausted: {0}")]
    SampleBudgetExhausted(&'static str),
    #[error("degree escalation exhausted at cap {cap}")]
    DegreeEscalationExhausted { cap: usize },
    #[error("monoid search exhausted at degree cap {cap}")]
    MonoidSearchExhausted { cap: usize },
    #[error("injectivity screen failed for every sampled projection center")]
    InjectivityScreenFailed,
    #[error("step verification failed: {0}")]
    StepVerificationFailed(String),
    #[error("chain verification failed: {0}")]
    VerificationFailed(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Stable machine-readable code for this error.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DegreeMismatch(..) => "degree-mismatch",
            Error::ArityMismatch(..) => "arity-mismatch",
            Error::ZeroInput(_) => "zero-input",
            Error::DimensionMismatch { .. } => "dimension-mismatch",
            Error::IndeterminacyPoint => "indeterminacy-point",
            Error::ZeroComposite => "zero-composite",
            Error::NotInverse(_) => "not-inverse",
            Error::DegeneratePosition(_) => "degenerate-position",
            Error::NonDistinctPoints => "non-distinct-points",
            Error::WrongMultiplicity(_) => "wrong-multiplicity",
            Error::DegenerateDenominator => "degenerate-denominator",
            Error::ZeroDeterminant => "zero-determinant",
            Error::WrongSystemDimension { .. } => "wrong-system-dimension",
            Error::VertexOnScheme => "vertex-on-scheme",
            Error::NoSolutionAtDegree(_) => "no-solution-at-degree",
            Error::GenericityExhausted(_) => "genericity-exhausted",
            Error::AvoidanceExhausted => "avoidance-exhausted",
            Error::SampleBudgetExhausted(_) => "sample-budget-exhausted",
            Error::DegreeEscalationExhausted { .. } => "degree-escalation-exhausted",
            Error::MonoidSearchExhausted { .. } => "monoid-search-exhausted",
            Error::InjectivityScreenFailed => "injectivity-screen-failed",
            Error::StepVerificationFailed(_) => "step-verification-failed",
            Error::VerificationFailed(_) => "verification-failed",
            Error::Parse(_) => "parse-error",
            Error::Io(_) => "io-error",
            Error::Json(_) => "json-error",
        }
    }

    /// Process exit code class: 2 parse, 3 search exhausted, 4 verification
    /// failed, 1 anything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) | Error::Json(_) => 2,
            Error::NoSolutionAtDegree(_)
            | Error::GenericityExhausted(_)
            | Error::AvoidanceExhausted
            | Error::SampleBudgetExhausted(_)
            | Error::DegreeEscalationExhausted { .. }
            | Error::MonoidSearchExhausted { .. }
            | Error::InjectivityScreenFailed => 3,
            Error::NotInverse(_)
            | Error::StepVerificationFailed(_)
            | Error::VerificationFailed(_) => 4,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
