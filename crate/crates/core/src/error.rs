use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("presentation mismatch: {left} vs {right}")]
    PresentationMismatch { left: String, right: String },

    #[error("letter `{letter}` is not a generator of {algebra}")]
    InvalidLetter { letter: String, algebra: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),

    #[error("representation {rep} cannot evaluate elements of {algebra}")]
    RepresentationMismatch { rep: String, algebra: String },

    #[error("cutoff too small: monomial {monomial} has no nonzero interior column")]
    CutoffTooSmall { monomial: String },

    #[error("truncated |x|^2 is singular: smallest eigenvalue {min_eigenvalue:e}")]
    Singular { min_eigenvalue: f64 },

    #[error("fiber condition violated: {0}")]
    FiberViolation(String),

    #[error("maps are not composable: {0}")]
    NotComposable(String),

    #[error("homomorphism is not well defined: {0}")]
    IllDefinedHom(String),

    #[error("inconsistent ranks: {0}")]
    InconsistentRanks(String),

    #[error("six-term pattern not applicable: {0}")]
    PatternNotApplicable(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
