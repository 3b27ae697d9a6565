use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("grade {0} is outside [0, 1]")]
    GradeOutOfRange(f64),

    #[error("unknown quantale `{0}` (expected boolean, godel, lukasiewicz or product)")]
    UnknownQuantale(String),

    #[error("duplicate label `{0}` in index set")]
    DuplicateLabel(String),

    #[error("unknown element `{0}`")]
    UnknownElement(String),

    #[error("cannot compose: {0}")]
    CompositionShape(String),

    #[error("relations use different quantales ({0} vs {1})")]
    QuantaleMismatch(String, String),

    #[error("fuzzy sets live on different universes")]
    UniverseMismatch,

    #[error("size guard exceeded: {what} has {size} elements (limit {limit})")]
    SizeGuard {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("proportion undefined: restrictor `{0}` has sigma-count 0")]
    ZeroDenominator(String),

    #[error("invalid possibility distribution: {0}")]
    InvalidDistribution(String),

    #[error("invalid grade lattice: {0}")]
    InvalidLattice(String),

    #[error("unknown word `{0}`")]
    UnknownToken(String),

    #[error("no parse: failed at token {position}{}", .found.as_ref().map(|w| format!(" (`{w}`)")).unwrap_or_default())]
    NoParse {
        position: usize,
        found: Option<String>,
    },

    #[error("ambiguous parse: {0} derivations")]
    AmbiguousParse(usize),

    #[error("wrong evaluator: {0}")]
    WrongEvaluator(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("lexicon: {0}")]
    Lexicon(String),

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
