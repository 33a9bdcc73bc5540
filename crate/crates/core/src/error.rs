use thiserror::Error;

/// Errors raised by the symbolic, numeric and certification layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("words of different lengths cannot be compared ({0} vs {1})")]
    LengthMismatch(usize, usize),

    #[error("invalid letter {0:?}: words are over the alphabet {{0, 1}}")]
    InvalidLetter(char),

    #[error("a periodic sequence needs a nonempty period")]
    EmptyPeriod,

    #[error("not renormalizable")]
    NotRenormalizable,

    #[error("growth rate {0} is outside (1, 2]")]
    GrowthRateOutOfRange(String),

    #[error("polynomial {0} has no real root in (1, 2]")]
    NoLeadingRoot(String),

    #[error("defining polynomial must be monic up to sign, got leading coefficient {0}")]
    NonMonic(i64),

    #[error("orbit point within precision of the critical point after {bits} bits (step {step})")]
    PrecisionExhausted { step: usize, bits: u64 },

    #[error("periodicity of the itinerary could not be decided: {0}")]
    PeriodUndetected(String),

    #[error("Parry polynomials are only defined for words of positive cumulative sign ({0})")]
    NegativeSignWord(String),

    #[error("root finder did not converge within {0} iterations")]
    NonConvergence(usize),

    #[error("polynomial must have degree at least 1")]
    ConstantPolynomial,

    #[error("prefix of length {len} exceeds the context length {max}")]
    PrefixTooLong { len: usize, max: usize },

    #[error("recorded margin {margin} is below the requested epsilon {epsilon}")]
    MarginInsufficient { margin: f64, epsilon: f64 },

    #[error("|z| = {0} is numerically indistinguishable from 1")]
    AmbiguousModulus(f64),

    #[error("precondition violated: {0}")]
    Domain(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
