use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("series has constant term {0}, expected +1 or -1")]
    NonUnitConstantTerm(String),

    #[error("summand exponent {exponent} at n = {n} is negative")]
    NegativeExponent { n: i64, exponent: i64 },

    #[error("identity `{label}` fails at q^{index}")]
    IdentityMismatch { label: String, index: usize },

    #[error("coefficient q^{requested} requested but series is only known below q^{order}")]
    OrderExceeded { requested: usize, order: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("evaluation needs {needed} bits or terms, over the {limit}")]
    PrecisionUnderflow { needed: usize, limit: String },

    #[error("quadrature did not converge: {0}")]
    QuadratureFailure(String),

    #[error("outside the admissible region: {0}")]
    OutsideCone(String),

    #[error("could not serialize output: {0}")]
    Export(String),

    #[error("coefficients are not monotone: b({index}) > b({next})", next = index + 1)]
    HypothesisViolated { index: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
