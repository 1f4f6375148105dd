use thiserror::Error;

/// Errors raised by the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("framing variable w[{0}] has no value at this evaluation point")]
    MissingFraming(String),

    #[error("monomial {0} has an odd exponent; its square root is not rational at this point")]
    HalfPower(String),

    #[error("fixed part has negative coefficient {coeff} at {monomial}; not a dimension")]
    NegativeFixedPart { monomial: String, coeff: i64 },

    #[error("class undefined: character contains the torus-fixed term {0}")]
    FixedTerm(String),

    #[error("pole: factor {factor} vanishes with multiplicity {multiplicity}")]
    Pole { factor: String, multiplicity: i64 },

    #[error("series constant term {0} is not invertible here")]
    NonInvertible(String),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("result depends on the evaluation point: {0}")]
    PointDependent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
