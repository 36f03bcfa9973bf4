use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("not a valid generator matrix: {0}")]
    InvalidGenerator(String),

    #[error("code length {n} exceeds the supported limit of {limit}")]
    LengthLimit { n: usize, limit: usize },

    #[error(
        "dimension {k} exceeds the exhaustive enumeration limit of {limit}; \
         use the tailbiting trellis enumerator or a catalog entry"
    )]
    EnumerationLimit { k: usize, limit: usize },

    #[error("input is not a valid [{n},{k}] enumerator")]
    InvalidEnumerator { n: usize, k: usize },

    #[error("secrecy-gain reduction requires a formally self-dual enumerator")]
    NotFormallySelfDual,

    #[error("enumerator is not even formally self-dual")]
    NotEvenFormallySelfDual,

    #[error("tailbiting requires k >= m+1 (k = {k}, m = {m})")]
    TailbitingLength { k: usize, m: usize },

    #[error("invalid convolutional code: {0}")]
    InvalidConvolutional(String),

    #[error("trellis state budget exceeded: memory {m} > {limit}")]
    StateBudget { m: usize, limit: usize },

    #[error("{name} is outside its domain: {detail}")]
    Domain { name: &'static str, detail: String },

    #[error("tau = {0} is below 1e-3; use modular reflection Xi(tau) = Xi(1/tau)")]
    UseReflection(f64),

    #[error("lattice dimension {n} exceeds the brute-force oracle limit of {limit}")]
    OracleDimension { n: usize, limit: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn domain(name: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            name,
            detail: detail.into(),
        }
    }
}
