use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid bracket: {0}")]
    InvalidBracket(String),
    #[error("invalid interval {0}")]
    InvalidInterval(String),
    #[error("zero polynomial has no isolated roots")]
    ZeroPolynomial,
    #[error("free particle not supported")]
    FreeParticle,
    #[error("pole structure undefined for g ≤ 0")]
    NonPositiveCoupling,
    #[error("entire potential has no finite poles")]
    NoFinitePoles,
    #[error("potential truncated at order {available}: coefficient v_{missing} is required")]
    PotentialTooShort { available: usize, missing: usize },
    #[error("series too short: c_{requested} requested but table stops at c_{available}")]
    SeriesTooShort { requested: usize, available: usize },
    #[error("Hankel determinant needs the series up to c_{required}, table stops at c_{available}")]
    TableTooShort { required: usize, available: usize },
    #[error("Padé system singular at this E")]
    PadeSingular,
    #[error("no eigenvalue isolated in bracket")]
    NoEigenvalue,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
