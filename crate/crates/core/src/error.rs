use thiserror::Error;

use crate::arith::Rational;

#[derive(Debug, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,

    #[error("unsupported argument: {0}")]
    Unsupported(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("out of scope: {0}")]
    OutOfScope(String),

    #[error("eta product has fractional leading order {0}")]
    FractionalPower(Rational),

    #[error("series has non-invertible constant term")]
    NotInvertible,

    #[error("coefficient {index} of {form} is not available (requires an unlisted prime)")]
    Unavailable { form: String, index: usize },

    #[error("space M_{weight}({level}) is not supported by the catalog")]
    UnsupportedSpace { weight: u32, level: u64 },

    #[error("unknown form `{0}`")]
    UnknownForm(String),

    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),

    #[error("inconsistent linear system at row {row}")]
    Inconsistent { row: usize },

    #[error("target is not in M_{weight}({level}): exponent {exponent} has target {target} but combination gives {combination}")]
    NonMembership { weight: u32, level: u64, exponent: usize, target: Box<Rational>, combination: Box<Rational> },

    #[error("parse error in `{input}` at byte {position}: {message}")]
    Parse { input: String, position: usize, message: String },

    #[error("catalog error: {0}")]
    Catalog(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Toml(#[from] toml::de::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
