use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("missing exponent `{name}` required by {what}")]
    MissingExponent { name: &'static str, what: &'static str },

    #[error("exponent `{name}` = {value} outside the allowed domain (0, 50]")]
    ExponentOutOfDomain { name: &'static str, value: f64 },

    #[error("exponents do not match the occupied shells of Z = {z}")]
    PresenceMismatch { z: u32 },

    #[error("atomic number {0} outside the supported range 2..=10")]
    AtomicNumber(u32),

    #[error("nuclear charge must be positive, got {0}")]
    NuclearCharge(u32),

    #[error("invalid p-shell assignment: {0}")]
    Assignment(String),

    #[error("quadrature did not converge on [{a}, {b}]: estimate {value:e} with error {error:e}")]
    Quadrature { a: f64, b: f64, value: f64, error: f64 },

    #[error("invalid option: {0}")]
    InvalidOption(String),

    #[error("unknown output format `{0}` (expected text, csv or json)")]
    UnknownFormat(String),

    #[error("malformed report: {0}")]
    Report(String),
}
