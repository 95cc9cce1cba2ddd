use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("function vanishes near x = {x}")]
    VanishingFunction { x: f64 },
    #[error("order {requested} exceeds available order {available}")]
    OrderOutOfRange { requested: usize, available: usize },
    #[error("potential jet too short: need {needed} derivatives, have {available}")]
    InsufficientJet { needed: usize, available: usize },
    #[error("least-squares system is rank deficient at basis index {index}")]
    RankDeficient { index: usize },
    #[error("initial value problem failed: {0}")]
    Ivp(String),
    #[error("complex potentials are not supported here: {0}")]
    ComplexUnsupported(String),
    #[error("point (x = {x}, t = {t}) is outside the kernel domain")]
    OutsideDomain { x: f64, t: f64 },
    #[error("fingerprint mismatch: kernel was built for a different basis family")]
    FingerprintMismatch,
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

impl Error {
    /// True for errors caused by malformed configuration or input data.
    pub fn is_config(&self) -> bool {
        matches!(
            self,
            Error::InvalidInput(_)
                | Error::OrderOutOfRange { .. }
                | Error::InsufficientJet { .. }
                | Error::OutsideDomain { .. }
                | Error::FingerprintMismatch
                | Error::Io(_)
                | Error::Json(_)
                | Error::Csv(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
