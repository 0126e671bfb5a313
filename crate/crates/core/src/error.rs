use std::path::PathBuf;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("matrix is singular or ill-conditioned (condition estimate {condition:.3e}, cap {cap:.3e})")]
    IllConditioned { condition: f64, cap: f64 },

    #[error("symbol vanishes at mode {mode}")]
    VanishingSymbol { mode: i64 },

    #[error("shift {zeta} lies on the symbol of the constant-coefficient part (mode {mode})")]
    ShiftOnSymbol { zeta: num_complex::Complex64, mode: i64 },

    #[error("no admissible shift found among the first {tried} candidates")]
    NoShift { tried: usize },

    #[error("matrix is not Hermitian (asymmetry {asymmetry:.3e})")]
    NotHermitian { asymmetry: f64 },

    #[error("jump function vanishes on the circle (min |g| = {min_modulus:.3e})")]
    VanishingJump { min_modulus: f64 },

    #[error("point {0} lies on the unit circle; a boundary side is required")]
    OnContour(num_complex::Complex64),

    #[error("eigensolver failed: {0}")]
    Eigen(String),

    #[error("solver failed at N = {n}: {source}")]
    AtSize {
        n: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("config error: {0}")]
    Config(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// True for errors caused by bad input or configuration rather than a
    /// numerical failure.
    pub fn is_config(&self) -> bool {
        match self {
            Error::Config(_) | Error::InvalidArgument(_) => true,
            Error::AtSize { source, .. } => source.is_config(),
            _ => false,
        }
    }
}
