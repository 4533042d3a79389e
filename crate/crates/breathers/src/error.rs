use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{name} = {value} outside the admissible interval {interval}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        interval: &'static str,
    },

    #[error("{0}")]
    Incompatible(String),

    #[error("lambda = {re}{im:+}i is not in the admissible set {set}")]
    OffSpectrum { re: f64, im: f64, set: &'static str },

    #[error("pole at lambda = {0}; use the Laurent expansion instead")]
    Pole(f64),

    #[error("quadrature did not converge: achieved {achieved:e}, requested {requested:e}")]
    Quadrature { achieved: f64, requested: f64 },

    #[error("invalid grid: {0}")]
    Grid(String),

    #[error("eigensolver failure: {0}")]
    Eigen(String),

    #[error("discretization under-resolved: {reason}; try N >= {suggested}")]
    UnderResolved { reason: String, suggested: usize },

    #[error("chain relation violated: residual {0:e}")]
    Chain(f64),

    #[error("evolution blow-up at t = {t}: max amplitude {max_amp:e}")]
    BlowUp { t: f64, max_amp: f64 },

    #[error("growth fit failed: {0}")]
    Fit(String),

    #[error("io: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Io(e.to_string())
    }
}
