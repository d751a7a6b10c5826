use thiserror::Error;

/// Everything that can go wrong while building spectra, cycles or reports.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("requested {requested} levels but the grid resolves at most {max}")]
    TooManyLevels { requested: usize, max: usize },

    #[error("eigenvalue bisection did not converge for level {level}")]
    NoConvergence { level: usize },

    #[error("no root bracket found for the {stroke} corner")]
    Bracket { stroke: &'static str },

    #[error("cycle infeasible: {0}")]
    Infeasible(String),

    #[error("expected a {expected} stroke, got {got}")]
    WrongStrokeKind { expected: &'static str, got: &'static str },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn invalid(name: &'static str, value: f64, reason: &'static str) -> Self {
        Error::InvalidParameter { name, value, reason }
    }
}
