use thiserror::Error;

use crate::geom::{Point, ViolationReport};

#[derive(Debug, Error)]
pub enum Error {
    #[error("empty point set")]
    Empty,
    #[error("angle {0} is not strictly between 0 and pi")]
    InvalidAngle(f64),
    #[error("points {0} and {1} lie on a horizontal line")]
    HorizontalPair(Point, Point),
    #[error("point set is not in general position: {0}")]
    Degenerate(ViolationReport),
    #[error("invalid fixture angles: need 0 < beta0 < beta1 < pi, got {0} and {1}")]
    FixtureAngles(f64, f64),
    #[error("sweep already consumed every event")]
    EndOfSchedule,
    #[error("internal consistency error: {0}")]
    Inconsistent(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Errors caused by the caller's input rather than by this library.
    pub fn is_input_error(&self) -> bool {
        !matches!(self, Error::Inconsistent(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
