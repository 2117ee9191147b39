use thiserror::Error;

use crate::pde::{GridField, SolveReport};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("point ({x}, {y}) is not in the upper half-plane")]
    InvalidPoint { x: f64, y: f64 },

    #[error("{context}: point ({x}, {y}) is outside the admissible domain")]
    DomainViolation { context: String, x: f64, y: f64 },

    #[error("level curve through ({x}, {y}) is not a graph over x (f_y = 0)")]
    LevelCurveDegenerate { x: f64, y: f64 },

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("{0} is a vertical surface, not a graph z = f(x, y)")]
    NotAGraph(&'static str),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("perturbation does not vanish on the boundary (max |b| = {0:e})")]
    BumpNotVanishing(f64),

    #[error("Newton iteration did not converge: {0}")]
    NonConvergence(Box<SolveReport>),

    #[error("singular Jacobian at iteration {}", .report.iterations)]
    SingularJacobian {
        iterate: Box<GridField>,
        report: Box<SolveReport>,
    },

    #[error("config error: {0}")]
    Config(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
