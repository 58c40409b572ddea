use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid figure: {0}")]
    InvalidFigure(String),
    #[error("degenerate figure: {0}")]
    DegenerateFigure(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("internal consistency failure: {0}")]
    Consistency(String),
    #[error("not found: {0}")]
    NotFound(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
