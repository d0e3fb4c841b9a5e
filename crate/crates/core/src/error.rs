use thiserror::Error;

use crate::scene::ValidationReport;

#[derive(Debug, Error)]
pub enum Error {
    #[error("scene parse error: {0}")]
    Parse(String),

    #[error("invalid scene: {0}")]
    Invalid(ValidationReport),

    #[error("viewpoint ({x}, {y}) is not in the open space")]
    OutsideOpenSpace { x: f64, y: f64 },

    #[error("ray count must be even and at least 8, got {0}")]
    BadRayCount(usize),

    #[error("NO_NODES: grid has no viewpoints inside the open space")]
    NoNodes,

    #[error("NO_WINDOW: field has no complete 3x3 window of data")]
    NoWindow,

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("raster format error: {0}")]
    Raster(String),

    #[error("GRID_MISMATCH: {0}")]
    GridMismatch(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
