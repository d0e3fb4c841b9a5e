//! Isovist fields over 2D open spaces and three ways of reading structure
//! out of them: networks of lines of longest depth, ridges of the maximum
//! diametric length field, and medial-axis skeletons traced as ridges of the
//! minimum radial length field.

pub mod error;
pub mod field;
pub mod geometry;
pub mod isovist;
pub mod morphology;
mod parallel;
pub mod raster;
pub mod render;
pub mod rope;
pub mod scene;
pub mod vector;

pub use error::{Error, Result};
pub use geometry::Point;
pub use isovist::{MeasureKind, MeasureRecord, RadialProfile};
pub use scene::{load_scene, Scene};
