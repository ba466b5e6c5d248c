//! Instance and cover files, random instances and SVG output.

mod formats;
mod gen;
mod svg;

use std::path::PathBuf;

use thiserror::Error;

use crate::geom::GeomError;

pub use formats::{emit_cover, emit_instance, event_json, parse_cover, parse_instance, parse_rational, rational_string, Instance};
pub use gen::{gen_clustered, gen_instance, gen_scattered, gen_segments};
pub use svg::{render_cover, trace_frames, write_frames};

/// Environment variable naming the default ray engine.
pub const ENGINE_ENV: &str = "CONVEXIFY_ENGINE";

#[derive(Debug, Error)]
pub enum IoError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("{0}")]
    Schema(String),
    #[error("polygon {0}: {1}")]
    InvalidPolygon(usize, GeomError),
    #[error("segment {0}: {1}")]
    InvalidSegment(usize, GeomError),
    #[error("polygons {0} and {1} intersect")]
    Overlap(usize, usize),
    #[error("element {0}: bad rational {1:?}")]
    BadRational(usize, String),
    #[error("stated area {stated} differs from computed area {computed}")]
    AreaMismatch { stated: String, computed: String },
    #[error("infeasible generator parameters: {0}")]
    Infeasible(String),
    #[error("cannot write {0}: {1}")]
    Write(PathBuf, std::io::Error),
}
