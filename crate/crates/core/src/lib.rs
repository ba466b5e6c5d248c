//! Minimum-area cover of disjoint simple polygons by disjoint convex polygons.

pub mod convexify;
pub mod fixtures;
pub mod geom;
pub mod hull_chain;
pub mod io;
pub mod oracle;
pub mod ray_engine;

pub use convexify::{convexify, convexify_segments, convexify_with, Cover, CoverElement, Options, RunStats};
pub use geom::{ExactScalar, GeomError, Orientation, Point, Segment, SimplePolygon};
pub use hull_chain::{ConvexPoly, HullError, MergeOutcome};
pub use ray_engine::{EngineKind, Hit, Obstacle, Scene};
