//! Exact computational geometry on half-translation surfaces.
//!
//! The crate builds surfaces from glued rational polygons (or square-tiled
//! origamis), enumerates saddle connections up to a length bound, straightens
//! arcs to flat geodesics with exact predicates, and assembles the saddle
//! connection graph, the graph of slopes, ladder paths, and the interval/slice
//! quasitree structure, emitting machine-checkable certificates for the
//! quantitative constants of each construction.
//!
//! Start with the runnable examples (`cargo run --example ladder_figure`,
//! `cargo run --example quasitree_slices`, ...) or the `saddleconn` binary.
//!
//! Distance semantics: graphs here are finite truncations of infinite graphs,
//! and BFS distances in a truncation are upper bounds of the true distances.
//! Certificates therefore distinguish claims proved outright by found paths
//! or exact oracles (`proves-true-claim`) from claims about the computed
//! shadow (`at-truncation`).

pub mod arc;
pub mod cert;
pub mod farey;
pub mod geom;
pub mod graph;
pub mod io;
pub mod ladder;
pub mod quasitree;
pub mod saddle;
pub mod suite;
pub mod surface;
pub mod tri;

pub use arc::{ArcSide, BicornArc, CombinatorialArc};
pub use geom::{Pt, Q};
pub use saddle::{SaddleConnection, SegInTri, Slope};
pub use surface::{Gluing, Mat2, Origami, Polygon, Surface};
pub use tri::Triangulation;
