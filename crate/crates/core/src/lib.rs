//! Small complete arcs in Desarguesian projective planes PG(2,q).
//!
//! [`field`] and [`plane`] build the geometry, [`arc`] maintains arcs with
//! incremental coverage, [`greedy`] runs the two-stage randomized greedy
//! search, and [`bounds`] and [`tables`] compare recorded sizes against the
//! known bound functions.

pub mod arc;
pub mod bounds;
pub mod field;
pub mod greedy;
pub mod oracle;
pub mod plane;
pub mod record;
pub mod rng;
pub mod tables;

pub use arc::{is_saturating, verify_arc, ArcError, ArcSet, ArcVerification, Witness};
pub use bounds::{eval_bounds, min_bound, transforms, Bound, BoundSet, BoundsError, TransformValues};
pub use field::{Field, FieldElement, FieldError};
pub use greedy::{search, search_in_plane, SampleSize, SearchConfig, SearchError, SearchResult};
pub use oracle::brute_force_min_complete;
pub use plane::{Plane, PlaneError, PointIndex};
pub use record::{ArcRecord, RecordError};
pub use tables::{load_table, verify_table, FigureKind, TableEntry, TableError};

use thiserror::Error;

/// Any error raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Plane(#[from] PlaneError),
    #[error(transparent)]
    Arc(#[from] ArcError),
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error(transparent)]
    Bounds(#[from] BoundsError),
    #[error(transparent)]
    Table(#[from] TableError),
    #[error(transparent)]
    Record(#[from] RecordError),
}
