//! Witness rectangle graphs.
//!
//! Two vertices are adjacent when the open axis-parallel box they span
//! contains a witness point. This crate builds such graphs (positive,
//! negative and mixed-sign witnesses), analyses their structure, recognises
//! and draws realizable graphs, and constructs stabbing sets for the boxes
//! spanned by a point set.

pub mod analyze;
pub mod build;
pub mod gen;
pub mod geom;
pub mod graph;
pub mod io;
pub mod realize;
pub mod separate;
pub mod stab;

pub use build::{build_oracle, build_rig, build_sweep, Mode};
pub use geom::{PlanePoint, Scene};
pub use graph::Graph;
