//! Continuous collision detection for composite quadric models.
//!
//! A composite quadric model (CQM) is a solid bounded by planar or quadric
//! patches whose edges are straight-line or conic segments, described by a
//! CSG tree over quadric and plane half-spaces plus an explicit boundary
//! element list, and moved by a rational motion matrix. Given two CQMs that
//! are separate at the start of the time interval, the solver reports either
//! collision-free or the first contact instant and contact point.
//!
//! The computation is exact: polynomials keep arbitrary-precision rational
//! (or sqrt-2 extension) coefficients, candidate instants come from real-root
//! isolation of resultants and discriminants, and contact classification at
//! rational instants runs in exact arithmetic.

pub mod scalar;
pub mod poly;
pub mod roots;
pub mod linalg;
pub mod motion;
pub mod pencil;
pub mod model;
pub mod ccd;
pub mod scene;
pub mod report;
pub mod oracle;

pub use scalar::{Ext, Rat, Scalar};
