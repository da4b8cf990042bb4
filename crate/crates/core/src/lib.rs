//! Collections of simple closed curves in general position, represented as
//! 4-regular plane graphs.
//!
//! The crate validates arrangements (general position, unique face
//! incidence, the simple Venn property), certifies vertex connectivity with
//! explicit disjoint paths and separators, finds Hamilton cycles, and extends
//! an `n`-Venn diagram by one curve through a Hamilton cycle of its dual.

pub mod arr;
pub mod connectivity;
pub mod dual;
pub mod generators;
pub mod hamilton;
pub mod map;
pub mod render;
pub mod validate;

pub use map::{Adjacency, BuildError, Curve, CurveError, CurveSet, Dart, Face, PlaneGraph, Point};
