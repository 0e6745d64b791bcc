//! Landmark selection for persistent homology on noisy point clouds.
//!
//! Points are scored by the persistent homology of the Vietoris–Rips complex
//! on their δ-neighborhoods, and landmarks are picked by score. Random,
//! maxmin, dense-core and k-means-- selectors are provided for comparison,
//! along with synthetic signal-plus-noise datasets and a small experiment
//! harness.

// NaN must fail parameter checks, so they are written as negated comparisons.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod barcode;
pub mod cloud;
pub mod data;
pub mod error;
pub mod experiment;
pub mod io;
pub mod rng;
pub mod select;
pub mod union_find;
pub mod vr;

pub use barcode::{Barcode, Interval, MAX_HOMOLOGY_DIM};
pub use cloud::{delta_neighborhood, pairwise_distances, DistanceMatrix, Euclidean, Label, Metric, PointCloud};
pub use data::{DataParams, DatasetKind, LaplaceSpread, SyntheticSample};
pub use error::{Error, Result};
pub use select::{Direction, Method, PhDims, PhScoreMode, PhScores, SelectionResult};
pub use vr::vr_barcode;
