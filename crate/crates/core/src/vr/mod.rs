//! Vietoris–Rips filtrations and their persistent homology in dimensions 0–2.

mod filtration;
pub mod local;
mod persistence;

pub use filtration::{build_vr_filtration, Filtration, Simplex, MAX_SIMPLEX_DIM};
pub use persistence::{barcode, compute_persistence, PersistencePairing};

use crate::barcode::Barcode;
use crate::cloud::DistanceMatrix;
use crate::error::Result;

/// Builds the filtration with `max_dim = max(dims) + 1` and returns its barcode.
pub fn vr_barcode(dist: &DistanceMatrix, eps_max: f64, dims: &[usize]) -> Result<Barcode> {
    let max_dim = dims.iter().copied().max().unwrap_or(0) + 1;
    let f = build_vr_filtration(dist, max_dim.min(MAX_SIMPLEX_DIM), eps_max)?;
    barcode(&compute_persistence(&f), &f, dims)
}
