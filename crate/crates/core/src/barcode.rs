//! Persistence barcodes for homology dimensions 0, 1 and 2.

use crate::error::{Error, Result};

/// Highest homology dimension a [`Barcode`] stores.
pub const MAX_HOMOLOGY_DIM: usize = 2;

/// A half-open persistence interval `[birth, death)`. Essential classes have
/// `death == f64::INFINITY`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub birth: f64,
    pub death: f64,
}

impl Interval {
    pub fn new(birth: f64, death: f64) -> Self {
        debug_assert!(birth <= death);
        Interval { birth, death }
    }

    pub fn is_finite(&self) -> bool {
        self.death.is_finite()
    }

    pub fn persistence(&self) -> f64 {
        self.death - self.birth
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Barcode {
    bars: [Vec<Interval>; MAX_HOMOLOGY_DIM + 1],
}

impl Barcode {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds an interval. Zero-length intervals carry no persistence and are dropped.
    pub fn push(&mut self, dim: usize, interval: Interval) {
        assert!(dim <= MAX_HOMOLOGY_DIM, "homology dimension {dim} not stored");
        if interval.birth == interval.death {
            return;
        }
        self.bars[dim].push(interval);
    }

    pub fn intervals(&self, dim: usize) -> &[Interval] {
        self.bars.get(dim).map_or(&[], Vec::as_slice)
    }

    pub fn essential_count(&self, dim: usize) -> usize {
        self.intervals(dim).iter().filter(|i| !i.is_finite()).count()
    }

    pub fn is_empty(&self) -> bool {
        self.bars.iter().all(Vec::is_empty)
    }

    /// Sorts every dimension by (birth, death) so barcodes compare as multisets.
    pub fn normalize(&mut self) {
        for bars in &mut self.bars {
            bars.sort_by(|a, b| a.birth.total_cmp(&b.birth).then(a.death.total_cmp(&b.death)));
        }
    }

    pub fn scaled(&self, c: f64) -> Barcode {
        let mut out = Barcode::new();
        for (dim, bars) in self.bars.iter().enumerate() {
            out.bars[dim] = bars
                .iter()
                .map(|i| Interval::new(i.birth * c, i.death * c))
                .collect();
        }
        out
    }

    /// `(dim, interval)` pairs in dimension order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &Interval)> + '_ {
        self.bars
            .iter()
            .enumerate()
            .flat_map(|(d, bars)| bars.iter().map(move |i| (d, i)))
    }
}

/// The finite intervals of one dimension as `(birth, death)` pairs.
pub fn finite_bars(barcode: &Barcode, dim: usize) -> Result<Vec<(f64, f64)>> {
    if dim > MAX_HOMOLOGY_DIM {
        return Err(Error::invalid(format!("homology dimension {dim} out of range")));
    }
    Ok(barcode
        .intervals(dim)
        .iter()
        .filter(|i| i.is_finite())
        .map(|i| (i.birth, i.death))
        .collect())
}

/// Largest finite persistence among the given dimensions, or 0 if there is none.
pub fn max_finite_persistence(barcode: &Barcode, dims: &[usize]) -> f64 {
    dims.iter()
        .flat_map(|&d| barcode.intervals(d))
        .filter(|i| i.is_finite())
        .map(Interval::persistence)
        .fold(0.0, f64::max)
}
