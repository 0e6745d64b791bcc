use rand::seq::SliceRandom;
use rayon::prelude::*;

use crate::cloud::{DistanceMatrix, Euclidean, Metric, PointCloud};
use crate::error::{Error, Result};
use crate::rng::{stream, Stream};
use crate::vr::local::max_finite_bar;

use super::{check_count, Direction, Method, PhDims, PhScoreMode, SelectionResult};

/// Local PH outlierness of one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Outlierness {
    /// Longest finite bar of the Rips filtration on the δ-neighborhood.
    Score(f64),
    /// Fewer than two points within δ.
    SuperOutlier,
}

impl Outlierness {
    pub fn score(self) -> Option<f64> {
        match self {
            Outlierness::Score(s) => Some(s),
            Outlierness::SuperOutlier => None,
        }
    }

    pub fn is_super_outlier(self) -> bool {
        matches!(self, Outlierness::SuperOutlier)
    }
}

fn check_delta(delta: f64) -> Result<()> {
    if !(delta > 0.0 && delta.is_finite()) {
        return Err(Error::invalid(format!("delta must be positive, got {delta}")));
    }
    Ok(())
}

fn outlierness_unchecked(cloud: &PointCloud, y: usize, delta: f64, dims: PhDims) -> Outlierness {
    let center = cloud.point(y);
    let ball: Vec<usize> = (0..cloud.len())
        .filter(|&j| j != y && Euclidean.distance(center, cloud.point(j)) <= delta)
        .collect();
    if ball.len() <= 1 {
        return Outlierness::SuperOutlier;
    }
    let local = DistanceMatrix::from_fn(ball.len(), |a, b| {
        Euclidean.distance(cloud.point(ball[a]), cloud.point(ball[b]))
    });
    Outlierness::Score(max_finite_bar(&local, dims.dims()))
}

/// PH outlierness of point `y`: the longest finite bar, over the chosen
/// dimensions, of the Rips filtration on its δ-neighborhood (center
/// excluded). Points with at most one neighbor are super outliers.
pub fn ph_outlierness(cloud: &PointCloud, y: usize, delta: f64, dims: PhDims) -> Result<Outlierness> {
    if y >= cloud.len() {
        return Err(Error::IndexOutOfRange {
            index: y,
            len: cloud.len(),
        });
    }
    check_delta(delta)?;
    Ok(outlierness_unchecked(cloud, y, delta, dims))
}

/// Outlierness of every point of a cloud. Scores are deterministic, so one
/// evaluation serves any number of tie-shuffled selections.
#[derive(Debug, Clone, PartialEq)]
pub struct PhScores {
    scores: Vec<Outlierness>,
    delta: f64,
    dims: PhDims,
}

impl PhScores {
    /// Scores all points on the current rayon pool; results are gathered by index.
    pub fn compute(cloud: &PointCloud, delta: f64, dims: PhDims) -> Result<Self> {
        check_delta(delta)?;
        let scores = (0..cloud.len())
            .into_par_iter()
            .map(|y| outlierness_unchecked(cloud, y, delta, dims))
            .collect();
        Ok(PhScores { scores, delta, dims })
    }

    pub fn scores(&self) -> &[Outlierness] {
        &self.scores
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn dims(&self) -> PhDims {
        self.dims
    }

    pub fn super_outliers(&self) -> Vec<usize> {
        self.scores
            .iter()
            .enumerate()
            .filter(|(_, s)| s.is_super_outlier())
            .map(|(i, _)| i)
            .collect()
    }

    /// Orders non-super-outliers by score in `direction`, every block of equal
    /// scores shuffled by the seed, and appends shuffled super outliers only
    /// when `m` exceeds the number of scored points.
    pub fn select(&self, m: usize, direction: Direction, seed: u64) -> Result<SelectionResult> {
        let n = self.scores.len();
        check_count(m, n)?;
        let mut scored: Vec<(usize, f64)> = self
            .scores
            .iter()
            .enumerate()
            .filter_map(|(i, s)| s.score().map(|v| (i, v)))
            .collect();
        scored.shuffle(&mut stream(seed, Stream::TieShuffle));
        match direction {
            Direction::Ascending => scored.sort_by(|a, b| a.1.total_cmp(&b.1)),
            Direction::Descending => scored.sort_by(|a, b| b.1.total_cmp(&a.1)),
        }
        let mut landmarks: Vec<usize> = scored.iter().take(m).map(|&(i, _)| i).collect();
        let super_outliers = self.super_outliers();
        if landmarks.len() < m {
            let mut tail = super_outliers.clone();
            tail.shuffle(&mut stream(seed, Stream::SuperOutlierShuffle));
            landmarks.extend(tail.into_iter().take(m - landmarks.len()));
        }
        Ok(SelectionResult {
            landmarks,
            super_outliers,
            scores: Some(
                self.scores
                    .iter()
                    .map(|s| s.score().unwrap_or(f64::NAN))
                    .collect(),
            ),
            method: Method::Ph {
                delta: self.delta,
                mode: PhScoreMode {
                    dims: self.dims,
                    direction,
                },
            },
        })
    }
}

/// PH landmarks: score every point, then take the `m` best in the mode's
/// direction, super outliers last.
pub fn select_ph_landmarks(
    cloud: &PointCloud,
    m: usize,
    delta: f64,
    mode: PhScoreMode,
    seed: u64,
) -> Result<SelectionResult> {
    check_count(m, cloud.len())?;
    PhScores::compute(cloud, delta, mode.dims)?.select(m, mode.direction, seed)
}
