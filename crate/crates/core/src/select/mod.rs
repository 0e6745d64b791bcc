//! Landmark selectors.
//!
//! Every selector is a pure function of `(cloud, parameters, seed)`. Random
//! choices come from per-purpose streams of the seed (see [`crate::rng`]).

mod dense_core;
mod kmm;
mod maxmin;
mod ph;
mod random;

use std::fmt;
use std::str::FromStr;

pub use dense_core::{density_rho_k, select_dense_core, select_dense_core_from_rho};
pub use kmm::{
    kmeans_minus_minus, map_centers_to_points, select_kmm_landmarks, select_kmm_landmarks_with_state,
    split_k_j, KmmState, KMM_MAX_ITERATIONS, KMM_TOLERANCE,
};
pub use maxmin::{select_maxmin, select_maxmin_from};
pub use ph::{ph_outlierness, select_ph_landmarks, Outlierness, PhScores};
pub use random::select_random;

use crate::error::{Error, Result};

/// Which homology dimensions enter the PH outlierness score.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PhDims {
    /// Dimensions 0, 1 and 2.
    All,
    /// Dimension 1 only.
    Dim1,
}

impl PhDims {
    pub fn dims(self) -> &'static [usize] {
        match self {
            PhDims::All => &[0, 1, 2],
            PhDims::Dim1 => &[1],
        }
    }
}

/// Whether landmarks are taken from the low or the high end of the scores.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    /// Smallest outlierness first.
    Ascending,
    /// Largest outlierness first.
    Descending,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PhScoreMode {
    pub dims: PhDims,
    pub direction: Direction,
}

impl PhScoreMode {
    /// All dimensions, smallest scores first.
    pub const ALL_ASCENDING: PhScoreMode = PhScoreMode {
        dims: PhDims::All,
        direction: Direction::Ascending,
    };
    /// Dimension 1 only, largest scores first.
    pub const DIM1_DESCENDING: PhScoreMode = PhScoreMode {
        dims: PhDims::Dim1,
        direction: Direction::Descending,
    };

    /// `All` with `Ascending` and `Dim1` with `Descending` are the headline
    /// pairings; the other two combinations are accepted but non-standard.
    pub fn is_standard(self) -> bool {
        matches!(
            (self.dims, self.direction),
            (PhDims::All, Direction::Ascending) | (PhDims::Dim1, Direction::Descending)
        )
    }
}

impl fmt::Display for PhDims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PhDims::All => "all",
            PhDims::Dim1 => "dim1",
        })
    }
}

impl FromStr for PhDims {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(PhDims::All),
            "dim1" => Ok(PhDims::Dim1),
            _ => Err(Error::Parse(format!("unknown PH mode `{s}` (expected all|dim1)"))),
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Ascending => "asc",
            Direction::Descending => "desc",
        })
    }
}

impl FromStr for Direction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "asc" => Ok(Direction::Ascending),
            "desc" => Ok(Direction::Descending),
            _ => Err(Error::Parse(format!("unknown direction `{s}` (expected asc|desc)"))),
        }
    }
}

/// Identifies the selector and parameters that produced a [`SelectionResult`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Method {
    Random,
    Maxmin,
    DenseCore { k: usize },
    Ph { delta: f64, mode: PhScoreMode },
    Kmm { p_signal: f64, include_outliers: bool },
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::Random => write!(f, "random"),
            Method::Maxmin => write!(f, "maxmin"),
            Method::DenseCore { k } => write!(f, "dense-core[K={k}]"),
            Method::Ph { delta, mode } => {
                write!(f, "ph[delta={delta},dims={},dir={}]", mode.dims, mode.direction)
            }
            Method::Kmm {
                p_signal,
                include_outliers,
            } => write!(f, "kmm[p={p_signal},outliers={include_outliers}]"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SelectionResult {
    /// Selected point indices in selection order.
    pub landmarks: Vec<usize>,
    /// Points with fewer than two δ-neighbors, ascending. Only PH selection fills this.
    pub super_outliers: Vec<usize>,
    /// Per-point score (PH outlierness or ρ_K); `NaN` marks a super outlier.
    pub scores: Option<Vec<f64>>,
    pub method: Method,
}

impl SelectionResult {
    pub fn len(&self) -> usize {
        self.landmarks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.landmarks.is_empty()
    }
}

pub(crate) fn check_count(m: usize, n: usize) -> Result<()> {
    if m == 0 || m > n {
        return Err(Error::invalid(format!(
            "landmark count {m} must be in 1..={n}"
        )));
    }
    Ok(())
}
