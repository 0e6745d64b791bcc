//! Point clouds, distances and δ-neighborhoods.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Ground-truth tag of a synthetic point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Label {
    Signal,
    Noise,
}

impl Label {
    pub fn as_str(self) -> &'static str {
        match self {
            Label::Signal => "signal",
            Label::Noise => "noise",
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Label {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "signal" => Ok(Label::Signal),
            "noise" => Ok(Label::Noise),
            other => Err(Error::Parse(format!("unknown label `{other}`"))),
        }
    }
}

/// `n` points in R^d, optionally labeled.
#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud {
    dim: usize,
    coords: Vec<f64>,
    labels: Option<Vec<Label>>,
}

impl PointCloud {
    /// Builds a cloud from row vectors. All rows must share one dimension `d >= 1`.
    pub fn new(points: Vec<Vec<f64>>) -> Result<Self> {
        let dim = points.first().map_or(0, Vec::len);
        if !points.is_empty() && dim == 0 {
            return Err(Error::invalid("points must have dimension >= 1"));
        }
        let mut coords = Vec::with_capacity(points.len() * dim);
        for p in &points {
            if p.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: p.len(),
                });
            }
            coords.extend_from_slice(p);
        }
        Ok(PointCloud {
            dim,
            coords,
            labels: None,
        })
    }

    /// Builds a cloud from a flat row-major buffer.
    pub fn from_flat(dim: usize, coords: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("points must have dimension >= 1"));
        }
        if !coords.len().is_multiple_of(dim) {
            return Err(Error::invalid(format!(
                "buffer of length {} is not a multiple of dimension {dim}",
                coords.len()
            )));
        }
        Ok(PointCloud {
            dim,
            coords,
            labels: None,
        })
    }

    pub fn with_labels(mut self, labels: Vec<Label>) -> Result<Self> {
        if labels.len() != self.len() {
            return Err(Error::invalid(format!(
                "{} labels for {} points",
                labels.len(),
                self.len()
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.coords.len().checked_div(self.dim).unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn points(&self) -> impl ExactSizeIterator<Item = &[f64]> + '_ {
        // chunks_exact panics on 0; an empty cloud has dim 0 only when coords is empty
        self.coords.chunks_exact(self.dim.max(1))
    }

    pub fn labels(&self) -> Option<&[Label]> {
        self.labels.as_deref()
    }

    pub fn label(&self, i: usize) -> Option<Label> {
        self.labels.as_ref().map(|l| l[i])
    }

    pub fn signal_count(&self) -> Option<usize> {
        self.labels
            .as_ref()
            .map(|l| l.iter().filter(|&&x| x == Label::Signal).count())
    }

    /// New cloud with every coordinate multiplied by `c`.
    pub fn scaled(&self, c: f64) -> PointCloud {
        PointCloud {
            dim: self.dim,
            coords: self.coords.iter().map(|x| x * c).collect(),
            labels: self.labels.clone(),
        }
    }

    /// New cloud whose point `i` is the old point `order[i]`.
    pub fn reordered(&self, order: &[usize]) -> PointCloud {
        let mut coords = Vec::with_capacity(order.len() * self.dim);
        for &i in order {
            coords.extend_from_slice(self.point(i));
        }
        PointCloud {
            dim: self.dim,
            coords,
            labels: self
                .labels
                .as_ref()
                .map(|l| order.iter().map(|&i| l[i]).collect()),
        }
    }
}

/// Distance function on coordinate vectors.
pub trait Metric {
    fn distance(&self, a: &[f64], b: &[f64]) -> f64;
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Euclidean;

impl Metric for Euclidean {
    fn distance(&self, a: &[f64], b: &[f64]) -> f64 {
        a.iter()
            .zip(b)
            .map(|(x, y)| (x - y) * (x - y))
            .sum::<f64>()
            .sqrt()
    }
}

/// Euclidean distance between two coordinate vectors of equal length.
pub fn euclidean_distance(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch {
            expected: a.len(),
            found: b.len(),
        });
    }
    Ok(Euclidean.distance(a, b))
}

/// Dense symmetric distance matrix with zero diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    n: usize,
    data: Vec<f64>,
}

impl DistanceMatrix {
    /// Validates and wraps an explicit matrix.
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for r in &rows {
            if r.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: r.len(),
                });
            }
            data.extend_from_slice(r);
        }
        for i in 0..n {
            if data[i * n + i] != 0.0 {
                return Err(Error::invalid(format!("nonzero diagonal at {i}")));
            }
            for j in 0..n {
                let d = data[i * n + j];
                if !(d >= 0.0) || d != data[j * n + i] {
                    return Err(Error::invalid(format!(
                        "entry ({i},{j}) is negative, NaN or asymmetric"
                    )));
                }
            }
        }
        Ok(DistanceMatrix { n, data })
    }

    /// Builds a matrix from a symmetric distance function evaluated on `i < j`.
    pub(crate) fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let d = f(i, j);
                data[i * n + j] = d;
                data[j * n + i] = d;
            }
        }
        DistanceMatrix { n, data }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    /// The matrix restricted to `indices`, in the given order.
    pub fn submatrix(&self, indices: &[usize]) -> DistanceMatrix {
        let m = indices.len();
        let mut data = Vec::with_capacity(m * m);
        for &i in indices {
            let row = self.row(i);
            data.extend(indices.iter().map(|&j| row[j]));
        }
        DistanceMatrix { n: m, data }
    }

    /// Largest pairwise distance; zero for fewer than two points.
    pub fn diameter(&self) -> f64 {
        self.data.iter().copied().fold(0.0, f64::max)
    }

    /// `min_i max_j d(i, j)`: the smallest radius at which some vertex is
    /// adjacent to every other vertex.
    pub fn enclosing_radius(&self) -> f64 {
        (0..self.n)
            .map(|i| self.row(i).iter().copied().fold(0.0, f64::max))
            .fold(f64::INFINITY, f64::min)
    }

    pub fn scaled(&self, c: f64) -> DistanceMatrix {
        DistanceMatrix {
            n: self.n,
            data: self.data.iter().map(|d| d * c).collect(),
        }
    }
}

/// All pairwise Euclidean distances of a nonempty cloud.
pub fn pairwise_distances(cloud: &PointCloud) -> Result<DistanceMatrix> {
    pairwise_distances_with(cloud, &Euclidean)
}

pub fn pairwise_distances_with<M: Metric>(cloud: &PointCloud, metric: &M) -> Result<DistanceMatrix> {
    if cloud.is_empty() {
        return Err(Error::invalid("cannot compute distances of an empty cloud"));
    }
    Ok(DistanceMatrix::from_fn(cloud.len(), |i, j| {
        metric.distance(cloud.point(i), cloud.point(j))
    }))
}

/// Indices `j != y` with `d(j, y) <= delta` (closed ball, center excluded),
/// in increasing index order.
pub fn delta_neighborhood(dist: &DistanceMatrix, y: usize, delta: f64) -> Result<Vec<usize>> {
    if y >= dist.len() {
        return Err(Error::IndexOutOfRange {
            index: y,
            len: dist.len(),
        });
    }
    if !(delta > 0.0) {
        return Err(Error::invalid(format!("delta must be positive, got {delta}")));
    }
    Ok(neighborhood_unchecked(dist, y, delta))
}

pub(crate) fn neighborhood_unchecked(dist: &DistanceMatrix, y: usize, delta: f64) -> Vec<usize> {
    dist.row(y)
        .iter()
        .enumerate()
        .filter(|&(j, &d)| j != y && d <= delta)
        .map(|(j, _)| j)
        .collect()
}
