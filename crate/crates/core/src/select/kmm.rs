//! k-means-- clustering with outlier removal, and its use for landmarks.

use rand::seq::index;
use rayon::prelude::*;

use crate::cloud::{Euclidean, Metric, PointCloud};
use crate::error::{Error, Result};
use crate::rng::{stream, Stream};

use super::{check_count, Method, SelectionResult};

/// Iteration stops once the objective changes by at most this much.
pub const KMM_TOLERANCE: f64 = 1e-4;
/// Iterations run while the counter is below this bound, i.e. at most 99.
pub const KMM_MAX_ITERATIONS: usize = 100;

#[derive(Debug, Clone, PartialEq)]
pub struct KmmState {
    /// Cluster means (not necessarily data points).
    pub centers: Vec<Vec<f64>>,
    /// The `j` points farthest from the centers in the last iteration, farthest first.
    pub outliers: Vec<usize>,
    /// All other points, ascending.
    pub retained: Vec<usize>,
    /// Sum of squared distances of retained points to their nearest center.
    pub objective: f64,
    /// Objective after each iteration.
    pub history: Vec<f64>,
}

fn nearest(p: &[f64], centers: &[Vec<f64>]) -> (usize, f64) {
    let mut best = (0, f64::INFINITY);
    for (c, center) in centers.iter().enumerate() {
        let d = Euclidean.distance(p, center);
        if d < best.1 {
            best = (c, d);
        }
    }
    best
}

/// k-means-- with `k` clusters and `j` outliers.
///
/// Centers start at `k` distinct random data points. Each iteration ranks the
/// points by distance to their nearest center, marks the `j` farthest as
/// outliers, moves every center to the mean of its remaining points (an empty
/// cluster keeps its center) and evaluates the objective on the remaining points.
pub fn kmeans_minus_minus(cloud: &PointCloud, k: usize, j: usize, seed: u64) -> Result<KmmState> {
    let n = cloud.len();
    if k == 0 || k + j > n {
        return Err(Error::invalid(format!(
            "need k >= 1 and k + j <= {n}, got k = {k}, j = {j}"
        )));
    }
    let dim = cloud.dim();
    let mut rng = stream(seed, Stream::KmmInit);
    let mut centers: Vec<Vec<f64>> = index::sample(&mut rng, n, k)
        .into_iter()
        .map(|i| cloud.point(i).to_vec())
        .collect();

    let mut history = Vec::new();
    let mut previous = -1.0;
    let mut outliers = Vec::new();
    let mut is_outlier = vec![false; n];
    let mut iteration = 1;
    let mut change = f64::INFINITY;
    while change > KMM_TOLERANCE && iteration < KMM_MAX_ITERATIONS {
        let assignment: Vec<(usize, f64)> = (0..n)
            .into_par_iter()
            .map(|i| nearest(cloud.point(i), &centers))
            .collect();
        let mut ranked: Vec<usize> = (0..n).collect();
        ranked.sort_by(|&a, &b| assignment[b].1.total_cmp(&assignment[a].1).then(a.cmp(&b)));
        outliers = ranked[..j].to_vec();
        is_outlier.iter_mut().for_each(|o| *o = false);
        for &o in &outliers {
            is_outlier[o] = true;
        }

        let mut sums = vec![vec![0.0; dim]; k];
        let mut counts = vec![0usize; k];
        for i in (0..n).filter(|&i| !is_outlier[i]) {
            let c = assignment[i].0;
            counts[c] += 1;
            for (s, x) in sums[c].iter_mut().zip(cloud.point(i)) {
                *s += x;
            }
        }
        for (c, center) in centers.iter_mut().enumerate() {
            if counts[c] > 0 {
                for (x, s) in center.iter_mut().zip(&sums[c]) {
                    *x = s / counts[c] as f64;
                }
            }
        }

        let objective: f64 = (0..n)
            .into_par_iter()
            .filter(|&i| !is_outlier[i])
            .map(|i| nearest(cloud.point(i), &centers).1.powi(2))
            .collect::<Vec<_>>()
            .iter()
            .sum();
        history.push(objective);
        change = (objective - previous).abs();
        previous = objective;
        iteration += 1;
    }

    let retained = (0..n).filter(|&i| !is_outlier[i]).collect();
    Ok(KmmState {
        centers,
        outliers,
        retained,
        objective: previous,
        history,
    })
}

/// Maps cluster centers to distinct data points drawn from `pool`.
///
/// Each round orders the unmapped centers by their distance to the nearest
/// pool point and assigns nearest points in that order until an assignment
/// repeats one made earlier in the round. The repeat is discarded, the
/// assignments before it are committed and leave the pool, and the round
/// starts over with the remaining centers.
pub fn map_centers_to_points(cloud: &PointCloud, centers: &[Vec<f64>], pool: &[usize]) -> Result<Vec<usize>> {
    let wanted = centers.len();
    let mut in_pool = vec![false; cloud.len()];
    for &p in pool {
        in_pool[p] = true;
    }
    let mut pool_size = pool.len();
    let closest = |c: &[f64], in_pool: &[bool]| -> Option<(usize, f64)> {
        let mut best: Option<(usize, f64)> = None;
        for (i, _) in in_pool.iter().enumerate().filter(|(_, &p)| p) {
            let d = Euclidean.distance(c, cloud.point(i));
            if best.is_none_or(|(_, bd)| d < bd) {
                best = Some((i, d));
            }
        }
        best
    };

    let mut remaining: Vec<usize> = (0..wanted).collect();
    let mut nearest: Vec<Option<(usize, f64)>> = vec![None; wanted];
    let mut mapped = Vec::with_capacity(wanted);
    let mut taken = vec![false; cloud.len()];
    while mapped.len() < wanted {
        if pool_size == 0 {
            return Err(Error::PoolExhausted {
                mapped: mapped.len(),
                wanted,
            });
        }
        for &c in &remaining {
            if nearest[c].is_none_or(|(p, _)| !in_pool[p]) {
                nearest[c] = closest(&centers[c], &in_pool);
            }
        }
        remaining.sort_by(|&a, &b| {
            let (da, db) = (nearest[a].unwrap().1, nearest[b].unwrap().1);
            da.total_cmp(&db).then(a.cmp(&b))
        });
        let mut committed = 0;
        for &c in &remaining {
            let p = nearest[c].unwrap().0;
            if taken[p] {
                break;
            }
            taken[p] = true;
            mapped.push(p);
            committed += 1;
        }
        for &c in &remaining[..committed] {
            let p = nearest[c].unwrap().0;
            in_pool[p] = false;
            pool_size -= 1;
        }
        remaining.drain(..committed);
    }
    Ok(mapped)
}

/// `k = round(p * m)` clamped to at least 1, and `j = m - k`.
pub fn split_k_j(m: usize, p_signal: f64) -> (usize, usize) {
    let k = ((p_signal * m as f64).round() as usize).clamp(1, m);
    (k, m - k)
}

/// k-means-- landmarks together with the clustering they came from.
pub fn select_kmm_landmarks_with_state(
    cloud: &PointCloud,
    m: usize,
    p_signal: f64,
    include_outliers: bool,
    seed: u64,
) -> Result<(SelectionResult, KmmState)> {
    check_count(m, cloud.len())?;
    if !(p_signal > 0.0 && p_signal <= 1.0) {
        return Err(Error::invalid(format!("p_signal must be in (0, 1], got {p_signal}")));
    }
    let (k, j) = split_k_j(m, p_signal);
    let state = kmeans_minus_minus(cloud, k, j, seed)?;
    let mut landmarks = map_centers_to_points(cloud, &state.centers, &state.retained)?;
    if include_outliers {
        landmarks.extend_from_slice(&state.outliers);
    }
    let result = SelectionResult {
        landmarks,
        super_outliers: Vec::new(),
        scores: None,
        method: Method::Kmm {
            p_signal,
            include_outliers,
        },
    };
    Ok((result, state))
}

/// k-means-- landmarks: `k` centers mapped to distinct data points, followed
/// by the `j` outliers when `include_outliers` is set.
pub fn select_kmm_landmarks(
    cloud: &PointCloud,
    m: usize,
    p_signal: f64,
    include_outliers: bool,
    seed: u64,
) -> Result<SelectionResult> {
    select_kmm_landmarks_with_state(cloud, m, p_signal, include_outliers, seed).map(|(r, _)| r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(xs: &[f64]) -> PointCloud {
        PointCloud::new(xs.iter().map(|&x| vec![x]).collect()).unwrap()
    }

    #[test]
    fn one_cluster_one_outlier() {
        let c = line(&[0.0, 0.1, 0.2, 10.0]);
        for seed in 0..8 {
            let s = kmeans_minus_minus(&c, 1, 1, seed).unwrap();
            assert_eq!(s.outliers, vec![3]);
            assert!((s.centers[0][0] - 0.1).abs() < 1e-12);
            assert_eq!(s.retained, vec![0, 1, 2]);
        }
    }

    #[test]
    fn zero_outliers_is_plain_means() {
        let c = line(&[1.0, 2.0, 6.0, 7.0]);
        let s = kmeans_minus_minus(&c, 1, 0, 3).unwrap();
        assert!(s.outliers.is_empty());
        assert!((s.centers[0][0] - 4.0).abs() < 1e-12);
    }

    #[test]
    fn objective_never_increases() {
        let c = PointCloud::new(
            (0..200)
                .map(|i| {
                    let t = i as f64;
                    vec![(t * 0.37).sin() * 4.0, (t * 0.11).cos() * 2.0 + (t * 0.05).sin()]
                })
                .collect(),
        )
        .unwrap();
        for seed in 0..5 {
            let s = kmeans_minus_minus(&c, 7, 20, seed).unwrap();
            for w in s.history.windows(2) {
                assert!(w[1] <= w[0] * (1.0 + 1e-12), "{:?}", s.history);
            }
            assert!(s.objective >= 0.0);
            assert_eq!(s.outliers.len(), 20);
        }
    }

    #[test]
    fn landmark_examples() {
        let c = line(&[0.0, 0.1, 0.2, 10.0]);
        let r = select_kmm_landmarks(&c, 2, 0.5, true, 1).unwrap();
        assert_eq!(r.landmarks, vec![1, 3]);
        let r = select_kmm_landmarks(&c, 2, 0.5, false, 1).unwrap();
        assert_eq!(r.landmarks, vec![1]);
    }

    #[test]
    fn centers_on_points_map_to_themselves() {
        let c = line(&[0.0, 1.0, 2.0, 3.0]);
        let centers = vec![vec![2.0], vec![0.0]];
        assert_eq!(map_centers_to_points(&c, &centers, &[0, 1, 2, 3]).unwrap(), vec![2, 0]);
    }

    #[test]
    fn collisions_fall_back_to_next_nearest() {
        let c = line(&[0.0, 1.0, 5.0]);
        let centers = vec![vec![0.1], vec![0.2], vec![0.3]];
        assert_eq!(map_centers_to_points(&c, &centers, &[0, 1, 2]).unwrap(), vec![0, 1, 2]);
        assert!(matches!(
            map_centers_to_points(&c, &centers, &[0, 1]),
            Err(Error::PoolExhausted { mapped: 2, wanted: 3 })
        ));
    }

    #[test]
    fn rounding_of_cluster_count() {
        assert_eq!(split_k_j(300, 0.6), (180, 120));
        assert_eq!(split_k_j(1, 0.2), (1, 0));
        assert_eq!(split_k_j(5, 0.5), (3, 2));
    }
}
