use rand::Rng as _;

use crate::cloud::{Euclidean, Metric, PointCloud};
use crate::error::{Error, Result};
use crate::rng::{stream, Stream};

use super::{check_count, Method, SelectionResult};

/// Greedy maxmin landmarks. The first landmark is uniform at random; each
/// further landmark maximizes the distance to the current landmark set, with
/// ties going to the lowest index.
pub fn select_maxmin(cloud: &PointCloud, m: usize, seed: u64) -> Result<SelectionResult> {
    check_count(m, cloud.len())?;
    let first = stream(seed, Stream::FirstLandmark).random_range(0..cloud.len());
    select_maxmin_from(cloud, m, first)
}

/// Maxmin selection with a fixed first landmark.
pub fn select_maxmin_from(cloud: &PointCloud, m: usize, first: usize) -> Result<SelectionResult> {
    let n = cloud.len();
    check_count(m, n)?;
    if first >= n {
        return Err(Error::IndexOutOfRange { index: first, len: n });
    }
    let mut to_set = vec![f64::INFINITY; n];
    let mut chosen = vec![false; n];
    let mut landmarks = Vec::with_capacity(m);
    let mut next = first;
    loop {
        landmarks.push(next);
        chosen[next] = true;
        if landmarks.len() == m {
            break;
        }
        let p = cloud.point(next);
        let mut best: Option<(usize, f64)> = None;
        for (i, d) in to_set.iter_mut().enumerate() {
            if chosen[i] {
                continue;
            }
            let di = Euclidean.distance(p, cloud.point(i));
            if di < *d {
                *d = di;
            }
            if best.is_none_or(|(_, bd)| *d > bd) {
                best = Some((i, *d));
            }
        }
        next = best.expect("unselected points remain").0;
    }
    Ok(SelectionResult {
        landmarks,
        super_outliers: Vec::new(),
        scores: None,
        method: Method::Maxmin,
    })
}
