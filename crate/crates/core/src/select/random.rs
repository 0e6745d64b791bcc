use rand::seq::index;

use crate::cloud::PointCloud;
use crate::error::Result;
use crate::rng::{stream, Stream};

use super::{check_count, Method, SelectionResult};

/// `m` distinct points drawn uniformly without replacement, in draw order.
pub fn select_random(cloud: &PointCloud, m: usize, seed: u64) -> Result<SelectionResult> {
    check_count(m, cloud.len())?;
    let mut rng = stream(seed, Stream::RandomDraw);
    let landmarks = index::sample(&mut rng, cloud.len(), m).into_vec();
    Ok(SelectionResult {
        landmarks,
        super_outliers: Vec::new(),
        scores: None,
        method: Method::Random,
    })
}
