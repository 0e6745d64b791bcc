use rayon::prelude::*;

use crate::cloud::{Euclidean, Metric, PointCloud};
use crate::error::{Error, Result};

use super::{check_count, Method, SelectionResult};

/// ρ_K(y): the distance from each point to its K-th nearest other point.
/// The density is `1 / ρ_K`; coincident points give ρ_K = 0, i.e. infinite density.
pub fn density_rho_k(cloud: &PointCloud, k: usize) -> Result<Vec<f64>> {
    let n = cloud.len();
    if k == 0 || k >= n {
        return Err(Error::invalid(format!(
            "K = {k} must be in 1..={} for {n} points",
            n.saturating_sub(1)
        )));
    }
    Ok((0..n)
        .into_par_iter()
        .map(|i| {
            let p = cloud.point(i);
            let mut d: Vec<f64> = (0..n)
                .filter(|&j| j != i)
                .map(|j| Euclidean.distance(p, cloud.point(j)))
                .collect();
            let (_, kth, _) = d.select_nth_unstable_by(k - 1, f64::total_cmp);
            *kth
        })
        .collect())
}

/// The `m` points with smallest ρ_K (densest first), ties by lowest index.
pub fn select_dense_core(cloud: &PointCloud, m: usize, k: usize) -> Result<SelectionResult> {
    check_count(m, cloud.len())?;
    let rho = density_rho_k(cloud, k)?;
    select_dense_core_from_rho(rho, m, k)
}

/// Dense-core selection from precomputed ρ_K values.
pub fn select_dense_core_from_rho(rho: Vec<f64>, m: usize, k: usize) -> Result<SelectionResult> {
    check_count(m, rho.len())?;
    let mut order: Vec<usize> = (0..rho.len()).collect();
    order.sort_by(|&a, &b| rho[a].total_cmp(&rho[b]).then(a.cmp(&b)));
    order.truncate(m);
    Ok(SelectionResult {
        landmarks: order,
        super_outliers: Vec::new(),
        scores: Some(rho),
        method: Method::DenseCore { k },
    })
}
