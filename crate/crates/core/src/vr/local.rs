//! Max-persistence queries on small Rips complexes, with exact shortcuts.
//!
//! Two facts keep local computations small without changing any finite bar:
//!
//! * At the enclosing radius `r = min_i max_j d(i, j)` the Rips complex is a
//!   cone, so every class in dimensions 0–2 except one component has died by
//!   `r`. Truncating the filtration there loses nothing below dimension 3.
//! * If the vertices admit an order in which distances grow away from every
//!   vertex (a Robinson order, e.g. points on a line), each scale of the
//!   filtration is a proper interval graph whose clique complex has
//!   contractible components. Dimensions 1 and 2 then carry no bars at all.

use crate::barcode::{max_finite_persistence, Barcode, Interval};
use crate::cloud::DistanceMatrix;

use super::{barcode, build_vr_filtration, compute_persistence};

/// Finite dimension-0 bars: the edge lengths of a minimum spanning tree (Prim).
pub fn dim0_finite_deaths(dist: &DistanceMatrix) -> Vec<f64> {
    let n = dist.len();
    if n < 2 {
        return Vec::new();
    }
    let mut in_tree = vec![false; n];
    let mut best = dist.row(0).to_vec();
    in_tree[0] = true;
    let mut out = Vec::with_capacity(n - 1);
    for _ in 1..n {
        let (next, d) = best
            .iter()
            .enumerate()
            .filter(|&(i, _)| !in_tree[i])
            .min_by(|a, b| a.1.total_cmp(b.1))
            .map(|(i, &d)| (i, d))
            .expect("vertices remain");
        in_tree[next] = true;
        out.push(d);
        for (b, &dn) in best.iter_mut().zip(dist.row(next)) {
            if dn < *b {
                *b = dn;
            }
        }
    }
    out
}

/// An order of the vertices in which every row of the matrix is monotone
/// non-decreasing moving away from the diagonal, if the obvious candidate
/// (sort by distance from the vertex farthest from vertex 0) is one.
pub fn robinson_order(dist: &DistanceMatrix) -> Option<Vec<usize>> {
    let n = dist.len();
    if n <= 2 {
        return Some((0..n).collect());
    }
    let row0 = dist.row(0);
    let far = (0..n).fold(0, |best, j| if row0[j] > row0[best] { j } else { best });
    let from = dist.row(far);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| from[a].total_cmp(&from[b]).then(a.cmp(&b)));

    for (p, &i) in order.iter().enumerate() {
        let row = dist.row(i);
        let mut last = 0.0;
        for &j in &order[p + 1..] {
            if row[j] < last {
                return None;
            }
            last = row[j];
        }
        last = 0.0;
        for &j in order[..p].iter().rev() {
            if row[j] < last {
                return None;
            }
            last = row[j];
        }
    }
    Some(order)
}

/// Rips barcode of the whole vertex set, truncated at the enclosing radius.
/// Agrees with the barcode at `eps_max = diameter` in dimensions 0–2.
pub fn local_barcode(dist: &DistanceMatrix, dims: &[usize]) -> Barcode {
    let top = dims.iter().copied().max().unwrap_or(0);
    if top == 0 {
        let mut b = Barcode::new();
        for d in dim0_finite_deaths(dist) {
            b.push(0, Interval::new(0.0, d));
        }
        if !dist.is_empty() {
            b.push(0, Interval::new(0.0, f64::INFINITY));
        }
        b.normalize();
        return b;
    }
    let eps = if dist.is_empty() { 0.0 } else { dist.enclosing_radius() };
    let f = build_vr_filtration(dist, top + 1, eps).expect("valid parameters");
    barcode(&compute_persistence(&f), &f, dims).expect("dims checked by caller")
}

/// Largest finite bar length over `dims` (each in 0..=2) of the full Rips
/// filtration of `dist`; 0 when there is none.
pub fn max_finite_bar(dist: &DistanceMatrix, dims: &[usize]) -> f64 {
    let want0 = dims.contains(&0);
    let higher: Vec<usize> = dims.iter().copied().filter(|&d| d > 0).collect();
    let mut best = 0.0;
    if want0 {
        best = dim0_finite_deaths(dist).into_iter().fold(0.0, f64::max);
    }
    if higher.is_empty() || dist.len() < 4 || robinson_order(dist).is_some() {
        // fewer than four vertices cannot carry a persistent 1- or 2-cycle
        return best;
    }
    let b = local_barcode(dist, &higher);
    best.max(max_finite_persistence(&b, &higher))
}
