#![allow(dead_code)]

use phlandmarks::DistanceMatrix;

/// Barcode by the textbook route: every simplex up to dimension 3, the full
/// Z/2 boundary matrix, left-to-right column reduction. Returns sorted
/// `(birth, death)` pairs per dimension 0..=2, zero-length pairs dropped.
pub fn oracle_barcode(dist: &DistanceMatrix) -> [Vec<(f64, f64)>; 3] {
    let n = dist.len();
    let mut simplices: Vec<(f64, Vec<usize>)> = Vec::new();
    for mask in 1u32..(1 << n) {
        let verts: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        if verts.len() > 4 {
            continue;
        }
        let mut value: f64 = 0.0;
        for a in 0..verts.len() {
            for b in a + 1..verts.len() {
                value = value.max(dist.get(verts[a], verts[b]));
            }
        }
        simplices.push((value, verts));
    }
    simplices.sort_by(|a, b| {
        a.0.total_cmp(&b.0)
            .then(a.1.len().cmp(&b.1.len()))
            .then(a.1.cmp(&b.1))
    });
    let index_of = |v: &[usize]| simplices.iter().position(|s| s.1 == v).unwrap();

    let mut columns: Vec<Vec<usize>> = simplices
        .iter()
        .map(|(_, v)| {
            if v.len() == 1 {
                return Vec::new();
            }
            let mut col: Vec<usize> = (0..v.len())
                .map(|skip| {
                    let face: Vec<usize> = v
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| *i != skip)
                        .map(|(_, &x)| x)
                        .collect();
                    index_of(&face)
                })
                .collect();
            col.sort_unstable();
            col
        })
        .collect();

    let mut low_owner: Vec<Option<usize>> = vec![None; simplices.len()];
    let mut paired = vec![false; simplices.len()];
    let mut out: [Vec<(f64, f64)>; 3] = Default::default();
    for j in 0..columns.len() {
        while let Some(&low) = columns[j].last() {
            match low_owner[low] {
                Some(k) => {
                    let other = columns[k].clone();
                    let mut merged: Vec<usize> = Vec::new();
                    let (mut a, mut b) = (0, 0);
                    let cur = &columns[j];
                    while a < cur.len() || b < other.len() {
                        if b == other.len() || (a < cur.len() && cur[a] < other[b]) {
                            merged.push(cur[a]);
                            a += 1;
                        } else if a == cur.len() || other[b] < cur[a] {
                            merged.push(other[b]);
                            b += 1;
                        } else {
                            a += 1;
                            b += 1;
                        }
                    }
                    columns[j] = merged;
                }
                None => {
                    low_owner[low] = Some(j);
                    paired[low] = true;
                    paired[j] = true;
                    let dim = simplices[low].1.len() - 1;
                    let (birth, death) = (simplices[low].0, simplices[j].0);
                    if dim <= 2 && death > birth {
                        out[dim].push((birth, death));
                    }
                    break;
                }
            }
        }
    }
    for (i, (value, v)) in simplices.iter().enumerate() {
        let dim = v.len() - 1;
        if !paired[i] && dim <= 2 {
            out[dim].push((*value, f64::INFINITY));
        }
    }
    for bars in &mut out {
        bars.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    }
    out
}

pub fn library_barcode(dist: &DistanceMatrix) -> [Vec<(f64, f64)>; 3] {
    let b = phlandmarks::vr_barcode(dist, dist.diameter(), &[0, 1, 2]).unwrap();
    let mut out: [Vec<(f64, f64)>; 3] = Default::default();
    for (dim, bars) in out.iter_mut().enumerate() {
        *bars = b.intervals(dim).iter().map(|i| (i.birth, i.death)).collect();
        bars.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    }
    out
}

fn close(a: f64, b: f64, rel: f64) -> bool {
    a == b || (a - b).abs() <= rel * a.abs().max(b.abs())
}

pub fn barcodes_match(a: &[Vec<(f64, f64)>; 3], b: &[Vec<(f64, f64)>; 3], rel: f64) -> bool {
    a.iter().zip(b).all(|(x, y)| {
        x.len() == y.len()
            && x
                .iter()
                .zip(y)
                .all(|(p, q)| close(p.0, q.0, rel) && close(p.1, q.1, rel))
    })
}

/// Random cloud of `n` points in `[0, 1)^dim`, or on the integer grid
/// `{0, 1, 2}^dim` when `grid` is set (many exact ties).
pub fn random_cloud(rng: &mut impl rand::Rng, n: usize, dim: usize, grid: bool) -> Vec<Vec<f64>> {
    (0..n)
        .map(|_| {
            (0..dim)
                .map(|_| {
                    if grid {
                        rng.random_range(0..3) as f64
                    } else {
                        rng.random::<f64>()
                    }
                })
                .collect()
        })
        .collect()
}
