use crate::barcode::{Barcode, Interval, MAX_HOMOLOGY_DIM};
use crate::error::{Error, Result};
use crate::union_find::UnionFind;

use super::filtration::Filtration;

/// Birth/death pairs of filtration positions plus the unpaired (essential) simplices.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PersistencePairing {
    pub pairs: Vec<(usize, usize)>,
    pub essential: Vec<usize>,
}

/// Persistence pairing of a filtration over Z/2.
///
/// Dimension 0 is paired with a union-find sweep under the elder rule. Higher
/// dimensions reduce the coboundary matrix (youngest simplex first, pivot =
/// oldest coface) with clearing of simplices already paired as deaths. The
/// pairing is unique for a fixed filtration order, so this agrees with plain
/// left-to-right boundary-matrix reduction.
pub fn compute_persistence(filtration: &Filtration) -> PersistencePairing {
    let n = filtration.len();
    let mut pairs = Vec::new();
    let mut essential = Vec::new();
    let mut is_death = vec![false; n];

    // Vertices precede every edge, and are sorted by id.
    let n_vertices = filtration.n_vertices();
    let mut uf = UnionFind::new(n_vertices);
    let mut by_dim: Vec<Vec<usize>> = vec![Vec::new(); filtration.max_dim() + 1];
    for (pos, s) in filtration.simplices().iter().enumerate() {
        by_dim[s.dim()].push(pos);
        if s.dim() == 1 {
            let v = s.vertices();
            if let Some(younger) = uf.union(v[0] as usize, v[1] as usize) {
                pairs.push((younger, pos));
                is_death[pos] = true;
            }
        }
    }
    for v in 0..n_vertices {
        if uf.find(v) == v {
            essential.push(v);
        }
    }

    let mut owner: Vec<u32> = vec![u32::MAX; n];
    let mut reduced: Vec<Vec<u32>> = Vec::new();
    let mut column = Vec::new();
    let mut scratch = Vec::new();
    for simplices in &by_dim[1..filtration.max_dim()] {
        for &pos in simplices.iter().rev() {
            if is_death[pos] {
                continue;
            }
            filtration.coboundary(pos, &mut column);
            loop {
                let Some(&pivot) = column.first() else {
                    essential.push(pos);
                    break;
                };
                let slot = owner[pivot as usize];
                if slot == u32::MAX {
                    owner[pivot as usize] = reduced.len() as u32;
                    pairs.push((pos, pivot as usize));
                    is_death[pivot as usize] = true;
                    reduced.push(std::mem::take(&mut column));
                    break;
                }
                symmetric_difference(&column, &reduced[slot as usize], &mut scratch);
                std::mem::swap(&mut column, &mut scratch);
            }
        }
    }
    if filtration.max_dim() >= 1 {
        essential.extend(
            by_dim[filtration.max_dim()]
                .iter()
                .copied()
                .filter(|&pos| !is_death[pos]),
        );
    }

    pairs.sort_unstable();
    essential.sort_unstable();
    PersistencePairing { pairs, essential }
}

fn symmetric_difference(a: &[u32], b: &[u32], out: &mut Vec<u32>) {
    out.clear();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
}

/// Intervals of the requested homology dimensions. Zero-length pairs are dropped.
pub fn barcode(pairing: &PersistencePairing, filtration: &Filtration, dims: &[usize]) -> Result<Barcode> {
    if let Some(&bad) = dims.iter().find(|&&d| d > MAX_HOMOLOGY_DIM) {
        return Err(Error::invalid(format!("homology dimension {bad} out of range")));
    }
    let wanted = |d: usize| dims.contains(&d);
    let mut out = Barcode::new();
    for &(b, d) in &pairing.pairs {
        let birth = filtration.simplex(b);
        if wanted(birth.dim()) {
            out.push(
                birth.dim(),
                Interval::new(birth.value(), filtration.simplex(d).value()),
            );
        }
    }
    for &e in &pairing.essential {
        let s = filtration.simplex(e);
        if wanted(s.dim()) {
            out.push(s.dim(), Interval::new(s.value(), f64::INFINITY));
        }
    }
    out.normalize();
    Ok(out)
}
