use std::cmp::Ordering;
use std::collections::HashMap;
use std::hash::{BuildHasherDefault, Hasher};

use arrayvec::ArrayVec;

use crate::cloud::DistanceMatrix;
use crate::error::{Error, Result};

/// Largest simplex dimension the builder enumerates.
pub const MAX_SIMPLEX_DIM: usize = 3;

/// A simplex on sorted local vertex ids, entering at the diameter of its vertex set.
#[derive(Debug, Clone, PartialEq)]
pub struct Simplex {
    vertices: ArrayVec<u32, 4>,
    value: f64,
}

impl Simplex {
    pub fn vertices(&self) -> &[u32] {
        &self.vertices
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    fn filtration_cmp(&self, other: &Self) -> Ordering {
        self.value
            .total_cmp(&other.value)
            .then(self.vertices.len().cmp(&other.vertices.len()))
            .then_with(|| self.vertices.cmp(&other.vertices))
    }
}

/// Multiplicative hash for already well-spread integer keys.
#[derive(Default)]
pub(crate) struct MixHasher(u64);

impl Hasher for MixHasher {
    fn finish(&self) -> u64 {
        self.0
    }

    fn write(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.0 = (self.0.rotate_left(8) ^ u64::from(b)).wrapping_mul(0x9E37_79B9_7F4A_7C15);
        }
    }

    fn write_u64(&mut self, x: u64) {
        self.0 = (x ^ (x >> 29)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        self.0 ^= self.0 >> 32;
    }
}

pub(crate) type KeyMap = HashMap<u64, u32, BuildHasherDefault<MixHasher>>;

/// Vietoris–Rips filtration: simplices sorted by (value, dimension, vertices).
#[derive(Debug, Clone)]
pub struct Filtration {
    simplices: Vec<Simplex>,
    eps_max: f64,
    max_dim: usize,
    n_vertices: usize,
    adjacency: Vec<bool>,
    keys: KeyPacker,
    positions: Vec<KeyMap>,
}

impl Filtration {
    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn eps_max(&self) -> f64 {
        self.eps_max
    }

    pub fn max_dim(&self) -> usize {
        self.max_dim
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn simplex(&self, pos: usize) -> &Simplex {
        &self.simplices[pos]
    }

    /// Filtration position of the simplex on `vertices` (sorted), if present.
    pub fn position(&self, vertices: &[u32]) -> Option<usize> {
        let dim = vertices.len().checked_sub(1)?;
        self.positions
            .get(dim)?
            .get(&self.keys.key(vertices))
            .map(|&p| p as usize)
    }

    pub(crate) fn adjacent(&self, a: u32, b: u32) -> bool {
        self.adjacency[a as usize * self.n_vertices + b as usize]
    }

    /// Positions of all cofaces of the simplex at `pos`, ascending.
    pub(crate) fn coboundary(&self, pos: usize, out: &mut Vec<u32>) {
        out.clear();
        let s = &self.simplices[pos];
        let dim = s.dim();
        if dim >= self.max_dim {
            return;
        }
        let table = &self.positions[dim + 1];
        let verts = s.vertices();
        let mut buf: ArrayVec<u32, 4> = ArrayVec::new();
        for v in 0..self.n_vertices as u32 {
            if verts.contains(&v) || !verts.iter().all(|&u| self.adjacent(u, v)) {
                continue;
            }
            buf.clear();
            let mut inserted = false;
            for &u in verts {
                if !inserted && v < u {
                    buf.push(v);
                    inserted = true;
                }
                buf.push(u);
            }
            if !inserted {
                buf.push(v);
            }
            let p = table[&self.keys.key(&buf)];
            out.push(p);
        }
        out.sort_unstable();
    }
}

/// Combinatorial-number-system keys for sorted vertex tuples.
#[derive(Debug, Clone)]
struct KeyPacker {
    binom: Vec<[u64; 5]>,
}

impl KeyPacker {
    fn new(n: usize) -> Self {
        let mut binom = vec![[0u64; 5]; n + 1];
        for (v, row) in binom.iter_mut().enumerate() {
            row[0] = 1;
            for k in 1..5 {
                // C(v, k) = C(v, k-1) * (v - k + 1) / k, exact in u128
                let prev = row[k - 1] as u128;
                let num = (v as u128 + 1).saturating_sub(k as u128);
                row[k] = (prev * num / k as u128) as u64;
            }
        }
        KeyPacker { binom }
    }

    fn key(&self, vertices: &[u32]) -> u64 {
        vertices
            .iter()
            .enumerate()
            .map(|(i, &v)| self.binom[v as usize][i + 1])
            .sum()
    }
}

/// Builds the Vietoris–Rips filtration of every simplex of dimension at most
/// `max_dim` whose diameter is at most `eps_max`.
pub fn build_vr_filtration(dist: &DistanceMatrix, max_dim: usize, eps_max: f64) -> Result<Filtration> {
    if !(1..=MAX_SIMPLEX_DIM).contains(&max_dim) {
        return Err(Error::invalid(format!("max_dim must be 1, 2 or 3, got {max_dim}")));
    }
    if !(eps_max >= 0.0) {
        return Err(Error::invalid(format!("eps_max must be nonnegative, got {eps_max}")));
    }
    let n = dist.len();
    if n > u32::MAX as usize {
        return Err(Error::invalid("too many vertices"));
    }

    let mut adjacency = vec![false; n * n];
    let mut above: Vec<Vec<u32>> = vec![Vec::new(); n];
    for i in 0..n {
        for j in (i + 1)..n {
            if dist.get(i, j) <= eps_max {
                adjacency[i * n + j] = true;
                adjacency[j * n + i] = true;
                above[i].push(j as u32);
            }
        }
    }
    let adj = |a: u32, b: u32| adjacency[a as usize * n + b as usize];

    let mut simplices = Vec::new();
    for v in 0..n as u32 {
        simplices.push(Simplex {
            vertices: [v].into_iter().collect(),
            value: 0.0,
        });
    }
    for i in 0..n as u32 {
        for &j in &above[i as usize] {
            let dij = dist.get(i as usize, j as usize);
            simplices.push(Simplex {
                vertices: [i, j].into_iter().collect(),
                value: dij,
            });
            if max_dim < 2 {
                continue;
            }
            for &k in above[j as usize].iter().filter(|&&k| adj(i, k)) {
                let dijk = dij
                    .max(dist.get(i as usize, k as usize))
                    .max(dist.get(j as usize, k as usize));
                simplices.push(Simplex {
                    vertices: [i, j, k].into_iter().collect(),
                    value: dijk,
                });
                if max_dim < 3 {
                    continue;
                }
                for &l in above[k as usize].iter().filter(|&&l| adj(i, l) && adj(j, l)) {
                    let v = dijk
                        .max(dist.get(i as usize, l as usize))
                        .max(dist.get(j as usize, l as usize))
                        .max(dist.get(k as usize, l as usize));
                    simplices.push(Simplex {
                        vertices: [i, j, k, l].into_iter().collect(),
                        value: v,
                    });
                }
            }
        }
    }
    simplices.sort_unstable_by(Simplex::filtration_cmp);

    let keys = KeyPacker::new(n);
    let mut positions: Vec<KeyMap> = (0..=max_dim).map(|_| KeyMap::default()).collect();
    for (pos, s) in simplices.iter().enumerate() {
        positions[s.dim()].insert(keys.key(s.vertices()), pos as u32);
    }

    Ok(Filtration {
        simplices,
        eps_max,
        max_dim,
        n_vertices: n,
        adjacency,
        keys,
        positions,
    })
}
