/// Disjoint sets over `0..n` whose representative is always the smallest
/// member. Path halving keeps finds short.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the sets of `a` and `b`. Returns the absorbed (larger)
    /// representative, or `None` if they were already joined.
    pub fn union(&mut self, a: usize, b: usize) -> Option<usize> {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra == rb {
            return None;
        }
        let (keep, gone) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[gone] = keep;
        Some(gone)
    }

    pub fn count_sets(&mut self) -> usize {
        (0..self.parent.len()).filter(|&i| self.find(i) == i).count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_member_represents() {
        let mut uf = UnionFind::new(5);
        assert_eq!(uf.union(3, 4), Some(4));
        assert_eq!(uf.union(4, 1), Some(3));
        assert_eq!(uf.union(1, 3), None);
        assert_eq!(uf.find(4), 1);
        assert_eq!(uf.count_sets(), 3);
    }
}
