//! k-nearest-neighbor utilities shared by the detector and the baselines:
//! per-row neighbor orderings, a small union-find, and the
//! connectivity-based choice of k.

use crate::data::DissimMatrix;
use crate::error::{usage, Result};

/// Disjoint-set union with path compression and union by rank.
pub(crate) struct UnionFind {
    parent: Vec<u32>,
    rank: Vec<u8>,
    components: usize,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        Self { parent: (0..n as u32).collect(), rank: vec![0; n], components: n }
    }

    pub fn find(&mut self, mut x: u32) -> u32 {
        let mut root = x;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        while self.parent[x as usize] != x {
            let next = self.parent[x as usize];
            self.parent[x as usize] = root;
            x = next;
        }
        root
    }

    pub fn union(&mut self, a: u32, b: u32) {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        if self.rank[ra as usize] < self.rank[rb as usize] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb as usize] = ra;
        if self.rank[ra as usize] == self.rank[rb as usize] {
            self.rank[ra as usize] += 1;
        }
        self.components -= 1;
    }

    pub fn components(&self) -> usize {
        self.components
    }
}

/// Full per-row neighbor orderings; reference route for the capped
/// search below.
#[cfg(test)]
pub(crate) fn neighbor_orders(m: &DissimMatrix) -> Vec<Vec<u32>> {
    neighbor_prefixes(m, m.n().saturating_sub(1))
}

/// The `cap` nearest neighbors of every row, sorted by ascending distance
/// with ties broken by ascending index. Selecting then sorting only the
/// prefix keeps the per-row cost near O(n) when cap is small.
pub(crate) fn neighbor_prefixes(m: &DissimMatrix, cap: usize) -> Vec<Vec<u32>> {
    let n = m.n();
    (0..n)
        .map(|i| {
            let row = m.row(i);
            let cmp = |&a: &u32, &b: &u32| {
                row[a as usize]
                    .partial_cmp(&row[b as usize])
                    .unwrap()
                    .then(a.cmp(&b))
            };
            let mut order: Vec<u32> =
                (0..n as u32).filter(|&j| j as usize != i).collect();
            if cap < order.len() {
                order.select_nth_unstable_by(cap - 1, cmp);
                order.truncate(cap);
            }
            order.sort_unstable_by(cmp);
            order
        })
        .collect()
}

#[cfg(test)]
pub(crate) fn select_k_from_orders(orders: &[Vec<u32>]) -> usize {
    let n = orders.len();
    debug_assert!(n >= 2);
    let mut uf = UnionFind::new(n);
    for k in 1..n {
        for (i, order) in orders.iter().enumerate() {
            uf.union(i as u32, order[k - 1]);
        }
        if uf.components() == 1 {
            return k;
        }
    }
    n - 1
}

/// Smallest k >= 1 whose symmetric k-NN graph on the matrix (edge i-j when
/// i is among the k nearest of j or vice versa) forms a single connected
/// component. Neighbor ties are broken by ascending index.
///
/// The connecting k is usually tiny, so the search works on short
/// neighbor prefixes and widens them in the rare case they run out.
pub fn select_k(m: &DissimMatrix) -> Result<usize> {
    let n = m.n();
    if n < 2 {
        return Err(usage("select_k requires at least two samples"));
    }
    let mut cap = 16.min(n - 1);
    loop {
        let orders = neighbor_prefixes(m, cap);
        let mut uf = UnionFind::new(n);
        for k in 1..=cap {
            for (i, order) in orders.iter().enumerate() {
                uf.union(i as u32, order[k - 1]);
            }
            if uf.components() == 1 {
                return Ok(k);
            }
        }
        // The complete graph (cap = n - 1) is always connected.
        debug_assert!(cap < n - 1);
        cap = (cap * 4).min(n - 1);
    }
}
