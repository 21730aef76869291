//! Immutable undirected graphs with dense bitset adjacency rows, and the
//! construction of the Paley-type graph G_n on Z_n.

use crate::error::Result;
use crate::residue::{unit_squares, Modulus};

const WORD: usize = 64;

/// Undirected simple graph on vertices `0..n`.
///
/// Row `u` is `words_per_row` little-endian 64-bit words; bit `v` is set iff
/// `{u, v}` is an edge. Rows are symmetric with a clear diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    words_per_row: usize,
    bits: Vec<u64>,
    edge_count: u64,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        let words_per_row = n.div_ceil(WORD);
        Graph {
            n,
            words_per_row,
            bits: vec![0; n * words_per_row],
            edge_count: 0,
        }
    }

    /// Builds a graph from an edge list. Self-loops are dropped and duplicate
    /// edges collapse.
    ///
    /// # Panics
    /// If an endpoint is out of range.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            assert!(u < n && v < n, "edge ({u}, {v}) out of range for n = {n}");
            if u != v {
                g.set(u, v);
                g.set(v, u);
            }
        }
        g.recount();
        g
    }

    /// The complete graph K_n.
    pub fn complete(n: usize) -> Self {
        Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
    }

    /// G_n: a ~ b iff a - b ≡ x² (mod n) for some unit x.
    ///
    /// Fails with `Excluded` for n < 3 and `NotAdmissible` when -1 is not a
    /// unit square (the difference relation would not be symmetric).
    pub fn paley(n: u64) -> Result<Self> {
        Modulus::admissible(n)?;
        let squares: Vec<usize> = unit_squares(n).into_iter().map(|r| r as usize).collect();
        let n = n as usize;
        let mut g = Graph::empty(n);
        for u in 0..n {
            for &r in &squares {
                g.set(u, (u + r) % n);
            }
        }
        g.recount();
        debug_assert!(g.is_symmetric());
        Ok(g)
    }

    fn set(&mut self, u: usize, v: usize) {
        self.bits[u * self.words_per_row + v / WORD] |= 1 << (v % WORD);
    }

    fn recount(&mut self) {
        let total: u64 = self.bits.iter().map(|w| w.count_ones() as u64).sum();
        self.edge_count = total / 2;
    }

    fn is_symmetric(&self) -> bool {
        (0..self.n).all(|u| !self.has_edge(u, u) && self.neighbors(u).all(|v| self.has_edge(v, u)))
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> u64 {
        self.edge_count
    }

    pub fn words_per_row(&self) -> usize {
        self.words_per_row
    }

    pub fn row(&self, u: usize) -> &[u64] {
        &self.bits[u * self.words_per_row..(u + 1) * self.words_per_row]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.row(u)[v / WORD] >> (v % WORD) & 1 == 1
    }

    pub fn degree(&self, u: usize) -> usize {
        self.row(u).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        bit_indices(self.row(u))
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.neighbors(u)
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }
}

/// Shorthand for [`Graph::paley`].
pub fn build_graph(n: u64) -> Result<Graph> {
    Graph::paley(n)
}

/// Indices of set bits in a bitset, ascending.
pub fn bit_indices(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(i, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                return None;
            }
            let b = w.trailing_zeros() as usize;
            w &= w - 1;
            Some(i * WORD + b)
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn g5_is_the_five_cycle() {
        let g = Graph::paley(5).unwrap();
        let edges: Vec<_> = g.edges().collect();
        assert_eq!(edges, vec![(0, 1), (0, 4), (1, 2), (2, 3), (3, 4)]);
    }

    #[test]
    fn g13_counts() {
        let g = Graph::paley(13).unwrap();
        assert_eq!(g.edge_count(), 39);
        assert!((0..13).all(|u| g.degree(u) == 6));
    }

    #[test]
    fn rejects_bad_moduli() {
        assert!(matches!(
            Graph::paley(21),
            Err(Error::NotAdmissible { n: 21, .. })
        ));
        assert_eq!(Graph::paley(2), Err(Error::Excluded(2)));
        assert_eq!(Graph::paley(1), Err(Error::Excluded(1)));
    }

    #[test]
    fn wide_rows() {
        let g = Graph::paley(169).unwrap();
        assert_eq!(g.words_per_row(), 3);
        assert_eq!(g.edge_count(), 169 * 78 / 2);
        assert!(g.is_symmetric());
    }

    #[test]
    fn from_edges_drops_loops_and_duplicates() {
        let g = Graph::from_edges(4, [(0, 1), (1, 0), (2, 2), (2, 3)]);
        assert_eq!(g.edge_count(), 2);
        assert!(!g.has_edge(2, 2));
        assert_eq!(Graph::complete(4).edge_count(), 6);
    }
}
