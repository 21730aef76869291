//! Structural checks on G_n: regularity, connectivity, completeness, the cycle
//! characterization, the self-complementarity edge-count test, affine
//! automorphisms and the block decomposition of G_{p^α}.

use std::collections::VecDeque;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::residue::{unit_squares, validate_prime_one_mod_four, Modulus};

/// `(min_degree, max_degree)`; `(0, 0)` for the empty vertex set.
pub fn degree_profile(g: &Graph) -> (usize, usize) {
    (0..g.vertex_count())
        .map(|u| g.degree(u))
        .fold(None, |acc, d| match acc {
            None => Some((d, d)),
            Some((lo, hi)) => Some((lo.min(d), hi.max(d))),
        })
        .unwrap_or((0, 0))
}

/// Breadth-first reachability from vertex 0.
pub fn is_connected(g: &Graph) -> bool {
    let n = g.vertex_count();
    if n == 0 {
        return true;
    }
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([0usize]);
    seen[0] = true;
    let mut reached = 1;
    while let Some(u) = queue.pop_front() {
        for v in g.neighbors(u) {
            if !seen[v] {
                seen[v] = true;
                reached += 1;
                queue.push_back(v);
            }
        }
    }
    reached == n
}

pub fn is_complete(g: &Graph) -> bool {
    let n = g.vertex_count() as u64;
    g.edge_count() == n * n.saturating_sub(1) / 2
}

/// Connected and 2-regular.
pub fn is_cycle(g: &Graph) -> bool {
    g.vertex_count() >= 3 && degree_profile(g) == (2, 2) && is_connected(g)
}

/// The edge-count obstruction to self-complementarity: true iff G_n has
/// exactly n(n-1)/4 edges. This is necessary, not sufficient.
pub fn self_complementary_edge_test(n: u64) -> Result<bool> {
    Modulus::admissible(n)?;
    let degree = unit_squares(n).len() as u64;
    // edge_count = n·deg/2 and the target is n(n-1)/4.
    Ok(2 * n * degree == n * (n - 1))
}

/// Exhaustively checks that x ↦ ax + b (mod n) maps edges to edges and
/// non-edges to non-edges.
pub fn affine_automorphism_check(g: &Graph, a: u64, b: u64) -> Result<bool> {
    let n = g.vertex_count() as u64;
    let a = a % n;
    if !unit_squares(n).contains(&a) {
        return Err(Error::NotASquare { n, a });
    }
    let image: Vec<usize> = (0..n).map(|x| ((a * x + b) % n) as usize).collect();
    let n = n as usize;
    Ok((0..n).all(|u| (u + 1..n).all(|v| g.has_edge(u, v) == g.has_edge(image[u], image[v]))))
}

/// Audit of G_{p^α} as p^(α-1) copies of G(p) on the blocks {kp, …, kp+p-1}
/// plus stars K_{1,(p-1)/2} between blocks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecompositionReport {
    pub p: u64,
    pub alpha: u32,
    pub block_count: u64,
    pub intra_block_edges: u64,
    pub inter_block_edges: u64,
    /// Every block is isomorphic to G(p) under i ↦ kp + i.
    pub blocks_isomorphic: bool,
    /// Every vertex sees exactly (p-1)/2 neighbours in each other block.
    pub star_structure_verified: bool,
}

impl DecompositionReport {
    pub fn expected_intra_block_edges(&self) -> u64 {
        self.block_count * self.p * (self.p - 1) / 4
    }

    pub fn expected_inter_block_edges(&self) -> u64 {
        (self.p * (self.p - 1) / 2) * (self.block_count * (self.block_count - 1) / 2)
    }

    /// All four checks: block isomorphism, both edge counts, star structure.
    pub fn passes(&self) -> bool {
        self.blocks_isomorphic
            && self.star_structure_verified
            && self.intra_block_edges == self.expected_intra_block_edges()
            && self.inter_block_edges == self.expected_inter_block_edges()
    }
}

pub fn decomposition_report(p: u64, alpha: u32) -> Result<DecompositionReport> {
    validate_prime_one_mod_four(p)?;
    if alpha == 0 {
        return Err(Error::ZeroExponent);
    }
    let n = p.pow(alpha);
    let g = Graph::paley(n)?;
    let base = Graph::paley(p)?;
    let p = p as usize;
    let block_count = n as usize / p;

    let blocks_isomorphic = (0..block_count).all(|k| {
        (0..p).all(|i| (0..p).all(|j| g.has_edge(k * p + i, k * p + j) == base.has_edge(i, j)))
    });

    let intra_block_edges = g.edges().filter(|&(u, v)| u / p == v / p).count() as u64;
    let inter_block_edges = g.edge_count() - intra_block_edges;

    let half = (p - 1) / 2;
    let star_structure_verified = (0..n as usize).all(|u| {
        let mut per_block = vec![0usize; block_count];
        for v in g.neighbors(u) {
            per_block[v / p] += 1;
        }
        per_block
            .iter()
            .enumerate()
            .all(|(k, &c)| k == u / p || c == half)
    });

    Ok(DecompositionReport {
        p: p as u64,
        alpha,
        block_count: block_count as u64,
        intra_block_edges,
        inter_block_edges,
        blocks_isomorphic,
        star_structure_verified,
    })
}
