//! Seeded random models and problem sources for sweeps and benchmarks.
//!
//! Determinism contract: all sampling goes through [`SeededRng`], a
//! ChaCha8 stream seeded with `seed_from_u64`, and bounded draws use plain
//! `next_u64() % bound`. Identical seeds therefore produce byte-identical
//! instances on every platform.

use std::collections::HashSet;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::mdp::{Mdp, Owner};
use crate::reductions::{OvInstance, SourceGraph};
use crate::vertex_set::VertexSet;

/// Deterministic RNG with modulo-reduced bounded draws.
pub struct SeededRng(ChaCha8Rng);

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        SeededRng(ChaCha8Rng::seed_from_u64(seed))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform-ish value in `0..bound` (modulo bias is irrelevant for the
    /// tiny bounds used here, and the reduction is part of the contract).
    pub fn below(&mut self, bound: usize) -> usize {
        assert!(bound > 0);
        (self.next_u64() % bound as u64) as usize
    }

    pub fn coin(&mut self) -> bool {
        self.next_u64() & 1 == 1
    }
}

/// Random MDP with `1..=max_n` vertices, at most `max_m` edges, and a
/// uniform owner coin per vertex. Every vertex gets at least one outgoing
/// edge.
pub fn random_mdp(seed: u64, max_n: usize, max_m: usize) -> Mdp {
    let mut rng = SeededRng::new(seed);
    let n = 1 + rng.below(max_n);
    random_mdp_with(&mut rng, n, max_m)
}

/// Random MDP with exactly `n` vertices and roughly `m_target` edges.
pub fn random_mdp_sized(seed: u64, n: usize, m_target: usize) -> Mdp {
    let mut rng = SeededRng::new(seed);
    random_mdp_with(&mut rng, n, m_target)
}

fn random_mdp_with(rng: &mut SeededRng, n: usize, m_target: usize) -> Mdp {
    let owners: Vec<Owner> = (0..n)
        .map(|_| {
            if rng.coin() {
                Owner::Random
            } else {
                Owner::Player1
            }
        })
        .collect();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut seen = HashSet::new();
    for v in 0..n {
        let w = rng.below(n);
        edges.push((v, w));
        seen.insert((v, w));
    }
    let cap = m_target.min(n * n).max(n);
    let extra = if cap > n { rng.below(cap - n + 1) } else { 0 };
    for _ in 0..extra {
        let u = rng.below(n);
        let w = rng.below(n);
        if seen.insert((u, w)) {
            edges.push((u, w));
        }
    }
    Mdp::new(owners, &edges).expect("generated MDP is valid")
}

/// Random subset of `0..n` with at most `max_size` elements.
pub fn random_set(rng: &mut SeededRng, n: usize, max_size: usize) -> VertexSet {
    let size = rng.below(max_size + 1);
    let mut set = VertexSet::empty(n);
    for _ in 0..size {
        set.insert(rng.below(n));
    }
    set
}

/// `k` random target sets over `0..n`.
pub fn random_targets(seed: u64, n: usize, k: usize, max_size: usize) -> Vec<VertexSet> {
    let mut rng = SeededRng::new(seed);
    (0..k).map(|_| random_set(&mut rng, n, max_size)).collect()
}

/// `k` random (L, U) pairs over `0..n`.
pub fn random_pairs(
    seed: u64,
    n: usize,
    k: usize,
    max_size: usize,
) -> Vec<(VertexSet, VertexSet)> {
    let mut rng = SeededRng::new(seed);
    (0..k)
        .map(|_| {
            (
                random_set(&mut rng, n, max_size),
                random_set(&mut rng, n, max_size),
            )
        })
        .collect()
}

/// Simple directed source graph for the triangle reductions: each ordered
/// pair (u, v), u != v, becomes an edge with probability
/// `edge_permille/1000`.
pub fn random_source_graph(seed: u64, n: usize, edge_permille: usize) -> SourceGraph {
    let mut rng = SeededRng::new(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.below(1000) < edge_permille {
                edges.push((u, v));
            }
        }
    }
    SourceGraph::new(n, edges).expect("generated source graph is simple")
}

/// OV instance with `1..=max_n` vectors per side and `d = ceil(log2 N)`
/// bits (at least 1).
pub fn random_ov(seed: u64, max_n: usize) -> OvInstance {
    let mut rng = SeededRng::new(seed);
    let n1 = 1 + rng.below(max_n);
    let n2 = 1 + rng.below(max_n);
    let d = crate::graph::ceil_log2(n1.max(n2)).max(1) as usize;
    let mut s1 = Vec::with_capacity(n1);
    let mut s2 = Vec::with_capacity(n2);
    for _ in 0..n1 {
        s1.push(rng.next_u64() & ((1 << d) - 1));
    }
    for _ in 0..n2 {
        s2.push(rng.next_u64() & ((1 << d) - 1));
    }
    OvInstance::new(d, s1, s2).expect("generated OV instance is valid")
}

/// OV instance with exactly `n` vectors per side and `d` bits.
pub fn random_ov_sized(seed: u64, n: usize, d: usize) -> OvInstance {
    assert!(n >= 1 && d >= 1 && d <= 63);
    let mut rng = SeededRng::new(seed);
    let mask = (1u64 << d) - 1;
    let s1 = (0..n).map(|_| rng.next_u64() & mask).collect();
    let s2 = (0..n).map(|_| rng.next_u64() & mask).collect();
    OvInstance::new(d, s1, s2).expect("generated OV instance is valid")
}

/// Strongly connected random graph (a spanning cycle plus extra edges),
/// all player-1.
pub fn random_strongly_connected_graph(seed: u64, n: usize, extra: usize) -> Mdp {
    let mut rng = SeededRng::new(seed);
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut seen = HashSet::new();
    for v in 0..n {
        let w = (v + 1) % n;
        edges.push((v, w));
        seen.insert((v, w));
    }
    for _ in 0..extra {
        let u = rng.below(n);
        let w = rng.below(n);
        if seen.insert((u, w)) {
            edges.push((u, w));
        }
    }
    Mdp::new(vec![Owner::Player1; n], &edges).expect("generated graph is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeding_is_reproducible() {
        let a = random_mdp(42, 8, 20);
        let b = random_mdp(42, 8, 20);
        assert_eq!(a, b);
        for v in 0..a.vertex_count() {
            assert_eq!(a.successors(v), b.successors(v));
        }
        let c = random_mdp(43, 8, 20);
        assert!(a != c || a.view().edge_pairs() != c.view().edge_pairs());
    }

    #[test]
    fn sized_mdp_has_requested_shape() {
        let m = random_mdp_sized(7, 50, 200);
        assert_eq!(m.vertex_count(), 50);
        assert!(m.edge_count() >= 50);
        assert!(m.edge_count() <= 200 + 50);
    }

    #[test]
    fn strongly_connected_graph_is_one_scc() {
        let g = random_strongly_connected_graph(3, 40, 60);
        let part = crate::graph::sccs(&g.view());
        assert_eq!(part.count(), 1);
    }
}
