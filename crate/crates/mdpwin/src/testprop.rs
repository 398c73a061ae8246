//! Proptest strategies shared by the per-module property tests.

use proptest::prelude::*;
use proptest::strategy::BoxedStrategy;

use crate::mdp::{Mdp, Owner};
use crate::vertex_set::VertexSet;

/// Random MDP with 1..=max_n vertices; every vertex keeps at least one
/// outgoing edge, edge density around 30%.
pub(crate) fn arb_mdp(max_n: usize) -> impl Strategy<Value = Mdp> {
    arb_model(max_n, true)
}

/// Random graph (no random vertices).
pub(crate) fn arb_graph(max_n: usize) -> impl Strategy<Value = Mdp> {
    arb_model(max_n, false)
}

fn arb_model(max_n: usize, with_random: bool) -> impl Strategy<Value = Mdp> {
    (1..=max_n).prop_flat_map(move |n| {
        let owners = proptest::collection::vec(
            if with_random {
                prop::bool::ANY.boxed()
            } else {
                Just(false).boxed()
            },
            n,
        );
        let rows = proptest::collection::vec(
            proptest::collection::vec(prop::bool::weighted(0.3), n),
            n,
        );
        let fallback = proptest::collection::vec(0..n, n);
        (owners, rows, fallback).prop_map(move |(own, rows, fallback)| {
            let owners = own
                .iter()
                .map(|&r| if r { Owner::Random } else { Owner::Player1 })
                .collect();
            let mut edges = Vec::new();
            for v in 0..n {
                let mut any = false;
                for w in 0..n {
                    if rows[v][w] {
                        edges.push((v, w));
                        any = true;
                    }
                }
                if !any {
                    edges.push((v, fallback[v]));
                }
            }
            Mdp::new(owners, &edges).expect("generated model is valid")
        })
    })
}

/// Arbitrary subset of `0..n`.
pub(crate) fn subset_of(n: usize) -> impl Strategy<Value = VertexSet> {
    proptest::collection::vec(prop::bool::ANY, n)
        .prop_map(move |bits| VertexSet::from_iter(n, (0..n).filter(|&v| bits[v])))
}

/// Attaches 1..=max_k target sets to a generated model; for use with
/// `prop_flat_map`.
pub(crate) fn target_list(max_k: usize) -> impl Fn(Mdp) -> BoxedStrategy<(Mdp, Vec<VertexSet>)> {
    move |mdp: Mdp| {
        let n = mdp.vertex_count();
        (
            Just(mdp),
            proptest::collection::vec(subset_of(n), 1..=max_k),
        )
            .boxed()
    }
}

/// Attaches 1..=max_k (L, U) pairs to a generated model.
pub(crate) fn pair_list(
    max_k: usize,
) -> impl Fn(Mdp) -> BoxedStrategy<(Mdp, Vec<(VertexSet, VertexSet)>)> {
    move |mdp: Mdp| {
        let n = mdp.vertex_count();
        (
            Just(mdp),
            proptest::collection::vec((subset_of(n), subset_of(n)), 1..=max_k),
        )
            .boxed()
    }
}
