//! Almost-sure reachability: single objective, disjunctive objectives, and
//! disjunctive queries in O(km + MEC).
//!
//! The MEC quotient has no non-trivial end-component, so one pass of graph
//! reachability plus one extended random attractor decides each target set;
//! targets are shielded by the attractor instead of being made absorbing.

use crate::attractor::extended_random_attractor;
use crate::graph::graph_reach;
use crate::mdp::Mdp;
use crate::vertex_set::VertexSet;

/// Union over all targets of the per-target almost-sure winning sets.
/// The MEC decomposition is computed (and cached) once; each target costs
/// one backward search and one extended attractor on the quotient.
pub fn as_reach_disj_query(mdp: &Mdp, targets: &[VertexSet]) -> VertexSet {
    assert!(!targets.is_empty(), "at least one target set required");
    let contracted = &mdp.mec_analysis().contracted;
    let quotient = &contracted.quotient;
    let qview = quotient.view();
    let qn = quotient.vertex_count();

    let mut winning = VertexSet::empty(mdp.vertex_count());
    for t in targets {
        let qt = contracted.image_set(t);
        let can_reach = graph_reach(&qview, &qt);
        let lost = extended_random_attractor(&qview, &can_reach.complement(), &qt);
        let mut w = VertexSet::full(qn);
        w.subtract(&lost);
        winning.union_with(&contracted.preimage_set(&w, mdp.vertex_count()));
    }
    winning
}

/// Almost-sure reachability of a single target set.
pub fn as_reach_single(mdp: &Mdp, t: &VertexSet) -> VertexSet {
    as_reach_disj_query(mdp, std::slice::from_ref(t))
}

/// A disjunction of reachability objectives equals reachability of the
/// union of the target sets.
pub fn as_reach_disj_objective(mdp: &Mdp, targets: &[VertexSet]) -> VertexSet {
    assert!(!targets.is_empty(), "at least one target set required");
    let mut union = VertexSet::empty(mdp.vertex_count());
    for t in targets {
        union.union_with(t);
    }
    as_reach_single(mdp, &union)
}
