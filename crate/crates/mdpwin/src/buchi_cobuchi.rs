//! Büchi and coBüchi solvers, the disjunction of one-pair Streett
//! objectives, and the linear-time singleton-coBüchi graph algorithm.
//!
//! All MDP solvers here classify the cached MECs as winning or not and
//! finish with almost-sure reachability of the winning union; inside a MEC
//! every vertex can be visited infinitely often almost surely.

use crate::attractor::random_attractor;
use crate::error::{Error, Result};
use crate::graph::{graph_reach, sccs};
use crate::mdp::{Mdp, Owner};
use crate::objective::Pair;
use crate::reach::{as_reach_disj_query, as_reach_single};
use crate::vertex_set::VertexSet;

/// Whether a disjunction asks for one strategy (objective) or a union of
/// per-objective winning sets (query).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DisjMode {
    Objective,
    Query,
}

fn union_of(n: usize, sets: &[VertexSet]) -> VertexSet {
    let mut u = VertexSet::empty(n);
    for s in sets {
        u.union_with(s);
    }
    u
}

/// MECs meeting any target are winning; one reachability pass.
pub fn buchi_disj_objective(mdp: &Mdp, targets: &[VertexSet]) -> VertexSet {
    assert!(!targets.is_empty());
    let n = mdp.vertex_count();
    let union = union_of(n, targets);
    let mut win = VertexSet::empty(n);
    for mec in mdp.mec_analysis().decomposition.mecs() {
        if !mec.is_disjoint_from(&union) {
            win.union_with(mec);
        }
    }
    as_reach_single(mdp, &win)
}

/// Per-target winning MECs, one reachability query each; the MEC
/// decomposition is computed once.
pub fn buchi_disj_query(mdp: &Mdp, targets: &[VertexSet]) -> VertexSet {
    assert!(!targets.is_empty());
    let n = mdp.vertex_count();
    let mecs = mdp.mec_analysis().decomposition.mecs();
    let unions: Vec<VertexSet> = targets
        .iter()
        .map(|t| {
            let mut u = VertexSet::empty(n);
            for mec in mecs {
                if !mec.is_disjoint_from(t) {
                    u.union_with(mec);
                }
            }
            u
        })
        .collect();
    as_reach_disj_query(mdp, &unions)
}

/// MECs meeting every target are winning.
pub fn buchi_conj(mdp: &Mdp, targets: &[VertexSet]) -> VertexSet {
    assert!(!targets.is_empty());
    let n = mdp.vertex_count();
    let mut win = VertexSet::empty(n);
    for mec in mdp.mec_analysis().decomposition.mecs() {
        if targets.iter().all(|t| !mec.is_disjoint_from(t)) {
            win.union_with(mec);
        }
    }
    as_reach_single(mdp, &win)
}

/// A MEC wins coBüchi(T_i) iff the random attractor of T_i inside the MEC
/// does not cover it; the remainder then contains a target-free
/// end-component.
fn cobuchi_mec_wins(mdp: &Mdp, mec: &VertexSet, t: &VertexSet) -> bool {
    let sub = mdp.restricted(mec.clone());
    let attr = random_attractor(&sub, t);
    attr.len() < mec.len()
}

pub fn cobuchi_disj_objective(mdp: &Mdp, targets: &[VertexSet]) -> VertexSet {
    assert!(!targets.is_empty());
    let n = mdp.vertex_count();
    let mut win = VertexSet::empty(n);
    for mec in mdp.mec_analysis().decomposition.mecs() {
        if targets.iter().any(|t| cobuchi_mec_wins(mdp, mec, t)) {
            win.union_with(mec);
        }
    }
    as_reach_single(mdp, &win)
}

pub fn cobuchi_disj_query(mdp: &Mdp, targets: &[VertexSet]) -> VertexSet {
    assert!(!targets.is_empty());
    let n = mdp.vertex_count();
    let mecs = mdp.mec_analysis().decomposition.mecs();
    let unions: Vec<VertexSet> = targets
        .iter()
        .map(|t| {
            let mut u = VertexSet::empty(n);
            for mec in mecs {
                if cobuchi_mec_wins(mdp, mec, t) {
                    u.union_with(mec);
                }
            }
            u
        })
        .collect();
    as_reach_disj_query(mdp, &unions)
}

/// A conjunction of coBüchi objectives equals coBüchi of the union.
pub fn cobuchi_conj(mdp: &Mdp, targets: &[VertexSet]) -> VertexSet {
    assert!(!targets.is_empty());
    let union = union_of(mdp.vertex_count(), targets);
    cobuchi_disj_objective(mdp, std::slice::from_ref(&union))
}

/// Disjunction of one-pair Streett objectives. A MEC wins pair (L, U) if it
/// misses L (vacuous pair), meets U (Büchi part), or contains an
/// L-free end-component (the random attractor of L does not cover it).
pub fn one_pair_streett_disj(mdp: &Mdp, pairs: &[Pair], mode: DisjMode) -> VertexSet {
    assert!(!pairs.is_empty());
    let n = mdp.vertex_count();
    let mecs = mdp.mec_analysis().decomposition.mecs();
    let mec_wins = |mec: &VertexSet, pair: &Pair| {
        if mec.is_disjoint_from(&pair.l) || !mec.is_disjoint_from(&pair.u) {
            return true;
        }
        let sub = mdp.restricted(mec.clone());
        random_attractor(&sub, &pair.l).len() < mec.len()
    };
    match mode {
        DisjMode::Objective => {
            let mut win = VertexSet::empty(n);
            for mec in mecs {
                if pairs.iter().any(|p| mec_wins(mec, p)) {
                    win.union_with(mec);
                }
            }
            as_reach_single(mdp, &win)
        }
        DisjMode::Query => {
            let unions: Vec<VertexSet> = pairs
                .iter()
                .map(|p| {
                    let mut u = VertexSet::empty(n);
                    for mec in mecs {
                        if mec_wins(mec, p) {
                            u.union_with(mec);
                        }
                    }
                    u
                })
                .collect();
            as_reach_disj_query(mdp, &unions)
        }
    }
}

/// Result of the 0/1-BFS over the split component: `levels[v]` is the queue
/// a vertex was added to, equal to its shortest distance from `s_out` where
/// edges entering the target union cost 1 and all others 0. Exposed so the
/// level semantics can be validated independently.
pub struct CycleSearch {
    pub s_in: usize,
    pub s_out: usize,
    pub levels: Vec<Option<usize>>,
    /// Level at which `s_in` was dequeued, if within the level budget.
    pub hit_level: Option<usize>,
}

/// 0/1-BFS of the singleton-coBüchi core: the component's target vertex
/// `t1` is split into `s_in` (id `n`) taking its in-edges and `s_out`
/// (id `n + 1`) taking its out-edges; both count as targets. Runs
/// `max_level + 1` queues.
pub fn singleton_cobuchi_cycle_search(
    graph: &Mdp,
    component: &VertexSet,
    t1: usize,
    targets: &VertexSet,
    max_level: usize,
) -> CycleSearch {
    let n = graph.vertex_count();
    let s_in = n;
    let s_out = n + 1;
    let local_target = |v: usize| v == s_in || v == s_out || targets.contains(v);

    // adjacency of the split component
    let succs = |v: usize| -> Vec<usize> {
        let orig = if v == s_out {
            t1
        } else {
            debug_assert!(v != s_in);
            v
        };
        graph
            .successors(orig)
            .iter()
            .copied()
            .filter(|w| component.contains(*w))
            .map(|w| if w == t1 { s_in } else { w })
            .collect()
    };

    let mut levels: Vec<Option<usize>> = vec![None; n + 2];
    let mut queues: Vec<Vec<usize>> = vec![Vec::new(); max_level + 2];
    levels[s_out] = Some(0);
    queues[0].push(s_out);
    let mut hit_level = None;

    'outer: for j in 0..=max_level {
        while let Some(v) = queues[j].pop() {
            if v == s_in {
                hit_level = Some(j);
                break 'outer;
            }
            for w in succs(v) {
                if levels[w].is_some() {
                    continue;
                }
                let level = if local_target(w) { j + 1 } else { j };
                levels[w] = Some(level);
                queues[level].push(w);
            }
        }
    }

    CycleSearch {
        s_in,
        s_out,
        levels,
        hit_level,
    }
}

/// Disjunctive singleton coBüchi on graphs in linear time. Every
/// non-trivial SCC missing some target is winning; an SCC holding all
/// targets is winning iff it has a cycle avoiding one, decided by an SCC
/// test without the first target and otherwise the 0/1-BFS core.
pub fn singleton_cobuchi_graph(graph: &Mdp, targets: &[VertexSet]) -> Result<VertexSet> {
    if !graph.is_graph() {
        return Err(Error::Unsupported(
            "singleton coBüchi runs on graphs only (no random vertices)".into(),
        ));
    }
    if targets.is_empty() {
        return Err(Error::Invalid("at least one target set required".into()));
    }
    for t in targets {
        if t.len() != 1 {
            return Err(Error::Unsupported(format!(
                "singleton coBüchi requires singleton targets, got a set of size {}",
                t.len()
            )));
        }
    }
    let n = graph.vertex_count();
    let t_union = union_of(n, targets);
    let k = t_union.len();
    let t1 = targets[0].first().expect("singleton target");

    let part = sccs(&graph.view());
    let full_component = {
        let c0 = part.component_of(t_union.first().unwrap());
        if t_union.iter().all(|v| part.component_of(v) == c0) {
            Some(c0)
        } else {
            None
        }
    };

    let mut winning = VertexSet::empty(n);
    for c in 0..part.count() {
        if part.is_trivial(c) || Some(c) == full_component {
            continue;
        }
        for &v in part.members(c) {
            winning.insert(v);
        }
    }

    if let Some(c) = full_component {
        let component = VertexSet::from_iter(n, part.members(c).iter().copied());
        let mut pruned = component.clone();
        pruned.remove(t1);
        let wins = if !pruned.is_empty() && {
            let sub_part = sccs(&graph.restricted(pruned));
            (0..sub_part.count()).any(|sc| !sub_part.is_trivial(sc))
        } {
            true
        } else if k == 1 {
            false
        } else {
            singleton_cobuchi_cycle_search(graph, &component, t1, &t_union, k - 1)
                .hit_level
                .is_some()
        };
        if wins {
            winning.union_with(&component);
        }
    }

    Ok(graph_reach(&graph.view(), &winning))
}

/// Gadget replacing each target vertex `t` by `t_in` (player-1, with a
/// self-loop and an edge to `t_out`) and `t_out` (keeping `t`'s owner and
/// out-edges): visiting `t_in` infinitely often almost surely in the image
/// corresponds to reaching `t` almost surely in the original. Returns the
/// image MDP, per-set Büchi targets, and the map to the `in` images.
pub fn transform_reach_to_buchi(
    mdp: &Mdp,
    targets: &[VertexSet],
) -> (Mdp, Vec<VertexSet>, Vec<usize>) {
    transform_targets(mdp, targets, Gadget::ReachToBuchi)
}

/// Inverse-direction gadget: `t_in` becomes random with edges to `t_out`
/// and to a fresh player-1 vertex `t_r` that moves on to `t_out`; reaching
/// `t_r` almost surely corresponds to visiting `t` infinitely often almost
/// surely. Returns the image MDP, per-set reach targets (`t_r` images), and
/// the map to the `in` images.
pub fn transform_buchi_to_reach(
    mdp: &Mdp,
    targets: &[VertexSet],
) -> (Mdp, Vec<VertexSet>, Vec<usize>) {
    transform_targets(mdp, targets, Gadget::BuchiToReach)
}

enum Gadget {
    ReachToBuchi,
    BuchiToReach,
}

fn transform_targets(
    mdp: &Mdp,
    targets: &[VertexSet],
    gadget: Gadget,
) -> (Mdp, Vec<VertexSet>, Vec<usize>) {
    let n = mdp.vertex_count();
    let t_union = union_of(n, targets);

    let mut in_id = vec![0usize; n];
    let mut out_id = vec![0usize; n];
    let mut aux_id = vec![0usize; n]; // t_r for the Büchi-to-reach gadget
    let mut next = 0usize;
    for v in 0..n {
        if t_union.contains(v) {
            in_id[v] = next;
            next += 1;
            match gadget {
                Gadget::ReachToBuchi => {}
                Gadget::BuchiToReach => {
                    aux_id[v] = next;
                    next += 1;
                }
            }
            out_id[v] = next;
            next += 1;
        } else {
            in_id[v] = next;
            out_id[v] = next;
            next += 1;
        }
    }

    let total = next;
    let mut owners = vec![Owner::Player1; total];
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for v in 0..n {
        if t_union.contains(v) {
            match gadget {
                Gadget::ReachToBuchi => {
                    owners[in_id[v]] = Owner::Player1;
                    edges.push((in_id[v], in_id[v]));
                    edges.push((in_id[v], out_id[v]));
                }
                Gadget::BuchiToReach => {
                    owners[in_id[v]] = Owner::Random;
                    owners[aux_id[v]] = Owner::Player1;
                    edges.push((in_id[v], out_id[v]));
                    edges.push((in_id[v], aux_id[v]));
                    edges.push((aux_id[v], out_id[v]));
                }
            }
            owners[out_id[v]] = mdp.owner(v);
            for &w in mdp.successors(v) {
                edges.push((out_id[v], in_id[w]));
            }
        } else {
            owners[in_id[v]] = mdp.owner(v);
            for &w in mdp.successors(v) {
                edges.push((in_id[v], in_id[w]));
            }
        }
    }

    let image = Mdp::new(owners, &edges).expect("gadget image is a valid MDP");
    let image_targets: Vec<VertexSet> = targets
        .iter()
        .map(|t| {
            VertexSet::from_iter(
                total,
                t.iter().map(|v| match gadget {
                    Gadget::ReachToBuchi => in_id[v],
                    Gadget::BuchiToReach => aux_id[v],
                }),
            )
        })
        .collect();
    (image, image_targets, in_id)
}


#[cfg(test)]
mod props {
    use super::*;
    use crate::oracle::oracle_as_reach;
    use crate::testprop::{arb_mdp, target_list};
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn transform_round_trips_preserve_winning(
            (mdp, targets) in arb_mdp(6).prop_flat_map(target_list(2))
        ) {
            let n = mdp.vertex_count();
            let direct: Vec<bool> = {
                let mut u = VertexSet::empty(n);
                for t in &targets { u.union_with(t); }
                let w = oracle_as_reach(&mdp, &u);
                (0..n).map(|v| w.contains(v)).collect()
            };

            // reach -> Büchi
            let (image, image_targets, map) = transform_reach_to_buchi(&mdp, &targets);
            let buchi_w = buchi_disj_objective(&image, &image_targets);
            for v in 0..n {
                prop_assert_eq!(direct[v], buchi_w.contains(map[v]),
                    "reach->buchi mismatch at {}", v);
            }

            // Büchi -> reach
            let buchi_direct = buchi_disj_objective(&mdp, &targets);
            let (image2, image_targets2, map2) = transform_buchi_to_reach(&mdp, &targets);
            let reach_w = as_reach_single(&image2, &{
                let mut u = VertexSet::empty(image2.vertex_count());
                for t in &image_targets2 { u.union_with(t); }
                u
            });
            for v in 0..n {
                prop_assert_eq!(buchi_direct.contains(v), reach_w.contains(map2[v]),
                    "buchi->reach mismatch at {}", v);
            }
        }
    }
}
