//! Brute-force reference implementations. Every solver is tested against
//! these on small instances; nothing here aims to be fast.
//!
//! For objectives that only depend on the set of vertices visited
//! infinitely often, the winning set equals almost-sure reachability of the
//! union of all good end-components, so the oracle enumerates subsets.

use crate::attractor::random_attractor;
use crate::error::{Error, Result};
use crate::graph::graph_reach;
use crate::mdp::{Mdp, Owner};
use crate::mec::is_end_component;
use crate::objective::{Kind, Mode, ObjectiveSpec, Pair};
use crate::reductions::{OvInstance, SourceGraph};
use crate::vertex_set::VertexSet;

/// Subset-enumeration size guard.
pub const ORACLE_MAX_N: usize = 20;

/// Classical almost-sure reachability: make the targets absorbing, then
/// alternately restrict to the vertices that can reach the target and
/// remove the random attractor of the rest until stable.
pub fn oracle_as_reach(mdp: &Mdp, t: &VertexSet) -> VertexSet {
    let n = mdp.vertex_count();
    let mut owners = Vec::with_capacity(n);
    let mut edge_list = Vec::new();
    for v in 0..n {
        if t.contains(v) {
            owners.push(Owner::Player1);
            edge_list.push((v, v));
        } else {
            owners.push(mdp.owner(v));
            for &w in mdp.successors(v) {
                edge_list.push((v, w));
            }
        }
    }
    let absorbed = Mdp::new(owners, &edge_list).expect("absorbing copy is valid");

    let mut current = VertexSet::full(n);
    loop {
        let view = absorbed.restricted(current.clone());
        let mut targets = t.clone();
        targets.intersect_with(&current);
        let can_reach = graph_reach(&view, &targets);
        if can_reach.len() == current.len() {
            return current;
        }
        let mut cut = current.clone();
        cut.subtract(&can_reach);
        let attr = random_attractor(&view, &cut);
        current.subtract(&attr);
        if current.is_empty() {
            return current;
        }
    }
}

/// All end-components satisfying `good`, by explicit subset enumeration.
pub fn oracle_good_ecs(
    mdp: &Mdp,
    good: impl Fn(&VertexSet) -> bool,
) -> Result<Vec<VertexSet>> {
    let n = mdp.vertex_count();
    if n > ORACLE_MAX_N {
        return Err(Error::SizeGuard { n, max: ORACLE_MAX_N });
    }
    let view = mdp.view();
    let mut out = Vec::new();
    for bits in 1u64..(1u64 << n) {
        let x = VertexSet::from_iter(n, (0..n).filter(|&v| bits & (1 << v) != 0));
        if is_end_component(&view, &x) && good(&x) {
            out.push(x);
        }
    }
    Ok(out)
}

fn reach_of_good_ecs(mdp: &Mdp, good: impl Fn(&VertexSet) -> bool) -> Result<VertexSet> {
    let mut union = VertexSet::empty(mdp.vertex_count());
    for ec in oracle_good_ecs(mdp, good)? {
        union.union_with(&ec);
    }
    Ok(oracle_as_reach(mdp, &union))
}

fn streett_pair_good(x: &VertexSet, pair: &Pair) -> bool {
    x.is_disjoint_from(&pair.l) || !x.is_disjoint_from(&pair.u)
}

fn rabin_pair_good(x: &VertexSet, pair: &Pair) -> bool {
    !x.is_disjoint_from(&pair.l) && x.is_disjoint_from(&pair.u)
}

/// Winning set per the good-end-component characterization, or via the
/// classical reachability/attractor routes for reach and safety.
pub fn oracle_winning_set(mdp: &Mdp, objective: &ObjectiveSpec) -> Result<VertexSet> {
    let n = mdp.vertex_count();
    let union_sets = |sets: &[VertexSet]| {
        let mut u = VertexSet::empty(n);
        for s in sets {
            u.union_with(s);
        }
        u
    };

    match objective.kind {
        Kind::Reach => match objective.mode {
            Mode::Single => Ok(oracle_as_reach(mdp, &objective.sets[0])),
            Mode::DisjObjective => Ok(oracle_as_reach(mdp, &union_sets(&objective.sets))),
            Mode::DisjQuery => {
                let mut w = VertexSet::empty(n);
                for t in &objective.sets {
                    w.union_with(&oracle_as_reach(mdp, t));
                }
                Ok(w)
            }
            Mode::ConjObjective | Mode::ConjQuery => Err(Error::Unsupported(
                "conjunctive reachability has no oracle here".into(),
            )),
        },
        Kind::Safety => match objective.mode {
            Mode::Single => Ok(random_attractor(&mdp.view(), &objective.sets[0]).complement()),
            Mode::ConjObjective | Mode::ConjQuery => Ok(random_attractor(
                &mdp.view(),
                &union_sets(&objective.sets),
            )
            .complement()),
            Mode::DisjQuery => {
                let mut w = VertexSet::empty(n);
                for t in &objective.sets {
                    w.union_with(&random_attractor(&mdp.view(), t).complement());
                }
                Ok(w)
            }
            Mode::DisjObjective => {
                if mdp.is_graph() {
                    let mut w = VertexSet::empty(n);
                    for t in &objective.sets {
                        w.union_with(&random_attractor(&mdp.view(), t).complement());
                    }
                    Ok(w)
                } else {
                    Err(Error::Unsupported(
                        "disjunctive safety objectives on MDPs have no oracle here".into(),
                    ))
                }
            }
        },
        Kind::Buchi => {
            let sets = objective.sets.clone();
            match objective.mode {
                Mode::Single | Mode::DisjObjective => {
                    let u = union_sets(&sets);
                    reach_of_good_ecs(mdp, |x| !x.is_disjoint_from(&u))
                }
                Mode::ConjObjective | Mode::ConjQuery => {
                    reach_of_good_ecs(mdp, |x| sets.iter().all(|t| !x.is_disjoint_from(t)))
                }
                Mode::DisjQuery => {
                    let mut w = VertexSet::empty(n);
                    for t in &sets {
                        w.union_with(&reach_of_good_ecs(mdp, |x| !x.is_disjoint_from(t))?);
                    }
                    Ok(w)
                }
            }
        }
        Kind::CoBuchi => {
            let sets = objective.sets.clone();
            match objective.mode {
                Mode::Single | Mode::DisjObjective => {
                    reach_of_good_ecs(mdp, |x| sets.iter().any(|t| x.is_disjoint_from(t)))
                }
                Mode::ConjObjective | Mode::ConjQuery => {
                    let u = union_sets(&sets);
                    reach_of_good_ecs(mdp, |x| x.is_disjoint_from(&u))
                }
                Mode::DisjQuery => {
                    let mut w = VertexSet::empty(n);
                    for t in &sets {
                        w.union_with(&reach_of_good_ecs(mdp, |x| x.is_disjoint_from(t))?);
                    }
                    Ok(w)
                }
            }
        }
        Kind::Streett => {
            let pairs = objective.pairs.clone();
            match objective.mode {
                Mode::Single | Mode::ConjObjective | Mode::ConjQuery => {
                    reach_of_good_ecs(mdp, |x| pairs.iter().all(|p| streett_pair_good(x, p)))
                }
                Mode::DisjObjective => {
                    reach_of_good_ecs(mdp, |x| pairs.iter().any(|p| streett_pair_good(x, p)))
                }
                Mode::DisjQuery => {
                    let mut w = VertexSet::empty(n);
                    for p in &pairs {
                        w.union_with(&reach_of_good_ecs(mdp, |x| streett_pair_good(x, p))?);
                    }
                    Ok(w)
                }
            }
        }
        Kind::Rabin => {
            let pairs = objective.pairs.clone();
            match objective.mode {
                Mode::Single | Mode::DisjObjective => {
                    reach_of_good_ecs(mdp, |x| pairs.iter().any(|p| rabin_pair_good(x, p)))
                }
                Mode::ConjObjective | Mode::ConjQuery => {
                    reach_of_good_ecs(mdp, |x| pairs.iter().all(|p| rabin_pair_good(x, p)))
                }
                Mode::DisjQuery => {
                    let mut w = VertexSet::empty(n);
                    for p in &pairs {
                        w.union_with(&reach_of_good_ecs(mdp, |x| rabin_pair_good(x, p))?);
                    }
                    Ok(w)
                }
            }
        }
    }
}

/// O(n^3) triple scan for a triangle.
pub fn oracle_triangle(g: &SourceGraph) -> bool {
    let n = g.vertex_count();
    let mut adj = vec![false; n * n];
    for &(u, v) in g.edges() {
        adj[u * n + v] = true;
    }
    for x in 0..n {
        for y in 0..n {
            if !adj[x * n + y] {
                continue;
            }
            for z in 0..n {
                if adj[y * n + z] && adj[z * n + x] {
                    return true;
                }
            }
        }
    }
    false
}

/// O(N^2 d) pair scan for an orthogonal pair.
pub fn oracle_ov(ov: &OvInstance) -> bool {
    ov.s1().iter().any(|&x| ov.s2().iter().any(|&y| x & y == 0))
}
