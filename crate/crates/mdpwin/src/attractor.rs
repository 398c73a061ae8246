//! Random attractors, the fixpoint primitives of every solver.

use crate::mdp::{Owner, View};
use crate::vertex_set::VertexSet;

/// Least fixpoint of
/// `Z_0 = W`,
/// `Z_{j+1} = Z_j ∪ {random v with an edge into Z_j} ∪ {player-1 v with all edges into Z_j}`.
///
/// Worklist over incoming edges with per-vertex remaining-out-degree
/// counters for the player-1 rule, so the main loop is proportional to the
/// in-degrees of attracted vertices. A player-1 vertex that is a sink inside
/// the view satisfies the rule vacuously and is attracted.
pub fn random_attractor(view: &View<'_>, w: &VertexSet) -> VertexSet {
    attractor_impl(view, w, None)
}

/// Extended variant: `t` is shielded (never attracted) and a player-1
/// vertex already counts as attracted when all its outgoing edges apart
/// from a self-loop lead into the set. `Z_0 = W \ T`.
pub fn extended_random_attractor(view: &View<'_>, w: &VertexSet, t: &VertexSet) -> VertexSet {
    attractor_impl(view, w, Some(t))
}

fn attractor_impl(view: &View<'_>, w: &VertexSet, shield: Option<&VertexSet>) -> VertexSet {
    let universe = view.universe();
    let extended = shield.is_some();
    let excluded = |v: usize| shield.is_some_and(|t| t.contains(v));

    let mut attracted = VertexSet::empty(universe);
    let mut queue: Vec<usize> = Vec::new();
    for v in w.iter() {
        if view.contains(v) && !excluded(v) && attracted.insert(v) {
            queue.push(v);
        }
    }

    // Remaining-out-degree counters for player-1 vertices. In the extended
    // variant self-loops never count, which seeds self-loop-only vertices.
    const UNSET: usize = usize::MAX;
    let mut remaining = vec![UNSET; universe];
    for v in view.vertices() {
        if view.owner(v) != Owner::Player1 || excluded(v) || attracted.contains(v) {
            continue;
        }
        let mut count = 0usize;
        for u in view.out_edges(v) {
            if !(extended && u == v) {
                count += 1;
            }
        }
        remaining[v] = count;
        if count == 0 {
            attracted.insert(v);
            queue.push(v);
        }
    }

    while let Some(z) = queue.pop() {
        for u in view.in_edges(z) {
            if attracted.contains(u) || excluded(u) {
                continue;
            }
            match view.owner(u) {
                Owner::Random => {
                    attracted.insert(u);
                    queue.push(u);
                }
                Owner::Player1 => {
                    debug_assert_ne!(remaining[u], UNSET);
                    remaining[u] -= 1;
                    if remaining[u] == 0 {
                        attracted.insert(u);
                        queue.push(u);
                    }
                }
            }
        }
    }
    attracted
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mdp::testutil::*;

    #[test]
    fn attractor_on_f3() {
        let m = f3();
        let a = random_attractor(&m.view(), &VertexSet::from_iter(3, [2]));
        assert_eq!(a.to_vec(), vec![0, 2]);
    }

    #[test]
    fn attractor_of_empty_seed() {
        let m = f3();
        assert!(random_attractor(&m.view(), &VertexSet::empty(3)).is_empty());
    }

    #[test]
    fn attractor_on_f2() {
        let m = f2();
        let a = random_attractor(&m.view(), &VertexSet::from_iter(2, [0]));
        assert_eq!(a.to_vec(), vec![0, 1]);
    }

    #[test]
    fn extended_self_loop_rule() {
        // 0 and 1 player-1; 1 has only a self-loop, 0 has a self-loop and an
        // edge to 1. The plain attractor of {1} is {1}; the extended one
        // pulls 0 in through the self-loop rule.
        let m = mdp(2, &[], &[(0, 0), (0, 1), (1, 1)]);
        let w = VertexSet::from_iter(2, [1]);
        assert_eq!(random_attractor(&m.view(), &w).to_vec(), vec![1]);
        let a = extended_random_attractor(&m.view(), &w, &VertexSet::empty(2));
        assert_eq!(a.to_vec(), vec![0, 1]);
    }

    #[test]
    fn extended_shielding() {
        let m = mdp(2, &[], &[(0, 0), (0, 1), (1, 1)]);
        let w = VertexSet::from_iter(2, [1]);
        let t = VertexSet::from_iter(2, [0]);
        let a = extended_random_attractor(&m.view(), &w, &t);
        assert_eq!(a.to_vec(), vec![1]);
    }

    #[test]
    fn extended_seed_inside_shield() {
        let m = mdp(2, &[], &[(0, 0), (0, 1), (1, 1)]);
        let w = VertexSet::from_iter(2, [1]);
        let t = VertexSet::from_iter(2, [1]);
        let a = extended_random_attractor(&m.view(), &w, &t);
        assert!(a.is_empty());
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use crate::mdp::Mdp;
    use crate::testprop::{arb_mdp, subset_of};
    use proptest::prelude::*;

    /// Literal repeated-scan fixpoint of the attractor definitions; the
    /// reference the worklist implementation is checked against.
    fn naive_attractor(view: &View<'_>, w: &VertexSet, shield: Option<&VertexSet>) -> VertexSet {
        let excluded = |v: usize| shield.is_some_and(|t| t.contains(v));
        let extended = shield.is_some();
        let mut z = VertexSet::empty(view.universe());
        for v in w.iter() {
            if view.contains(v) && !excluded(v) {
                z.insert(v);
            }
        }
        loop {
            let mut changed = false;
            for v in view.vertices() {
                if z.contains(v) || excluded(v) {
                    continue;
                }
                let hit = match view.owner(v) {
                    Owner::Random => view.out_edges(v).any(|u| z.contains(u)),
                    Owner::Player1 => view
                        .out_edges(v)
                        .all(|u| z.contains(u) || (extended && u == v)),
                };
                if hit {
                    z.insert(v);
                    changed = true;
                }
            }
            if !changed {
                return z;
            }
        }
    }

    proptest! {
        #[test]
        fn matches_naive_fixpoint((mdp, w) in arb_mdp(7).prop_flat_map(with_set)) {
            let view = mdp.view();
            prop_assert_eq!(
                random_attractor(&view, &w).to_vec(),
                naive_attractor(&view, &w, None).to_vec()
            );
        }

        #[test]
        fn extended_matches_naive(((mdp, w), t) in arb_mdp(7)
            .prop_flat_map(with_set)
            .prop_flat_map(|(m, w)| {
                let n = m.vertex_count();
                (Just((m, w)), subset_of(n))
            })) {
            let view = mdp.view();
            let got = extended_random_attractor(&view, &w, &t);
            prop_assert_eq!(got.to_vec(), naive_attractor(&view, &w, Some(&t)).to_vec());
            prop_assert!(got.is_disjoint_from(&t));
        }

        #[test]
        fn monotone_in_seed((mdp, w) in arb_mdp(7).prop_flat_map(with_set)) {
            let view = mdp.view();
            let full = random_attractor(&view, &w);
            prop_assert!(w.is_subset_of(&full));
            let mut smaller = w.clone();
            if let Some(v) = w.first() {
                smaller.remove(v);
            }
            prop_assert!(random_attractor(&view, &smaller).is_subset_of(&full));
        }

        #[test]
        fn avoids_disjoint_end_components((mdp, w) in arb_mdp(6).prop_flat_map(with_set)) {
            let view = mdp.view();
            let attr = random_attractor(&view, &w);
            for mec in crate::mec::mec_decomposition(&view).mecs() {
                if mec.is_disjoint_from(&w) {
                    prop_assert!(attr.is_disjoint_from(mec));
                }
            }
        }
    }

    fn with_set(mdp: Mdp) -> impl Strategy<Value = (Mdp, VertexSet)> {
        let n = mdp.vertex_count();
        (Just(mdp), subset_of(n))
    }
}
