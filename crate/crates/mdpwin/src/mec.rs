//! Maximal end-component decomposition and MEC contraction.
//!
//! An end-component is a vertex set whose induced sub-MDP is strongly
//! connected, keeps all random edges inside, and contains at least one edge.
//! The decomposition here is the textbook SCC-and-attractor iteration; it
//! sits behind this module's interface so a faster algorithm can be swapped
//! in without touching any solver.

use crate::attractor::random_attractor;
use crate::graph::sccs;
use crate::mdp::{Mdp, Owner, View};
use crate::vertex_set::VertexSet;

/// The MECs of a view plus the residual vertices belonging to none.
#[derive(Debug, Clone)]
pub struct MecDecomposition {
    mecs: Vec<VertexSet>,
    residual: VertexSet,
    mec_of: Vec<Option<usize>>,
}

impl MecDecomposition {
    pub fn mecs(&self) -> &[VertexSet] {
        &self.mecs
    }

    pub fn residual(&self) -> &VertexSet {
        &self.residual
    }

    /// Index of the MEC containing `v`, if any.
    pub fn mec_of(&self, v: usize) -> Option<usize> {
        self.mec_of[v]
    }
}

/// True iff the induced sub-MDP of `x` is strongly connected, has no random
/// edge leaving `x`, and contains at least one edge.
pub fn is_end_component(view: &View<'_>, x: &VertexSet) -> bool {
    if x.is_empty() {
        return false;
    }
    let sub = view.restrict(x);
    if sub.vertex_count() != x.len() {
        return false; // x not fully inside the view
    }
    for v in sub.vertices() {
        if view.owner(v) == Owner::Random && view.out_edges(v).any(|w| !x.contains(w)) {
            return false;
        }
    }
    if !sub.has_any_edge() {
        return false;
    }
    let part = sccs(&sub);
    part.count() == 1
}

/// Exact MEC decomposition. Repeatedly decomposes into SCCs and removes,
/// inside each SCC, the random attractor of the random vertices with edges
/// leaving it, until every remaining SCC is random-closed; those with an
/// edge are the MECs.
pub fn mec_decomposition(view: &View<'_>) -> MecDecomposition {
    let universe = view.universe();
    let mut remaining = view.clone();
    let mut mecs: Vec<VertexSet> = Vec::new();

    loop {
        let part = sccs(&remaining);
        let mut removed_any = false;
        let mut finished: Vec<VertexSet> = Vec::new();
        let mut to_remove = VertexSet::empty(universe);

        for c in 0..part.count() {
            let members = part.members(c);
            let comp = VertexSet::from_iter(universe, members.iter().copied());
            // Random vertices with a view edge leaving the SCC; edges to
            // already-removed vertices count as leaving.
            let mut boundary = VertexSet::empty(universe);
            for &v in members {
                if view.owner(v) == Owner::Random && view.out_edges(v).any(|w| !comp.contains(w))
                {
                    boundary.insert(v);
                }
            }
            if boundary.is_empty() {
                let sub = remaining.restrict(&comp);
                if sub.has_any_edge() {
                    finished.push(comp);
                }
            } else {
                let attr = random_attractor(&remaining.restrict(&comp), &boundary);
                to_remove.union_with(&attr);
                removed_any = true;
            }
        }

        if !removed_any {
            let mut mec_of = vec![None; universe];
            let mut covered = VertexSet::empty(universe);
            for comp in finished {
                for v in comp.iter() {
                    mec_of[v] = Some(mecs.len());
                }
                covered.union_with(&comp);
                mecs.push(comp);
            }
            let mut residual = view.kept().clone();
            residual.subtract(&covered);
            return MecDecomposition {
                mecs,
                residual,
                mec_of,
            };
        }
        let mut keep = remaining.kept().clone();
        keep.subtract(&to_remove);
        remaining = view.restrict(&keep);
    }
}

/// Quotient of an MDP under a MEC decomposition: each MEC becomes a single
/// player-1 vertex with a self-loop, parallel edges are merged, and the
/// quotient adjacency is sorted ascending.
pub struct ContractedMdp {
    pub quotient: Mdp,
    to_quotient: Vec<usize>,
    from_quotient: Vec<Vec<usize>>,
}

impl ContractedMdp {
    pub fn image(&self, v: usize) -> usize {
        self.to_quotient[v]
    }

    pub fn preimage(&self, q: usize) -> &[usize] {
        &self.from_quotient[q]
    }

    /// Maps a set of original vertices to their quotient images.
    pub fn image_set(&self, set: &VertexSet) -> VertexSet {
        let mut out = VertexSet::empty(self.quotient.vertex_count());
        for v in set.iter() {
            out.insert(self.to_quotient[v]);
        }
        out
    }

    /// Expands a set of quotient vertices back to original vertices.
    pub fn preimage_set(&self, set: &VertexSet, universe: usize) -> VertexSet {
        let mut out = VertexSet::empty(universe);
        for q in set.iter() {
            for &v in &self.from_quotient[q] {
                out.insert(v);
            }
        }
        out
    }
}

/// Contracts every MEC of `mdp` to a single player-1 vertex with a
/// self-loop. Quotient ids are assigned by ascending first member.
pub fn contract_mecs(mdp: &Mdp, decomposition: &MecDecomposition) -> ContractedMdp {
    let n = mdp.vertex_count();
    const UNSET: usize = usize::MAX;
    let mut to_quotient = vec![UNSET; n];
    let mut from_quotient: Vec<Vec<usize>> = Vec::new();
    let mut mec_vertex: Vec<Option<usize>> = vec![None; decomposition.mecs().len()];
    let mut is_contracted: Vec<bool> = Vec::new();

    for v in 0..n {
        match decomposition.mec_of(v) {
            Some(m) => {
                let q = *mec_vertex[m].get_or_insert_with(|| {
                    from_quotient.push(Vec::new());
                    is_contracted.push(true);
                    from_quotient.len() - 1
                });
                to_quotient[v] = q;
                from_quotient[q].push(v);
            }
            None => {
                to_quotient[v] = from_quotient.len();
                from_quotient.push(vec![v]);
                is_contracted.push(false);
            }
        }
    }

    let qn = from_quotient.len();
    let mut owners = Vec::with_capacity(qn);
    for q in 0..qn {
        if is_contracted[q] {
            owners.push(Owner::Player1);
        } else {
            owners.push(mdp.owner(from_quotient[q][0]));
        }
    }

    let mut adjacency: Vec<VertexSet> = (0..qn).map(|_| VertexSet::empty(qn)).collect();
    for u in 0..n {
        let qu = to_quotient[u];
        for &v in mdp.successors(u) {
            let qv = to_quotient[v];
            if qu == qv && !is_contracted[qu] {
                adjacency[qu].insert(qv); // original self-loop
            } else if qu != qv {
                adjacency[qu].insert(qv);
            }
        }
    }
    for q in 0..qn {
        if is_contracted[q] {
            adjacency[q].insert(q);
        }
    }

    let mut edge_list = Vec::new();
    for (q, adj) in adjacency.iter().enumerate() {
        for w in adj.iter() {
            edge_list.push((q, w));
        }
    }
    let quotient = Mdp::new(owners, &edge_list)
        .expect("quotient of a valid MDP under a valid decomposition is valid");

    ContractedMdp {
        quotient,
        to_quotient,
        from_quotient,
    }
}

/// Decomposition and contraction of the full MDP, computed once per model
/// and shared by all solvers.
pub struct MecAnalysis {
    pub decomposition: MecDecomposition,
    pub contracted: ContractedMdp,
}

impl Mdp {
    /// Cached MEC analysis of the whole MDP.
    pub fn mec_analysis(&self) -> &MecAnalysis {
        self.analysis.get_or_init(|| {
            let decomposition = mec_decomposition(&self.view());
            let contracted = contract_mecs(self, &decomposition);
            Box::new(MecAnalysis {
                decomposition,
                contracted,
            })
        })
    }
}


#[cfg(test)]
mod props {
    use super::*;
    use crate::graph::graph_reach;
    use crate::testprop::arb_mdp;
    use proptest::prelude::*;

    /// All maximal end-components by explicit subset enumeration.
    fn enumerated_mecs(mdp: &Mdp) -> Vec<Vec<usize>> {
        let n = mdp.vertex_count();
        assert!(n <= 8);
        let view = mdp.view();
        let mut ecs: Vec<VertexSet> = Vec::new();
        for bits in 1u32..(1 << n) {
            let x = VertexSet::from_iter(n, (0..n).filter(|&v| bits & (1 << v) != 0));
            if is_end_component(&view, &x) {
                ecs.push(x);
            }
        }
        let mut maximal: Vec<Vec<usize>> = Vec::new();
        for (i, x) in ecs.iter().enumerate() {
            if ecs
                .iter()
                .enumerate()
                .all(|(j, y)| i == j || !x.is_subset_of(y) || x == y)
            {
                maximal.push(x.to_vec());
            }
        }
        maximal.sort();
        maximal.dedup();
        maximal
    }

    proptest! {
        #[test]
        fn matches_subset_enumeration(mdp in arb_mdp(6)) {
            let d = mec_decomposition(&mdp.view());
            let mut got: Vec<Vec<usize>> = d.mecs().iter().map(VertexSet::to_vec).collect();
            got.sort();
            prop_assert_eq!(got, enumerated_mecs(&mdp));
        }

        #[test]
        fn quotient_has_no_nontrivial_end_component(mdp in arb_mdp(6)) {
            let c = contract_mecs(&mdp, &mec_decomposition(&mdp.view()));
            let q = &c.quotient;
            for mec in mec_decomposition(&q.view()).mecs() {
                // only contracted vertices may form (trivial) MECs
                prop_assert_eq!(mec.len(), 1);
                let v = mec.first().unwrap();
                prop_assert!(q.successors(v).contains(&v));
                let pre = VertexSet::from_iter(mdp.vertex_count(), c.preimage(v).iter().copied());
                prop_assert!(is_end_component(&mdp.view(), &pre));
            }
        }

        #[test]
        fn contraction_preserves_reachability(mdp in arb_mdp(6)) {
            let n = mdp.vertex_count();
            let c = contract_mecs(&mdp, &mec_decomposition(&mdp.view()));
            for u in 0..n {
                let from_u = graph_reach(
                    &mdp.reversed_view(),
                    &VertexSet::from_iter(n, [u]),
                );
                let qn = c.quotient.vertex_count();
                let from_qu = graph_reach(
                    &c.quotient.reversed_view(),
                    &VertexSet::from_iter(qn, [c.image(u)]),
                );
                for v in 0..n {
                    prop_assert_eq!(
                        from_u.contains(v),
                        from_qu.contains(c.image(v)),
                        "reachability {} -> {} changed under contraction", u, v
                    );
                }
            }
        }
    }
}
