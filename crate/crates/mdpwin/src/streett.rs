//! Almost-sure winning sets for Streett objectives via four algorithms:
//! a basic MEC-recomputation loop, an improved SCC-based loop, and the
//! dense (hierarchical decomposition) and sparse (lock-step search)
//! variants. All maintain shrinking candidate vertex sets without outgoing
//! random edges, collect good end-components, and finish with one
//! almost-sure reachability computation.

use std::collections::HashMap;

use crate::attractor::random_attractor;
use crate::error::{Error, Result};
use crate::graph::{
    hierarchical_small_scc, lockstep_small_scc, sccs, ExtremalScc, GroupedAdj, SccSide,
};
use crate::mdp::{Mdp, Owner};
use crate::mec::mec_decomposition;
use crate::objective::Pair;
use crate::reach::as_reach_single;
use crate::vertex_set::VertexSet;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    L,
    U,
}

/// Per-vertex membership lists over the Streett pairs, built once per solve
/// in O(b + n) and shared by every [`StreettState`].
pub struct StreettIndex {
    per_vertex: Vec<Vec<(u32, Side)>>,
}

impl StreettIndex {
    pub fn new(n: usize, pairs: &[Pair]) -> StreettIndex {
        let mut per_vertex: Vec<Vec<(u32, Side)>> = vec![Vec::new(); n];
        for (i, pair) in pairs.iter().enumerate() {
            for v in pair.l.iter() {
                per_vertex[v].push((i as u32, Side::L));
            }
            for v in pair.u.iter() {
                per_vertex[v].push((i as u32, Side::U));
            }
        }
        StreettIndex { per_vertex }
    }
}

#[derive(Default, Clone, Copy)]
struct PairCounts {
    l: u32,
    u: u32,
}

/// Amortized bad-vertex structure over a candidate set X: maintains the
/// per-pair intersection counts and the set
/// `{v in X | some i: v in L_i and X cap U_i is empty}` under removals.
/// Construction costs O(bits(X) + |X|), removing B costs O(bits(B) + |B|)
/// amortized, and the bad query is amortized constant per returned vertex.
pub struct StreettState<'a> {
    index: &'a StreettIndex,
    members: VertexSet,
    counts: HashMap<u32, PairCounts>,
    l_members: HashMap<u32, Vec<usize>>,
    bad_list: Vec<usize>,
    bad_flag: VertexSet,
}

impl<'a> StreettState<'a> {
    pub fn construct(index: &'a StreettIndex, x: &VertexSet) -> StreettState<'a> {
        let mut state = StreettState {
            index,
            members: x.clone(),
            counts: HashMap::new(),
            l_members: HashMap::new(),
            bad_list: Vec::new(),
            bad_flag: VertexSet::empty(x.universe()),
        };
        for v in x.iter() {
            for &(i, side) in &index.per_vertex[v] {
                let c = state.counts.entry(i).or_default();
                match side {
                    Side::L => {
                        c.l += 1;
                        state.l_members.entry(i).or_default().push(v);
                    }
                    Side::U => c.u += 1,
                }
            }
        }
        let exhausted: Vec<u32> = state
            .counts
            .iter()
            .filter(|(_, c)| c.u == 0 && c.l > 0)
            .map(|(&i, _)| i)
            .collect();
        for i in exhausted {
            state.mark_pair_bad(i);
        }
        state
    }

    fn mark_pair_bad(&mut self, i: u32) {
        // stale entries (already removed vertices) are skipped; each list is
        // walked at most once because counts never increase
        let list = self.l_members.remove(&i).unwrap_or_default();
        for v in list {
            if self.members.contains(v) && self.bad_flag.insert(v) {
                self.bad_list.push(v);
            }
        }
    }

    pub fn members(&self) -> &VertexSet {
        &self.members
    }

    /// Total pair membership mass of the current set.
    pub fn bits(&self) -> usize {
        self.counts.values().map(|c| (c.l + c.u) as usize).sum()
    }

    /// Removes `b` from the set; every removed vertex must be present.
    pub fn remove(&mut self, b: &VertexSet) -> Result<()> {
        for v in b.iter() {
            if !self.members.remove(v) {
                return Err(Error::Precondition(format!(
                    "removed vertex {v} is not in the candidate set"
                )));
            }
        }
        let mut exhausted: Vec<u32> = Vec::new();
        for v in b.iter() {
            for &(i, side) in &self.index.per_vertex[v] {
                let c = self.counts.get_mut(&i).expect("member pair count");
                match side {
                    Side::L => c.l -= 1,
                    Side::U => {
                        c.u -= 1;
                        if c.u == 0 && c.l > 0 {
                            exhausted.push(i);
                        }
                    }
                }
            }
        }
        for i in exhausted {
            self.mark_pair_bad(i);
        }
        Ok(())
    }

    /// Current bad set; stale entries are compacted away in passing.
    pub fn bad(&mut self) -> VertexSet {
        self.compact();
        VertexSet::from_iter(self.members.universe(), self.bad_list.iter().copied())
    }

    pub fn bad_is_empty(&mut self) -> bool {
        self.compact();
        self.bad_list.is_empty()
    }

    fn compact(&mut self) {
        let members = &self.members;
        self.bad_list.retain(|&v| members.contains(v));
    }
}

fn assert_random_closed(mdp: &Mdp, s: &VertexSet) {
    if cfg!(debug_assertions) {
        for v in s.iter() {
            if mdp.owner(v) == Owner::Random {
                debug_assert!(
                    mdp.successors(v).iter().all(|&w| s.contains(w)),
                    "candidate set has an outgoing random edge at {v}"
                );
            }
        }
    }
}

/// Basic algorithm: worklist of candidate end-components seeded with the
/// MECs; bad vertices and their random attractor are removed and the MECs
/// of the remainder re-enter the worklist.
pub fn streett_basic(mdp: &Mdp, pairs: &[Pair]) -> VertexSet {
    assert!(!pairs.is_empty(), "at least one Streett pair required");
    let n = mdp.vertex_count();
    let mut good = VertexSet::empty(n);
    let mut stack: Vec<VertexSet> = mdp.mec_analysis().decomposition.mecs().to_vec();

    while let Some(x) = stack.pop() {
        let mut bad = VertexSet::empty(n);
        for pair in pairs {
            if pair.u.is_disjoint_from(&x) {
                let mut l = pair.l.clone();
                l.intersect_with(&x);
                bad.union_with(&l);
            }
        }
        if bad.is_empty() {
            good.union_with(&x);
        } else {
            let attr = random_attractor(&mdp.restricted(x.clone()), &bad);
            let mut rest = x;
            rest.subtract(&attr);
            if !rest.is_empty() {
                for mec in mec_decomposition(&mdp.restricted(rest)).mecs() {
                    assert_random_closed(mdp, mec);
                    stack.push(mec.clone());
                }
            }
        }
    }
    as_reach_single(mdp, &good)
}

/// Shared inner loop: repeatedly removes the random attractor of the bad
/// set, keeping the candidate random-closed.
fn drain_bad(mdp: &Mdp, state: &mut StreettState<'_>) -> VertexSet {
    let mut removed = VertexSet::empty(state.members().universe());
    loop {
        let bad = state.bad();
        if bad.is_empty() {
            return removed;
        }
        let attr = random_attractor(&mdp.restricted(state.members().clone()), &bad);
        state.remove(&attr).expect("attractor within candidate");
        removed.union_with(&attr);
    }
}

fn largest_component(parts: &crate::graph::SccPartition) -> usize {
    let mut best = 0usize;
    for c in 1..parts.count() {
        let (bl, cl) = (parts.members(best).len(), parts.members(c).len());
        if cl > bl || (cl == bl && parts.members(c)[0] < parts.members(best)[0]) {
            best = c;
        }
    }
    best
}

fn random_boundary(mdp: &Mdp, comp: &VertexSet, universe_set: &VertexSet) -> VertexSet {
    let mut r = VertexSet::empty(comp.universe());
    for v in comp.iter() {
        if mdp.owner(v) == Owner::Random
            && mdp
                .successors(v)
                .iter()
                .any(|&w| universe_set.contains(w) && !comp.contains(w))
        {
            r.insert(v);
        }
    }
    r
}

/// Improved algorithm: SCC computation plus random-boundary attractors
/// replace MEC recomputation; the data structure of the popped set is
/// reused for the largest SCC.
pub fn streett_impr(mdp: &Mdp, pairs: &[Pair]) -> VertexSet {
    assert!(!pairs.is_empty(), "at least one Streett pair required");
    let n = mdp.vertex_count();
    let index = StreettIndex::new(n, pairs);
    let mut good = VertexSet::empty(n);
    let mut queue: Vec<StreettState<'_>> = mdp
        .mec_analysis()
        .decomposition
        .mecs()
        .iter()
        .map(|m| StreettState::construct(&index, m))
        .collect();

    while let Some(mut state) = queue.pop() {
        drain_bad(mdp, &mut state);
        let s = state.members().clone();
        let sub = mdp.restricted(s.clone());
        if !sub.has_any_edge() {
            continue;
        }
        let parts = sccs(&sub);
        if parts.count() == 1 {
            good.union_with(&s);
            continue;
        }
        let largest = largest_component(&parts);
        for c in 0..parts.count() {
            let comp = VertexSet::from_iter(n, parts.members(c).iter().copied());
            let boundary = random_boundary(mdp, &comp, &s);
            let attr = random_attractor(&mdp.restricted(comp.clone()), &boundary);
            if c == largest {
                state.remove(&attr).expect("attractor within candidate");
            } else {
                state.remove(&comp).expect("SCC within candidate");
                let mut kept = comp;
                kept.subtract(&attr);
                if !kept.is_empty() {
                    assert_random_closed(mdp, &kept);
                    queue.push(StreettState::construct(&index, &kept));
                }
            }
        }
        if !state.members().is_empty() {
            assert_random_closed(mdp, state.members());
            queue.push(state);
        }
    }
    as_reach_single(mdp, &good)
}

/// Candidate bookkeeping shared by the dense and sparse variants: a grouped
/// adjacency where each candidate set owns a group id, removed vertices are
/// dead, and cross-group edges are pruned lazily.
struct Candidates {
    adj: GroupedAdj,
    next_group: u64,
}

impl Candidates {
    fn new(mdp: &Mdp) -> Candidates {
        Candidates {
            adj: GroupedAdj::from_view(&mdp.view()),
            next_group: 0,
        }
    }

    fn assign(&mut self, set: &VertexSet) -> u64 {
        let g = self.next_group;
        self.next_group += 1;
        for v in set.iter() {
            self.adj.set_group(v, g);
        }
        g
    }

    fn kill(&mut self, set: &VertexSet) {
        for v in set.iter() {
            self.adj.kill(v);
        }
    }
}

/// Dense variant: the SCC search inside the loop is the hierarchical
/// level-graph search, finding either strong connectivity or a top/bottom
/// SCC of at most half the size.
pub fn streett_dense(mdp: &Mdp, pairs: &[Pair]) -> VertexSet {
    assert!(!pairs.is_empty(), "at least one Streett pair required");
    let n = mdp.vertex_count();
    let index = StreettIndex::new(n, pairs);
    let mut cands = Candidates::new(mdp);
    // vertices outside every MEC never join a candidate
    let mut in_some = VertexSet::empty(n);
    for mec in mdp.mec_analysis().decomposition.mecs() {
        in_some.union_with(mec);
    }
    cands.kill(&in_some.complement());

    let mut good = VertexSet::empty(n);
    let mut queue: Vec<StreettState<'_>> = mdp
        .mec_analysis()
        .decomposition
        .mecs()
        .iter()
        .map(|m| {
            cands.assign(m);
            StreettState::construct(&index, m)
        })
        .collect();

    while let Some(mut state) = queue.pop() {
        let removed = drain_bad(mdp, &mut state);
        cands.kill(&removed);
        let s = state.members().clone();
        if s.is_empty() || !mdp.restricted(s.clone()).has_any_edge() {
            cands.kill(&s);
            continue;
        }
        match hierarchical_small_scc(&mut cands.adj, &s) {
            ExtremalScc::Whole => {
                good.union_with(&s);
                cands.kill(&s);
            }
            ExtremalScc::Found { vertices: c, side } => {
                match side {
                    SccSide::Top => {
                        // keep S \ C on the popped state, carve the random
                        // boundary out of C, then C continues on its own
                        let mut rest_state = state;
                        rest_state.remove(&c).expect("SCC within candidate");
                        let rest = rest_state.members().clone();
                        if !rest.is_empty() {
                            assert_random_closed(mdp, &rest);
                            queue.push(rest_state);
                        }
                        let boundary = random_boundary(mdp, &c, &s);
                        let attr = random_attractor(&mdp.restricted(c.clone()), &boundary);
                        let mut kept = c.clone();
                        kept.subtract(&attr);
                        cands.kill(&attr);
                        if !kept.is_empty() {
                            cands.assign(&kept);
                            assert_random_closed(mdp, &kept);
                            queue.push(StreettState::construct(&index, &kept));
                        }
                    }
                    SccSide::Bottom => {
                        let attr = random_attractor(&mdp.restricted(s.clone()), &c);
                        let mut rest_state = state;
                        rest_state.remove(&attr).expect("attractor within candidate");
                        let rest = rest_state.members().clone();
                        let mut dead = attr;
                        dead.subtract(&c);
                        cands.kill(&dead);
                        cands.assign(&c);
                        if !rest.is_empty() {
                            assert_random_closed(mdp, &rest);
                            queue.push(rest_state);
                        }
                        assert_random_closed(mdp, &c);
                        queue.push(StreettState::construct(&index, &c));
                    }
                }
            }
        }
    }
    as_reach_single(mdp, &good)
}

/// Label bookkeeping for the sparse variant.
struct Labels {
    h: VertexSet,
    t: VertexSet,
}

impl Labels {
    fn new(n: usize) -> Labels {
        Labels {
            h: VertexSet::empty(n),
            t: VertexSet::empty(n),
        }
    }

    fn clear_for(&mut self, set: &VertexSet) {
        self.h.subtract(set);
        self.t.subtract(set);
    }

    /// Labels the vertices of the surviving candidate `z` that lost an edge
    /// to the departed set `y`: heads of lost incoming edges get h, tails of
    /// lost outgoing edges get t. Walks the adjacency of `y`.
    fn lost_to(&mut self, mdp: &Mdp, z: &VertexSet, y: &VertexSet) {
        for removed in y.iter() {
            for &w in mdp.successors(removed) {
                if z.contains(w) {
                    self.h.insert(w);
                }
            }
            for &w in &mdp.reverse_edges()[removed] {
                if z.contains(w) {
                    self.t.insert(w);
                }
            }
        }
    }

}

/// Sparse variant: vertices that lost incoming/outgoing edges carry h/t
/// labels. Few labels mean a cheap lock-step search from the labeled
/// vertices; many labels trigger a full SCC recomputation.
pub fn streett_sparse(mdp: &Mdp, pairs: &[Pair]) -> VertexSet {
    assert!(!pairs.is_empty(), "at least one Streett pair required");
    let n = mdp.vertex_count();
    let m = mdp.edge_count();
    let log_n = crate::graph::ceil_log2(n).max(1) as usize;
    // lab >= sqrt(m / log n), compared in squared integer form
    let many_labels = |lab: usize| lab * lab * log_n >= m;

    let index = StreettIndex::new(n, pairs);
    let mut cands = Candidates::new(mdp);
    let mut in_some = VertexSet::empty(n);
    for mec in mdp.mec_analysis().decomposition.mecs() {
        in_some.union_with(mec);
    }
    cands.kill(&in_some.complement());
    let mut labels = Labels::new(n);

    let mut good = VertexSet::empty(n);
    let mut queue: Vec<StreettState<'_>> = mdp
        .mec_analysis()
        .decomposition
        .mecs()
        .iter()
        .map(|mec| {
            cands.assign(mec);
            StreettState::construct(&index, mec)
        })
        .collect();

    while let Some(mut state) = queue.pop() {
        let removed = drain_bad(mdp, &mut state);
        if !removed.is_empty() {
            cands.kill(&removed);
            labels.lost_to(mdp, state.members(), &removed);
        }
        let s = state.members().clone();
        if s.is_empty() || !mdp.restricted(s.clone()).has_any_edge() {
            cands.kill(&s);
            continue;
        }
        debug_assert!(label_invariant_holds(mdp, &s, &labels));

        let mut heads = s.clone();
        heads.intersect_with(&labels.h);
        let mut tails = s.clone();
        tails.intersect_with(&labels.t);
        let lab = heads.len() + tails.len();

        if lab == 0 {
            good.union_with(&s);
            cands.kill(&s);
        } else if many_labels(lab) {
            // full SCC recomputation, as in the improved algorithm
            labels.clear_for(&s);
            let parts = sccs(&mdp.restricted(s.clone()));
            let largest = largest_component(&parts);
            for c in 0..parts.count() {
                let comp = VertexSet::from_iter(n, parts.members(c).iter().copied());
                let boundary = random_boundary(mdp, &comp, &s);
                let attr = random_attractor(&mdp.restricted(comp.clone()), &boundary);
                let mut kept = comp.clone();
                kept.subtract(&attr);
                cands.kill(&attr);
                labels.lost_to(mdp, &kept, &attr);
                if c == largest {
                    state.remove(&attr).expect("attractor within candidate");
                } else {
                    state.remove(&comp).expect("SCC within candidate");
                    if !kept.is_empty() {
                        cands.assign(&kept);
                        assert_random_closed(mdp, &kept);
                        debug_assert!(label_invariant_holds(mdp, &kept, &labels));
                        queue.push(StreettState::construct(&index, &kept));
                    }
                }
            }
            if !state.members().is_empty() {
                assert_random_closed(mdp, state.members());
                debug_assert!(label_invariant_holds(mdp, state.members(), &labels));
                queue.push(state);
            }
        } else {
            let (comp, side) = lockstep_small_scc(
                &mut cands.adj,
                &s,
                &tails.to_vec(),
                &heads.to_vec(),
            )
            .expect("label invariant guarantees a completable search");
            let c = VertexSet::from_iter(n, comp.iter().copied());
            if c.len() == s.len() {
                good.union_with(&s);
                cands.kill(&s);
                continue;
            }
            labels.clear_for(&c);
            match side {
                SccSide::Top => {
                    let mut rest_state = state;
                    rest_state.remove(&c).expect("SCC within candidate");
                    let boundary = random_boundary(mdp, &c, &s);
                    let attr = random_attractor(&mdp.restricted(c.clone()), &boundary);
                    let mut kept = c.clone();
                    kept.subtract(&attr);
                    cands.kill(&attr);
                    if !kept.is_empty() {
                        cands.assign(&kept);
                    }
                    labels.lost_to(mdp, &kept, &attr);
                    labels.lost_to(mdp, rest_state.members(), &c);
                    if !rest_state.members().is_empty() {
                        assert_random_closed(mdp, rest_state.members());
                        debug_assert!(label_invariant_holds(mdp, rest_state.members(), &labels));
                        queue.push(rest_state);
                    }
                    if !kept.is_empty() {
                        assert_random_closed(mdp, &kept);
                        debug_assert!(label_invariant_holds(mdp, &kept, &labels));
                        queue.push(StreettState::construct(&index, &kept));
                    }
                }
                SccSide::Bottom => {
                    let attr = random_attractor(&mdp.restricted(s.clone()), &c);
                    let mut rest_state = state;
                    rest_state.remove(&attr).expect("attractor within candidate");
                    let mut dead = attr.clone();
                    dead.subtract(&c);
                    cands.kill(&dead);
                    cands.assign(&c);
                    labels.lost_to(mdp, rest_state.members(), &attr);
                    if !rest_state.members().is_empty() {
                        assert_random_closed(mdp, rest_state.members());
                        debug_assert!(label_invariant_holds(mdp, rest_state.members(), &labels));
                        queue.push(rest_state);
                    }
                    assert_random_closed(mdp, &c);
                    debug_assert!(label_invariant_holds(mdp, &c, &labels));
                    queue.push(StreettState::construct(&index, &c));
                }
            }
        }
    }
    as_reach_single(mdp, &good)
}

/// Either no vertex is labeled and the set is strongly connected, or every
/// top SCC holds an h label and every bottom SCC a t label.
fn label_invariant_holds(mdp: &Mdp, s: &VertexSet, labels: &Labels) -> bool {
    let parts = sccs(&mdp.restricted(s.clone()));
    let mut any_label = false;
    for v in s.iter() {
        if labels.h.contains(v) || labels.t.contains(v) {
            any_label = true;
            break;
        }
    }
    if !any_label {
        return parts.count() == 1;
    }
    for c in 0..parts.count() {
        if parts.is_top(c) && !parts.members(c).iter().any(|&v| labels.h.contains(v)) {
            return false;
        }
        if parts.is_bottom(c) && !parts.members(c).iter().any(|&v| labels.t.contains(v)) {
            return false;
        }
    }
    true
}

/// Dispatch between the dense and sparse variants on the paper's crossover:
/// dense when n^2 <= m * sqrt(m log n), compared in integer form
/// n^4 <= m^3 * ceil(log2 n).
pub fn streett_auto(mdp: &Mdp, pairs: &[Pair]) -> VertexSet {
    let n = mdp.vertex_count() as u128;
    let m = mdp.edge_count() as u128;
    let log_n = crate::graph::ceil_log2(mdp.vertex_count()).max(1) as u128;
    if n.pow(4) <= m.pow(3) * log_n {
        streett_dense(mdp, pairs)
    } else {
        streett_sparse(mdp, pairs)
    }
}


#[cfg(test)]
mod props {
    use super::*;
    use crate::objective::{Kind, Mode, ObjectiveSpec};
    use crate::oracle::oracle_winning_set;
    use crate::testprop::{arb_mdp, pair_list};
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn four_way_equality((mdp, raw) in arb_mdp(7).prop_flat_map(pair_list(3))) {
            let pairs: Vec<Pair> = raw.into_iter().map(|(l, u)| Pair { l, u }).collect();
            let base = streett_basic(&mdp, &pairs).to_vec();
            prop_assert_eq!(&streett_impr(&mdp, &pairs).to_vec(), &base);
            prop_assert_eq!(&streett_dense(&mdp, &pairs).to_vec(), &base);
            prop_assert_eq!(&streett_sparse(&mdp, &pairs).to_vec(), &base);
        }

        #[test]
        fn matches_good_ec_oracle((mdp, raw) in arb_mdp(6).prop_flat_map(pair_list(2))) {
            let pairs: Vec<Pair> = raw.into_iter().map(|(l, u)| Pair { l, u }).collect();
            let spec = ObjectiveSpec::with_pairs(
                Kind::Streett,
                Mode::ConjObjective,
                pairs.clone(),
            ).unwrap();
            let expect = oracle_winning_set(&mdp, &spec).unwrap().to_vec();
            prop_assert_eq!(streett_basic(&mdp, &pairs).to_vec(), expect);
        }

        /// Büchi encoded as Streett pairs (V, T_i) is the conjunctive Büchi
        /// solver; coBüchi as pairs (T_i, empty) is the conjunctive coBüchi
        /// solver.
        #[test]
        fn encodings_match_direct_solvers(
            (mdp, raw) in arb_mdp(6).prop_flat_map(pair_list(3))
        ) {
            let n = mdp.vertex_count();
            let targets: Vec<VertexSet> = raw.into_iter().map(|(l, _)| l).collect();
            let buchi_pairs: Vec<Pair> = targets
                .iter()
                .map(|t| Pair { l: VertexSet::full(n), u: t.clone() })
                .collect();
            prop_assert_eq!(
                streett_basic(&mdp, &buchi_pairs).to_vec(),
                crate::buchi_cobuchi::buchi_conj(&mdp, &targets).to_vec()
            );
            let cobuchi_pairs: Vec<Pair> = targets
                .iter()
                .map(|t| Pair { l: t.clone(), u: VertexSet::empty(n) })
                .collect();
            prop_assert_eq!(
                streett_basic(&mdp, &cobuchi_pairs).to_vec(),
                crate::buchi_cobuchi::cobuchi_conj(&mdp, &targets).to_vec()
            );
        }
    }
}
