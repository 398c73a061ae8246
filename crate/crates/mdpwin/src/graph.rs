//! SCC and reachability kernels: Tarjan's algorithm, backward search,
//! the hierarchical level-graph decomposition and lock-step bottom-SCC
//! search that back the sub-quadratic Streett algorithms.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::mdp::View;
use crate::vertex_set::VertexSet;

pub(crate) fn ceil_log2(x: usize) -> u32 {
    debug_assert!(x >= 1);
    if x <= 1 {
        0
    } else {
        usize::BITS - (x - 1).leading_zeros()
    }
}

/// Exact SCC decomposition of a view. Components are numbered in Tarjan pop
/// order (reverse topological order, deterministic for a fixed view).
pub struct SccPartition {
    comp_of: Vec<usize>,
    components: Vec<Vec<usize>>,
    is_bottom: Vec<bool>,
    is_top: Vec<bool>,
    is_trivial: Vec<bool>,
}

impl SccPartition {
    pub fn count(&self) -> usize {
        self.components.len()
    }

    /// Component id of `v`; only meaningful for vertices of the view.
    pub fn component_of(&self, v: usize) -> usize {
        self.comp_of[v]
    }

    pub fn members(&self, c: usize) -> &[usize] {
        &self.components[c]
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    /// No edges leaving the component.
    pub fn is_bottom(&self, c: usize) -> bool {
        self.is_bottom[c]
    }

    /// No edges entering the component.
    pub fn is_top(&self, c: usize) -> bool {
        self.is_top[c]
    }

    /// Single vertex without a self-loop.
    pub fn is_trivial(&self, c: usize) -> bool {
        self.is_trivial[c]
    }
}

/// Iterative Tarjan over an arbitrary successor function. Successor entries
/// outside `members` are skipped, so callers may hand over unfiltered
/// adjacency slices.
pub(crate) fn tarjan_scc<'a, F>(members: &VertexSet, succs: F) -> SccPartition
where
    F: Fn(usize) -> &'a [usize],
{
    let universe = members.universe();
    const UNSET: usize = usize::MAX;
    let mut index = vec![UNSET; universe];
    let mut low = vec![0usize; universe];
    let mut on_stack = vec![false; universe];
    let mut stack: Vec<usize> = Vec::new();
    let mut frames: Vec<(usize, usize)> = Vec::new();
    let mut counter = 0usize;

    let mut comp_of = vec![UNSET; universe];
    let mut components: Vec<Vec<usize>> = Vec::new();

    for root in members.iter() {
        if index[root] != UNSET {
            continue;
        }
        frames.push((root, 0));
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut pos)) = frames.last_mut() {
            let adj = succs(v);
            let mut descended = false;
            while *pos < adj.len() {
                let w = adj[*pos];
                *pos += 1;
                if !members.contains(w) {
                    continue;
                }
                if index[w] == UNSET {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    frames.push((w, 0));
                    descended = true;
                    break;
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            }
            if descended {
                continue;
            }
            frames.pop();
            if low[v] == index[v] {
                let cid = components.len();
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack underflow");
                    on_stack[w] = false;
                    comp_of[w] = cid;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                comp.sort_unstable();
                components.push(comp);
            }
            if let Some(&mut (u, _)) = frames.last_mut() {
                low[u] = low[u].min(low[v]);
            }
        }
    }

    let count = components.len();
    let mut is_bottom = vec![true; count];
    let mut is_top = vec![true; count];
    let mut is_trivial: Vec<bool> = components.iter().map(|c| c.len() == 1).collect();
    for v in members.iter() {
        let cv = comp_of[v];
        for &w in succs(v) {
            if !members.contains(w) {
                continue;
            }
            let cw = comp_of[w];
            if cv != cw {
                is_bottom[cv] = false;
                is_top[cw] = false;
            } else if v == w {
                is_trivial[cv] = false;
            }
        }
    }

    SccPartition {
        comp_of,
        components,
        is_bottom,
        is_top,
        is_trivial,
    }
}

/// SCC decomposition of the view with bottom/top/trivial flags.
pub fn sccs(view: &View<'_>) -> SccPartition {
    tarjan_scc(view.kept(), |v| raw_succs(view, v))
}

fn raw_succs<'a>(view: &View<'a>, v: usize) -> &'a [usize] {
    if view.is_reversed() {
        &view.mdp().reverse_edges()[v]
    } else {
        view.mdp().successors(v)
    }
}

fn raw_preds<'a>(view: &View<'a>, v: usize) -> &'a [usize] {
    if view.is_reversed() {
        view.mdp().successors(v)
    } else {
        &view.mdp().reverse_edges()[v]
    }
}

/// All vertices of the view with a path (length >= 0) to some target,
/// computed by backward search.
pub fn graph_reach(view: &View<'_>, targets: &VertexSet) -> VertexSet {
    let mut reached = VertexSet::empty(view.universe());
    let mut queue = Vec::new();
    for t in targets.iter() {
        if view.contains(t) && reached.insert(t) {
            queue.push(t);
        }
    }
    while let Some(v) = queue.pop() {
        for &u in raw_preds(view, v) {
            if view.contains(u) && reached.insert(u) {
                queue.push(u);
            }
        }
    }
    reached
}

/// Level-`j` graph of a view: per vertex only the first `2^j` outgoing edges
/// (in the fixed adjacency order filtered through the view) survive, and
/// `blue` collects the vertices whose full view out-degree exceeds `2^j`.
pub struct LevelGraph {
    pub level: u32,
    members: VertexSet,
    succ: Vec<Vec<usize>>,
    pred: Vec<Vec<usize>>,
    blue: VertexSet,
}

impl LevelGraph {
    pub fn blue(&self) -> &VertexSet {
        &self.blue
    }

    pub fn members(&self) -> &VertexSet {
        &self.members
    }

    pub fn successors(&self, v: usize) -> &[usize] {
        &self.succ[v]
    }

    /// Vertices with a level-graph path to some target.
    pub fn reaching(&self, targets: &VertexSet) -> VertexSet {
        let mut reached = VertexSet::empty(self.members.universe());
        let mut queue = Vec::new();
        for t in targets.iter() {
            if self.members.contains(t) && reached.insert(t) {
                queue.push(t);
            }
        }
        while let Some(v) = queue.pop() {
            for &u in &self.pred[v] {
                if reached.insert(u) {
                    queue.push(u);
                }
            }
        }
        reached
    }

    pub fn sccs_within(&self, keep: &VertexSet) -> SccPartition {
        tarjan_scc(keep, |v| self.succ[v].as_slice())
    }
}

/// Builds the level-`j` graph of a view.
pub fn level_graph(view: &View<'_>, j: u32) -> LevelGraph {
    let cap = 1usize << j.min(62);
    let universe = view.universe();
    let mut succ = vec![Vec::new(); universe];
    let mut pred = vec![Vec::new(); universe];
    let mut blue = VertexSet::empty(universe);
    for v in view.vertices() {
        let mut kept = 0usize;
        for w in view.out_edges(v) {
            if kept < cap {
                succ[v].push(w);
                kept += 1;
            } else {
                blue.insert(v);
                break;
            }
        }
    }
    for v in view.vertices() {
        for &w in &succ[v] {
            pred[w].push(v);
        }
    }
    LevelGraph {
        level: j,
        members: view.kept().clone(),
        succ,
        pred,
        blue,
    }
}

/// Which extreme of the condensation order an SCC sits at.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SccSide {
    Bottom,
    Top,
}

/// Outcome of the small-SCC searches.
#[derive(Debug)]
pub enum ExtremalScc {
    /// The view induces a strongly connected (sub-)MDP.
    Whole,
    /// A bottom or top SCC with at most half the view's vertices.
    Found { vertices: VertexSet, side: SccSide },
}

// ---------------------------------------------------------------------------
// Grouped adjacency: a mutable per-solve scratch copy of the edge lists as
// intrusive singly linked lists. An edge is live while both endpoints carry
// the same group id; stale entries are unlinked when a compacting cursor
// walks past them, so each entry is removed at most once per scratch.
// Preserves the original adjacency order, which the level graphs rely on.
// ---------------------------------------------------------------------------

const NIL: u32 = u32::MAX;
pub(crate) const DEAD_GROUP: u64 = u64::MAX;

struct HalfAdj {
    head: Vec<u32>,
    next: Vec<u32>,
    target: Vec<u32>,
}

impl HalfAdj {
    fn build(universe: usize, edges: impl Iterator<Item = (usize, usize)>) -> HalfAdj {
        // Collect per-source in encounter order, then link.
        let mut per: Vec<Vec<u32>> = vec![Vec::new(); universe];
        for (u, w) in edges {
            per[u].push(w as u32);
        }
        let mut head = vec![NIL; universe];
        let mut next = Vec::new();
        let mut target = Vec::new();
        for (u, list) in per.into_iter().enumerate() {
            let mut prev = NIL;
            for w in list {
                let idx = target.len() as u32;
                target.push(w);
                next.push(NIL);
                if prev == NIL {
                    head[u] = idx;
                } else {
                    next[prev as usize] = idx;
                }
                prev = idx;
            }
        }
        HalfAdj { head, next, target }
    }
}

#[derive(Clone, Copy)]
pub(crate) struct Cursor {
    prev: u32,
    cur: u32,
}

pub(crate) struct GroupedAdj {
    out: HalfAdj,
    inc: HalfAdj,
    group: Vec<u64>,
}

impl GroupedAdj {
    /// Snapshot of a view; kept vertices start in group 0.
    pub(crate) fn from_view(view: &View<'_>) -> GroupedAdj {
        let universe = view.universe();
        let mut fwd = Vec::new();
        for v in view.vertices() {
            for w in view.out_edges(v) {
                fwd.push((v, w));
            }
        }
        let out = HalfAdj::build(universe, fwd.iter().copied());
        let inc = HalfAdj::build(universe, fwd.iter().map(|&(u, w)| (w, u)));
        let mut group = vec![DEAD_GROUP; universe];
        for v in view.vertices() {
            group[v] = 0;
        }
        GroupedAdj { out, inc, group }
    }

    pub(crate) fn set_group(&mut self, v: usize, g: u64) {
        self.group[v] = g;
    }

    pub(crate) fn kill(&mut self, v: usize) {
        self.group[v] = DEAD_GROUP;
    }

    pub(crate) fn out_cursor(&self, v: usize) -> Cursor {
        Cursor {
            prev: NIL,
            cur: self.out.head[v],
        }
    }

    pub(crate) fn in_cursor(&self, v: usize) -> Cursor {
        Cursor {
            prev: NIL,
            cur: self.inc.head[v],
        }
    }

    /// Advances to the next live edge of `v` in the given direction.
    /// `compact` unlinks dead entries in passing; callers running several
    /// interleaved cursors over the same lists must not compact.
    pub(crate) fn advance(
        &mut self,
        v: usize,
        cursor: &mut Cursor,
        backward: bool,
        compact: bool,
    ) -> Option<usize> {
        let g = self.group[v];
        debug_assert_ne!(g, DEAD_GROUP);
        let half = if backward { &mut self.inc } else { &mut self.out };
        while cursor.cur != NIL {
            let idx = cursor.cur as usize;
            let w = half.target[idx] as usize;
            if self.group[w] == g {
                cursor.prev = cursor.cur;
                cursor.cur = half.next[idx];
                return Some(w);
            }
            // stale entry
            let after = half.next[idx];
            if compact {
                if cursor.prev == NIL {
                    half.head[v] = after;
                } else {
                    half.next[cursor.prev as usize] = after;
                }
            } else {
                cursor.prev = cursor.cur;
            }
            cursor.cur = after;
        }
        None
    }

    /// Collects up to `cap` live edges of `v`; the bool reports whether more
    /// live edges exist beyond the cap (the "blue" test, checked without
    /// scanning past `cap + 1` live entries).
    fn first_live(&mut self, v: usize, cap: usize, backward: bool, buf: &mut Vec<usize>) -> bool {
        buf.clear();
        let mut cursor = if backward {
            self.in_cursor(v)
        } else {
            self.out_cursor(v)
        };
        while let Some(w) = self.advance(v, &mut cursor, backward, true) {
            if buf.len() == cap {
                return true;
            }
            buf.push(w);
        }
        false
    }
}

struct LevelData {
    succ: HashMap<usize, Vec<usize>>,
    pred: HashMap<usize, Vec<usize>>,
    blue: Vec<usize>,
}

fn build_level(adj: &mut GroupedAdj, members: &[usize], j: u32, backward: bool) -> LevelData {
    let cap = 1usize << j.min(62);
    let mut succ: HashMap<usize, Vec<usize>> = HashMap::with_capacity(members.len());
    let mut pred: HashMap<usize, Vec<usize>> = HashMap::with_capacity(members.len());
    let mut blue = Vec::new();
    let mut buf = Vec::new();
    for &v in members {
        if adj.first_live(v, cap, backward, &mut buf) {
            blue.push(v);
        }
        pred.entry(v).or_default();
        succ.insert(v, buf.clone());
    }
    for &v in members {
        // clone keeps the borrow checker happy; lists are <= 2^j long
        let list = succ[&v].clone();
        for w in list {
            pred.get_mut(&w).expect("level edge into non-member").push(v);
        }
    }
    LevelData { succ, pred, blue }
}

/// Hierarchical small-SCC search on a grouped adjacency. Doubles the level
/// `j`, alternating between the graph and its reverse, drops vertices that
/// reach a blue vertex, and returns the smallest bottom SCC of the remainder.
/// The result is either the whole member set (then it is strongly
/// connected) or a bottom/top SCC with at most half the members.
pub(crate) fn hierarchical_small_scc(adj: &mut GroupedAdj, members: &VertexSet) -> ExtremalScc {
    let n = members.len();
    assert!(n > 0, "hierarchical search on empty view");
    if n == 1 {
        return ExtremalScc::Whole;
    }
    let member_list: Vec<usize> = members.to_vec();
    let jmax = ceil_log2(n).max(1);
    for j in 1..=jmax {
        for backward in [false, true] {
            let level = build_level(adj, &member_list, j, backward);
            // vertices that cannot reach a blue vertex in the level graph
            let mut reach_blue = VertexSet::empty(members.universe());
            let mut queue: Vec<usize> = Vec::new();
            for &b in &level.blue {
                if reach_blue.insert(b) {
                    queue.push(b);
                }
            }
            while let Some(v) = queue.pop() {
                for &u in &level.pred[&v] {
                    if reach_blue.insert(u) {
                        queue.push(u);
                    }
                }
            }
            let mut z = members.clone();
            z.subtract(&reach_blue);
            if z.is_empty() {
                continue;
            }
            let empty: &[usize] = &[];
            let part = tarjan_scc(&z, |v| {
                level.succ.get(&v).map(Vec::as_slice).unwrap_or(empty)
            });
            let mut best: Option<usize> = None;
            for c in 0..part.count() {
                if part.is_bottom(c) {
                    let better = match best {
                        None => true,
                        Some(b) => {
                            let (bl, cl) = (part.members(b).len(), part.members(c).len());
                            cl < bl || (cl == bl && part.members(c)[0] < part.members(b)[0])
                        }
                    };
                    if better {
                        best = Some(c);
                    }
                }
            }
            let Some(best) = best else { continue };
            let comp = part.members(best);
            if comp.len() == n {
                return ExtremalScc::Whole;
            }
            if comp.len() <= n / 2 {
                return ExtremalScc::Found {
                    vertices: VertexSet::from_iter(members.universe(), comp.iter().copied()),
                    side: if backward { SccSide::Top } else { SccSide::Bottom },
                };
            }
        }
    }
    unreachable!("a small top or bottom SCC exists whenever the view is not strongly connected");
}

/// Standalone form operating on a view; see the grouped core for the search.
pub fn smallest_bscc_hierarchical(view: &View<'_>) -> ExtremalScc {
    let mut adj = GroupedAdj::from_view(view);
    hierarchical_small_scc(&mut adj, view.kept())
}

// ---------------------------------------------------------------------------
// Lock-step search: one incremental Tarjan per labeled start vertex, strictly
// interleaved one edge expansion at a time. The first SCC any depth-first
// search completes has no edges to unfinished vertices and none were finished
// before it, so it is a bottom SCC of the searched direction.
// ---------------------------------------------------------------------------

struct SearchNode {
    index: usize,
    low: usize,
    on_stack: bool,
}

struct Search {
    backward: bool,
    nodes: HashMap<usize, SearchNode>,
    stack: Vec<usize>,
    frames: Vec<(usize, Cursor)>,
    counter: usize,
}

enum StepOutcome {
    Progress,
    Finished(Vec<usize>),
}

impl Search {
    fn new(adj: &GroupedAdj, start: usize, backward: bool) -> Search {
        let mut s = Search {
            backward,
            nodes: HashMap::new(),
            stack: Vec::new(),
            frames: Vec::new(),
            counter: 0,
        };
        s.push_vertex(adj, start);
        s
    }

    fn push_vertex(&mut self, adj: &GroupedAdj, v: usize) {
        self.nodes.insert(
            v,
            SearchNode {
                index: self.counter,
                low: self.counter,
                on_stack: true,
            },
        );
        self.counter += 1;
        self.stack.push(v);
        let cursor = if self.backward {
            adj.in_cursor(v)
        } else {
            adj.out_cursor(v)
        };
        self.frames.push((v, cursor));
    }

    /// One edge expansion (or one vertex completion when the frame is
    /// exhausted). Interleaved cursors must not compact shared lists.
    fn step(&mut self, adj: &mut GroupedAdj) -> StepOutcome {
        let &mut (v, ref mut cursor) = self.frames.last_mut().expect("stepping finished search");
        match adj.advance(v, cursor, self.backward, false) {
            Some(w) => {
                if let Some(node) = self.nodes.get(&w) {
                    if node.on_stack {
                        let wi = node.index;
                        let nv = self.nodes.get_mut(&v).unwrap();
                        nv.low = nv.low.min(wi);
                    }
                } else {
                    self.push_vertex(adj, w);
                }
                StepOutcome::Progress
            }
            None => {
                let (v, _) = self.frames.pop().unwrap();
                let node = &self.nodes[&v];
                if node.low == node.index {
                    let mut comp = Vec::new();
                    loop {
                        let w = self.stack.pop().expect("scc stack underflow");
                        self.nodes.get_mut(&w).unwrap().on_stack = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    comp.sort_unstable();
                    return StepOutcome::Finished(comp);
                }
                let low_v = node.low;
                if let Some(&(u, _)) = self.frames.last() {
                    let nu = self.nodes.get_mut(&u).unwrap();
                    nu.low = nu.low.min(low_v);
                }
                StepOutcome::Progress
            }
        }
    }
}

/// Interleaved searches forward from each tail and backward from each head;
/// the first completed SCC is a bottom SCC (forward) or top SCC (backward)
/// of the member set. Ties between searches completing in the same round go
/// to the lowest start id, forward before backward.
pub(crate) fn lockstep_small_scc(
    adj: &mut GroupedAdj,
    members: &VertexSet,
    tails: &[usize],
    heads: &[usize],
) -> Result<(Vec<usize>, SccSide)> {
    let mut searches: Vec<Search> = Vec::new();
    let mut starts: Vec<(usize, bool)> = tails
        .iter()
        .map(|&v| (v, false))
        .chain(heads.iter().map(|&v| (v, true)))
        .collect();
    starts.sort_unstable_by_key(|&(v, back)| (v, back));
    starts.dedup();
    for (v, back) in starts {
        if !members.contains(v) {
            return Err(Error::Precondition(format!(
                "lock-step start {v} outside the view"
            )));
        }
        searches.push(Search::new(adj, v, back));
    }
    if searches.is_empty() {
        // Only legal when the view is strongly connected; verify with a
        // single search from the lowest vertex.
        let start = members
            .first()
            .ok_or_else(|| Error::Precondition("lock-step search on empty view".into()))?;
        let mut s = Search::new(adj, start, false);
        loop {
            if let StepOutcome::Finished(comp) = s.step(adj) {
                if comp.len() == members.len() {
                    return Ok((comp, SccSide::Bottom));
                }
                return Err(Error::Precondition(
                    "no labeled vertices but the view is not strongly connected".into(),
                ));
            }
        }
    }
    loop {
        for s in &mut searches {
            if let StepOutcome::Finished(comp) = s.step(adj) {
                let side = if s.backward {
                    SccSide::Top
                } else {
                    SccSide::Bottom
                };
                return Ok((comp, side));
            }
        }
    }
}

/// Standalone lock-step search on a view. `tails` seeds forward searches,
/// `heads` backward searches; precondition as in the sparse Streett
/// algorithm: every bottom SCC holds a tail and every top SCC a head, or the
/// view is strongly connected (then both sets may be empty).
pub fn lockstep_bottom_scc(
    view: &View<'_>,
    tails: &VertexSet,
    heads: &VertexSet,
) -> Result<(VertexSet, SccSide)> {
    let mut adj = GroupedAdj::from_view(view);
    let (comp, side) = lockstep_small_scc(
        &mut adj,
        view.kept(),
        &tails.to_vec(),
        &heads.to_vec(),
    )?;
    Ok((
        VertexSet::from_iter(view.universe(), comp.iter().copied()),
        side,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mdp::testutil::*;

    #[test]
    fn sccs_of_f2_single_component() {
        let m = f2();
        let part = sccs(&m.view());
        assert_eq!(part.count(), 1);
        assert_eq!(part.members(0), &[0, 1]);
        assert!(part.is_bottom(0) && part.is_top(0));
        assert!(!part.is_trivial(0));
    }

    #[test]
    fn sccs_of_f3_three_components() {
        let m = f3();
        let part = sccs(&m.view());
        assert_eq!(part.count(), 3);
        for c in 0..3 {
            let mem = part.members(c);
            assert_eq!(mem.len(), 1);
            let v = mem[0];
            if v == 0 {
                assert!(part.is_top(c));
                assert!(part.is_trivial(c));
                assert!(!part.is_bottom(c));
            } else {
                assert!(part.is_bottom(c));
                assert!(!part.is_trivial(c));
            }
        }
    }

    #[test]
    fn sccs_of_chain() {
        let m = mdp(3, &[], &[(0, 1), (1, 2), (2, 2)]);
        let part = sccs(&m.view());
        assert_eq!(part.count(), 3);
        let c2 = part.component_of(2);
        assert!(part.is_bottom(c2));
        assert!(!part.is_trivial(c2));
        assert!(part.is_trivial(part.component_of(0)));
    }

    #[test]
    fn graph_reach_examples() {
        let m3 = f3();
        let r = graph_reach(&m3.view(), &VertexSet::from_iter(3, [1]));
        assert_eq!(r.to_vec(), vec![0, 1]);

        let none = graph_reach(&m3.view(), &VertexSet::empty(3));
        assert!(none.is_empty());

        let m2 = f2();
        let r = graph_reach(&m2.view(), &VertexSet::from_iter(2, [0]));
        assert_eq!(r.to_vec(), vec![0, 1]);
    }

    #[test]
    fn level_graph_blue_membership() {
        // vertex 0 with out-degree 3
        let m = mdp(4, &[], &[(0, 1), (0, 2), (0, 3), (1, 0), (2, 0), (3, 0)]);
        let lg1 = level_graph(&m.view(), 1);
        assert!(lg1.blue().contains(0));
        assert_eq!(lg1.successors(0), &[1, 2]);

        let lg2 = level_graph(&m.view(), 2);
        assert!(!lg2.blue().contains(0));
        assert_eq!(lg2.successors(0), &[1, 2, 3]);
    }

    #[test]
    fn level_graph_of_f2_at_level_one_is_full() {
        let m = f2();
        let lg = level_graph(&m.view(), 1);
        assert!(lg.blue().is_empty());
        assert_eq!(lg.successors(0), m.successors(0));
        assert_eq!(lg.successors(1), m.successors(1));
    }

    #[test]
    fn hierarchical_on_strongly_connected_view() {
        let m = f2();
        assert!(matches!(
            smallest_bscc_hierarchical(&m.view()),
            ExtremalScc::Whole
        ));
    }

    #[test]
    fn hierarchical_finds_singleton_in_disconnected_view() {
        let m = f3();
        let view = m.restricted(VertexSet::from_iter(3, [1, 2]));
        match smallest_bscc_hierarchical(&view) {
            ExtremalScc::Found { vertices, .. } => {
                assert_eq!(vertices.len(), 1);
                let part = sccs(&view);
                let v = vertices.first().unwrap();
                let c = part.component_of(v);
                assert_eq!(part.members(c), &vertices.to_vec()[..]);
            }
            ExtremalScc::Whole => panic!("view is not strongly connected"),
        }
    }

    #[test]
    fn hierarchical_on_looped_chain() {
        let m = mdp(2, &[], &[(0, 0), (0, 1), (1, 1)]);
        match smallest_bscc_hierarchical(&m.view()) {
            ExtremalScc::Found { vertices, side } => {
                assert_eq!(vertices.len(), 1);
                let v = vertices.first().unwrap();
                match side {
                    SccSide::Bottom => assert_eq!(v, 1),
                    SccSide::Top => assert_eq!(v, 0),
                }
            }
            ExtremalScc::Whole => panic!("chain is not strongly connected"),
        }
    }

    #[test]
    fn lockstep_two_self_loops() {
        let m = f3();
        let view = m.restricted(VertexSet::from_iter(3, [1, 2]));
        let tails = VertexSet::from_iter(3, [1]);
        let heads = VertexSet::from_iter(3, [1]);
        let (comp, _) = lockstep_bottom_scc(&view, &tails, &heads).unwrap();
        assert_eq!(comp.to_vec(), vec![1]);
    }

    #[test]
    fn lockstep_whole_view_when_strongly_connected() {
        let m = f2();
        let tails = VertexSet::from_iter(2, [0]);
        let (comp, side) = lockstep_bottom_scc(&m.view(), &tails, &VertexSet::empty(2)).unwrap();
        assert_eq!(comp.to_vec(), vec![0, 1]);
        assert_eq!(side, SccSide::Bottom);
    }

    #[test]
    fn lockstep_first_finisher_on_chain() {
        let m = mdp(2, &[], &[(0, 0), (0, 1), (1, 1)]);
        let tails = VertexSet::from_iter(2, [1]);
        let heads = VertexSet::from_iter(2, [0]);
        let (comp, side) = lockstep_bottom_scc(&m.view(), &tails, &heads).unwrap();
        match side {
            SccSide::Bottom => assert_eq!(comp.to_vec(), vec![1]),
            SccSide::Top => assert_eq!(comp.to_vec(), vec![0]),
        }
        // cross-check: the result is an exact SCC of the view
        let part = sccs(&m.view());
        let v = comp.first().unwrap();
        assert_eq!(part.members(part.component_of(v)), &comp.to_vec()[..]);
    }

    #[test]
    fn lockstep_empty_labels_on_strongly_connected_view() {
        let m = f2();
        let (comp, _) =
            lockstep_bottom_scc(&m.view(), &VertexSet::empty(2), &VertexSet::empty(2)).unwrap();
        assert_eq!(comp.to_vec(), vec![0, 1]);
    }

    #[test]
    fn lockstep_empty_labels_error_when_disconnected() {
        let m = f3();
        let err = lockstep_bottom_scc(&m.view(), &VertexSet::empty(3), &VertexSet::empty(3));
        assert!(matches!(err, Err(Error::Precondition(_))));
    }
}
