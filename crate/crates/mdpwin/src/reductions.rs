//! Hard-instance generators: triangle-detection and orthogonal-vectors
//! sources turned into reachability and safety benchmarks whose answer is
//! known from the source problem.
//!
//! Vertex numbering is deterministic: the start vertex is 0, then the
//! vertex copies in source order, then gadget vertices. Every generated
//! file parses back into exactly the same model.

use crate::error::{Error, Result};
use crate::mdp::{Mdp, Owner};
use crate::objective::{Kind, Mode, ObjectiveSpec};
use crate::vertex_set::VertexSet;

/// Simple directed graph (no self-loops, no duplicate edges) serving as a
/// triangle-detection input.
#[derive(Debug, Clone)]
pub struct SourceGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl SourceGraph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<SourceGraph> {
        let mut seen = std::collections::HashSet::new();
        for &(u, v) in &edges {
            if u >= n || v >= n {
                return Err(Error::Invalid(format!("edge ({u}, {v}) out of range")));
            }
            if u == v {
                return Err(Error::Invalid(format!("self-loop at {u} in simple graph")));
            }
            if !seen.insert((u, v)) {
                return Err(Error::Invalid(format!("duplicate edge ({u}, {v})")));
            }
        }
        Ok(SourceGraph { n, edges })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    fn has_out_edge(&self) -> Vec<bool> {
        let mut out = vec![false; self.n];
        for &(u, _) in &self.edges {
            out[u] = true;
        }
        out
    }
}

/// Orthogonal-vectors input: two sets of d-bit vectors, bit i of the mask
/// being coordinate i + 1.
#[derive(Debug, Clone)]
pub struct OvInstance {
    d: usize,
    s1: Vec<u64>,
    s2: Vec<u64>,
}

impl OvInstance {
    pub fn new(d: usize, s1: Vec<u64>, s2: Vec<u64>) -> Result<OvInstance> {
        if d == 0 || d > 63 {
            return Err(Error::Invalid(format!("dimension {d} out of range 1..=63")));
        }
        if s1.is_empty() || s2.is_empty() {
            return Err(Error::Invalid("both vector sets must be non-empty".into()));
        }
        let mask = (1u64 << d) - 1;
        for &v in s1.iter().chain(&s2) {
            if v & !mask != 0 {
                return Err(Error::Invalid(format!("vector {v:#b} exceeds {d} bits")));
            }
        }
        Ok(OvInstance { d, s1, s2 })
    }

    pub fn from_bits(d: usize, rows1: &[&[u8]], rows2: &[&[u8]]) -> Result<OvInstance> {
        let pack = |row: &&[u8]| -> u64 {
            row.iter()
                .enumerate()
                .map(|(i, &b)| if b != 0 { 1u64 << i } else { 0 })
                .sum()
        };
        OvInstance::new(
            d,
            rows1.iter().map(pack).collect(),
            rows2.iter().map(pack).collect(),
        )
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn s1(&self) -> &[u64] {
        &self.s1
    }

    pub fn s2(&self) -> &[u64] {
        &self.s2
    }
}

/// A generated benchmark: model, objective, and provenance.
pub struct Instance {
    pub mdp: Mdp,
    pub objective: ObjectiveSpec,
    pub meta: InstanceMeta,
}

pub struct InstanceMeta {
    pub generator: String,
    pub names: Vec<String>,
    pub notes: Vec<String>,
}

impl Instance {
    /// The distinguished start vertex of every reduction.
    pub fn start(&self) -> usize {
        0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.meta.names.iter().position(|x| x == name)
    }
}

/// Triangle detection as a disjunctive reachability query: four copies of
/// the source vertices in a layered cycle through the start vertex, the
/// last copy random with an exit to its absorbing goal. The source has a
/// triangle iff the start vertex can almost-surely reach some goal.
///
/// Size: 5n + 1 vertices and 4n + 3|E| + 3#sinks edges.
pub fn gen_triangle_reach(g: &SourceGraph) -> Instance {
    let n = g.vertex_count();
    assert!(n >= 1, "empty source graph");
    let copy = |i: usize, v: usize| 1 + (i - 1) * n + v; // i in 1..=4
    let goal = |v: usize| 1 + 4 * n + v;
    let total = 5 * n + 1;

    let mut owners = vec![Owner::Player1; total];
    for v in 0..n {
        owners[copy(4, v)] = Owner::Random;
    }

    let mut names = vec!["s".to_string()];
    for i in 1..=4 {
        for v in 0..n {
            names.push(format!("v{v}_{i}"));
        }
    }
    for v in 0..n {
        names.push(format!("g{v}"));
    }

    let mut notes = vec![];
    let mut edges = Vec::new();
    for v in 0..n {
        edges.push((0, copy(1, v)));
    }
    for i in 1..=3 {
        for &(u, w) in g.edges() {
            edges.push((copy(i, u), copy(i + 1, w)));
        }
    }
    for v in 0..n {
        edges.push((copy(4, v), copy(1, v)));
        edges.push((copy(4, v), goal(v)));
    }
    for v in 0..n {
        edges.push((goal(v), goal(v)));
    }
    notes.push("absorbing goal vertices carry self-loops".to_string());
    let has_out = g.has_out_edge();
    for (v, &ok) in has_out.iter().enumerate() {
        if !ok {
            for i in 1..=3 {
                edges.push((copy(i, v), copy(i, v)));
            }
            notes.push(format!("source sink {v}: self-loops on its first three copies"));
        }
    }

    let mdp = Mdp::new(owners, &edges).expect("reduction output is valid");
    let targets: Vec<VertexSet> = (0..n)
        .map(|v| VertexSet::from_iter(total, [goal(v)]))
        .collect();
    let objective = ObjectiveSpec::with_sets(Kind::Reach, Mode::DisjQuery, targets).unwrap();
    Instance {
        mdp,
        objective,
        meta: InstanceMeta {
            generator: "triangle-reach".into(),
            names,
            notes,
        },
    }
}

/// Orthogonal vectors as a disjunctive reachability query: the start picks
/// a left vector (random over its 1-coordinates), coordinates hand over to
/// right vectors with a 0 there, and each right vector flips a coin between
/// its goal and the start. An orthogonal pair exists iff the start wins.
///
/// An all-zero left vector has no 1-coordinate; it gets a dummy coordinate
/// connected to every right vector, which preserves orthogonality exactly
/// (the all-zero vector is orthogonal to everything). A coordinate no right
/// vector answers gets a self-loop.
pub fn gen_ov_reach(ov: &OvInstance) -> Instance {
    let d = ov.d();
    let n1 = ov.s1().len();
    let n2 = ov.s2().len();
    let left = |j: usize| 1 + j;
    let right = |j: usize| 1 + n1 + j;
    let coord = |i: usize| 1 + n1 + n2 + i;
    let goal = |j: usize| 1 + n1 + n2 + d + j;
    let needs_dummy = ov.s1().iter().any(|&x| x == 0);
    let dummy = 1 + n1 + n2 + d + n2;
    let total = dummy + usize::from(needs_dummy);

    let mut owners = vec![Owner::Player1; total];
    for j in 0..n1 {
        owners[left(j)] = Owner::Random;
    }
    for j in 0..n2 {
        owners[right(j)] = Owner::Random;
    }

    let mut names = vec!["s".to_string()];
    names.extend((0..n1).map(|j| format!("x{j}")));
    names.extend((0..n2).map(|j| format!("y{j}")));
    names.extend((0..d).map(|i| format!("c{i}")));
    names.extend((0..n2).map(|j| format!("g{j}")));
    if needs_dummy {
        names.push("c_dummy".to_string());
    }

    let mut notes = vec![];
    let mut edges = Vec::new();
    for j in 0..n1 {
        edges.push((0, left(j)));
    }
    for (j, &x) in ov.s1().iter().enumerate() {
        for i in 0..d {
            if x & (1 << i) != 0 {
                edges.push((left(j), coord(i)));
            }
        }
        if x == 0 {
            edges.push((left(j), dummy));
            notes.push(format!("all-zero left vector {j} routed through the dummy coordinate"));
        }
    }
    for j in 0..n2 {
        edges.push((right(j), 0));
        edges.push((right(j), goal(j)));
    }
    for i in 0..d {
        for (j, &y) in ov.s2().iter().enumerate() {
            if y & (1 << i) == 0 {
                edges.push((coord(i), right(j)));
            }
        }
    }
    if needs_dummy {
        for j in 0..n2 {
            edges.push((dummy, right(j)));
        }
    }
    for j in 0..n2 {
        edges.push((goal(j), goal(j)));
    }
    notes.push("absorbing goal vertices carry self-loops".to_string());
    for i in 0..d {
        if ov.s2().iter().all(|&y| y & (1 << i) != 0) {
            edges.push((coord(i), coord(i)));
            notes.push(format!("coordinate {i} has no 0-answer; self-loop added"));
        }
    }

    let mdp = Mdp::new(owners, &edges).expect("reduction output is valid");
    let targets: Vec<VertexSet> = (0..n2)
        .map(|j| VertexSet::from_iter(total, [goal(j)]))
        .collect();
    let objective = ObjectiveSpec::with_sets(Kind::Reach, Mode::DisjQuery, targets).unwrap();
    Instance {
        mdp,
        objective,
        meta: InstanceMeta {
            generator: "ov-reach".into(),
            names,
            notes,
        },
    }
}

/// Triangle detection as a disjunctive safety objective on a graph: same
/// four layers, all player-1, the last layer returning to the start. The
/// per-vertex target forbids every first and last copy except its own, so a
/// safe loop spells out a triangle.
///
/// Source sinks route to a dead vertex contained in every target set, which
/// keeps all verdicts intact. Size: 4n + 1 (+1) vertices,
/// 2n + 3|E| + #sinks (+1) edges.
pub fn gen_triangle_safety(g: &SourceGraph) -> Instance {
    let n = g.vertex_count();
    assert!(n >= 1, "empty source graph");
    let copy = |i: usize, v: usize| 1 + (i - 1) * n + v;
    let has_out = g.has_out_edge();
    let sink_count = has_out.iter().filter(|&&ok| !ok).count();
    let needs_dead = sink_count > 0;
    let dead = 4 * n + 1;
    let total = 4 * n + 1 + usize::from(needs_dead);

    let owners = vec![Owner::Player1; total];
    let mut names = vec!["s".to_string()];
    for i in 1..=4 {
        for v in 0..n {
            names.push(format!("v{v}_{i}"));
        }
    }
    if needs_dead {
        names.push("dead".to_string());
    }

    let mut notes = vec![];
    let mut edges = Vec::new();
    for v in 0..n {
        edges.push((0, copy(1, v)));
    }
    for i in 1..=3 {
        for &(u, w) in g.edges() {
            edges.push((copy(i, u), copy(i + 1, w)));
        }
    }
    for v in 0..n {
        edges.push((copy(4, v), 0));
    }
    if needs_dead {
        for (v, &ok) in has_out.iter().enumerate() {
            if !ok {
                for i in 1..=3 {
                    edges.push((copy(i, v), dead));
                }
                notes.push(format!("source sink {v}: first three copies feed the dead vertex"));
            }
        }
        edges.push((dead, dead));
        notes.push("dead vertex belongs to every target set".to_string());
    }

    let mdp = Mdp::new(owners, &edges).expect("reduction output is valid");
    let targets: Vec<VertexSet> = (0..n)
        .map(|v| {
            let mut t = VertexSet::empty(total);
            for u in 0..n {
                if u != v {
                    t.insert(copy(1, u));
                    t.insert(copy(4, u));
                }
            }
            if needs_dead {
                t.insert(dead);
            }
            t
        })
        .collect();
    let objective = ObjectiveSpec::with_sets(Kind::Safety, Mode::DisjObjective, targets).unwrap();
    Instance {
        mdp,
        objective,
        meta: InstanceMeta {
            generator: "triangle-safety".into(),
            names,
            notes,
        },
    }
}

#[derive(Clone, Copy)]
enum TreeRef {
    Leaf(usize),
    Node(usize), // index into splits
}

/// Complete binary tree over a leaf range with the range split in ceiling
/// halves. The root is the start vertex (id 0); other internal nodes take
/// fresh vertex ids in post-order.
struct RoutingTree {
    /// (vertex id, lo, hi, left, right) per internal node
    splits: Vec<(usize, usize, usize, TreeRef, TreeRef)>,
    root: TreeRef,
    next_free: usize,
}

impl RoutingTree {
    fn build(n: usize, first_id: usize) -> RoutingTree {
        let mut tree = RoutingTree {
            splits: Vec::new(),
            root: TreeRef::Leaf(0),
            next_free: first_id,
        };
        tree.root = tree.build_range(0, n);
        if let TreeRef::Node(i) = tree.root {
            // the root coincides with the start vertex
            tree.next_free -= 1;
            tree.splits[i].0 = 0;
        }
        tree
    }

    fn build_range(&mut self, lo: usize, hi: usize) -> TreeRef {
        if hi - lo == 1 {
            return TreeRef::Leaf(lo);
        }
        let mid = lo + (hi - lo + 1) / 2;
        let left = self.build_range(lo, mid);
        let right = self.build_range(mid, hi);
        let id = self.next_free;
        self.next_free += 1;
        self.splits.push((id, lo, hi, left, right));
        TreeRef::Node(self.splits.len() - 1)
    }

    fn vertex_of(&self, r: TreeRef, leaf_id: &dyn Fn(usize) -> usize) -> usize {
        match r {
            TreeRef::Leaf(v) => leaf_id(v),
            TreeRef::Node(i) => self.splits[i].0,
        }
    }

    /// Sibling vertex at every split on the path to leaf `v`.
    fn path_siblings(&self, v: usize, leaf_id: &dyn Fn(usize) -> usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut cur = self.root;
        loop {
            match cur {
                TreeRef::Leaf(l) => {
                    debug_assert_eq!(l, v);
                    return out;
                }
                TreeRef::Node(i) => {
                    let (_, lo, hi, left, right) = self.splits[i];
                    debug_assert!(lo <= v && v < hi);
                    let mid = lo + (hi - lo + 1) / 2;
                    if v < mid {
                        out.push(self.vertex_of(right, leaf_id));
                        cur = left;
                    } else {
                        out.push(self.vertex_of(left, leaf_id));
                        cur = right;
                    }
                }
            }
        }
    }
}

/// Variant of the triangle safety reduction with logarithmic target sets:
/// the start fans out over the first copies through a complete binary
/// out-tree and collects the last copies through an in-tree. Blocking the
/// sibling of every tree branching pins the safe path to one copy pair, so
/// |T_v| <= 2 ceil(log2 n) + 2.
pub fn gen_triangle_safety_tree(g: &SourceGraph) -> Instance {
    let n = g.vertex_count();
    assert!(n >= 1, "empty source graph");
    let copy = |i: usize, v: usize| 1 + (i - 1) * n + v;
    let has_out = g.has_out_edge();
    let needs_dead = has_out.iter().any(|&ok| !ok);

    let out_tree = RoutingTree::build(n, 4 * n + 1);
    let in_tree = RoutingTree::build(n, out_tree.next_free);
    let dead = in_tree.next_free;
    let total = dead + usize::from(needs_dead);

    let owners = vec![Owner::Player1; total];
    let mut names = vec![String::new(); total];
    names[0] = "s".to_string();
    for i in 1..=4 {
        for v in 0..n {
            names[copy(i, v)] = format!("v{v}_{i}");
        }
    }
    for (idx, split) in out_tree.splits.iter().enumerate() {
        if split.0 != 0 {
            names[split.0] = format!("out{idx}");
        }
    }
    for (idx, split) in in_tree.splits.iter().enumerate() {
        if split.0 != 0 {
            names[split.0] = format!("in{idx}");
        }
    }
    if needs_dead {
        names[dead] = "dead".to_string();
    }

    let leaf1 = |v: usize| copy(1, v);
    let leaf4 = |v: usize| copy(4, v);

    let mut notes = vec![];
    let mut edges = Vec::new();
    // out-tree: parent -> children, rooted at the start vertex
    if let TreeRef::Leaf(v) = out_tree.root {
        edges.push((0, leaf1(v)));
    }
    for &(id, _, _, l, r) in &out_tree.splits {
        edges.push((id, out_tree.vertex_of(l, &leaf1)));
        edges.push((id, out_tree.vertex_of(r, &leaf1)));
    }
    // middle copies
    for i in 1..=3 {
        for &(u, w) in g.edges() {
            edges.push((copy(i, u), copy(i + 1, w)));
        }
    }
    // in-tree: child -> parent, rooted at the start vertex
    if let TreeRef::Leaf(v) = in_tree.root {
        edges.push((leaf4(v), 0));
    }
    for &(id, _, _, l, r) in &in_tree.splits {
        edges.push((in_tree.vertex_of(l, &leaf4), id));
        edges.push((in_tree.vertex_of(r, &leaf4), id));
    }
    if needs_dead {
        for (v, &ok) in has_out.iter().enumerate() {
            if !ok {
                for i in 1..=3 {
                    edges.push((copy(i, v), dead));
                }
                notes.push(format!("source sink {v}: first three copies feed the dead vertex"));
            }
        }
        edges.push((dead, dead));
        notes.push("dead vertex belongs to every target set".to_string());
    }

    let mdp = Mdp::new(owners, &edges).expect("reduction output is valid");
    let targets: Vec<VertexSet> = (0..n)
        .map(|v| {
            let mut t = VertexSet::empty(total);
            for sib in out_tree.path_siblings(v, &leaf1) {
                t.insert(sib);
            }
            for sib in in_tree.path_siblings(v, &leaf4) {
                t.insert(sib);
            }
            if needs_dead {
                t.insert(dead);
            }
            t
        })
        .collect();
    let objective = ObjectiveSpec::with_sets(Kind::Safety, Mode::DisjObjective, targets).unwrap();
    Instance {
        mdp,
        objective,
        meta: InstanceMeta {
            generator: "triangle-safety-tree".into(),
            names,
            notes,
        },
    }
}

/// Orthogonal vectors as a disjunctive safety query: the start picks a left
/// vector, chance walks a 1-coordinate into the right vectors sharing it,
/// and play returns to the start. Avoiding some right vector forever is
/// possible iff an orthogonal pair exists. The all-ones vector is inserted
/// into the right set when absent (it does not change the OV answer) so
/// every coordinate has a successor.
pub fn gen_ov_safety(ov: &OvInstance) -> Instance {
    let d = ov.d();
    let mask = (1u64 << d) - 1;
    let mut s2 = ov.s2().to_vec();
    let mut notes = vec![];
    if !s2.contains(&mask) {
        s2.push(mask);
        notes.push("all-ones vector inserted into the right set".to_string());
    }
    let n1 = ov.s1().len();
    let n2 = s2.len();
    let left = |j: usize| 1 + j;
    let right = |j: usize| 1 + n1 + j;
    let coord = |i: usize| 1 + n1 + n2 + i;
    let total = 1 + n1 + n2 + d;

    let mut owners = vec![Owner::Player1; total];
    for j in 0..n1 {
        owners[left(j)] = Owner::Random;
    }
    for i in 0..d {
        owners[coord(i)] = Owner::Random;
    }

    let mut names = vec!["s".to_string()];
    names.extend((0..n1).map(|j| format!("x{j}")));
    names.extend((0..n2).map(|j| format!("y{j}")));
    names.extend((0..d).map(|i| format!("c{i}")));

    let mut edges = Vec::new();
    for j in 0..n1 {
        edges.push((0, left(j)));
    }
    for (j, &x) in ov.s1().iter().enumerate() {
        for i in 0..d {
            if x & (1 << i) != 0 {
                edges.push((left(j), coord(i)));
            }
        }
        if x == 0 {
            edges.push((left(j), left(j)));
            notes.push(format!(
                "all-zero left vector {j} keeps a self-loop (safe forever)"
            ));
        }
    }
    for i in 0..d {
        for (j, &y) in s2.iter().enumerate() {
            if y & (1 << i) != 0 {
                edges.push((coord(i), right(j)));
            }
        }
    }
    for j in 0..n2 {
        edges.push((right(j), 0));
    }

    let mdp = Mdp::new(owners, &edges).expect("reduction output is valid");
    let targets: Vec<VertexSet> = (0..n2)
        .map(|j| VertexSet::from_iter(total, [right(j)]))
        .collect();
    let objective = ObjectiveSpec::with_sets(Kind::Safety, Mode::DisjQuery, targets).unwrap();
    Instance {
        mdp,
        objective,
        meta: InstanceMeta {
            generator: "ov-safety".into(),
            names,
            notes,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{oracle_ov, oracle_triangle};
    use crate::reach::as_reach_disj_query;
    use crate::safety::{safety_disj_objective_graph, safety_disj_query};

    /// Source graph of the triangle-to-reachability illustration.
    pub(crate) fn fig1_source() -> SourceGraph {
        // a=0, b=1, c=2
        SourceGraph::new(3, vec![(0, 1), (1, 0), (1, 2), (2, 0)]).unwrap()
    }

    /// Vector sets of the OV-to-reachability illustration.
    pub(crate) fn fig2_ov() -> OvInstance {
        OvInstance::from_bits(
            3,
            &[&[1, 0, 0], &[1, 1, 1], &[0, 1, 1]],
            &[&[1, 1, 0], &[0, 1, 0], &[0, 0, 1]],
        )
        .unwrap()
    }

    /// Source graph of the triangle-to-safety illustration.
    pub(crate) fn fig3_source() -> SourceGraph {
        // a=0, b=1, c=2, d=3
        SourceGraph::new(4, vec![(0, 1), (1, 0), (1, 2), (2, 0), (2, 3), (3, 0)]).unwrap()
    }

    /// Vector sets of the OV-to-safety illustration.
    pub(crate) fn fig5_ov() -> OvInstance {
        OvInstance::from_bits(
            3,
            &[&[1, 0, 0], &[1, 1, 1], &[0, 1, 1]],
            &[&[1, 1, 0], &[1, 1, 1], &[0, 1, 0], &[0, 0, 1]],
        )
        .unwrap()
    }

    #[test]
    fn triangle_reach_on_fig1() {
        let g = fig1_source();
        assert!(oracle_triangle(&g));
        let inst = gen_triangle_reach(&g);
        assert_eq!(inst.mdp.vertex_count(), 5 * 3 + 1);
        let w = as_reach_disj_query(&inst.mdp, &inst.objective.sets);
        assert!(w.contains(inst.start()));
    }

    #[test]
    fn triangle_reach_on_four_cycle() {
        let g = SourceGraph::new(4, vec![(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert!(!oracle_triangle(&g));
        let inst = gen_triangle_reach(&g);
        let w = as_reach_disj_query(&inst.mdp, &inst.objective.sets);
        assert!(!w.contains(inst.start()));
    }

    #[test]
    fn triangle_reach_on_edgeless_graph() {
        let g = SourceGraph::new(2, vec![]).unwrap();
        let inst = gen_triangle_reach(&g);
        let w = as_reach_disj_query(&inst.mdp, &inst.objective.sets);
        assert!(!w.contains(inst.start()));
    }

    #[test]
    fn ov_reach_on_fig2() {
        let inst = gen_ov_reach(&fig2_ov());
        let w = as_reach_disj_query(&inst.mdp, &inst.objective.sets);
        assert!(w.contains(inst.start()));
    }

    #[test]
    fn ov_reach_without_orthogonal_pair() {
        let ov = OvInstance::from_bits(2, &[&[1, 1]], &[&[1, 1]]).unwrap();
        assert!(!oracle_ov(&ov));
        let inst = gen_ov_reach(&ov);
        let w = as_reach_disj_query(&inst.mdp, &inst.objective.sets);
        assert!(!w.contains(inst.start()));
    }

    #[test]
    fn ov_reach_with_zero_vector() {
        let ov = OvInstance::from_bits(2, &[&[0, 0]], &[&[1, 1]]).unwrap();
        assert!(oracle_ov(&ov));
        let inst = gen_ov_reach(&ov);
        assert!(inst.index_of("c_dummy").is_some());
        let w = as_reach_disj_query(&inst.mdp, &inst.objective.sets);
        assert!(w.contains(inst.start()));
    }

    #[test]
    fn triangle_safety_on_fig3() {
        let g = fig3_source();
        assert!(oracle_triangle(&g));
        let inst = gen_triangle_safety(&g);
        assert_eq!(inst.mdp.vertex_count(), 4 * 4 + 1);
        assert!(inst.mdp.is_graph());
        let w = safety_disj_objective_graph(&inst.mdp, &inst.objective.sets).unwrap();
        assert!(w.contains(inst.start()));
        assert!(!w.is_empty());
    }

    #[test]
    fn triangle_safety_without_the_closing_edge() {
        // fig3 source minus (c, a): no triangle remains
        let g = SourceGraph::new(4, vec![(0, 1), (1, 0), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert!(!oracle_triangle(&g));
        let inst = gen_triangle_safety(&g);
        let w = safety_disj_objective_graph(&inst.mdp, &inst.objective.sets).unwrap();
        assert!(w.is_empty());
    }

    #[test]
    fn triangle_safety_on_single_vertex() {
        let g = SourceGraph::new(1, vec![]).unwrap();
        let inst = gen_triangle_safety(&g);
        let w = safety_disj_objective_graph(&inst.mdp, &inst.objective.sets).unwrap();
        assert!(w.is_empty());
    }

    #[test]
    fn tree_variant_on_fig4() {
        let g = fig3_source();
        let inst = gen_triangle_safety_tree(&g);
        // n = 4: one sibling per tree level, two levels per tree
        for t in &inst.objective.sets {
            assert_eq!(t.len(), 4);
        }
        let w = safety_disj_objective_graph(&inst.mdp, &inst.objective.sets).unwrap();
        assert!(w.contains(inst.start()));
    }

    #[test]
    fn tree_variant_target_size_bound() {
        for seed in 0..20u64 {
            let g = crate::random::random_source_graph(seed, 1 + (seed as usize % 13), 300);
            let n = g.vertex_count();
            let inst = gen_triangle_safety_tree(&g);
            let bound = 2 * crate::graph::ceil_log2(n.max(1)) as usize + 2;
            for t in &inst.objective.sets {
                assert!(t.len() <= bound, "|T_v| = {} > {bound} at n = {n}", t.len());
            }
        }
    }

    #[test]
    fn tree_variant_matches_plain_reduction_verdict() {
        for seed in 100..130u64 {
            let g = crate::random::random_source_graph(seed, 2 + (seed as usize % 9), 250);
            let expected = oracle_triangle(&g);
            let inst = gen_triangle_safety_tree(&g);
            let w = safety_disj_objective_graph(&inst.mdp, &inst.objective.sets).unwrap();
            assert_eq!(w.contains(inst.start()), expected, "seed {seed}");
            assert_eq!(!w.is_empty(), expected, "seed {seed}");
        }
    }

    #[test]
    fn ov_safety_on_fig5() {
        let inst = gen_ov_safety(&fig5_ov());
        assert!(inst.meta.notes.is_empty(), "fig5 already contains the all-ones vector");
        let w = safety_disj_query(&inst.mdp, &inst.objective.sets);
        assert!(w.contains(inst.start()));
    }

    #[test]
    fn ov_safety_without_orthogonal_pair() {
        let ov = OvInstance::from_bits(2, &[&[1, 0], &[1, 1]], &[&[1, 0], &[1, 1]]).unwrap();
        assert!(!oracle_ov(&ov));
        let inst = gen_ov_safety(&ov);
        let w = safety_disj_query(&inst.mdp, &inst.objective.sets);
        assert!(!w.contains(inst.start()));
        assert!(w.is_empty());
    }

    #[test]
    fn ov_safety_with_zero_vector_on_the_left() {
        let ov = OvInstance::from_bits(2, &[&[0, 0]], &[&[1, 0]]).unwrap();
        assert!(oracle_ov(&ov));
        let inst = gen_ov_safety(&ov);
        let w = safety_disj_query(&inst.mdp, &inst.objective.sets);
        assert!(w.contains(inst.start()));
    }

    #[test]
    fn size_formulas() {
        for seed in 0..15u64 {
            let g = crate::random::random_source_graph(seed, 1 + (seed as usize % 10), 280);
            let n = g.vertex_count();
            let m = g.edges().len();
            let sinks = g.has_out_edge().iter().filter(|&&ok| !ok).count();

            let reach = gen_triangle_reach(&g);
            assert_eq!(reach.mdp.vertex_count(), 5 * n + 1);
            assert_eq!(reach.mdp.edge_count(), 4 * n + 3 * m + 3 * sinks);

            let safety = gen_triangle_safety(&g);
            let dead = usize::from(sinks > 0);
            assert_eq!(safety.mdp.vertex_count(), 4 * n + 1 + dead);
            assert_eq!(safety.mdp.edge_count(), 2 * n + 3 * m + 3 * sinks + dead);
        }
        for seed in 0..15u64 {
            let ov = crate::random::random_ov(seed, 9);
            let (n1, n2, d) = (ov.s1().len(), ov.s2().len(), ov.d());
            let ones1: usize = ov.s1().iter().map(|x| x.count_ones() as usize).sum();
            let zeros2: usize = ov
                .s2()
                .iter()
                .map(|y| (0..d).filter(|i| y & (1 << i) == 0).count())
                .sum();
            let zero_vecs = ov.s1().iter().filter(|&&x| x == 0).count();
            let dummy = usize::from(zero_vecs > 0);
            let coord_sinks = (0..d)
                .filter(|i| ov.s2().iter().all(|y| y & (1 << i) != 0))
                .count();

            let inst = gen_ov_reach(&ov);
            assert_eq!(inst.mdp.vertex_count(), 1 + n1 + n2 + d + n2 + dummy);
            assert_eq!(
                inst.mdp.edge_count(),
                n1 + ones1 + zero_vecs + 2 * n2 + zeros2 + dummy * n2 + n2 + coord_sinks
            );
        }
    }

    #[test]
    fn generated_instances_round_trip_through_files() {
        let inst = gen_triangle_safety(&fig3_source());
        let text = crate::mdp::serialize_mdp(&inst.mdp);
        let back = crate::mdp::parse_mdp(&text, false).unwrap();
        assert_eq!(back, inst.mdp);
        let otext = crate::objective::serialize_objective(&inst.objective);
        let ospec = crate::objective::parse_objective(&otext, &back).unwrap();
        assert_eq!(ospec, inst.objective);
    }

    #[test]
    fn reduction_soundness_sweep() {
        for seed in 0..40u64 {
            let g = crate::random::random_source_graph(seed, 1 + (seed as usize % 12), 200);
            let expected = oracle_triangle(&g);
            let r = gen_triangle_reach(&g);
            assert_eq!(
                as_reach_disj_query(&r.mdp, &r.objective.sets).contains(0),
                expected,
                "triangle-reach seed {seed}"
            );
            let sf = gen_triangle_safety(&g);
            let w = safety_disj_objective_graph(&sf.mdp, &sf.objective.sets).unwrap();
            assert_eq!(w.contains(0), expected, "triangle-safety seed {seed}");
            assert_eq!(!w.is_empty(), expected, "triangle-safety nonempty seed {seed}");
        }
        for seed in 0..40u64 {
            let ov = crate::random::random_ov(seed, 10);
            let expected = oracle_ov(&ov);
            let r = gen_ov_reach(&ov);
            assert_eq!(
                as_reach_disj_query(&r.mdp, &r.objective.sets).contains(0),
                expected,
                "ov-reach seed {seed}"
            );
            let sf = gen_ov_safety(&ov);
            assert_eq!(
                safety_disj_query(&sf.mdp, &sf.objective.sets).contains(0),
                expected,
                "ov-safety seed {seed}"
            );
        }
    }
}
