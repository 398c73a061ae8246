use std::collections::HashSet;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::mec::MecAnalysis;
use crate::vertex_set::VertexSet;

/// Who resolves the successor choice at a vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Owner {
    Player1,
    Random,
}

/// Rewrites applied while validating or generating a model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Normalization {
    /// A sink received a self-loop.
    AddedSelfLoop(usize),
    /// A random vertex whose only edge is a self-loop was handed to player 1.
    SelfLoopRandomMadePlayer1(usize),
}

impl std::fmt::Display for Normalization {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Normalization::AddedSelfLoop(v) => write!(f, "added self-loop at {v}"),
            Normalization::SelfLoopRandomMadePlayer1(v) => {
                write!(f, "self-loop-only random vertex {v} made player-1")
            }
        }
    }
}

/// A finite MDP: a directed graph whose vertices are partitioned into
/// player-1 and random vertices. Random vertices move to a successor chosen
/// uniformly at random; no numeric probabilities are ever stored since the
/// qualitative questions answered here only depend on the edge relation.
///
/// Graphs are the special case with no random vertices.
///
/// Invariants enforced on construction: every edge endpoint is `< n`, every
/// vertex has at least one outgoing edge, and there are no duplicate edges.
/// A random vertex whose single edge is a self-loop is rewritten to a
/// player-1 vertex (recorded in [`Mdp::normalizations`]); the solvers rely
/// on random vertices having a non-self successor.
///
/// The adjacency order of each vertex is fixed at construction (file order
/// for parsed models) and is significant: the hierarchical decomposition
/// keeps the *first* `2^j` outgoing edges of a vertex.
pub struct Mdp {
    owners: Vec<Owner>,
    edges: Vec<Vec<usize>>,
    normalizations: Vec<Normalization>,
    rev: OnceLock<Vec<Vec<usize>>>,
    pub(crate) analysis: OnceLock<Box<MecAnalysis>>,
}

impl PartialEq for Mdp {
    fn eq(&self, other: &Self) -> bool {
        self.owners == other.owners && self.edges == other.edges
    }
}

impl Clone for Mdp {
    fn clone(&self) -> Self {
        Mdp {
            owners: self.owners.clone(),
            edges: self.edges.clone(),
            normalizations: self.normalizations.clone(),
            rev: OnceLock::new(),
            analysis: OnceLock::new(),
        }
    }
}

impl std::fmt::Debug for Mdp {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Mdp")
            .field("n", &self.vertex_count())
            .field("m", &self.edge_count())
            .field("owners", &self.owners)
            .field("edges", &self.edges)
            .finish()
    }
}

impl Mdp {
    /// Builds and validates an MDP from per-vertex owners and an edge list.
    /// The edge list order defines the adjacency order.
    pub fn new(owners: Vec<Owner>, edge_list: &[(usize, usize)]) -> Result<Mdp> {
        let n = owners.len();
        let mut edges: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut seen = HashSet::new();
        for &(u, v) in edge_list {
            if u >= n || v >= n {
                return Err(Error::Invalid(format!(
                    "edge ({u}, {v}) out of range for {n} vertices"
                )));
            }
            if !seen.insert((u, v)) {
                return Err(Error::Invalid(format!("duplicate edge ({u}, {v})")));
            }
            edges[u].push(v);
        }
        Self::from_adjacency(owners, edges)
    }

    /// Like [`Mdp::new`] but gives every sink a self-loop instead of
    /// rejecting it, recording the rewrite.
    pub fn new_normalized(owners: Vec<Owner>, edge_list: &[(usize, usize)]) -> Result<Mdp> {
        let n = owners.len();
        let mut list = edge_list.to_vec();
        let mut has_out = vec![false; n];
        for &(u, v) in edge_list {
            if u >= n || v >= n {
                return Err(Error::Invalid(format!(
                    "edge ({u}, {v}) out of range for {n} vertices"
                )));
            }
            has_out[u] = true;
        }
        let mut added = Vec::new();
        for v in 0..n {
            if !has_out[v] {
                list.push((v, v));
                added.push(Normalization::AddedSelfLoop(v));
            }
        }
        let mut mdp = Self::new(owners, &list)?;
        mdp.normalizations.splice(0..0, added);
        Ok(mdp)
    }

    fn from_adjacency(mut owners: Vec<Owner>, edges: Vec<Vec<usize>>) -> Result<Mdp> {
        let mut normalizations = Vec::new();
        for (v, adj) in edges.iter().enumerate() {
            if adj.is_empty() {
                return Err(Error::Invalid(format!("vertex {v} has no outgoing edge")));
            }
            if owners[v] == Owner::Random && adj.len() == 1 && adj[0] == v {
                owners[v] = Owner::Player1;
                normalizations.push(Normalization::SelfLoopRandomMadePlayer1(v));
            }
        }
        Ok(Mdp {
            owners,
            edges,
            normalizations,
            rev: OnceLock::new(),
            analysis: OnceLock::new(),
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.owners.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.iter().map(Vec::len).sum()
    }

    pub fn owner(&self, v: usize) -> Owner {
        self.owners[v]
    }

    /// True when there are no random vertices.
    pub fn is_graph(&self) -> bool {
        self.owners.iter().all(|&o| o == Owner::Player1)
    }

    pub fn successors(&self, v: usize) -> &[usize] {
        &self.edges[v]
    }

    pub fn normalizations(&self) -> &[Normalization] {
        &self.normalizations
    }

    pub(crate) fn reverse_edges(&self) -> &Vec<Vec<usize>> {
        self.rev.get_or_init(|| {
            let mut rev: Vec<Vec<usize>> = vec![Vec::new(); self.vertex_count()];
            for (u, adj) in self.edges.iter().enumerate() {
                for &v in adj {
                    rev[v].push(u);
                }
            }
            rev
        })
    }

    /// View of the whole MDP.
    pub fn view(&self) -> View<'_> {
        View {
            mdp: self,
            keep: VertexSet::full(self.vertex_count()),
            reversed: false,
        }
    }

    /// Induced sub-MDP keeping only `keep` and the edges among them.
    /// Vertex ids are preserved; the view may contain sinks.
    pub fn restricted(&self, keep: VertexSet) -> View<'_> {
        assert_eq!(keep.universe(), self.vertex_count());
        View {
            mdp: self,
            keep,
            reversed: false,
        }
    }

    /// View with every edge flipped.
    pub fn reversed_view(&self) -> View<'_> {
        View {
            mdp: self,
            keep: VertexSet::full(self.vertex_count()),
            reversed: true,
        }
    }
}

/// An index-preserving window into an [`Mdp`]: a subset of the vertices,
/// optionally with all edges flipped. Owner tags are inherited. Views are
/// cheap to clone and never re-number vertices, so winning sets computed on
/// a view are reported in the original ids.
#[derive(Clone)]
pub struct View<'a> {
    mdp: &'a Mdp,
    keep: VertexSet,
    reversed: bool,
}

impl<'a> View<'a> {
    pub fn mdp(&self) -> &'a Mdp {
        self.mdp
    }

    /// Size of the id space (not the number of kept vertices).
    pub fn universe(&self) -> usize {
        self.mdp.vertex_count()
    }

    pub fn vertex_count(&self) -> usize {
        self.keep.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keep.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.keep.contains(v)
    }

    pub fn owner(&self, v: usize) -> Owner {
        debug_assert!(self.contains(v));
        self.mdp.owner(v)
    }

    pub fn kept(&self) -> &VertexSet {
        &self.keep
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.keep.iter()
    }

    /// Further restriction; `keep` is intersected with the current window.
    pub fn restrict(&self, keep: &VertexSet) -> View<'a> {
        let mut k = self.keep.clone();
        k.intersect_with(keep);
        View {
            mdp: self.mdp,
            keep: k,
            reversed: self.reversed,
        }
    }

    /// Same window, edges flipped.
    pub fn reversed(&self) -> View<'a> {
        View {
            mdp: self.mdp,
            keep: self.keep.clone(),
            reversed: !self.reversed,
        }
    }

    pub fn is_reversed(&self) -> bool {
        self.reversed
    }

    fn raw_out(&self, v: usize) -> &'a [usize] {
        if self.reversed {
            &self.mdp.reverse_edges()[v]
        } else {
            &self.mdp.edges[v]
        }
    }

    fn raw_in(&self, v: usize) -> &'a [usize] {
        if self.reversed {
            &self.mdp.edges[v]
        } else {
            &self.mdp.reverse_edges()[v]
        }
    }

    /// Successors of `v` inside the view, in the fixed adjacency order
    /// filtered through the restriction.
    pub fn out_edges(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        debug_assert!(self.contains(v));
        self.raw_out(v).iter().copied().filter(|&w| self.keep.contains(w))
    }

    pub fn in_edges(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        debug_assert!(self.contains(v));
        self.raw_in(v).iter().copied().filter(|&w| self.keep.contains(w))
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out_edges(v).count()
    }

    pub fn edge_count(&self) -> usize {
        self.vertices().map(|v| self.out_degree(v)).sum()
    }

    pub fn has_any_edge(&self) -> bool {
        self.vertices().any(|v| self.out_edges(v).next().is_some())
    }

    /// Set of edges as pairs, for structural comparisons in tests.
    pub fn edge_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for v in self.vertices() {
            for w in self.out_edges(v) {
                out.push((v, w));
            }
        }
        out
    }
}

/// Parses the line-oriented MDP format:
///
/// ```text
/// mdp
/// vertices <n>
/// random <id>*
/// edge <u> <v>
/// ```
///
/// `#` starts a comment, blank lines are ignored, edge order is significant.
/// With `normalize` set, vertices without outgoing edges receive a self-loop
/// instead of being rejected.
pub fn parse_mdp(text: &str, normalize: bool) -> Result<Mdp> {
    let mut lines = significant_lines(text);

    let (ln, header) = lines
        .next()
        .ok_or_else(|| Error::parse(0, "empty input, expected `mdp` header"))?;
    if header.trim() != "mdp" {
        return Err(Error::parse(ln, "expected `mdp` header"));
    }

    let (ln, vline) = lines
        .next()
        .ok_or_else(|| Error::parse(ln, "expected `vertices <n>`"))?;
    let mut toks = vline.split_whitespace();
    if toks.next() != Some("vertices") {
        return Err(Error::parse(ln, "expected `vertices <n>`"));
    }
    let n: usize = toks
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| Error::parse(ln, "expected a vertex count"))?;
    if toks.next().is_some() {
        return Err(Error::parse(ln, "trailing tokens after vertex count"));
    }

    let (ln, rline) = lines
        .next()
        .ok_or_else(|| Error::parse(ln, "expected `random <id>*`"))?;
    let mut toks = rline.split_whitespace();
    if toks.next() != Some("random") {
        return Err(Error::parse(ln, "expected `random <id>*`"));
    }
    let mut owners = vec![Owner::Player1; n];
    for t in toks {
        let v: usize = t
            .parse()
            .map_err(|_| Error::parse(ln, format!("bad vertex id `{t}`")))?;
        if v >= n {
            return Err(Error::parse(ln, format!("random vertex {v} out of range")));
        }
        owners[v] = Owner::Random;
    }

    let mut edge_list = Vec::new();
    let mut seen = HashSet::new();
    for (ln, line) in lines {
        let mut toks = line.split_whitespace();
        match toks.next() {
            Some("edge") => {
                let u: usize = toks
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| Error::parse(ln, "expected `edge <u> <v>`"))?;
                let v: usize = toks
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| Error::parse(ln, "expected `edge <u> <v>`"))?;
                if toks.next().is_some() {
                    return Err(Error::parse(ln, "trailing tokens after edge"));
                }
                if u >= n || v >= n {
                    return Err(Error::parse(ln, format!("edge ({u}, {v}) out of range")));
                }
                if !seen.insert((u, v)) {
                    return Err(Error::parse(ln, format!("duplicate edge ({u}, {v})")));
                }
                edge_list.push((u, v));
            }
            Some(tok) => return Err(Error::parse(ln, format!("unknown directive `{tok}`"))),
            None => unreachable!("blank lines are filtered"),
        }
    }

    if normalize {
        Mdp::new_normalized(owners, &edge_list)
    } else {
        Mdp::new(owners, &edge_list)
    }
}

/// Canonical text form; `parse_mdp` of the output reproduces the model with
/// the identical adjacency order.
pub fn serialize_mdp(mdp: &Mdp) -> String {
    let mut out = String::new();
    out.push_str("mdp\n");
    out.push_str(&format!("vertices {}\n", mdp.vertex_count()));
    out.push_str("random");
    for v in 0..mdp.vertex_count() {
        if mdp.owner(v) == Owner::Random {
            out.push_str(&format!(" {v}"));
        }
    }
    out.push('\n');
    for u in 0..mdp.vertex_count() {
        for &v in mdp.successors(u) {
            out.push_str(&format!("edge {u} {v}\n"));
        }
    }
    out
}

/// Yields (1-based line number, content) for non-blank lines with comments
/// stripped.
pub(crate) fn significant_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            None
        } else {
            Some((i + 1, line))
        }
    })
}


#[cfg(test)]
mod tests {
    use super::testutil::*;
    use super::*;

    #[test]
    fn parse_smallest_mdp() {
        let m = parse_mdp("mdp\nvertices 1\nrandom\nedge 0 0\n", false).unwrap();
        assert_eq!(m.vertex_count(), 1);
        assert_eq!(m.owner(0), Owner::Player1);
        assert_eq!(m.successors(0), &[0]);
        assert!(m.is_graph());
    }

    #[test]
    fn parse_f2_file() {
        let text = "# two vertices\nmdp\nvertices 2\nrandom 1\nedge 0 0\nedge 0 1\nedge 1 0\nedge 1 1\n";
        let m = parse_mdp(text, false).unwrap();
        assert_eq!(m, f2());
        assert_eq!(m.edge_count(), 4);
    }

    #[test]
    fn parse_rejects_out_of_range_edge() {
        let err = parse_mdp("mdp\nvertices 2\nrandom\nedge 0 5\nedge 1 0\n", false).unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 4),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn parse_rejects_duplicate_edge_and_sink() {
        assert!(parse_mdp("mdp\nvertices 1\nrandom\nedge 0 0\nedge 0 0\n", false).is_err());
        assert!(parse_mdp("mdp\nvertices 2\nrandom\nedge 0 1\n", false).is_err());
    }

    #[test]
    fn normalize_adds_self_loop() {
        let m = parse_mdp("mdp\nvertices 2\nrandom\nedge 0 1\n", true).unwrap();
        assert_eq!(m.successors(1), &[1]);
        assert_eq!(m.normalizations(), &[Normalization::AddedSelfLoop(1)]);
    }

    #[test]
    fn self_loop_only_random_becomes_player1() {
        let m = mdp(2, &[1], &[(0, 1), (1, 1)]);
        assert_eq!(m.owner(1), Owner::Player1);
        assert_eq!(
            m.normalizations(),
            &[Normalization::SelfLoopRandomMadePlayer1(1)]
        );
    }

    #[test]
    fn round_trip_serialization() {
        let m = f2();
        let again = parse_mdp(&serialize_mdp(&m), false).unwrap();
        assert_eq!(m, again);
        for v in 0..2 {
            assert_eq!(m.successors(v), again.successors(v));
        }
    }

    #[test]
    fn induced_sub_mdp_views() {
        let m = f2();
        let v0 = m.restricted(VertexSet::from_iter(2, [0]));
        assert_eq!(v0.edge_pairs(), vec![(0, 0)]);

        let m3 = f3();
        let v12 = m3.restricted(VertexSet::from_iter(3, [1, 2]));
        assert_eq!(v12.edge_pairs(), vec![(1, 1), (2, 2)]);

        let v1 = m.restricted(VertexSet::from_iter(2, [1]));
        assert_eq!(v1.edge_pairs(), vec![(1, 1)]);
    }

    #[test]
    fn induced_on_all_vertices_keeps_edges() {
        let m = f3();
        assert_eq!(m.view().edge_pairs().len(), m.edge_count());
    }

    #[test]
    fn reverse_views() {
        let m1 = f1();
        assert_eq!(m1.reversed_view().edge_pairs(), vec![(0, 0)]);

        let chain = mdp(2, &[], &[(0, 1), (1, 1)]);
        let rev = chain.reversed_view();
        let mut pairs = rev.edge_pairs();
        pairs.sort();
        assert_eq!(pairs, vec![(1, 0), (1, 1)]);

        let m2 = f2();
        let mut fwd = m2.view().edge_pairs();
        let mut back_again = m2.reversed_view().reversed().edge_pairs();
        fwd.sort();
        back_again.sort();
        assert_eq!(fwd, back_again);
    }
}
