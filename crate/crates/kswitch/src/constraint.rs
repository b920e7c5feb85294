//! Pluggable constraint predicates with full and incremental evaluation paths.
//!
//! Each constraint freezes its target parameters from a starter graph and then
//! answers two questions: does a graph satisfy the constraint (`check_full`),
//! and would it still satisfy it after a proposed switch (`check_incremental`,
//! evaluated against the pre-switch graph plus an edge delta, without mutating
//! anything). The two paths must always agree; the test suite enforces this
//! with mutate-and-recheck oracles.

use std::collections::HashMap;

use thiserror::Error;

use crate::graph::{Edge, Graph, NodeId};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ConstraintError {
    #[error("graph has no node colors attached")]
    MissingColorData,
    #[error("node count {0} is not divisible by 3")]
    NNotDivisibleBy3(usize),
    #[error("colors are not balanced: counts {0:?}")]
    UnbalancedColors([usize; 3]),
    #[error("graph is not bipartite with respect to the chosen side")]
    NotBipartite,
    #[error("constraint {name} requires a {required} graph")]
    WrongDirectedness { name: &'static str, required: &'static str },
}

/// The edge replacement performed by one switch trial: `removed` and `added`
/// have equal length and equal source multisets. Slots whose edge does not
/// actually change are omitted.
#[derive(Clone, Debug, Default)]
pub struct EdgeDelta {
    pub removed: Vec<Edge>,
    pub added: Vec<Edge>,
}

impl EdgeDelta {
    pub fn is_empty(&self) -> bool {
        self.removed.is_empty()
    }

    pub fn clear(&mut self) {
        self.removed.clear();
        self.added.clear();
    }

    /// Applies the delta to a graph by replacing each removed edge's slot with
    /// the corresponding added edge. Intended for oracle-style tests that
    /// mutate a copy and re-run a full check; the walk itself commits through
    /// the switch engine.
    pub fn apply(&self, g: &mut Graph) {
        let indices: Vec<usize> = self
            .removed
            .iter()
            .map(|r| {
                g.edges()
                    .iter()
                    .position(|e| e == r)
                    .expect("delta removes an edge the graph does not have")
            })
            .collect();
        let pairs: Vec<(NodeId, NodeId)> =
            self.added.iter().map(|e| (e.source(), e.target())).collect();
        g.replace_edges(&indices, &pairs);
    }
}

/// Read-only view of the graph a switch would produce, overlaying an
/// [`EdgeDelta`] on the pre-switch graph. Only nodes touched by the delta get
/// patched neighbor lists; everything else delegates to the original graph.
pub struct DeltaView<'a> {
    graph: &'a Graph,
    patched_out: HashMap<NodeId, Vec<NodeId>>,
    patched_in: HashMap<NodeId, Vec<NodeId>>,
}

impl<'a> DeltaView<'a> {
    pub fn new(graph: &'a Graph, delta: &EdgeDelta) -> Self {
        let mut patched_out: HashMap<NodeId, Vec<NodeId>> = HashMap::new();
        let mut patched_in: HashMap<NodeId, Vec<NodeId>> = HashMap::new();
        let directed = graph.is_directed();
        let mut touch_out = |u: NodeId| {
            patched_out
                .entry(u)
                .or_insert_with(|| graph.out_neighbors(u).to_vec());
        };
        for e in delta.removed.iter().chain(&delta.added) {
            touch_out(e.source());
            if directed {
                patched_in
                    .entry(e.target())
                    .or_insert_with(|| graph.in_neighbors(e.target()).to_vec());
            } else {
                touch_out(e.target());
            }
        }
        let remove = |list: &mut Vec<NodeId>, v: NodeId| {
            let pos = list.iter().position(|&x| x == v).expect("delta removes absent edge");
            list.swap_remove(pos);
        };
        for e in &delta.removed {
            remove(patched_out.get_mut(&e.source()).unwrap(), e.target());
            if directed {
                remove(patched_in.get_mut(&e.target()).unwrap(), e.source());
            } else {
                remove(patched_out.get_mut(&e.target()).unwrap(), e.source());
            }
        }
        for e in &delta.added {
            patched_out.get_mut(&e.source()).unwrap().push(e.target());
            if directed {
                patched_in.get_mut(&e.target()).unwrap().push(e.source());
            } else {
                patched_out.get_mut(&e.target()).unwrap().push(e.source());
            }
        }
        DeltaView { graph, patched_out, patched_in }
    }

    /// Post-switch out-neighbors (all neighbors when undirected).
    pub fn out_neighbors(&self, u: NodeId) -> &[NodeId] {
        self.patched_out
            .get(&u)
            .map(Vec::as_slice)
            .unwrap_or_else(|| self.graph.out_neighbors(u))
    }

    pub fn in_neighbors(&self, u: NodeId) -> &[NodeId] {
        if self.graph.is_directed() {
            self.patched_in
                .get(&u)
                .map(Vec::as_slice)
                .unwrap_or_else(|| self.graph.in_neighbors(u))
        } else {
            self.out_neighbors(u)
        }
    }

    pub fn has_edge(&self, a: NodeId, b: NodeId) -> bool {
        self.out_neighbors(a).contains(&b)
    }
}

/// A checkable predicate over graphs, with parameters frozen from the starter.
pub trait Constraint: Send + Sync {
    fn name(&self) -> &str;

    /// True iff `g` satisfies the constraint.
    fn check_full(&self, g: &Graph) -> bool;

    /// Verdict of `check_full` on the graph that applying `delta` to `g`
    /// would produce. `g` is the pre-switch graph, which must satisfy the
    /// constraint; simplicity of the post-switch graph is already validated.
    fn check_incremental(&self, g: &Graph, delta: &EdgeDelta) -> bool;
}

/// The empty additional constraint: only the fundamental one (degrees,
/// simplicity) applies, which the switch engine enforces itself.
#[derive(Clone, Debug, Default)]
pub struct NoConstraint;

impl Constraint for NoConstraint {
    fn name(&self) -> &str {
        "none"
    }

    fn check_full(&self, _g: &Graph) -> bool {
        true
    }

    fn check_incremental(&self, _g: &Graph, _delta: &EdgeDelta) -> bool {
        true
    }
}

// ---------------------------------------------------------------------------
// C0: fixed degree multiset of the one-mode projection of a bipartite graph
// ---------------------------------------------------------------------------

/// Degrees of the simple projection onto `side`: two side-nodes are linked iff
/// they share at least one neighbor on the other side.
pub fn projection_degrees(g: &Graph, side: &[NodeId]) -> Result<Vec<usize>, ConstraintError> {
    check_bipartite(g, side)?;
    let mut degs = Vec::with_capacity(side.len());
    for (i, &u) in side.iter().enumerate() {
        let mut d = 0;
        for (j, &v) in side.iter().enumerate() {
            if i != j && shares_neighbor(g.out_neighbors(u), g.out_neighbors(v)) {
                d += 1;
            }
        }
        degs.push(d);
    }
    Ok(degs)
}

fn check_bipartite(g: &Graph, side: &[NodeId]) -> Result<(), ConstraintError> {
    let mut mask = vec![false; g.n_nodes()];
    for &u in side {
        mask[u.index()] = true;
    }
    for e in g.edges() {
        let s = mask[e.source().index()];
        let t = mask[e.target().index()];
        let ok = if g.is_directed() { s && !t } else { s != t };
        if !ok {
            return Err(ConstraintError::NotBipartite);
        }
    }
    Ok(())
}

fn shares_neighbor(a: &[NodeId], b: &[NodeId]) -> bool {
    a.iter().any(|x| b.contains(x))
}

/// C0: the degree multiset of the bipartite graph's projection onto side A is
/// fixed. Side A is taken to be the arc sources (nodes of in-degree zero).
#[derive(Clone, Debug)]
pub struct ProjectionDegreesConstraint {
    side_a: Vec<NodeId>,
    target: Vec<usize>, // sorted multiset
}

impl ProjectionDegreesConstraint {
    pub fn from_starter(g0: &Graph) -> Result<Self, ConstraintError> {
        if !g0.is_directed() {
            return Err(ConstraintError::WrongDirectedness { name: "c0", required: "directed" });
        }
        let (_, inn) = g0.degree_sequences();
        let side_a: Vec<NodeId> = (0..g0.n_nodes())
            .filter(|&u| inn[u] == 0)
            .map(NodeId::new)
            .collect();
        let mut target = projection_degrees(g0, &side_a)?;
        target.sort_unstable();
        Ok(ProjectionDegreesConstraint { side_a, target })
    }

    pub fn side_a(&self) -> &[NodeId] {
        &self.side_a
    }

    pub fn target(&self) -> &[usize] {
        &self.target
    }

    fn degrees_on_view(&self, view: &DeltaView) -> Vec<usize> {
        let mut degs = Vec::with_capacity(self.side_a.len());
        for (i, &u) in self.side_a.iter().enumerate() {
            let mut d = 0;
            for (j, &v) in self.side_a.iter().enumerate() {
                if i != j && shares_neighbor(view.out_neighbors(u), view.out_neighbors(v)) {
                    d += 1;
                }
            }
            degs.push(d);
        }
        degs
    }
}

impl Constraint for ProjectionDegreesConstraint {
    fn name(&self) -> &str {
        "c0"
    }

    fn check_full(&self, g: &Graph) -> bool {
        match projection_degrees(g, &self.side_a) {
            Ok(mut degs) => {
                degs.sort_unstable();
                degs == self.target
            }
            Err(_) => false,
        }
    }

    fn check_incremental(&self, g: &Graph, delta: &EdgeDelta) -> bool {
        // Switches keep sources fixed, so bipartiteness is preserved along a
        // walk; recompute the projection multiset on the overlay view.
        let view = DeltaView::new(g, delta);
        let mut degs = self.degrees_on_view(&view);
        degs.sort_unstable();
        degs == self.target
    }
}

// ---------------------------------------------------------------------------
// C1: directed graph that is a disjoint union of oriented 3-cycles, with
// balanced R/G/B node colors
// ---------------------------------------------------------------------------

/// True iff a directed graph with all in/out degrees 1 decomposes into N/3
/// oriented 3-cycles. Colors must exist, N/3 of each; they do not constrain
/// the topology.
pub fn triangle_partition_check(g: &Graph) -> Result<bool, ConstraintError> {
    let n = g.n_nodes();
    if n % 3 != 0 {
        return Err(ConstraintError::NNotDivisibleBy3(n));
    }
    let colors = g.colors().ok_or(ConstraintError::MissingColorData)?;
    let mut counts = [0usize; 3];
    for c in colors {
        counts[*c as usize] += 1;
    }
    if counts != [n / 3; 3] {
        return Err(ConstraintError::UnbalancedColors(counts));
    }
    Ok(is_triangle_partition(g))
}

fn is_triangle_partition(g: &Graph) -> bool {
    let n = g.n_nodes();
    let (out, inn) = g.degree_sequences();
    if out.iter().any(|&d| d != 1) || inn.iter().any(|&d| d != 1) {
        return false;
    }
    let mut seen = vec![false; n];
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let a = NodeId::new(start);
        let b = g.out_neighbors(a)[0];
        let c = g.out_neighbors(b)[0];
        if c == a || g.out_neighbors(c)[0] != a {
            return false;
        }
        for v in [a, b, c] {
            if seen[v.index()] {
                return false;
            }
            seen[v.index()] = true;
        }
    }
    true
}

/// C1: the graph stays a disjoint union of N/3 oriented triangles.
#[derive(Clone, Debug)]
pub struct ColoredTrianglesConstraint {
    n_triangles: usize,
}

impl ColoredTrianglesConstraint {
    pub fn from_starter(g0: &Graph) -> Result<Self, ConstraintError> {
        if !g0.is_directed() {
            return Err(ConstraintError::WrongDirectedness { name: "c1", required: "directed" });
        }
        triangle_partition_check(g0)?;
        Ok(ColoredTrianglesConstraint { n_triangles: g0.n_nodes() / 3 })
    }

    pub fn n_triangles(&self) -> usize {
        self.n_triangles
    }
}

impl Constraint for ColoredTrianglesConstraint {
    fn name(&self) -> &str {
        "colored-triangles"
    }

    fn check_full(&self, g: &Graph) -> bool {
        g.n_nodes() == self.n_triangles * 3 && is_triangle_partition(g)
    }

    /// Counts 3-cycles destroyed by removed arcs and created by added arcs.
    /// In a functional graph (all out-degrees 1) the cycle through an arc is
    /// unique, so the post graph is all-triangles iff created == destroyed.
    /// Allocation-free: the post-switch successor of a node is its added arc's
    /// target if one exists (sources appear at most once), else unchanged.
    fn check_incremental(&self, g: &Graph, delta: &EdgeDelta) -> bool {
        if delta.is_empty() {
            return true;
        }
        let succ_post = |u: NodeId| -> NodeId {
            for e in &delta.added {
                if e.source() == u {
                    return e.target();
                }
            }
            g.out_neighbors(u)[0]
        };
        let mut destroyed = TripleSet::default();
        for e in &delta.removed {
            let a = e.source();
            let b = e.target();
            let c = g.out_neighbors(b)[0];
            if c != a && g.out_neighbors(c)[0] == a {
                destroyed.insert(a, b, c);
            }
        }
        let mut created = TripleSet::default();
        for e in &delta.added {
            let a = e.source();
            let b = e.target();
            let c = succ_post(b);
            if c != a && succ_post(c) == a {
                created.insert(a, b, c);
            }
        }
        created.len() == destroyed.len()
    }
}

const TRIPLES_INLINE: usize = 12;

/// Tiny set of sorted node triples; inline storage for the switch orders that
/// occur in practice, heap spill beyond that.
#[derive(Default)]
struct TripleSet {
    inline: [[u32; 3]; TRIPLES_INLINE],
    len: usize,
    spill: Vec<[u32; 3]>,
}

impl TripleSet {
    fn insert(&mut self, a: NodeId, b: NodeId, c: NodeId) {
        let mut t = [a.index() as u32, b.index() as u32, c.index() as u32];
        t.sort_unstable();
        if self.inline[..self.len.min(TRIPLES_INLINE)].contains(&t) || self.spill.contains(&t) {
            return;
        }
        if self.len < TRIPLES_INLINE {
            self.inline[self.len] = t;
        } else {
            self.spill.push(t);
        }
        self.len += 1;
    }

    fn len(&self) -> usize {
        self.len
    }
}

// ---------------------------------------------------------------------------
// C2: fixed histogram of out-degree pairs over arcs
// ---------------------------------------------------------------------------

/// For each arc (a, b), buckets the ordered pair
/// (out-degree(a), out-degree(b)); returns bucket -> count.
pub fn degree_pair_histogram(g: &Graph) -> HashMap<(usize, usize), usize> {
    let (out, _) = g.degree_sequences();
    let mut hist = HashMap::new();
    for e in g.edges() {
        let key = (out[e.source().index()], out[e.target().index()]);
        *hist.entry(key).or_insert(0) += 1;
    }
    hist
}

/// C2: the distribution of out-degree correlations between connected nodes is
/// fixed. Out-degrees are frozen at walk start; switches never change them.
/// The ordered pair (source, target) is used; switching to unordered pairs
/// would only coarsen the histogram.
#[derive(Clone, Debug)]
pub struct DegreePairsConstraint {
    frozen_out_degrees: Vec<usize>,
    target: HashMap<(usize, usize), usize>,
}

impl DegreePairsConstraint {
    pub fn from_starter(g0: &Graph) -> Result<Self, ConstraintError> {
        if !g0.is_directed() {
            return Err(ConstraintError::WrongDirectedness { name: "c2", required: "directed" });
        }
        let (out, _) = g0.degree_sequences();
        Ok(DegreePairsConstraint {
            frozen_out_degrees: out,
            target: degree_pair_histogram(g0),
        })
    }

    pub fn frozen_out_degrees(&self) -> &[usize] {
        &self.frozen_out_degrees
    }
}

impl Constraint for DegreePairsConstraint {
    fn name(&self) -> &str {
        "degree-corr"
    }

    fn check_full(&self, g: &Graph) -> bool {
        degree_pair_histogram(g) == self.target
    }

    /// O(k): buckets removed and added arcs with the frozen degrees and
    /// requires the per-bucket deltas to cancel.
    fn check_incremental(&self, _g: &Graph, delta: &EdgeDelta) -> bool {
        let mut counts: Vec<((usize, usize), i64)> = Vec::with_capacity(delta.removed.len() * 2);
        for (edges, amount) in [(&delta.removed, -1i64), (&delta.added, 1)] {
            for e in edges {
                let key = (
                    self.frozen_out_degrees[e.source().index()],
                    self.frozen_out_degrees[e.target().index()],
                );
                match counts.iter_mut().find(|(k, _)| *k == key) {
                    Some(slot) => slot.1 += amount,
                    None => counts.push((key, amount)),
                }
            }
        }
        counts.iter().all(|&(_, d)| d == 0)
    }
}

// ---------------------------------------------------------------------------
// C3: fixed number of undirected triangles
// ---------------------------------------------------------------------------

/// C3: the number of undirected triangles remains that of the starter.
#[derive(Clone, Debug)]
pub struct TriangleCountConstraint {
    target: u64,
}

impl TriangleCountConstraint {
    pub fn from_starter(g0: &Graph) -> Result<Self, ConstraintError> {
        if g0.is_directed() {
            return Err(ConstraintError::WrongDirectedness { name: "c3", required: "undirected" });
        }
        Ok(TriangleCountConstraint {
            target: crate::observable::count_undirected_triangles(g0),
        })
    }

    pub fn target(&self) -> u64 {
        self.target
    }
}

impl Constraint for TriangleCountConstraint {
    fn name(&self) -> &str {
        "triangles"
    }

    fn check_full(&self, g: &Graph) -> bool {
        crate::observable::count_undirected_triangles(g) == self.target
    }

    /// Per switched edge, intersects the endpoint neighbor lists to list the
    /// triangles it destroys (pre graph) or creates (post view); distinct
    /// triples are deduplicated so triangles touching several switched edges
    /// count once. The trial passes iff created == destroyed.
    fn check_incremental(&self, g: &Graph, delta: &EdgeDelta) -> bool {
        if delta.is_empty() {
            return true;
        }
        let mut destroyed = TripleSet::default();
        for e in &delta.removed {
            let (u, v) = (e.source(), e.target());
            for &w in g.out_neighbors(u) {
                if w != v && g.out_neighbors(v).contains(&w) {
                    destroyed.insert(u, v, w);
                }
            }
        }
        let view = DeltaView::new(g, delta);
        let mut created = TripleSet::default();
        for e in &delta.added {
            let (u, v) = (e.source(), e.target());
            for &w in view.out_neighbors(u) {
                if w != v && view.out_neighbors(v).contains(&w) {
                    created.insert(u, v, w);
                }
            }
        }
        created.len() == destroyed.len()
    }
}

// ---------------------------------------------------------------------------
// C4: fixed multiset of connected-component sizes
// ---------------------------------------------------------------------------

/// Sorted sizes of the connected components of an undirected graph.
pub fn component_size_multiset(g: &Graph) -> Vec<usize> {
    let n = g.n_nodes();
    let mut seen = vec![false; n];
    let mut sizes = Vec::new();
    let mut queue = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        queue.clear();
        queue.push(NodeId::new(start));
        let mut size = 0;
        while let Some(u) = queue.pop() {
            size += 1;
            for &v in g.out_neighbors(u) {
                if !seen[v.index()] {
                    seen[v.index()] = true;
                    queue.push(v);
                }
            }
        }
        sizes.push(size);
    }
    sizes.sort_unstable();
    sizes
}

/// C4: the distribution of connected-component sizes remains the same.
#[derive(Clone, Debug)]
pub struct ComponentSizesConstraint {
    target: Vec<usize>,
}

impl ComponentSizesConstraint {
    pub fn from_starter(g0: &Graph) -> Result<Self, ConstraintError> {
        if g0.is_directed() {
            return Err(ConstraintError::WrongDirectedness { name: "c4", required: "undirected" });
        }
        Ok(ComponentSizesConstraint { target: component_size_multiset(g0) })
    }

    pub fn target(&self) -> &[usize] {
        &self.target
    }
}

impl Constraint for ComponentSizesConstraint {
    fn name(&self) -> &str {
        "components"
    }

    fn check_full(&self, g: &Graph) -> bool {
        component_size_multiset(g) == self.target
    }

    /// BFS from the endpoints of switched edges only: components not touching
    /// them cannot change, so comparing the affected size multisets before and
    /// after is exact. O(k·M) worst case.
    fn check_incremental(&self, g: &Graph, delta: &EdgeDelta) -> bool {
        if delta.is_empty() {
            return true;
        }
        let mut endpoints: Vec<NodeId> = Vec::with_capacity(delta.removed.len() * 2);
        for e in delta.removed.iter().chain(&delta.added) {
            for v in [e.source(), e.target()] {
                if !endpoints.contains(&v) {
                    endpoints.push(v);
                }
            }
        }
        let mut pre = affected_component_sizes(&endpoints, |u| g.out_neighbors(u), g.n_nodes());
        let view = DeltaView::new(g, delta);
        let mut post =
            affected_component_sizes(&endpoints, |u| view.out_neighbors(u), g.n_nodes());
        pre.sort_unstable();
        post.sort_unstable();
        pre == post
    }
}

fn affected_component_sizes<'a, F>(starts: &[NodeId], neighbors: F, n: usize) -> Vec<usize>
where
    F: Fn(NodeId) -> &'a [NodeId],
{
    let mut seen = vec![false; n];
    let mut sizes = Vec::new();
    let mut queue = Vec::new();
    for &start in starts {
        if seen[start.index()] {
            continue;
        }
        seen[start.index()] = true;
        queue.clear();
        queue.push(start);
        let mut size = 0;
        while let Some(u) = queue.pop() {
            size += 1;
            for &v in neighbors(u) {
                if !seen[v.index()] {
                    seen[v.index()] = true;
                    queue.push(v);
                }
            }
        }
        sizes.push(size);
    }
    sizes
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Graph, NodeColor};

    fn rgb_triangle() -> Graph {
        let mut g = Graph::from_edge_list(&[(0, 1), (1, 2), (2, 0)], true, None).unwrap();
        g.set_colors(vec![NodeColor::Red, NodeColor::Green, NodeColor::Blue]).unwrap();
        g
    }

    fn delta(g: &Graph, removed: &[(usize, usize)], added: &[(usize, usize)]) -> EdgeDelta {
        let mk = |pairs: &[(usize, usize)]| {
            pairs
                .iter()
                .map(|&(u, v)| Edge::new(g.is_directed(), NodeId::new(u), NodeId::new(v)))
                .collect()
        };
        EdgeDelta { removed: mk(removed), added: mk(added) }
    }

    #[test]
    fn c1_single_triangle_satisfies() {
        let g = rgb_triangle();
        assert!(triangle_partition_check(&g).unwrap());
        let c = ColoredTrianglesConstraint::from_starter(&g).unwrap();
        assert!(c.check_full(&g));
    }

    #[test]
    fn c1_path_fails() {
        let mut g = Graph::from_edge_list(&[(0, 1), (1, 2)], true, None).unwrap();
        g.set_colors(vec![NodeColor::Red, NodeColor::Green, NodeColor::Blue]).unwrap();
        assert!(!triangle_partition_check(&g).unwrap());
    }

    #[test]
    fn c1_six_cycle_fails_two_triangles_pass() {
        let mut six_cycle =
            Graph::from_edge_list(&[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)], true, None)
                .unwrap();
        six_cycle
            .set_colors(vec![
                NodeColor::Red,
                NodeColor::Green,
                NodeColor::Blue,
                NodeColor::Red,
                NodeColor::Green,
                NodeColor::Blue,
            ])
            .unwrap();
        assert!(!triangle_partition_check(&six_cycle).unwrap());

        let mut two = Graph::from_edge_list(
            &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)],
            true,
            None,
        )
        .unwrap();
        two.set_colors(vec![
            NodeColor::Red,
            NodeColor::Green,
            NodeColor::Blue,
            NodeColor::Red,
            NodeColor::Green,
            NodeColor::Blue,
        ])
        .unwrap();
        assert!(triangle_partition_check(&two).unwrap());
    }

    #[test]
    fn c1_error_paths() {
        let g = Graph::from_edge_list(&[(0, 1), (1, 2), (2, 0)], true, None).unwrap();
        assert_eq!(
            triangle_partition_check(&g).unwrap_err(),
            ConstraintError::MissingColorData
        );
        let mut four = Graph::from_edge_list(&[(0, 1), (1, 2), (2, 3), (3, 0)], true, None).unwrap();
        four.set_colors(vec![NodeColor::Red; 4]).unwrap();
        assert!(matches!(
            triangle_partition_check(&four).unwrap_err(),
            ConstraintError::NNotDivisibleBy3(4)
        ));
        let mut unbalanced = rgb_triangle();
        unbalanced
            .set_colors(vec![NodeColor::Red, NodeColor::Red, NodeColor::Blue])
            .unwrap();
        assert!(matches!(
            triangle_partition_check(&unbalanced).unwrap_err(),
            ConstraintError::UnbalancedColors(_)
        ));
    }

    #[test]
    fn c0_projection_examples() {
        // star: one B node with three A in-neighbors projects to a triangle
        let star = Graph::from_edge_list(&[(0, 3), (1, 3), (2, 3)], true, None).unwrap();
        let side: Vec<NodeId> = (0..3).map(NodeId::new).collect();
        assert_eq!(projection_degrees(&star, &side).unwrap(), vec![2, 2, 2]);

        // no shared neighbors: all projection degrees zero
        let sparse = Graph::from_edge_list(&[(0, 2), (1, 3)], true, None).unwrap();
        let side: Vec<NodeId> = (0..2).map(NodeId::new).collect();
        assert_eq!(projection_degrees(&sparse, &side).unwrap(), vec![0, 0]);

        // not bipartite w.r.t. the side: edge inside the claimed side
        let bad = Graph::from_edge_list(&[(0, 1), (0, 2)], true, None).unwrap();
        let side: Vec<NodeId> = (0..2).map(NodeId::new).collect();
        assert_eq!(
            projection_degrees(&bad, &side).unwrap_err(),
            ConstraintError::NotBipartite
        );
    }

    #[test]
    fn c0_toy_satisfies() {
        let g = crate::gen::c0_toy_graph();
        let c = ProjectionDegreesConstraint::from_starter(&g).unwrap();
        assert_eq!(c.target(), &[1, 1, 2, 2, 2]);
        assert!(c.check_full(&g));
    }

    #[test]
    fn c2_histogram_examples() {
        let cycle = Graph::from_edge_list(&[(0, 1), (1, 2), (2, 0)], true, None).unwrap();
        let h = degree_pair_histogram(&cycle);
        assert_eq!(h.len(), 1);
        assert_eq!(h[&(1, 1)], 3);

        let fan = Graph::from_edge_list(&[(0, 1), (0, 2)], true, None).unwrap();
        let h = degree_pair_histogram(&fan);
        assert_eq!(h[&(2, 0)], 2);
    }

    #[test]
    fn c2_equal_out_degree_swap_always_passes() {
        // sources 0 and 1 both have out-degree 1: swapping their targets
        // leaves the histogram untouched
        let g = Graph::from_edge_list(&[(0, 2), (1, 3)], true, None).unwrap();
        let c = DegreePairsConstraint::from_starter(&g).unwrap();
        let d = delta(&g, &[(0, 2), (1, 3)], &[(0, 3), (1, 2)]);
        assert!(c.check_incremental(&g, &d));
    }

    #[test]
    fn c3_joining_two_triangles_rejected() {
        let g = Graph::from_edge_list(
            &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)],
            false,
            None,
        )
        .unwrap();
        let c = TriangleCountConstraint::from_starter(&g).unwrap();
        assert_eq!(c.target(), 2);
        // swap targets of {0,1} and {3,4}: destroys both triangles, creates none
        let d = delta(&g, &[(0, 1), (3, 4)], &[(0, 4), (3, 1)]);
        assert!(!c.check_incremental(&g, &d));
        // oracle: apply on a copy and recount
        let mut copy = g.clone();
        d.apply(&mut copy);
        assert_eq!(crate::observable::count_undirected_triangles(&copy), 0);
    }

    #[test]
    fn c4_examples() {
        let two_triangles = Graph::from_edge_list(
            &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)],
            false,
            None,
        )
        .unwrap();
        assert_eq!(component_size_multiset(&two_triangles), vec![3, 3]);

        let connected = Graph::from_edge_list(&[(0, 1), (1, 2), (2, 3)], false, None).unwrap();
        assert_eq!(component_size_multiset(&connected), vec![4]);

        let c = ComponentSizesConstraint::from_starter(&two_triangles).unwrap();
        // a swap joining the two triangles into one component must be rejected
        let d = delta(&two_triangles, &[(0, 1), (3, 4)], &[(0, 4), (1, 3)]);
        assert!(!c.check_incremental(&two_triangles, &d));

        // rewiring the 4-cycle into the other 4-cycle on the same nodes keeps
        // one component of size 4
        let square = Graph::from_edge_list(&[(0, 1), (1, 2), (2, 3), (3, 0)], false, None).unwrap();
        let c = ComponentSizesConstraint::from_starter(&square).unwrap();
        let d = delta(&square, &[(0, 1), (2, 3)], &[(0, 2), (1, 3)]);
        assert!(c.check_incremental(&square, &d));
        let mut copy = square.clone();
        d.apply(&mut copy);
        assert_eq!(component_size_multiset(&copy), vec![4]);
    }
}
