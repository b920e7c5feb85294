//! Mutable graph storage with a dual representation: an edge array for O(1)
//! random edge selection and per-node adjacency lists for O(δ) neighborhood
//! queries. Both structures are kept in sync through every switch.

use std::collections::HashMap;
use std::fmt;
use std::path::Path;

use rand::Rng;
use thiserror::Error;

/// Dense node index in `[0, N)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct NodeId(u32);

impl NodeId {
    pub fn new(index: usize) -> Self {
        NodeId(index as u32)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Node label used by the colored-triangle constraint.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum NodeColor {
    Red,
    Green,
    Blue,
}

impl NodeColor {
    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'R' | 'r' => Some(NodeColor::Red),
            'G' | 'g' => Some(NodeColor::Green),
            'B' | 'b' => Some(NodeColor::Blue),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            NodeColor::Red => 'R',
            NodeColor::Green => 'G',
            NodeColor::Blue => 'B',
        }
    }
}

/// A single arc (directed) or canonicalized edge (undirected, source ≤ target).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Edge {
    source: NodeId,
    target: NodeId,
}

impl Edge {
    /// Builds an edge, canonicalizing the endpoint order for undirected graphs.
    pub fn new(directed: bool, u: NodeId, v: NodeId) -> Self {
        if !directed && u > v {
            Edge { source: v, target: u }
        } else {
            Edge { source: u, target: v }
        }
    }

    pub fn source(self) -> NodeId {
        self.source
    }

    pub fn target(self) -> NodeId {
        self.target
    }

    pub fn as_pair(self) -> (u32, u32) {
        (self.source.0, self.target.0)
    }
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop at node {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("node {node} out of range (N = {n_nodes})")]
    NodeOutOfRange { node: usize, n_nodes: usize },
    #[error("switch size k = {0} must be at least 2")]
    KTooSmall(usize),
    #[error("switch size k = {k} exceeds edge count M = {m}")]
    KTooLarge { k: usize, m: usize },
    #[error("color list has {got} entries, graph has {expected} nodes")]
    ColorLengthMismatch { got: usize, expected: usize },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("io error: {0}")]
    Io(String),
}

/// Simple graph (no self-loops, no duplicate edges), directed or undirected,
/// storing every edge both in an indexable array and in adjacency lists.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Graph {
    directed: bool,
    n_nodes: usize,
    edges: Vec<Edge>,
    out_adj: Vec<Vec<NodeId>>,
    in_adj: Vec<Vec<NodeId>>,
    colors: Option<Vec<NodeColor>>,
}

impl Graph {
    /// Builds a graph from integer pairs. Undirected pairs are canonicalized;
    /// duplicates after canonicalization are rejected.
    pub fn from_edge_list(
        pairs: &[(usize, usize)],
        directed: bool,
        n_nodes: Option<usize>,
    ) -> Result<Graph, GraphError> {
        let max_seen = pairs.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
        let n = match n_nodes {
            Some(n) => {
                if max_seen > n {
                    let bad = pairs
                        .iter()
                        .flat_map(|&(u, v)| [u, v])
                        .find(|&x| x >= n)
                        .unwrap();
                    return Err(GraphError::NodeOutOfRange { node: bad, n_nodes: n });
                }
                n
            }
            None => max_seen,
        };

        let mut g = Graph {
            directed,
            n_nodes: n,
            edges: Vec::with_capacity(pairs.len()),
            out_adj: vec![Vec::new(); n],
            in_adj: if directed { vec![Vec::new(); n] } else { Vec::new() },
            colors: None,
        };
        for &(u, v) in pairs {
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            let e = Edge::new(directed, NodeId::new(u), NodeId::new(v));
            if g.has_edge(e.source, e.target) {
                return Err(GraphError::DuplicateEdge(u, v));
            }
            g.push_edge(e);
        }
        Ok(g)
    }

    fn push_edge(&mut self, e: Edge) {
        self.edges.push(e);
        self.insert_adjacency(e);
    }

    fn insert_adjacency(&mut self, e: Edge) {
        let (s, t) = (e.source, e.target);
        self.out_adj[s.index()].push(t);
        if self.directed {
            self.in_adj[t.index()].push(s);
        } else {
            self.out_adj[t.index()].push(s);
        }
    }

    fn remove_adjacency(&mut self, e: Edge) {
        let (s, t) = (e.source, e.target);
        remove_value(&mut self.out_adj[s.index()], t);
        if self.directed {
            remove_value(&mut self.in_adj[t.index()], s);
        } else {
            remove_value(&mut self.out_adj[t.index()], s);
        }
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn n_nodes(&self) -> usize {
        self.n_nodes
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, idx: usize) -> Edge {
        self.edges[idx]
    }

    /// Out-neighbors for directed graphs; all neighbors for undirected ones.
    pub fn out_neighbors(&self, u: NodeId) -> &[NodeId] {
        &self.out_adj[u.index()]
    }

    /// In-neighbors for directed graphs; all neighbors for undirected ones.
    pub fn in_neighbors(&self, u: NodeId) -> &[NodeId] {
        if self.directed {
            &self.in_adj[u.index()]
        } else {
            &self.out_adj[u.index()]
        }
    }

    /// Membership test in O(δ(a)) by scanning a's adjacency list.
    pub fn has_edge(&self, a: NodeId, b: NodeId) -> bool {
        self.out_adj[a.index()].contains(&b)
    }

    /// Per-node (out, in) degree counts; identical vectors when undirected.
    pub fn degree_sequences(&self) -> (Vec<usize>, Vec<usize>) {
        let out: Vec<usize> = self.out_adj.iter().map(Vec::len).collect();
        let inn = if self.directed {
            self.in_adj.iter().map(Vec::len).collect()
        } else {
            out.clone()
        };
        (out, inn)
    }

    pub fn colors(&self) -> Option<&[NodeColor]> {
        self.colors.as_deref()
    }

    pub fn set_colors(&mut self, colors: Vec<NodeColor>) -> Result<(), GraphError> {
        if colors.len() != self.n_nodes {
            return Err(GraphError::ColorLengthMismatch {
                got: colors.len(),
                expected: self.n_nodes,
            });
        }
        self.colors = Some(colors);
        Ok(())
    }

    /// Uniformly random k-subset of edge-array indices, expected O(k) for k ≪ M.
    ///
    /// Rejection-samples distinct indices; falls back to a partial shuffle when
    /// k > M/2, where rejection would degenerate.
    pub fn random_edge_indices<R: Rng>(
        &self,
        k: usize,
        rng: &mut R,
    ) -> Result<Vec<usize>, GraphError> {
        let mut out = Vec::with_capacity(k);
        self.random_edge_indices_into(k, rng, &mut out)?;
        Ok(out)
    }

    pub(crate) fn random_edge_indices_into<R: Rng>(
        &self,
        k: usize,
        rng: &mut R,
        out: &mut Vec<usize>,
    ) -> Result<(), GraphError> {
        let m = self.edges.len();
        if k < 2 {
            return Err(GraphError::KTooSmall(k));
        }
        if k > m {
            return Err(GraphError::KTooLarge { k, m });
        }
        out.clear();
        if k > m / 2 {
            // partial Fisher-Yates over the full index range
            let mut all: Vec<usize> = (0..m).collect();
            for i in 0..k {
                let j = rng.random_range(i..m);
                all.swap(i, j);
                out.push(all[i]);
            }
        } else {
            while out.len() < k {
                let idx = rng.random_range(0..m);
                if !out.contains(&idx) {
                    out.push(idx);
                }
            }
        }
        Ok(())
    }

    /// Replaces the targets of the given edge slots, keeping their stored
    /// sources. The caller must already have validated that the result is a
    /// simple graph; degrees are preserved because targets are a permutation.
    pub fn apply_switch(&mut self, indices: &[usize], new_targets: &[NodeId]) {
        debug_assert_eq!(indices.len(), new_targets.len());
        let pairs: Vec<(NodeId, NodeId)> = indices
            .iter()
            .zip(new_targets)
            .map(|(&idx, &t)| (self.edges[idx].source, t))
            .collect();
        self.replace_edges(indices, &pairs);
    }

    /// Replaces edge slots with new endpoint pairs (canonicalized when
    /// undirected). Used by the switch engine, which may orient an undirected
    /// edge either way before permuting targets.
    pub(crate) fn replace_edges(&mut self, indices: &[usize], pairs: &[(NodeId, NodeId)]) {
        for &idx in indices {
            let old = self.edges[idx];
            self.remove_adjacency(old);
        }
        for (&idx, &(s, t)) in indices.iter().zip(pairs) {
            let e = Edge::new(self.directed, s, t);
            self.edges[idx] = e;
            self.insert_adjacency(e);
        }
    }

    /// Sorted edge list; canonical identity of the labeled graph.
    pub fn canonical_edges(&self) -> Vec<(u32, u32)> {
        let mut v: Vec<(u32, u32)> = self.edges.iter().map(|e| e.as_pair()).collect();
        v.sort_unstable();
        v
    }

    /// Rebuilds adjacency from the edge array and compares with the stored
    /// lists. Used by tests to certify the two structures never drift.
    pub fn adjacency_consistent(&self) -> bool {
        let mut out = vec![Vec::new(); self.n_nodes];
        let mut inn = vec![Vec::new(); if self.directed { self.n_nodes } else { 0 }];
        for e in &self.edges {
            out[e.source.index()].push(e.target);
            if self.directed {
                inn[e.target.index()].push(e.source);
            } else {
                out[e.target.index()].push(e.source);
            }
        }
        let sorted = |lists: &[Vec<NodeId>]| -> Vec<Vec<NodeId>> {
            lists
                .iter()
                .map(|l| {
                    let mut l = l.clone();
                    l.sort_unstable();
                    l
                })
                .collect()
        };
        sorted(&out) == sorted(&self.out_adj) && sorted(&inn) == sorted(&self.in_adj)
    }
}

fn remove_value(list: &mut Vec<NodeId>, value: NodeId) {
    let pos = list
        .iter()
        .position(|&x| x == value)
        .expect("adjacency entry missing for stored edge");
    list.swap_remove(pos);
}

/// A graph read from an edge-list file, with the dense-relabeling map kept so
/// auxiliary files (colors) can be joined on the original labels.
#[derive(Clone, Debug)]
pub struct LoadedGraph {
    pub graph: Graph,
    /// Original label of each dense node id.
    pub labels: Vec<u64>,
    pub label_index: HashMap<u64, usize>,
}

/// Parses edge-list text: one "u v" pair per line, `#` starts a comment,
/// whitespace-separated. Arbitrary non-negative integer labels are relabeled
/// densely in order of first appearance.
pub fn parse_edge_list(text: &str, directed: bool) -> Result<LoadedGraph, GraphError> {
    let mut labels: Vec<u64> = Vec::new();
    let mut label_index: HashMap<u64, usize> = HashMap::new();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut it = line.split_whitespace();
        let parse = |tok: Option<&str>| -> Result<u64, GraphError> {
            tok.ok_or_else(|| GraphError::Parse {
                line: lineno + 1,
                msg: "expected two integers".into(),
            })?
            .parse::<u64>()
            .map_err(|e| GraphError::Parse {
                line: lineno + 1,
                msg: e.to_string(),
            })
        };
        let u = parse(it.next())?;
        let v = parse(it.next())?;
        if it.next().is_some() {
            return Err(GraphError::Parse {
                line: lineno + 1,
                msg: "trailing tokens after edge pair".into(),
            });
        }
        let mut dense = |label: u64| -> usize {
            *label_index.entry(label).or_insert_with(|| {
                labels.push(label);
                labels.len() - 1
            })
        };
        let du = dense(u);
        let dv = dense(v);
        pairs.push((du, dv));
    }
    let n = labels.len();
    let graph = Graph::from_edge_list(&pairs, directed, Some(n))?;
    Ok(LoadedGraph { graph, labels, label_index })
}

pub fn read_edge_list(path: &Path, directed: bool) -> Result<LoadedGraph, GraphError> {
    let text = std::fs::read_to_string(path).map_err(|e| GraphError::Io(e.to_string()))?;
    parse_edge_list(&text, directed)
}

/// Parses a color file: lines "u C" with C in {R, G, B}, `#` comments.
/// Returns (original label, color) pairs.
pub fn parse_color_list(text: &str) -> Result<Vec<(u64, NodeColor)>, GraphError> {
    let mut out = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut it = line.split_whitespace();
        let err = |msg: &str| GraphError::Parse {
            line: lineno + 1,
            msg: msg.into(),
        };
        let u: u64 = it
            .next()
            .ok_or_else(|| err("expected node and color"))?
            .parse()
            .map_err(|_| err("bad node label"))?;
        let ctok = it.next().ok_or_else(|| err("missing color"))?;
        let color = ctok
            .chars()
            .next()
            .and_then(NodeColor::from_char)
            .filter(|_| ctok.len() == 1)
            .ok_or_else(|| err("color must be one of R, G, B"))?;
        out.push((u, color));
    }
    Ok(out)
}

/// Attaches colors from a color file to a loaded graph, joining on labels.
pub fn apply_colors(loaded: &mut LoadedGraph, text: &str) -> Result<(), GraphError> {
    let list = parse_color_list(text)?;
    let n = loaded.graph.n_nodes();
    let mut colors: Vec<Option<NodeColor>> = vec![None; n];
    for (label, color) in list {
        if let Some(&idx) = loaded.label_index.get(&label) {
            colors[idx] = Some(color);
        }
    }
    let full: Option<Vec<NodeColor>> = colors.into_iter().collect();
    match full {
        Some(v) => loaded.graph.set_colors(v),
        None => Err(GraphError::Parse {
            line: 0,
            msg: "color file does not cover every graph node".into(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::collections::HashSet;

    fn cycle3() -> Graph {
        Graph::from_edge_list(&[(0, 1), (1, 2), (2, 0)], true, None).unwrap()
    }

    #[test]
    fn three_cycle_construction() {
        let g = cycle3();
        assert_eq!(g.n_nodes(), 3);
        assert_eq!(g.edge_count(), 3);
        let (out, inn) = g.degree_sequences();
        assert_eq!(out, vec![1, 1, 1]);
        assert_eq!(inn, vec![1, 1, 1]);
    }

    #[test]
    fn self_loop_rejected() {
        let err = Graph::from_edge_list(&[(0, 0)], true, None).unwrap_err();
        assert_eq!(err, GraphError::SelfLoop(0));
    }

    #[test]
    fn duplicate_rejected_after_canonicalization() {
        let err = Graph::from_edge_list(&[(0, 1), (1, 0)], false, None).unwrap_err();
        assert_eq!(err, GraphError::DuplicateEdge(1, 0));
        // directed graph: opposite arcs are distinct
        assert!(Graph::from_edge_list(&[(0, 1), (1, 0)], true, None).is_ok());
    }

    #[test]
    fn node_out_of_range() {
        let err = Graph::from_edge_list(&[(0, 5)], true, Some(3)).unwrap_err();
        assert_eq!(err, GraphError::NodeOutOfRange { node: 5, n_nodes: 3 });
    }

    #[test]
    fn bipartite_toy_shape() {
        let g = crate::gen::c0_toy_graph();
        assert_eq!(g.edge_count(), 8);
        let (out, inn) = g.degree_sequences();
        assert_eq!(out, vec![3, 2, 1, 1, 1, 0, 0, 0, 0]);
        assert_eq!(inn, vec![0, 0, 0, 0, 0, 3, 2, 2, 1]);
    }

    #[test]
    fn empty_graph_degrees() {
        let g = Graph::from_edge_list(&[], true, Some(3)).unwrap();
        assert_eq!(g.degree_sequences(), (vec![0, 0, 0], vec![0, 0, 0]));
    }

    #[test]
    fn has_edge_directed() {
        let g = cycle3();
        assert!(g.has_edge(NodeId::new(0), NodeId::new(1)));
        assert!(!g.has_edge(NodeId::new(1), NodeId::new(0)));
    }

    #[test]
    fn has_edge_after_switch() {
        let mut g = Graph::from_edge_list(&[(0, 1), (3, 2)], true, None).unwrap();
        g.apply_switch(&[0], &[NodeId::new(2)]);
        assert!(!g.has_edge(NodeId::new(0), NodeId::new(1)));
        assert!(g.has_edge(NodeId::new(0), NodeId::new(2)));
        assert!(g.adjacency_consistent());
    }

    #[test]
    fn apply_switch_pairwise_swap() {
        let mut g = Graph::from_edge_list(&[(1, 2), (3, 4)], true, None).unwrap();
        g.apply_switch(&[0, 1], &[NodeId::new(4), NodeId::new(2)]);
        assert_eq!(g.canonical_edges(), vec![(1, 4), (3, 2)]);
    }

    #[test]
    fn apply_switch_identity_is_noop() {
        let g0 = cycle3();
        let mut g = g0.clone();
        let targets: Vec<NodeId> = g.edges().iter().map(|e| e.target()).collect();
        g.apply_switch(&[0, 1, 2], &targets);
        assert_eq!(g, g0);
    }

    /// Enumerate all 3! target permutations of the directed 3-cycle: exactly
    /// two yield simple graphs (identity and one rotation), and the valid
    /// rotation is the reversed cycle.
    #[test]
    fn three_cycle_permutation_census() {
        let g0 = cycle3();
        let targets: Vec<NodeId> = g0.edges().iter().map(|e| e.target()).collect();
        let mut simple = 0;
        let mut reversed = 0;
        for perm in [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
            let new_targets: Vec<NodeId> = perm.iter().map(|&i| targets[i]).collect();
            // simplicity via a set-based check on the would-be edge list
            let sources = [0u32, 1, 2];
            let mut seen = HashSet::new();
            let ok = sources.iter().zip(&new_targets).all(|(&s, &t)| {
                s != t.index() as u32 && seen.insert((s, t.index() as u32))
            });
            if !ok {
                continue;
            }
            simple += 1;
            let mut g = g0.clone();
            g.apply_switch(&[0, 1, 2], &new_targets);
            if g.canonical_edges() == vec![(0, 2), (1, 0), (2, 1)] {
                reversed += 1;
            }
        }
        assert_eq!(simple, 2);
        assert_eq!(reversed, 1);
    }

    #[test]
    fn k_subset_bounds() {
        let g = cycle3();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert_eq!(g.random_edge_indices(0, &mut rng).unwrap_err(), GraphError::KTooSmall(0));
        assert_eq!(g.random_edge_indices(1, &mut rng).unwrap_err(), GraphError::KTooSmall(1));
        assert_eq!(
            g.random_edge_indices(4, &mut rng).unwrap_err(),
            GraphError::KTooLarge { k: 4, m: 3 }
        );
        let full = g.random_edge_indices(3, &mut rng).unwrap();
        let set: HashSet<usize> = full.into_iter().collect();
        assert_eq!(set, HashSet::from([0, 1, 2]));
    }

    #[test]
    fn k_subset_uniform_over_pairs() {
        let g = cycle3();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut counts = [0u64; 3]; // pairs {0,1},{0,2},{1,2}
        let n = 30_000;
        for _ in 0..n {
            let mut idx = g.random_edge_indices(2, &mut rng).unwrap();
            idx.sort_unstable();
            let slot = match (idx[0], idx[1]) {
                (0, 1) => 0,
                (0, 2) => 1,
                (1, 2) => 2,
                other => panic!("bad pair {other:?}"),
            };
            counts[slot] += 1;
        }
        // chi-square against uniform, df = 2; 16.27 is the 0.0003 tail
        let expected = n as f64 / 3.0;
        let chi2: f64 = counts.iter().map(|&c| (c as f64 - expected).powi(2) / expected).sum();
        assert!(chi2 < 16.27, "chi2 = {chi2}, counts = {counts:?}");
    }

    #[test]
    fn parse_edge_list_with_comments_and_labels() {
        let text = "# a comment\n10 20\n20 30 # trailing\n\n10 30\n";
        let loaded = parse_edge_list(text, false).unwrap();
        assert_eq!(loaded.graph.n_nodes(), 3);
        assert_eq!(loaded.graph.edge_count(), 3);
        assert_eq!(loaded.labels, vec![10, 20, 30]);
    }

    #[test]
    fn parse_rejects_undirected_duplicate() {
        let err = parse_edge_list("0 1\n1 0\n", false).unwrap_err();
        assert!(matches!(err, GraphError::DuplicateEdge(..)));
    }

    #[test]
    fn color_file_roundtrip() {
        let mut loaded = parse_edge_list("0 1\n1 2\n2 0\n", true).unwrap();
        apply_colors(&mut loaded, "0 R\n1 G\n2 B\n").unwrap();
        let colors = loaded.graph.colors().unwrap();
        assert_eq!(colors[0], NodeColor::Red);
        assert_eq!(colors[2], NodeColor::Blue);
        let mut partial = parse_edge_list("0 1\n1 2\n2 0\n", true).unwrap();
        assert!(apply_colors(&mut partial, "0 R\n").is_err());
    }

    mod props {
        use super::*;
        use crate::constraint::NoConstraint;
        use crate::switch;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(24))]

            /// After any random switch sequence, adjacency rebuilt from the
            /// edge array matches the stored lists and degrees are unchanged.
            #[test]
            fn switch_sequences_keep_structures_in_sync(
                seed in 0u64..1_000_000,
                directed in proptest::bool::ANY,
                n in 8usize..20,
            ) {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let m = n + n / 2;
                let g0 = if directed {
                    crate::gen::random_directed(n, m, &mut rng)
                } else {
                    crate::gen::random_undirected(n, m.min(n * (n - 1) / 2), &mut rng)
                };
                let degrees = g0.degree_sequences();
                let mut g = g0;
                for _ in 0..400 {
                    let k = 2 + (rng.random_range(0..3usize));
                    let p = switch::propose(&g, k, &mut rng).unwrap();
                    if switch::validate(&g, &p, &NoConstraint).is_accepted() {
                        let pairs: Vec<(NodeId, NodeId)> = p
                            .sources
                            .iter()
                            .zip(&p.new_targets)
                            .map(|(&s, &t)| (s, t))
                            .collect();
                        g.replace_edges(&p.edge_indices, &pairs);
                    }
                }
                prop_assert!(g.adjacency_consistent());
                prop_assert_eq!(g.degree_sequences(), degrees);
            }

            /// has_edge agrees with a set-based reference on all node pairs.
            #[test]
            fn has_edge_matches_reference(
                seed in 0u64..1_000_000,
                directed in proptest::bool::ANY,
                n in 2usize..100,
            ) {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let max_m = if directed { n * (n - 1) } else { n * (n - 1) / 2 };
                let m = (2 * n).min(max_m);
                let g = if directed {
                    crate::gen::random_directed(n, m, &mut rng)
                } else {
                    crate::gen::random_undirected(n, m, &mut rng)
                };
                let reference: HashSet<(u32, u32)> =
                    g.edges().iter().map(|e| e.as_pair()).collect();
                for u in 0..n {
                    for v in 0..n {
                        let key = if directed || u <= v {
                            (u as u32, v as u32)
                        } else {
                            (v as u32, u as u32)
                        };
                        prop_assert_eq!(
                            g.has_edge(NodeId::new(u), NodeId::new(v)),
                            reference.contains(&key),
                            "pair ({}, {})", u, v
                        );
                    }
                }
            }
        }
    }
}
