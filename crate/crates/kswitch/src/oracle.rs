//! Exhaustive enumeration of the constrained graph set and explicit Markov
//! graphs for tiny instances. This is what makes the sampler's claims
//! checkable: constant row sums and symmetric transition counts certify
//! uniformity, component counts certify (non-)exhaustivity, and a chi-square
//! test over walk samples ties the actual engine back to the theory.

use std::collections::HashMap;

use itertools::Itertools;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use statrs::distribution::{ChiSquared, ContinuousCDF};
use thiserror::Error;

use crate::constraint::Constraint;
use crate::graph::{Edge, Graph, NodeColor, NodeId};
use crate::switch::{self, WalkError};

const SEARCH_STEP_LIMIT: u64 = 10_000_000;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum OracleError {
    #[error("instance too large for exhaustive enumeration (search exceeded {0} steps)")]
    InstanceTooLarge(u64),
    #[error("node {node} has transition row sum {got}, expected {expected}")]
    RegularityViolation { node: usize, got: u64, expected: u64 },
    #[error("transition counts asymmetric between {i} and {j}: {forward} vs {backward}")]
    AsymmetryDetected { i: usize, j: usize, forward: u64, backward: u64 },
    #[error("walk visited a graph outside the enumerated set")]
    SampleNotInSet,
    #[error("need at least {need} samples, got {got}")]
    InsufficientSamples { got: usize, need: usize },
    #[error(transparent)]
    Walk(#[from] WalkError),
}

/// The fundamental-constraint parameters: node count, directedness and
/// per-node degree sequences (plus colors, which some constraints require).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeTemplate {
    pub directed: bool,
    /// Out-degrees (directed) or plain degrees (undirected).
    pub out_degrees: Vec<usize>,
    /// In-degrees; unused for undirected templates.
    pub in_degrees: Vec<usize>,
    pub colors: Option<Vec<NodeColor>>,
}

impl DegreeTemplate {
    pub fn from_graph(g: &Graph) -> Self {
        let (out, inn) = g.degree_sequences();
        DegreeTemplate {
            directed: g.is_directed(),
            out_degrees: out,
            in_degrees: if g.is_directed() { inn } else { Vec::new() },
            colors: g.colors().map(<[NodeColor]>::to_vec),
        }
    }

    pub fn n_nodes(&self) -> usize {
        self.out_degrees.len()
    }

    pub fn edge_count(&self) -> usize {
        if self.directed {
            self.out_degrees.iter().sum()
        } else {
            self.out_degrees.iter().sum::<usize>() / 2
        }
    }
}

/// Canonical encoding of a labeled graph: its sorted edge list.
pub type CanonicalEdges = Vec<(u32, u32)>;

/// Every graph satisfying a degree template plus a constraint, found by
/// exhaustive backtracking. Members are labeled graphs; no isomorphism
/// quotient is taken.
#[derive(Clone, Debug)]
pub struct GraphSet {
    template: DegreeTemplate,
    members: Vec<CanonicalEdges>,
}

impl GraphSet {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[CanonicalEdges] {
        &self.members
    }

    pub fn template(&self) -> &DegreeTemplate {
        &self.template
    }

    pub fn index_of(&self, canonical: &CanonicalEdges) -> Option<usize> {
        self.members.binary_search(canonical).ok()
    }

    /// Reconstructs member `i` as a full graph (colors attached).
    pub fn graph(&self, i: usize) -> Graph {
        let pairs: Vec<(usize, usize)> = self.members[i]
            .iter()
            .map(|&(u, v)| (u as usize, v as usize))
            .collect();
        let mut g = Graph::from_edge_list(&pairs, self.template.directed, Some(self.template.n_nodes()))
            .expect("enumerated member must be a valid simple graph");
        if let Some(colors) = &self.template.colors {
            g.set_colors(colors.clone()).expect("template colors match node count");
        }
        g
    }
}

/// Enumerates all labeled graphs with the template's degree sequences that
/// satisfy the constraint. Backtracks over target assignments; errors out if
/// the search exceeds a fixed step budget instead of running away.
pub fn enumerate_graph_set(
    template: &DegreeTemplate,
    constraint: &dyn Constraint,
) -> Result<GraphSet, OracleError> {
    let mut members = if template.directed {
        enumerate_directed(template)?
    } else {
        enumerate_undirected(template)?
    };
    members.sort_unstable();
    debug_assert!(members.windows(2).all(|w| w[0] != w[1]), "duplicate members");
    let mut set = GraphSet { template: template.clone(), members };
    // constraint filter on reconstructed graphs
    let keep: Vec<bool> = (0..set.len())
        .map(|i| constraint.check_full(&set.graph(i)))
        .collect();
    set.members = set
        .members
        .into_iter()
        .zip(keep)
        .filter_map(|(m, k)| k.then_some(m))
        .collect();
    Ok(set)
}

fn enumerate_directed(template: &DegreeTemplate) -> Result<Vec<CanonicalEdges>, OracleError> {
    let n = template.n_nodes();
    if template.out_degrees.iter().sum::<usize>() != template.in_degrees.iter().sum::<usize>() {
        return Ok(Vec::new());
    }
    if template.out_degrees.iter().chain(&template.in_degrees).any(|&d| d >= n) {
        return Ok(Vec::new());
    }
    let mut capacity = template.in_degrees.clone();
    let mut edges: Vec<(u32, u32)> = Vec::with_capacity(template.edge_count());
    let mut out = Vec::new();
    let mut steps = 0u64;
    fn rec(
        u: usize,
        n: usize,
        out_degrees: &[usize],
        capacity: &mut Vec<usize>,
        edges: &mut Vec<(u32, u32)>,
        found: &mut Vec<CanonicalEdges>,
        steps: &mut u64,
    ) -> Result<(), OracleError> {
        *steps += 1;
        if *steps > SEARCH_STEP_LIMIT {
            return Err(OracleError::InstanceTooLarge(SEARCH_STEP_LIMIT));
        }
        if u == n {
            found.push(edges.clone());
            return Ok(());
        }
        let d = out_degrees[u];
        let candidates: Vec<usize> =
            (0..n).filter(|&v| v != u && capacity[v] > 0).collect();
        if candidates.len() < d {
            return Ok(());
        }
        for combo in candidates.iter().combinations(d) {
            for &&v in &combo {
                capacity[v] -= 1;
                edges.push((u as u32, v as u32));
            }
            rec(u + 1, n, out_degrees, capacity, edges, found, steps)?;
            for &&v in &combo {
                capacity[v] += 1;
                edges.pop();
            }
        }
        Ok(())
    }
    rec(0, n, &template.out_degrees, &mut capacity, &mut edges, &mut out, &mut steps)?;
    Ok(out)
}

fn enumerate_undirected(template: &DegreeTemplate) -> Result<Vec<CanonicalEdges>, OracleError> {
    let n = template.n_nodes();
    if template.out_degrees.iter().sum::<usize>() % 2 != 0 {
        return Ok(Vec::new());
    }
    if template.out_degrees.iter().any(|&d| d >= n) {
        return Ok(Vec::new());
    }
    let mut residual = template.out_degrees.clone();
    let mut adjacency = vec![Vec::<usize>::new(); n];
    let mut edges: Vec<(u32, u32)> = Vec::new();
    let mut out = Vec::new();
    let mut steps = 0u64;
    fn rec(
        residual: &mut Vec<usize>,
        adjacency: &mut Vec<Vec<usize>>,
        edges: &mut Vec<(u32, u32)>,
        found: &mut Vec<CanonicalEdges>,
        steps: &mut u64,
    ) -> Result<(), OracleError> {
        *steps += 1;
        if *steps > SEARCH_STEP_LIMIT {
            return Err(OracleError::InstanceTooLarge(SEARCH_STEP_LIMIT));
        }
        let u = match residual.iter().position(|&r| r > 0) {
            Some(u) => u,
            None => {
                found.push(edges.clone());
                return Ok(());
            }
        };
        let d = residual[u];
        // all nodes below u are saturated, so partners are strictly above u
        let candidates: Vec<usize> = (u + 1..residual.len())
            .filter(|&v| residual[v] > 0 && !adjacency[u].contains(&v))
            .collect();
        if candidates.len() < d {
            return Ok(());
        }
        residual[u] = 0;
        for combo in candidates.iter().combinations(d) {
            for &&v in &combo {
                residual[v] -= 1;
                adjacency[u].push(v);
                adjacency[v].push(u);
                edges.push((u as u32, v as u32));
            }
            rec(residual, adjacency, edges, found, steps)?;
            for &&v in &combo {
                residual[v] += 1;
                adjacency[u].pop();
                adjacency[v].pop();
                edges.pop();
            }
        }
        residual[u] = d;
        Ok(())
    }
    rec(&mut residual, &mut adjacency, &mut edges, &mut out, &mut steps)?;
    Ok(out)
}

/// Explicit transition structure of the k-switch chain over a graph set: for
/// every member, every (edge subset, orientation, permutation) trial is run
/// through the engine's validate logic, recording the destination (self-loop
/// on failure or no-op). Row sums are the constant `trial_total`.
#[derive(Clone, Debug)]
pub struct MarkovGraph {
    pub k: usize,
    /// C(M,k)·k! for directed instances, times 2^k when undirected.
    pub trial_total: u64,
    /// `counts[i][j]`: number of trials leading from member i to member j.
    pub counts: Vec<Vec<u64>>,
}

pub fn build_markov_graph(
    set: &GraphSet,
    constraint: &dyn Constraint,
    k: usize,
) -> Result<MarkovGraph, OracleError> {
    let n = set.len();
    let m = set.template.edge_count();
    let directed = set.template.directed;
    let perms: Vec<Vec<usize>> = (0..k).permutations(k).collect();
    let n_orientations: u32 = if directed { 0 } else { k as u32 };
    let trial_total = (binomial(m, k) * factorial(k)) << n_orientations;
    let mut counts = vec![vec![0u64; n]; n];

    let mut sources = vec![NodeId::new(0); k];
    let mut old_targets = vec![NodeId::new(0); k];
    let mut new_targets = vec![NodeId::new(0); k];
    let mut delta = crate::constraint::EdgeDelta::default();

    for i in 0..n {
        let g = set.graph(i);
        for subset in (0..m).combinations(k) {
            for orientation in 0..(1u32 << n_orientations) {
                for (slot, &idx) in subset.iter().enumerate() {
                    let e = g.edge(idx);
                    let flip = !directed && (orientation >> slot) & 1 == 1;
                    let (s, t) = if flip {
                        (e.target(), e.source())
                    } else {
                        (e.source(), e.target())
                    };
                    sources[slot] = s;
                    old_targets[slot] = t;
                }
                for perm in &perms {
                    for slot in 0..k {
                        new_targets[slot] = old_targets[perm[slot]];
                    }
                    let outcome = switch::validate_with(
                        &g,
                        &sources,
                        &old_targets,
                        &new_targets,
                        constraint,
                        &mut delta,
                    );
                    if !outcome.is_accepted() || delta.is_empty() {
                        counts[i][i] += 1;
                        continue;
                    }
                    // patch the member's edge list directly; no graph clone
                    let mut dest: CanonicalEdges = set.members[i].clone();
                    for (slot, &idx) in subset.iter().enumerate() {
                        let e = Edge::new(directed, sources[slot], new_targets[slot]);
                        dest[idx] = e.as_pair();
                    }
                    dest.sort_unstable();
                    let j = set
                        .index_of(&dest)
                        .expect("accepted switch must stay inside the enumerated set");
                    counts[i][j] += 1;
                }
            }
        }
    }
    Ok(MarkovGraph { k, trial_total, counts })
}

fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let mut result = 1u64;
    for i in 0..k {
        result = result * (n - i) as u64 / (i + 1) as u64;
    }
    result
}

fn factorial(k: usize) -> u64 {
    (1..=k as u64).product()
}

impl MarkovGraph {
    pub fn n_nodes(&self) -> usize {
        self.counts.len()
    }

    /// Weakly-connected components ignoring self-loops, as sorted member-index
    /// groups.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.n_nodes();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && self.counts[i][j] > 0 {
                    let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                    parent[ri] = rj;
                }
            }
        }
        let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
        for i in 0..n {
            let r = find(&mut parent, i);
            groups.entry(r).or_default().push(i);
        }
        let mut comps: Vec<Vec<usize>> = groups.into_values().collect();
        for c in &mut comps {
            c.sort_unstable();
        }
        comps.sort();
        comps
    }

    /// Component of one member, sorted.
    pub fn component_of(&self, start: usize) -> Vec<usize> {
        self.components()
            .into_iter()
            .find(|c| c.contains(&start))
            .expect("start index within bounds")
    }

    /// DOT export: nodes carry their self-loop trial counts, arcs their
    /// multiplicities; self-loop arcs are omitted for readability.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph markov {\n");
        for (i, row) in self.counts.iter().enumerate() {
            out.push_str(&format!("  g{} [label=\"G{}\", selfloops={}];\n", i, i, row[i]));
        }
        for (i, row) in self.counts.iter().enumerate() {
            for (j, &c) in row.iter().enumerate() {
                if i != j && c > 0 {
                    out.push_str(&format!("  g{i} -> g{j} [count={c}];\n"));
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

pub fn component_count(markov: &MarkovGraph) -> usize {
    markov.components().len()
}

/// What the uniformity certification verifies and reports.
#[derive(Clone, Debug, PartialEq)]
pub struct StationarityReport {
    pub n_members: usize,
    pub trial_total: u64,
    pub component_count: usize,
    /// Largest |column sum of the normalized transition matrix − 1| over all
    /// members, restricted per component; ≤ 1e-9 for a uniform stationary
    /// vector.
    pub max_stationarity_residual: f64,
}

/// Certifies the three uniformity properties on an explicit Markov graph:
/// constant out-degree (row sums all equal `trial_total`), symmetric
/// transition counts (reversibility), and the uniform vector being stationary
/// on every component within 1e-9.
pub fn verify_uniform_stationarity(markov: &MarkovGraph) -> Result<StationarityReport, OracleError> {
    let n = markov.n_nodes();
    for (i, row) in markov.counts.iter().enumerate() {
        let sum: u64 = row.iter().sum();
        if sum != markov.trial_total {
            return Err(OracleError::RegularityViolation {
                node: i,
                got: sum,
                expected: markov.trial_total,
            });
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if markov.counts[i][j] != markov.counts[j][i] {
                return Err(OracleError::AsymmetryDetected {
                    i,
                    j,
                    forward: markov.counts[i][j],
                    backward: markov.counts[j][i],
                });
            }
        }
    }
    // constant rows + symmetry make the uniform vector stationary per
    // component; compute the numerical residual so callers can assert it
    let comps = markov.components();
    let mut max_residual = 0.0f64;
    for comp in &comps {
        for &j in comp {
            let col_sum: f64 = comp
                .iter()
                .map(|&i| markov.counts[i][j] as f64 / markov.trial_total as f64)
                .sum();
            max_residual = max_residual.max((col_sum - 1.0).abs());
        }
    }
    Ok(StationarityReport {
        n_members: n,
        trial_total: markov.trial_total,
        component_count: comps.len(),
        max_stationarity_residual: max_residual,
    })
}

/// Canonical snapshots of an engine walk, taken every `spacing` trials after
/// a `burn_in` stretch; the raw material for the chi-square uniformity check.
/// Spacing should cover several multiples of the chain's per-trial move
/// probability inverse, or consecutive samples stay correlated.
pub fn walk_occupancy_samples(
    g0: &Graph,
    constraint: &dyn Constraint,
    k: usize,
    n_samples: usize,
    spacing: u64,
    burn_in: u64,
    seed: u64,
) -> Result<Vec<CanonicalEdges>, WalkError> {
    if !constraint.check_full(g0) {
        return Err(WalkError::StarterViolatesConstraint);
    }
    let mut g = g0.clone();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut samples = Vec::with_capacity(n_samples);
    let mut delta = crate::constraint::EdgeDelta::default();
    let mut step = |g: &mut Graph, rng: &mut ChaCha8Rng| -> Result<(), WalkError> {
        let p = switch::propose(g, k, rng)?;
        let outcome = switch::validate_with(
            g,
            &p.sources,
            &p.old_targets,
            &p.new_targets,
            constraint,
            &mut delta,
        );
        if outcome.is_accepted() && !delta.is_empty() {
            let pairs: Vec<(NodeId, NodeId)> = p
                .sources
                .iter()
                .zip(&p.new_targets)
                .map(|(&s, &t)| (s, t))
                .collect();
            g.replace_edges(&p.edge_indices, &pairs);
        }
        Ok(())
    };
    for _ in 0..burn_in {
        step(&mut g, &mut rng)?;
    }
    while samples.len() < n_samples {
        for _ in 0..spacing {
            step(&mut g, &mut rng)?;
        }
        samples.push(g.canonical_edges());
    }
    Ok(samples)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChiSquareReport {
    pub statistic: f64,
    pub degrees_of_freedom: usize,
    pub p_value: f64,
    pub component_size: usize,
    /// Samples falling outside the start graph's component; 0 when the chain
    /// respects its component structure.
    pub outside_support: usize,
}

/// Tests walk-sample frequencies against the uniform distribution over the
/// component of `start` in the Markov graph.
pub fn chi_square_uniformity(
    set: &GraphSet,
    markov: &MarkovGraph,
    start: usize,
    samples: &[CanonicalEdges],
) -> Result<ChiSquareReport, OracleError> {
    let need = 20 * set.len();
    if samples.len() < need {
        return Err(OracleError::InsufficientSamples { got: samples.len(), need });
    }
    let comp = markov.component_of(start);
    let mut counts = vec![0u64; comp.len()];
    let mut outside = 0usize;
    for s in samples {
        let idx = set.index_of(s).ok_or(OracleError::SampleNotInSet)?;
        match comp.binary_search(&idx) {
            Ok(pos) => counts[pos] += 1,
            Err(_) => outside += 1,
        }
    }
    let inside = (samples.len() - outside) as f64;
    let expected = inside / comp.len() as f64;
    let statistic: f64 = counts
        .iter()
        .map(|&c| {
            let d = c as f64 - expected;
            d * d / expected
        })
        .sum();
    let df = comp.len() - 1;
    let p_value = if df == 0 {
        1.0
    } else {
        let dist = ChiSquared::new(df as f64).expect("df > 0");
        1.0 - dist.cdf(statistic)
    };
    Ok(ChiSquareReport {
        statistic,
        degrees_of_freedom: df,
        p_value,
        component_size: comp.len(),
        outside_support: outside,
    })
}
