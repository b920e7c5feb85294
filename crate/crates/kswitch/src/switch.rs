//! The k-switch trial loop with switch-and-hold semantics: propose k edge
//! slots and a target permutation, validate simplicity and the constraint,
//! then commit or hold. A failed trial leaves the graph untouched but still
//! counts as a step, which is what keeps the stationary distribution uniform.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::constraint::{Constraint, EdgeDelta};
use crate::graph::{Edge, Graph, GraphError, NodeId};
use crate::observable::{Observable, ObservableTrace};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum WalkError {
    #[error("starter graph violates the constraint")]
    StarterViolatesConstraint,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Why a trial was rejected.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RejectReason {
    SelfLoop,
    MultiEdge,
    ConstraintViolated,
}

/// Outcome of validating one proposal.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TrialOutcome {
    Accepted,
    Rejected(RejectReason),
}

impl TrialOutcome {
    pub fn is_accepted(&self) -> bool {
        matches!(self, TrialOutcome::Accepted)
    }

    pub fn reject_reason(&self) -> Option<RejectReason> {
        match self {
            TrialOutcome::Accepted => None,
            TrialOutcome::Rejected(r) => Some(*r),
        }
    }
}

/// One proposed k-switch: k distinct edge slots, an orientation of each edge
/// (only meaningful for undirected graphs), and a permutation σ of the
/// targets. The new target of slot i is the old target of slot σ(i).
#[derive(Clone, Debug)]
pub struct SwitchProposal {
    pub edge_indices: Vec<usize>,
    /// σ as a mapping: `new_targets[i] = old_targets[permutation[i]]`.
    pub permutation: Vec<usize>,
    /// Oriented tail of each selected edge (the endpoint kept fixed).
    pub sources: Vec<NodeId>,
    pub old_targets: Vec<NodeId>,
    pub new_targets: Vec<NodeId>,
}

impl SwitchProposal {
    pub fn k(&self) -> usize {
        self.edge_indices.len()
    }
}

/// Walk parameters. `observation_interval = 0` means the default of
/// `n_trials / 1000`, floored at 1.
#[derive(Clone, Copy, Debug)]
pub struct WalkConfig {
    pub k: usize,
    pub n_trials: u64,
    pub seed: u64,
    pub observation_interval: u64,
}

impl WalkConfig {
    pub fn effective_interval(&self) -> u64 {
        if self.observation_interval > 0 {
            self.observation_interval
        } else {
            (self.n_trials / 1000).max(1)
        }
    }
}

/// What a finished walk reports: trial and success counts, the observable
/// trace and the final graph.
#[derive(Clone, Debug)]
pub struct WalkReport {
    pub trials: u64,
    /// Trials that were accepted and actually changed the edge set.
    pub successes: u64,
    pub trace: ObservableTrace,
    pub final_graph: Graph,
}

/// Draws a uniformly random proposal: a uniform k-subset of edge slots, a
/// uniform orientation per edge when undirected, and a uniform permutation σ
/// over all k! (identity included).
pub fn propose<R: Rng>(g: &Graph, k: usize, rng: &mut R) -> Result<SwitchProposal, GraphError> {
    let mut p = SwitchProposal {
        edge_indices: Vec::with_capacity(k),
        permutation: Vec::with_capacity(k),
        sources: Vec::with_capacity(k),
        old_targets: Vec::with_capacity(k),
        new_targets: Vec::with_capacity(k),
    };
    propose_into(g, k, rng, &mut p)?;
    Ok(p)
}

fn propose_into<R: Rng>(
    g: &Graph,
    k: usize,
    rng: &mut R,
    p: &mut SwitchProposal,
) -> Result<(), GraphError> {
    g.random_edge_indices_into(k, rng, &mut p.edge_indices)?;
    p.sources.clear();
    p.old_targets.clear();
    for &idx in &p.edge_indices {
        let e = g.edge(idx);
        let (s, t) = if !g.is_directed() && rng.random::<bool>() {
            (e.target(), e.source())
        } else {
            (e.source(), e.target())
        };
        p.sources.push(s);
        p.old_targets.push(t);
    }
    // uniform σ via Fisher-Yates
    p.permutation.clear();
    p.permutation.extend(0..k);
    for i in (1..k).rev() {
        let j = rng.random_range(0..=i);
        p.permutation.swap(i, j);
    }
    p.new_targets.clear();
    for i in 0..k {
        p.new_targets.push(p.old_targets[p.permutation[i]]);
    }
    Ok(())
}

/// Runs the trial tests on a proposal against the pre-switch graph:
/// no self-loops (aᵢ ≠ b_σ(ᵢ)), no multiple edges (b_σ(ᵢ) must avoid
/// Wᵢ = neighbors(aᵢ) \ {bᵢ} on the pre-switch graph, and the new edges must
/// be pairwise distinct), then the constraint. Rejection is an outcome, not an
/// error; the graph is never modified here.
pub fn validate(g: &Graph, p: &SwitchProposal, c: &dyn Constraint) -> TrialOutcome {
    let mut delta = EdgeDelta::default();
    validate_with(g, &p.sources, &p.old_targets, &p.new_targets, c, &mut delta)
}

/// Runs only the simplicity tests of a proposal and returns the edge delta it
/// would apply (unchanged slots omitted). Useful for exercising constraint
/// checks against exactly the deltas the engine produces.
pub fn simplicity_delta(g: &Graph, p: &SwitchProposal) -> Result<EdgeDelta, RejectReason> {
    let mut delta = EdgeDelta::default();
    match simplicity_into(g, &p.sources, &p.old_targets, &p.new_targets, &mut delta) {
        None => Ok(delta),
        Some(reason) => Err(reason),
    }
}

fn simplicity_into(
    g: &Graph,
    sources: &[NodeId],
    old_targets: &[NodeId],
    new_targets: &[NodeId],
    delta: &mut EdgeDelta,
) -> Option<RejectReason> {
    let k = sources.len();
    for i in 0..k {
        if sources[i] == new_targets[i] {
            return Some(RejectReason::SelfLoop);
        }
    }
    // Wᵢ test against the pre-switch edge set
    for i in 0..k {
        if new_targets[i] != old_targets[i] && g.has_edge(sources[i], new_targets[i]) {
            return Some(RejectReason::MultiEdge);
        }
    }
    // the new edges must also be pairwise distinct
    let directed = g.is_directed();
    delta.clear();
    for i in 0..k {
        if new_targets[i] == old_targets[i] {
            continue;
        }
        let new_edge = Edge::new(directed, sources[i], new_targets[i]);
        if delta.added.contains(&new_edge) {
            return Some(RejectReason::MultiEdge);
        }
        delta.removed.push(Edge::new(directed, sources[i], old_targets[i]));
        delta.added.push(new_edge);
    }
    None
}

pub(crate) fn validate_with(
    g: &Graph,
    sources: &[NodeId],
    old_targets: &[NodeId],
    new_targets: &[NodeId],
    c: &dyn Constraint,
    delta: &mut EdgeDelta,
) -> TrialOutcome {
    if let Some(reason) = simplicity_into(g, sources, old_targets, new_targets, delta) {
        return TrialOutcome::Rejected(reason);
    }
    if delta.is_empty() {
        // nothing changes; the current graph already satisfies the constraint
        return TrialOutcome::Accepted;
    }
    if c.check_incremental(g, delta) {
        TrialOutcome::Accepted
    } else {
        TrialOutcome::Rejected(RejectReason::ConstraintViolated)
    }
}

/// Runs a switch-and-hold walk of exactly `cfg.n_trials` proposals from a
/// starter that must satisfy the constraint. Observables are measured on the
/// current (possibly held) graph every `observation_interval` trials, plus an
/// initial sample at trial 0. Deterministic for a fixed seed.
pub fn run_walk(
    g0: &Graph,
    c: &dyn Constraint,
    cfg: &WalkConfig,
    observables: &[Observable],
) -> Result<WalkReport, WalkError> {
    if !c.check_full(g0) {
        return Err(WalkError::StarterViolatesConstraint);
    }
    // fail fast on a bad k before entering the loop
    if cfg.k < 2 {
        return Err(WalkError::Graph(GraphError::KTooSmall(cfg.k)));
    }
    if cfg.k > g0.edge_count() {
        return Err(WalkError::Graph(GraphError::KTooLarge {
            k: cfg.k,
            m: g0.edge_count(),
        }));
    }

    let mut g = g0.clone();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let interval = cfg.effective_interval();
    let mut trace = ObservableTrace::for_observables(observables);
    let measure = |g: &Graph| -> Vec<f64> {
        observables.iter().flat_map(|o| o.measure(g)).collect()
    };
    if !observables.is_empty() {
        trace.push(0, measure(&g));
    }

    let k = cfg.k;
    let mut proposal = SwitchProposal {
        edge_indices: Vec::with_capacity(k),
        permutation: Vec::with_capacity(k),
        sources: Vec::with_capacity(k),
        old_targets: Vec::with_capacity(k),
        new_targets: Vec::with_capacity(k),
    };
    let mut delta = EdgeDelta::default();
    let mut pairs: Vec<(NodeId, NodeId)> = Vec::with_capacity(k);
    let mut successes = 0u64;

    for trial in 1..=cfg.n_trials {
        propose_into(&g, k, &mut rng, &mut proposal).expect("k validated above");
        let outcome = validate_with(
            &g,
            &proposal.sources,
            &proposal.old_targets,
            &proposal.new_targets,
            c,
            &mut delta,
        );
        if outcome.is_accepted() && !delta.is_empty() {
            pairs.clear();
            pairs.extend(
                proposal
                    .sources
                    .iter()
                    .zip(&proposal.new_targets)
                    .map(|(&s, &t)| (s, t)),
            );
            g.replace_edges(&proposal.edge_indices, &pairs);
            successes += 1;
        }
        if !observables.is_empty() && trial % interval == 0 {
            trace.push(trial, measure(&g));
        }
    }

    Ok(WalkReport { trials: cfg.n_trials, successes, trace, final_graph: g })
}
