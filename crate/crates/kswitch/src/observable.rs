//! Target-observable measurement: motif counts, colored-triangle
//! classification, component statistics and trace recording used to monitor
//! asymptotic convergence of a walk.

use std::collections::HashMap;
use std::fmt;
use std::io::Write;
use std::path::Path;

use thiserror::Error;

use crate::constraint::{component_size_multiset, degree_pair_histogram};
use crate::graph::{Graph, NodeColor, NodeId};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ObservableError {
    #[error("graph is not a disjoint union of oriented 3-cycles")]
    NotTrianglePartition,
    #[error("graph has no node colors attached")]
    MissingColorData,
    #[error("observable {name} requires a {required} graph")]
    WrongDirectedness { name: &'static str, required: &'static str },
    #[error("trace has {got} samples, need at least {need}")]
    InsufficientSamples { got: usize, need: usize },
    #[error("io error: {0}")]
    Io(String),
}

/// A graph statistic measured along a walk. Measurement is a pure function of
/// the graph; some observables expand to several trace columns.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Observable {
    DirectedTriangles,
    UndirectedTriangles,
    FourCycles,
    FourCliques,
    FourPaths,
    FourStars,
    ColoredTriangleHistogram,
    ComponentSizes,
    DegreePairHistogram,
}

impl Observable {
    pub const ALL: [Observable; 9] = [
        Observable::DirectedTriangles,
        Observable::UndirectedTriangles,
        Observable::FourCycles,
        Observable::FourCliques,
        Observable::FourPaths,
        Observable::FourStars,
        Observable::ColoredTriangleHistogram,
        Observable::ComponentSizes,
        Observable::DegreePairHistogram,
    ];

    pub fn parse(name: &str) -> Option<Observable> {
        match name {
            "directed-triangles" => Some(Observable::DirectedTriangles),
            "triangles" => Some(Observable::UndirectedTriangles),
            "four-cycles" => Some(Observable::FourCycles),
            "four-cliques" => Some(Observable::FourCliques),
            "four-paths" => Some(Observable::FourPaths),
            "four-stars" => Some(Observable::FourStars),
            "colored-triangles" => Some(Observable::ColoredTriangleHistogram),
            "components" => Some(Observable::ComponentSizes),
            "degree-pairs" => Some(Observable::DegreePairHistogram),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Observable::DirectedTriangles => "directed-triangles",
            Observable::UndirectedTriangles => "triangles",
            Observable::FourCycles => "four-cycles",
            Observable::FourCliques => "four-cliques",
            Observable::FourPaths => "four-paths",
            Observable::FourStars => "four-stars",
            Observable::ColoredTriangleHistogram => "colored-triangles",
            Observable::ComponentSizes => "components",
            Observable::DegreePairHistogram => "degree-pairs",
        }
    }

    /// Trace column names this observable contributes.
    pub fn columns(&self) -> Vec<String> {
        match self {
            Observable::ColoredTriangleHistogram => TRIANGLE_CLASS_LABELS
                .iter()
                .map(|l| l.replace('-', "").to_lowercase())
                .collect(),
            Observable::ComponentSizes => {
                vec!["component_count".into(), "largest_component".into()]
            }
            Observable::DegreePairHistogram => vec!["degree_pair_buckets".into()],
            other => vec![other.name().replace('-', "_")],
        }
    }

    /// Checks the observable applies to this graph (directedness, colors).
    pub fn validate_for(&self, g: &Graph) -> Result<(), ObservableError> {
        let need = |name, required: &'static str, ok: bool| {
            if ok {
                Ok(())
            } else {
                Err(ObservableError::WrongDirectedness { name, required })
            }
        };
        match self {
            Observable::DirectedTriangles => {
                need("directed-triangles", "directed", g.is_directed())
            }
            Observable::UndirectedTriangles => need("triangles", "undirected", !g.is_directed()),
            Observable::FourCycles | Observable::FourCliques | Observable::FourPaths
            | Observable::FourStars => need(self.name(), "undirected", !g.is_directed()),
            Observable::ComponentSizes => need("components", "undirected", !g.is_directed()),
            Observable::DegreePairHistogram => need("degree-pairs", "directed", g.is_directed()),
            Observable::ColoredTriangleHistogram => {
                need("colored-triangles", "directed", g.is_directed())?;
                colored_triangle_histogram(g).map(|_| ())
            }
        }
    }

    /// Measures the observable; one value per column in [`Self::columns`].
    ///
    /// # Panics
    /// Panics when measured on an incompatible graph; pair every walk with
    /// [`Self::validate_for`] up front.
    pub fn measure(&self, g: &Graph) -> Vec<f64> {
        match self {
            Observable::DirectedTriangles => vec![count_directed_triangles(g) as f64],
            Observable::UndirectedTriangles => vec![count_undirected_triangles(g) as f64],
            Observable::FourCycles => vec![count_motifs4(g).cycles as f64],
            Observable::FourCliques => vec![count_motifs4(g).cliques as f64],
            Observable::FourPaths => vec![count_motifs4(g).paths as f64],
            Observable::FourStars => vec![count_motifs4(g).stars as f64],
            Observable::ColoredTriangleHistogram => colored_triangle_histogram(g)
                .expect("colored-triangle observable on incompatible graph")
                .proportions()
                .to_vec(),
            Observable::ComponentSizes => {
                let sizes = component_size_multiset(g);
                vec![sizes.len() as f64, sizes.last().copied().unwrap_or(0) as f64]
            }
            Observable::DegreePairHistogram => {
                vec![degree_pair_histogram(g).len() as f64]
            }
        }
    }
}

impl fmt::Display for Observable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Number of oriented 3-cycles in a directed graph. A node triple whose six
/// arcs are all present contains two of them.
pub fn count_directed_triangles(g: &Graph) -> u64 {
    debug_assert!(g.is_directed());
    let mut total = 0u64;
    for e in g.edges() {
        let (a, b) = (e.source(), e.target());
        // count c with b -> c and c -> a; each cycle counted once per arc
        for &c in g.out_neighbors(b) {
            if c != a && g.has_edge(c, a) {
                total += 1;
            }
        }
    }
    total / 3
}

/// Number of triangles in an undirected graph.
pub fn count_undirected_triangles(g: &Graph) -> u64 {
    debug_assert!(!g.is_directed());
    let mut total = 0u64;
    for e in g.edges() {
        let (u, v) = (e.source(), e.target());
        for &w in g.out_neighbors(u) {
            if w != v && g.out_neighbors(v).contains(&w) {
                total += 1;
            }
        }
    }
    total / 3
}

/// Subgraph (non-induced) counts of the connected 4-node motifs.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct Motif4Counts {
    pub paths: u64,
    pub cycles: u64,
    pub stars: u64,
    pub cliques: u64,
}

/// Counts 4-node paths, cycles, stars and cliques as subgraphs (not induced)
/// of an undirected graph.
pub fn count_motifs4(g: &Graph) -> Motif4Counts {
    debug_assert!(!g.is_directed());
    let n = g.n_nodes();
    let degrees: Vec<usize> = (0..n).map(|u| g.out_neighbors(NodeId::new(u)).len()).collect();

    let triangles = count_undirected_triangles(g);

    // stars: any node with 3 chosen neighbors
    let stars: u64 = degrees.iter().map(|&d| choose3(d)).sum();

    // paths: edge-centered count minus the triangle corrections
    let mut paths: u64 = 0;
    for e in g.edges() {
        let du = degrees[e.source().index()] as u64;
        let dv = degrees[e.target().index()] as u64;
        paths += (du - 1) * (dv - 1);
    }
    paths -= 3 * triangles;

    // cycles: for every unordered node pair, C(common neighbors, 2) counts the
    // pair as a diagonal of a 4-cycle; each cycle has two diagonals
    let mut common: HashMap<(u32, u32), u64> = HashMap::new();
    for v in 0..n {
        let nbrs = g.out_neighbors(NodeId::new(v));
        for i in 0..nbrs.len() {
            for j in (i + 1)..nbrs.len() {
                let (a, b) = (nbrs[i].index() as u32, nbrs[j].index() as u32);
                let key = if a < b { (a, b) } else { (b, a) };
                *common.entry(key).or_insert(0) += 1;
            }
        }
    }
    let cycles: u64 = common.values().map(|&c| c * (c - 1) / 2).sum::<u64>() / 2;

    // cliques: for every edge, count adjacent pairs among common neighbors;
    // each 4-clique is counted once per its 6 edges
    let mut cliques6: u64 = 0;
    for e in g.edges() {
        let (u, v) = (e.source(), e.target());
        let mut shared: Vec<NodeId> = Vec::new();
        for &w in g.out_neighbors(u) {
            if w != v && g.out_neighbors(v).contains(&w) {
                shared.push(w);
            }
        }
        for i in 0..shared.len() {
            for j in (i + 1)..shared.len() {
                if g.has_edge(shared[i], shared[j]) || g.has_edge(shared[j], shared[i]) {
                    cliques6 += 1;
                }
            }
        }
    }
    let cliques = cliques6 / 6;

    Motif4Counts { paths, cycles, stars, cliques }
}

fn choose3(d: usize) -> u64 {
    if d < 3 {
        0
    } else {
        let d = d as u64;
        d * (d - 1) * (d - 2) / 6
    }
}

/// Colored-triangle class labels in table order: three monochromatic, six
/// bichromatic (orientation-insensitive), two trichromatic (orientation
/// distinguishes R-B-G from R-G-B).
pub const TRIANGLE_CLASS_LABELS: [&str; 11] = [
    "R-R-R", "G-G-G", "B-B-B", "R-G-G", "R-B-B", "G-G-B", "G-B-B", "R-R-B", "R-R-G", "R-B-G",
    "R-G-B",
];

/// Counts of each colored-triangle class over the N/3 triangles.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct TriangleHistogram {
    pub counts: [u64; 11],
}

impl TriangleHistogram {
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn proportions(&self) -> [f64; 11] {
        let total = self.total().max(1) as f64;
        let mut out = [0.0; 11];
        for (o, &c) in out.iter_mut().zip(&self.counts) {
            *o = c as f64 / total;
        }
        out
    }

    pub fn count_of(&self, label: &str) -> u64 {
        let idx = TRIANGLE_CLASS_LABELS
            .iter()
            .position(|&l| l == label)
            .expect("unknown triangle class label");
        self.counts[idx]
    }
}

/// Classifies every oriented triangle of a C1-structured graph by its color
/// sequence read along the orientation: trichromatic triangles split into
/// R-G-B and R-B-G; mono- and bichromatic classes ignore orientation.
pub fn colored_triangle_histogram(g: &Graph) -> Result<TriangleHistogram, ObservableError> {
    let colors = g.colors().ok_or(ObservableError::MissingColorData)?;
    let n = g.n_nodes();
    if n % 3 != 0 {
        return Err(ObservableError::NotTrianglePartition);
    }
    let (out, inn) = g.degree_sequences();
    if out.iter().any(|&d| d != 1) || inn.iter().any(|&d| d != 1) {
        return Err(ObservableError::NotTrianglePartition);
    }
    let mut hist = TriangleHistogram::default();
    let mut seen = vec![false; n];
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let a = NodeId::new(start);
        let b = g.out_neighbors(a)[0];
        let c = g.out_neighbors(b)[0];
        if c == a || g.out_neighbors(c)[0] != a {
            return Err(ObservableError::NotTrianglePartition);
        }
        for v in [a, b, c] {
            if seen[v.index()] {
                return Err(ObservableError::NotTrianglePartition);
            }
            seen[v.index()] = true;
        }
        let cls = classify_triangle(
            colors[a.index()],
            colors[b.index()],
            colors[c.index()],
        );
        hist.counts[cls] += 1;
    }
    Ok(hist)
}

fn classify_triangle(c1: NodeColor, c2: NodeColor, c3: NodeColor) -> usize {
    use NodeColor::{Blue, Green, Red};
    let mut counts = [0u8; 3];
    for c in [c1, c2, c3] {
        counts[c as usize] += 1;
    }
    match counts {
        [3, 0, 0] => 0, // R-R-R
        [0, 3, 0] => 1, // G-G-G
        [0, 0, 3] => 2, // B-B-B
        [1, 2, 0] => 3, // R-G-G
        [1, 0, 2] => 4, // R-B-B
        [0, 2, 1] => 5, // G-G-B
        [0, 1, 2] => 6, // G-B-B
        [2, 0, 1] => 7, // R-R-B
        [2, 1, 0] => 8, // R-R-G
        [1, 1, 1] => {
            // rotate so the red node comes first, then read the orientation
            let order = [c1, c2, c3];
            let r = order.iter().position(|&c| c == Red).unwrap();
            let next = order[(r + 1) % 3];
            match next {
                Blue => 9,   // R-B-G
                Green => 10, // R-G-B
                Red => unreachable!(),
            }
        }
        _ => unreachable!("three colors always sum to 3"),
    }
}

/// One measurement row: trial index plus a value per trace column.
#[derive(Clone, Debug, PartialEq)]
pub struct TraceSample {
    pub trial: u64,
    pub values: Vec<f64>,
}

/// Time series of observable values sampled along a walk.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ObservableTrace {
    columns: Vec<String>,
    samples: Vec<TraceSample>,
}

impl ObservableTrace {
    pub fn new(columns: Vec<String>) -> Self {
        ObservableTrace { columns, samples: Vec::new() }
    }

    pub fn for_observables(observables: &[Observable]) -> Self {
        Self::new(observables.iter().flat_map(|o| o.columns()).collect())
    }

    pub fn columns(&self) -> &[String] {
        &self.columns
    }

    pub fn samples(&self) -> &[TraceSample] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Appends a sample; trial indices must be strictly increasing.
    pub fn push(&mut self, trial: u64, values: Vec<f64>) {
        debug_assert_eq!(values.len(), self.columns.len());
        debug_assert!(self.samples.last().map_or(true, |s| s.trial < trial));
        self.samples.push(TraceSample { trial, values });
    }

    pub fn last_values(&self) -> Option<&[f64]> {
        self.samples.last().map(|s| s.values.as_slice())
    }

    /// CSV serialization with header `trial,<col1>,<col2>,...`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("trial");
        for c in &self.columns {
            out.push(',');
            out.push_str(c);
        }
        out.push('\n');
        for s in &self.samples {
            out.push_str(&s.trial.to_string());
            for v in &s.values {
                out.push(',');
                if v.fract() == 0.0 && v.abs() < 1e15 {
                    out.push_str(&format!("{}", *v as i64));
                } else {
                    out.push_str(&format!("{v}"));
                }
            }
            out.push('\n');
        }
        out
    }

    pub fn write_csv(&self, path: &Path) -> Result<(), ObservableError> {
        let mut f = std::fs::File::create(path).map_err(|e| ObservableError::Io(e.to_string()))?;
        f.write_all(self.to_csv().as_bytes())
            .map_err(|e| ObservableError::Io(e.to_string()))
    }
}

/// True iff every column's mean over the last `window` samples agrees with the
/// mean over the preceding `window` samples within `rel_tol` (relative, with a
/// 1e-9 absolute fallback for near-zero means).
pub fn plateau_detect(
    trace: &ObservableTrace,
    window: usize,
    rel_tol: f64,
) -> Result<bool, ObservableError> {
    let n = trace.samples.len();
    if n < 2 * window || window == 0 {
        return Err(ObservableError::InsufficientSamples { got: n, need: 2 * window.max(1) });
    }
    for col in 0..trace.columns.len() {
        let mean_over = |range: std::ops::Range<usize>| -> f64 {
            let len = range.len() as f64;
            trace.samples[range].iter().map(|s| s.values[col]).sum::<f64>() / len
        };
        let recent = mean_over(n - window..n);
        let previous = mean_over(n - 2 * window..n - window);
        let base = recent.abs().max(previous.abs());
        let ok = if base < 1e-9 {
            (recent - previous).abs() < 1e-9
        } else {
            (recent - previous).abs() / base < rel_tol
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}
