//! Starter-graph generators: canonical toy instances used throughout the test
//! and acceptance suites, plus seeded random starters for property tests and
//! synthetic experiments.

use rand::Rng;

use crate::graph::{Graph, NodeColor};

/// The bipartite toy instance: side A = nodes 0..4 with out-degrees
/// (3,2,1,1,1), side B = nodes 5..8 with in-degrees (3,2,2,1), M = 8. Its
/// simple projection onto side A has degree multiset {2,2,2,1,1}, and the
/// constrained graph set contains exactly 7 members.
pub fn c0_toy_graph() -> Graph {
    Graph::from_edge_list(&c0_toy_edges(), true, Some(9)).unwrap()
}

pub fn c0_toy_edges() -> Vec<(usize, usize)> {
    vec![
        (0, 5),
        (0, 6),
        (0, 8),
        (1, 5),
        (1, 6),
        (2, 5),
        (3, 7),
        (4, 7),
    ]
}

/// The 3-node directed instance with all in- and out-degrees 1 and no
/// self-loops: its graph set is the two opposite 3-cycles, which pairwise
/// switches cannot connect.
pub fn rao_graph() -> Graph {
    Graph::from_edge_list(&[(0, 1), (1, 2), (2, 0)], true, None).unwrap()
}

/// Starter of `n_triangles` disjoint oriented triangles, each R→G→B oriented:
/// node 3i is red, 3i+1 green, 3i+2 blue, with arcs 3i→3i+1→3i+2→3i.
pub fn rgb_triangle_starter(n_triangles: usize) -> Graph {
    let mut pairs = Vec::with_capacity(3 * n_triangles);
    let mut colors = Vec::with_capacity(3 * n_triangles);
    for t in 0..n_triangles {
        let base = 3 * t;
        pairs.push((base, base + 1));
        pairs.push((base + 1, base + 2));
        pairs.push((base + 2, base));
        colors.extend([NodeColor::Red, NodeColor::Green, NodeColor::Blue]);
    }
    let mut g = Graph::from_edge_list(&pairs, true, Some(3 * n_triangles)).unwrap();
    g.set_colors(colors).unwrap();
    g
}

/// Random simple directed graph with `m` arcs on `n` nodes.
pub fn random_directed<R: Rng>(n: usize, m: usize, rng: &mut R) -> Graph {
    assert!(m <= n * (n - 1), "too many arcs for a simple digraph");
    let mut pairs: Vec<(usize, usize)> = Vec::with_capacity(m);
    while pairs.len() < m {
        let u = rng.random_range(0..n);
        let v = rng.random_range(0..n);
        if u != v && !pairs.contains(&(u, v)) {
            pairs.push((u, v));
        }
    }
    Graph::from_edge_list(&pairs, true, Some(n)).unwrap()
}

/// Random simple undirected graph with `m` edges on `n` nodes.
pub fn random_undirected<R: Rng>(n: usize, m: usize, rng: &mut R) -> Graph {
    assert!(m <= n * (n - 1) / 2, "too many edges for a simple graph");
    let mut pairs: Vec<(usize, usize)> = Vec::with_capacity(m);
    while pairs.len() < m {
        let u = rng.random_range(0..n);
        let v = rng.random_range(0..n);
        let (u, v) = if u < v { (u, v) } else { (v, u) };
        if u != v && !pairs.contains(&(u, v)) {
            pairs.push((u, v));
        }
    }
    Graph::from_edge_list(&pairs, false, Some(n)).unwrap()
}

/// Random bipartite digraph: `n_a` source nodes, `n_b` target nodes, `m`
/// arcs from side A to side B. Suitable as a projection-constraint starter.
pub fn random_bipartite<R: Rng>(n_a: usize, n_b: usize, m: usize, rng: &mut R) -> Graph {
    assert!(m <= n_a * n_b, "too many arcs for a simple bipartite digraph");
    let mut pairs: Vec<(usize, usize)> = Vec::with_capacity(m);
    while pairs.len() < m {
        let u = rng.random_range(0..n_a);
        let v = n_a + rng.random_range(0..n_b);
        if !pairs.contains(&(u, v)) {
            pairs.push((u, v));
        }
    }
    Graph::from_edge_list(&pairs, true, Some(n_a + n_b)).unwrap()
}

/// Directed graph with a heavy-tailed out-degree sequence (truncated Zipf-like
/// weights ∝ 1/d²) and preferentially attached targets, so in-degrees
/// correlate with out-degrees and motif counts are non-trivial. A synthetic
/// stand-in for citation-network starters.
pub fn power_law_directed<R: Rng>(n: usize, max_degree: usize, rng: &mut R) -> Graph {
    let cap = max_degree.min(n - 1);
    let weights: Vec<f64> = (1..=cap).map(|d| 1.0 / (d as f64 * d as f64)).collect();
    let total: f64 = weights.iter().sum();
    let degrees: Vec<usize> = (0..n)
        .map(|_| {
            let mut x = rng.random_range(0.0..total);
            for (i, w) in weights.iter().enumerate() {
                if x < *w {
                    return i + 1;
                }
                x -= w;
            }
            cap
        })
        .collect();
    // target pool: node j appears degrees[j] + 1 times
    let mut pool: Vec<usize> = Vec::new();
    for (j, &d) in degrees.iter().enumerate() {
        for _ in 0..=d {
            pool.push(j);
        }
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for (u, &degree) in degrees.iter().enumerate() {
        let mut picked = 0;
        let mut guard = 0;
        while picked < degree && guard < 200 * degree {
            guard += 1;
            let v = pool[rng.random_range(0..pool.len())];
            if v != u && !pairs[pairs.len() - picked..].contains(&(u, v)) {
                pairs.push((u, v));
                picked += 1;
            }
        }
    }
    Graph::from_edge_list(&pairs, true, Some(n)).unwrap()
}
