//! Loop-decorated graphs, their arc sets, and Markov chains on them.
//!
//! Every graph here carries exactly one loop per vertex, and the arc set of
//! its symmetric digraph is ordered lexicographically by (origin, terminus).
//! The graph shape is fixed by its edge list even where probabilities
//! vanish: a zero-probability arc is still an arc.

use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::scalar::RealScalar;

/// Stochasticity convention of an ingested block.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StochasticConvention {
    /// Entry (r, c) is the probability of moving from c to r.
    ColumnStochastic,
    /// Entry (r, c) is the probability of moving from r to c.
    RowStochastic,
}

/// Undirected connected graph with one implicit loop at every vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    labels: Vec<String>,
    /// Nonloop edges as (u, v) with u < v, sorted and deduplicated.
    edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(labels: Vec<String>, mut edges: Vec<(usize, usize)>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::Domain("graph needs at least one vertex".into()));
        }
        for e in edges.iter_mut() {
            if e.0 == e.1 {
                return Err(Error::Domain(format!(
                    "explicit loop ({}, {}) not allowed; every vertex already has one",
                    e.0, e.1
                )));
            }
            if e.0 >= n || e.1 >= n {
                return Err(Error::Domain(format!("edge ({}, {}) out of range", e.0, e.1)));
            }
            if e.0 > e.1 {
                *e = (e.1, e.0);
            }
        }
        edges.sort_unstable();
        edges.dedup();
        let g = Graph { labels, edges };
        if !g.is_connected() {
            return Err(Error::Domain("graph must be connected".into()));
        }
        Ok(g)
    }

    /// Complete graph on the given vertices (plus the implicit loops).
    pub fn complete(labels: Vec<String>) -> Result<Self> {
        let n = labels.len();
        let mut edges = Vec::with_capacity(n * (n - 1) / 2);
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Self::new(labels, edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    /// Number of nonloop edges.
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// One loop per vertex.
    pub fn loops(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.vertex_count()).map(|v| (v, v))
    }

    fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    stack.push(v);
                }
            }
        }
        count == n
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        if u == v {
            return true; // loop
        }
        let key = (u.min(v), u.max(v));
        self.edges.binary_search(&key).is_ok()
    }
}

/// Builds the configuration graph component for `sites` sites: the complete
/// graph on the 2^(sites-1) configurations sharing a last bit. Labels are
/// the leading sites' bit strings in increasing integer order, so for three
/// sites the vertices read 00, 01, 10, 11.
pub fn build_component_graph(sites: usize) -> Result<Graph> {
    if sites < 2 {
        return Err(Error::Domain("component graph needs at least 2 sites".into()));
    }
    let n = 1usize << (sites - 1);
    let labels = (0..n)
        .map(|i| {
            (0..sites - 1)
                .map(|b| if (i >> (sites - 2 - b)) & 1 == 1 { '1' } else { '0' })
                .collect::<String>()
        })
        .collect();
    Graph::complete(labels)
}

/// Arc set of the symmetric digraph: one diloop per vertex plus both
/// orientations of every nonloop edge, sorted lexicographically by
/// (origin, terminus). Diloops are their own inverses.
#[derive(Debug, Clone, PartialEq)]
pub struct ArcSet {
    arcs: Vec<(usize, usize)>,
    inverse: Vec<usize>,
}

impl ArcSet {
    pub fn from_graph(graph: &Graph) -> Self {
        let mut arcs: Vec<(usize, usize)> = graph.loops().collect();
        for &(u, v) in graph.edges() {
            arcs.push((u, v));
            arcs.push((v, u));
        }
        arcs.sort_unstable();
        let index: std::collections::HashMap<(usize, usize), usize> =
            arcs.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        let inverse = arcs.iter().map(|&(u, v)| index[&(v, u)]).collect();
        ArcSet { arcs, inverse }
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn arc(&self, e: usize) -> (usize, usize) {
        self.arcs[e]
    }

    pub fn origin(&self, e: usize) -> usize {
        self.arcs[e].0
    }

    pub fn terminus(&self, e: usize) -> usize {
        self.arcs[e].1
    }

    pub fn inverse(&self, e: usize) -> usize {
        self.inverse[e]
    }

    pub fn is_loop(&self, e: usize) -> bool {
        self.arcs[e].0 == self.arcs[e].1
    }

    pub fn index_of(&self, arc: (usize, usize)) -> Option<usize> {
        self.arcs.binary_search(&arc).ok()
    }
}

/// A Markov chain on a loop-decorated graph: per-arc probabilities summing
/// to one over the out-arcs of every vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct MarkovChain<T> {
    graph: Graph,
    arcs: ArcSet,
    prob: Vec<T>,
}

impl<T: RealScalar> MarkovChain<T> {
    /// Validates and wraps per-arc probabilities aligned with the arc order.
    pub fn new(graph: Graph, prob: Vec<T>, tol: f64) -> Result<Self> {
        let arcs = ArcSet::from_graph(&graph);
        if prob.len() != arcs.len() {
            return Err(Error::Structure(format!(
                "expected {} arc probabilities, got {}",
                arcs.len(),
                prob.len()
            )));
        }
        for (e, p) in prob.iter().enumerate() {
            let v = p.to_f64();
            if !(-tol..=1.0 + tol).contains(&v) {
                return Err(Error::Structure(format!(
                    "arc {e} probability {v} outside [0, 1]"
                )));
            }
        }
        let chain = MarkovChain { graph, arcs, prob };
        chain.check_sum_rule(tol)?;
        Ok(chain)
    }

    /// Per-vertex sum rule: outgoing probabilities total one.
    fn check_sum_rule(&self, tol: f64) -> Result<()> {
        let n = self.graph.vertex_count();
        for u in 0..n {
            let mut sum = T::zero();
            for e in 0..self.arcs.len() {
                if self.arcs.origin(e) == u {
                    sum = sum + self.prob[e].clone();
                }
            }
            let gap = (sum - T::one()).magnitude();
            if gap > tol {
                return Err(Error::Structure(format!(
                    "outgoing probabilities at vertex {u} sum to 1{gap:+e}"
                )));
            }
        }
        Ok(())
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn arcs(&self) -> &ArcSet {
        &self.arcs
    }

    pub fn prob(&self, e: usize) -> &T {
        &self.prob[e]
    }

    pub fn probs(&self) -> &[T] {
        &self.prob
    }

    /// n + 2m, the arc-space dimension.
    pub fn arc_dim(&self) -> usize {
        self.arcs.len()
    }

    pub fn to_f64(&self) -> MarkovChain<f64> {
        MarkovChain {
            graph: self.graph.clone(),
            arcs: self.arcs.clone(),
            prob: self.prob.iter().map(|p| p.to_f64()).collect(),
        }
    }

    /// Row-stochastic transition matrix M[u][v] = prob(u -> v); its
    /// transpose is the column-stochastic form.
    pub fn transition_matrix(&self) -> Mat<T> {
        let n = self.graph.vertex_count();
        let mut m = Mat::<T>::zeros(n, n);
        for e in 0..self.arcs.len() {
            let (u, v) = self.arcs.arc(e);
            m[(u, v)] = self.prob[e].clone();
        }
        m
    }
}

/// Reads a stochastic block into a Markov chain on `graph`.
///
/// For column-stochastic input (transposed transition matrices), the move
/// probability u -> v is entry (v, u); for row-stochastic input it is
/// (u, v). Probability mass on a pair that is not an arc of the graph is a
/// structure error, as is a column/row failing the sum rule beyond `tol`.
pub fn chain_from_block<T: RealScalar>(
    graph: &Graph,
    block: &Mat<T>,
    convention: StochasticConvention,
    tol: f64,
) -> Result<MarkovChain<T>> {
    let n = graph.vertex_count();
    if block.rows() != n || block.cols() != n {
        return Err(Error::Structure(format!(
            "block is {}x{}, graph has {n} vertices",
            block.rows(),
            block.cols()
        )));
    }
    let move_prob = |from: usize, to: usize| -> T {
        match convention {
            StochasticConvention::ColumnStochastic => block[(to, from)].clone(),
            StochasticConvention::RowStochastic => block[(from, to)].clone(),
        }
    };
    for u in 0..n {
        for v in 0..n {
            if !graph.has_edge(u, v) {
                let mag = move_prob(u, v).magnitude();
                if mag > tol {
                    return Err(Error::Structure(format!(
                        "probability {mag:e} on non-arc ({u}, {v})"
                    )));
                }
            }
        }
    }
    let arcs = ArcSet::from_graph(graph);
    let prob = (0..arcs.len())
        .map(|e| {
            let (u, v) = arcs.arc(e);
            move_prob(u, v)
        })
        .collect();
    MarkovChain::new(graph.clone(), prob, tol)
}
