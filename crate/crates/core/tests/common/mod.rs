//! Helpers shared by the integration suites: the Domany-Kinzel pipeline up
//! to per-component chains, seeded random loop-decorated chains, and
//! multiset comparison for spectra.

use ipszeta::graph::{build_component_graph, chain_from_block, Graph, MarkovChain, StochasticConvention};
use ipszeta::ips::{build_dk_local, global_from_local, split_blocks, DkParams};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

/// Builds both per-component chains of the Domany-Kinzel model on `sites`
/// sites (block 0 first).
pub fn dk_chains(sites: usize, p: f64, q: f64) -> (MarkovChain<f64>, MarkovChain<f64>) {
    let op = build_dk_local(&DkParams::new(p, q).unwrap());
    let global = global_from_local(&op, sites).unwrap();
    let (b0, b1) = split_blocks(&global, 1e-12).unwrap();
    let graph = build_component_graph(sites).unwrap();
    let c0 = chain_from_block(&graph, &b0, StochasticConvention::ColumnStochastic, 1e-9).unwrap();
    let c1 = chain_from_block(&graph, &b1, StochasticConvention::ColumnStochastic, 1e-9).unwrap();
    (c0, c1)
}

/// Random connected loop-decorated graph with 1..=max_n vertices and a
/// random stochastic structure on it.
pub fn random_chain(rng: &mut ChaCha12Rng, max_n: usize) -> MarkovChain<f64> {
    let n = rng.random_range(1..=max_n);
    let mut edges = Vec::new();
    for v in 1..n {
        let u = rng.random_range(0..v);
        edges.push((u, v));
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.random::<f64>() < 0.4 {
                edges.push((u, v));
            }
        }
    }
    let labels = (0..n).map(|i| format!("v{i}")).collect();
    let graph = Graph::new(labels, edges).unwrap();
    let arcs = ipszeta::graph::ArcSet::from_graph(&graph);

    // Raw positive weights per arc, normalized per origin vertex.
    let raw: Vec<f64> = (0..arcs.len()).map(|_| rng.random::<f64>() + 0.05).collect();
    let mut totals = vec![0.0; n];
    for e in 0..arcs.len() {
        totals[arcs.origin(e)] += raw[e];
    }
    let prob: Vec<f64> = (0..arcs.len())
        .map(|e| raw[e] / totals[arcs.origin(e)])
        .collect();
    MarkovChain::new(graph, prob, 1e-9).unwrap()
}

/// Eigenvalues of a real matrix through the real Schur form, with an
/// iteration cap and a tiny-perturbation retry: the uncapped QR iteration
/// can cycle on orthogonal matrices, whose spectra sit exactly on the
/// unit circle.
pub fn dense_eigenvalues(m: &ipszeta::Mat<f64>, seed: u64) -> Vec<Complex64> {
    let base = m.to_nalgebra();
    if let Some(schur) = nalgebra::linalg::Schur::try_new(base.clone(), 1e-13, 20_000) {
        return schur.complex_eigenvalues().iter().copied().collect();
    }
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    for attempt in 1..=6u32 {
        let eps = 1e-12 * f64::from(attempt);
        let dim = m.rows();
        let mut pert = base.clone();
        for r in 0..dim {
            for c in 0..dim {
                pert[(r, c)] += eps * (rng.random::<f64>() - 0.5);
            }
        }
        if let Some(schur) = nalgebra::linalg::Schur::try_new(pert, 1e-13, 20_000) {
            return schur.complex_eigenvalues().iter().copied().collect();
        }
    }
    panic!("Schur iteration failed to converge even under perturbation");
}

/// Greedy tolerance matching of two eigenvalue multisets.
pub fn assert_multiset_close(got: &[Complex64], want: &[Complex64], tol: f64, what: &str) {
    assert_eq!(got.len(), want.len(), "{what}: cardinality mismatch");
    let mut unused: Vec<Complex64> = want.to_vec();
    for g in got {
        let (idx, dist) = unused
            .iter()
            .enumerate()
            .map(|(i, w)| (i, (g - w).norm()))
            .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
            .expect("nonempty");
        assert!(
            dist <= tol,
            "{what}: {g} has no partner within {tol:e} (closest {dist:e})"
        );
        unused.swap_remove(idx);
    }
}

/// Deterministic generator for the suites.
pub fn seeded(seed: u64) -> ChaCha12Rng {
    ChaCha12Rng::seed_from_u64(seed)
}
