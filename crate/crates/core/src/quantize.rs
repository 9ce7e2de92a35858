//! Quantization of a Markov chain on its arc space.
//!
//! For a chain on a loop-decorated graph with n vertices and m nonloop
//! edges, the coupling matrices K and L lift vertex data to the
//! (n + 2m)-dimensional arc space and J swaps every arc with its inverse.
//! The quantization U = 2 K L^T - J is orthogonal for every valid chain;
//! `quantize` builds it twice (matrix identity and entrywise rule) and
//! insists the two constructions agree.

use crate::error::{Error, Result};
use crate::graph::{ArcSet, MarkovChain};
use crate::matrix::Mat;
use crate::scalar::{RealScalar, Scalar};

/// Agreement tolerance between the two float-mode constructions of U.
pub const DUAL_ROUTE_TOL: f64 = 1e-14;

/// Arc-space couplings of one chain.
///
/// K[e][v] = sqrt(p(e)) when e starts at v; L[e][v] = sqrt(p(e^-1)) when e
/// ends at v; J[e][f] = 1 exactly when f is the inverse of e (so diloops
/// sit on the diagonal). These satisfy L = JK, K = JL, K^T K = L^T L = I
/// and J^2 = I.
#[derive(Debug, Clone, PartialEq)]
pub struct CouplingMatrices<T> {
    k: Mat<T>,
    l: Mat<T>,
    j: Mat<T>,
}

impl<T: Scalar> CouplingMatrices<T> {
    pub fn k(&self) -> &Mat<T> {
        &self.k
    }

    pub fn l(&self) -> &Mat<T> {
        &self.l
    }

    pub fn j(&self) -> &Mat<T> {
        &self.j
    }
}

fn sqrt_or_lost<T: RealScalar>(v: &T, what: &str) -> Result<T> {
    v.sqrt_checked()
        .ok_or_else(|| Error::ExactnessLost(format!("sqrt of {what} is not representable")))
}

/// Builds K, L and J for a chain.
///
/// In exact mode every arc probability must be a perfect rational square;
/// otherwise the error asks the caller to fall back to floats.
pub fn build_coupling<T: RealScalar>(chain: &MarkovChain<T>) -> Result<CouplingMatrices<T>> {
    let arcs = chain.arcs();
    let n = chain.graph().vertex_count();
    let dim = arcs.len();
    let mut k = Mat::<T>::zeros(dim, n);
    let mut l = Mat::<T>::zeros(dim, n);
    for e in 0..dim {
        let sqrt_pe = sqrt_or_lost(chain.prob(e), &format!("p(arc {e})"))?;
        let inv = arcs.inverse(e);
        let sqrt_pinv = sqrt_or_lost(chain.prob(inv), &format!("p(arc {inv})"))?;
        k[(e, arcs.origin(e))] = sqrt_pe;
        l[(e, arcs.terminus(e))] = sqrt_pinv;
    }
    let mut j = Mat::<T>::zeros(dim, dim);
    for e in 0..dim {
        j[(e, arcs.inverse(e))] = T::one();
    }
    Ok(CouplingMatrices { k, l, j })
}

/// The orthogonal quantization of a chain, carrying its arc indexing.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumCoin<T> {
    u: Mat<T>,
    arcs: ArcSet,
}

impl<T: Scalar> QuantumCoin<T> {
    pub fn matrix(&self) -> &Mat<T> {
        &self.u
    }

    pub fn arcs(&self) -> &ArcSet {
        &self.arcs
    }

    pub fn dim(&self) -> usize {
        self.u.rows()
    }
}

impl QuantumCoin<crate::scalar::Rat> {
    pub fn to_f64(&self) -> QuantumCoin<f64> {
        QuantumCoin {
            u: self.u.map(|v| v.to_f64()),
            arcs: self.arcs.clone(),
        }
    }
}

/// Entrywise definition of U.
fn quantize_entrywise<T: RealScalar>(chain: &MarkovChain<T>) -> Result<Mat<T>> {
    let arcs = chain.arcs();
    let dim = arcs.len();
    let two = T::from_int(2);
    let mut u = Mat::<T>::zeros(dim, dim);
    for e in 0..dim {
        for f in 0..dim {
            let meets = arcs.terminus(f) == arcs.origin(e);
            let is_inverse = f == arcs.inverse(e);
            if !meets && !is_inverse {
                continue;
            }
            // t(f) = o(e) holds automatically when f = e^-1.
            let prod = chain.prob(e).clone() * chain.prob(arcs.inverse(f)).clone();
            let root = sqrt_or_lost(&prod, &format!("p({e})p(inv {f})"))?;
            let mut val = two.clone() * root;
            if is_inverse {
                val = val - T::one();
            }
            u[(e, f)] = val;
        }
    }
    Ok(u)
}

/// Quantizes a chain, checking the matrix identity 2 K L^T - J against the
/// entrywise rule (exact equality over rationals, 1e-14 over floats).
pub fn quantize<T: RealScalar>(chain: &MarkovChain<T>) -> Result<QuantumCoin<T>> {
    let coupling = build_coupling(chain)?;
    let two = T::from_int(2);
    let via_identity = coupling
        .k
        .mul(&coupling.l.transpose())
        .scale(&two)
        .sub(&coupling.j);
    let via_entries = quantize_entrywise(chain)?;
    let gap = via_identity.max_diff(&via_entries);
    if gap > DUAL_ROUTE_TOL {
        return Err(Error::Consistency(format!(
            "quantization constructions disagree by {gap:e}"
        )));
    }
    Ok(QuantumCoin {
        u: via_entries,
        arcs: chain.arcs().clone(),
    })
}

/// max |U U^T - I|.
pub fn unitarity_defect<T: Scalar>(coin: &QuantumCoin<T>) -> f64 {
    coin.u.orthogonality_defect()
}

/// Entrywise geometric mean of forward and backward arc probabilities.
///
/// Symmetric with entries in [0, 1]; diagonal entries are the loop
/// probabilities. Its spectrum drives the determinant factorization of
/// det(I - uU).
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetrizedMatrix<T> {
    s: Mat<T>,
}

impl<T: Scalar> SymmetrizedMatrix<T> {
    pub fn matrix(&self) -> &Mat<T> {
        &self.s
    }

    pub fn dim(&self) -> usize {
        self.s.rows()
    }

    /// Wraps an already-symmetric matrix without recomputing it from a
    /// chain (test scaffolding and ingestion of serialized matrices).
    pub fn from_matrix_unchecked(s: Mat<T>) -> Self {
        assert!(s.is_square());
        SymmetrizedMatrix { s }
    }
}

pub fn symmetrize<T: RealScalar>(chain: &MarkovChain<T>) -> Result<SymmetrizedMatrix<T>> {
    let n = chain.graph().vertex_count();
    let arcs = chain.arcs();
    let mut s = Mat::<T>::zeros(n, n);
    for e in 0..arcs.len() {
        let (u, v) = arcs.arc(e);
        let prod = chain.prob(e).clone() * chain.prob(arcs.inverse(e)).clone();
        s[(u, v)] = sqrt_or_lost(&prod, &format!("p(e)p(inv e) for arc {e}"))?;
    }
    Ok(SymmetrizedMatrix { s })
}

/// Unit-norm amplitude vector on the arc space.
#[derive(Debug, Clone, PartialEq)]
pub struct WalkState<T> {
    amplitudes: Vec<T>,
}

impl<T: Scalar> WalkState<T> {
    const NORM_TOL: f64 = 1e-12;

    pub fn new(amplitudes: Vec<T>) -> Result<Self> {
        let norm2: f64 = amplitudes.iter().map(|a| a.magnitude().powi(2)).sum();
        if (norm2.sqrt() - 1.0).abs() > Self::NORM_TOL {
            return Err(Error::Domain(format!(
                "walk state norm {} is not 1",
                norm2.sqrt()
            )));
        }
        Ok(WalkState { amplitudes })
    }

    /// Basis state concentrated on one arc.
    pub fn basis(dim: usize, arc: usize) -> Result<Self> {
        if arc >= dim {
            return Err(Error::Domain(format!("arc {arc} out of range {dim}")));
        }
        let mut amplitudes = vec![T::zero(); dim];
        amplitudes[arc] = T::one();
        Ok(WalkState { amplitudes })
    }

    pub fn amplitudes(&self) -> &[T] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|a| a.magnitude().powi(2))
            .sum::<f64>()
            .sqrt()
    }
}

/// Applies U `steps` times to a state.
pub fn walk_evolve<T: Scalar>(coin: &QuantumCoin<T>, state: &WalkState<T>, steps: usize) -> Result<WalkState<T>> {
    if state.amplitudes.len() != coin.dim() {
        return Err(Error::Domain(format!(
            "state has {} amplitudes, walk space has {}",
            state.amplitudes.len(),
            coin.dim()
        )));
    }
    let mut amp = state.amplitudes.clone();
    for _ in 0..steps {
        amp = coin.u.mul_vec(&amp);
    }
    Ok(WalkState { amplitudes: amp })
}
