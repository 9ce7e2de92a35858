//! Zeta function of a quantized chain and its determinant factorization.
//!
//! The zeta function of a chain's quantization U is det(I - uU)^(-1); its
//! reciprocal is the degree-reversed characteristic polynomial of U. The
//! factorization checked here rewrites that reciprocal as
//!
//!   (1 + u)^n (1 - u^2)^(m-n) det((1 + u^2) I - 2u S)
//!
//! with S the symmetrized matrix, which also pins the spectrum of U to the
//! unit circle: a conjugate pair per eigenvalue of S, m copies of -1 and
//! m - n copies of +1 (cancelled against pair values at +1 when m < n).

use crate::error::{Error, Result};
use crate::graph::MarkovChain;
use crate::matrix::Mat;
use crate::poly::{charpoly, Polynomial, RationalFunction};
use crate::quantize::{quantize, symmetrize, QuantumCoin, SymmetrizedMatrix};
use crate::scalar::{rat_from_f64, Rat, RealScalar};
use num_complex::Complex64;

/// Denominator bound for float -> rational coefficient recovery.
pub const RATIONALIZE_MAX_DEN: u64 = 1_000_000;
/// Accuracy demanded of recovered rational coefficients.
pub const RATIONALIZE_TOL: f64 = 1e-9;

/// det(I - uA): the degree-reversed characteristic polynomial.
pub fn det_one_minus_u<T: RealScalar>(a: &Mat<T>) -> Result<Polynomial<T>> {
    Ok(charpoly(a)?.reversed())
}

/// Reciprocal zeta polynomial det(I - uU) of a quantization.
pub fn reciprocal_zeta<T: RealScalar>(coin: &QuantumCoin<T>) -> Result<Polynomial<T>> {
    det_one_minus_u(coin.matrix())
}

/// The zeta function itself, as 1 / det(I - uU).
pub fn zeta_function<T: RealScalar>(coin: &QuantumCoin<T>) -> Result<RationalFunction<T>> {
    RationalFunction::reciprocal_of(reciprocal_zeta(coin)?)
}

/// Right-hand side of the determinant factorization:
/// (1 + u)^n (1 - u^2)^(m-n) * sum_k c_k (1 + u^2)^k (2u)^(n-k),
/// where chi_s = sum_k c_k x^k is the monic characteristic polynomial of S.
/// A negative power of (1 - u^2) stays in the denominator.
pub fn factorization_rhs<T: RealScalar>(
    n: usize,
    m: usize,
    chi_s: &Polynomial<T>,
) -> Result<RationalFunction<T>> {
    if chi_s.degree() != Some(n) {
        return Err(Error::Domain(format!(
            "chi_S must have degree {n}, got {:?}",
            chi_s.degree()
        )));
    }
    if chi_s.leading().map(|c| c.clone() - T::one()).map_or(true, |d| d.magnitude() > 0.0) {
        return Err(Error::Domain("chi_S must be monic".into()));
    }
    let one_plus_u = Polynomial::new(vec![T::one(), T::one()]);
    let one_plus_u2 = Polynomial::new(vec![T::one(), T::zero(), T::one()]);
    let two_u = Polynomial::new(vec![T::zero(), T::from_int(2)]);
    let one_minus_u2 = Polynomial::new(vec![T::one(), T::zero(), -T::one()]);

    let mut det_part = Polynomial::<T>::zero();
    for k in 0..=n {
        let c = chi_s.coeff(k);
        if c.is_zero() {
            continue;
        }
        let term = one_plus_u2
            .pow(k as u32)
            .mul(&two_u.pow((n - k) as u32))
            .scale(&c);
        det_part = det_part.add(&term);
    }
    let num = one_plus_u.pow(n as u32).mul(&det_part);
    if m >= n {
        let num = num.mul(&one_minus_u2.pow((m - n) as u32));
        Ok(RationalFunction::from_polynomial(num))
    } else {
        RationalFunction::new(num, one_minus_u2.pow((n - m) as u32))
    }
}

/// Both sides of the factorization identity for one chain.
#[derive(Debug, Clone)]
pub struct FactorizationReport<T> {
    pub lhs: Polynomial<T>,
    pub rhs: Polynomial<T>,
    pub max_coefficient_gap: f64,
}

/// Computes det(I - uU) directly and through the symmetrized-matrix
/// factorization, reporting the largest coefficient gap. `division_tol`
/// bounds the remainder allowed when clearing the (1 - u^2) denominator
/// (0.0 in exact mode).
pub fn verify_factorization<T: RealScalar>(
    chain: &MarkovChain<T>,
    division_tol: f64,
) -> Result<FactorizationReport<T>> {
    let n = chain.graph().vertex_count();
    let m = chain.graph().edge_count();
    let coin = quantize(chain)?;
    let lhs = reciprocal_zeta(&coin)?;
    let s = symmetrize(chain)?;
    let chi_s = charpoly(s.matrix())?;
    let rhs = factorization_rhs(n, m, &chi_s)?.into_polynomial(division_tol)?;
    let max_coefficient_gap = lhs.max_coeff_diff(&rhs);
    Ok(FactorizationReport {
        lhs,
        rhs,
        max_coefficient_gap,
    })
}

/// Spectrum of U assembled from the spectrum of S.
#[derive(Debug, Clone)]
pub struct SpectrumReport {
    /// Eigenvalues of S, ascending, with multiplicity.
    pub mu_list: Vec<f64>,
    /// Conjugate pairs mu +/- i sqrt(1 - mu^2), one per eigenvalue of S.
    pub pairs: Vec<(Complex64, Complex64)>,
    pub minus_one_mult: usize,
    /// Explicit +1 multiplicity (m - n when m >= n, else 0).
    pub plus_one_mult: usize,
    /// Pair values at +1 removed to absorb a negative +1 multiplicity.
    pub cancelled_plus_one: usize,
    /// The full eigenvalue multiset of U, length n + 2m.
    pub eigenvalues: Vec<Complex64>,
}

/// Builds the unit-circle spectrum of U from S for a graph with `m`
/// nonloop edges. When m < n, the negative +1 multiplicity is cancelled
/// against pair values within `tol` of +1; failure to find one is an
/// identity violation.
pub fn unit_circle_spectrum(
    s: &SymmetrizedMatrix<f64>,
    m: usize,
    tol: f64,
) -> Result<SpectrumReport> {
    let n = s.dim();
    let mut mu_list: Vec<f64> = s
        .matrix()
        .to_nalgebra()
        .symmetric_eigenvalues()
        .iter()
        .copied()
        .collect();
    mu_list.sort_by(|a, b| a.partial_cmp(b).unwrap());
    if let Some(worst) = mu_list.iter().map(|mu| mu.abs()).fold(None, |acc: Option<f64>, v| {
        Some(acc.map_or(v, |a| a.max(v)))
    }) {
        if worst > 1.0 + 1e-9 {
            return Err(Error::Domain(format!(
                "spectral radius of S is {worst}, above 1"
            )));
        }
    }
    // Snap eigenvalues within MU_SNAP of +/-1 before lifting: the map
    // mu -> mu + i sqrt(1 - mu^2) turns eigensolver noise d into sqrt(2d),
    // and values of S forced to 1 exactly (unit loops, m < n) must land
    // exactly on +/-1.
    const MU_SNAP: f64 = 1e-12;
    let pairs: Vec<(Complex64, Complex64)> = mu_list
        .iter()
        .map(|&mu| {
            let mut v = mu.clamp(-1.0, 1.0);
            if (v - 1.0).abs() <= MU_SNAP {
                v = 1.0;
            } else if (v + 1.0).abs() <= MU_SNAP {
                v = -1.0;
            }
            let im = (1.0 - v * v).sqrt();
            (Complex64::new(v, im), Complex64::new(v, -im))
        })
        .collect();

    let mut values: Vec<Complex64> = pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
    values.extend(std::iter::repeat(Complex64::new(-1.0, 0.0)).take(m));
    let mut cancelled = 0usize;
    let plus_one_mult = if m >= n {
        values.extend(std::iter::repeat(Complex64::new(1.0, 0.0)).take(m - n));
        m - n
    } else {
        for _ in 0..n - m {
            let plus_one = Complex64::new(1.0, 0.0);
            let (idx, dist) = values
                .iter()
                .enumerate()
                .map(|(i, v)| (i, (v - plus_one).norm()))
                .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
                .expect("nonempty spectrum");
            if dist > tol {
                return Err(Error::IdentityViolation(format!(
                    "no eigenvalue within {tol:e} of +1 available for cancellation (closest {dist:e})"
                )));
            }
            values.swap_remove(idx);
            cancelled += 1;
        }
        0
    };
    debug_assert_eq!(values.len(), n + 2 * m);
    Ok(SpectrumReport {
        mu_list,
        pairs,
        minus_one_mult: m,
        plus_one_mult,
        cancelled_plus_one: cancelled,
        eigenvalues: values,
    })
}

/// Recovers exact rational coefficients from a float polynomial by
/// continued fractions (denominators up to 10^6, accuracy 1e-9).
pub fn rationalize(p: &Polynomial<f64>) -> Result<Polynomial<Rat>> {
    rationalize_with(p, RATIONALIZE_MAX_DEN, RATIONALIZE_TOL)
}

pub fn rationalize_with(p: &Polynomial<f64>, max_den: u64, tol: f64) -> Result<Polynomial<Rat>> {
    let mut out = Vec::with_capacity(p.coeffs().len());
    for (k, &c) in p.coeffs().iter().enumerate() {
        let r = rat_from_f64(c, max_den, tol).ok_or_else(|| {
            Error::Reconstruction(format!(
                "coefficient {k} = {c} has no rational approximation with denominator <= {max_den} within {tol:e}"
            ))
        })?;
        if (r.to_f64() - c).abs() > tol {
            return Err(Error::Reconstruction(format!(
                "coefficient {k}: reconstructed {} deviates by more than {tol:e}",
                r
            )));
        }
        out.push(r);
    }
    Ok(Polynomial::new(out))
}

/// Returns the sign C with reversed(p) == C * p within `tol`, if any.
/// Orthogonality of U forces det(I - uU) to be palindromic up to sign.
pub fn palindromic_sign<T: RealScalar>(p: &Polynomial<T>, tol: f64) -> Option<i8> {
    let rev = p.reversed();
    if rev.max_coeff_diff(p) <= tol {
        Some(1)
    } else if rev.max_coeff_diff(&p.neg()) <= tol {
        Some(-1)
    } else {
        None
    }
}
