//! Interacting particle systems: nearest-neighbor cellular automata on
//! {0,1}^N with a frozen right boundary.
//!
//! A local operator is a 4x4 transition-weight matrix on pair states
//! (00, 01, 10, 11) that never changes its right site. The global operator
//! on 2^N states is the product of the N-1 shifted local factors, applied
//! from site 0 upward. Site 0 is the most significant bit of a
//! configuration index, so configuration 011 has index 3.

use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::scalar::{RealScalar, Scalar};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

/// Default tolerance for classification checks.
pub const DEFAULT_CLASSIFY_TOL: f64 = 1e-10;
/// Imaginary parts above this disqualify an operator from the stochastic path.
pub const REAL_ENTRY_TOL: f64 = 1e-12;
/// Largest site count accepted without an explicit override (dimension 4096).
pub const DEFAULT_SITE_CAP: usize = 12;

/// A configuration of N >= 2 binary sites, site 0 leftmost.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Configuration {
    bits: Vec<u8>,
}

impl Configuration {
    pub fn new(bits: Vec<u8>) -> Result<Self> {
        if bits.len() < 2 {
            return Err(Error::Domain("configuration needs at least 2 sites".into()));
        }
        if bits.iter().any(|&b| b > 1) {
            return Err(Error::Domain("configuration bits must be 0 or 1".into()));
        }
        Ok(Configuration { bits })
    }

    /// Parses e.g. "011".
    pub fn parse(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(0u8),
                '1' => Ok(1u8),
                _ => Err(Error::Parse(format!("bad configuration char {c:?}"))),
            })
            .collect::<Result<Vec<u8>>>()?;
        Self::new(bits)
    }

    pub fn sites(&self) -> usize {
        self.bits.len()
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn bit(&self, site: usize) -> u8 {
        self.bits[site]
    }

    /// Basis index with site 0 as the most significant bit.
    pub fn index(&self) -> usize {
        self.bits.iter().fold(0usize, |acc, &b| (acc << 1) | b as usize)
    }

    pub fn from_index(sites: usize, index: usize) -> Result<Self> {
        if index >= (1usize << sites) {
            return Err(Error::Domain(format!("index {index} out of range for {sites} sites")));
        }
        Self::new((0..sites).map(|i| ((index >> (sites - 1 - i)) & 1) as u8).collect())
    }
}

impl std::fmt::Display for Configuration {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for b in &self.bits {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

/// 4x4 transition-weight matrix on pair states 00, 01, 10, 11.
///
/// Entry (target kl, source ij) is the weight for the pair (i, j) becoming
/// (k, l); right-site preservation means the entry vanishes unless l = j.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalOperator<T> {
    mat: Mat<T>,
}

impl<T: Scalar> LocalOperator<T> {
    pub fn new(mat: Mat<T>) -> Result<Self> {
        if mat.rows() != 4 || mat.cols() != 4 {
            return Err(Error::Domain("local operator must be 4x4".into()));
        }
        Ok(LocalOperator { mat })
    }

    pub fn from_row_major(entries: &[T]) -> Result<Self> {
        if entries.len() != 16 {
            return Err(Error::Domain("local operator needs 16 entries".into()));
        }
        Ok(LocalOperator {
            mat: Mat::from_fn(4, 4, |r, c| entries[r * 4 + c].clone()),
        })
    }

    pub fn matrix(&self) -> &Mat<T> {
        &self.mat
    }

    /// Weight for (i, j) -> (k, l).
    pub fn weight(&self, (i, j): (u8, u8), (k, l): (u8, u8)) -> T {
        self.mat[(2 * k as usize + l as usize, 2 * i as usize + j as usize)].clone()
    }

    /// True when every entry with l != j is below `tol` in magnitude.
    pub fn is_right_preserving(&self, tol: f64) -> bool {
        for row in 0..4 {
            for col in 0..4 {
                if (row ^ col) & 1 == 1 && self.mat[(row, col)].magnitude() > tol {
                    return false;
                }
            }
        }
        true
    }

    pub fn to_complex(&self) -> LocalOperator<Complex64> {
        LocalOperator {
            mat: self.mat.to_complex(),
        }
    }
}

/// Domany-Kinzel parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct DkParams<T> {
    p: T,
    q: T,
}

impl<T: RealScalar> DkParams<T> {
    pub fn new(p: T, q: T) -> Result<Self> {
        for (name, v) in [("p", &p), ("q", &q)] {
            if *v < T::zero() || *v > T::one() {
                return Err(Error::Domain(format!("{name} must lie in [0, 1]")));
            }
        }
        Ok(DkParams { p, q })
    }

    pub fn p(&self) -> &T {
        &self.p
    }

    pub fn q(&self) -> &T {
        &self.q
    }
}

/// Builds the Domany-Kinzel local operator.
///
/// The left site becomes 1 with probability 0, p, p, q for sources
/// 00, 01, 10, 11 respectively; the right site never changes. Columns sum
/// to one for every (p, q), so the operator is always stochastic. The
/// deterministic corner (p, q) = (1, 0) is elementary rule 90.
pub fn build_dk_local<T: RealScalar>(params: &DkParams<T>) -> LocalOperator<T> {
    let one = T::one;
    let zero = T::zero;
    let p = params.p.clone();
    let q = params.q.clone();
    let rows = [
        vec![one(), zero(), one() - p.clone(), zero()],
        vec![zero(), one() - p.clone(), zero(), one() - q.clone()],
        vec![zero(), zero(), p.clone(), zero()],
        vec![zero(), p.clone(), zero(), q.clone()],
    ];
    LocalOperator {
        mat: Mat::from_rows(&rows),
    }
}

/// Structural flags of a local operator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Classification {
    pub right_preserving: bool,
    /// Columns sum to 1 with real entries in [0, 1]: transposed transition matrix.
    pub is_pca: bool,
    /// The 4x4 matrix is unitary.
    pub is_qca: bool,
    pub tolerance: f64,
}

/// Classifies a local operator at the given tolerance.
pub fn classify_local<T: Scalar>(op: &LocalOperator<T>, tol: f64) -> Classification {
    let m = op.matrix().to_complex();
    let right_preserving = op.is_right_preserving(tol);

    let mut is_pca = true;
    for col in 0..4 {
        let mut sum = 0.0;
        for row in 0..4 {
            let v = m[(row, col)];
            if v.im.abs() > REAL_ENTRY_TOL || v.re < -REAL_ENTRY_TOL || v.re > 1.0 + REAL_ENTRY_TOL {
                is_pca = false;
            }
            sum += v.re;
        }
        if (sum - 1.0).abs() > tol {
            is_pca = false;
        }
    }

    let mut is_qca = true;
    for i in 0..4 {
        for j in 0..4 {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..4 {
                acc += m[(k, i)].conj() * m[(k, j)];
            }
            let expect = if i == j { 1.0 } else { 0.0 };
            if (acc - expect).norm() > tol {
                is_qca = false;
            }
        }
    }

    Classification {
        right_preserving,
        is_pca,
        is_qca,
        tolerance: tol,
    }
}

/// Product of shifted local factors on 2^sites states.
#[derive(Debug, Clone, PartialEq)]
pub struct GlobalOperator<T> {
    mat: Mat<T>,
    sites: usize,
}

impl<T: Scalar> GlobalOperator<T> {
    pub fn matrix(&self) -> &Mat<T> {
        &self.mat
    }

    pub fn sites(&self) -> usize {
        self.sites
    }

    pub fn dim(&self) -> usize {
        1usize << self.sites
    }
}

fn site_bit(index: usize, site: usize, sites: usize) -> usize {
    (index >> (sites - 1 - site)) & 1
}

/// Left-multiplies `m` by the factor acting with `local` on (site, site+1).
fn apply_local_factor<T: Scalar>(local: &Mat<T>, m: &Mat<T>, site: usize, sites: usize) -> Mat<T> {
    let dim = 1usize << sites;
    let hi = sites - 1 - site; // bit position of the left site
    let lo = sites - 2 - site; // bit position of the right site
    let mask = !((1usize << hi) | (1usize << lo));
    let mut out = Mat::<T>::zeros(dim, dim);
    for r in 0..dim {
        let target = 2 * site_bit(r, site, sites) + site_bit(r, site + 1, sites);
        let base = r & mask;
        for source in 0..4usize {
            let w = local[(target, source)].clone();
            if w.is_zero() {
                continue;
            }
            let rs = base | ((source >> 1) << hi) | ((source & 1) << lo);
            for c in 0..dim {
                out[(r, c)] = out[(r, c)].clone() + w.clone() * m[(rs, c)].clone();
            }
        }
    }
    out
}

/// Builds the global operator for `sites` sites, respecting the default
/// site cap. The factor on sites (0, 1) is applied first, so every updated
/// site reads pre-update neighbor states.
pub fn global_from_local<T: Scalar>(op: &LocalOperator<T>, sites: usize) -> Result<GlobalOperator<T>> {
    global_from_local_capped(op, sites, DEFAULT_SITE_CAP)
}

/// As [`global_from_local`] with an explicit site cap override.
pub fn global_from_local_capped<T: Scalar>(
    op: &LocalOperator<T>,
    sites: usize,
    cap: usize,
) -> Result<GlobalOperator<T>> {
    if sites < 2 {
        return Err(Error::Domain("global operator needs at least 2 sites".into()));
    }
    if sites > cap {
        return Err(Error::DimensionCap {
            dim: 1usize << sites,
            cap: 1usize << cap,
        });
    }
    if !op.is_right_preserving(REAL_ENTRY_TOL) {
        return Err(Error::Domain(
            "global operator requires a right-site-preserving local operator".into(),
        ));
    }
    let dim = 1usize << sites;
    let mut m = Mat::identity(dim);
    for site in 0..sites - 1 {
        m = apply_local_factor(op.matrix(), &m, site, sites);
    }
    Ok(GlobalOperator { mat: m, sites })
}

/// Splits a last-bit block-diagonal global operator into its two blocks.
///
/// Block b collects configurations whose final site is b, ordered by the
/// integer value of the leading sites: 00, 10 then 01, 11 for two sites.
/// Any cross-block entry above `tol` is a structure error.
pub fn split_blocks<T: Scalar>(g: &GlobalOperator<T>, tol: f64) -> Result<(Mat<T>, Mat<T>)> {
    let dim = g.dim();
    let half = dim / 2;
    for r in 0..dim {
        for c in 0..dim {
            if (r ^ c) & 1 == 1 {
                let mag = g.mat[(r, c)].magnitude();
                if mag > tol {
                    return Err(Error::Structure(format!(
                        "cross-block entry ({r}, {c}) has magnitude {mag:e}"
                    )));
                }
            }
        }
    }
    let block = |b: usize| Mat::from_fn(half, half, |i, j| g.mat[(2 * i + b, 2 * j + b)].clone());
    Ok((block(0), block(1)))
}

/// Reassembles blocks as block0 (+) block1 and undoes the last-bit sort,
/// returning a matrix directly comparable with the global operator.
pub fn reassemble_blocks<T: Scalar>(block0: &Mat<T>, block1: &Mat<T>) -> Mat<T> {
    let half = block0.rows();
    let dim = 2 * half;
    Mat::from_fn(dim, dim, |r, c| {
        if (r ^ c) & 1 == 1 {
            T::zero()
        } else if r & 1 == 0 {
            block0[(r / 2, c / 2)].clone()
        } else {
            block1[(r / 2, c / 2)].clone()
        }
    })
}

/// Samples a trajectory of the PCA dynamics.
///
/// Each step draws one independent bit per updatable site from the local
/// operator column of the old neighbor pair; the final site never changes.
/// The generator is seeded explicitly, so runs are reproducible.
pub fn sample_trajectory<T: RealScalar>(
    op: &LocalOperator<T>,
    init: &Configuration,
    steps: usize,
    seed: u64,
) -> Result<Vec<Configuration>> {
    let class = classify_local(op, DEFAULT_CLASSIFY_TOL);
    if !class.is_pca || !class.right_preserving {
        return Err(Error::Domain(
            "trajectory sampling requires a right-preserving stochastic operator".into(),
        ));
    }
    let sites = init.sites();
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut current = init.clone();
    let mut out = Vec::with_capacity(steps + 1);
    out.push(current.clone());
    for _ in 0..steps {
        let mut next = current.bits.clone();
        for site in 0..sites - 1 {
            let pair = (current.bit(site), current.bit(site + 1));
            let p_one = op.weight(pair, (1, pair.1)).to_f64();
            next[site] = if rng.random::<f64>() < p_one { 1 } else { 0 };
        }
        current = Configuration { bits: next };
        out.push(current.clone());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rat;
    use num_traits::{One, Zero};

    fn dk(p: f64, q: f64) -> LocalOperator<f64> {
        build_dk_local(&DkParams::new(p, q).unwrap())
    }

    fn col(m: &Mat<f64>, c: usize) -> Vec<f64> {
        (0..m.rows()).map(|r| m[(r, c)]).collect()
    }

    #[test]
    fn dk_half_zero_columns() {
        let op = dk(0.5, 0.0);
        let m = op.matrix();
        assert_eq!(col(m, 0), vec![1.0, 0.0, 0.0, 0.0]);
        assert_eq!(col(m, 1), vec![0.0, 0.5, 0.0, 0.5]);
        assert_eq!(col(m, 2), vec![0.5, 0.0, 0.5, 0.0]);
        assert_eq!(col(m, 3), vec![0.0, 1.0, 0.0, 0.0]);
    }

    #[test]
    fn dk_corners() {
        // (1, 0): deterministic rule 90; every column is a basis vector.
        let op = dk(1.0, 0.0);
        for c in 0..4 {
            let column = col(op.matrix(), c);
            assert_eq!(column.iter().filter(|&&v| v == 1.0).count(), 1);
            assert_eq!(column.iter().filter(|&&v| v == 0.0).count(), 3);
        }
        // (0, 0): the left site always becomes 0.
        let op = dk(0.0, 0.0);
        let m = op.matrix();
        assert_eq!(col(m, 0), vec![1.0, 0.0, 0.0, 0.0]); // 00 -> 00
        assert_eq!(col(m, 1), vec![0.0, 1.0, 0.0, 0.0]); // 01 -> 01
        assert_eq!(col(m, 2), vec![1.0, 0.0, 0.0, 0.0]); // 10 -> 00
        assert_eq!(col(m, 3), vec![0.0, 1.0, 0.0, 0.0]); // 11 -> 01
    }

    #[test]
    fn dk_rejects_out_of_range() {
        assert!(DkParams::new(1.2, 0.0).is_err());
        assert!(DkParams::new(0.5, -0.1).is_err());
    }

    #[test]
    fn classification_flags() {
        let c = classify_local(&dk(0.5, 0.0), DEFAULT_CLASSIFY_TOL);
        assert!(c.right_preserving && c.is_pca && !c.is_qca);

        let id = LocalOperator::new(Mat::<f64>::identity(4)).unwrap();
        let c = classify_local(&id, DEFAULT_CLASSIFY_TOL);
        assert!(c.is_pca && c.is_qca);

        // Rule 90 is a permutation, hence unitary.
        let c = classify_local(&dk(1.0, 0.0), DEFAULT_CLASSIFY_TOL);
        assert!(c.is_pca && c.is_qca);

        // (1, 1) sends both 01 and 11 to 11: columns coincide, not unitary.
        let c = classify_local(&dk(1.0, 1.0), DEFAULT_CLASSIFY_TOL);
        assert!(c.is_pca && !c.is_qca);

        let grid: Vec<f64> = (0..=4).map(|i| i as f64 / 4.0).collect();
        for &p in &grid {
            for &q in &grid {
                assert!(classify_local(&dk(p, q), DEFAULT_CLASSIFY_TOL).is_pca);
            }
        }
    }

    #[test]
    fn global_two_sites_is_local() {
        let op = dk(0.3, 0.8);
        let g = global_from_local(&op, 2).unwrap();
        assert_eq!(g.matrix(), op.matrix());
    }

    #[test]
    fn global_identity_is_identity() {
        let id = LocalOperator::new(Mat::<f64>::identity(4)).unwrap();
        let g = global_from_local(&id, 4).unwrap();
        assert_eq!(g.matrix(), &Mat::<f64>::identity(16));
    }

    fn kron(a: &Mat<f64>, b: &Mat<f64>) -> Mat<f64> {
        Mat::from_fn(a.rows() * b.rows(), a.cols() * b.cols(), |r, c| {
            a[(r / b.rows(), c / b.cols())] * b[(r % b.rows(), c % b.cols())]
        })
    }

    #[test]
    fn global_three_sites_matches_dense_product() {
        let op = dk(1.0 / 3.0, 0.5);
        let g = global_from_local(&op, 3).unwrap();
        let i2 = Mat::<f64>::identity(2);
        let oracle = kron(&i2, op.matrix()).mul(&kron(op.matrix(), &i2));
        assert!(g.matrix().max_diff(&oracle) < 1e-15);
    }

    #[test]
    fn global_weight_product_formula() {
        // Entry (target, source) is the product of per-site draw weights:
        // each new left bit is drawn against the not-yet-updated right bit.
        let op = dk(0.7, 0.2);
        let sites = 4;
        let g = global_from_local(&op, sites).unwrap();
        let dim = 1 << sites;
        for target in 0..dim {
            for source in 0..dim {
                let tc = Configuration::from_index(sites, target).unwrap();
                let sc = Configuration::from_index(sites, source).unwrap();
                let mut w = 1.0;
                for x in 0..sites - 1 {
                    w *= op.weight((sc.bit(x), sc.bit(x + 1)), (tc.bit(x), sc.bit(x + 1)));
                }
                if tc.bit(sites - 1) != sc.bit(sites - 1) {
                    w = 0.0;
                }
                assert!((g.matrix()[(target, source)] - w).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn global_rejects_small_n_and_non_preserving() {
        assert!(global_from_local(&dk(0.5, 0.5), 1).is_err());
        let mut m = Mat::<f64>::identity(4);
        m[(0, 1)] = 0.5; // breaks right-site preservation
        let bad = LocalOperator::new(m).unwrap();
        assert!(global_from_local(&bad, 3).is_err());
    }

    #[test]
    fn split_blocks_dk_two_sites() {
        let p = 0.35;
        let q = 0.8;
        let g = global_from_local(&dk(p, q), 2).unwrap();
        let (b0, b1) = split_blocks(&g, 1e-12).unwrap();
        let want0 = Mat::from_rows(&[vec![1.0, 1.0 - p], vec![0.0, p]]);
        let want1 = Mat::from_rows(&[vec![1.0 - p, 1.0 - q], vec![p, q]]);
        assert!(b0.max_diff(&want0) < 1e-15);
        assert!(b1.max_diff(&want1) < 1e-15);
    }

    #[test]
    fn split_blocks_identity_and_column_sums() {
        let id = LocalOperator::new(Mat::<f64>::identity(4)).unwrap();
        let g = global_from_local(&id, 3).unwrap();
        let (b0, b1) = split_blocks(&g, 1e-12).unwrap();
        assert_eq!(b0, Mat::<f64>::identity(4));
        assert_eq!(b1, Mat::<f64>::identity(4));

        let g = global_from_local(&dk(1.0 / 3.0, 0.5), 3).unwrap();
        let (b0, b1) = split_blocks(&g, 1e-12).unwrap();
        for b in [&b0, &b1] {
            for c in 0..4 {
                let s: f64 = (0..4).map(|r| b[(r, c)]).sum();
                assert!((s - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn split_blocks_rejects_cross_mass() {
        let mut m = Mat::<f64>::identity(4);
        m[(0, 1)] = 0.25;
        let g = GlobalOperator { mat: m, sites: 2 };
        assert!(matches!(split_blocks(&g, 1e-12), Err(Error::Structure(_))));
    }

    #[test]
    fn reassembled_blocks_equal_permuted_global() {
        let g = global_from_local(&dk(0.6, 0.1), 3).unwrap();
        let (b0, b1) = split_blocks(&g, 1e-12).unwrap();
        assert!(reassemble_blocks(&b0, &b1).max_diff(g.matrix()) < 1e-15);
    }

    #[test]
    fn exact_global_blocks_over_rationals() {
        let params = DkParams::new(Rat::ratio(1, 3), Rat::ratio(1, 2)).unwrap();
        let op = build_dk_local(&params);
        let g = global_from_local(&op, 3).unwrap();
        let (b0, b1) = split_blocks(&g, 0.0).unwrap();
        for b in [&b0, &b1] {
            for c in 0..4 {
                let mut s = Rat::zero();
                for r in 0..4 {
                    s += b[(r, c)].clone();
                }
                assert_eq!(s, Rat::one());
            }
        }
    }

    #[test]
    fn trajectory_deterministic_cases() {
        // p = 1, q = 0 keeps 10 fixed: pair (1,0) -> left stays 1.
        let init = Configuration::parse("10").unwrap();
        let traj = sample_trajectory(&dk(1.0, 0.0), &init, 8, 7).unwrap();
        assert_eq!(traj.len(), 9);
        assert!(traj.iter().all(|c| c == &init));

        // q = 0 forces 111 -> 001 in one step for any p.
        for p in [0.0, 0.4, 1.0] {
            let init = Configuration::parse("111").unwrap();
            let traj = sample_trajectory(&dk(p, 0.0), &init, 1, 99).unwrap();
            assert_eq!(traj[1], Configuration::parse("001").unwrap());
        }
    }

    #[test]
    fn trajectory_rejects_non_pca() {
        let mut m = Mat::<f64>::identity(4);
        m[(0, 0)] = 0.5; // column no longer sums to one
        let op = LocalOperator::new(m).unwrap();
        let init = Configuration::parse("10").unwrap();
        assert!(sample_trajectory(&op, &init, 1, 0).is_err());
    }

    #[test]
    fn trajectory_seed_reproducible_and_boundary_frozen() {
        let init = Configuration::parse("1011").unwrap();
        let a = sample_trajectory(&dk(0.5, 0.5), &init, 50, 1234).unwrap();
        let b = sample_trajectory(&dk(0.5, 0.5), &init, 50, 1234).unwrap();
        assert_eq!(a, b);
        assert!(a.iter().all(|c| c.bit(3) == 1));
    }

    #[test]
    fn configuration_index_convention() {
        let c = Configuration::parse("011").unwrap();
        assert_eq!(c.index(), 3);
        let c = Configuration::parse("100").unwrap();
        assert_eq!(c.index(), 4);
        assert_eq!(Configuration::from_index(3, 4).unwrap(), c);
    }
}
