//! Univariate polynomials and rational functions over float or exact scalars.
//!
//! Coefficients are stored ascending by degree with trailing zeros trimmed.
//! Characteristic polynomials use the Faddeev-LeVerrier recursion, which
//! needs only ring operations plus division by small integers and therefore
//! runs unchanged over rationals and binary64.

use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::scalar::{Rat, RealScalar, Scalar};
use num_traits::{One, Zero};

/// Dimension cap for characteristic polynomials.
pub const CHARPOLY_DIM_CAP: usize = 1024;

#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Polynomial<T> {
    /// Builds from ascending coefficients, trimming trailing zeros.
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: vec![] }
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    /// c * x^k
    pub fn monomial(c: T, k: usize) -> Self {
        let mut coeffs = vec![T::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Coefficient of x^k (zero beyond the stored length).
    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    /// Index of the lowest nonzero coefficient (`None` for zero).
    pub fn low_degree(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, k: &T) -> Self {
        Self::new(self.coeffs.iter().map(|c| k.clone() * c.clone()).collect())
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Multiplies by x^k.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![T::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Polynomial { coeffs }
    }

    /// Divides by x^k, requiring the low-order coefficients to vanish.
    pub fn shift_down(&self, k: usize) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        if self.coeffs.iter().take(k).any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::new(self.coeffs.iter().skip(k).cloned().collect()))
    }

    pub fn eval(&self, x: &T) -> T {
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    /// x^deg * p(1/x): the coefficient sequence reversed (and re-trimmed,
    /// so a polynomial divisible by x loses that factor).
    pub fn reversed(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Self::new(coeffs)
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Polynomial<U> {
        Polynomial::new(self.coeffs.iter().map(f).collect())
    }

    /// Largest coefficientwise |self - other|.
    pub fn max_coeff_diff(&self, other: &Self) -> f64 {
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n)
            .map(|i| (self.coeff(i) - other.coeff(i)).magnitude())
            .fold(0.0, f64::max)
    }
}

impl<T: RealScalar> Polynomial<T> {
    /// Euclidean division. Panics on a zero divisor.
    pub fn divrem(&self, div: &Self) -> (Self, Self) {
        assert!(!div.is_zero(), "division by zero polynomial");
        let dd = div.degree().unwrap();
        if self.degree().map_or(true, |d| d < dd) {
            return (Self::zero(), self.clone());
        }
        let lead = div.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        let qlen = rem.len() - dd;
        let mut quot = vec![T::zero(); qlen];
        for i in (0..qlen).rev() {
            let q = rem[i + dd].clone() / lead.clone();
            if q.is_zero() {
                continue;
            }
            for (j, dc) in div.coeffs.iter().enumerate() {
                rem[i + j] = rem[i + j].clone() - q.clone() * dc.clone();
            }
            quot[i] = q;
        }
        (Self::new(quot), Self::new(rem))
    }

    /// Scales so the leading coefficient is 1.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(l) => {
                let inv = T::one() / l.clone();
                self.scale(&inv)
            }
        }
    }
}

impl Polynomial<Rat> {
    pub fn to_f64(&self) -> Polynomial<f64> {
        self.map(|c| c.to_f64())
    }

    /// Monic gcd over the rationals.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }
}

impl<T: RealScalar> std::fmt::Display for Polynomial<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c < &T::zero() { "-" } else { "+" };
            let mag = c.abs();
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", sign)?;
            }
            let show_coeff = k == 0 || !mag.clone().is_one();
            if show_coeff {
                write!(f, "{:?}", mag)?;
            }
            if k > 0 {
                if show_coeff {
                    write!(f, "*")?;
                }
                if k == 1 {
                    write!(f, "u")?;
                } else {
                    write!(f, "u^{}", k)?;
                }
            }
        }
        Ok(())
    }
}

/// Quotient of two polynomials, normalized so the denominator's lowest
/// nonzero coefficient is +1 (hence f(0) is read off directly whenever the
/// denominator has a nonzero constant term).
#[derive(Debug, Clone, PartialEq)]
pub struct RationalFunction<T> {
    num: Polynomial<T>,
    den: Polynomial<T>,
}

impl<T: RealScalar> RationalFunction<T> {
    pub fn new(num: Polynomial<T>, den: Polynomial<T>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Domain("zero denominator".into()));
        }
        let mut rf = RationalFunction { num, den };
        rf.normalize();
        Ok(rf)
    }

    pub fn from_polynomial(num: Polynomial<T>) -> Self {
        RationalFunction {
            num,
            den: Polynomial::one(),
        }
    }

    /// 1 / den.
    pub fn reciprocal_of(den: Polynomial<T>) -> Result<Self> {
        Self::new(Polynomial::one(), den)
    }

    fn normalize(&mut self) {
        let low = self.den.low_degree().expect("nonzero denominator");
        let c = self.den.coeff(low);
        let inv = T::one() / c;
        self.den = self.den.scale(&inv);
        self.num = self.num.scale(&inv);
    }

    pub fn num(&self) -> &Polynomial<T> {
        &self.num
    }

    pub fn den(&self) -> &Polynomial<T> {
        &self.den
    }

    /// Degree as a rational function: deg num - deg den (zero num -> None).
    pub fn degree(&self) -> Option<i64> {
        Some(self.num.degree()? as i64 - self.den.degree().unwrap() as i64)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut rf = RationalFunction {
            num: self.num.mul(&other.num),
            den: self.den.mul(&other.den),
        };
        rf.normalize();
        rf
    }

    /// Exact conversion to a polynomial if the denominator divides the
    /// numerator with remainder below `tol` (use 0.0 in exact mode).
    pub fn into_polynomial(&self, tol: f64) -> Result<Polynomial<T>> {
        let (q, r) = self.num.divrem(&self.den);
        let rmag = r
            .coeffs()
            .iter()
            .map(|c| c.magnitude())
            .fold(0.0, f64::max);
        if rmag > tol {
            return Err(Error::IdentityViolation(format!(
                "polynomial division left remainder of magnitude {rmag:e}"
            )));
        }
        Ok(q)
    }
}

impl RationalFunction<Rat> {
    /// Cancels common factors (exact mode only).
    pub fn reduced(&self) -> Self {
        let g = self.num.gcd(&self.den);
        if g.degree().unwrap_or(0) == 0 {
            return self.clone();
        }
        let (num, rn) = self.num.divrem(&g);
        let (den, rd) = self.den.divrem(&g);
        debug_assert!(rn.is_zero() && rd.is_zero());
        let mut rf = RationalFunction { num, den };
        rf.normalize();
        rf
    }

    pub fn eval(&self, x: &Rat) -> Option<Rat> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(x) / d)
    }
}

/// Characteristic polynomial det(xI - A) by the Faddeev-LeVerrier recursion.
///
/// Exact over rationals; in binary64 the matrix products use compensated
/// accumulation via [`Scalar::sum_products`].
pub fn charpoly<T: RealScalar>(a: &Mat<T>) -> Result<Polynomial<T>> {
    if !a.is_square() {
        return Err(Error::Domain("characteristic polynomial of a non-square matrix".into()));
    }
    let d = a.rows();
    if d > CHARPOLY_DIM_CAP {
        return Err(Error::DimensionCap {
            dim: d,
            cap: CHARPOLY_DIM_CAP,
        });
    }
    let mut coeffs = vec![T::zero(); d + 1];
    coeffs[d] = T::one();
    if d == 0 {
        return Ok(Polynomial::one());
    }
    let mut m = a.clone();
    coeffs[d - 1] = -m.trace();
    for k in 2..=d {
        let shifted = m.add(&Mat::identity(d).scale(&coeffs[d - k + 1]));
        m = a.mul(&shifted);
        coeffs[d - k] = -(m.trace() / T::from_int(k as i64));
    }
    Ok(Polynomial::new(coeffs))
}

/// Exact determinant over the rationals (Bareiss-free plain elimination;
/// dimensions here are tiny).
pub fn det_exact(a: &Mat<Rat>) -> Rat {
    assert!(a.is_square());
    let n = a.rows();
    let mut m: Vec<Vec<Rat>> = (0..n).map(|r| a.row(r).to_vec()).collect();
    let mut det = Rat::one();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero());
        let Some(p) = pivot else {
            return Rat::zero();
        };
        if p != col {
            m.swap(p, col);
            det = -det;
        }
        let pv = m[col][col].clone();
        det *= pv.clone();
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone() / pv.clone();
            for c in col..n {
                let sub = factor.clone() * m[col][c].clone();
                m[r][c] -= sub;
            }
        }
    }
    det
}

impl Polynomial<Rat> {
    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.denom().is_one())
    }

    /// Content-free primitive check helper: max |numerator| bit size proxy.
    pub fn max_denominator_bits(&self) -> u64 {
        self.coeffs
            .iter()
            .map(|c| c.denom().bits())
            .max()
            .unwrap_or(0)
    }
}
