//! Absolute zeta functions of automorphic rational functions.
//!
//! A rational function f is an absolute automorphic form of weight D when
//! f(1/x) = C x^(-D) f(x) with C = +/-1. When f is additionally a signed
//! cyclotomic product
//!
//!   f(x) = x^(l/2) (x^m1 - 1)...(x^ma - 1) / ((x^n1 - 1)...(x^nb - 1)),
//!
//! its absolute zeta function expands over subsets I of {1..a} as
//! prod_I Gamma_b(s - deg f + m(I), n)^((-1)^|I|), with a matching multiple
//! sine product supplying the functional-equation factor between s and
//! D - s. This module recognizes the shape, expands it, and evaluates
//! both sides numerically.

pub mod mellin;
pub mod multizeta;

pub use mellin::mellin_transform;
pub use multizeta::{
    log_multi_gamma, multi_gamma, multi_sine, multi_zeta, multi_zeta_ds0, OmegaVector,
};

use crate::cyclotomic::{factor_cyclotomic, mobius, xn_minus_1};
use crate::error::{Error, Result};
use crate::poly::{Polynomial, RationalFunction};
use crate::scalar::{Rat, RealScalar};
use num_complex::Complex64;
use num_traits::One;
use std::collections::BTreeMap;

/// Witness of f(1/x) = C x^(-D) f(x).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AutomorphyWitness {
    pub c: i8,
    pub d: i64,
}

/// Finds the automorphy constants of a rational function by exact
/// coefficient reversal, or fails with `NotAutomorphic` (a legal outcome:
/// zeta functions of plain transition matrices need not be automorphic).
pub fn detect_automorphy(f: &RationalFunction<Rat>) -> Result<AutomorphyWitness> {
    if f.num().is_zero() {
        return Err(Error::Domain("automorphy of the zero function".into()));
    }
    let num = f.num();
    let den = f.den();
    // f(1/x) = x^(deg den - deg num) num*(x) / den*(x); the condition
    // becomes x^j num* den = C num den* with j = deg den - deg num + D.
    let r1 = num.reversed().mul(den);
    let r2 = num.mul(&den.reversed());
    let low1 = r1.low_degree().expect("nonzero");
    let low2 = r2.low_degree().expect("nonzero");
    let j = low2 as i64 - low1 as i64;
    let c = r1.coeff(low1) / r2.coeff(low2);
    let c = if c == Rat::one() {
        1i8
    } else if c == -Rat::one() {
        -1i8
    } else {
        return Err(Error::NotAutomorphic);
    };
    let shifted = if j >= 0 {
        r1.shift_up(j as usize)
    } else {
        match r1.shift_down((-j) as usize) {
            Some(p) => p,
            None => return Err(Error::NotAutomorphic),
        }
    };
    let scaled = r2.scale(&Rat::from_int(c as i64));
    if shifted != scaled {
        return Err(Error::NotAutomorphic);
    }
    let d = num.degree().unwrap() as i64 - den.degree().unwrap() as i64 + j;
    Ok(AutomorphyWitness { c, d })
}

/// The signed cyclotomic product shape of an automorphic rational function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicForm {
    /// Even integer; x^(ell/2) is the monomial prefactor.
    ell: i64,
    m_list: Vec<usize>,
    n_list: Vec<usize>,
}

impl CyclotomicForm {
    pub fn new(ell: i64, mut m_list: Vec<usize>, mut n_list: Vec<usize>) -> Result<Self> {
        if ell % 2 != 0 {
            return Err(Error::FormMismatch(format!("ell = {ell} must be even")));
        }
        if m_list.iter().chain(&n_list).any(|&v| v == 0) {
            return Err(Error::Domain("cyclotomic exponents must be positive".into()));
        }
        m_list.sort_unstable();
        n_list.sort_unstable();
        Ok(CyclotomicForm { ell, m_list, n_list })
    }

    pub fn ell(&self) -> i64 {
        self.ell
    }

    pub fn m_list(&self) -> &[usize] {
        &self.m_list
    }

    pub fn n_list(&self) -> &[usize] {
        &self.n_list
    }

    pub fn a(&self) -> usize {
        self.m_list.len()
    }

    pub fn b(&self) -> usize {
        self.n_list.len()
    }

    pub fn sum_m(&self) -> i64 {
        self.m_list.iter().map(|&v| v as i64).sum()
    }

    pub fn sum_n(&self) -> i64 {
        self.n_list.iter().map(|&v| v as i64).sum()
    }

    /// deg f = ell/2 + sum m - sum n.
    pub fn deg_f(&self) -> Rat {
        Rat::ratio(self.ell, 2) + Rat::from_int(self.sum_m() - self.sum_n())
    }

    /// Weight D = ell + sum m - sum n.
    pub fn weight(&self) -> i64 {
        self.ell + self.sum_m() - self.sum_n()
    }

    /// C = (-1)^(a - b).
    pub fn sign(&self) -> i8 {
        if (self.a() as i64 - self.b() as i64) % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Rebuilds the rational function the form denotes.
    pub fn reconstruct(&self) -> RationalFunction<Rat> {
        let mut num = Polynomial::<Rat>::one();
        for &m in &self.m_list {
            num = num.mul(&xn_minus_1(m));
        }
        let mut den = Polynomial::<Rat>::one();
        for &n in &self.n_list {
            den = den.mul(&xn_minus_1(n));
        }
        let half = self.ell / 2;
        if half >= 0 {
            num = num.shift_up(half as usize);
        } else {
            den = den.shift_up((-half) as usize);
        }
        RationalFunction::new(num, den).expect("nonzero denominator")
    }
}

/// Recognizes an automorphic rational function as a cyclotomic product.
///
/// Trial division collects the cyclotomic exponent vector e_d of f with the
/// monomial factor stripped; Moebius inversion over the divisor order then
/// yields the unique integer solution of
/// e_d = sum_i [d | m(i)] - sum_j [d | n(j)], whose positive part is the
/// m-list and negative part the n-list (the minimal representation: any
/// exponent shared by both lists would cancel). A leftover -1 constant is
/// a `SignMismatch`; a non-cyclotomic factor is `NotCyclotomic`.
pub fn to_cyclotomic_form(f: &RationalFunction<Rat>) -> Result<CyclotomicForm> {
    let witness = detect_automorphy(f)?;
    if f.num().is_zero() {
        return Err(Error::Domain("zero function".into()));
    }
    let vnum = f.num().low_degree().unwrap();
    let vden = f.den().low_degree().unwrap();
    let ell = 2 * (vnum as i64 - vden as i64);
    let num = f.num().shift_down(vnum).unwrap();
    let den = f.den().shift_down(vden).unwrap();

    let (en, cn) = factor_cyclotomic(&num)
        .ok_or_else(|| Error::NotCyclotomic("numerator has a non-cyclotomic factor".into()))?;
    let (ed, cd) = factor_cyclotomic(&den)
        .ok_or_else(|| Error::NotCyclotomic("denominator has a non-cyclotomic factor".into()))?;
    let constant = cn / cd;
    if constant == -Rat::one() {
        return Err(Error::SignMismatch);
    }
    if constant != Rat::one() {
        return Err(Error::NotCyclotomic(format!(
            "leftover constant {constant} is not 1"
        )));
    }

    let mut exps: BTreeMap<usize, i64> = en;
    for (d, e) in ed {
        *exps.entry(d).or_insert(0) -= e;
    }
    let dmax = exps
        .iter()
        .filter(|&(_, &e)| e != 0)
        .map(|(&d, _)| d)
        .max()
        .unwrap_or(0);
    let e_at = |d: usize| exps.get(&d).copied().unwrap_or(0);
    let mut m_list = Vec::new();
    let mut n_list = Vec::new();
    for k in 1..=dmax {
        let mut gamma = 0i64;
        let mut mult = k;
        while mult <= dmax {
            gamma += mobius(mult / k) * e_at(mult);
            mult += k;
        }
        if gamma > 0 {
            m_list.extend(std::iter::repeat(k).take(gamma as usize));
        } else if gamma < 0 {
            n_list.extend(std::iter::repeat(k).take((-gamma) as usize));
        }
    }
    let form = CyclotomicForm::new(ell, m_list, n_list)?;
    if form.weight() != witness.d {
        return Err(Error::FormMismatch(format!(
            "weight {} from the form, {} from automorphy",
            form.weight(),
            witness.d
        )));
    }
    // Reconstruction must reproduce f exactly (cross-multiplied to dodge
    // normalization differences).
    let rec = form.reconstruct();
    if f.num().mul(rec.den()) != rec.num().mul(f.den()) {
        return Err(Error::FormMismatch(
            "reconstructed product differs from the input".into(),
        ));
    }
    Ok(form)
}

/// One Gamma_b or S_b factor: argument s + shift, exponent +/-1.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductTerm {
    pub shift: Rat,
    pub exponent: i8,
}

/// Expanded absolute zeta data of a cyclotomic form.
#[derive(Debug, Clone, PartialEq)]
pub struct AbsZetaExpansion {
    pub deg_f: Rat,
    pub weight: i64,
    pub sign: i8,
    /// The frequency vector (the n-list).
    pub omega: Vec<usize>,
    /// 2^a factors Gamma_b(s + shift, omega)^exponent.
    pub gamma_terms: Vec<ProductTerm>,
    /// Same index structure for the sine factors of the functional equation.
    pub sine_terms: Vec<ProductTerm>,
    /// D/2, present when the sign is +1.
    pub critical_s: Option<Rat>,
}

/// Enumerates the subset expansion of the absolute zeta function.
pub fn expand(form: &CyclotomicForm) -> AbsZetaExpansion {
    let deg_f = form.deg_f();
    let a = form.a();
    let mut gamma_terms = Vec::with_capacity(1 << a);
    for mask in 0u32..(1u32 << a) {
        let m_of_subset: i64 = (0..a)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| form.m_list()[i] as i64)
            .sum();
        let exponent = if mask.count_ones() % 2 == 0 { 1 } else { -1 };
        gamma_terms.push(ProductTerm {
            shift: Rat::from_int(m_of_subset) - deg_f.clone(),
            exponent,
        });
    }
    let sign = form.sign();
    AbsZetaExpansion {
        deg_f: deg_f.clone(),
        weight: form.weight(),
        sign,
        omega: form.n_list().to_vec(),
        sine_terms: gamma_terms.clone(),
        gamma_terms,
        critical_s: (sign == 1).then(|| Rat::ratio(form.weight(), 2)),
    }
}

fn omega_vector(expansion: &AbsZetaExpansion) -> Result<OmegaVector> {
    OmegaVector::from_ints(&expansion.omega)
}

/// log zeta_f(s) = sum over terms of exponent * log Gamma_b(s + shift).
pub fn log_abs_zeta(expansion: &AbsZetaExpansion, s: f64) -> Result<f64> {
    let om = omega_vector(expansion)?;
    let mut acc = 0.0;
    for term in &expansion.gamma_terms {
        let x = s + term.shift.to_f64();
        acc += term.exponent as f64 * log_multi_gamma(x, &om)?;
    }
    Ok(acc)
}

/// zeta_f(s) as a positive real (arguments must keep every factor in its
/// window).
pub fn eval_abs_zeta(expansion: &AbsZetaExpansion, s: f64) -> Result<f64> {
    Ok(log_abs_zeta(expansion, s)?.exp())
}

/// The sine-product factor of the functional equation at s.
pub fn eval_epsilon(expansion: &AbsZetaExpansion, s: f64) -> Result<f64> {
    let om = omega_vector(expansion)?;
    let mut acc = 0.0;
    for term in &expansion.sine_terms {
        let x = s + term.shift.to_f64();
        let sine = multi_sine(x, &om)?;
        if sine <= 0.0 {
            return Err(Error::Window(format!(
                "sine factor at {x} is {sine}; log-space product needs positives"
            )));
        }
        acc += term.exponent as f64 * sine.ln();
    }
    Ok(acc.exp())
}

/// Relative residual of zeta_f(D - s)^C = eps_f(s) zeta_f(s).
pub fn functional_equation_residual(expansion: &AbsZetaExpansion, s: f64) -> Result<f64> {
    let lhs = expansion.sign as f64 * log_abs_zeta(expansion, expansion.weight as f64 - s)?;
    let rhs = eval_epsilon(expansion, s)?.ln() + log_abs_zeta(expansion, s)?;
    let lhs_val = lhs.exp();
    let rhs_val = rhs.exp();
    Ok((lhs_val - rhs_val).abs() / lhs_val.abs())
}

/// Subset-sum route to the absolute Hurwitz zeta:
/// Z_f(w, s) = sum_I (-1)^|I| zeta_b(w, s - deg f + m(I), n).
pub fn subset_sum_transform(expansion: &AbsZetaExpansion, w: f64, s: f64) -> Result<f64> {
    let om = omega_vector(expansion)?;
    let mut acc = 0.0;
    for term in &expansion.gamma_terms {
        let x = s + term.shift.to_f64();
        let z = multi_zeta(Complex64::new(w, 0.0), x, &om)?;
        acc += term.exponent as f64 * z.re;
    }
    Ok(acc)
}
