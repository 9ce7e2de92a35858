//! Scalar entry types for matrices and polynomials.
//!
//! The pipelines run in one of two numeric modes: binary64 floats or exact
//! big rationals. Complex entries appear only in local/global operators
//! (the unitary classification path). The [`Scalar`] trait is the common
//! surface for dense linear algebra; [`RealScalar`] adds the ordered-field
//! operations needed by probabilities, square roots, and polynomials.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Exact rational scalar.
pub type Rat = BigRational;

/// Matrix/polynomial entry.
pub trait Scalar:
    Clone
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + std::fmt::Debug
{
    /// Best-effort complex image of the entry (used by classification and
    /// tolerance checks).
    fn approx_complex(&self) -> Complex64;

    /// |entry| as a float, for tolerance comparisons.
    fn magnitude(&self) -> f64 {
        self.approx_complex().norm()
    }

    /// Accumulated sum of pairwise products. The f64 implementation uses
    /// Kahan compensation; exact types use plain accumulation.
    fn sum_products<I: Iterator<Item = (Self, Self)>>(pairs: I) -> Self {
        let mut acc = Self::zero();
        for (a, b) in pairs {
            acc = acc + a * b;
        }
        acc
    }
}

/// Ordered real scalar supporting exact or checked square roots.
pub trait RealScalar: Scalar + PartialOrd + Div<Output = Self> {
    fn from_int(v: i64) -> Self;

    fn ratio(num: i64, den: i64) -> Self;

    /// Square root when it exists within the type: always for nonnegative
    /// floats, only for perfect squares of rationals.
    fn sqrt_checked(&self) -> Option<Self>;

    fn to_f64(&self) -> f64;

    fn abs(&self) -> Self;
}

impl Scalar for f64 {
    fn approx_complex(&self) -> Complex64 {
        Complex64::new(*self, 0.0)
    }

    fn sum_products<I: Iterator<Item = (Self, Self)>>(pairs: I) -> Self {
        // Kahan-compensated accumulation.
        let mut sum = 0.0f64;
        let mut c = 0.0f64;
        for (a, b) in pairs {
            let y = a * b - c;
            let t = sum + y;
            c = (t - sum) - y;
            sum = t;
        }
        sum
    }
}

impl RealScalar for f64 {
    fn from_int(v: i64) -> Self {
        v as f64
    }

    fn ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn sqrt_checked(&self) -> Option<Self> {
        if *self >= 0.0 {
            Some(f64::sqrt(*self))
        } else {
            None
        }
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn abs(&self) -> Self {
        f64::abs(*self)
    }
}

impl Scalar for Complex64 {
    fn approx_complex(&self) -> Complex64 {
        *self
    }
}

impl Scalar for Rat {
    fn approx_complex(&self) -> Complex64 {
        Complex64::new(ToPrimitive::to_f64(self).unwrap_or(f64::NAN), 0.0)
    }
}

impl RealScalar for Rat {
    fn from_int(v: i64) -> Self {
        Rat::from_integer(BigInt::from(v))
    }

    fn ratio(num: i64, den: i64) -> Self {
        Rat::new(BigInt::from(num), BigInt::from(den))
    }

    fn sqrt_checked(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let num = exact_int_sqrt(self.numer())?;
        let den = exact_int_sqrt(self.denom())?;
        Some(Rat::new(num, den))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn abs(&self) -> Self {
        Signed::abs(self)
    }
}

fn exact_int_sqrt(v: &BigInt) -> Option<BigInt> {
    if v.is_negative() {
        return None;
    }
    let root = v.sqrt();
    if &root * &root == *v {
        Some(root)
    } else {
        None
    }
}

/// Parses a rational from "a/b", a plain integer, or a decimal string
/// (optionally with exponent). Decimal inputs convert exactly, so
/// "0.5" is 1/2 and "0.1" is 1/10.
pub fn rat_from_str(s: &str) -> Option<Rat> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let num: BigInt = n.trim().parse().ok()?;
        let den: BigInt = d.trim().parse().ok()?;
        if den.is_zero() {
            return None;
        }
        return Some(Rat::new(num, den));
    }
    let (mantissa, exp) = match s.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa, ""),
    };
    if frac_part.chars().any(|c| !c.is_ascii_digit()) {
        return None;
    }
    let digits = format!(
        "{}{}",
        if int_part.is_empty() { "0" } else { int_part },
        frac_part
    );
    let num: BigInt = digits.parse().ok()?;
    let scale = frac_part.len() as i32 - exp;
    let ten = BigInt::from(10);
    Some(if scale >= 0 {
        Rat::new(num, ten.pow(scale as u32))
    } else {
        Rat::from_integer(num * ten.pow((-scale) as u32))
    })
}

/// Formats a rational as "num/den" ("num" when the denominator is 1).
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Best rational approximation of `x` by continued fractions, with
/// denominator at most `max_den` and error at most `tol`.
pub fn rat_from_f64(x: f64, max_den: u64, tol: f64) -> Option<Rat> {
    if !x.is_finite() {
        return None;
    }
    // Convergents p/q of the continued fraction of x.
    let (mut p_prev, mut q_prev) = (BigInt::from(1), BigInt::from(0));
    let (mut p, mut q) = (BigInt::from(x.floor() as i64), BigInt::from(1));
    let mut frac = x - x.floor();
    for _ in 0..64 {
        let cand = Rat::new(p.clone(), q.clone());
        let err = (ToPrimitive::to_f64(&cand).unwrap_or(f64::NAN) - x).abs();
        if err <= tol {
            return Some(cand);
        }
        if frac.abs() < f64::EPSILON {
            break;
        }
        let inv = 1.0 / frac;
        let a = inv.floor();
        frac = inv - a;
        let a = BigInt::from(a as i128);
        let p_next = &a * &p + &p_prev;
        let q_next = &a * &q + &q_prev;
        p_prev = p;
        q_prev = q;
        p = p_next;
        q = q_next;
        if q.to_u64().map(|v| v > max_den).unwrap_or(true) {
            break;
        }
    }
    let cand = Rat::new(p, q.clone());
    let err = (ToPrimitive::to_f64(&cand).unwrap_or(f64::NAN) - x).abs();
    if err <= tol && q.to_u64().map(|v| v <= max_den).unwrap_or(false) {
        Some(cand)
    } else {
        None
    }
}
