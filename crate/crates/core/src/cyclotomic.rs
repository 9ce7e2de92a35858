//! Cyclotomic polynomials and factorization of rational polynomials into
//! cyclotomic parts.

use crate::poly::Polynomial;
use crate::scalar::{Rat, RealScalar};
use std::collections::BTreeMap;

/// x^n - 1.
pub fn xn_minus_1(n: usize) -> Polynomial<Rat> {
    let mut coeffs = vec![Rat::from_int(0); n + 1];
    coeffs[0] = Rat::from_int(-1);
    coeffs[n] = Rat::from_int(1);
    Polynomial::new(coeffs)
}

/// The d-th cyclotomic polynomial, by dividing x^d - 1 by all lower
/// cyclotomic factors. Exact over the rationals.
pub fn cyclotomic_polynomial(d: usize) -> Polynomial<Rat> {
    assert!(d >= 1);
    let mut phi = xn_minus_1(d);
    for e in 1..d {
        if d % e == 0 {
            let (q, r) = phi.divrem(&cyclotomic_polynomial(e));
            debug_assert!(r.is_zero());
            phi = q;
        }
    }
    phi
}

/// Moebius function.
pub fn mobius(n: usize) -> i64 {
    assert!(n >= 1);
    let mut n = n;
    let mut primes = 0;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0; // square factor
            }
            primes += 1;
        }
        p += 1;
    }
    if n > 1 {
        primes += 1;
    }
    if primes % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Writes `p` as constant * prod_d Phi_d^(e_d) by repeated trial division.
///
/// Returns the exponent map and the remaining constant, or `None` when a
/// non-cyclotomic factor survives. The input must have a nonzero constant
/// term (strip monomial factors first).
pub fn factor_cyclotomic(p: &Polynomial<Rat>) -> Option<(BTreeMap<usize, i64>, Rat)> {
    assert!(
        p.low_degree() == Some(0),
        "factor_cyclotomic expects a nonzero constant term"
    );
    let mut exps: BTreeMap<usize, i64> = BTreeMap::new();
    let mut rest = p.clone();
    let bound = rest.degree().unwrap_or(0);
    for d in 1..=bound {
        let phi = cyclotomic_polynomial(d);
        loop {
            if rest.degree().unwrap_or(0) < phi.degree().unwrap() {
                break;
            }
            let (q, r) = rest.divrem(&phi);
            if !r.is_zero() {
                break;
            }
            *exps.entry(d).or_insert(0) += 1;
            rest = q;
        }
    }
    if rest.degree().unwrap_or(0) > 0 {
        return None;
    }
    Some((exps, rest.coeff(0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn ip(vals: &[i64]) -> Polynomial<Rat> {
        Polynomial::new(vals.iter().map(|&v| Rat::from_int(v)).collect())
    }

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic_polynomial(1), ip(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2), ip(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(3), ip(&[1, 1, 1]));
        assert_eq!(cyclotomic_polynomial(4), ip(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(6), ip(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(12), ip(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn product_over_divisors_recovers_xn_minus_1() {
        for n in [1usize, 2, 6, 12, 30] {
            let mut prod = Polynomial::<Rat>::one();
            for d in 1..=n {
                if n % d == 0 {
                    prod = prod.mul(&cyclotomic_polynomial(d));
                }
            }
            assert_eq!(prod, xn_minus_1(n));
        }
    }

    #[test]
    fn mobius_values() {
        let want = [1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0];
        for (i, &w) in want.iter().enumerate() {
            assert_eq!(mobius(i + 1), w, "mu({})", i + 1);
        }
    }

    #[test]
    fn factorization_of_cyclotomic_products() {
        // (x^2 - 1)(x^6 - 1) = Phi1^2 Phi2^2 Phi3 Phi6
        let p = xn_minus_1(2).mul(&xn_minus_1(6));
        let (exps, c) = factor_cyclotomic(&p).unwrap();
        assert_eq!(c, Rat::one());
        let want: Vec<(usize, i64)> = vec![(1, 2), (2, 2), (3, 1), (6, 1)];
        assert_eq!(exps.into_iter().collect::<Vec<_>>(), want);
    }

    #[test]
    fn non_cyclotomic_factor_detected() {
        // x^2 - x - 1 is irreducible and not cyclotomic.
        let p = ip(&[-1, -1, 1]);
        assert!(factor_cyclotomic(&p).is_none());
        // Products hiding it fail too.
        let q = p.mul(&cyclotomic_polynomial(4));
        assert!(factor_cyclotomic(&q).is_none());
    }
}
