//! Acceptance suite: one test per criterion, each printing a PASS line
//! with the measured figure once its assertions hold.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the
//! per-criterion lines.

mod common;

use common::{assert_multiset_close, dk_chains, random_chain, seeded};
use ipszeta::abszeta::{
    expand, functional_equation_residual, mellin_transform, multi_gamma, multi_zeta,
    to_cyclotomic_form, OmegaVector,
};
use ipszeta::ips::{build_dk_local, global_from_local, sample_trajectory, Configuration, DkParams};
use ipszeta::matrix::Mat;
use ipszeta::poly::{charpoly, Polynomial, RationalFunction};
use ipszeta::quantize::{quantize, symmetrize, unitarity_defect};
use ipszeta::scalar::{Rat, RealScalar};
use ipszeta::zeta::{palindromic_sign, rationalize, reciprocal_zeta, unit_circle_spectrum, verify_factorization};
use num_complex::Complex64;
use rand::Rng;
use statrs::function::gamma::ln_gamma;
use std::time::Instant;

fn grid_11() -> Vec<f64> {
    (0..=10).map(|i| i as f64 / 10.0).collect()
}

fn fp(vals: &[f64]) -> Polynomial<f64> {
    Polynomial::new(vals.to_vec())
}

/// Combined zeta reciprocal of the two-site model, rationalized.
fn combined_reciprocal_exact(p: f64, q: f64) -> RationalFunction<Rat> {
    let (c0, c1) = dk_chains(2, p, q);
    let rec = reciprocal_zeta(&quantize(&c0).unwrap())
        .unwrap()
        .mul(&reciprocal_zeta(&quantize(&c1).unwrap()).unwrap());
    RationalFunction::reciprocal_of(rationalize(&rec).unwrap()).unwrap()
}

#[test]
fn ac01_unitarity_on_the_grid() {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for sites in [2usize, 3] {
        for &p in &grid_11() {
            for &q in &grid_11() {
                let (c0, c1) = dk_chains(sites, p, q);
                for chain in [&c0, &c1] {
                    let defect = unitarity_defect(&quantize(chain).unwrap());
                    worst = worst.max(defect);
                    assert!(
                        defect <= 1e-12,
                        "defect {defect:e} at sites={sites}, (p,q)=({p},{q})"
                    );
                }
            }
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 10.0, "took {elapsed:?}");
    println!("AC-01 PASS unitarity defect <= 1e-12 on both grids (worst {worst:.3e}, {elapsed:?})");
}

#[test]
fn ac02_two_site_characteristic_polynomials() {
    let mut worst_u = 0.0f64;
    let mut worst_s = 0.0f64;
    for &p in &grid_11() {
        for &q in &grid_11() {
            let (c0, c1) = dk_chains(2, p, q);
            let u = quantize(&c0)
                .unwrap()
                .matrix()
                .direct_sum(quantize(&c1).unwrap().matrix());
            let chi_u = charpoly(&u).unwrap();
            let want_u = fp(&[-1.0, 1.0])
                .pow(2)
                .mul(&fp(&[1.0, 1.0]).pow(2))
                .mul(&fp(&[1.0, -2.0 * p, 1.0]))
                .mul(&fp(&[1.0, 2.0 * (p - q), 1.0]));
            let du = chi_u.max_coeff_diff(&want_u);
            worst_u = worst_u.max(du);
            assert!(du <= 1e-9, "chi_U gap {du:e} at ({p},{q})");

            let s = symmetrize(&c0)
                .unwrap()
                .matrix()
                .direct_sum(symmetrize(&c1).unwrap().matrix());
            let chi_s = charpoly(&s).unwrap();
            let want_s = fp(&[-1.0, 1.0])
                .pow(2)
                .mul(&fp(&[-p, 1.0]))
                .mul(&fp(&[p - q, 1.0]));
            let ds = chi_s.max_coeff_diff(&want_s);
            worst_s = worst_s.max(ds);
            assert!(ds <= 1e-9, "chi_S gap {ds:e} at ({p},{q})");
        }
    }
    println!("AC-02 PASS closed-form characteristic polynomials (worst U {worst_u:.3e}, S {worst_s:.3e})");
}

#[test]
fn ac03_factorization_identity() {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for sites in [2usize, 3] {
        for &p in &grid_11() {
            for &q in &grid_11() {
                let (c0, c1) = dk_chains(sites, p, q);
                for chain in [&c0, &c1] {
                    let gap = verify_factorization(chain, 1e-9)
                        .unwrap()
                        .max_coefficient_gap;
                    worst = worst.max(gap);
                    assert!(gap <= 1e-9, "gap {gap:e} at sites={sites}, ({p},{q})");
                }
            }
        }
    }
    let mut rng = seeded(0xFAC7);
    for k in 0..100 {
        let chain = random_chain(&mut rng, 8);
        let gap = verify_factorization(&chain, 1e-9)
            .unwrap()
            .max_coefficient_gap;
        worst = worst.max(gap);
        assert!(gap <= 1e-9, "gap {gap:e} on random chain {k}");
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 60.0, "took {elapsed:?}");
    println!("AC-03 PASS factorization gap <= 1e-9 on grids + 100 random chains (worst {worst:.3e}, {elapsed:?})");
}

#[test]
fn ac04_spectrum_reports() {
    // Ten random points on the three-site model, both components.
    let mut rng = seeded(0x5bec);
    for _ in 0..10 {
        let p: f64 = rng.random();
        let q: f64 = rng.random();
        let (c0, c1) = dk_chains(3, p, q);
        for chain in [&c0, &c1] {
            let m = chain.graph().edge_count();
            let report = unit_circle_spectrum(&symmetrize(chain).unwrap(), m, 1e-9).unwrap();
            let direct = common::dense_eigenvalues(quantize(chain).unwrap().matrix(), 0xE2);
            assert_multiset_close(&report.eigenvalues, &direct, 1e-9, "three-site spectrum");
        }
    }
    // Two-site model has m = 1 < n = 2: the cancellation path.
    let (c0, c1) = dk_chains(2, 0.42, 0.77);
    for chain in [&c0, &c1] {
        let report = unit_circle_spectrum(&symmetrize(chain).unwrap(), 1, 1e-9).unwrap();
        assert_eq!(report.cancelled_plus_one, 1);
        let direct = common::dense_eigenvalues(quantize(chain).unwrap().matrix(), 0xE3);
        assert_multiset_close(&report.eigenvalues, &direct, 1e-9, "two-site spectrum");
    }
    println!("AC-04 PASS spectrum reports match dense eigensolves (incl. m < n cancellation)");
}

#[test]
fn ac05_three_site_discrepancy() {
    let (c0, c1) = dk_chains(3, 1.0 / 3.0, 0.5);

    let chi_p1 = charpoly(&c0.transition_matrix()).unwrap();
    let chi_s1 = charpoly(symmetrize(&c0).unwrap().matrix()).unwrap();
    let agree = chi_p1.max_coeff_diff(&chi_s1);
    assert!(agree <= 1e-10, "block-0 polynomials differ by {agree:e}");

    let chi_p2 = charpoly(&c1.transition_matrix()).unwrap();
    let chi_s2 = charpoly(symmetrize(&c1).unwrap().matrix()).unwrap();
    let differ = chi_p2.max_coeff_diff(&chi_s2);
    assert!(differ > 1e-6, "block-1 polynomials unexpectedly close: {differ:e}");

    println!("AC-05 PASS block-0 match {agree:.3e}, block-1 discrepancy {differ:.3e}");
}

#[test]
fn ac06_half_zero_absolute_zeta() {
    let f = combined_reciprocal_exact(0.5, 0.0);
    let form = to_cyclotomic_form(&f).unwrap();
    assert_eq!(form.ell(), 0);
    assert!(form.m_list().is_empty());
    assert_eq!(form.n_list(), &[2, 6]);

    let e = expand(&form);
    assert_eq!(e.weight, -8);
    assert_eq!(e.sign, 1);
    assert_eq!(e.critical_s, Some(Rat::from_int(-4)));
    // zeta_f(-4) = Gamma_2(4, (2, 6)): exactly one factor, argument
    // -4 + 8 = 4, exponent +1, frequency vector (2, 6).
    assert_eq!(e.gamma_terms.len(), 1);
    assert_eq!(e.gamma_terms[0].shift, Rat::from_int(8));
    assert_eq!(e.gamma_terms[0].exponent, 1);
    assert_eq!(e.omega, vec![2, 6]);
    println!("AC-06 PASS (p,q)=(1/2,0): n-list [2,6], D=-8, C=1, critical s=-4");
}

#[test]
fn ac07_zero_half_absolute_zeta() {
    let f = combined_reciprocal_exact(0.0, 0.5);
    let form = to_cyclotomic_form(&f).unwrap();
    assert_eq!(form.ell(), 0);
    assert_eq!(form.m_list(), &[3]);
    assert_eq!(form.n_list(), &[1, 4, 6]);

    let e = expand(&form);
    assert_eq!(e.weight, -8);
    assert_eq!(e.critical_s, Some(Rat::from_int(-4)));
    // zeta_f(-4) = Gamma_3(4, (1,4,6)) / Gamma_3(7, (1,4,6)).
    let mut terms: Vec<(Rat, i8)> = e
        .gamma_terms
        .iter()
        .map(|t| (t.shift.clone(), t.exponent))
        .collect();
    terms.sort();
    assert_eq!(terms, vec![(Rat::from_int(8), 1), (Rat::from_int(11), -1)]);
    assert_eq!(e.omega, vec![1, 4, 6]);
    println!("AC-07 PASS (p,q)=(0,1/2): m=[3], n=[1,4,6], zeta_f(-4) = Gamma_3(4)/Gamma_3(7)");
}

#[test]
fn ac08_gamma_numerics() {
    // Order one against the classical gamma function.
    let om1 = OmegaVector::from_ints(&[1]).unwrap();
    let mut worst = 0.0f64;
    for x in [0.5, 1.0, 2.0, 3.7] {
        let got = multi_gamma(x, &om1).unwrap();
        let want = ln_gamma(x).exp() / (2.0 * std::f64::consts::PI).sqrt();
        let rel = (got - want).abs() / want.abs();
        worst = worst.max(rel);
        assert!(rel <= 1e-7, "x={x}: rel {rel:e}");
    }
    // Ladder identity at 20 random points.
    let mut rng = seeded(0x1adde7);
    let mut worst_ladder = 0.0f64;
    for _ in 0..20 {
        let x = 0.2 + 4.8 * rng.random::<f64>();
        let w1 = 0.5 + 5.5 * rng.random::<f64>();
        let w2 = 0.5 + 5.5 * rng.random::<f64>();
        let om2 = OmegaVector::new(vec![w1, w2]).unwrap();
        let omi = OmegaVector::new(vec![w1]).unwrap();
        let lhs = multi_gamma(x + w2, &om2).unwrap() * multi_gamma(x, &omi).unwrap();
        let rhs = multi_gamma(x, &om2).unwrap();
        let rel = (lhs - rhs).abs() / rhs.abs();
        worst_ladder = worst_ladder.max(rel);
        assert!(rel <= 1e-7, "ladder at x={x}, (w1,w2)=({w1},{w2}): rel {rel:e}");
    }
    println!("AC-08 PASS gamma numerics (classical rel {worst:.3e}, ladder rel {worst_ladder:.3e})");
}

#[test]
fn ac09_mellin_cross_check() {
    let start = Instant::now();
    let f = combined_reciprocal_exact(0.5, 0.0);
    let form = to_cyclotomic_form(&f).unwrap();
    let om = OmegaVector::from_ints(&[2, 6]).unwrap();
    let mut worst = 0.0f64;
    for s in [1.0, 2.0] {
        let z = mellin_transform(&form, 3.0, s).unwrap();
        let lattice = multi_zeta(Complex64::new(3.0, 0.0), s + 8.0, &om).unwrap().re;
        let diff = (z - lattice).abs();
        worst = worst.max(diff);
        assert!(diff <= 1e-6, "s={s}: |{z} - {lattice}| = {diff:e}");
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 30.0, "took {elapsed:?}");
    println!("AC-09 PASS Mellin quadrature vs lattice sums (worst {worst:.3e}, {elapsed:?})");
}

#[test]
fn ac10_functional_equations() {
    let mut worst = 0.0f64;
    for (p, q) in [(0.5, 0.0), (0.0, 0.5)] {
        let f = combined_reciprocal_exact(p, q);
        let e = expand(&to_cyclotomic_form(&f).unwrap());
        for s in [-3.0, -5.0] {
            let r = functional_equation_residual(&e, s).unwrap();
            worst = worst.max(r);
            assert!(r <= 1e-5, "residual {r:e} at (p,q)=({p},{q}), s={s}");
        }
    }
    println!("AC-10 PASS functional equation residuals <= 1e-5 (worst {worst:.3e})");
}

#[test]
fn ac11_sampler_total_variation() {
    let op = build_dk_local(&DkParams::new(0.5, 0.5).unwrap());
    let global = global_from_local(&op, 2).unwrap();
    let samples = 100_000usize;
    let mut worst = 0.0f64;
    for init_idx in 0..4usize {
        let init = Configuration::from_index(2, init_idx).unwrap();
        let mut counts = [0usize; 4];
        for k in 0..samples {
            let seed = 0xD00D_0000 + (init_idx * samples + k) as u64;
            let traj = sample_trajectory(&op, &init, 1, seed).unwrap();
            counts[traj[1].index()] += 1;
        }
        let tv: f64 = (0..4)
            .map(|state| {
                let emp = counts[state] as f64 / samples as f64;
                (emp - global.matrix()[(state, init_idx)]).abs()
            })
            .sum::<f64>()
            * 0.5;
        worst = worst.max(tv);
        assert!(tv <= 0.01, "TV {tv} from init {init}");
    }
    println!("AC-11 PASS single-step empirical law (worst TV {worst:.4})");
}

#[test]
fn ac12_palindromic_reciprocals() {
    for sites in [2usize, 3] {
        for &p in &grid_11() {
            for &q in &grid_11() {
                let (c0, c1) = dk_chains(sites, p, q);
                let r0 = reciprocal_zeta(&quantize(&c0).unwrap()).unwrap();
                let r1 = reciprocal_zeta(&quantize(&c1).unwrap()).unwrap();
                assert!(
                    palindromic_sign(&r0, 1e-9).is_some(),
                    "component 0 not palindromic at sites={sites}, ({p},{q})"
                );
                assert!(
                    palindromic_sign(&r1, 1e-9).is_some(),
                    "component 1 not palindromic at sites={sites}, ({p},{q})"
                );
                let combined = r0.mul(&r1);
                assert!(palindromic_sign(&combined, 1e-9).is_some());
            }
        }
    }
    println!("AC-12 PASS det(I - uU) palindromic up to sign across both grids");
}
