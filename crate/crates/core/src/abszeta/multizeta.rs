//! Multiple Hurwitz zeta, gamma, and sine functions of small order.
//!
//! zeta_r(s, x, w) sums (n1 w1 + ... + nr wr + x)^(-s) over the nonnegative
//! lattice; it converges for Re(s) > r and continues meromorphically with
//! simple poles at s = 1, ..., r. The evaluation peels one frequency at a
//! time with Euler-Maclaurin: head terms, the integral tail
//! zeta_{r-1}(s-1, X) / ((s-1) w), half correction, and Bernoulli
//! corrections through B10, with the shift count chosen adaptively so the
//! first omitted term stays below the accuracy floor. Derivatives in x
//! lower to s+1 evaluations throughout, so no numerical differentiation
//! enters the ladder itself.

use crate::error::{Error, Result};
use num_complex::Complex64;

/// Refuse evaluation closer than this to a pole of the ladder.
pub const POLE_PROXIMITY: f64 = 1e-8;

/// Accuracy floor targeted by the adaptive shift count.
const EM_FLOOR: f64 = 1e-13;

/// B_{2k} / (2k)! for k = 1..5, then B12/12! for the error estimate.
const BERN_OVER_FACT: [f64; 5] = [
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30_240.0,
    -1.0 / 1_209_600.0,
    1.0 / 47_900_160.0,
];
const BERN12_OVER_FACT: f64 = -691.0 / (2730.0 * 479_001_600.0);

/// Positive frequency vector (w_1, ..., w_r); order 0 is allowed and gives
/// the bare power x^(-s).
#[derive(Debug, Clone, PartialEq)]
pub struct OmegaVector {
    omegas: Vec<f64>,
}

impl OmegaVector {
    pub fn new(omegas: Vec<f64>) -> Result<Self> {
        if omegas.iter().any(|w| !w.is_finite() || *w <= 0.0) {
            return Err(Error::Domain("frequencies must be positive reals".into()));
        }
        Ok(OmegaVector { omegas })
    }

    pub fn from_ints(omegas: &[usize]) -> Result<Self> {
        Self::new(omegas.iter().map(|&v| v as f64).collect())
    }

    pub fn order(&self) -> usize {
        self.omegas.len()
    }

    pub fn omegas(&self) -> &[f64] {
        &self.omegas
    }

    pub fn sum(&self) -> f64 {
        self.omegas.iter().sum()
    }

    /// Ascending copy; summation peels frequencies from the back, and
    /// peeling the largest first shortens the Euler-Maclaurin heads.
    fn sorted(&self) -> Vec<f64> {
        let mut v = self.omegas.clone();
        v.sort_by(|a, b| a.partial_cmp(b).unwrap());
        v
    }
}

/// Multiple Hurwitz zeta at complex s, real x > 0.
pub fn multi_zeta(s: Complex64, x: f64, omega: &OmegaVector) -> Result<Complex64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("x must be positive, got {x}")));
    }
    let r = omega.order();
    for j in 1..=r {
        let dist = (s - j as f64).norm();
        if dist < POLE_PROXIMITY {
            return Err(Error::Pole {
                s: s.re,
                pole: j as f64,
                dist,
            });
        }
    }
    let sorted = omega.sorted();
    // The per-term Euler-Maclaurin split degenerates (0 * pole) at
    // nonpositive integers for order >= 2; the function itself is regular
    // there, so evaluate by a symmetric offset.
    if r >= 2 && s.im.abs() < 1e-12 && s.re <= 0.5 && (s.re - s.re.round()).abs() < 1e-12 {
        let d = 1e-6;
        let a = zeta_rec(s + d, x, &sorted);
        let b = zeta_rec(s - d, x, &sorted);
        return Ok((a + b) * 0.5);
    }
    Ok(zeta_rec(s, x, &sorted))
}

/// Recursive Euler-Maclaurin evaluation; `omega` ascending.
fn zeta_rec(s: Complex64, x: f64, omega: &[f64]) -> Complex64 {
    let Some((&w, rest)) = omega.split_last() else {
        // x^(-s)
        return (-s * x.ln()).exp();
    };
    let mut shifts = 8usize;
    loop {
        let mut head = Complex64::new(0.0, 0.0);
        for n in 0..shifts {
            head += zeta_rec(s, x + n as f64 * w, rest);
        }
        let xt = x + shifts as f64 * w;
        let tail = zeta_rec(s - 1.0, xt, rest) / ((s - 1.0) * w) + zeta_rec(s, xt, rest) * 0.5;

        let mut corr = Complex64::new(0.0, 0.0);
        let mut rising = Complex64::new(1.0, 0.0);
        let mut j = 0u32; // rising = (s)_j
        for (k, b) in BERN_OVER_FACT.iter().enumerate() {
            let target = 2 * (k as u32 + 1) - 1;
            while j < target {
                rising *= s + j as f64;
                j += 1;
            }
            let wpow = w.powi(target as i32);
            corr += rising * zeta_rec(s + target as f64, xt, rest) * (*b * wpow);
        }
        // First omitted term (B12) bounds the truncation error.
        while j < 11 {
            rising *= s + j as f64;
            j += 1;
        }
        let est =
            (rising * zeta_rec(s + 11.0, xt, rest) * (BERN12_OVER_FACT * w.powi(11))).norm();
        let value = head + tail + corr;
        if est <= EM_FLOOR * value.norm().max(1.0) || shifts >= 1 << 14 {
            return value;
        }
        shifts *= 2;
    }
}

/// d/ds zeta_r(s, x, w) at s = 0, central differences with one Richardson
/// extrapolation at h = 1e-4.
pub fn multi_zeta_ds0(x: f64, omega: &OmegaVector) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("x must be positive, got {x}")));
    }
    let sorted = omega.sorted();
    let eval = |s: f64| zeta_rec(Complex64::new(s, 0.0), x, &sorted).re;
    let h = 1e-4;
    let d1 = (eval(h) - eval(-h)) / (2.0 * h);
    let d2 = (eval(h / 2.0) - eval(-h / 2.0)) / h;
    Ok((4.0 * d2 - d1) / 3.0)
}

/// log of the multiple gamma function of order r.
pub fn log_multi_gamma(x: f64, omega: &OmegaVector) -> Result<f64> {
    multi_zeta_ds0(x, omega)
}

/// Multiple gamma: exp of the s-derivative of zeta_r at s = 0. Order 0
/// reduces to 1/x.
pub fn multi_gamma(x: f64, omega: &OmegaVector) -> Result<f64> {
    Ok(log_multi_gamma(x, omega)?.exp())
}

/// Multiple sine on the principal window 0 < x < w_1 + ... + w_r:
/// Gamma_r(x)^(-1) * Gamma_r(sum - x)^((-1)^r).
pub fn multi_sine(x: f64, omega: &OmegaVector) -> Result<f64> {
    let total = omega.sum();
    if !(x > 0.0 && x < total) {
        return Err(Error::Window(format!(
            "multiple sine needs 0 < x < {total}, got {x}"
        )));
    }
    let lg_x = log_multi_gamma(x, omega)?;
    let lg_refl = log_multi_gamma(total - x, omega)?;
    let sign = if omega.order() % 2 == 0 { 1.0 } else { -1.0 };
    Ok((sign * lg_refl - lg_x).exp())
}
