//! Absolute Hurwitz zeta by direct Mellin quadrature.
//!
//! Z_f(w, s) = (1/Gamma(w)) int_0^inf f(e^t) e^(-st) t^(w-1) dt for a
//! cyclotomic-product f. The integrand behaves like t^(w-1+a-b) at the
//! origin and decays like e^((deg f - s) t) at infinity, so the transform
//! needs w above the pole order b and s above deg f. This route is fully
//! independent of the lattice-sum ladder and cross-checks it.

use super::CyclotomicForm;
use crate::error::{Error, Result};
use crate::scalar::RealScalar;
use statrs::function::gamma::gamma;

/// Integrand threshold treated as zero when choosing the upper cutoff.
const CUTOFF_EPS: f64 = 1e-18;

fn adaptive_simpson(
    g: &impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    fa: f64,
    fb: f64,
    fm: f64,
    whole: f64,
    eps: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = g(lm);
    let frm = g(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * eps {
        return left + right + delta / 15.0;
    }
    adaptive_simpson(g, a, m, fa, fm, flm, left, eps * 0.5, depth - 1)
        + adaptive_simpson(g, m, b, fm, fb, frm, right, eps * 0.5, depth - 1)
}

fn integrate(g: &impl Fn(f64) -> f64, a: f64, b: f64, eps: f64) -> f64 {
    let fa = g(a);
    let fb = g(b);
    let fm = g(0.5 * (a + b));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    adaptive_simpson(g, a, b, fa, fb, fm, whole, eps, 48)
}

/// Evaluates Z_f(w, s) by adaptive quadrature.
pub fn mellin_transform(form: &CyclotomicForm, w: f64, s: f64) -> Result<f64> {
    let a = form.a();
    let b = form.b();
    if w <= b as f64 {
        return Err(Error::Domain(format!(
            "transform needs w > {b} (order of the t = 0 singularity), got {w}"
        )));
    }
    let deg_f = form.deg_f().to_f64();
    if s <= deg_f {
        return Err(Error::Domain(format!(
            "transform needs s > deg f = {deg_f}, got {s}"
        )));
    }
    let ell_half = form.ell() as f64 / 2.0;
    let kappa = w - 1.0 + a as f64 - b as f64;
    // Leading constant of f(e^t) t^(b-a) at the origin.
    let c0: f64 = form.m_list().iter().map(|&m| m as f64).product::<f64>()
        / form.n_list().iter().map(|&n| n as f64).product::<f64>();

    // log f(e^t) for t > 0; products in log space resist overflow.
    let log_f = move |t: f64| -> f64 {
        let mut acc = ell_half * t;
        for &m in form.m_list() {
            acc += (m as f64 * t).exp_m1().ln();
        }
        for &n in form.n_list() {
            acc -= (n as f64 * t).exp_m1().ln();
        }
        acc
    };
    let g = move |t: f64| -> f64 {
        if t <= 0.0 {
            return if kappa > 0.0 { 0.0 } else { c0 };
        }
        (log_f(t) - s * t + (w - 1.0) * t.ln()).exp()
    };

    // Upper cutoff where the exponential decay has flattened the integrand.
    let mut upper = 1.0f64;
    while g(upper) > CUTOFF_EPS && upper < 1e4 {
        upper *= 1.25;
    }

    let (head, lower) = if kappa >= 0.0 {
        (0.0, 0.0)
    } else {
        // Integrable singularity t^kappa with -1 < kappa < 0: peel an
        // analytic head c0 t^kappa (1 + c1 t) on [0, eps].
        let eps: f64 = 1e-5;
        let c1 = ell_half + 0.5 * (form.sum_m() - form.sum_n()) as f64 - s;
        let head = c0
            * (eps.powf(kappa + 1.0) / (kappa + 1.0)
                + c1 * eps.powf(kappa + 2.0) / (kappa + 2.0));
        (head, eps)
    };

    let rough = integrate(&g, lower, upper, 1e-6);
    let eps_abs = 1e-11 * (1.0 + rough.abs());
    let integral = head + integrate(&g, lower, upper, eps_abs);
    Ok(integral / gamma(w))
}
