//! Exact characteristic function of `-u'' + e^x u = omega^2 u`, `u(0) = u(pi) = 0`.
//!
//! With `nu = 2 i omega` the eigenvalues are the zeros of
//! `I_nu(2) I_{-nu}(2 e^{pi/2}) - I_{-nu}(2) I_nu(2 e^{pi/2})`, which up to a positive
//! factor is `Im(e^{-i pi omega} F(1) conj(F(e^pi)))` with
//! `F(w) = sum_k w^k / (k! (1 + nu)_k)`.

use num_complex::Complex64;
use std::f64::consts::PI;

fn reduced_series(w: f64, nu: Complex64) -> Complex64 {
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    for k in 1..400 {
        term *= w / (k as f64 * (nu + k as f64));
        sum += term;
        if term.norm() <= 1e-18 * sum.norm() {
            break;
        }
    }
    sum
}

/// Sign-carrying characteristic function; its positive zeros are the exact `omega_n`.
pub fn exp_potential_characteristic(omega: f64) -> f64 {
    let nu = Complex64::new(0.0, 2.0 * omega);
    let a = reduced_series(1.0, nu);
    let c = reduced_series(PI.exp(), nu);
    let phase = Complex64::from_polar(1.0, -PI * omega);
    (phase * a * c.conj()).im
}

/// Exact `omega_n^2` near a guess, by bisection on a bracket of half-width `width`.
pub fn exp_potential_eigenvalue(omega_sq_guess: f64, width: f64) -> Option<f64> {
    let w0 = omega_sq_guess.sqrt();
    let (mut lo, mut hi) = (w0 - width, w0 + width);
    let mut flo = exp_potential_characteristic(lo);
    if flo.signum() == exp_potential_characteristic(hi).signum() {
        return None;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = exp_potential_characteristic(mid);
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    let w = 0.5 * (lo + hi);
    Some(w * w)
}
