//! Sine moments `int_{-x}^{x} t^k sin(w t) dt` through `E_k(z) = int_0^1 s^k e^{z s} ds`.

use num_complex::Complex64;

/// `sin(a b)` and `cos(a b)` with the rounding error of the product folded back in.
pub(crate) fn sin_cos_of_product(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let e = a.mul_add(b, -p);
    let (s, c) = p.sin_cos();
    (s + e * c, c - e * s)
}

/// `E_0..=E_kmax` at `z = i theta`, where `theta = omega x`.
///
/// Upward recurrence `E_k = (e^z - k E_{k-1}) / z` for `k <= |theta|`, downward
/// recurrence `E_{k-1} = (e^z - z E_k) / k` above it; each is stable in its range.
pub(crate) fn exp_moments(kmax: usize, omega: f64, x: f64) -> Vec<Complex64> {
    let theta = omega * x;
    let (s, c) = sin_cos_of_product(omega, x);
    let ez = Complex64::new(c, s);
    let z = Complex64::new(0.0, theta);
    let mut e = vec![Complex64::new(0.0, 0.0); kmax + 1];
    if theta == 0.0 {
        for (k, v) in e.iter_mut().enumerate() {
            *v = Complex64::new(1.0 / (k + 1) as f64, 0.0);
        }
        return e;
    }
    let split = (theta.abs().floor() as usize).min(kmax + 1);
    if split > 0 {
        e[0] = (ez - 1.0) / z;
        for k in 1..split.min(kmax + 1) {
            e[k] = (ez - e[k - 1] * k as f64) / z;
        }
    }
    if split <= kmax {
        let top = 2 * kmax.max(theta.abs().ceil() as usize) + 40;
        let mut cur = ez / (top + 1) as f64;
        for k in (split + 1..=top).rev() {
            let prev = (ez - z * cur) / k as f64;
            if k - 1 <= kmax {
                e[k - 1] = prev;
            }
            cur = prev;
        }
    }
    e
}

/// `int_{-x}^{x} t^k sin(omega t) dt`.
pub fn sine_moment(k: usize, omega: f64, x: f64) -> f64 {
    if k % 2 == 0 {
        return 0.0;
    }
    let e = exp_moments(k, omega, x);
    2.0 * x.powi(k as i32 + 1) * e[k].im
}

/// Odd moments `M_k` and their `omega`-derivatives `int t^{k+1} cos(omega t)`, indexed by `k`.
pub(crate) fn sine_moments_with_derivative(kmax: usize, omega: f64, x: f64) -> (Vec<f64>, Vec<f64>) {
    let e = exp_moments(kmax + 1, omega, x);
    let mut m = vec![0.0; kmax + 1];
    let mut dm = vec![0.0; kmax + 1];
    let mut xp = x * x;
    for k in (1..=kmax).step_by(2) {
        m[k] = 2.0 * xp * e[k].im;
        dm[k] = 2.0 * xp * x * e[k + 1].re;
        xp *= x * x;
    }
    (m, dm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::GaussLegendre;
    use proptest::prelude::*;

    fn quad(k: usize, omega: f64, x: f64) -> f64 {
        let panels = 4 + (omega * x).abs() as usize;
        GaussLegendre::new(20).integrate(-x, x, panels, |t| Complex64::new(t.powi(k as i32) * (omega * t).sin(), 0.0)).re
    }

    #[test]
    fn first_moment_closed_form() {
        for &(w, x) in &[(0.3f64, 1.0f64), (2.0, 1.5), (40.0, 3.0)] {
            let want = 2.0 * ((w * x).sin() - w * x * (w * x).cos()) / (w * w);
            assert!((sine_moment(1, w, x) - want).abs() < 1e-14 * want.abs().max(1.0));
        }
    }

    #[test]
    fn even_moments_vanish() {
        assert_eq!(sine_moment(0, 3.0, 1.0), 0.0);
        assert_eq!(sine_moment(4, 0.1, 2.0), 0.0);
    }

    #[test]
    fn third_moment_at_pi() {
        let pi = std::f64::consts::PI;
        assert!((sine_moment(3, 1.0, pi) - quad(3, 1.0, pi)).abs() < 1e-12);
    }

    #[test]
    fn zero_frequency_and_origin() {
        assert_eq!(sine_moment(5, 0.0, 2.0), 0.0);
        assert_eq!(sine_moment(5, 3.0, 0.0), 0.0);
    }

    #[test]
    fn derivative_moments() {
        let (w, x) = (7.3, 2.1);
        let (_, dm) = sine_moments_with_derivative(9, w, x);
        for k in (1..=9).step_by(2) {
            let want = GaussLegendre::new(20).integrate(-x, x, 12, |t| Complex64::new(t.powi(k as i32 + 1) * (w * t).cos(), 0.0)).re;
            assert!((dm[k] - want).abs() < 1e-11 * want.abs().max(1.0), "{k}");
        }
    }

    proptest! {
        #[test]
        fn matches_quadrature(k in 0usize..16, omega in 0.0f64..60.0, x in 0.0f64..3.2) {
            let k = 2 * k + 1;
            let want = quad(k, omega, x);
            let scale = 2.0 * x.powi(k as i32 + 1) / (k + 1) as f64;
            prop_assert!((sine_moment(k, omega, x) - want).abs() <= 1e-12 * scale.max(1e-300) + 1e-300);
        }

        #[test]
        fn odd_in_omega(k in 0usize..10, omega in 0.01f64..50.0, x in 0.1f64..3.0) {
            let k = 2 * k + 1;
            prop_assert!((sine_moment(k, omega, x) + sine_moment(k, -omega, x)).abs() < 1e-13 * x.powi(k as i32 + 1));
        }
    }
}
