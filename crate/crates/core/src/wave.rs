//! Wave polynomials, generalized wave polynomials and formal powers.

use crate::bicomplex::Bicomplex;
use crate::error::Result;
use crate::grid::{BasisFamily, GridFunction};
use num_complex::Complex64;

/// Exact binomial coefficient as a float.
pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as f64
}

/// `p_n(x, t)`: `p_{2m-1} + j p_{2m} = (x + j t)^m`.
pub fn wave_polynomial(n: usize, x: f64, t: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let m = n.div_ceil(2);
    let parity = if n % 2 == 1 { 0 } else { 1 };
    (parity..=m)
        .step_by(2)
        .map(|k| binomial(m, k) * x.powi((m - k) as i32) * t.powi(k as i32))
        .sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Which {
    U,
    V,
}

/// `(sum_{even k} C(m,k) vals[m-k] t^k, sum_{odd k} C(m,k) vals[m-k] t^k)`.
pub fn split_sums(vals: &[Complex64], m: usize, t: f64) -> (Complex64, Complex64) {
    let mut even = Complex64::new(0.0, 0.0);
    let mut odd = Complex64::new(0.0, 0.0);
    let mut tk = 1.0;
    for k in 0..=m {
        let term = vals[m - k] * (binomial(m, k) * tk);
        if k % 2 == 0 {
            even += term;
        } else {
            odd += term;
        }
        tk *= t;
    }
    (even, odd)
}

/// `u_0..u_{2 m_max}` (or `v_*`) at `(x, t)`.
pub fn generalized_wave_polynomials(fam: &BasisFamily, m_max: usize, x: f64, t: f64, which: Which) -> Result<Vec<Complex64>> {
    fam.require_order(m_max)?;
    let list = match which {
        Which::U => &fam.phi[..=m_max],
        Which::V => &fam.psi[..=m_max],
    };
    let vals = BasisFamily::eval_all(list, x);
    Ok(polynomials_from_values(&vals, m_max, t))
}

/// Generalized wave polynomials from already interpolated `phi_k(x)` or `psi_k(x)`.
pub fn polynomials_from_values(vals: &[Complex64], m_max: usize, t: f64) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(2 * m_max + 1);
    out.push(vals[0]);
    for m in 1..=m_max {
        let (even, odd) = split_sums(vals, m, t);
        out.push(even);
        out.push(odd);
    }
    out
}

/// Single `u_n(x, t)` or `v_n(x, t)`; needs `n <= 2 * order`.
pub fn generalized_wave_polynomial(fam: &BasisFamily, n: usize, x: f64, t: f64, which: Which) -> Result<Complex64> {
    let m = n.div_ceil(2);
    Ok(generalized_wave_polynomials(fam, m, x, t, which)?[n])
}

/// Formal powers `Z^(n)(a, 0; x + j t)` attached to a basis family.
#[derive(Debug, Clone, Copy)]
pub struct FormalPowerEvaluator<'a> {
    pub family: &'a BasisFamily,
    pub n_max: usize,
}

impl<'a> FormalPowerEvaluator<'a> {
    pub fn new(family: &'a BasisFamily) -> Self {
        FormalPowerEvaluator { family, n_max: family.order() }
    }

    /// Evaluation from the recursive integrals `X`, `X~`.
    pub fn eval(&self, n: usize, a: Bicomplex, x: f64, t: f64) -> Result<Bicomplex> {
        formal_power(self.family, n, a, x, t)
    }

    /// Evaluation through generalized wave polynomials.
    pub fn eval_via_wave(&self, n: usize, a: Bicomplex, x: f64, t: f64) -> Result<Bicomplex> {
        formal_power_via_wave(self.family, n, a, x, t)
    }
}

pub fn formal_power(fam: &BasisFamily, n: usize, a: Bicomplex, x: f64, t: f64) -> Result<Bicomplex> {
    fam.require_order(n)?;
    let xs = BasisFamily::eval_all(&fam.x[..=n], x);
    let xts = BasisFamily::eval_all(&fam.x_tilde[..=n], x);
    let (first, second): (&[Complex64], &[Complex64]) = if n % 2 == 1 { (&xs, &xts) } else { (&xts, &xs) };
    let (a1, b1) = split_sums(first, n, t);
    let (a2, b2) = split_sums(second, n, t);
    let real = a.re * a1 + a.im * b2;
    let imag = a.re * b1 + a.im * a2;
    let f = fam.f.eval(x);
    Ok(Bicomplex::new(f * real, imag / f))
}

pub fn formal_power_via_wave(fam: &BasisFamily, n: usize, a: Bicomplex, x: f64, t: f64) -> Result<Bicomplex> {
    fam.require_order(n)?;
    let u = generalized_wave_polynomials(fam, n, x, t, Which::U)?;
    let v = generalized_wave_polynomials(fam, n, x, t, Which::V)?;
    if n == 0 {
        return Ok(Bicomplex::new(a.re * u[0], a.im * v[0]));
    }
    Ok(Bicomplex::new(
        a.re * u[2 * n - 1] + a.im * u[2 * n],
        a.re * v[2 * n] + a.im * v[2 * n - 1],
    ))
}

/// Finite-difference residual of `d_zbar W - (f'/2f) conj(W)` with
/// `d_zbar = (d_x - j d_t)/2`, using central differences of step `step`.
pub fn vekua_defect<F: Fn(f64, f64) -> Bicomplex>(w: F, f: &GridFunction, x: f64, t: f64, step: f64) -> f64 {
    let wx = (w(x + step, t) - w(x - step, t)) * (0.5 / step);
    let wt = (w(x, t + step) - w(x, t - step)) * (0.5 / step);
    let dzbar = (wx - Bicomplex::J * wt) * 0.5;
    let coef = f.derivative_at(x) / (f.eval(x) * 2.0);
    (dzbar - w(x, t).conj() * coef).norm()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{build_basis_family, FamilyOptions, GridFunction};
    use proptest::prelude::*;

    fn unit_family(order: usize) -> BasisFamily {
        let f = GridFunction::constant(2.0, 401, Complex64::new(1.0, 0.0)).unwrap();
        build_basis_family(&f, order, &FamilyOptions::default()).unwrap()
    }

    fn cosh_family(order: usize) -> BasisFamily {
        let f = GridFunction::from_real_fn(1.0, 801, |x| x.cosh() + 0.3 * x.sinh()).unwrap();
        build_basis_family(&f, order, &FamilyOptions::default()).unwrap()
    }

    fn bc(a: f64, b: f64, c: f64, d: f64) -> Bicomplex {
        Bicomplex::new(Complex64::new(a, b), Complex64::new(c, d))
    }

    #[test]
    fn small_wave_polynomials() {
        assert_eq!(wave_polynomial(0, 3.0, 4.0), 1.0);
        assert_eq!(wave_polynomial(1, 3.0, 4.0), 3.0);
        assert_eq!(wave_polynomial(2, 3.0, 4.0), 4.0);
        assert_eq!(wave_polynomial(3, 2.0, 1.0), 5.0);
        assert_eq!(wave_polynomial(4, 2.0, 1.0), 4.0);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10.0);
        assert_eq!(binomial(60, 30), 118264581564861424.0);
        assert_eq!(binomial(3, 4), 0.0);
    }

    proptest! {
        #[test]
        fn wave_polynomials_are_bicomplex_powers(x in -2.0..2.0f64, t in -2.0..2.0f64, m in 1usize..9) {
            let z = Bicomplex::new(Complex64::new(x, 0.0), Complex64::new(t, 0.0)).powu(m as u32);
            let p = wave_polynomial(2 * m - 1, x, t);
            let q = wave_polynomial(2 * m, x, t);
            prop_assert!((z.re.re - p).abs() < 1e-10 * (1.0 + p.abs()));
            prop_assert!((z.im.re - q).abs() < 1e-10 * (1.0 + q.abs()));
        }

        #[test]
        fn parity_of_generalized_wave_polynomials(x in -1.0..1.0f64, t in 0.0..1.0f64, n in 1usize..12) {
            let fam = cosh_family(6);
            let t = t * x.abs();
            let a = generalized_wave_polynomial(&fam, n, x, t, Which::U).unwrap();
            let b = generalized_wave_polynomial(&fam, n, x, -t, Which::U).unwrap();
            let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
            prop_assert!((a - b * sign).norm() < 1e-12);
        }

        #[test]
        fn two_routes_agree(n in 0usize..11, x in -1.0..1.0f64, s in -1.0..1.0f64,
                            a in -2.0..2.0f64, b in -2.0..2.0f64, c in -2.0..2.0f64, d in -2.0..2.0f64) {
            let fam = cosh_family(10);
            let t = s * x.abs();
            let alpha = bc(a, b, c, d);
            let z1 = formal_power(&fam, n, alpha, x, t).unwrap();
            let z2 = formal_power_via_wave(&fam, n, alpha, x, t).unwrap();
            prop_assert!((z1 - z2).norm() < 1e-12);
        }
    }

    #[test]
    fn unit_family_collapses_to_powers() {
        let fam = unit_family(8);
        let alpha = bc(0.4, -1.0, 2.0, 0.5);
        for &(x, t) in &[(0.5, 0.2), (-1.7, 1.1), (1.9, -1.9)] {
            for n in 0..=8 {
                let u = generalized_wave_polynomial(&fam, 2 * n, x, t, Which::U).unwrap();
                let p = wave_polynomial(2 * n, x, t);
                assert!((u.re - p).abs() < 1e-11 * (1.0 + p.abs()));
                let z = formal_power(&fam, n, alpha, x, t).unwrap();
                let exact = alpha * Bicomplex::new(Complex64::new(x, 0.0), Complex64::new(t, 0.0)).powu(n as u32);
                assert!((z - exact).norm() < 1e-10 * (1.0 + exact.norm()));
            }
        }
    }

    #[test]
    fn zeroth_power() {
        let fam = cosh_family(2);
        let alpha = bc(1.5, 0.0, -0.5, 0.2);
        let z = formal_power(&fam, 0, alpha, 0.7, 0.3).unwrap();
        let f = fam.f_at(0.7);
        assert!((z.re - alpha.re * f).norm() < 1e-14);
        assert!((z.im - alpha.im / f).norm() < 1e-14);
    }

    #[test]
    fn real_and_imaginary_parts_are_wave_polynomials() {
        let fam = cosh_family(6);
        for n in 1..=6 {
            let z = formal_power(&fam, n, Bicomplex::ONE, 0.6, -0.35).unwrap();
            let u = generalized_wave_polynomial(&fam, 2 * n - 1, 0.6, -0.35, Which::U).unwrap();
            let v = generalized_wave_polynomial(&fam, 2 * n, 0.6, -0.35, Which::V).unwrap();
            assert!((z.re - u).norm() < 1e-13);
            assert!((z.im - v).norm() < 1e-13);
        }
    }

    #[test]
    fn formal_powers_solve_the_vekua_equation() {
        let fam = cosh_family(10);
        for n in 0..=10 {
            for &(x, t) in &[(0.5, 0.1), (-0.3, 0.2), (0.8, -0.6)] {
                let step = 1e-4;
                let r = vekua_defect(|x, t| formal_power(&fam, n, bc(1.0, 0.2, -0.7, 0.1), x, t).unwrap(), &fam.f, x, t, step);
                assert!(r < 1e-6, "n={n} residual {r}");
            }
        }
    }

    #[test]
    fn leading_term_near_origin() {
        let fam = cosh_family(5);
        let alpha = bc(1.0, 0.0, 0.5, 0.0);
        for n in 1..=5 {
            let ratio = |r: f64| {
                let (x, t) = (r * 0.8, r * 0.3);
                let z = Bicomplex::new(Complex64::new(x, 0.0), Complex64::new(t, 0.0)).powu(n as u32);
                (formal_power(&fam, n, alpha, x, t).unwrap() - alpha * z).norm() / r.powi(n as i32)
            };
            assert!(ratio(1e-2) < 0.2 * ratio(1e-1) + 1e-9, "n={n}");
        }
    }

    #[test]
    fn out_of_range_order_is_rejected() {
        let fam = unit_family(3);
        assert!(generalized_wave_polynomial(&fam, 7, 0.1, 0.0, Which::U).is_err());
        assert!(formal_power(&fam, 4, Bicomplex::ONE, 0.1, 0.0).is_err());
    }
}
