//! Spectral parameter power series for `g'' - q g = lambda g`.

use crate::error::{Error, Result};
use crate::grid::{BasisFamily, GridFunction};
use num_complex::Complex64;

/// Non-vanishing solution of `f'' = q f` with `f(0) = 1`.
#[derive(Debug, Clone)]
pub struct ParticularSolution {
    pub f: GridFunction,
    /// `f'` at the nodes, as produced by the integrator.
    pub df: GridFunction,
    pub h: Complex64,
    /// Second solution `y2` with `y2(0) = 0`, `y2'(0) = 1`.
    pub y2: GridFunction,
    /// True when `y1` vanished and `f = y1 + i y2` was used instead.
    pub complexified: bool,
}

/// Default number of RK4 substeps per grid cell.
pub const DEFAULT_SUBSTEPS: usize = 4;

type State = [Complex64; 4];

fn rhs(q: Complex64, y: &State) -> State {
    [y[1], q * y[0], y[3], q * y[2]]
}

fn axpy(y: &State, k: &State, a: f64) -> State {
    [y[0] + k[0] * a, y[1] + k[1] * a, y[2] + k[2] * a, y[3] + k[3] * a]
}

fn rk4(q: &GridFunction, mut y: State, x0: f64, x1: f64, substeps: usize) -> State {
    let dx = (x1 - x0) / substeps as f64;
    for s in 0..substeps {
        let x = x0 + dx * s as f64;
        let qa = q.eval(x);
        let qm = q.eval(x + 0.5 * dx);
        let qb = q.eval(x + dx);
        let k1 = rhs(qa, &y);
        let k2 = rhs(qm, &axpy(&y, &k1, 0.5 * dx));
        let k3 = rhs(qm, &axpy(&y, &k2, 0.5 * dx));
        let k4 = rhs(qb, &axpy(&y, &k3, dx));
        for i in 0..4 {
            y[i] += (k1[i] + (k2[i] + k3[i]) * 2.0 + k4[i]) * (dx / 6.0);
        }
    }
    y
}

/// Integrates `y'' = q y` from the origin with `y1 = (1, 0)` and `y2 = (0, 1)`
/// using RK4 with `substeps` steps per cell.
pub fn particular_solution(q: &GridFunction, substeps: usize) -> Result<ParticularSolution> {
    let n = q.n_points();
    let substeps = substeps.max(1);
    let mut states: Vec<State> = vec![[Complex64::new(0.0, 0.0); 4]; n];
    let start: State = [
        Complex64::new(1.0, 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::new(1.0, 0.0),
    ];
    let (right0, left0) = if n % 2 == 1 { (n / 2, n / 2) } else { (n / 2, n / 2 - 1) };
    let first_right = if n % 2 == 1 { start } else { rk4(q, start, 0.0, q.node(right0), substeps) };
    let first_left = if n % 2 == 1 { start } else { rk4(q, start, 0.0, q.node(left0), substeps) };
    states[right0] = first_right;
    states[left0] = first_left;
    for i in right0 + 1..n {
        states[i] = rk4(q, states[i - 1], q.node(i - 1), q.node(i), substeps);
    }
    for i in (0..left0).rev() {
        states[i] = rk4(q, states[i + 1], q.node(i + 1), q.node(i), substeps);
    }
    if states.iter().flatten().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
        return Err(Error::Ivp("solution overflowed".into()));
    }
    let y1: Vec<Complex64> = states.iter().map(|s| s[0]).collect();
    let scale = y1.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let mut vanishes = y1.iter().any(|v| v.norm() <= 1e-12 * scale);
    let q_real = q.is_real(0.0);
    if q_real {
        vanishes |= y1.windows(2).any(|w| w[0].re.signum() != w[1].re.signum());
    }
    let b = q.b;
    let y2 = GridFunction { b, values: states.iter().map(|s| s[2]).collect() };
    if !vanishes {
        return Ok(ParticularSolution {
            f: GridFunction { b, values: y1 },
            df: GridFunction { b, values: states.iter().map(|s| s[1]).collect() },
            h: Complex64::new(0.0, 0.0),
            y2,
            complexified: false,
        });
    }
    if !q_real {
        let x = (0..n).find(|&i| y1[i].norm() <= 1e-12 * scale).map(|i| q.node(i)).unwrap_or(f64::NAN);
        return Err(Error::ComplexUnsupported(format!(
            "the solution with y(0)=1, y'(0)=0 vanishes near x = {x}; supply a non-vanishing f"
        )));
    }
    let i = Complex64::new(0.0, 1.0);
    Ok(ParticularSolution {
        f: GridFunction { b, values: states.iter().map(|s| s[0] + i * s[2]).collect() },
        df: GridFunction { b, values: states.iter().map(|s| s[1] + i * s[3]).collect() },
        h: i,
        y2,
        complexified: true,
    })
}

/// The two SPPS solutions and their derivatives on the grid.
#[derive(Debug, Clone)]
pub struct SppsSolutions {
    pub lambda: Complex64,
    pub m: usize,
    pub g1: GridFunction,
    pub g2: GridFunction,
    pub dg1: GridFunction,
    pub dg2: GridFunction,
}

/// `g1 = sum_{k<=M} lambda^k phi_{2k}/(2k)!`, `g2 = sum_{k<=M} lambda^k phi_{2k+1}/(2k+1)!`
/// and their derivatives. Requires family order `>= 2M + 1`.
pub fn spps_evaluate(fam: &BasisFamily, lambda: Complex64, m: usize) -> Result<SppsSolutions> {
    fam.require_order(2 * m + 1)?;
    let n = fam.n_points();
    let zero = Complex64::new(0.0, 0.0);
    let mut g1 = vec![zero; n];
    let mut g2 = vec![zero; n];
    let mut dg1 = fam.df.values.clone();
    let mut dg2 = vec![zero; n];
    let log_d: Vec<Complex64> = fam.df.values.iter().zip(&fam.f.values).map(|(d, f)| d / f).collect();
    // coefficients lambda^k/(2k)! and lambda^k/(2k+1)!
    let mut even = Complex64::new(1.0, 0.0);
    for k in 0..=m {
        if k > 0 {
            even = even * lambda / ((2 * k - 1) as f64 * (2 * k) as f64);
        }
        let odd = even / (2 * k + 1) as f64;
        let (p2k, p2k1) = (&fam.phi[2 * k].values, &fam.phi[2 * k + 1].values);
        let s2k = &fam.psi[2 * k].values;
        for i in 0..n {
            g1[i] += even * p2k[i];
            g2[i] += odd * p2k1[i];
            dg2[i] += odd * (log_d[i] * p2k1[i] + s2k[i] * (2 * k + 1) as f64);
        }
        if k > 0 {
            let s = &fam.psi[2 * k - 1].values;
            for i in 0..n {
                dg1[i] += even * (log_d[i] * p2k[i] + s[i] * (2 * k) as f64);
            }
        }
    }
    let b = fam.b();
    Ok(SppsSolutions {
        lambda,
        m,
        g1: GridFunction { b, values: g1 },
        g2: GridFunction { b, values: g2 },
        dg1: GridFunction { b, values: dg1 },
        dg2: GridFunction { b, values: dg2 },
    })
}

impl SppsSolutions {
    /// `g1 g2' - g1' g2` at every node.
    pub fn wronskian(&self) -> GridFunction {
        let values = (0..self.g1.n_points())
            .map(|i| self.g1.values[i] * self.dg2.values[i] - self.dg1.values[i] * self.g2.values[i])
            .collect();
        GridFunction { b: self.g1.b, values }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{build_basis_family, FamilyOptions};
    use crate::special::{bessel_i0, bessel_i1};

    #[test]
    fn zero_potential_gives_constant() {
        let q = GridFunction::constant(1.0, 101, Complex64::new(0.0, 0.0)).unwrap();
        let p = particular_solution(&q, 4).unwrap();
        assert!(p.f.values.iter().all(|v| (v - 1.0).norm() < 1e-15));
        assert_eq!(p.h, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn unit_potential_gives_cosh() {
        for n in [201, 200] {
            let q = GridFunction::constant(2.0, n, Complex64::new(1.0, 0.0)).unwrap();
            let p = particular_solution(&q, 4).unwrap();
            for i in 0..n {
                let x = q.node(i);
                assert!((p.f.values[i].re - x.cosh()).abs() < 1e-10, "x={x}");
                assert!((p.df.values[i].re - x.sinh()).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn exponential_potential_matches_bessel() {
        let q = GridFunction::from_real_fn(std::f64::consts::PI, 2001, f64::exp).unwrap();
        let p = particular_solution(&q, 4).unwrap();
        // the Bessel solution has slope h at the origin, so it equals y1 + h y2
        let h = bessel_i1(2.0) / bessel_i0(2.0);
        let combo = p.f.zip_with(&p.y2, |a, b| a + b * h).unwrap();
        for i in (0..2001).step_by(97) {
            let x = q.node(i);
            let exact = bessel_i0(2.0 * (0.5 * x).exp()) / bessel_i0(2.0);
            assert!((combo.values[i].re - exact).abs() < 1e-11 * exact, "x={x}");
        }
        let fam = build_basis_family(&combo, 1, &FamilyOptions::default()).unwrap();
        assert!((fam.h.re - h).abs() < 1e-11);
    }

    #[test]
    fn oscillating_solution_is_complexified() {
        // q = -4: y1 = cos 2x vanishes at pi/4
        let q = GridFunction::constant(2.0, 401, Complex64::new(-4.0, 0.0)).unwrap();
        let p = particular_solution(&q, 4).unwrap();
        assert!(p.complexified);
        assert_eq!(p.h, Complex64::new(0.0, 1.0));
        for i in 0..401 {
            let x = q.node(i);
            let exact = Complex64::new((2.0 * x).cos(), 0.5 * (2.0 * x).sin());
            assert!((p.f.values[i] - exact).norm() < 1e-9);
        }
        // a genuinely complex potential keeps y1, which does not vanish on the real line
        let qc = GridFunction::constant(2.0, 401, Complex64::new(-4.0, 1.0)).unwrap();
        assert!(!particular_solution(&qc, 4).unwrap().complexified);
    }

    #[test]
    fn spps_trivial_potential() {
        let f = GridFunction::constant(std::f64::consts::PI, 2001, Complex64::new(1.0, 0.0)).unwrap();
        let fam = build_basis_family(&f, 51, &FamilyOptions::default()).unwrap();
        let s = spps_evaluate(&fam, Complex64::new(1.0, 0.0), 25).unwrap();
        for i in (0..2001).step_by(50) {
            let x = f.node(i);
            assert!((s.g1.values[i].re - x.cosh()).abs() < 1e-12 * x.cosh());
        }
        assert!(spps_evaluate(&fam, Complex64::new(1.0, 0.0), 26).is_err());
    }

    #[test]
    fn wronskian_is_one() {
        let f = GridFunction::from_real_fn(1.5, 1501, |x| x.cosh()).unwrap();
        let fam = build_basis_family(&f, 31, &FamilyOptions::default()).unwrap();
        let s = spps_evaluate(&fam, Complex64::new(-7.0, 2.0), 15).unwrap();
        let w = s.wronskian();
        assert!(w.values.iter().all(|v| (v - 1.0).norm() < 1e-10));
    }
}
