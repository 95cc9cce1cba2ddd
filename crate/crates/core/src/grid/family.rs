//! Recursive integrals and the functions `phi_k`, `psi_k` built from a
//! non-vanishing particular solution `f` with `f(0) = 1`.

use super::GridFunction;
use crate::error::{Error, Result};
use num_complex::Complex64;

#[derive(Debug, Clone, Default)]
pub struct FamilyOptions {
    /// Overrides `h = f'(0)`; by default it is taken from the interpolant of `f`.
    pub h: Option<Complex64>,
}

#[derive(Debug, Clone)]
pub struct BasisFamily {
    /// Normalised particular solution.
    pub f: GridFunction,
    /// `f'` at the nodes.
    pub df: GridFunction,
    pub h: Complex64,
    pub x: Vec<GridFunction>,
    pub x_tilde: Vec<GridFunction>,
    pub phi: Vec<GridFunction>,
    pub psi: Vec<GridFunction>,
}

/// Builds `X^(n)`, `X~^(n)`, `phi_n`, `psi_n` for `n = 0..=order`.
///
/// `f` is divided by its value at the origin. Fails when `f` vanishes on the grid.
pub fn build_basis_family(f: &GridFunction, order: usize, opts: &FamilyOptions) -> Result<BasisFamily> {
    let f0 = f.eval(0.0);
    let scale = f.max_abs();
    if f0.norm() <= 1e-12 * scale || scale == 0.0 {
        return Err(Error::VanishingFunction { x: 0.0 });
    }
    let f = f.scale(f0.inv());
    let scale = f.max_abs();
    for i in 0..f.n_points() {
        if f.values[i].norm() <= 1e-12 * scale {
            return Err(Error::VanishingFunction { x: f.node(i) });
        }
    }
    if f.is_real(0.0) {
        for i in 1..f.n_points() {
            if f.values[i].re.signum() != f.values[i - 1].re.signum() {
                return Err(Error::VanishingFunction { x: 0.5 * (f.node(i) + f.node(i - 1)) });
            }
        }
    }
    let df = f.derivative();
    let h = opts.h.unwrap_or_else(|| f.derivative_at(0.0));
    let f2 = f.mul(&f)?;
    let inv_f2 = f2.recip();
    let inv_f = f.recip();
    let one = GridFunction::constant(f.b, f.n_points(), Complex64::new(1.0, 0.0))?;
    let mut x = vec![one.clone()];
    let mut xt = vec![one];
    for n in 1..=order {
        let (wx, wxt) = if n % 2 == 0 { (&f2, &inv_f2) } else { (&inv_f2, &f2) };
        let nf = Complex64::new(n as f64, 0.0);
        x.push(x[n - 1].mul(wx)?.antiderivative().scale(nf));
        xt.push(xt[n - 1].mul(wxt)?.antiderivative().scale(nf));
    }
    let mut phi = Vec::with_capacity(order + 1);
    let mut psi = Vec::with_capacity(order + 1);
    for k in 0..=order {
        let (a, b) = if k % 2 == 1 { (&x[k], &xt[k]) } else { (&xt[k], &x[k]) };
        phi.push(a.mul(&f)?);
        psi.push(b.mul(&inv_f)?);
    }
    Ok(BasisFamily { f, df, h, x, x_tilde: xt, phi, psi })
}

impl BasisFamily {
    pub fn order(&self) -> usize {
        self.phi.len() - 1
    }

    pub fn b(&self) -> f64 {
        self.f.b
    }

    pub fn n_points(&self) -> usize {
        self.f.n_points()
    }

    pub fn require_order(&self, k: usize) -> Result<()> {
        if k > self.order() {
            Err(Error::OrderOutOfRange { requested: k, available: self.order() })
        } else {
            Ok(())
        }
    }

    /// Interpolated values of a whole list of grid functions at `x`.
    pub fn eval_all(list: &[GridFunction], x: f64) -> Vec<Complex64> {
        if list.is_empty() {
            return Vec::new();
        }
        let pos = list[0].stencil(x);
        let w = pos.weights();
        list.iter().map(|g| g.apply(&pos, &w)).collect()
    }

    /// Interpolated derivatives of a list of grid functions at `x`.
    pub fn eval_all_derivative(list: &[GridFunction], x: f64) -> Vec<Complex64> {
        if list.is_empty() {
            return Vec::new();
        }
        let pos = list[0].stencil(x);
        let w = pos.derivative_weights();
        let inv_h = 1.0 / list[0].spacing();
        list.iter().map(|g| g.apply(&pos, &w) * inv_h).collect()
    }

    pub fn phi_at(&self, x: f64) -> Vec<Complex64> {
        Self::eval_all(&self.phi, x)
    }

    pub fn psi_at(&self, x: f64) -> Vec<Complex64> {
        Self::eval_all(&self.psi, x)
    }

    pub fn f_at(&self, x: f64) -> Complex64 {
        self.f.eval(x)
    }

    pub fn df_at(&self, x: f64) -> Complex64 {
        self.f.derivative_at(x)
    }

    /// FNV-1a hash of the grid and the samples of `f`.
    pub fn fingerprint(&self) -> String {
        let mut hsh: u64 = 0xcbf29ce484222325;
        let mut feed = |bits: u64| {
            for byte in bits.to_le_bytes() {
                hsh ^= byte as u64;
                hsh = hsh.wrapping_mul(0x100000001b3);
            }
        };
        feed(self.b().to_bits());
        feed(self.n_points() as u64);
        for v in &self.f.values {
            feed(v.re.to_bits());
            feed(v.im.to_bits());
        }
        format!("{hsh:016x}")
    }
}
