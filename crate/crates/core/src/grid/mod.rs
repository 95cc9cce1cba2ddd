//! Uniform grids on `[-b, b]` and calculus on sampled functions.
//!
//! Interpolation, differentiation and integration all use the same local
//! degree-7 Lagrange polynomials (8-point stencils, shifted near the ends).

mod family;
mod io;

pub use family::{build_basis_family, BasisFamily, FamilyOptions};

use crate::error::{Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::sync::OnceLock;

/// Number of nodes in an interpolation stencil.
pub const STENCIL: usize = 8;

/// Complex samples on the uniform grid `x_i = -b + 2 b i / (n - 1)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridFunction {
    pub b: f64,
    pub values: Vec<Complex64>,
}

/// Stencil position of a point: first node, local coordinate, stencil size.
#[derive(Debug, Clone, Copy)]
pub struct StencilPos {
    pub start: usize,
    pub s: f64,
    pub size: usize,
}

impl StencilPos {
    /// Lagrange weights at the local coordinate.
    pub fn weights(&self) -> [f64; STENCIL] {
        let mut w = [0.0; STENCIL];
        let m = self.size;
        for (j, wj) in w.iter_mut().enumerate().take(m) {
            let mut p = 1.0;
            for k in 0..m {
                if k != j {
                    p *= (self.s - k as f64) / (j as f64 - k as f64);
                }
            }
            *wj = p;
        }
        w
    }

    /// Weights of the derivative (with respect to the local coordinate).
    pub fn derivative_weights(&self) -> [f64; STENCIL] {
        let mut w = [0.0; STENCIL];
        let m = self.size;
        for (j, wj) in w.iter_mut().enumerate().take(m) {
            let mut den = 1.0;
            for k in 0..m {
                if k != j {
                    den *= j as f64 - k as f64;
                }
            }
            let mut acc = 0.0;
            for l in 0..m {
                if l == j {
                    continue;
                }
                let mut p = 1.0;
                for k in 0..m {
                    if k != j && k != l {
                        p *= self.s - k as f64;
                    }
                }
                acc += p;
            }
            *wj = acc / den;
        }
        w
    }
}

fn cell_weights() -> &'static [[f64; STENCIL]; STENCIL - 1] {
    static W: OnceLock<[[f64; STENCIL]; STENCIL - 1]> = OnceLock::new();
    W.get_or_init(|| {
        // 5-point Gauss rule integrates the degree-7 basis exactly
        let g = crate::quadrature::GaussLegendre::new(5);
        let mut out = [[0.0; STENCIL]; STENCIL - 1];
        for (o, row) in out.iter_mut().enumerate() {
            for (xg, wg) in g.nodes.iter().zip(&g.weights) {
                let pos = StencilPos { start: 0, s: o as f64 + 0.5 + 0.5 * xg, size: STENCIL };
                let l = pos.weights();
                for j in 0..STENCIL {
                    row[j] += 0.5 * wg * l[j];
                }
            }
        }
        out
    })
}

fn small_cell_weights(m: usize, o: usize) -> [f64; STENCIL] {
    let g = crate::quadrature::GaussLegendre::new(5);
    let mut row = [0.0; STENCIL];
    for (xg, wg) in g.nodes.iter().zip(&g.weights) {
        let pos = StencilPos { start: 0, s: o as f64 + 0.5 + 0.5 * xg, size: m };
        let l = pos.weights();
        for j in 0..m {
            row[j] += 0.5 * wg * l[j];
        }
    }
    row
}

impl GridFunction {
    pub fn new(b: f64, values: Vec<Complex64>) -> Result<Self> {
        if !(b > 0.0 && b.is_finite()) {
            return Err(Error::InvalidInput(format!("half-width b must be positive, got {b}")));
        }
        if values.len() < 2 {
            return Err(Error::InvalidInput("a grid needs at least two points".into()));
        }
        if values.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::InvalidInput("grid values must be finite".into()));
        }
        Ok(GridFunction { b, values })
    }

    pub fn from_fn<F: Fn(f64) -> Complex64>(b: f64, n: usize, f: F) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidInput("a grid needs at least two points".into()));
        }
        let values = (0..n).map(|i| f(node(b, n, i))).collect();
        Self::new(b, values)
    }

    pub fn from_real_fn<F: Fn(f64) -> f64>(b: f64, n: usize, f: F) -> Result<Self> {
        Self::from_fn(b, n, |x| Complex64::new(f(x), 0.0))
    }

    pub fn constant(b: f64, n: usize, c: Complex64) -> Result<Self> {
        Self::from_fn(b, n, |_| c)
    }

    pub fn n_points(&self) -> usize {
        self.values.len()
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.b / (self.values.len() - 1) as f64
    }

    pub fn node(&self, i: usize) -> f64 {
        node(self.b, self.values.len(), i)
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.n_points()).map(|i| self.node(i)).collect()
    }

    pub fn same_grid(&self, other: &GridFunction) -> bool {
        self.b == other.b && self.n_points() == other.n_points()
    }

    fn check_grid(&self, other: &GridFunction) -> Result<()> {
        if self.same_grid(other) {
            Ok(())
        } else {
            Err(Error::InvalidInput("grid functions live on different grids".into()))
        }
    }

    /// Pointwise map `(x, v) -> w`.
    pub fn map<F: Fn(f64, Complex64) -> Complex64>(&self, f: F) -> GridFunction {
        let values = self.values.iter().enumerate().map(|(i, v)| f(self.node(i), *v)).collect();
        GridFunction { b: self.b, values }
    }

    /// Pointwise combination with another function on the same grid.
    pub fn zip_with<F: Fn(Complex64, Complex64) -> Complex64>(&self, other: &GridFunction, f: F) -> Result<GridFunction> {
        self.check_grid(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| f(*a, *b)).collect();
        Ok(GridFunction { b: self.b, values })
    }

    pub fn mul(&self, other: &GridFunction) -> Result<GridFunction> {
        self.zip_with(other, |a, b| a * b)
    }

    pub fn scale(&self, s: Complex64) -> GridFunction {
        self.map(|_, v| v * s)
    }

    pub fn recip(&self) -> GridFunction {
        self.map(|_, v| v.inv())
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// True when every imaginary part is at most `tol` times the largest modulus.
    pub fn is_real(&self, tol: f64) -> bool {
        let scale = self.max_abs().max(f64::MIN_POSITIVE);
        self.values.iter().all(|v| v.im.abs() <= tol * scale)
    }

    /// Locates the interpolation stencil for `x`. Points slightly outside
    /// `[-b, b]` are extrapolated from the edge stencil.
    pub fn stencil(&self, x: f64) -> StencilPos {
        let n = self.n_points();
        let m = STENCIL.min(n);
        let s = (x + self.b) / self.spacing();
        let cell = (s.floor().max(0.0) as usize).min(n - 2);
        let start = cell.saturating_sub(m / 2 - 1).min(n - m);
        StencilPos { start, s: s - start as f64, size: m }
    }

    pub fn apply(&self, pos: &StencilPos, w: &[f64; STENCIL]) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for j in 0..pos.size {
            acc += self.values[pos.start + j] * w[j];
        }
        acc
    }

    /// Value of the local interpolant at `x`.
    pub fn eval(&self, x: f64) -> Complex64 {
        let pos = self.stencil(x);
        self.apply(&pos, &pos.weights())
    }

    /// Derivative of the local interpolant at `x`.
    pub fn derivative_at(&self, x: f64) -> Complex64 {
        let pos = self.stencil(x);
        self.apply(&pos, &pos.derivative_weights()) / self.spacing()
    }

    /// Derivative sampled at the nodes.
    pub fn derivative(&self) -> GridFunction {
        let values = (0..self.n_points()).map(|i| self.derivative_at(self.node(i))).collect();
        GridFunction { b: self.b, values }
    }

    /// Antiderivative normalised to vanish at `x = 0`.
    pub fn antiderivative(&self) -> GridFunction {
        let n = self.n_points();
        let m = STENCIL.min(n);
        let h = self.spacing();
        let table = cell_weights();
        let cells: Vec<Complex64> = (0..n - 1)
            .map(|cell| {
                let start = cell.saturating_sub(m / 2 - 1).min(n - m);
                let o = cell - start;
                let w = if m == STENCIL { table[o] } else { small_cell_weights(m, o) };
                (0..m).map(|j| self.values[start + j] * w[j]).sum::<Complex64>() * h
            })
            .collect();
        // accumulate outwards from the middle node: the values far from the origin
        // can be many orders larger than those near it
        let zero = Complex64::new(0.0, 0.0);
        let c = n / 2;
        let mut out = vec![zero; n];
        let (mut sum, mut comp) = (zero, zero);
        for i in c + 1..n {
            let y = cells[i - 1] - comp;
            let t = sum + y;
            comp = (t - sum) - y;
            sum = t;
            out[i] = sum;
        }
        let (mut sum, mut comp) = (zero, zero);
        for i in (0..c).rev() {
            let y = -cells[i] - comp;
            let t = sum + y;
            comp = (t - sum) - y;
            sum = t;
            out[i] = sum;
        }
        let mut f = GridFunction { b: self.b, values: out };
        let zero = if n % 2 == 1 { f.values[n / 2] } else { f.eval(0.0) };
        for v in f.values.iter_mut() {
            *v -= zero;
        }
        f
    }

    /// `int_{x0}^{x1}` of the interpolant.
    pub fn integrate(&self, x0: f64, x1: f64) -> Complex64 {
        let f = self.antiderivative();
        f.eval(x1) - f.eval(x0)
    }
}

pub(crate) fn node(b: f64, n: usize, i: usize) -> f64 {
    if 2 * i + 1 == n {
        0.0
    } else {
        -b + 2.0 * b * i as f64 / (n - 1) as f64
    }
}
