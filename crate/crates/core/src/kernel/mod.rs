//! Transmutation kernels: approximations, reference kernels and transformations.

mod approx;
mod darboux;
mod fit;
mod reference;
mod vekua;

pub use approx::{kernel_from_taylor, KernelApproximation, KernelMethod};
pub use darboux::{change_parameter, darboux_kernel, ChangedKernel, DarbouxDirection, DarbouxKernel};
pub use fit::{fit_goursat, goursat_targets, FitDomain, FitMethod, FitOptions};
pub use reference::{reference_kernel, ReferenceKernel};
pub use vekua::{vekua_residual, VekuaMesh};

use num_complex::Complex64;
use rayon::prelude::*;
use std::io::Write;

/// Default step of the finite differences used for kernel derivatives.
pub const FD_STEP: f64 = 1e-3;

/// A kernel `K(x, t)` that can be evaluated on the triangle `|t| <= |x|`.
pub trait Kernel: Send + Sync {
    fn eval(&self, x: f64, t: f64) -> Complex64;

    /// `dK/dt`, by default a fourth-order central difference.
    fn dt(&self, x: f64, t: f64) -> Complex64 {
        central4(|s| self.eval(x, s), t, FD_STEP)
    }

    /// `dK/dx`, by default a fourth-order central difference.
    fn dx(&self, x: f64, t: f64) -> Complex64 {
        central4(|s| self.eval(s, t), x, FD_STEP)
    }
}

impl<K: Kernel + ?Sized> Kernel for &K {
    fn eval(&self, x: f64, t: f64) -> Complex64 {
        (**self).eval(x, t)
    }
    fn dt(&self, x: f64, t: f64) -> Complex64 {
        (**self).dt(x, t)
    }
    fn dx(&self, x: f64, t: f64) -> Complex64 {
        (**self).dx(x, t)
    }
}

/// The zero kernel.
#[derive(Debug, Clone, Copy)]
pub struct ZeroKernel;

impl Kernel for ZeroKernel {
    fn eval(&self, _: f64, _: f64) -> Complex64 {
        Complex64::new(0.0, 0.0)
    }
}

pub fn central4<F: Fn(f64) -> Complex64>(f: F, x: f64, h: f64) -> Complex64 {
    (f(x - 2.0 * h) - f(x + 2.0 * h) + (f(x + h) - f(x - h)) * 8.0) / (12.0 * h)
}

/// `n x n` equally spaced points of `[-b, b]^2`, keeping those with `|t| <= |x|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriangleMesh {
    pub b: f64,
    pub n: usize,
}

impl TriangleMesh {
    pub fn new(b: f64, n: usize) -> Self {
        TriangleMesh { b, n }
    }

    fn coord(&self, i: usize) -> f64 {
        if self.n == 1 {
            return 0.0;
        }
        -self.b + 2.0 * self.b * i as f64 / (self.n - 1) as f64
    }

    /// Mesh rows: each `x` with its admissible `t` values.
    pub fn rows(&self) -> Vec<(f64, Vec<f64>)> {
        (0..self.n)
            .map(|i| {
                let x = self.coord(i);
                let ts = (0..self.n).map(|j| self.coord(j)).filter(|t| t.abs() <= x.abs() * (1.0 + 1e-14)).collect();
                (x, ts)
            })
            .collect()
    }

    pub fn points(&self) -> Vec<(f64, f64)> {
        self.rows().into_iter().flat_map(|(x, ts)| ts.into_iter().map(move |t| (x, t))).collect()
    }

    /// `max |K1 - K2|` over the mesh.
    pub fn max_difference(&self, a: &dyn Kernel, b: &dyn Kernel) -> f64 {
        self.rows()
            .par_iter()
            .map(|(x, ts)| ts.iter().map(|&t| (a.eval(*x, t) - b.eval(*x, t)).norm()).fold(0.0, f64::max))
            .collect::<Vec<_>>()
            .into_iter()
            .fold(0.0, f64::max)
    }

    /// CSV rows `x,t,re,im`.
    pub fn write_csv<W: Write>(&self, k: &dyn Kernel, w: W) -> crate::Result<()> {
        let rows: Vec<Vec<(f64, f64, Complex64)>> = self
            .rows()
            .par_iter()
            .map(|(x, ts)| ts.iter().map(|&t| (*x, t, k.eval(*x, t))).collect())
            .collect();
        let mut wr = csv::Writer::from_writer(w);
        wr.write_record(["x", "t", "re", "im"])?;
        for (x, t, v) in rows.into_iter().flatten() {
            wr.write_record([format!("{x:.17e}"), format!("{t:.17e}"), format!("{:.17e}", v.re), format!("{:.17e}", v.im)])?;
        }
        wr.flush()?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    struct Poly;
    impl Kernel for Poly {
        fn eval(&self, x: f64, t: f64) -> Complex64 {
            Complex64::new(x * x * t + t.powi(3), 0.0)
        }
    }

    #[test]
    fn default_derivatives() {
        let k = Poly;
        assert!((k.dt(0.7, 0.2).re - (0.49 + 3.0 * 0.04)).abs() < 1e-12);
        assert!((k.dx(0.7, 0.2).re - 2.0 * 0.7 * 0.2).abs() < 1e-12);
    }

    #[test]
    fn mesh_shape() {
        let m = TriangleMesh::new(1.0, 5);
        let pts = m.points();
        assert!(pts.iter().all(|(x, t)| t.abs() <= x.abs()));
        // rows x = -1, -0.5, 0, 0.5, 1 hold 5, 3, 1, 3, 5 points
        assert_eq!(pts.len(), 17);
        assert_eq!(m.max_difference(&Poly, &Poly), 0.0);
        assert!((m.max_difference(&Poly, &ZeroKernel) - 2.0).abs() < 1e-15);
    }

    #[test]
    fn csv_export() {
        let mut buf = Vec::new();
        TriangleMesh::new(1.0, 3).write_csv(&ZeroKernel, &mut buf).unwrap();
        let s = String::from_utf8(buf).unwrap();
        assert_eq!(s.lines().count(), 1 + 7);
    }
}
