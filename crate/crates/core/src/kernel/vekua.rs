//! Finite-difference check of the Vekua system linking `K_f` and `K_{1/f}`.

use super::{Kernel, TriangleMesh};
use crate::grid::BasisFamily;
use rayon::prelude::*;

/// Interior points of an `n x n` triangle mesh on `[-b, b]`, differenced with `step`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VekuaMesh {
    pub b: f64,
    pub n: usize,
    pub step: f64,
}

impl VekuaMesh {
    pub fn new(b: f64, n: usize, step: f64) -> Self {
        VekuaMesh { b, n, step }
    }

    /// Points with `|t| < |x| < b`, kept one step away from the characteristics.
    pub fn points(&self) -> Vec<(f64, f64)> {
        let lim = self.b - self.step;
        TriangleMesh::new(self.b, self.n)
            .points()
            .into_iter()
            .filter(|(x, t)| x.abs() <= lim && t.abs() <= x.abs() - self.step)
            .collect()
    }
}

/// `max |d_x u - (f'/f) u - d_t v|, |d_x v + (f'/f) v - d_t u|` over the mesh, with
/// `u = K_f` and `v = -K_{1/f}` and second-order central differences.
pub fn vekua_residual(kf: &dyn Kernel, kinv: &dyn Kernel, family: &BasisFamily, mesh: &VekuaMesh) -> f64 {
    let s = mesh.step;
    mesh.points()
        .par_iter()
        .map(|&(x, t)| {
            let u = |x: f64, t: f64| kf.eval(x, t);
            let v = |x: f64, t: f64| -kinv.eval(x, t);
            let ratio = family.df_at(x) / family.f_at(x);
            let ux = (u(x + s, t) - u(x - s, t)) / (2.0 * s);
            let ut = (u(x, t + s) - u(x, t - s)) / (2.0 * s);
            let vx = (v(x + s, t) - v(x - s, t)) / (2.0 * s);
            let vt = (v(x, t + s) - v(x, t - s)) / (2.0 * s);
            let r1 = ux - ratio * u(x, t) - vt;
            let r2 = vx + ratio * v(x, t) - ut;
            r1.norm().max(r2.norm())
        })
        .reduce(|| 0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{build_basis_family, FamilyOptions, GridFunction};
    use crate::kernel::{ReferenceKernel, ZeroKernel};

    #[test]
    fn zero_pair() {
        let f = GridFunction::from_real_fn(1.0, 101, |_| 1.0).unwrap();
        let fam = build_basis_family(&f, 1, &FamilyOptions::default()).unwrap();
        assert_eq!(vekua_residual(&ZeroKernel, &ZeroKernel, &fam, &VekuaMesh::new(1.0, 30, 1e-3)), 0.0);
    }

    #[test]
    fn model_pair_second_order() {
        let f = GridFunction::from_real_fn(0.5, 1001, |x| x + 1.0).unwrap();
        let fam = build_basis_family(&f, 1, &FamilyOptions::default()).unwrap();
        let r: Vec<f64> = [1e-2, 1e-3]
            .iter()
            .map(|&s| vekua_residual(&ReferenceKernel::ModelF, &ReferenceKernel::ModelInv, &fam, &VekuaMesh::new(0.5, 40, s)))
            .collect();
        let order = (r[0] / r[1]).log10();
        assert!(order > 1.8 && r[1] < 1e-5, "{r:?}");
    }

    #[test]
    fn cosh_sech_pair() {
        let f = GridFunction::from_real_fn(1.0, 1001, f64::cosh).unwrap();
        let fam = build_basis_family(&f, 1, &FamilyOptions::default()).unwrap();
        let r = vekua_residual(&ReferenceKernel::Cosh, &ReferenceKernel::Sech, &fam, &VekuaMesh::new(1.0, 12, 1e-3));
        assert!(r < 1e-5, "{r}");
    }
}
