//! Passing between the kernels of `q_f` and of its Darboux partner `q_{1/f}`, and
//! changing the parameter `h` of a kernel.

use super::Kernel;
use crate::grid::BasisFamily;
use crate::quadrature::GaussLegendre;
use num_complex::Complex64;
use std::sync::{Arc, OnceLock};

fn rule() -> &'static GaussLegendre {
    static G: OnceLock<GaussLegendre> = OnceLock::new();
    G.get_or_init(|| GaussLegendre::new(20))
}

const PANELS: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DarbouxDirection {
    /// From `K_f` to `K_{1/f}`.
    ToInverse,
    /// From `K_{1/f}` back to `K_f`.
    FromInverse,
}

/// The kernel related to `source` through the Vekua system attached to `f`.
pub struct DarbouxKernel<K> {
    pub source: K,
    pub family: Arc<BasisFamily>,
    pub direction: DarbouxDirection,
}

/// `K_{1/f}` from `K_f`; use [`DarbouxKernel::new`] for the reverse direction.
pub fn darboux_kernel<K: Kernel>(source: K, family: Arc<BasisFamily>) -> DarbouxKernel<K> {
    DarbouxKernel::new(source, family, DarbouxDirection::ToInverse)
}

impl<K: Kernel> DarbouxKernel<K> {
    pub fn new(source: K, family: Arc<BasisFamily>, direction: DarbouxDirection) -> Self {
        DarbouxKernel { source, family, direction }
    }

    /// `(w, w')` where `w = f` or `1/f` depending on the direction.
    fn weight(&self, x: f64) -> (Complex64, Complex64) {
        let f = self.family.f_at(x);
        let df = self.family.df_at(x);
        match self.direction {
            DarbouxDirection::ToInverse => (f, df),
            DarbouxDirection::FromInverse => (f.inv(), -df / (f * f)),
        }
    }
}

impl<K: Kernel> Kernel for DarbouxKernel<K> {
    fn eval(&self, x: f64, t: f64) -> Complex64 {
        let g = rule();
        let (w, dw) = self.weight(x);
        let dw0 = match self.direction {
            DarbouxDirection::ToInverse => self.family.h,
            DarbouxDirection::FromInverse => -self.family.h,
        };
        let first = g.integrate(0.0, x, PANELS, |eta| self.weight(eta).0 * self.source.dt(eta, 0.0));
        let second = g.integrate(0.0, t, PANELS, |s| self.source.dx(x, s));
        let third = g.integrate(0.0, t, PANELS, |s| self.source.eval(x, s));
        -first / w - second + third * (dw / w) - dw0 / (w * 2.0)
    }

    fn dt(&self, x: f64, t: f64) -> Complex64 {
        let (w, dw) = self.weight(x);
        self.source.eval(x, t) * (dw / w) - self.source.dx(x, t)
    }

    // From the other half of the Vekua system; avoids differencing the quadrature.
    fn dx(&self, x: f64, t: f64) -> Complex64 {
        let (w, dw) = self.weight(x);
        -self.eval(x, t) * (dw / w) - self.source.dt(x, t)
    }
}

/// `K(x, t; h2)` from `K(x, t; h1)`.
pub struct ChangedKernel<K> {
    pub source: K,
    pub h1: Complex64,
    pub h2: Complex64,
}

pub fn change_parameter<K: Kernel>(source: K, h1: Complex64, h2: Complex64) -> ChangedKernel<K> {
    ChangedKernel { source, h1, h2 }
}

impl<K: Kernel> Kernel for ChangedKernel<K> {
    fn eval(&self, x: f64, t: f64) -> Complex64 {
        let base = self.source.eval(x, t);
        if self.h1 == self.h2 {
            return base;
        }
        let half = (self.h2 - self.h1) * 0.5;
        let int = rule().integrate(t, x, PANELS, |s| self.source.eval(x, s) - self.source.eval(x, -s));
        half + base + half * int
    }
}
