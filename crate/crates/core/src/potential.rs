//! Built-in potentials and sampled potentials, with the particular solution `f`,
//! `h = f'(0)`, the jet at the origin and a closed-form kernel where one is known.

use crate::error::{Error, Result};
use crate::grid::{build_basis_family, BasisFamily, FamilyOptions, GridFunction};
use crate::kernel::{fit_goursat, goursat_targets, kernel_from_taylor, FitOptions, Kernel, KernelApproximation, ReferenceKernel, ZeroKernel};
use crate::special::{bessel_i0, bessel_i1, bessel_i_scaled};
use crate::spps::{particular_solution, DEFAULT_SUBSTEPS};
use crate::taylor::{darboux_jet, PotentialJet};
use num_complex::Complex64;
use std::sync::Arc;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Builtin {
    Zero,
    /// `q = c`.
    Const(f64),
    /// `q = e^x`.
    Exp,
    /// `q = 1 - 2 sech^2 x`.
    Sech,
    /// `q = 0` with `f = x + 1`.
    Model,
}

impl Builtin {
    /// Parses `zero`, `const:c`, `exp`, `sech` or `model`, with an optional `builtin:` prefix.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.strip_prefix("builtin:").unwrap_or(s);
        match s {
            "zero" => Ok(Builtin::Zero),
            "exp" => Ok(Builtin::Exp),
            "sech" => Ok(Builtin::Sech),
            "model" => Ok(Builtin::Model),
            _ => match s.strip_prefix("const:") {
                Some(c) => c
                    .parse::<f64>()
                    .ok()
                    .filter(|c| c.is_finite())
                    .map(Builtin::Const)
                    .ok_or_else(|| Error::InvalidInput(format!("bad constant in {s}"))),
                None => Err(Error::InvalidInput(format!("unknown builtin potential {s}"))),
            },
        }
    }

    pub fn name(&self) -> String {
        match self {
            Builtin::Zero => "zero".into(),
            Builtin::Const(c) => format!("const:{c}"),
            Builtin::Exp => "exp".into(),
            Builtin::Sech => "sech".into(),
            Builtin::Model => "model".into(),
        }
    }

    pub fn q(&self, x: f64) -> f64 {
        match self {
            Builtin::Zero | Builtin::Model => 0.0,
            Builtin::Const(c) => *c,
            Builtin::Exp => x.exp(),
            Builtin::Sech => 1.0 - 2.0 / (x.cosh() * x.cosh()),
        }
    }

    /// Jet of `q` at the origin with `derivs` derivatives; `h` is that of the `f` chosen on `[-b, b]`.
    pub fn jet(&self, derivs: usize, b: f64) -> Result<PotentialJet> {
        let z = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        let mut d = vec![z; derivs];
        let h = match self {
            Builtin::Zero => z,
            Builtin::Model => one,
            Builtin::Const(c) => {
                if let Some(v) = d.first_mut() {
                    *v = Complex64::new(*c, 0.0);
                }
                const_solution(*c, b).1
            }
            Builtin::Exp => {
                d.iter_mut().for_each(|v| *v = one);
                Complex64::new(bessel_i1(2.0) / bessel_i0(2.0), 0.0)
            }
            Builtin::Sech => {
                let mut cosh = vec![z; derivs];
                if let Some(v) = cosh.first_mut() {
                    *v = one;
                }
                return darboux_jet(&PotentialJet::new(z, cosh), derivs);
            }
        };
        Ok(PotentialJet::new(h, d))
    }
}

/// Kernel of `q = c` with `h = 0`: `(c/2)(x + t) G_1(c (x^2 - t^2))`.
#[derive(Debug, Clone, Copy)]
pub struct ConstantKernel(pub f64);

impl Kernel for ConstantKernel {
    fn eval(&self, x: f64, t: f64) -> Complex64 {
        let c = self.0;
        Complex64::new(0.5 * c * (x + t) * bessel_i_scaled(1, c * (x * x - t * t)), 0.0)
    }
}

/// `f` and `h` for `q = c` on `[-b, b]`: `cosh`, `cos` while it stays positive, else `e^{ikx}`.
fn const_solution(c: f64, b: f64) -> (Box<dyn Fn(f64) -> Complex64>, Complex64) {
    if c >= 0.0 {
        let k = c.sqrt();
        (Box::new(move |x| Complex64::new((k * x).cosh(), 0.0)), Complex64::new(0.0, 0.0))
    } else {
        let k = (-c).sqrt();
        if k * b < 0.5 * std::f64::consts::PI * (1.0 - 1e-9) {
            (Box::new(move |x| Complex64::new((k * x).cos(), 0.0)), Complex64::new(0.0, 0.0))
        } else {
            (Box::new(move |x| Complex64::new(0.0, k * x).exp()), Complex64::new(0.0, k))
        }
    }
}

/// Which closed-form kernel, if any, belongs to a potential with its chosen `f`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KnownKernel {
    Zero,
    Constant(f64),
    Named(ReferenceKernel),
}

impl KnownKernel {
    pub fn kernel(&self) -> Box<dyn Kernel> {
        match *self {
            KnownKernel::Zero => Box::new(ZeroKernel),
            KnownKernel::Constant(c) => Box::new(ConstantKernel(c)),
            KnownKernel::Named(r) => Box::new(r),
        }
    }
}

/// A potential on `[-b, b]` together with a non-vanishing `f`, `f(0) = 1`.
#[derive(Debug, Clone)]
pub struct Potential {
    pub label: String,
    pub q: GridFunction,
    pub f: GridFunction,
    pub h: Complex64,
    pub jet: Option<PotentialJet>,
    pub known: Option<KnownKernel>,
}

impl Potential {
    pub fn builtin(which: Builtin, b: f64, n_points: usize, jet_len: usize) -> Result<Self> {
        if !(b > 0.0 && b.is_finite()) {
            return Err(Error::InvalidInput(format!("b must be positive, got {b}")));
        }
        let q = GridFunction::from_real_fn(b, n_points, |x| which.q(x))?;
        let (f, h, known) = match which {
            Builtin::Zero => (GridFunction::from_real_fn(b, n_points, |_| 1.0)?, Complex64::new(0.0, 0.0), Some(KnownKernel::Zero)),
            Builtin::Const(c) => {
                let (f, h) = const_solution(c, b);
                let known = if h == Complex64::new(0.0, 0.0) { Some(KnownKernel::Constant(c)) } else { None };
                (GridFunction::from_fn(b, n_points, f)?, h, known)
            }
            Builtin::Exp => {
                let i02 = bessel_i0(2.0);
                let f = GridFunction::from_real_fn(b, n_points, |x| bessel_i0(2.0 * (0.5 * x).exp()) / i02)?;
                (f, Complex64::new(bessel_i1(2.0) / i02, 0.0), None)
            }
            Builtin::Sech => {
                let f = GridFunction::from_real_fn(b, n_points, |x| 1.0 / x.cosh())?;
                (f, Complex64::new(0.0, 0.0), Some(KnownKernel::Named(ReferenceKernel::Sech)))
            }
            Builtin::Model => {
                if b >= 1.0 {
                    return Err(Error::InvalidInput("the model potential needs b < 1 (f = x + 1 vanishes at -1)".into()));
                }
                let f = GridFunction::from_real_fn(b, n_points, |x| x + 1.0)?;
                (f, Complex64::new(1.0, 0.0), Some(KnownKernel::Named(ReferenceKernel::ModelF)))
            }
        };
        Ok(Potential { label: which.name(), q, f, h, jet: Some(which.jet(jet_len, b)?), known })
    }

    /// A sampled potential on `[-b, b]`; `f` comes from the IVP integrator.
    pub fn sampled(label: &str, q: GridFunction) -> Result<Self> {
        let p = particular_solution(&q, DEFAULT_SUBSTEPS)?;
        Ok(Potential { label: label.into(), q, f: p.f, h: p.h, jet: None, known: None })
    }

    pub fn b(&self) -> f64 {
        self.q.b
    }

    pub fn family(&self, order: usize) -> Result<Arc<BasisFamily>> {
        Ok(Arc::new(build_basis_family(&self.f, order, &FamilyOptions { h: Some(self.h) })?))
    }

    pub fn taylor_kernel(&self, family: Arc<BasisFamily>, n: usize) -> Result<KernelApproximation> {
        let jet = self
            .jet
            .as_ref()
            .ok_or_else(|| Error::InvalidInput(format!("potential {} has no jet at the origin", self.label)))?;
        kernel_from_taylor(family, jet, n)
    }

    pub fn goursat_kernel(&self, family: Arc<BasisFamily>, n: usize, opts: &FitOptions) -> Result<KernelApproximation> {
        let (g1, g2) = goursat_targets(&self.q, self.h);
        fit_goursat(family, &g1, &g2, n, opts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{FitMethod, TriangleMesh};

    #[test]
    fn parse_names() {
        assert_eq!(Builtin::parse("builtin:exp").unwrap(), Builtin::Exp);
        assert_eq!(Builtin::parse("const:-2.5").unwrap(), Builtin::Const(-2.5));
        assert!(Builtin::parse("const:x").is_err());
        assert!(Builtin::parse("cos").is_err());
    }

    #[test]
    fn particular_solutions_solve_the_equation() {
        for w in [Builtin::Exp, Builtin::Sech, Builtin::Const(2.0), Builtin::Const(-1.0), Builtin::Model] {
            let p = Potential::builtin(w, 0.9, 901, 4).unwrap();
            let d2 = p.f.derivative().derivative();
            for i in (100..800).step_by(50) {
                let r = d2.values[i] - p.q.values[i] * p.f.values[i];
                assert!(r.norm() < 1e-8, "{w:?} {}", r.norm());
            }
            assert!((p.f.eval(0.0) - 1.0).norm() < 1e-15);
            assert!((p.f.derivative_at(0.0) - p.h).norm() < 1e-10, "{w:?}");
        }
    }

    #[test]
    fn constant_kernel_is_the_cosh_kernel_rescaled() {
        let k = ConstantKernel(1.0);
        assert!((k.eval(0.7, 0.3) - ReferenceKernel::Cosh.eval(0.7, 0.3)).norm() < 1e-15);
        // Goursat data for q = c, h = 0
        let k = ConstantKernel(-3.0);
        assert!((k.eval(0.8, 0.8).re - 0.5 * -3.0 * 0.8).abs() < 1e-14);
    }

    #[test]
    fn negative_constant_switches_to_complex_f() {
        let p = Potential::builtin(Builtin::Const(-1.0), 2.0, 201, 2).unwrap();
        assert!(!p.f.is_real(0.0));
        assert_eq!(p.h, Complex64::new(0.0, 1.0));
        assert!(p.known.is_none());
    }

    #[test]
    fn sech_jet_matches_known_values() {
        let j = Builtin::Sech.jet(9, 1.0).unwrap();
        let want = [-1.0, 0.0, 4.0, 0.0, -32.0, 0.0, 544.0, 0.0, -15872.0];
        for (a, b) in j.derivs.iter().zip(want) {
            assert!((a.re - b).abs() < 1e-9 * b.abs().max(1.0));
        }
    }

    #[test]
    fn both_kernel_routes_for_constant_potential() {
        let p = Potential::builtin(Builtin::Const(0.5), 1.0, 801, 16).unwrap();
        let fam = p.family(14).unwrap();
        let t = p.taylor_kernel(fam.clone(), 14).unwrap();
        let g = p.goursat_kernel(fam, 14, &FitOptions::with_method(FitMethod::LeastSquares)).unwrap();
        let known = p.known.unwrap().kernel();
        let mesh = TriangleMesh::new(1.0, 30);
        let et = mesh.max_difference(&t, known.as_ref());
        assert!(et < 1e-9, "{et}");
        assert!(mesh.max_difference(&g, known.as_ref()) < 1e-9);
    }

    #[test]
    fn sampled_potential_uses_integrator() {
        let q = GridFunction::from_real_fn(1.0, 401, |x| x.exp()).unwrap();
        let p = Potential::sampled("file", q).unwrap();
        assert!(p.jet.is_none());
        assert_eq!(p.h, Complex64::new(0.0, 0.0));
        let fam = p.family(2).unwrap();
        assert!(p.taylor_kernel(fam, 2).is_err());
    }
}
