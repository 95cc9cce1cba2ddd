//! Closed-form kernels used as references.
//!
//! `Cosh` is the kernel for `q = 1`, `f = cosh x`; `Sech` is the one for
//! `q = 1 - 2 sech^2 x`, `f = sech x`; `ModelF`/`ModelInv` belong to `q = 0` with
//! `f = x + 1` and to its Darboux partner `f = 1/(x + 1)`.

use super::Kernel;
use crate::error::{Error, Result};
use crate::quadrature::GaussLegendre;
use crate::special::{bessel_i0, bessel_i1, bessel_i_scaled};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::sync::OnceLock;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReferenceKernel {
    ModelF,
    ModelInv,
    Cosh,
    Sech,
}

fn rule() -> &'static GaussLegendre {
    static G: OnceLock<GaussLegendre> = OnceLock::new();
    G.get_or_init(|| GaussLegendre::new(24))
}

fn cosh_kernel(x: f64, t: f64) -> f64 {
    0.5 * (x + t) * bessel_i_scaled(1, x * x - t * t)
}

fn sech_kernel(x: f64, t: f64) -> f64 {
    // the (x - s) factors of the integrands are cancelled through I0 = 2 G1 + y G2
    let th = x.tanh();
    let panels = 1 + (t.abs() / 2.0).ceil() as usize;
    let integral = rule().integrate(0.0, t, panels, |s| {
        let y = x * x - s * s;
        let g1 = bessel_i_scaled(1, y);
        let g2 = bessel_i_scaled(2, y);
        Complex64::new(th * (x + s) * g1 - g1 - x * (x + s) * g2, 0.0)
    });
    0.5 * (bessel_i1(x) - bessel_i0(x) * th + integral.re)
}

impl ReferenceKernel {
    pub fn name(&self) -> &'static str {
        match self {
            ReferenceKernel::ModelF => "model_f",
            ReferenceKernel::ModelInv => "model_inv",
            ReferenceKernel::Cosh => "cosh",
            ReferenceKernel::Sech => "sech",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "model_f" => Ok(ReferenceKernel::ModelF),
            "model_inv" => Ok(ReferenceKernel::ModelInv),
            "cosh" => Ok(ReferenceKernel::Cosh),
            "sech" => Ok(ReferenceKernel::Sech),
            _ => Err(Error::InvalidInput(format!("unknown reference kernel {s}"))),
        }
    }
}

impl Kernel for ReferenceKernel {
    fn eval(&self, x: f64, t: f64) -> Complex64 {
        let v = match self {
            ReferenceKernel::ModelF => 0.5,
            ReferenceKernel::ModelInv => (t - 1.0) / (2.0 * (x + 1.0)),
            ReferenceKernel::Cosh => cosh_kernel(x, t),
            ReferenceKernel::Sech => sech_kernel(x, t),
        };
        Complex64::new(v, 0.0)
    }

    fn dt(&self, x: f64, t: f64) -> Complex64 {
        let v = match self {
            ReferenceKernel::ModelF => 0.0,
            ReferenceKernel::ModelInv => 0.5 / (x + 1.0),
            ReferenceKernel::Cosh => {
                let y = x * x - t * t;
                0.5 * bessel_i_scaled(1, y) - 0.5 * (x + t) * t * bessel_i_scaled(2, y)
            }
            ReferenceKernel::Sech => return super::central4(|s| self.eval(x, s), t, super::FD_STEP),
        };
        Complex64::new(v, 0.0)
    }

    fn dx(&self, x: f64, t: f64) -> Complex64 {
        let v = match self {
            ReferenceKernel::ModelF => 0.0,
            ReferenceKernel::ModelInv => -(t - 1.0) / (2.0 * (x + 1.0) * (x + 1.0)),
            ReferenceKernel::Cosh => {
                let y = x * x - t * t;
                0.5 * bessel_i_scaled(1, y) + 0.5 * (x + t) * x * bessel_i_scaled(2, y)
            }
            ReferenceKernel::Sech => return super::central4(|s| self.eval(s, t), x, super::FD_STEP),
        };
        Complex64::new(v, 0.0)
    }
}

/// Checked evaluation on the triangle `|t| <= |x|`.
pub fn reference_kernel(kind: ReferenceKernel, x: f64, t: f64) -> Result<Complex64> {
    if !(x.is_finite() && t.is_finite()) || t.abs() > x.abs() * (1.0 + 1e-12) {
        return Err(Error::OutsideDomain { x, t });
    }
    if matches!(kind, ReferenceKernel::ModelF | ReferenceKernel::ModelInv) && x <= -1.0 {
        return Err(Error::OutsideDomain { x, t });
    }
    Ok(kind.eval(x, t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::bessel_i2;

    #[test]
    fn cosh_goursat_traces() {
        for &x in &[-1.5, -0.2, 0.0, 0.4, 2.0] {
            assert!((ReferenceKernel::Cosh.eval(x, x).re - 0.5 * x).abs() < 1e-15);
            assert!(ReferenceKernel::Cosh.eval(x, -x).re.abs() < 1e-15);
        }
    }

    #[test]
    fn cosh_matches_bessel_form() {
        let (x, t): (f64, f64) = (1.3, 0.4);
        let r = (x * x - t * t).sqrt();
        let direct = 0.5 * r * bessel_i1(r) / (x - t);
        assert!((ReferenceKernel::Cosh.eval(x, t).re - direct).abs() < 1e-15);
    }

    #[test]
    fn sech_goursat_traces() {
        for &x in &[-1.9, -0.6, 0.3, 1.0, 2.0] {
            let kxx = ReferenceKernel::Sech.eval(x, x).re;
            assert!((kxx - 0.5 * (x - 2.0 * x.tanh())).abs() < 1e-14, "x={x}");
            assert!(ReferenceKernel::Sech.eval(x, -x).re.abs() < 1e-14);
        }
    }

    #[test]
    fn sech_matches_uncancelled_integrand_away_from_diagonal() {
        // the original integrand is fine when s stays away from x
        let (x, t): (f64, f64) = (1.5, 0.5);
        let g = GaussLegendre::new(30);
        let th = x.tanh();
        let int = g.integrate(0.0, t, 1, |s| {
            let r = (x * x - s * s).sqrt();
            let a = th * r * bessel_i1(r) / (x - s);
            let b = ((x * s - x * x) * bessel_i0(r) + r * bessel_i1(r)) / ((x - s) * (x - s));
            Complex64::new(a + b, 0.0)
        });
        let direct = 0.5 * (bessel_i1(x) - bessel_i0(x) * th + int.re);
        assert!((ReferenceKernel::Sech.eval(x, t).re - direct).abs() < 1e-13);
        let _ = bessel_i2(1.0);
    }

    #[test]
    fn taylor_traces_at_origin() {
        // K(0+, t) series: cosh t/4 - t^3/32, sech -t/4 + t^3/96
        let t = 1e-2;
        let x = 1e-9;
        let c = ReferenceKernel::Cosh.eval(x, t).re;
        assert!((c - (t / 4.0 - t.powi(3) / 32.0)).abs() < 1e-9);
        let s = ReferenceKernel::Sech.eval(x, t).re;
        assert!((s - (-t / 4.0 + t.powi(3) / 96.0)).abs() < 1e-9);
    }

    #[test]
    fn analytic_derivatives() {
        for k in [ReferenceKernel::ModelInv, ReferenceKernel::Cosh] {
            for &(x, t) in &[(0.5, 0.2), (-0.4, 0.3), (1.8, -1.1)] {
                let dt = super::super::central4(|s| k.eval(x, s), t, 1e-3);
                let dx = super::super::central4(|s| k.eval(s, t), x, 1e-3);
                assert!((k.dt(x, t) - dt).norm() < 1e-10);
                assert!((k.dx(x, t) - dx).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn checked_evaluation() {
        assert!(reference_kernel(ReferenceKernel::Cosh, 0.5, 0.7).is_err());
        assert!(reference_kernel(ReferenceKernel::ModelInv, -1.0, 0.0).is_err());
        assert_eq!(reference_kernel(ReferenceKernel::ModelF, 0.3, 0.1).unwrap().re, 0.5);
        assert_eq!(ReferenceKernel::parse("sech").unwrap(), ReferenceKernel::Sech);
    }
}
