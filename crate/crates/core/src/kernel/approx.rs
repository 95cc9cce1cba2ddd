//! Kernels represented as `c_0 u_0 + sum_{n<=N} (c_n u_{2n-1} + b_n u_{2n})`.

use super::Kernel;
use crate::error::{Error, Result};
use crate::grid::BasisFamily;
use crate::taylor::{coefficients_from_jet, PotentialJet};
use crate::wave::binomial;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::sync::Arc;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum KernelMethod {
    Taylor,
    LeastSquares,
    Remez,
}

#[derive(Debug, Clone)]
pub struct KernelApproximation {
    pub family: Arc<BasisFamily>,
    pub n: usize,
    /// `c_0..c_N`.
    pub c: Vec<Complex64>,
    /// `b_0..b_N`; `b_0` is unused and zero.
    pub b: Vec<Complex64>,
    pub method: KernelMethod,
    /// Achieved maximal errors of the two Goursat traces, when fitted.
    pub trace_errors: Option<(f64, f64)>,
    /// Set when the minimax fit did not converge and least squares was used.
    pub fallback: bool,
    /// Trace columns left out of a rank-truncated fit.
    pub dropped_columns: usize,
}

#[derive(Serialize, Deserialize)]
struct KernelJson {
    #[serde(rename = "N")]
    n: usize,
    c: Vec<Complex64>,
    b: Vec<Complex64>,
    method: KernelMethod,
    fingerprint: String,
}

/// Kernel from the generalized Taylor coefficients computed out of the jet of `q_f`.
pub fn kernel_from_taylor(family: Arc<BasisFamily>, jet_f: &PotentialJet, n: usize) -> Result<KernelApproximation> {
    family.require_order(n)?;
    let e = coefficients_from_jet(jet_f, n)?;
    KernelApproximation::new(family, e.c, e.b, KernelMethod::Taylor)
}

/// `sum_{k even} C(m,k) v[m-k] t^k` and the odd counterpart, plus their `t`-derivatives.
fn sums_with_dt(vals: &[Complex64], m: usize, t: f64) -> [Complex64; 4] {
    let zero = Complex64::new(0.0, 0.0);
    let mut out = [zero; 4];
    let mut tk = 1.0;
    let mut tkm1 = 0.0;
    for k in 0..=m {
        let c = binomial(m, k);
        let v = vals[m - k] * c;
        let p = k % 2;
        out[p] += v * tk;
        out[2 + p] += v * (k as f64 * tkm1);
        tkm1 = tk;
        tk *= t;
    }
    out
}

impl KernelApproximation {
    pub fn new(family: Arc<BasisFamily>, c: Vec<Complex64>, b: Vec<Complex64>, method: KernelMethod) -> Result<Self> {
        if c.is_empty() || c.len() != b.len() {
            return Err(Error::InvalidInput("need c_0..c_N and b_0..b_N of equal length".into()));
        }
        let n = c.len() - 1;
        family.require_order(n)?;
        Ok(KernelApproximation { family, n, c, b, method, trace_errors: None, fallback: false, dropped_columns: 0 })
    }

    fn combine(&self, vals: &[Complex64], t: f64, derivative: bool) -> Complex64 {
        let mut acc = if derivative { Complex64::new(0.0, 0.0) } else { self.c[0] * vals[0] };
        for m in 1..=self.n {
            let s = sums_with_dt(vals, m, t);
            let (even, odd) = if derivative { (s[2], s[3]) } else { (s[0], s[1]) };
            acc += self.c[m] * even + self.b[m] * odd;
        }
        acc
    }

    /// `x^k + int_{-x}^{x} K(x,t) t^k dt`, using exact moments of the polynomial in `t`.
    pub fn apply_to_monomial(&self, k: usize, x: f64) -> Complex64 {
        let phi = BasisFamily::eval_all(&self.family.phi[..=self.n], x);
        let moment = |j: usize| -> f64 {
            let p = j + k;
            if p % 2 == 1 {
                0.0
            } else {
                2.0 * x.powi(p as i32 + 1) / (p + 1) as f64
            }
        };
        let mut acc = self.c[0] * phi[0] * moment(0);
        for m in 1..=self.n {
            for j in 0..=m {
                let w = phi[m - j] * (binomial(m, j) * moment(j));
                acc += if j % 2 == 0 { self.c[m] * w } else { self.b[m] * w };
            }
        }
        acc + x.powi(k as i32)
    }

    /// Goursat traces `((K(x,x) + K(x,-x))/2, (K(x,x) - K(x,-x))/2)`.
    pub fn traces(&self, x: f64) -> (Complex64, Complex64) {
        let a = self.eval(x, x);
        let b = self.eval(x, -x);
        ((a + b) * 0.5, (a - b) * 0.5)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(&KernelJson {
            n: self.n,
            c: self.c.clone(),
            b: self.b.clone(),
            method: self.method,
            fingerprint: self.family.fingerprint(),
        })?)
    }

    /// Restores a kernel saved by [`KernelApproximation::to_json`] for the same family.
    pub fn from_json(s: &str, family: Arc<BasisFamily>) -> Result<Self> {
        let j: KernelJson = serde_json::from_str(s)?;
        if j.fingerprint != family.fingerprint() {
            return Err(Error::FingerprintMismatch);
        }
        if j.c.len() != j.n + 1 {
            return Err(Error::InvalidInput("coefficient count does not match N".into()));
        }
        Self::new(family, j.c, j.b, j.method)
    }
}

impl Kernel for KernelApproximation {
    fn eval(&self, x: f64, t: f64) -> Complex64 {
        let vals = BasisFamily::eval_all(&self.family.phi[..=self.n], x);
        self.combine(&vals, t, false)
    }

    fn dt(&self, x: f64, t: f64) -> Complex64 {
        let vals = BasisFamily::eval_all(&self.family.phi[..=self.n], x);
        self.combine(&vals, t, true)
    }

    fn dx(&self, x: f64, t: f64) -> Complex64 {
        let vals = BasisFamily::eval_all_derivative(&self.family.phi[..=self.n], x);
        self.combine(&vals, t, false)
    }
}
