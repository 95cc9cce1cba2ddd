//! Recomputes the published tables and compares item by item.

use crate::error::{Error, Result};
use crate::kernel::{FitMethod, FitOptions, KernelApproximation, TriangleMesh};
use crate::potential::{Builtin, Potential};
use crate::spectral::{find_eigenvalues, SearchOptions, SpectralProblem};
use crate::tables;
use crate::taylor::{expansion_coefficients, kernel_derivatives_at_origin, s_table_recurrent, ParameterList, PotentialJet};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use std::f64::consts::PI;
use std::sync::Arc;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    STable,
    SechCoefficients,
    KernelTaylor,
    KernelGoursat,
    Eigen,
    All,
}

impl Suite {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "s-table" => Suite::STable,
            "sech-coefficients" => Suite::SechCoefficients,
            "kernel-taylor" => Suite::KernelTaylor,
            "kernel-goursat" => Suite::KernelGoursat,
            "eigen" => Suite::Eigen,
            "all" => Suite::All,
            _ => return Err(Error::InvalidInput(format!("unknown suite {s}"))),
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Suite::STable => "s-table",
            Suite::SechCoefficients => "sech-coefficients",
            Suite::KernelTaylor => "kernel-taylor",
            Suite::KernelGoursat => "kernel-goursat",
            Suite::Eigen => "eigen",
            Suite::All => "all",
        }
    }
}

/// One compared item. `delta` is `|got - expected|` (0 for exact matches), or the ratio
/// `got / expected` for the kernel error tables.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub suite: &'static str,
    pub item: String,
    pub expected: String,
    pub got: String,
    pub delta: f64,
    pub pass: bool,
}

/// Grid size used for the basis families.
pub const N_POINTS: usize = 2001;

pub fn run(suite: Suite) -> Result<Vec<Check>> {
    match suite {
        Suite::STable => Ok(s_table()),
        Suite::SechCoefficients => sech_coefficients(),
        Suite::KernelTaylor => kernel_taylor(),
        Suite::KernelGoursat => kernel_goursat(),
        Suite::Eigen => eigen(),
        Suite::All => {
            let mut out = Vec::new();
            for s in [Suite::STable, Suite::SechCoefficients, Suite::KernelTaylor, Suite::KernelGoursat, Suite::Eigen] {
                out.extend(run(s)?);
            }
            Ok(out)
        }
    }
}

fn s_table() -> Vec<Check> {
    let t = s_table_recurrent(6);
    let mut out = Vec::new();
    for &(n, ell, d, parts, want) in tables::S_TABLE {
        let item = format!("S^{n}_{{{ell};{d};{parts:?}}}");
        let got = ParameterList::new(n, ell, d, parts.to_vec()).ok().and_then(|p| t.integer(&p).cloned());
        let got_s = got.as_ref().map(|v| v.to_string()).unwrap_or_else(|| "missing".into());
        let pass = got_s == want.to_string();
        out.push(Check { suite: "s-table", item, expected: want.to_string(), got: got_s, delta: if pass { 0.0 } else { 1.0 }, pass });
    }
    for n in 1..=6 {
        let want = tables::S_TABLE.iter().filter(|e| e.0 == n).count();
        let got = t.level_len(n);
        out.push(Check {
            suite: "s-table",
            item: format!("entries at level {n}"),
            expected: want.to_string(),
            got: got.to_string(),
            delta: (got as f64 - want as f64).abs(),
            pass: got == want,
        });
    }
    out
}

fn rational(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn pow2_factorial(n: usize) -> BigRational {
    let mut v = BigInt::one() << (n + 1);
    for k in 2..=n {
        v *= k;
    }
    BigRational::from_integer(v)
}

/// Exact jets of `q = 1` (cosh) and `q = 1 - 2 sech^2` (sech), both with `h = 0`.
pub fn exact_cosh_sech_jets(len: usize) -> (PotentialJet<BigRational>, PotentialJet<BigRational>) {
    let mut cosh = vec![BigRational::zero(); len];
    cosh[0] = BigRational::one();
    let mut sech = vec![BigRational::zero(); len];
    for (i, v) in tables::SECH_POTENTIAL_DERIVATIVES.iter().enumerate() {
        if 2 * i < len {
            sech[2 * i] = rational(*v);
        }
    }
    (PotentialJet::new(BigRational::zero(), cosh), PotentialJet::new(BigRational::zero(), sech))
}

fn exact_check(item: String, want: &BigRational, got: &BigRational) -> Check {
    let pass = want == got;
    let delta = if pass { 0.0 } else { num_traits::ToPrimitive::to_f64(&(got - want)).unwrap_or(f64::INFINITY).abs() };
    Check { suite: "sech-coefficients", item, expected: want.to_string(), got: got.to_string(), delta, pass }
}

fn sech_coefficients() -> Result<Vec<Check>> {
    let n_max = 21;
    let (cosh, sech) = exact_cosh_sech_jets(n_max + 1);
    let kc = kernel_derivatives_at_origin(&cosh, n_max)?;
    let ks = kernel_derivatives_at_origin(&sech, n_max)?;
    let coef = expansion_coefficients(&sech, &cosh, n_max)?;
    let mut out = Vec::new();
    for (i, &n) in tables::DERIVATIVE_ORDERS.iter().enumerate() {
        let scale = BigRational::from_integer(BigInt::one() << (n + 1));
        out.push(exact_check(format!("2^{}dK_cosh/dt^{n}", n + 1), &rational(tables::COSH_SCALED_DERIVATIVES[i]), &(&kc[n] * &scale)));
        out.push(exact_check(format!("2^{}dK_sech/dt^{n}", n + 1), &rational(tables::SECH_SCALED_DERIVATIVES[i]), &(&ks[n] * &scale)));
        let den = pow2_factorial(n);
        out.push(exact_check(format!("b_{n}"), &(rational(tables::SECH_B_NUMERATORS[i]) / &den), &coef.b[n]));
        out.push(exact_check(format!("c_{n}"), &(rational(tables::SECH_C_NUMERATORS[i]) / &den), &coef.c[n]));
    }
    for n in (0..=n_max).step_by(2) {
        out.push(exact_check(format!("c_{n}"), &BigRational::zero(), &coef.c[n]));
        out.push(exact_check(format!("b_{n}"), &BigRational::zero(), &coef.b[n]));
    }
    Ok(out)
}

/// Mesh error of a kernel against the potential's closed-form kernel.
pub fn mesh_error(pot: &Potential, k: &KernelApproximation) -> Result<f64> {
    let known = pot.known.as_ref().ok_or_else(|| Error::InvalidInput(format!("no reference kernel for {}", pot.label)))?;
    Ok(TriangleMesh::new(pot.b(), 100).max_difference(k, known.kernel().as_ref()))
}

/// `q = 1` with `f = cosh`, or the sech potential with `f = sech`.
fn named_potential(name: &str, b: f64, jet_len: usize) -> Result<Potential> {
    let which = if name == "cosh" { Builtin::Const(1.0) } else { Builtin::Sech };
    Potential::builtin(which, b, N_POINTS, jet_len)
}

fn ratio_check(suite: &'static str, item: String, want: f64, got: f64, factor: f64) -> Check {
    let ratio = got / want;
    Check { suite, item, expected: format!("{want:e}"), got: format!("{got:.4e}"), delta: ratio, pass: ratio <= factor && ratio >= 1.0 / factor }
}

fn kernel_taylor() -> Result<Vec<Check>> {
    let mut cases: Vec<(&str, f64, usize, f64)> = Vec::new();
    for &(n, e) in tables::TAYLOR_COSH_B2 {
        if [5, 9, 13, 19].contains(&n) {
            cases.push(("cosh", 2.0, n, e));
        }
    }
    for &(b, n, e) in tables::TAYLOR_SECH {
        if b == 1.0 && [3, 7, 11].contains(&n) {
            cases.push(("sech", b, n, e));
        }
    }
    let mut out = Vec::new();
    for (name, b, n, want) in cases {
        let pot = named_potential(name, b, n + 2)?;
        let k = pot.taylor_kernel(pot.family(n)?, n)?;
        let got = mesh_error(&pot, &k)?;
        let factor = if want >= 1e-8 { 3.0 } else { 5.0 };
        out.push(ratio_check("kernel-taylor", format!("K_{name} b={b} N={n}"), want, got, factor));
    }
    Ok(out)
}

fn kernel_goursat() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for &(name, b, n, want) in tables::GOURSAT_REMEZ {
        if !((name == "sech" && (n == 9 || n == 13)) || (name == "cosh" && (n == 13 || n == 19))) {
            continue;
        }
        let pot = named_potential(name, b, 2)?;
        let fam = pot.family(n)?;
        let k = pot.goursat_kernel(Arc::clone(&fam), n, &FitOptions::with_method(FitMethod::Remez))?;
        let got = mesh_error(&pot, &k)?;
        out.push(ratio_check("kernel-goursat", format!("K_{name} b={b} N={n} remez"), want, got, 5.0));
    }
    Ok(out)
}

/// The `q = e^x`, `b = pi`, `N = 30` eigenvalue run, with the traces fitted on `[0, pi]`.
pub fn exp_eigen_problem(method: FitMethod) -> Result<SpectralProblem> {
    let pot = Potential::builtin(Builtin::Exp, PI, N_POINTS, 2)?;
    let fam = pot.family(30)?;
    let k = pot.goursat_kernel(fam, 30, &FitOptions::dirichlet(method))?;
    SpectralProblem::new(pot.q.clone(), k, SearchOptions::default())
}

fn eigen() -> Result<Vec<Check>> {
    let prob = exp_eigen_problem(FitMethod::Remez)?;
    let report = find_eigenvalues(&prob, 1000)?;
    let mut out = Vec::new();
    for &(n, want) in tables::EXP_EIGENVALUES {
        let got = report.eigenvalues.get(n - 1).map(|e| e.omega_sq).unwrap_or(f64::NAN);
        let d = (got - want).abs();
        let pass = d <= 1e-9 && (n < 100 || d <= 1e-12 * want);
        out.push(Check { suite: "eigen", item: format!("omega_{n}^2"), expected: format!("{want}"), got: format!("{got:.15}"), delta: d, pass });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s_table_suite_passes() {
        let c = run(Suite::STable).unwrap();
        assert_eq!(c.len(), tables::S_TABLE.len() + 6);
        assert!(c.iter().all(|c| c.pass), "{c:?}");
    }

    #[test]
    fn sech_coefficient_suite_passes() {
        let c = run(Suite::SechCoefficients).unwrap();
        assert!(c.iter().all(|c| c.pass), "{:?}", c.iter().filter(|c| !c.pass).collect::<Vec<_>>());
    }

    #[test]
    fn suite_names_round_trip() {
        for s in [Suite::STable, Suite::SechCoefficients, Suite::KernelTaylor, Suite::KernelGoursat, Suite::Eigen, Suite::All] {
            assert_eq!(Suite::parse(s.name()).unwrap(), s);
        }
        assert!(Suite::parse("tables").is_err());
    }
}
