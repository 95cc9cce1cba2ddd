//! Dirichlet eigenvalues of `-u'' + q u = omega^2 u` on `[0, b]` as the positive zeros of
//! `omega -> s_N(b; omega)`, the image of `sin(omega x)` under an approximate kernel.
//!
//! Only real `omega` are searched, so eigenvalues with `omega^2 <= 0` are not reported.

mod extend;
mod moments;
mod oracle;

pub use extend::{extend_potential, read_potential_csv, ExtensionMode, HalfGridFunction};
pub use moments::sine_moment;
pub use oracle::{exp_potential_characteristic, exp_potential_eigenvalue};

use crate::error::{Error, Result};
use crate::grid::{BasisFamily, GridFunction};
use crate::kernel::KernelApproximation;
use crate::wave::binomial;
use moments::{sin_cos_of_product, sine_moments_with_derivative};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::PI;
use std::io::{Read, Write};

#[derive(Debug, Clone, PartialEq)]
pub struct SearchOptions {
    /// Start of the scan, default `0.01 * scan_step`.
    pub omega_min: Option<f64>,
    /// End of the scan, default from the eigenvalue count and `max q`.
    pub omega_max: Option<f64>,
    /// Default `pi / (4 b)`.
    pub scan_step: Option<f64>,
    /// Relative bisection tolerance in `omega`.
    pub root_tol: f64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { omega_min: None, omega_max: None, scan_step: None, root_tol: 1e-13 }
    }
}

#[derive(Debug, Clone)]
pub struct SpectralProblem {
    /// Potential on `[-b, b]`.
    pub q: GridFunction,
    pub b: f64,
    pub kernel: KernelApproximation,
    pub search: SearchOptions,
}

impl SpectralProblem {
    /// Checks that the kernel's family lives on `[-b, b]` and that `f'' = q f` there.
    pub fn new(q: GridFunction, kernel: KernelApproximation, search: SearchOptions) -> Result<Self> {
        let fam = &kernel.family;
        let b = q.b;
        if (fam.b() - b).abs() > 1e-12 * b {
            return Err(Error::InvalidInput(format!("kernel lives on [-{}, {}], potential on [-{b}, {b}]", fam.b(), fam.b())));
        }
        let residual = particular_solution_defect(fam, &q);
        if residual > 1e-3 {
            return Err(Error::InvalidInput(format!("f'' = q f fails with relative defect {residual:.2e}; kernel and potential do not match")));
        }
        Ok(SpectralProblem { q, b, kernel, search })
    }
}

/// `max |f'' - q f| / max |q f|` over the interior nodes of the family grid.
fn particular_solution_defect(fam: &BasisFamily, q: &GridFunction) -> f64 {
    let d2 = fam.df.derivative();
    let n = fam.n_points();
    let mut num = 0.0f64;
    let mut den = 1e-300f64;
    for i in 8.min(n / 2)..n.saturating_sub(8).max(n / 2 + 1) {
        let x = fam.f.node(i);
        let qf = q.eval(x) * fam.f.values[i];
        num = num.max((d2.values[i] - qf).norm());
        den = den.max(qf.norm()).max(d2.values[i].norm());
    }
    num / den.max(1.0)
}

/// `A_k(x) = sum_{n >= k} b_n C(n, k) phi_{n-k}(x)` for odd `k`.
fn moment_weights(kernel: &KernelApproximation, x: f64) -> Vec<Complex64> {
    let n = kernel.n;
    let phi = BasisFamily::eval_all(&kernel.family.phi[..=n], x);
    let mut a = vec![Complex64::new(0.0, 0.0); n + 1];
    for k in (1..=n).step_by(2) {
        for m in k..=n {
            a[k] += kernel.b[m] * phi[m - k] * binomial(m, k);
        }
    }
    a
}

/// `s_N(x; omega) = sin(omega x) + int_{-x}^{x} K_N(x, t) sin(omega t) dt`.
pub fn s_n(kernel: &KernelApproximation, x: f64, omega: f64) -> Complex64 {
    let a = moment_weights(kernel, x);
    let (m, _) = sine_moments_with_derivative(kernel.n.max(1), omega, x);
    let mut s = Complex64::new(sin_cos_of_product(omega, x).0, 0.0);
    for k in (1..=kernel.n).step_by(2) {
        s += a[k] * m[k];
    }
    s
}

/// `omega -> s_N(b; omega)` with the weights `A_k(b)` precomputed.
#[derive(Debug, Clone)]
pub struct CharacteristicFunction {
    pub b: f64,
    a: Vec<f64>,
}

impl CharacteristicFunction {
    pub fn new(kernel: &KernelApproximation, b: f64) -> Result<Self> {
        let a = moment_weights(kernel, b);
        let scale = a.iter().map(|v| v.norm()).fold(1.0, f64::max);
        let worst = a.iter().map(|v| v.im.abs()).fold(0.0, f64::max);
        if worst > 1e-8 * scale {
            return Err(Error::ComplexUnsupported(format!(
                "s_N(b; omega) has imaginary weights up to {worst:.2e}; eigenvalue search needs a real characteristic function"
            )));
        }
        Ok(CharacteristicFunction { b, a: a.iter().map(|v| v.re).collect() })
    }

    pub fn eval(&self, omega: f64) -> f64 {
        self.eval_with_derivative(omega).0
    }

    /// Value and `omega`-derivative.
    pub fn eval_with_derivative(&self, omega: f64) -> (f64, f64) {
        let kmax = self.a.len().saturating_sub(1).max(1);
        let (m, dm) = sine_moments_with_derivative(kmax, omega, self.b);
        let (s, c) = sin_cos_of_product(omega, self.b);
        let mut v = s;
        let mut d = self.b * c;
        for k in (1..self.a.len()).step_by(2) {
            v += self.a[k] * m[k];
            d += self.a[k] * dm[k];
        }
        (v, d)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EigenvalueResult {
    pub index: usize,
    pub omega: f64,
    pub omega_sq: f64,
    pub char_value_residual: f64,
    pub bracket: (f64, f64),
}

#[derive(Debug, Clone, Serialize)]
pub struct EigenReport {
    pub eigenvalues: Vec<EigenvalueResult>,
    /// Fewer than the requested count were found below `omega_max`.
    pub partial: bool,
    /// Scan cells in which two zeros were found after halving.
    pub double_root_cells: Vec<(f64, f64)>,
    pub omega_max: f64,
}

/// The first `count` positive zeros of `s_N(b; .)`, squared.
pub fn find_eigenvalues(problem: &SpectralProblem, count: usize) -> Result<EigenReport> {
    if count == 0 {
        return Err(Error::InvalidInput("count must be at least 1".into()));
    }
    let b = problem.b;
    let chi = CharacteristicFunction::new(&problem.kernel, b)?;
    let opts = &problem.search;
    let step = opts.scan_step.unwrap_or(PI / (4.0 * b));
    let omega_min = opts.omega_min.unwrap_or(0.01 * step);
    let qmax = problem.q.values.iter().map(|v| v.re).fold(0.0, f64::max);
    let omega_max = opts.omega_max.unwrap_or(((count + 2) as f64 * PI / b).hypot(qmax.sqrt()) + PI / b);
    if !(step > 0.0 && omega_min >= 0.0 && omega_max > omega_min) {
        return Err(Error::InvalidInput("need scan_step > 0 and 0 <= omega_min < omega_max".into()));
    }
    let cells = ((omega_max - omega_min) / step).ceil() as usize;
    let grid: Vec<f64> = (0..=cells).map(|i| omega_min + step * i as f64).collect();
    let vals: Vec<f64> = grid.par_iter().map(|&w| chi.eval(w)).collect();

    // brackets per cell; same-sign cells are halved once to catch close pairs
    let per_cell: Vec<(Vec<(f64, f64, f64, f64)>, bool)> = (0..cells)
        .into_par_iter()
        .map(|i| {
            let (a, fa, c, fc) = (grid[i], vals[i], grid[i + 1], vals[i + 1]);
            if fa == 0.0 {
                return (vec![(a, a, fa, fa)], false);
            }
            if fa.signum() != fc.signum() {
                return (vec![(a, c, fa, fc)], false);
            }
            let m = 0.5 * (a + c);
            let fm = chi.eval(m);
            if fm.signum() != fa.signum() {
                (vec![(a, m, fa, fm), (m, c, fm, fc)], true)
            } else {
                (Vec::new(), false)
            }
        })
        .collect();
    let mut brackets = Vec::new();
    let mut double_root_cells = Vec::new();
    for (i, (bs, double)) in per_cell.into_iter().enumerate() {
        if double {
            double_root_cells.push((grid[i], grid[i + 1]));
        }
        brackets.extend(bs);
        if brackets.len() >= count {
            break;
        }
    }
    brackets.truncate(count);
    let tol = opts.root_tol;
    let mut eigenvalues: Vec<EigenvalueResult> = brackets.par_iter().map(|&br| refine(&chi, br, tol)).collect();
    eigenvalues.sort_by(|a, b| a.omega.total_cmp(&b.omega));
    for (i, e) in eigenvalues.iter_mut().enumerate() {
        e.index = i + 1;
    }
    double_root_cells.retain(|c| eigenvalues.last().is_some_and(|e| c.0 <= e.omega));
    Ok(EigenReport { partial: eigenvalues.len() < count, eigenvalues, double_root_cells, omega_max })
}

/// Bisection to `tol` (relative), then one Newton step from the midpoint.
fn refine(chi: &CharacteristicFunction, (mut lo, mut hi, mut flo, _fhi): (f64, f64, f64, f64), tol: f64) -> EigenvalueResult {
    while hi - lo > tol * hi.abs().max(1.0) {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = chi.eval(mid);
        if fm == 0.0 {
            lo = mid;
            hi = mid;
            break;
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    let mid = 0.5 * (lo + hi);
    let (f, df) = chi.eval_with_derivative(mid);
    let mut delta = if df != 0.0 { -f / df } else { 0.0 };
    if !(delta.abs() <= (hi - lo).max(f64::EPSILON * mid)) {
        delta = 0.0;
    }
    let omega = mid + delta;
    EigenvalueResult {
        index: 0,
        omega,
        omega_sq: mid * mid + (2.0 * mid * delta + delta * delta),
        char_value_residual: chi.eval(omega).abs(),
        bracket: (lo, hi),
    }
}

/// Reads `n,omega_sq` rows (header optional).
pub fn read_reference_csv<R: Read>(r: R) -> Result<Vec<(usize, f64)>> {
    let mut rd = csv::ReaderBuilder::new().has_headers(false).flexible(true).from_reader(r);
    let mut out = Vec::new();
    for (line, rec) in rd.records().enumerate() {
        let rec = rec?;
        let n = rec.get(0).and_then(|s| s.trim().parse::<usize>().ok());
        let v = rec.get(1).and_then(|s| s.trim().parse::<f64>().ok());
        match (n, v) {
            (Some(n), Some(v)) => out.push((n, v)),
            _ if line == 0 => continue,
            _ => return Err(Error::InvalidInput(format!("reference row {} is not `n,value`", line + 1))),
        }
    }
    Ok(out)
}

impl EigenReport {
    fn lookup(reference: Option<&[(usize, f64)]>, n: usize) -> Option<f64> {
        reference?.iter().find(|(k, _)| *k == n).map(|(_, v)| *v)
    }

    /// CSV `n,omega_sq,residual`, plus `reference,abs_error,rel_error` when a reference is given.
    pub fn write_csv<W: Write>(&self, w: W, reference: Option<&[(usize, f64)]>) -> Result<()> {
        let mut wr = csv::Writer::from_writer(w);
        if reference.is_some() {
            wr.write_record(["n", "omega_sq", "residual", "reference", "abs_error", "rel_error"])?;
        } else {
            wr.write_record(["n", "omega_sq", "residual"])?;
        }
        for e in &self.eigenvalues {
            let mut row = vec![e.index.to_string(), format!("{:.16e}", e.omega_sq), format!("{:.3e}", e.char_value_residual)];
            if reference.is_some() {
                match Self::lookup(reference, e.index) {
                    Some(r) => {
                        let d = (e.omega_sq - r).abs();
                        row.extend([format!("{r:.16e}"), format!("{d:.3e}"), format!("{:.3e}", d / r.abs())]);
                    }
                    None => row.extend([String::new(), String::new(), String::new()]),
                }
            }
            wr.write_record(&row)?;
        }
        wr.flush()?;
        Ok(())
    }

    pub fn to_json(&self, reference: Option<&[(usize, f64)]>) -> serde_json::Value {
        let rows: Vec<serde_json::Value> = self
            .eigenvalues
            .iter()
            .map(|e| {
                let mut v = serde_json::json!({"n": e.index, "omega_sq": e.omega_sq, "residual": e.char_value_residual});
                if let Some(r) = Self::lookup(reference, e.index) {
                    v["reference"] = r.into();
                    v["abs_error"] = (e.omega_sq - r).abs().into();
                }
                v
            })
            .collect();
        serde_json::json!({
            "eigenvalues": rows,
            "partial": self.partial,
            "double_root_cells": self.double_root_cells,
            "omega_max": self.omega_max,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{FitMethod, FitOptions, KernelMethod};
    use crate::potential::{Builtin, Potential};
    use std::sync::Arc;

    fn zero_problem(b: f64) -> SpectralProblem {
        let p = Potential::builtin(Builtin::Zero, b, 201, 4).unwrap();
        let fam = p.family(4).unwrap();
        let z = vec![Complex64::new(0.0, 0.0); 5];
        let k = KernelApproximation::new(fam, z.clone(), z, KernelMethod::Taylor).unwrap();
        SpectralProblem::new(p.q, k, SearchOptions::default()).unwrap()
    }

    #[test]
    fn zero_potential_gives_sine() {
        let p = zero_problem(PI);
        for &w in &[0.3, 1.7, 12.0] {
            assert_eq!(s_n(&p.kernel, 2.0, w).re, (w * 2.0f64).sin());
            assert_eq!(s_n(&p.kernel, 0.0, w).re, 0.0);
        }
        let r = find_eigenvalues(&p, 50).unwrap();
        assert!(!r.partial);
        for e in &r.eigenvalues {
            let n = e.index as f64;
            assert!((e.omega_sq - n * n).abs() <= 1e-12 * n * n, "{e:?}");
        }
    }

    #[test]
    fn other_interval_lengths() {
        let p = zero_problem(2.0);
        let r = find_eigenvalues(&p, 10).unwrap();
        for e in &r.eigenvalues {
            let want = (e.index as f64 * PI / 2.0).powi(2);
            assert!((e.omega_sq - want).abs() <= 1e-12 * want);
        }
    }

    #[test]
    fn partial_results_are_flagged() {
        let mut p = zero_problem(PI);
        p.search.omega_max = Some(3.5);
        let r = find_eigenvalues(&p, 10).unwrap();
        assert!(r.partial);
        assert_eq!(r.eigenvalues.len(), 3);
    }

    #[test]
    fn exp_potential_against_exact_roots() {
        let pot = Potential::builtin(Builtin::Exp, PI, 2001, 2).unwrap();
        let fam = pot.family(30).unwrap();
        let k = pot.goursat_kernel(Arc::clone(&fam), 30, &FitOptions::dirichlet(FitMethod::Remez)).unwrap();
        let prob = SpectralProblem::new(pot.q.clone(), k, SearchOptions::default()).unwrap();
        let r = find_eigenvalues(&prob, 1000).unwrap();
        assert!(!r.partial && r.eigenvalues.len() == 1000);
        let first = exp_potential_eigenvalue(4.89666937996891, 0.01).unwrap();
        assert!((r.eigenvalues[0].omega_sq - first).abs() <= 1e-11);
        for n in [2usize, 3, 5, 10, 20, 50] {
            let e = exp_potential_eigenvalue(r.eigenvalues[n - 1].omega_sq, 0.05).unwrap();
            assert!((r.eigenvalues[n - 1].omega_sq - e).abs() <= 1e-9, "n = {n}");
        }
        let last = exp_potential_eigenvalue(1000007.04760844, 1e-4).unwrap();
        assert!((r.eigenvalues[999].omega_sq - last).abs() <= 1e-13 * last);
        for w in r.eigenvalues.windows(2) {
            assert!(w[0].omega < w[1].omega);
        }
        for e in &r.eigenvalues {
            assert!(e.bracket.0 - 1e-12 <= e.omega && e.omega <= e.bracket.1 + 1e-12, "{e:?}");
        }
    }

    #[test]
    fn exact_oracle_matches_tabulated_roots() {
        // tabulated values carry their own errors of at most a few 1e-10
        for (n, w) in [(1usize, 4.89666937996891), (10, 107.116676138236), (1000, 1000007.04760844)] {
            let e = exp_potential_eigenvalue(w, 1e-3).unwrap();
            assert!((e - w).abs() < 5e-10, "{n}: {e}");
        }
    }

    #[test]
    fn mismatched_kernel_is_rejected() {
        let p = zero_problem(PI);
        let q = GridFunction::from_real_fn(PI, 201, |x| x.exp()).unwrap();
        assert!(SpectralProblem::new(q, p.kernel.clone(), SearchOptions::default()).is_err());
    }

    #[test]
    fn exports() {
        let p = zero_problem(PI);
        let r = find_eigenvalues(&p, 3).unwrap();
        let mut buf = Vec::new();
        let reference = [(1, 1.0), (3, 9.0)];
        r.write_csv(&mut buf, Some(&reference)).unwrap();
        let s = String::from_utf8(buf).unwrap();
        assert_eq!(s.lines().count(), 4);
        assert!(s.lines().nth(2).unwrap().ends_with(",,,"));
        let j = r.to_json(Some(&reference));
        assert_eq!(j["eigenvalues"][2]["reference"], 9.0);
        let back = read_reference_csv("n,omega_sq\n1,1.5\n2,4.5\n".as_bytes()).unwrap();
        assert_eq!(back, vec![(1, 1.5), (2, 4.5)]);
    }
}
