//! Dirichlet eigenvalues of -u'' + e^x u = omega^2 u on [0, pi] with a 30-term kernel.

use std::f64::consts::PI;
use transmutation::kernel::{FitMethod, FitOptions};
use transmutation::potential::{Builtin, Potential};
use transmutation::spectral::{exp_potential_eigenvalue, find_eigenvalues, SearchOptions, SpectralProblem};

fn main() -> transmutation::Result<()> {
    let pot = Potential::builtin(Builtin::Exp, PI, 2001, 2)?;
    let k = pot.goursat_kernel(pot.family(30)?, 30, &FitOptions::dirichlet(FitMethod::Remez))?;
    let problem = SpectralProblem::new(pot.q.clone(), k, SearchOptions::default())?;
    let report = find_eigenvalues(&problem, 1000)?;
    println!("   n              omega_n^2        exact root    abs. error");
    for n in [1, 2, 3, 5, 10, 20, 50, 100, 200, 500, 1000] {
        let e = &report.eigenvalues[n - 1];
        let exact = exp_potential_eigenvalue(e.omega_sq, 1e-3).unwrap_or(f64::NAN);
        println!("{n:>4} {:>22.12} {:>17.12} {:>13.2e}", e.omega_sq, exact, (e.omega_sq - exact).abs());
    }
    Ok(())
}
