//! Goursat-data fits of K_sech on b = 2: least squares against minimax.

use std::sync::Arc;
use transmutation::kernel::{FitMethod, FitOptions, TriangleMesh};
use transmutation::potential::{Builtin, Potential};

fn main() -> transmutation::Result<()> {
    let pot = Potential::builtin(Builtin::Sech, 2.0, 2001, 2)?;
    let exact = pot.known.as_ref().expect("closed form").kernel();
    for n in [5, 9, 13] {
        let fam = pot.family(n)?;
        for m in [FitMethod::LeastSquares, FitMethod::Remez] {
            let k = pot.goursat_kernel(Arc::clone(&fam), n, &FitOptions::with_method(m))?;
            let (e1, e2) = k.trace_errors.unwrap_or_default();
            let mesh = TriangleMesh::new(2.0, 100).max_difference(&k, exact.as_ref());
            println!("N = {n:>2} {m:<13?} traces {e1:.2e} {e2:.2e}  mesh {mesh:.4e}");
        }
    }
    Ok(())
}
