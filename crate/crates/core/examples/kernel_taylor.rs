//! Taylor-method approximation of K_cosh on b = 2 for growing N.

use transmutation::kernel::TriangleMesh;
use transmutation::potential::{Builtin, Potential};

fn main() -> transmutation::Result<()> {
    // q = 1 with f = cosh x and h = 0
    let pot = Potential::builtin(Builtin::Const(1.0), 2.0, 2001, 25)?;
    let exact = pot.known.as_ref().expect("closed form").kernel();
    let fam = pot.family(21)?;
    for n in (5..=21).step_by(4) {
        let k = pot.taylor_kernel(fam.clone(), n)?;
        println!("N = {n:>2}  mesh error {:.4e}", TriangleMesh::new(2.0, 100).max_difference(&k, exact.as_ref()));
    }
    Ok(())
}
