//! K_sech obtained from K_cosh through the Darboux relation, then back again.

use transmutation::kernel::{darboux_kernel, DarbouxDirection, DarbouxKernel, Kernel, ReferenceKernel};
use transmutation::{build_basis_family, FamilyOptions, GridFunction};
use std::sync::Arc;

fn main() -> transmutation::Result<()> {
    let f = GridFunction::from_real_fn(1.5, 1501, f64::cosh)?;
    let fam = Arc::new(build_basis_family(&f, 2, &FamilyOptions::default())?);
    let sech = darboux_kernel(ReferenceKernel::Cosh, fam.clone());
    let back = DarbouxKernel::new(ReferenceKernel::Sech, fam, DarbouxDirection::FromInverse);
    for &(x, t) in &[(0.5, 0.1), (1.0, -0.6), (1.4, 1.2)] {
        println!(
            "({x}, {t})  sech {:+.12} (closed form {:+.12})  cosh {:+.12} (closed form {:+.12})",
            sech.eval(x, t).re,
            ReferenceKernel::Sech.eval(x, t).re,
            back.eval(x, t).re,
            ReferenceKernel::Cosh.eval(x, t).re
        );
    }
    Ok(())
}
