//! Recursive integrals phi_k for f = cosh on [-1, 1]; with f = 1 they reduce to x^k.

use transmutation::{build_basis_family, FamilyOptions, GridFunction};

fn main() -> transmutation::Result<()> {
    let f = GridFunction::from_real_fn(1.0, 1001, f64::cosh)?;
    let fam = build_basis_family(&f, 6, &FamilyOptions::default())?;
    println!("h = f'(0) = {:.3e}", fam.h.re);
    println!("  x      phi_0      phi_1      phi_2      phi_3");
    for &x in &[-1.0, -0.5, 0.0, 0.5, 1.0] {
        let p = fam.phi_at(x);
        println!("{x:>4} {:>10.6} {:>10.6} {:>10.6} {:>10.6}", p[0].re, p[1].re, p[2].re, p[3].re);
    }

    let one = GridFunction::from_real_fn(1.0, 201, |_| 1.0)?;
    let flat = build_basis_family(&one, 4, &FamilyOptions::default())?;
    println!("f = 1: phi_4(0.7) = {:.15} (0.7^4 = {:.15})", flat.phi_at(0.7)[4].re, 0.7f64.powi(4));
    Ok(())
}
