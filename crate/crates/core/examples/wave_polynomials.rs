//! Generalized wave polynomials u_m(x, t) and their parity under t -> -t.

use transmutation::wave::{generalized_wave_polynomials, wave_polynomial, Which};
use transmutation::{build_basis_family, FamilyOptions, GridFunction};

fn main() -> transmutation::Result<()> {
    let f = GridFunction::from_real_fn(1.0, 1001, |x| 1.0 / x.cosh())?;
    let fam = build_basis_family(&f, 8, &FamilyOptions::default())?;
    let (x, t) = (0.8, 0.3);
    let u = generalized_wave_polynomials(&fam, 8, x, t, Which::U)?;
    let u_neg = generalized_wave_polynomials(&fam, 8, x, -t, Which::U)?;
    println!(" m      u_m(x,t)     u_m(x,-t)   p_m(x,t)");
    for m in 0..=8 {
        println!("{m:>2} {:>13.9} {:>13.9} {:>10.6}", u[m].re, u_neg[m].re, wave_polynomial(m, x, t));
    }
    Ok(())
}
