//! Exact S-coefficients and the rational expansion coefficients of the sech kernel.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use transmutation::tables::SECH_POTENTIAL_DERIVATIVES;
use transmutation::taylor::{enumerate_parameter_lists, expansion_coefficients, s_table_recurrent, PotentialJet};

fn main() -> transmutation::Result<()> {
    let table = s_table_recurrent(6);
    for p in enumerate_parameter_lists(5) {
        println!("S^5_{{{};{};{:?}}} = {}", p.ell, p.d, p.parts, table.integer(&p).map(|v| v.to_string()).unwrap_or_default());
    }

    let n = 11;
    let mut cosh = vec![BigRational::zero(); n + 1];
    cosh[0] = BigRational::one();
    let mut sech = vec![BigRational::zero(); n + 1];
    for (i, v) in SECH_POTENTIAL_DERIVATIVES.iter().enumerate().take(n / 2 + 1) {
        sech[2 * i] = BigRational::from_integer(BigInt::from(*v));
    }
    let zero = BigRational::zero();
    let coef = expansion_coefficients(&PotentialJet::new(zero.clone(), sech), &PotentialJet::new(zero, cosh), n)?;
    for k in (1..=n).step_by(2) {
        println!("n = {k:>2}  b_n = {:<22} c_n = {}", coef.b[k].to_string(), coef.c[k]);
    }
    Ok(())
}
