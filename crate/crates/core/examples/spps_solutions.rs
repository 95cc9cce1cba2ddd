//! Spectral parameter power series for -u'' + u = omega^2 u on [-pi, pi].

use num_complex::Complex64;
use transmutation::spps::spps_evaluate;
use transmutation::{build_basis_family, FamilyOptions, GridFunction};

fn main() -> transmutation::Result<()> {
    let b = std::f64::consts::PI;
    let f = GridFunction::from_real_fn(b, 2001, f64::cosh)?;
    let fam = build_basis_family(&f, 61, &FamilyOptions::default())?;
    let omega: f64 = 2.5;
    // g'' - q g = lambda g with lambda = -omega^2
    let sol = spps_evaluate(&fam, Complex64::new(-omega * omega, 0.0), 30)?;
    let k = (omega * omega - 1.0).sqrt();
    for &x in &[0.5, 1.5, b] {
        println!("x = {x:.3}  g2 = {:.12}  sin(kx)/k = {:.12}", sol.g2.eval(x).re, (k * x).sin() / k);
    }
    let w = sol.wronskian();
    let spread = w.values.iter().map(|v| (v - w.values[0]).norm()).fold(0.0, f64::max);
    println!("Wronskian {:.12}, spread over the grid {spread:.1e}", w.values[0].re);
    Ok(())
}
