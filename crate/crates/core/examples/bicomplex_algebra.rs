//! Hyperbolic units, idempotent components and zero divisors.

use num_complex::Complex64;
use transmutation::Bicomplex;

fn main() {
    let j = Bicomplex::J;
    println!("j^2 = {:?}", j * j);

    let w = Bicomplex::new(Complex64::new(1.0, 2.0), Complex64::new(0.5, -1.0));
    let (plus, minus) = w.to_idempotent();
    println!("w = {w:?}\n  P+ part {plus}, P- part {minus}");
    match w.inv() {
        Some(inv) => println!("w * w^-1 = {:?}", w * inv),
        None => println!("w is a zero divisor"),
    }

    // P+ and P- annihilate each other
    let p = Bicomplex::p_plus() * Bicomplex::p_minus();
    println!("P+ P- = {p:?}, zero divisor: {}", Bicomplex::p_plus().is_zero_divisor(1e-15));
}
