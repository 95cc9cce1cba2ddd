//! Bicomplex numbers `u + v j` with `j^2 = 1` and complex components.
//!
//! The imaginary unit of the components is `i`; it commutes with `j`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Bicomplex {
    /// Scalar part `u`.
    pub re: Complex64,
    /// Coefficient `v` of `j`.
    pub im: Complex64,
}

impl Bicomplex {
    pub const ZERO: Bicomplex = Bicomplex {
        re: Complex64::new(0.0, 0.0),
        im: Complex64::new(0.0, 0.0),
    };
    pub const ONE: Bicomplex = Bicomplex {
        re: Complex64::new(1.0, 0.0),
        im: Complex64::new(0.0, 0.0),
    };
    pub const J: Bicomplex = Bicomplex {
        re: Complex64::new(0.0, 0.0),
        im: Complex64::new(1.0, 0.0),
    };

    pub fn new(re: Complex64, im: Complex64) -> Self {
        Bicomplex { re, im }
    }

    pub fn from_complex(c: Complex64) -> Self {
        Bicomplex { re: c, im: Complex64::new(0.0, 0.0) }
    }

    pub fn from_real(x: f64) -> Self {
        Self::from_complex(Complex64::new(x, 0.0))
    }

    /// `P+ = (1 + j)/2`.
    pub fn p_plus() -> Self {
        Bicomplex::new(Complex64::new(0.5, 0.0), Complex64::new(0.5, 0.0))
    }

    /// `P- = (1 - j)/2`.
    pub fn p_minus() -> Self {
        Bicomplex::new(Complex64::new(0.5, 0.0), Complex64::new(-0.5, 0.0))
    }

    /// Conjugation with respect to `j`: `u + v j -> u - v j`.
    pub fn conj(self) -> Self {
        Bicomplex::new(self.re, -self.im)
    }

    /// Idempotent components `(u + v, u - v)`.
    pub fn to_idempotent(self) -> (Complex64, Complex64) {
        (self.re + self.im, self.re - self.im)
    }

    /// Inverse of [`Bicomplex::to_idempotent`]: `P+ w+ + P- w-`.
    pub fn from_idempotent(plus: Complex64, minus: Complex64) -> Self {
        Bicomplex::new((plus + minus) * 0.5, (plus - minus) * 0.5)
    }

    /// `(|w+| + |w-|)/2`.
    pub fn norm(self) -> f64 {
        let (p, m) = self.to_idempotent();
        0.5 * (p.norm() + m.norm())
    }

    /// Zero divisors are exactly the elements with a vanishing idempotent component.
    pub fn is_zero_divisor(self, tol: f64) -> bool {
        let (p, m) = self.to_idempotent();
        p.norm() <= tol || m.norm() <= tol
    }

    /// Multiplicative inverse, `None` for zero divisors.
    pub fn inv(self) -> Option<Self> {
        let (p, m) = self.to_idempotent();
        if p == Complex64::new(0.0, 0.0) || m == Complex64::new(0.0, 0.0) {
            return None;
        }
        Some(Self::from_idempotent(p.inv(), m.inv()))
    }

    pub fn powu(self, n: u32) -> Self {
        let (p, m) = self.to_idempotent();
        Self::from_idempotent(p.powu(n), m.powu(n))
    }

    pub fn scale(self, s: Complex64) -> Self {
        Bicomplex::new(self.re * s, self.im * s)
    }
}

impl Add for Bicomplex {
    type Output = Bicomplex;
    fn add(self, o: Bicomplex) -> Bicomplex {
        Bicomplex::new(self.re + o.re, self.im + o.im)
    }
}

impl Sub for Bicomplex {
    type Output = Bicomplex;
    fn sub(self, o: Bicomplex) -> Bicomplex {
        Bicomplex::new(self.re - o.re, self.im - o.im)
    }
}

impl Neg for Bicomplex {
    type Output = Bicomplex;
    fn neg(self) -> Bicomplex {
        Bicomplex::new(-self.re, -self.im)
    }
}

impl Mul for Bicomplex {
    type Output = Bicomplex;
    fn mul(self, o: Bicomplex) -> Bicomplex {
        Bicomplex::new(
            self.re * o.re + self.im * o.im,
            self.re * o.im + self.im * o.re,
        )
    }
}

impl Mul<Complex64> for Bicomplex {
    type Output = Bicomplex;
    fn mul(self, s: Complex64) -> Bicomplex {
        self.scale(s)
    }
}

impl Mul<f64> for Bicomplex {
    type Output = Bicomplex;
    fn mul(self, s: f64) -> Bicomplex {
        Bicomplex::new(self.re * s, self.im * s)
    }
}

impl AddAssign for Bicomplex {
    fn add_assign(&mut self, o: Bicomplex) {
        *self = *self + o;
    }
}

impl SubAssign for Bicomplex {
    fn sub_assign(&mut self, o: Bicomplex) {
        *self = *self - o;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(a: f64, b: f64) -> Complex64 {
        Complex64::new(a, b)
    }

    fn arb() -> impl Strategy<Value = Bicomplex> {
        (-5.0..5.0f64, -5.0..5.0f64, -5.0..5.0f64, -5.0..5.0f64)
            .prop_map(|(a, b, x, y)| Bicomplex::new(c(a, b), c(x, y)))
    }

    fn close(a: Bicomplex, b: Bicomplex, tol: f64) -> bool {
        (a - b).re.norm() <= tol && (a - b).im.norm() <= tol
    }

    #[test]
    fn j_squares_to_one() {
        assert_eq!(Bicomplex::J * Bicomplex::J, Bicomplex::ONE);
    }

    #[test]
    fn idempotents() {
        let p = Bicomplex::p_plus();
        let m = Bicomplex::p_minus();
        assert_eq!(p * p, p);
        assert_eq!(m * m, m);
        assert_eq!(p * m, Bicomplex::ZERO);
        assert_eq!(p + m, Bicomplex::ONE);
        assert!(p.is_zero_divisor(0.0));
        assert!(p.inv().is_none());
    }

    proptest! {
        #[test]
        fn split_roundtrip(w in arb()) {
            let (p, m) = w.to_idempotent();
            let back = Bicomplex::p_plus() * p + Bicomplex::p_minus() * m;
            prop_assert!(close(back, w, 1e-12));
            prop_assert!(close(Bicomplex::from_idempotent(p, m), w, 1e-12));
        }

        #[test]
        fn product_is_componentwise_in_idempotent_basis(a in arb(), b in arb()) {
            let (ap, am) = a.to_idempotent();
            let (bp, bm) = b.to_idempotent();
            let (pp, pm) = (a * b).to_idempotent();
            prop_assert!((pp - ap * bp).norm() <= 1e-10);
            prop_assert!((pm - am * bm).norm() <= 1e-10);
        }

        #[test]
        fn ring_laws(a in arb(), b in arb(), d in arb()) {
            prop_assert!(close(a * b, b * a, 1e-10));
            prop_assert!(close((a * b) * d, a * (b * d), 1e-8));
            prop_assert!(close(a * (b + d), a * b + a * d, 1e-10));
        }

        #[test]
        fn conjugation_is_multiplicative(a in arb(), b in arb()) {
            prop_assert!(close((a * b).conj(), a.conj() * b.conj(), 1e-10));
            prop_assert!(close(a.conj().conj(), a, 0.0));
        }

        #[test]
        fn norm_triangle_inequality(a in arb(), b in arb()) {
            prop_assert!((a + b).norm() <= a.norm() + b.norm() + 1e-12);
        }

        #[test]
        fn inverse(a in arb()) {
            prop_assume!(!a.is_zero_divisor(1e-3));
            let ai = a.inv().unwrap();
            prop_assert!(close(a * ai, Bicomplex::ONE, 1e-8));
        }
    }

    #[test]
    fn powu_matches_repeated_product() {
        let w = Bicomplex::new(c(0.3, -0.2), c(1.1, 0.4));
        let mut acc = Bicomplex::ONE;
        for n in 0..7 {
            assert!(close(w.powu(n), acc, 1e-12));
            acc = acc * w;
        }
    }
}
