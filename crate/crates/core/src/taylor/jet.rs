//! Potential jets, kernel derivatives at the origin and the expansion coefficients.

use super::stable::{s_table_recurrent, SCoefficientTable};
use crate::error::{Error, Result};
use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Scalars the jet formulas run on: complex floats, or exact rationals.
pub trait JetScalar:
    Clone + Zero + One + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Div<Output = Self> + Neg<Output = Self>
{
    fn from_biguint(v: &BigUint) -> Self;
    fn from_i64(v: i64) -> Self;
}

impl JetScalar for Complex64 {
    fn from_biguint(v: &BigUint) -> Self {
        Complex64::new(v.to_f64().unwrap_or(f64::INFINITY), 0.0)
    }
    fn from_i64(v: i64) -> Self {
        Complex64::new(v as f64, 0.0)
    }
}

impl JetScalar for BigRational {
    fn from_biguint(v: &BigUint) -> Self {
        BigRational::from_integer(BigInt::from(v.clone()))
    }
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
}

/// `h = q^(-1)(0)` and the derivatives `q^(0)(0), q^(1)(0), ...`.
#[derive(Debug, Clone, PartialEq)]
pub struct PotentialJet<T = Complex64> {
    pub h: T,
    pub derivs: Vec<T>,
}

impl<T: JetScalar> PotentialJet<T> {
    pub fn new(h: T, derivs: Vec<T>) -> Self {
        PotentialJet { h, derivs }
    }

    /// `q^(m)(0)` with `q^(-1)(0) = h`.
    fn q(&self, m: isize) -> T {
        if m < 0 {
            self.h.clone()
        } else {
            self.derivs[m as usize].clone()
        }
    }
}

/// `d^n/dt^n K(0,0)` for `n = 0..=n_max`.
pub fn kernel_derivatives_at_origin<T: JetScalar>(jet: &PotentialJet<T>, n_max: usize) -> Result<Vec<T>> {
    kernel_derivatives_with_table(jet, n_max, &s_table_recurrent(n_max))
}

/// As [`kernel_derivatives_at_origin`] with a prebuilt S-table covering `n_max`.
pub fn kernel_derivatives_with_table<T: JetScalar>(jet: &PotentialJet<T>, n_max: usize, table: &SCoefficientTable) -> Result<Vec<T>> {
    if jet.derivs.len() < n_max {
        return Err(Error::InsufficientJet { needed: n_max, available: jet.derivs.len() });
    }
    if table.n_max < n_max {
        return Err(Error::InvalidInput(format!("S-table covers n <= {}, need {n_max}", table.n_max)));
    }
    let two = T::from_i64(2);
    let mut out = vec![jet.h.clone() / two.clone()];
    let mut pow2 = two.clone();
    for n in 1..=n_max {
        pow2 = pow2 * two.clone();
        let mut sum = jet.q(n as isize - 1);
        for (p, s) in table.level(n) {
            if p.ell == 0 {
                continue;
            }
            let factor: i64 = if p.d == 0 { if n % 2 == 0 { 2 } else { 0 } } else { 1 };
            if factor == 0 {
                continue;
            }
            let sign: i64 = if p.ell % 2 == 0 { 1 } else { -1 };
            let mut term = T::from_biguint(s) * T::from_i64(sign * factor) * jet.q(p.d as isize - 1);
            for &ni in &p.parts {
                term = term * jet.q(ni as isize);
            }
            sum = sum + term;
        }
        out.push(sum / pow2.clone());
    }
    Ok(out)
}

/// Coefficients of the kernel expansion `c_0 u_0 + sum (c_n u_{2n-1} + b_n u_{2n})`.
///
/// Both vectors have length `N + 1`; `b[0]` is unused and zero.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpansionCoefficients<T = Complex64> {
    pub c: Vec<T>,
    pub b: Vec<T>,
}

pub fn expansion_coefficients<T: JetScalar>(jet_f: &PotentialJet<T>, jet_inv: &PotentialJet<T>, n: usize) -> Result<ExpansionCoefficients<T>> {
    let table = s_table_recurrent(n);
    let kf = kernel_derivatives_with_table(jet_f, n, &table)?;
    let ki = kernel_derivatives_with_table(jet_inv, n, &table)?;
    let mut c = Vec::with_capacity(n + 1);
    let mut b = Vec::with_capacity(n + 1);
    let mut fact = T::one();
    for k in 0..=n {
        if k > 0 {
            fact = fact * T::from_i64(k as i64);
        }
        let f = kf[k].clone() / fact.clone();
        let i = ki[k].clone() / fact.clone();
        if k % 2 == 0 {
            c.push(f);
            b.push(if k == 0 { T::zero() } else { -i });
        } else {
            c.push(-i);
            b.push(f);
        }
    }
    Ok(ExpansionCoefficients { c, b })
}

/// Taylor coefficients of `1/f` from those of `f` (with `f_0 = 1`), summing over
/// `m_1 + 2 m_2 + ... + k m_k = k` with multinomial weights.
pub fn inverse_function_jet<T: JetScalar>(f: &[T]) -> Result<Vec<T>> {
    if f.is_empty() || !(f[0].clone() - T::one()).is_zero() {
        return Err(Error::InvalidInput("the constant Taylor coefficient must be 1".into()));
    }
    let mut out = vec![T::one()];
    for k in 1..f.len() {
        let mut sum = T::zero();
        let mut mult = vec![0usize; k + 1];
        partitions(k, k, &mut mult, &mut |m| {
            let total: usize = m.iter().sum();
            let mut coef = factorial(total);
            for &mj in m.iter() {
                coef /= factorial(mj);
            }
            let mut term = T::from_biguint(&coef);
            if total % 2 == 1 {
                term = -term;
            }
            for (j, &mj) in m.iter().enumerate().skip(1) {
                for _ in 0..mj {
                    term = term * f[j].clone();
                }
            }
            sum = sum.clone() + term;
        });
        out.push(sum);
    }
    Ok(out)
}

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |a, k| a * BigUint::from(k))
}

/// Enumerates multiplicity vectors `m[1..]` with `sum j m_j = rest`, parts at most `max`.
fn partitions<F: FnMut(&[usize])>(rest: usize, max: usize, m: &mut Vec<usize>, emit: &mut F) {
    if rest == 0 {
        emit(m);
        return;
    }
    for j in (1..=max.min(rest)).rev() {
        m[j] += 1;
        partitions(rest - j, j, m, emit);
        m[j] -= 1;
    }
}

/// Taylor coefficients `f_0..f_order` of the solution of `f'' = q f`, `f(0) = 1`, `f'(0) = h`.
pub fn solution_coefficients<T: JetScalar>(jet: &PotentialJet<T>, order: usize) -> Result<Vec<T>> {
    if order >= 2 && jet.derivs.len() < order - 1 {
        return Err(Error::InsufficientJet { needed: order - 1, available: jet.derivs.len() });
    }
    let qc = derivs_to_coeffs(&jet.derivs[..order.saturating_sub(1).min(jet.derivs.len())]);
    let mut f = vec![T::one(), jet.h.clone()];
    for k in 0..order.saturating_sub(1) {
        let mut s = T::zero();
        for j in 0..=k {
            s = s + qc[j].clone() * f[k - j].clone();
        }
        f.push(s / T::from_i64(((k + 2) * (k + 1)) as i64));
    }
    f.truncate(order + 1);
    Ok(f)
}

/// `a_k = d_k / k!`.
pub fn derivs_to_coeffs<T: JetScalar>(d: &[T]) -> Vec<T> {
    let mut fact = T::one();
    d.iter()
        .enumerate()
        .map(|(k, v)| {
            if k > 0 {
                fact = fact.clone() * T::from_i64(k as i64);
            }
            v.clone() / fact.clone()
        })
        .collect()
}

/// `d_k = k! a_k`.
pub fn coeffs_to_derivs<T: JetScalar>(a: &[T]) -> Vec<T> {
    let mut fact = T::one();
    a.iter()
        .enumerate()
        .map(|(k, v)| {
            if k > 0 {
                fact = fact.clone() * T::from_i64(k as i64);
            }
            v.clone() * fact.clone()
        })
        .collect()
}

/// Jet of the Darboux partner `q_{1/f} = f (1/f)''` with `h_{1/f} = -h`, to `n_derivs` derivatives.
pub fn darboux_jet<T: JetScalar>(jet: &PotentialJet<T>, n_derivs: usize) -> Result<PotentialJet<T>> {
    let f = solution_coefficients(jet, n_derivs + 1)?;
    let g = inverse_function_jet(&f)?;
    let mut q = Vec::with_capacity(n_derivs);
    for k in 0..n_derivs {
        let mut s = T::zero();
        for j in 0..=k {
            let i = k - j;
            let g2 = g[i + 2].clone() * T::from_i64(((i + 2) * (i + 1)) as i64);
            s = s + f[j].clone() * g2;
        }
        q.push(s);
    }
    Ok(PotentialJet { h: -jet.h.clone(), derivs: coeffs_to_derivs(&q) })
}

/// Convenience: both jets and the expansion coefficients from the jet of `q_f`.
pub fn coefficients_from_jet<T: JetScalar>(jet_f: &PotentialJet<T>, n: usize) -> Result<ExpansionCoefficients<T>> {
    if jet_f.derivs.len() < n {
        return Err(Error::InsufficientJet { needed: n, available: jet_f.derivs.len() });
    }
    let inv = darboux_jet(jet_f, n)?;
    expansion_coefficients(jet_f, &inv, n)
}
