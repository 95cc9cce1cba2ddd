//! The integer coefficients `S^n_{l;d;(n_1..n_l)}`, by recurrence and by the direct formula.

use super::params::{enumerate_parameter_lists, next_permutation, ParameterList};
use crate::error::{Error, Result};
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

#[derive(Debug, Clone)]
pub struct SCoefficientTable {
    pub n_max: usize,
    /// `levels[n]` holds the entries of level `n`; level 0 is empty, its single value is 1/2.
    levels: Vec<BTreeMap<ParameterList, BigUint>>,
}

pub(crate) fn big_binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Builds the table for levels `0..=n_max` by the recurrence.
pub fn s_table_recurrent(n_max: usize) -> SCoefficientTable {
    let mut levels: Vec<BTreeMap<ParameterList, BigUint>> = vec![BTreeMap::new()];
    if n_max >= 1 {
        let mut one = BTreeMap::new();
        one.insert(ParameterList { n: 1, ell: 0, d: 1, parts: vec![] }, BigUint::one());
        levels.push(one);
    }
    for n in 1..n_max {
        let prev = &levels[n];
        let get = |ell: usize, d: usize, parts: &[usize]| -> BigUint {
            prev.get(&ParameterList { n, ell, d, parts: parts.to_vec() }).cloned().unwrap_or_default()
        };
        let mut next = BTreeMap::new();
        for p in enumerate_parameter_lists(n + 1) {
            let mut v = BigUint::zero();
            if p.d >= 1 {
                let factor: u32 = if p.d == 1 { if n % 2 == 0 { 2 } else { 0 } } else { 1 };
                if factor > 0 {
                    v += get(p.ell, p.d - 1, &p.parts) * factor;
                }
            }
            let mut last = None;
            for (k, &nk) in p.parts.iter().enumerate() {
                if last == Some(nk) {
                    continue;
                }
                last = Some(nk);
                let mut rest = p.parts.clone();
                rest.remove(k);
                let s = get(p.ell - 1, p.d + nk + 1, &rest);
                if !s.is_zero() {
                    v += big_binomial(p.d + nk, nk) * s;
                }
            }
            next.insert(p, v);
        }
        levels.push(next);
    }
    SCoefficientTable { n_max, levels }
}

impl SCoefficientTable {
    /// Exact value, `None` for lists outside the table.
    pub fn value(&self, p: &ParameterList) -> Option<BigRational> {
        if p.n > self.n_max || !p.is_valid() {
            return None;
        }
        if p.n == 0 {
            return Some(BigRational::new(1.into(), 2.into()));
        }
        self.levels[p.n].get(p).map(|v| BigRational::from_integer(v.clone().into()))
    }

    /// Integer entry for `n >= 1`.
    pub fn integer(&self, p: &ParameterList) -> Option<&BigUint> {
        self.levels.get(p.n)?.get(p)
    }

    /// Number of entries at level `n` (level 0 counts its single rational entry).
    pub fn level_len(&self, n: usize) -> usize {
        if n == 0 {
            1
        } else {
            self.levels[n].len()
        }
    }

    pub fn level(&self, n: usize) -> impl Iterator<Item = (&ParameterList, &BigUint)> {
        self.levels[n].iter()
    }

    /// JSON list of `{n, ell, d, parts, value}` with values as decimal strings.
    pub fn to_json(&self) -> serde_json::Value {
        let mut rows = vec![serde_json::json!({"n": 0, "ell": 0, "d": 0, "parts": [], "value": "1/2"})];
        for n in 1..=self.n_max {
            for (p, v) in &self.levels[n] {
                rows.push(serde_json::json!({
                    "n": p.n, "ell": p.ell, "d": p.d, "parts": p.parts, "value": v.to_string()
                }));
            }
        }
        serde_json::Value::Array(rows)
    }
}

/// Direct formula: sum over distinct permutations and admissible `d_1..d_l`.
pub fn s_direct(p: &ParameterList) -> Result<BigUint> {
    if !p.is_valid() {
        return Err(Error::InvalidInput(format!("invalid parameter list {p:?}")));
    }
    if p.ell == 0 {
        return Err(Error::InvalidInput("the direct formula needs ell >= 1".into()));
    }
    let mut sigma = p.parts.clone();
    sigma.sort_unstable();
    let mut total = BigUint::zero();
    loop {
        let mut tails = vec![0usize; sigma.len() + 1];
        for i in (0..sigma.len()).rev() {
            tails[i] = tails[i + 1] + sigma[i];
        }
        total += nested(&sigma, &tails, 0, p.d, p.d == 0);
        if !next_permutation(&mut sigma) {
            break;
        }
    }
    Ok(total)
}

fn nested(sigma: &[usize], tails: &[usize], i: usize, dmax: usize, d_zero: bool) -> BigUint {
    if i == sigma.len() {
        return BigUint::one();
    }
    let mut acc = BigUint::zero();
    for di in 0..=dmax {
        let suppressed = i == 0 && d_zero;
        let factor: u32 = if di == 0 && !suppressed {
            if tails[i] % 2 == 0 { 2 } else { 0 }
        } else {
            1
        };
        if factor == 0 {
            continue;
        }
        let inner = nested(sigma, tails, i + 1, di + sigma[i] + 1, d_zero);
        acc += big_binomial(di + sigma[i], sigma[i]) * inner * factor;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pl(n: usize, ell: usize, d: usize, parts: &[usize]) -> ParameterList {
        ParameterList::new(n, ell, d, parts.to_vec()).unwrap()
    }

    #[test]
    fn small_entries() {
        let t = s_table_recurrent(6);
        let v = |n, ell, d, parts: &[usize]| t.integer(&pl(n, ell, d, parts)).unwrap().to_string();
        assert_eq!(v(1, 0, 1, &[]), "1");
        assert_eq!(v(2, 1, 0, &[0]), "1");
        assert_eq!(v(3, 1, 1, &[0]), "3");
        assert_eq!(v(4, 2, 0, &[0, 0]), "3");
        assert_eq!(v(5, 2, 0, &[0, 1]), "6");
        assert_eq!(v(5, 2, 1, &[0, 0]), "10");
        assert_eq!(v(6, 2, 2, &[0, 0]), "15");
        assert_eq!(v(6, 3, 0, &[0, 0, 0]), "10");
        assert_eq!(t.value(&pl(0, 0, 0, &[])).unwrap(), BigRational::new(1.into(), 2.into()));
    }

    #[test]
    fn direct_formula_examples() {
        assert_eq!(s_direct(&pl(4, 2, 0, &[0, 0])).unwrap(), BigUint::from(3u32));
        assert_eq!(s_direct(&pl(6, 3, 0, &[0, 0, 0])).unwrap(), big_binomial(5, 2));
        assert!(s_direct(&pl(3, 0, 3, &[])).is_err());
    }

    #[test]
    fn direct_matches_recurrence() {
        let t = s_table_recurrent(10);
        for n in 1..=10 {
            for (p, v) in t.level(n) {
                if p.ell > 0 {
                    assert_eq!(&s_direct(p).unwrap(), v, "{p:?}");
                }
            }
        }
    }

    #[test]
    fn json_export() {
        let t = s_table_recurrent(3);
        let j = t.to_json();
        assert_eq!(j.as_array().unwrap().len(), 1 + 1 + 2 + 3);
        assert_eq!(j[0]["value"], "1/2");
    }
}
