//! Parameter lists `(l; d; n_1 <= ... <= n_l)` indexing the S-coefficients.

use crate::error::{Error, Result};
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ParameterList {
    pub n: usize,
    pub ell: usize,
    pub d: usize,
    pub parts: Vec<usize>,
}

impl ParameterList {
    pub fn new(n: usize, ell: usize, d: usize, parts: Vec<usize>) -> Result<Self> {
        let p = ParameterList { n, ell, d, parts };
        if p.is_valid() {
            Ok(p)
        } else {
            Err(Error::InvalidInput(format!("invalid parameter list {p:?}")))
        }
    }

    pub fn is_valid(&self) -> bool {
        self.parts.len() == self.ell
            && 2 * self.ell <= self.n
            && self.d <= self.n - 2 * self.ell
            && self.parts.windows(2).all(|w| w[0] <= w[1])
            && self.parts.iter().sum::<usize>() + 2 * self.ell + self.d == self.n
    }
}

/// All valid lists for level `n`, ordered by `ell`, then `d`, then parts.
pub fn enumerate_parameter_lists(n: usize) -> Vec<ParameterList> {
    let mut out = Vec::new();
    for ell in 0..=n / 2 {
        for d in 0..=n - 2 * ell {
            let total = n - 2 * ell - d;
            let mut cur = Vec::with_capacity(ell);
            nondecreasing(total, ell, 0, &mut cur, &mut |parts| {
                out.push(ParameterList { n, ell, d, parts: parts.to_vec() });
            });
        }
    }
    out
}

fn nondecreasing<F: FnMut(&[usize])>(rest: usize, slots: usize, min: usize, cur: &mut Vec<usize>, emit: &mut F) {
    if slots == 0 {
        if rest == 0 {
            emit(cur);
        }
        return;
    }
    // remaining slots all take values >= v
    let mut v = min;
    while v * slots <= rest {
        cur.push(v);
        nondecreasing(rest - v, slots - 1, v, cur, emit);
        cur.pop();
        v += 1;
    }
}

/// Next lexicographic permutation in place; false when `v` was the last one.
pub(crate) fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn level_two() {
        let l = enumerate_parameter_lists(2);
        assert_eq!(
            l,
            vec![
                ParameterList { n: 2, ell: 0, d: 2, parts: vec![] },
                ParameterList { n: 2, ell: 1, d: 0, parts: vec![0] },
            ]
        );
        assert_eq!(enumerate_parameter_lists(0).len(), 1);
    }

    #[test]
    fn all_lists_are_valid_and_distinct() {
        for n in 0..15 {
            let l = enumerate_parameter_lists(n);
            assert!(l.iter().all(|p| p.is_valid()));
            let mut sorted = l.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(sorted.len(), l.len());
        }
    }

    #[test]
    fn validation() {
        assert!(ParameterList::new(4, 1, 2, vec![0]).is_ok());
        assert!(ParameterList::new(4, 1, 1, vec![0]).is_err());
        assert!(ParameterList::new(6, 2, 0, vec![2, 0]).is_err());
    }

    #[test]
    fn distinct_permutations() {
        let mut v = vec![0, 0, 1, 2];
        let mut count = 1;
        while next_permutation(&mut v) {
            count += 1;
        }
        assert_eq!(count, 12);
    }
}
