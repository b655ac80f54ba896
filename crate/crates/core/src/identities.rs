//! Finite word identities of `rho_N` checked by direct compatible-partition sums.

use num_traits::Zero;
use serde::Serialize;

use crate::error::{invalid, Result};
use crate::rational::{abs, frac, int, powi, Q};
use crate::word::{compatible_partitions, rho_n, Letter, Word};

/// Outcome of an identity check; `lhs`/`rhs` are exact.
#[derive(Debug, Clone, Serialize)]
pub struct IdentityReport {
    #[serde(serialize_with = "crate::rational::serialize")]
    pub lhs: Q,
    #[serde(serialize_with = "crate::rational::serialize")]
    pub rhs: Q,
    pub equal: bool,
}

impl IdentityReport {
    fn new(lhs: Q, rhs: Q) -> IdentityReport {
        let equal = lhs == rhs;
        IdentityReport { lhs, rhs, equal }
    }
}

fn check_n(n: i64) -> Result<()> {
    if n == 0 {
        return invalid("N must be nonzero");
    }
    Ok(())
}

/// Every word of the given color with length in `0..=max_len` over indices `1..=indices`.
pub fn one_color_words(b: usize, max_len: usize, indices: u32) -> Vec<Word> {
    let mut alphabet = Vec::new();
    for i in 1..=indices {
        alphabet.push(Letter::create(b, i));
        alphabet.push(Letter::annihilate(b, i));
    }
    let mut out = vec![Word::default()];
    let mut layer = vec![Word::default()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * alphabet.len());
        for w in &layer {
            for &l in &alphabet {
                let mut v = w.0.clone();
                v.push(l);
                next.push(Word(v));
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct ExclusionReport {
    pub n: i64,
    /// words whose profile exceeds `|N|` somewhere
    pub checked: usize,
    pub vanished: usize,
    /// words with a nonzero value
    pub failures: Vec<Word>,
    pub pass: bool,
}

/// `rho_N(A* A) = 0` for every one-color word `A` with some profile entry above `|N|`.
pub fn exclusion_check(n: i64, b: usize, max_len: usize, indices: u32) -> Result<ExclusionReport> {
    check_n(n)?;
    if n > 0 {
        return invalid("the exclusion principle concerns N < 0");
    }
    let bound = n.unsigned_abs() as i64;
    let mut checked = 0;
    let mut failures = Vec::new();
    for a in one_color_words(b, max_len, indices) {
        if !a.profile().values().any(|&v| v > bound) {
            continue;
        }
        checked += 1;
        let x = Word::concat(&[&a.star(), &a]);
        if !rho_n(&x, n)?.is_zero() {
            failures.push(a);
        }
    }
    Ok(ExclusionReport { n, checked, vanished: checked - failures.len(), pass: failures.is_empty(), failures })
}

/// `rho_N(B* a_{b,i} a*_{b,i} A) = (1 + w^A_b(i)/N) rho_N(B* A)` when `|w^A_b| >= |w^A_{-b}|`.
pub fn commutation_check(a: &Word, bw: &Word, b: usize, i: u32, n: i64) -> Result<IdentityReport> {
    check_n(n)?;
    if b > 1 {
        return invalid(format!("color {b} is not in {{0, 1}}"));
    }
    if a.profile_total(b) < a.profile_total(1 - b) {
        return invalid(format!(
            "hypothesis fails: |w_b| = {} < |w_-b| = {}",
            a.profile_total(b),
            a.profile_total(1 - b)
        ));
    }
    let mid = Word(vec![Letter::annihilate(b, i), Letter::create(b, i)]);
    let bs = bw.star();
    let lhs = rho_n(&Word::concat(&[&bs, &mid, a]), n)?;
    let rhs = (int(1) + frac(a.profile_at(b, i), n)) * rho_n(&Word::concat(&[&bs, a]), n)?;
    Ok(IdentityReport::new(lhs, rhs))
}

fn padding(b: usize, n: u32, middle: [Letter; 2]) -> Word {
    let mut v: Vec<Letter> = (n + 1..=2 * n).rev().map(|j| Letter::annihilate(b, j)).collect();
    v.extend(middle);
    v.extend((n + 1..=2 * n).map(|j| Letter::create(b, j)));
    Word(v)
}

fn check_padding(a: &Word, bw: &Word, i: u32, pad: u32) -> Result<()> {
    if a.max_index().max(bw.max_index()).max(i) > pad {
        return invalid(format!("padding indices {}..={} collide with the words", pad + 1, 2 * pad));
    }
    Ok(())
}

/// `rho_N(B* a_{b,2n}..a_{b,n+1} a*_{b,i} a_{b,i} a*_{b,n+1}..a*_{b,2n} A) = w^A_b(i)/N^2 rho_N(B* A)`.
pub fn wlim_identity_check(a: &Word, bw: &Word, b: usize, i: u32, n: i64, pad: u32) -> Result<IdentityReport> {
    check_n(n)?;
    check_padding(a, bw, i, pad)?;
    if pad as i64 + a.profile_total(b) <= a.profile_total(1 - b) {
        return invalid("padding is below the threshold n + |w_b| > |w_-b|");
    }
    let mid = padding(b, pad, [Letter::create(b, i), Letter::annihilate(b, i)]);
    let bs = bw.star();
    let lhs = rho_n(&Word::concat(&[&bs, &mid, a]), n)?;
    let rhs = frac(a.profile_at(b, i), n * n) * rho_n(&Word::concat(&[&bs, a]), n)?;
    Ok(IdentityReport::new(lhs, rhs))
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    #[serde(serialize_with = "crate::rational::serialize")]
    pub value: Q,
    /// number of compatible partitions
    pub count: usize,
    #[serde(serialize_with = "crate::rational::serialize")]
    pub bound: Q,
    pub pass: bool,
}

/// Creator-pair variant: `|rho_N(X_n)| <= C |N|^{1-r}` once `n + |w_b| - |w_-b| > 2r`.
pub fn wlim_double_creator_check(a: &Word, bw: &Word, b: usize, i: u32, n: i64, pad: u32, r: u32) -> Result<BoundReport> {
    check_n(n)?;
    check_padding(a, bw, i, pad)?;
    if pad as i64 + a.profile_total(b) - a.profile_total(1 - b) <= 2 * r as i64 {
        return invalid("padding is below the threshold n + |w_b| - |w_-b| > 2r");
    }
    let mid = padding(b, pad, [Letter::create(b, i), Letter::create(b, i)]);
    let x = Word::concat(&[&bw.star(), &mid, a]);
    let count = compatible_partitions(&x).len();
    let value = rho_n(&x, n)?;
    let bound = int(count as i64) * powi(&frac(1, n.abs()), r as i64 - 1);
    let pass = abs(&value) <= bound;
    Ok(BoundReport { value, count, bound, pass })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(b: usize, i: u32) -> Letter {
        Letter::create(b, i)
    }

    #[test]
    fn commutation_examples() {
        let e = Word::default();
        let r = commutation_check(&e, &e, 1, 1, 2).unwrap();
        assert!(r.equal && r.lhs == int(1));
        let a = Word(vec![c(1, 1)]);
        let r = commutation_check(&a, &a, 1, 1, 2).unwrap();
        assert_eq!(r.lhs, frac(3, 2));
        assert!(r.equal);
        let r = commutation_check(&a, &a, 1, 1, -1).unwrap();
        assert!(r.lhs.is_zero() && r.equal);
        assert!(commutation_check(&a, &a, 0, 1, 2).is_err());
    }

    #[test]
    fn wlim_examples() {
        let a = Word(vec![c(1, 1)]);
        let r = wlim_identity_check(&a, &a, 1, 1, 2, 3).unwrap();
        assert_eq!(r.rhs, frac(1, 4));
        assert!(r.equal, "{r:?}");
        let e = Word::default();
        let r = wlim_identity_check(&e, &e, 1, 1, 2, 3).unwrap();
        assert!(r.lhs.is_zero() && r.equal);
    }

    #[test]
    fn double_creator_example() {
        let a = Word::default();
        let bw = Word(vec![c(1, 1), c(1, 1)]);
        let r = wlim_double_creator_check(&a, &bw, 1, 1, 2, 5, 2).unwrap();
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn exclusion_small() {
        let r = exclusion_check(-1, 1, 4, 2).unwrap();
        assert!(r.checked > 0);
        assert!(r.pass, "{:?}", r.failures);
    }
}
