//! Q-products of t-functions, the averaged n-fold product and its periodic limit,
//! Gram positivity checks and the Stirling cancellation.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::broken::{gram_matrix, BrokenPairPartition};
use crate::error::{capacity, invalid, Result};
use crate::partition::{ColoredPairPartition, PairPartition};
use crate::perm;
use crate::rational::{int, to_f64, Q};
use crate::tfunc::TFunction;

/// Symmetric matrix with entries in `[-1, 1]`; indices are 0-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMatrix {
    q: Vec<Vec<Q>>,
}

impl QMatrix {
    pub fn new(q: Vec<Vec<Q>>) -> Result<Self> {
        let k = q.len();
        if k == 0 || q.iter().any(|row| row.len() != k) {
            return invalid("Q must be a nonempty square matrix");
        }
        for i in 0..k {
            for j in 0..k {
                if q[i][j] != q[j][i] {
                    return invalid("Q must be symmetric");
                }
                if q[i][j].abs() > Q::one() {
                    return invalid("entries of Q must lie in [-1, 1]");
                }
            }
        }
        Ok(QMatrix { q })
    }

    pub fn constant(k: usize, x: Q) -> Result<Self> {
        QMatrix::new(vec![vec![x; k]; k])
    }

    pub fn size(&self) -> usize {
        self.q.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &Q {
        &self.q[i][j]
    }

    /// Periodic extension: 0-based `i, j` reduced mod the size.
    pub fn periodic(&self, i: usize, j: usize) -> &Q {
        let k = self.size();
        &self.q[i % k][j % k]
    }

    pub fn rows(&self) -> &[Vec<Q>] {
        &self.q
    }
}

/// `prod_{crossings} q_{c(p), c(p')} * prod_b t_b(c^{-1}(b))`.
pub fn q_product_eval(parts: &[TFunction], q: &QMatrix, p: &ColoredPairPartition) -> Result<Q> {
    if parts.len() != q.size() || p.num_colors() != q.size() {
        return invalid(format!(
            "{} t-functions, Q of size {}, {} colors",
            parts.len(),
            q.size(),
            p.num_colors()
        ));
    }
    let idx = p.base().pair_index();
    let mut out = Q::one();
    for ((a, _), (b, _)) in p.base().crossings() {
        out *= q.get(p.colors()[idx[a]], p.colors()[idx[b]]);
        if out.is_zero() {
            return Ok(out);
        }
    }
    for (b, t) in parts.iter().enumerate() {
        out *= t.eval_uncolored(&p.restrict(b))?;
        if out.is_zero() {
            break;
        }
    }
    Ok(out)
}

/// Restricted growth strings: all set partitions of `0..k` as block labels.
fn set_partitions(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0usize; k];
    fn rec(i: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for b in 0..=max {
            cur[i] = b;
            rec(i + 1, if b == max { max + 1 } else { max }, cur, out);
        }
    }
    if k == 0 {
        out.push(cur);
    } else {
        rec(0, 0, &mut cur, &mut out);
    }
    out
}

fn falling(x: i64, k: usize) -> i64 {
    (0..k as i64).map(|i| x - i).product()
}

pub const MAX_AVERAGED_WORK: u64 = 20_000_000;

/// `n^{-|V|} sum_{c: V -> [n]} prod_{crossings} q~_{c(p)c(p')} prod_b t(c^{-1}(b))`
/// with `q~` the periodic extension of `q_base`.
///
/// Colorings are grouped by their kernel (a set partition of the pairs) and by the
/// residues of the block colors, which leaves `Bell(|V|) * N^{#blocks}` terms.
pub fn t_q_star_n(t: &TFunction, q_base: &QMatrix, n: usize, v: &PairPartition) -> Result<Q> {
    if n == 0 {
        return invalid("n must be positive");
    }
    let k = v.m();
    let nn = q_base.size();
    let work = (nn as u64).checked_pow(k as u32).unwrap_or(u64::MAX).saturating_mul(set_partitions(k.min(8)).len() as u64);
    if k > 8 || work > MAX_AVERAGED_WORK {
        return capacity(format!("|V| = {k} with a {nn}x{nn} matrix is beyond the averaged-product budget"));
    }
    let idx = v.pair_index();
    let crossings: Vec<(usize, usize)> = v.crossings().iter().map(|&((a, _), (b, _))| (idx[a], idx[b])).collect();
    // count of i in 1..=n with (i-1) mod N == r
    let cnt = |r: usize| (n / nn + usize::from(r < n % nn)) as i64;

    let mut total = Q::zero();
    for blocks in set_partitions(k) {
        let nb = blocks.iter().max().map_or(0, |m| m + 1);
        if nb > n {
            continue;
        }
        let mut tprod = Q::one();
        for b in 0..nb {
            let sel: Vec<(usize, usize)> =
                v.pairs().iter().zip(&blocks).filter(|(_, &x)| x == b).map(|(p, _)| *p).collect();
            tprod *= t.eval_uncolored(&PairPartition::relabeled(&sel))?;
            if tprod.is_zero() {
                break;
            }
        }
        if tprod.is_zero() {
            continue;
        }
        let mut inner = Q::zero();
        for code in 0..nn.pow(nb as u32) {
            let mut c = code;
            let res: Vec<usize> = (0..nb)
                .map(|_| {
                    let r = c % nn;
                    c /= nn;
                    r
                })
                .collect();
            let mut per_res = vec![0usize; nn];
            for &r in &res {
                per_res[r] += 1;
            }
            let count: i64 = (0..nn).map(|r| falling(cnt(r), per_res[r])).product();
            if count == 0 {
                continue;
            }
            let mut w = int(count);
            for &(a, b) in &crossings {
                w *= q_base.get(res[blocks[a]], res[blocks[b]]);
            }
            inner += w;
        }
        total += tprod * inner;
    }
    let denom = num_traits::pow(BigInt::from(n), k);
    Ok(total / Q::from_integer(denom))
}

/// `N^{-|V|} sum_{d: V -> [N]} prod_{crossings} q_{d(p)d(p')}`.
pub fn t_q_limit(q_base: &QMatrix, v: &PairPartition) -> Result<Q> {
    let k = v.m();
    let nn = q_base.size();
    match (nn as u64).checked_pow(k as u32) {
        Some(w) if w <= MAX_AVERAGED_WORK => {}
        _ => return capacity(format!("{nn}^{k} colorings exceed the budget")),
    }
    let idx = v.pair_index();
    let crossings: Vec<(usize, usize)> = v.crossings().iter().map(|&((a, _), (b, _))| (idx[a], idx[b])).collect();
    let mut total = Q::zero();
    for code in 0..nn.pow(k as u32) {
        let mut c = code;
        let d: Vec<usize> = (0..k)
            .map(|_| {
                let r = c % nn;
                c /= nn;
                r
            })
            .collect();
        let mut w = Q::one();
        for &(a, b) in &crossings {
            w *= q_base.get(d[a], d[b]);
        }
        total += w;
    }
    Ok(total / Q::from_integer(num_traits::pow(BigInt::from(nn), k)))
}

#[derive(Debug, Clone, PartialEq)]
pub struct CltPoint {
    pub n: usize,
    pub value: Q,
    pub error: Q,
}

pub fn clt_error_curve(t: &TFunction, q_base: &QMatrix, v: &PairPartition, ns: &[usize]) -> Result<(Q, Vec<CltPoint>)> {
    let limit = t_q_limit(q_base, v)?;
    let mut out = Vec::with_capacity(ns.len());
    for &n in ns {
        let value = t_q_star_n(t, q_base, n, v)?;
        let error = (&value - &limit).abs();
        out.push(CltPoint { n, value, error });
    }
    Ok((limit, out))
}

pub const PSD_TOLERANCE: f64 = -1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct PsdReport {
    pub family_size: usize,
    pub blocks: usize,
    pub largest_block: usize,
    pub min_eigenvalue: f64,
    pub symmetric: bool,
    pub pass: bool,
}

/// Smallest eigenvalue of the Gram matrix `t_hat(d_i^* d_j)`.
///
/// `d_i^* d_j` has no open legs only when neither diagram has right legs and both have
/// the same left-leg count in every color, so the matrix is block diagonal (plus zero
/// rows) after grouping the family by left-leg counts. Each block is solved separately.
pub fn gram_psd_check(family: &[BrokenPairPartition], t: &TFunction) -> Result<PsdReport> {
    if family.is_empty() {
        return invalid("family must be nonempty");
    }
    let k = family[0].num_colors();
    let mut groups: std::collections::BTreeMap<Vec<usize>, Vec<BrokenPairPartition>> = Default::default();
    let mut zero_rows = 0;
    for d in family {
        if (0..k).any(|a| d.right_count(a) > 0) {
            zero_rows += 1;
        } else {
            groups.entry((0..k).map(|a| d.left_count(a)).collect()).or_default().push(d.clone());
        }
    }
    let mut min_eig = if zero_rows > 0 { 0.0f64 } else { f64::INFINITY };
    let mut symmetric = true;
    let mut largest = 0;
    for members in groups.values() {
        let g = gram_matrix(members, t)?;
        largest = largest.max(members.len());
        let m = members.len();
        let mat = DMatrix::from_fn(m, m, |i, j| to_f64(&g[i][j]));
        symmetric &= (0..m).all(|i| (0..m).all(|j| g[i][j] == g[j][i]));
        let eig = mat.symmetric_eigenvalues();
        min_eig = min_eig.min(eig.iter().copied().fold(f64::INFINITY, f64::min));
    }
    Ok(PsdReport {
        family_size: family.len(),
        blocks: groups.len(),
        largest_block: largest,
        min_eigenvalue: min_eig,
        symmetric,
        pass: symmetric && min_eig >= PSD_TOLERANCE,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StirlingReport {
    pub n: i64,
    pub by_enumeration: BigInt,
    pub by_stirling: BigInt,
    pub by_rising_factorial: BigInt,
    pub pass: bool,
}

/// Unsigned Stirling numbers of the first kind `|s(n, k)|`, `k = 0..=n`.
pub fn stirling_first_unsigned(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for i in 0..n {
        let mut next = vec![BigInt::zero(); row.len() + 1];
        for (k, x) in row.iter().enumerate() {
            next[k + 1] += x;
            next[k] += x * BigInt::from(i);
        }
        row = next;
    }
    row
}

/// `sum_{sigma in S_{|N|+1}} N^{cycles(sigma)}` three ways.
pub fn stirling_check(n: i64) -> Result<StirlingReport> {
    if n >= 0 {
        return invalid("N must be negative");
    }
    if n < -7 {
        return capacity("|N| is limited to 7");
    }
    let size = (n.unsigned_abs() + 1) as usize;
    let x = BigInt::from(n);
    let mut by_enumeration = BigInt::zero();
    for p in perm::all(size) {
        by_enumeration += num_traits::pow(x.clone(), perm::cycle_count(&p));
    }
    let by_stirling: BigInt = stirling_first_unsigned(size)
        .iter()
        .enumerate()
        .map(|(k, s)| s * num_traits::pow(x.clone(), k))
        .sum();
    let by_rising_factorial: BigInt = (0..size as i64).map(|i| BigInt::from(n + i)).product();
    let pass = by_enumeration.is_zero() && by_stirling.is_zero() && by_rising_factorial.is_zero();
    Ok(StirlingReport { n, by_enumeration, by_stirling, by_rising_factorial, pass })
}
