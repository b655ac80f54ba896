//! Pair partitions of `[2m]`, their colorings, and the classical cycle structure.
//!
//! Points are 1-based everywhere in the public API.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{capacity, invalid, Result};
use crate::perm;

/// Largest `m` accepted by the enumerators ((2m-1)!! = 2027025 at m = 8).
pub const MAX_ENUM_PAIRS: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PairPartition {
    pairs: Vec<(usize, usize)>,
}

impl PairPartition {
    /// Validates and sorts by left point.
    pub fn new(mut pairs: Vec<(usize, usize)>) -> Result<Self> {
        let n = 2 * pairs.len();
        let mut seen = vec![false; n + 1];
        for &(l, r) in &pairs {
            if !(1 <= l && l < r && r <= n) {
                return invalid(format!("pair ({l},{r}) is not inside [1,{n}] with l < r"));
            }
            for p in [l, r] {
                if seen[p] {
                    return invalid(format!("point {p} used twice"));
                }
                seen[p] = true;
            }
        }
        pairs.sort_unstable();
        Ok(PairPartition { pairs })
    }

    pub fn empty() -> Self {
        PairPartition { pairs: Vec::new() }
    }

    pub(crate) fn from_sorted_unchecked(pairs: Vec<(usize, usize)>) -> Self {
        debug_assert!(PairPartition::new(pairs.clone()).map(|p| p.pairs == pairs).unwrap_or(false));
        PairPartition { pairs }
    }

    /// Relabels an arbitrary set of disjoint pairs order-preservingly onto `[2m]`.
    pub fn relabeled(pairs: &[(usize, usize)]) -> Self {
        let mut pts: Vec<usize> = pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
        pts.sort_unstable();
        let rank = |x: usize| pts.binary_search(&x).unwrap() + 1;
        let mut out: Vec<(usize, usize)> = pairs
            .iter()
            .map(|&(a, b)| {
                let (a, b) = (rank(a), rank(b));
                (a.min(b), a.max(b))
            })
            .collect();
        out.sort_unstable();
        PairPartition { pairs: out }
    }

    pub fn m(&self) -> usize {
        self.pairs.len()
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// `partner[k]` for `k` in `1..=2m`; index 0 unused.
    pub fn partners(&self) -> Vec<usize> {
        let mut p = vec![0; 2 * self.m() + 1];
        for &(l, r) in &self.pairs {
            p[l] = r;
            p[r] = l;
        }
        p
    }

    /// `is_left[k]` for `k` in `1..=2m`.
    pub fn left_mask(&self) -> Vec<bool> {
        let mut v = vec![false; 2 * self.m() + 1];
        for &(l, _) in &self.pairs {
            v[l] = true;
        }
        v
    }

    /// Ordinal (0-based, canonical order) of the pair containing each point.
    pub fn pair_index(&self) -> Vec<usize> {
        let mut v = vec![usize::MAX; 2 * self.m() + 1];
        for (j, &(l, r)) in self.pairs.iter().enumerate() {
            v[l] = j;
            v[r] = j;
        }
        v
    }

    pub fn crossings(&self) -> Vec<((usize, usize), (usize, usize))> {
        let mut out = Vec::new();
        for &p in &self.pairs {
            for &q in &self.pairs {
                if p.0 < q.0 && q.0 < p.1 && p.1 < q.1 {
                    out.push((p, q));
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn is_noncrossing(&self) -> bool {
        self.crossings().is_empty()
    }

    /// The noncrossing pair partition with the same left points.
    pub fn noncrossing_hat(&self) -> PairPartition {
        let left = self.left_mask();
        let mut stack = Vec::new();
        let mut out = Vec::with_capacity(self.m());
        for k in 1..=2 * self.m() {
            if left[k] {
                stack.push(k);
            } else {
                let l = stack.pop().expect("right point without an open left point");
                out.push((l, k));
            }
        }
        out.sort_unstable();
        PairPartition { pairs: out }
    }

    /// Cycles chained through the hat: `(l_i, r_{i+1})` is a pair of the hat.
    pub fn cycles(&self) -> Cycles {
        let hat = self.noncrossing_hat().partners();
        let idx = self.pair_index();
        let m = self.m();
        let next: Vec<usize> = self.pairs.iter().map(|&(l, _)| idx[hat[l]]).collect();
        let mut seen = vec![false; m];
        let mut cycles = Vec::new();
        for s in 0..m {
            if seen[s] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut j = s;
            while !seen[j] {
                seen[j] = true;
                cyc.push(self.pairs[j]);
                j = next[j];
            }
            cycles.push(cyc);
        }
        let mut rho = BTreeMap::new();
        for c in &cycles {
            *rho.entry(c.len()).or_insert(0) += 1;
        }
        Cycles { cycles, rho }
    }

    /// Cycle type of the permutation `sigma` defined by `hat = {(a_i, z_{sigma^-1(i)})}`,
    /// where pair `i` of `self` is `(a_i, z_i)`.
    pub fn sigma(&self) -> Vec<usize> {
        let hat = self.noncrossing_hat().partners();
        let idx = self.pair_index();
        let m = self.m();
        let mut sigma = vec![0; m];
        for (i, &(a, _)) in self.pairs.iter().enumerate() {
            let j = idx[hat[a]];
            // sigma^-1(i) = j
            sigma[j] = i;
        }
        sigma
    }

    pub fn rho_via_sigma(&self) -> BTreeMap<usize, usize> {
        perm::cycle_type(&self.sigma())
    }

    /// Number of cycles in the sense of [`PairPartition::cycles`].
    pub fn cycle_count(&self) -> usize {
        self.cycles().cycles.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cycles {
    pub cycles: Vec<Vec<(usize, usize)>>,
    /// cycle length -> number of cycles
    pub rho: BTreeMap<usize, usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColoredPairPartition {
    base: PairPartition,
    colors: Vec<usize>,
    num_colors: usize,
}

impl ColoredPairPartition {
    pub fn new(base: PairPartition, colors: Vec<usize>, num_colors: usize) -> Result<Self> {
        if colors.len() != base.m() {
            return invalid(format!("{} colors for {} pairs", colors.len(), base.m()));
        }
        if let Some(&c) = colors.iter().find(|&&c| c >= num_colors) {
            return invalid(format!("color {c} out of range for {num_colors} colors"));
        }
        Ok(ColoredPairPartition { base, colors, num_colors })
    }

    /// Pairs in any order with a color each; the result is canonical.
    pub fn from_pairs(pairs: &[((usize, usize), usize)], num_colors: usize) -> Result<Self> {
        let mut v: Vec<_> = pairs.to_vec();
        v.sort_unstable();
        let base = PairPartition::new(v.iter().map(|x| x.0).collect())?;
        ColoredPairPartition::new(base, v.iter().map(|x| x.1).collect(), num_colors)
    }

    pub fn constant(base: PairPartition, color: usize, num_colors: usize) -> Self {
        let m = base.m();
        ColoredPairPartition::new(base, vec![color; m], num_colors).expect("constant coloring")
    }

    pub fn base(&self) -> &PairPartition {
        &self.base
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn num_colors(&self) -> usize {
        self.num_colors
    }

    pub fn m(&self) -> usize {
        self.base.m()
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        self.base.pairs()
    }

    pub fn colored_pairs(&self) -> impl Iterator<Item = ((usize, usize), usize)> + '_ {
        self.base.pairs().iter().copied().zip(self.colors.iter().copied())
    }

    /// Color of each point, index 0 unused.
    pub fn point_colors(&self) -> Vec<usize> {
        let mut v = vec![usize::MAX; 2 * self.m() + 1];
        for ((l, r), c) in self.colored_pairs() {
            v[l] = c;
            v[r] = c;
        }
        v
    }

    /// The pairs of color `b`, relabeled onto `[2m_b]`.
    pub fn restrict(&self, b: usize) -> PairPartition {
        let sel: Vec<(usize, usize)> = self.colored_pairs().filter(|&(_, c)| c == b).map(|(p, _)| p).collect();
        PairPartition::relabeled(&sel)
    }
}

/// All pair partitions of `[2m]`: point 1 is matched with each partner in ascending order, then recurse.
pub fn enumerate_pair_partitions(m: usize) -> Result<Vec<PairPartition>> {
    if m > MAX_ENUM_PAIRS {
        return capacity(format!("m = {m} exceeds the enumeration bound {MAX_ENUM_PAIRS}"));
    }
    let mut out = Vec::with_capacity(double_factorial(m) as usize);
    let free: Vec<usize> = (1..=2 * m).collect();
    let mut cur = Vec::with_capacity(m);
    rec_enumerate(&free, &mut cur, &mut out);
    Ok(out)
}

fn rec_enumerate(free: &[usize], cur: &mut Vec<(usize, usize)>, out: &mut Vec<PairPartition>) {
    if free.is_empty() {
        let mut pairs = cur.clone();
        pairs.sort_unstable();
        out.push(PairPartition { pairs });
        return;
    }
    let first = free[0];
    for j in 1..free.len() {
        let rest: Vec<usize> = free[1..].iter().copied().filter(|&x| x != free[j]).collect();
        cur.push((first, free[j]));
        rec_enumerate(&rest, cur, out);
        cur.pop();
    }
}

/// All `k^m` colorings of every pair partition of `[2m]`.
pub fn enumerate_colored(m: usize, k: usize) -> Result<Vec<ColoredPairPartition>> {
    if k == 0 {
        return invalid("at least one color is required");
    }
    let base = enumerate_pair_partitions(m)?;
    let total = (k as u128).checked_pow(m as u32).and_then(|x| x.checked_mul(base.len() as u128));
    match total {
        Some(t) if t <= 50_000_000 => {}
        _ => return capacity(format!("{} partitions times {k}^{m} colorings is too many", base.len())),
    }
    let mut out = Vec::new();
    for v in base {
        for code in 0..k.pow(m as u32) {
            let mut c = code;
            let colors = (0..m)
                .map(|_| {
                    let x = c % k;
                    c /= k;
                    x
                })
                .collect();
            out.push(ColoredPairPartition { base: v.clone(), colors, num_colors: k });
        }
    }
    Ok(out)
}

/// (2m-1)!!
pub fn double_factorial(m: usize) -> u64 {
    (1..=m as u64).map(|i| 2 * i - 1).product()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionJson {
    #[serde(default)]
    pub m: Option<usize>,
    pub pairs: Vec<[usize; 2]>,
    #[serde(default)]
    pub colors: Option<Vec<usize>>,
    #[serde(default)]
    pub num_colors: Option<usize>,
}

impl PartitionJson {
    pub fn from_colored(p: &ColoredPairPartition) -> Self {
        PartitionJson {
            m: Some(p.m()),
            pairs: p.pairs().iter().map(|&(l, r)| [l, r]).collect(),
            colors: Some(p.colors().to_vec()),
            num_colors: Some(p.num_colors()),
        }
    }

    pub fn from_uncolored(p: &PairPartition) -> Self {
        PartitionJson { m: Some(p.m()), pairs: p.pairs().iter().map(|&(l, r)| [l, r]).collect(), colors: None, num_colors: None }
    }

    /// Colors default to all 0 with one color. Colors follow the order of `pairs` as given.
    pub fn to_colored(&self) -> Result<ColoredPairPartition> {
        if let Some(m) = self.m {
            if m != self.pairs.len() {
                return invalid(format!("m = {m} but {} pairs given", self.pairs.len()));
            }
        }
        let colors = self.colors.clone().unwrap_or_else(|| vec![0; self.pairs.len()]);
        if colors.len() != self.pairs.len() {
            return invalid("colors and pairs differ in length");
        }
        let k = self.num_colors.unwrap_or_else(|| colors.iter().max().map_or(1, |c| c + 1));
        let v: Vec<_> = self.pairs.iter().zip(colors).map(|(p, c)| ((p[0], p[1]), c)).collect();
        ColoredPairPartition::from_pairs(&v, k)
    }
}
