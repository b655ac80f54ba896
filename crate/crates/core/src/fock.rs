//! Brute-force Fock oracles at the discrete parameter `alpha_i = 1/N`, `i <= N`.
//!
//! The dense oracle applies creation and annihilation operators literally on
//! sparse vectors in the symmetrized space. The elementary-vector oracle
//! propagates a single product state per choice of free values, which is
//! enough for the canonical word of a colored pair partition.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{capacity, Error, Result};
use crate::partition::ColoredPairPartition;
use crate::perm;
use crate::rational::{frac, int, powi, Q};
use crate::word::{Kind, Letter, Word};

pub const MAX_DENSE_LEVEL: usize = 4;
pub const MAX_DENSE_N: i64 = 3;
pub const MAX_LAMBDA_LEVEL: usize = 5;
const MAX_LAMBDA_BRANCHES: f64 = 1e7;

/// Basis vector `delta_(x,y) (x) (t[0] tensor word, t[1] tensor word)`.
///
/// Color 0 acts on the `x` coordinates, color 1 on the `y` coordinates. Both have
/// length `max(|t[0]|, |t[1]|)` and take values in `0..N`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Key {
    pub x: Vec<u8>,
    pub y: Vec<u8>,
    pub t: [Vec<u32>; 2],
}

impl Key {
    pub fn vacuum() -> Key {
        Key { x: Vec::new(), y: Vec::new(), t: [Vec::new(), Vec::new()] }
    }

    pub fn levels(&self) -> (usize, usize) {
        (self.t[0].len(), self.t[1].len())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FockVector(pub BTreeMap<Key, Q>);

impl FockVector {
    pub fn vacuum() -> FockVector {
        FockVector(BTreeMap::from([(Key::vacuum(), Q::one())]))
    }

    pub fn basis(k: Key) -> FockVector {
        FockVector(BTreeMap::from([(k, Q::one())]))
    }

    fn add(&mut self, k: Key, c: Q) {
        if c.is_zero() {
            return;
        }
        let e = self.0.entry(k.clone()).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.0.remove(&k);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.values().all(|v| v.is_zero())
    }

    pub fn vacuum_coefficient(&self) -> Q {
        self.0.get(&Key::vacuum()).cloned().unwrap_or_else(Q::zero)
    }

    pub fn scale(&self, c: &Q) -> FockVector {
        let mut out = FockVector::default();
        for (k, v) in &self.0 {
            out.add(k.clone(), v * c);
        }
        out
    }

    pub fn plus(&self, other: &FockVector) -> FockVector {
        let mut out = self.clone();
        for (k, v) in &other.0 {
            out.add(k.clone(), v.clone());
        }
        out
    }
}

/// The dense space for a fixed `N`.
#[derive(Debug, Clone, Copy)]
pub struct DenseFock {
    n: i64,
}

fn factorial(n: usize) -> Q {
    int((1..=n as i64).product::<i64>())
}

impl DenseFock {
    pub fn new(n: i64) -> Result<DenseFock> {
        if n < 0 {
            return Err(Error::Unsupported("the dense oracle covers N >= 1 only".into()));
        }
        if n == 0 {
            return Err(Error::Invalid("N must be nonzero".into()));
        }
        if n > MAX_DENSE_N {
            return capacity(format!("dense oracle supports N <= {MAX_DENSE_N}, got {n}"));
        }
        Ok(DenseFock { n })
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    /// `<u, v> = sum_k u_k v_k N^{-n} / (n_0! n_1!)`.
    pub fn inner(&self, u: &FockVector, v: &FockVector) -> Q {
        let mut s = Q::zero();
        for (k, a) in &u.0 {
            if let Some(b) = v.0.get(k) {
                let (n0, n1) = k.levels();
                s += a * b * powi(&frac(1, self.n), k.x.len() as i64) / (factorial(n0) * factorial(n1));
            }
        }
        s
    }

    /// Average over `S_{n_0} x S_{n_1}` acting jointly on coordinates and tensor slots.
    pub fn symmetrize(&self, v: &FockVector) -> FockVector {
        let mut out = FockVector::default();
        for (k, c) in &v.0 {
            let (n0, n1) = k.levels();
            let g0 = perm::all(n0);
            let g1 = perm::all(n1);
            let w = c / (int(g0.len() as i64) * int(g1.len() as i64));
            for s in &g0 {
                for p in &g1 {
                    let mut nk = k.clone();
                    for j in 0..n0 {
                        nk.x[j] = k.x[s[j]];
                        nk.t[0][j] = k.t[0][s[j]];
                    }
                    for j in 0..n1 {
                        nk.y[j] = k.y[p[j]];
                        nk.t[1][j] = k.t[1][p[j]];
                    }
                    out.add(nk, w.clone());
                }
            }
        }
        out
    }

    pub fn create(&self, v: &FockVector, b: usize, h: u32) -> Result<FockVector> {
        let mut raw = FockVector::default();
        for (k, c) in &v.0 {
            let (n0, n1) = k.levels();
            let nb = if b == 0 { n0 } else { n1 };
            let no = if b == 0 { n1 } else { n0 };
            if nb + 1 > MAX_DENSE_LEVEL {
                return capacity(format!("dense oracle level exceeds {MAX_DENSE_LEVEL}"));
            }
            let c = c * int(nb as i64 + 1);
            if nb >= no {
                for z in 0..self.n as u8 {
                    let mut nk = k.clone();
                    nk.x.push(z);
                    nk.y.push(z);
                    nk.t[b].push(h);
                    raw.add(nk, c.clone());
                }
            } else {
                let mut nk = k.clone();
                nk.t[b].push(h);
                raw.add(nk, c);
            }
        }
        Ok(self.symmetrize(&raw))
    }

    /// Adjoint of [`DenseFock::create`] on symmetric vectors.
    pub fn annihilate(&self, v: &FockVector, b: usize, h: u32) -> FockVector {
        let mut out = FockVector::default();
        for (k, c) in &v.0 {
            let (n0, n1) = k.levels();
            let nb = if b == 0 { n0 } else { n1 };
            let no = if b == 0 { n1 } else { n0 };
            if k.t[b].last() != Some(&h) {
                continue;
            }
            let mut nk = k.clone();
            nk.t[b].pop();
            let mut c = c.clone();
            if nb > no {
                let xl = nk.x.pop();
                let yl = nk.y.pop();
                if xl != yl {
                    continue;
                }
                c /= int(self.n);
            }
            out.add(nk, c);
        }
        out
    }

    pub fn apply(&self, v: &FockVector, l: Letter) -> Result<FockVector> {
        match l.k {
            Kind::Create => self.create(v, l.b, l.i),
            Kind::Annihilate => Ok(self.annihilate(v, l.b, l.i)),
        }
    }

    /// `A Omega`, letters applied right to left.
    pub fn apply_word(&self, a: &Word, v: &FockVector) -> Result<FockVector> {
        let mut cur = v.clone();
        for &l in a.letters().iter().rev() {
            if cur.0.is_empty() {
                break;
            }
            cur = self.apply(&cur, l)?;
        }
        Ok(cur)
    }
}

/// Levels reached while applying `a` to the vacuum, or `None` if one goes negative.
fn level_path(a: &Word) -> Option<usize> {
    let mut lv = [0i64; 2];
    let mut top = 0;
    for l in a.letters().iter().rev() {
        lv[l.b] += if l.k == Kind::Create { 1 } else { -1 };
        if lv[l.b] < 0 {
            return None;
        }
        top = top.max(lv[l.b] as usize);
    }
    Some(top)
}

/// `<Omega, A Omega>` by literal operator application.
pub fn vacuum_expectation_dense(a: &Word, n: i64) -> Result<Q> {
    let f = DenseFock::new(n)?;
    let Some(top) = level_path(a) else {
        return Ok(Q::zero());
    };
    if top > MAX_DENSE_LEVEL {
        return capacity(format!("word reaches level {top}, dense oracle supports {MAX_DENSE_LEVEL}"));
    }
    if a.len() % 2 == 1 {
        return Ok(Q::zero());
    }
    Ok(f.apply_word(a, &FockVector::vacuum())?.vacuum_coefficient())
}

/// Dense expectation of the canonical word of `p`.
pub fn vacuum_expectation_dense_partition(p: &ColoredPairPartition, n: i64) -> Result<Q> {
    check_two_colors(p)?;
    vacuum_expectation_dense(&Word::canonical(p), n)
}

fn check_two_colors(p: &ColoredPairPartition) -> Result<()> {
    if p.num_colors() > 2 {
        return Err(Error::Unsupported("the Fock oracles take two colors".into()));
    }
    Ok(())
}

#[derive(Debug, Clone)]
struct Elementary {
    d: Q,
    levels: [usize; 2],
    /// value attached to each pair once its creator has acted
    s: Vec<Option<u8>>,
    /// tail coordinates beyond the smaller level, keyed by position
    tail: BTreeMap<usize, u8>,
}

/// Sum over free values of the elementary-vector propagation through the canonical word.
pub fn vacuum_expectation_lambda(p: &ColoredPairPartition, n: i64) -> Result<Q> {
    check_two_colors(p)?;
    if n < 0 {
        return Err(Error::Unsupported("the elementary-vector oracle covers N >= 1 only".into()));
    }
    if n == 0 {
        return Err(Error::Invalid("N must be nonzero".into()));
    }
    let w = Word::canonical(p);
    let top = level_path(&w).unwrap_or(0);
    if top > MAX_LAMBDA_LEVEL {
        return capacity(format!("word reaches level {top}, elementary oracle supports {MAX_LAMBDA_LEVEL}"));
    }
    let branches = (n as f64).powi(p.m() as i32);
    if branches > MAX_LAMBDA_BRANCHES {
        return capacity(format!("{branches} branches exceed the work limit"));
    }
    let st = Elementary { d: Q::one(), levels: [0, 0], s: vec![None; p.m()], tail: BTreeMap::new() };
    let mut total = Q::zero();
    propagate(w.letters(), w.len(), st, n, &mut total);
    Ok(total)
}

fn propagate(w: &[Letter], pos: usize, mut st: Elementary, n: i64, total: &mut Q) {
    if st.d.is_zero() {
        return;
    }
    if pos == 0 {
        *total += st.d;
        return;
    }
    let l = w[pos - 1];
    let b = l.b;
    let i = l.i as usize - 1;
    let nb = st.levels[b];
    let no = st.levels[1 - b];
    match l.k {
        Kind::Create => {
            st.d *= int(nb as i64 + 1);
            st.levels[b] += 1;
            if nb >= no {
                for z in 0..n as u8 {
                    let mut s2 = st.clone();
                    s2.s[i] = Some(z);
                    s2.tail.insert(nb + 1, z);
                    propagate(w, pos - 1, s2, n, total);
                }
            } else {
                let Some(z) = st.tail.remove(&(nb + 1)) else { return };
                st.s[i] = Some(z);
                propagate(w, pos - 1, st, n, total);
            }
        }
        Kind::Annihilate => {
            let Some(si) = st.s[i] else { return };
            st.d /= int(nb as i64);
            st.levels[b] -= 1;
            if nb > no {
                if st.tail.remove(&nb) != Some(si) {
                    return;
                }
                st.d /= int(n);
            } else {
                st.tail.insert(nb, si);
            }
            propagate(w, pos - 1, st, n, total);
        }
    }
}
