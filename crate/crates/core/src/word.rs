//! Words in creation and annihilation operators, compatible pair partitions and
//! the moment functional built from them.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::partition::{ColoredPairPartition, PairPartition};
use crate::rational::Q;
use crate::tfunc::TFunction;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Kind {
    #[serde(rename = "a*")]
    Create,
    #[serde(rename = "a")]
    Annihilate,
}

impl Kind {
    pub fn flip(self) -> Kind {
        match self {
            Kind::Create => Kind::Annihilate,
            Kind::Annihilate => Kind::Create,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub b: usize,
    pub i: u32,
    pub k: Kind,
}

impl Letter {
    pub fn create(b: usize, i: u32) -> Letter {
        Letter { b, i, k: Kind::Create }
    }

    pub fn annihilate(b: usize, i: u32) -> Letter {
        Letter { b, i, k: Kind::Annihilate }
    }
}

/// Letters are read left to right; the rightmost letter acts first on the vacuum.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Result<Word> {
        if let Some(l) = letters.iter().find(|l| l.b > 1) {
            return invalid(format!("color {} is not in {{0, 1}}", l.b));
        }
        Ok(Word(letters))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    /// Adjoint word: reversed with creators and annihilators exchanged.
    pub fn star(&self) -> Word {
        Word(self.0.iter().rev().map(|l| Letter { k: l.k.flip(), ..*l }).collect())
    }

    pub fn concat(parts: &[&Word]) -> Word {
        Word(parts.iter().flat_map(|w| w.0.iter().copied()).collect())
    }

    /// Creators minus annihilators per `(color, index)`; zero entries are kept.
    pub fn profile(&self) -> BTreeMap<(usize, u32), i64> {
        let mut out = BTreeMap::new();
        for l in &self.0 {
            *out.entry((l.b, l.i)).or_insert(0) += match l.k {
                Kind::Create => 1,
                Kind::Annihilate => -1,
            };
        }
        out
    }

    pub fn profile_at(&self, b: usize, i: u32) -> i64 {
        self.profile().get(&(b, i)).copied().unwrap_or(0)
    }

    /// `|w_b| = sum_n w_b(n)`.
    pub fn profile_total(&self, b: usize) -> i64 {
        self.profile().iter().filter(|((c, _), _)| *c == b).map(|(_, v)| v).sum()
    }

    /// Largest index used, 0 for the empty word.
    pub fn max_index(&self) -> u32 {
        self.0.iter().map(|l| l.i).max().unwrap_or(0)
    }

    /// The word whose compatible partitions include `p`: annihilator at left points,
    /// creator at right points, color of the pair, index = 1-based pair ordinal.
    pub fn canonical(p: &ColoredPairPartition) -> Word {
        let left = p.base().left_mask();
        let idx = p.base().pair_index();
        let pc = p.point_colors();
        Word(
            (1..=2 * p.m())
                .map(|k| Letter {
                    b: pc[k],
                    i: idx[k] as u32 + 1,
                    k: if left[k] { Kind::Annihilate } else { Kind::Create },
                })
                .collect(),
        )
    }
}

/// Every colored pair partition in which each pair joins an annihilator on its left to a
/// creator on its right with the same color and index.
pub fn compatible_partitions(a: &Word) -> Vec<ColoredPairPartition> {
    let mut out = Vec::new();
    if a.len() % 2 == 1 {
        return out;
    }
    let mut open: Vec<usize> = Vec::new();
    let mut pairs: Vec<((usize, usize), usize)> = Vec::new();
    rec_compat(a.letters(), 0, &mut open, &mut pairs, &mut out);
    out
}

fn rec_compat(
    w: &[Letter],
    pos: usize,
    open: &mut Vec<usize>,
    pairs: &mut Vec<((usize, usize), usize)>,
    out: &mut Vec<ColoredPairPartition>,
) {
    if open.len() > w.len() - pos {
        return;
    }
    if pos == w.len() {
        let mut v = pairs.clone();
        v.sort_unstable();
        let base = PairPartition::from_sorted_unchecked(v.iter().map(|x| x.0).collect());
        out.push(ColoredPairPartition::new(base, v.iter().map(|x| x.1).collect(), 2).expect("colors in {0,1}"));
        return;
    }
    let l = w[pos];
    match l.k {
        Kind::Annihilate => {
            open.push(pos);
            rec_compat(w, pos + 1, open, pairs, out);
            open.pop();
        }
        Kind::Create => {
            for j in 0..open.len() {
                let s = open[j];
                if w[s].b == l.b && w[s].i == l.i {
                    open.remove(j);
                    pairs.push(((s + 1, pos + 1), l.b));
                    rec_compat(w, pos + 1, open, pairs, out);
                    pairs.pop();
                    open.insert(j, s);
                }
            }
        }
    }
}

/// `sum over compatible partitions of t`.
pub fn fock_moment(a: &Word, t: &TFunction) -> Result<Q> {
    let mut s = Q::zero();
    for p in compatible_partitions(a) {
        s += t.eval(&p)?;
    }
    Ok(s)
}

/// `rho_N(A)` with `t_N`.
pub fn rho_n(a: &Word, n: i64) -> Result<Q> {
    fock_moment(a, &TFunction::TN(n))
}
