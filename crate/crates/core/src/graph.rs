//! Two-colored cycle graphs.
//!
//! Color id 0 is the reversing color (the `-1` of the `{-1, 1}` index set) and
//! color id 1 keeps arcs oriented left to right.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::partition::{ColoredPairPartition, PairPartition};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Class {
    D,
    S,
}

/// `p[b][u]` for `b` in {0, 1} and `u` in `0..=2m+1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorProfile {
    pub p: [Vec<usize>; 2],
    /// `r[k] = p[c(k)][k]`, index 0 unused.
    pub r: Vec<usize>,
    /// `other[k] = p[1 - c(k)][k]`, index 0 unused.
    pub other: Vec<usize>,
}

fn check_arity(p: &ColoredPairPartition) -> Result<()> {
    if p.num_colors() > 2 {
        return Err(Error::Unsupported(format!(
            "cycle graphs are defined for two colors, got {}",
            p.num_colors()
        )));
    }
    Ok(())
}

pub fn profile(p: &ColoredPairPartition) -> Result<ColorProfile> {
    check_arity(p)?;
    let n = 2 * p.m();
    let mut prof = [vec![0usize; n + 2], vec![0usize; n + 2]];
    for ((l, r), c) in p.colored_pairs() {
        for u in l..=r {
            prof[c][u] += 1;
        }
    }
    let pc = p.point_colors();
    let mut r = vec![0; n + 1];
    let mut other = vec![0; n + 1];
    for k in 1..=n {
        r[k] = prof[pc[k]][k];
        other[k] = prof[1 - pc[k]][k];
    }
    Ok(ColorProfile { p: prof, r, other })
}

pub fn classify(p: &ColoredPairPartition) -> Result<Vec<Class>> {
    let prof = profile(p)?;
    Ok(classify_with(&prof))
}

fn classify_with(prof: &ColorProfile) -> Vec<Class> {
    let mut out = vec![Class::S; prof.r.len()];
    for k in 1..prof.r.len() {
        out[k] = if prof.r[k] > prof.other[k] { Class::D } else { Class::S };
    }
    out
}

/// The fixed-point-free involution `Z`; index 0 unused.
pub fn z_map(p: &ColoredPairPartition) -> Result<Vec<usize>> {
    let prof = profile(p)?;
    let class = classify_with(&prof);
    z_with(p, &prof, &class)
}

fn z_with(p: &ColoredPairPartition, prof: &ColorProfile, class: &[Class]) -> Result<Vec<usize>> {
    let n = 2 * p.m();
    let left = p.base().left_mask();
    let r = &prof.r;
    let mut z = vec![0; n + 1];
    for k in 1..=n {
        let forward = matches!((left[k], class[k]), (true, Class::D) | (false, Class::S));
        let hit = if forward {
            (k + 1..=n).find(|&j| r[j] == r[k])
        } else {
            (1..k).rev().find(|&j| r[j] == r[k])
        };
        z[k] = hit.ok_or_else(|| Error::Invalid(format!("empty equivalence set for point {k}")))?;
    }
    Ok(z)
}

/// Bar partition and its coloring (aligned with canonical pair order).
pub fn bar_partition(p: &ColoredPairPartition) -> Result<ColoredPairPartition> {
    Ok(analyze(p)?.bar)
}

#[derive(Debug, Clone)]
pub struct GraphCycle {
    /// Vertices in arc order, starting from the smallest.
    pub vertices: Vec<usize>,
    pub inc_paths: usize,
    pub dec_paths: usize,
}

#[derive(Debug, Clone)]
pub struct CycleGraphAnalysis {
    pub profile: ColorProfile,
    /// index 0 unused
    pub classification: Vec<Class>,
    /// index 0 unused
    pub z: Vec<usize>,
    pub bar: ColoredPairPartition,
    pub arcs_f: Vec<(usize, usize)>,
    pub arcs_bar_f: Vec<(usize, usize)>,
    pub cycles: Vec<GraphCycle>,
    /// number of maximal increasing paths -> number of cycles
    pub gamma: BTreeMap<usize, usize>,
}

impl CycleGraphAnalysis {
    /// Total number of maximal increasing paths.
    pub fn increasing_paths(&self) -> usize {
        self.cycles.iter().map(|c| c.inc_paths).sum()
    }

    pub fn cycle_count(&self) -> usize {
        self.cycles.len()
    }
}

fn orient((u, v): (usize, usize), color: usize) -> (usize, usize) {
    if color == 1 {
        (u, v)
    } else {
        (v, u)
    }
}

pub fn analyze(p: &ColoredPairPartition) -> Result<CycleGraphAnalysis> {
    let prof = profile(p)?;
    let class = classify_with(&prof);
    let z = z_with(p, &prof, &class)?;
    let n = 2 * p.m();
    let pc = p.point_colors();

    let mut bar_pairs = Vec::with_capacity(p.m());
    for k in 1..=n {
        if k < z[k] {
            let c = match class[k] {
                Class::S => pc[k],
                Class::D => 1 - pc[k],
            };
            bar_pairs.push(((k, z[k]), c));
        }
    }
    let bar = ColoredPairPartition::new(
        PairPartition::from_sorted_unchecked(bar_pairs.iter().map(|x| x.0).collect()),
        bar_pairs.iter().map(|x| x.1).collect(),
        2,
    )?;

    let arcs_f: Vec<(usize, usize)> = p.colored_pairs().map(|(e, c)| orient(e, c)).collect();
    let arcs_bar_f: Vec<(usize, usize)> = bar.colored_pairs().map(|(e, c)| orient(e, c)).collect();

    let mut succ = vec![0usize; n + 1];
    let mut indeg = vec![0usize; n + 1];
    for &(u, v) in arcs_f.iter().chain(&arcs_bar_f) {
        if succ[u] != 0 {
            return Err(Error::Invalid(format!("vertex {u} has two outgoing arcs")));
        }
        succ[u] = v;
        indeg[v] += 1;
    }
    if (1..=n).any(|v| indeg[v] != 1 || succ[v] == 0) {
        return Err(Error::Invalid("graph is not a union of cycles".into()));
    }

    let mut seen = vec![false; n + 1];
    let mut cycles = Vec::new();
    for s in 1..=n {
        if seen[s] {
            continue;
        }
        let mut vertices = Vec::new();
        let mut v = s;
        while !seen[v] {
            seen[v] = true;
            vertices.push(v);
            v = succ[v];
        }
        let len = vertices.len();
        let up = |i: usize| vertices[i] < vertices[(i + 1) % len];
        let inc_paths = (0..len).filter(|&i| up(i) && !up((i + len - 1) % len)).count();
        let dec_paths = (0..len).filter(|&i| !up(i) && up((i + len - 1) % len)).count();
        cycles.push(GraphCycle { vertices, inc_paths, dec_paths });
    }
    let mut gamma = BTreeMap::new();
    for c in &cycles {
        *gamma.entry(c.inc_paths).or_insert(0) += 1;
    }
    Ok(CycleGraphAnalysis { profile: prof, classification: class, z, bar, arcs_f, arcs_bar_f, cycles, gamma })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cp(v: &[((usize, usize), usize)]) -> ColoredPairPartition {
        ColoredPairPartition::from_pairs(v, 2).unwrap()
    }

    #[test]
    fn single_pair() {
        for b in 0..2 {
            let p = cp(&[((1, 2), b)]);
            let g = analyze(&p).unwrap();
            assert_eq!(g.classification[1..], [Class::D, Class::D]);
            assert_eq!(g.z[1..], [2, 1]);
            assert_eq!(g.bar.colors(), &[1 - b]);
            assert_eq!(g.cycles.len(), 1);
            assert_eq!(g.cycles[0].inc_paths, 1);
        }
        let prof = profile(&cp(&[((1, 2), 0)])).unwrap();
        assert_eq!(prof.p[0], vec![0, 1, 1, 0]);
        assert_eq!(prof.p[1], vec![0, 0, 0, 0]);
    }

    #[test]
    fn two_color_crossing() {
        let p = cp(&[((1, 3), 0), ((2, 4), 1)]);
        let g = analyze(&p).unwrap();
        assert_eq!(g.profile.p[0][1..5], [1, 1, 1, 0]);
        assert_eq!(g.profile.p[1][1..5], [0, 1, 1, 1]);
        assert_eq!(g.classification[1..], [Class::D, Class::S, Class::S, Class::D]);
        assert_eq!(g.z[1..], [2, 1, 4, 3]);
        assert_eq!(g.bar.pairs(), &[(1, 2), (3, 4)]);
        assert_eq!(g.bar.colors(), &[1, 0]);
        assert_eq!(g.cycles.len(), 1);
        assert_eq!(g.cycles[0].vertices, vec![1, 2, 4, 3]);
        assert_eq!(g.cycles[0].inc_paths, 1);
    }

    #[test]
    fn constant_color_crossing() {
        let p = cp(&[((1, 3), 1), ((2, 4), 1)]);
        let g = analyze(&p).unwrap();
        assert_eq!(g.cycles.len(), 1);
        assert_eq!(g.cycles[0].vertices, vec![1, 3, 2, 4]);
        assert_eq!(g.cycles[0].inc_paths, 2);
    }

    #[test]
    fn too_many_colors() {
        let p = ColoredPairPartition::from_pairs(&[((1, 2), 2)], 3).unwrap();
        assert!(matches!(analyze(&p), Err(Error::Unsupported(_))));
    }
}
