//! The *-semigroup of colored broken pair partitions.
//!
//! Elements are stored on the canonical base set `1..=n`. Each point carries a
//! color and is either a pair endpoint or an open leg with a number. Leg numbers
//! of one color and one side always form `1..=count`.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{capacity, invalid, Result};
use crate::partition::{ColoredPairPartition, PairPartition};
use crate::perm;
use crate::rational::Q;
use crate::tfunc::TFunction;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Role {
    /// 1-based partner point.
    Pair(usize),
    Left(usize),
    Right(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub color: usize,
    pub role: Role,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BrokenPairPartition {
    num_colors: usize,
    points: Vec<Point>,
}

impl BrokenPairPartition {
    /// Points are listed in base order; partners are 1-based.
    pub fn new(num_colors: usize, points: Vec<Point>) -> Result<Self> {
        let d = BrokenPairPartition { num_colors, points };
        d.validate()?;
        Ok(d)
    }

    fn validate(&self) -> Result<()> {
        let n = self.points.len();
        let mut left = vec![Vec::new(); self.num_colors];
        let mut right = vec![Vec::new(); self.num_colors];
        for (k, pt) in self.points.iter().enumerate() {
            if pt.color >= self.num_colors {
                return invalid(format!("color {} out of range", pt.color));
            }
            match pt.role {
                Role::Pair(q) => {
                    if q == 0 || q > n || q == k + 1 {
                        return invalid(format!("bad partner {q} for point {}", k + 1));
                    }
                    let other = self.points[q - 1];
                    if other.role != Role::Pair(k + 1) || other.color != pt.color {
                        return invalid(format!("points {} and {q} are not mutual partners", k + 1));
                    }
                }
                Role::Left(x) => left[pt.color].push(x),
                Role::Right(x) => right[pt.color].push(x),
            }
        }
        for mut v in left.into_iter().chain(right) {
            v.sort_unstable();
            if v.iter().enumerate().any(|(i, &x)| x != i + 1) {
                return invalid("leg numbers of a color and side must be 1..count");
            }
        }
        Ok(())
    }

    pub fn empty(num_colors: usize) -> Self {
        BrokenPairPartition { num_colors, points: Vec::new() }
    }

    /// One point with a single open left leg.
    pub fn left_hook(color: usize, num_colors: usize) -> Self {
        BrokenPairPartition { num_colors, points: vec![Point { color, role: Role::Left(1) }] }
    }

    /// One point with a single open right leg.
    pub fn right_hook(color: usize, num_colors: usize) -> Self {
        BrokenPairPartition { num_colors, points: vec![Point { color, role: Role::Right(1) }] }
    }

    pub fn from_colored(p: &ColoredPairPartition) -> Self {
        let mut points = vec![Point { color: 0, role: Role::Left(0) }; 2 * p.m()];
        for ((l, r), c) in p.colored_pairs() {
            points[l - 1] = Point { color: c, role: Role::Pair(r) };
            points[r - 1] = Point { color: c, role: Role::Pair(l) };
        }
        BrokenPairPartition { num_colors: p.num_colors(), points }
    }

    /// `None` if any leg is open.
    pub fn to_colored(&self) -> Option<ColoredPairPartition> {
        let mut pairs = Vec::new();
        for (k, pt) in self.points.iter().enumerate() {
            match pt.role {
                Role::Pair(q) if q > k + 1 => pairs.push(((k + 1, q), pt.color)),
                Role::Pair(_) => {}
                _ => return None,
            }
        }
        Some(ColoredPairPartition::new(
            PairPartition::new(pairs.iter().map(|x| x.0).collect()).ok()?,
            pairs.iter().map(|x| x.1).collect(),
            self.num_colors,
        )
        .expect("valid coloring"))
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn num_colors(&self) -> usize {
        self.num_colors
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn left_count(&self, color: usize) -> usize {
        self.points.iter().filter(|p| p.color == color && matches!(p.role, Role::Left(_))).count()
    }

    pub fn right_count(&self, color: usize) -> usize {
        self.points.iter().filter(|p| p.color == color && matches!(p.role, Role::Right(_))).count()
    }

    pub fn has_open_legs(&self) -> bool {
        self.points.iter().any(|p| !matches!(p.role, Role::Pair(_)))
    }

    /// Concatenation. Per color, right leg `R1 - j + 1` of `self` joins left leg
    /// `L2 - j + 1` of `other` for `j = 1..=M`, `M = min(R1, L2)`. Unjoined left legs of
    /// `other` keep the low numbers and those of `self` move above them; unjoined right
    /// legs of `self` keep the low numbers and those of `other` move above them.
    pub fn multiply(&self, other: &Self) -> Self {
        assert_eq!(self.num_colors, other.num_colors, "operands use different color sets");
        let n1 = self.n();
        let mut points: Vec<Point> = self.points.clone();
        points.extend(other.points.iter().map(|p| Point {
            color: p.color,
            role: match p.role {
                Role::Pair(q) => Role::Pair(q + n1),
                r => r,
            },
        }));
        for a in 0..self.num_colors {
            let r1 = self.right_count(a);
            let l2 = other.left_count(a);
            let m = r1.min(l2);
            let mut r_pos = vec![0; r1 + 1];
            let mut l_pos = vec![0; l2 + 1];
            for (k, p) in points.iter().enumerate() {
                if p.color != a {
                    continue;
                }
                match p.role {
                    Role::Right(x) if k < n1 => r_pos[x] = k,
                    Role::Left(x) if k >= n1 => l_pos[x] = k,
                    _ => {}
                }
            }
            for j in 1..=m {
                let u = r_pos[r1 - j + 1];
                let v = l_pos[l2 - j + 1];
                points[u].role = Role::Pair(v + 1);
                points[v].role = Role::Pair(u + 1);
            }
            for (k, p) in points.iter_mut().enumerate() {
                if p.color != a {
                    continue;
                }
                match p.role {
                    Role::Left(x) if k < n1 => p.role = Role::Left(x + l2 - m),
                    Role::Right(x) if k >= n1 => p.role = Role::Right(x + r1 - m),
                    _ => {}
                }
            }
        }
        BrokenPairPartition { num_colors: self.num_colors, points }
    }

    /// Mirror image: base order reversed, left and right legs exchanged.
    pub fn involution(&self) -> Self {
        let n = self.n();
        let points = self
            .points
            .iter()
            .rev()
            .map(|p| Point {
                color: p.color,
                role: match p.role {
                    Role::Pair(q) => Role::Pair(n + 1 - q),
                    Role::Left(x) => Role::Right(x),
                    Role::Right(x) => Role::Left(x),
                },
            })
            .collect();
        BrokenPairPartition { num_colors: self.num_colors, points }
    }

    /// Renumbers the open right legs of each color: leg `x` becomes `perms[a][x-1] + 1`.
    pub fn permute_right_legs(&self, perms: &[Vec<usize>]) -> Result<Self> {
        if perms.len() != self.num_colors {
            return invalid("one permutation per color is required");
        }
        for (a, p) in perms.iter().enumerate() {
            if p.len() != self.right_count(a) || !perm::is_permutation(p) {
                return invalid(format!("permutation for color {a} does not match its {} right legs", self.right_count(a)));
            }
        }
        let mut out = self.clone();
        for p in &mut out.points {
            if let Role::Right(x) = p.role {
                p.role = Role::Right(perms[p.color][x - 1] + 1);
            }
        }
        Ok(out)
    }

    pub fn to_json(&self) -> BrokenJson {
        let per_color = (0..self.num_colors)
            .map(|a| {
                let mut part = ColorPartJson::default();
                for (k, p) in self.points.iter().enumerate() {
                    if p.color != a {
                        continue;
                    }
                    match p.role {
                        Role::Pair(q) if q > k + 1 => part.pairs.push([k + 1, q]),
                        Role::Pair(_) => {}
                        Role::Left(x) => {
                            part.left_legs.insert((k + 1).to_string(), x);
                        }
                        Role::Right(x) => {
                            part.right_legs.insert((k + 1).to_string(), x);
                        }
                    }
                }
                part
            })
            .collect();
        BrokenJson { n: self.n(), colors: self.num_colors, per_color }
    }

    pub fn from_json(j: &BrokenJson) -> Result<Self> {
        if j.per_color.len() != j.colors {
            return invalid("per_color length differs from colors");
        }
        let mut points: Vec<Option<Point>> = vec![None; j.n];
        let mut put = |k: usize, pt: Point| -> Result<()> {
            if k == 0 || k > j.n {
                return invalid(format!("point {k} outside 1..{}", j.n));
            }
            if points[k - 1].replace(pt).is_some() {
                return invalid(format!("point {k} assigned twice"));
            }
            Ok(())
        };
        for (a, part) in j.per_color.iter().enumerate() {
            for &[l, r] in &part.pairs {
                put(l, Point { color: a, role: Role::Pair(r) })?;
                put(r, Point { color: a, role: Role::Pair(l) })?;
            }
            for (side, legs) in [(true, &part.left_legs), (false, &part.right_legs)] {
                for (k, &x) in legs {
                    let k: usize = k.parse().map_err(|_| crate::Error::Invalid(format!("bad point key {k}")))?;
                    put(k, Point { color: a, role: if side { Role::Left(x) } else { Role::Right(x) } })?;
                }
            }
        }
        let points = points
            .into_iter()
            .enumerate()
            .map(|(k, p)| p.ok_or_else(|| crate::Error::Invalid(format!("point {} unassigned", k + 1))))
            .collect::<Result<Vec<_>>>()?;
        BrokenPairPartition::new(j.colors, points)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColorPartJson {
    #[serde(default)]
    pub pairs: Vec<[usize; 2]>,
    #[serde(default)]
    pub left_legs: BTreeMap<String, usize>,
    #[serde(default)]
    pub right_legs: BTreeMap<String, usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BrokenJson {
    pub n: usize,
    pub colors: usize,
    pub per_color: Vec<ColorPartJson>,
}

/// `t(d)` when `d` has no open legs, else 0.
pub fn t_hat(d: &BrokenPairPartition, t: &TFunction) -> Result<Q> {
    match d.to_colored() {
        Some(p) => t.eval(&p),
        None => Ok(Q::zero()),
    }
}

pub const MAX_GRAM_SIZE: usize = 4096;

/// Entries `t_hat(d_i^* d_j)`.
pub fn gram_matrix(family: &[BrokenPairPartition], t: &TFunction) -> Result<Vec<Vec<Q>>> {
    if family.is_empty() {
        return invalid("family must be nonempty");
    }
    if family.len() > MAX_GRAM_SIZE {
        return capacity(format!("family of {} exceeds {MAX_GRAM_SIZE}", family.len()));
    }
    let stars: Vec<_> = family.iter().map(|d| d.involution()).collect();
    let mut g = vec![vec![Q::zero(); family.len()]; family.len()];
    for i in 0..family.len() {
        for j in i..family.len() {
            let v = t_hat(&stars[i].multiply(&family[j]), t)?;
            g[j][i] = v.clone();
            g[i][j] = v;
        }
    }
    Ok(g)
}

/// Every broken pair partition on at most `max_points` points with `num_colors` colors.
pub fn enumerate_broken(max_points: usize, num_colors: usize) -> Result<Vec<BrokenPairPartition>> {
    if max_points > 5 || num_colors > 3 {
        return capacity("broken-diagram enumeration is limited to 5 points and 3 colors");
    }
    let mut out = Vec::new();
    for n in 0..=max_points {
        let kinds = 3 * num_colors;
        for code in 0..kinds.pow(n as u32) {
            let mut c = code;
            let mut assign = Vec::with_capacity(n);
            for _ in 0..n {
                assign.push((c % num_colors, (c / num_colors) % 3));
                c /= kinds;
            }
            expand_assignment(&assign, num_colors, &mut out);
        }
    }
    Ok(out)
}

fn expand_assignment(assign: &[(usize, usize)], num_colors: usize, out: &mut Vec<BrokenPairPartition>) {
    // Per (color, kind) the list of points; kind 0 = pair endpoint, 1 = left leg, 2 = right leg.
    let mut groups = vec![vec![Vec::new(); 3]; num_colors];
    for (k, &(c, kind)) in assign.iter().enumerate() {
        groups[c][kind].push(k);
    }
    if groups.iter().any(|g| g[0].len() % 2 == 1) {
        return;
    }
    let mut options: Vec<Vec<Vec<(usize, Role)>>> = Vec::new();
    for g in &groups {
        let matchings = crate::partition::enumerate_pair_partitions(g[0].len() / 2).expect("small");
        options.push(
            matchings
                .iter()
                .map(|v| {
                    v.pairs()
                        .iter()
                        .flat_map(|&(a, b)| {
                            let (x, y) = (g[0][a - 1], g[0][b - 1]);
                            [(x, Role::Pair(y + 1)), (y, Role::Pair(x + 1))]
                        })
                        .collect()
                })
                .collect(),
        );
        for (kind, side) in [(1usize, true), (2, false)] {
            let pts = &g[kind];
            options.push(
                perm::all(pts.len())
                    .into_iter()
                    .map(|p| {
                        pts.iter()
                            .zip(p)
                            .map(|(&k, x)| (k, if side { Role::Left(x + 1) } else { Role::Right(x + 1) }))
                            .collect()
                    })
                    .collect(),
            );
        }
    }
    let mut idx = vec![0usize; options.len()];
    loop {
        let mut points: Vec<Point> = assign.iter().map(|&(c, _)| Point { color: c, role: Role::Left(0) }).collect();
        for (o, &i) in options.iter().zip(&idx) {
            for &(k, role) in &o[i] {
                points[k].role = role;
            }
        }
        out.push(BrokenPairPartition { num_colors, points });
        let mut pos = 0;
        loop {
            if pos == idx.len() {
                return;
            }
            idx[pos] += 1;
            if idx[pos] < options[pos].len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Factor {
    /// Right hooks of the listed colors, in order.
    RightHooks(Vec<usize>),
    /// Per color, a renumbering of the currently open right legs (0-based images).
    Permute(Vec<Vec<usize>>),
    /// Left hooks of the listed colors, in order.
    LeftHooks(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StandardForm {
    pub num_colors: usize,
    pub factors: Vec<Factor>,
}

impl StandardForm {
    pub fn product(&self) -> Result<BrokenPairPartition> {
        let k = self.num_colors;
        let mut acc = BrokenPairPartition::empty(k);
        for f in &self.factors {
            match f {
                Factor::RightHooks(cs) => {
                    for &c in cs {
                        acc = acc.multiply(&BrokenPairPartition::right_hook(c, k));
                    }
                }
                Factor::LeftHooks(cs) => {
                    for &c in cs {
                        acc = acc.multiply(&BrokenPairPartition::left_hook(c, k));
                    }
                }
                Factor::Permute(p) => acc = acc.permute_right_legs(p)?,
            }
        }
        Ok(acc)
    }
}

/// Left points become right hooks, right points become left hooks. Before each run of
/// left hooks the open right legs are renumbered so that each hook meets its partner on
/// the top leg; legs not needed by the run keep their relative order.
pub fn standard_form(p: &ColoredPairPartition) -> StandardForm {
    let k = p.num_colors();
    let n = 2 * p.m();
    let left = p.base().left_mask();
    let pc = p.point_colors();
    let idx = p.base().pair_index();
    // stacks[a][x] = pair id on right leg x+1 of color a
    let mut stacks: Vec<Vec<usize>> = vec![Vec::new(); k];
    let mut factors = Vec::new();
    let mut pos = 1;
    while pos <= n {
        let is_left = left[pos];
        let end = (pos..=n).find(|&q| left[q] != is_left).unwrap_or(n + 1);
        let run: Vec<usize> = (pos..end).collect();
        if is_left {
            factors.push(Factor::RightHooks(run.iter().map(|&q| pc[q]).collect()));
            for &q in &run {
                stacks[pc[q]].push(idx[q]);
            }
        } else {
            let mut perms = Vec::with_capacity(k);
            for (a, stack) in stacks.iter_mut().enumerate() {
                let needed: Vec<usize> = run.iter().filter(|&&q| pc[q] == a).map(|&q| idx[q]).collect();
                let mut order: Vec<usize> = stack.iter().copied().filter(|j| !needed.contains(j)).collect();
                order.extend(needed.iter().rev());
                let perm: Vec<usize> =
                    stack.iter().map(|j| order.iter().position(|x| x == j).expect("open leg")).collect();
                perms.push(perm);
                order.truncate(order.len() - needed.len());
                *stack = order;
            }
            factors.push(Factor::Permute(perms));
            factors.push(Factor::LeftHooks(run.iter().map(|&q| pc[q]).collect()));
        }
        pos = end;
    }
    StandardForm { num_colors: k, factors }
}
