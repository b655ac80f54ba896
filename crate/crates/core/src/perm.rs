//! Permutations of `0..n` as image vectors: `p[i]` is the image of `i`.

use std::collections::BTreeMap;

/// cycle length -> count, fixed points included.
pub fn cycle_type(p: &[usize]) -> BTreeMap<usize, usize> {
    let mut seen = vec![false; p.len()];
    let mut out = BTreeMap::new();
    for s in 0..p.len() {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut i = s;
        while !seen[i] {
            seen[i] = true;
            i = p[i];
            len += 1;
        }
        *out.entry(len).or_insert(0) += 1;
    }
    out
}

pub fn cycle_count(p: &[usize]) -> usize {
    cycle_type(p).values().sum()
}

/// `(a ∘ b)(i) = a(b(i))`.
pub fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&i| a[i]).collect()
}

pub fn inverse(p: &[usize]) -> Vec<usize> {
    let mut q = vec![0; p.len()];
    for (i, &j) in p.iter().enumerate() {
        q[j] = i;
    }
    q
}

pub fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter().all(|&j| j < p.len() && !std::mem::replace(&mut seen[j], true))
}

/// All `n!` permutations in lexicographic order.
pub fn all(n: usize) -> Vec<Vec<usize>> {
    let mut cur: Vec<usize> = (0..n).collect();
    let mut out = vec![cur.clone()];
    loop {
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else { break };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(all(0).len(), 1);
        assert_eq!(all(4).len(), 24);
        assert_eq!(cycle_type(&[1, 2, 0, 3]), BTreeMap::from([(1, 1), (3, 1)]));
        let a = vec![1, 0, 2];
        let b = vec![2, 1, 0];
        assert_eq!(compose(&a, &inverse(&a)), vec![0, 1, 2]);
        assert_eq!(cycle_type(&compose(&b, &a)), BTreeMap::from([(3, 1)]));
    }
}
