//! Thoma parameters and the extreme characters of the infinite symmetric group.

use std::collections::BTreeMap;

use num_traits::{One, Signed};

use crate::error::{invalid, Result};
use crate::perm;
use crate::rational::{int, powi, Q};

/// Finite decreasing sequences `alpha`, `beta` with `sum(alpha) + sum(beta) <= 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThomaParameter {
    alpha: Vec<Q>,
    beta: Vec<Q>,
}

impl ThomaParameter {
    pub fn new(alpha: Vec<Q>, beta: Vec<Q>) -> Result<Self> {
        for (name, s) in [("alpha", &alpha), ("beta", &beta)] {
            if s.iter().any(|x| !x.is_positive()) {
                return invalid(format!("{name} entries must be positive"));
            }
            if s.windows(2).any(|w| w[0] < w[1]) {
                return invalid(format!("{name} must be weakly decreasing"));
            }
        }
        let tp = ThomaParameter { alpha, beta };
        if tp.gamma().is_negative() {
            return invalid("sum(alpha) + sum(beta) exceeds 1");
        }
        Ok(tp)
    }

    /// `alpha_i = 1/N` (N copies) for `N > 0`, `beta_i = 1/|N|` (|N| copies) for `N < 0`.
    pub fn thoma_n(n: i64) -> Result<Self> {
        if n == 0 {
            return invalid("N must be nonzero");
        }
        let x = Q::new(1.into(), n.abs().into());
        let v = vec![x; n.unsigned_abs() as usize];
        if n > 0 {
            ThomaParameter::new(v, vec![])
        } else {
            ThomaParameter::new(vec![], v)
        }
    }

    pub fn alpha(&self) -> &[Q] {
        &self.alpha
    }

    pub fn beta(&self) -> &[Q] {
        &self.beta
    }

    pub fn gamma(&self) -> Q {
        let s: Q = self.alpha.iter().chain(&self.beta).sum();
        Q::one() - s
    }

    /// `sum alpha^m + (-1)^(m+1) sum beta^m`
    pub fn power_sum(&self, m: usize) -> Q {
        let a: Q = self.alpha.iter().map(|x| powi(x, m as i64)).sum();
        let b: Q = self.beta.iter().map(|x| powi(x, m as i64)).sum();
        if m % 2 == 1 {
            a + b
        } else {
            a - b
        }
    }

    /// `prod_{m >= 2} power_sum(m)^{counts[m]}`; keys below 2 are ignored.
    pub fn product_over(&self, counts: &BTreeMap<usize, usize>) -> Q {
        let mut out = Q::one();
        for (&m, &k) in counts.range(2..) {
            if k > 0 {
                out *= powi(&self.power_sum(m), k as i64);
            }
        }
        out
    }

    /// Character value on a permutation of the given cycle type.
    pub fn character(&self, cycle_type: &BTreeMap<usize, usize>) -> Q {
        self.product_over(cycle_type)
    }

    pub fn character_of(&self, p: &[usize]) -> Q {
        self.character(&perm::cycle_type(p))
    }

    /// `phi(pi' pi^-1)`.
    pub fn spherical(&self, pi: &[usize], pi2: &[usize]) -> Result<Q> {
        if pi.len() != pi2.len() || !perm::is_permutation(pi) || !perm::is_permutation(pi2) {
            return invalid("permutations must act on a common finite set");
        }
        Ok(self.character_of(&perm::compose(pi2, &perm::inverse(pi))))
    }
}

/// `(1/N)^e`
pub fn inv_pow(n: i64, e: i64) -> Q {
    powi(&int(n), -e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    #[test]
    fn examples() {
        let t2 = ThomaParameter::thoma_n(2).unwrap();
        assert_eq!(t2.character_of(&[0, 1, 2]), Q::one());
        assert_eq!(t2.character_of(&[1, 0, 2]), frac(1, 2));
        let tm2 = ThomaParameter::thoma_n(-2).unwrap();
        assert_eq!(tm2.character_of(&[1, 2, 0]), frac(1, 4));
        assert_eq!(t2.spherical(&[1, 0, 2], &[1, 0, 2]).unwrap(), Q::one());
        assert_eq!(t2.spherical(&[0, 1, 2], &[1, 0, 2]).unwrap(), frac(1, 2));
        assert_eq!(t2.spherical(&[1, 0, 2], &[2, 1, 0]).unwrap(), frac(1, 4));
    }

    #[test]
    fn validation() {
        assert!(ThomaParameter::new(vec![frac(1, 2), frac(2, 3)], vec![]).is_err());
        assert!(ThomaParameter::new(vec![frac(2, 3), frac(1, 2)], vec![]).is_err());
        assert!(ThomaParameter::new(vec![frac(1, 2)], vec![frac(1, 3)]).is_ok());
        assert_eq!(ThomaParameter::new(vec![frac(1, 2)], vec![frac(1, 3)]).unwrap().gamma(), frac(1, 6));
        assert!(ThomaParameter::thoma_n(0).is_err());
    }
}
