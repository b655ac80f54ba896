//! t-functions on (colored) pair partitions.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph;
use crate::partition::{ColoredPairPartition, PairPartition};
use crate::qproduct::QMatrix;
use crate::rational::Q;
use crate::thoma::{inv_pow, ThomaParameter};

/// Bozejko-Guta value `prod_{m>=2} power_sum(m)^{rho_m(V)}`.
pub fn t_uncolored(tp: &ThomaParameter, v: &PairPartition) -> Q {
    tp.product_over(&v.cycles().rho)
}

/// `prod_{m>=2} power_sum(m)^{gamma_m(G)}` over the cycle graph (two colors).
pub fn t_colored(tp: &ThomaParameter, p: &ColoredPairPartition) -> Result<Q> {
    Ok(tp.product_over(&graph::analyze(p)?.gamma))
}

/// `(1/N)^{m(G) - gamma(G)}`.
pub fn t_n(n: i64, p: &ColoredPairPartition) -> Result<Q> {
    if n == 0 {
        return Err(Error::Invalid("N must be nonzero".into()));
    }
    let g = graph::analyze(p)?;
    Ok(inv_pow(n, (g.increasing_paths() - g.cycle_count()) as i64))
}

/// Uncolored `t_N`: `(1/N)^{m - #cycles}`.
pub fn t_n_uncolored(n: i64, v: &PairPartition) -> Q {
    inv_pow(n, (v.m() - v.cycle_count()) as i64)
}

/// Product of component values on the color classes (each relabeled onto `[2m_b]`).
pub fn t_tensor(t_minus: &TFunction, t_plus: &TFunction, p: &ColoredPairPartition) -> Result<Q> {
    if p.num_colors() > 2 {
        return Err(Error::Unsupported("tensor product takes two colors".into()));
    }
    Ok(t_minus.eval_uncolored(&p.restrict(0))? * t_plus.eval_uncolored(&p.restrict(1))?)
}

/// `t(V) = 1` if noncrossing, else 0.
pub fn t_free(v: &PairPartition) -> Q {
    if v.is_noncrossing() {
        Q::one()
    } else {
        Q::zero()
    }
}

#[derive(Debug, Clone)]
pub enum TFunction {
    /// Colored: the cycle-graph formula. Uncolored: the classical cycle formula.
    Thoma(ThomaParameter),
    TN(i64),
    Free,
    Tensor(Box<TFunction>, Box<TFunction>),
    QProduct { parts: Vec<TFunction>, q: QMatrix },
}

impl TFunction {
    pub fn eval(&self, p: &ColoredPairPartition) -> Result<Q> {
        match self {
            TFunction::Thoma(tp) => t_colored(tp, p),
            TFunction::TN(n) => t_n(*n, p),
            TFunction::Free => Ok(t_free(p.base())),
            TFunction::Tensor(a, b) => t_tensor(a, b, p),
            TFunction::QProduct { parts, q } => crate::qproduct::q_product_eval(parts, q, p),
        }
    }

    pub fn eval_uncolored(&self, v: &PairPartition) -> Result<Q> {
        match self {
            TFunction::Thoma(tp) => Ok(t_uncolored(tp, v)),
            TFunction::TN(n) => {
                if *n == 0 {
                    return Err(Error::Invalid("N must be nonzero".into()));
                }
                Ok(t_n_uncolored(*n, v))
            }
            TFunction::Free => Ok(t_free(v)),
            _ => self.eval(&ColoredPairPartition::constant(v.clone(), 0, 1)),
        }
    }
}
