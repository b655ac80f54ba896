//! Exact combinatorics of colored pair partitions, their cycle graphs, and the
//! moment functionals built from spherical representations of `S_inf x S_inf`.

pub mod broken;
pub mod error;
pub mod fock;
pub mod graph;
pub mod identities;
pub mod partition;
pub mod perm;
pub mod qproduct;
pub mod rational;
pub mod tfunc;
pub mod thoma;
pub mod word;

pub use error::{Error, Result};
pub use partition::{ColoredPairPartition, PairPartition};
pub use rational::Q;
