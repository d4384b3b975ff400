//! Permutations and permutation-group algorithms.

mod algorithms;
mod bsgs;
mod permutation;
mod random;

pub use algorithms::*;
pub use bsgs::{orbit_of, BsgsConfig, GroupSummary, OrderCertificate, PermutationGroup};
pub use permutation::Permutation;
pub use random::ProductReplacement;
