//! Permutations, stabilizer chains and the groups they certify.

mod chain;
mod group;
mod permutation;

pub use chain::StabChain;
pub use group::{ElementTable, PermGroup};
pub use permutation::{parse_cycles, Permutation};
