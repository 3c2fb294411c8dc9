//! Exact computations on finite permutation groups and truncated Laurent
//! series: cyclic-quotient counts `I_G(n)` and `I_G(n, m)`, `p`-ranks,
//! wreath-product witnesses, and power classes of `ℚ((t))`.
//!
//! Groups are over a fixed point type (`u32` images, `BigUint` orders).
//! Series are generic over the coefficient field; [`QSeries`] is the
//! rational instance every public operation uses.

pub mod abelian;
pub mod config;
pub mod constructions;
pub mod counts;
pub mod error;
pub mod henselian;
pub mod lemmas;
pub mod perm;
pub mod primes;
mod serde_big;

pub use abelian::{abelian_invariants, mp_subgroup, p_rank, AbelianInvariants};
pub use config::Guards;
pub use constructions::{eval_expr, parse_group_expr, GroupExpr};
pub use counts::{
    brute_force_cyclic_quotients, count_cyclic_quotients, subgroups_up_to_index, uniform_count,
    CountMode, CountReport,
};
pub use error::{GwError, Result};
pub use henselian::{
    class_representative, hensel_nth_root, is_nth_power_rational, is_nth_power_series,
    parse_series, verify_power_class_decomposition, LaurentSeries, PowerClassRep,
};
pub use perm::{PermGroup, Permutation, StabChain};

/// Exact rationals.
pub type Rational = num_rational::BigRational;
/// Truncated Laurent series over ℚ.
pub type QSeries = LaurentSeries<Rational>;
