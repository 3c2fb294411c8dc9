//! `I_G(n)` and `I_G(n, m)`.
//!
//! The production path counts surjections `G/G′ → C_n` from the abelian
//! invariants: `|Hom(A, C_d)| = Π gcd(d_j, d)`, Möbius inversion over the
//! divisors of `n` gives `|Surj(A, C_n)|`, and each normal subgroup with
//! cyclic quotient of order `n` is the kernel of exactly `φ(n)` surjections.

mod oracle;
mod subgroups;

pub use oracle::{MaskedSubgroup, NormalSubgroupOracle};
pub use subgroups::{subgroup_lattice, subgroups_up_to_index};

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::abelian::{abelian_invariants, AbelianInvariants};
use crate::config::Guards;
use crate::constructions::{eval_expr, GroupExpr};
use crate::error::{GwError, Result};
use crate::perm::PermGroup;
use crate::primes::{divisors, euler_phi, mobius};
use crate::serde_big::big_str;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CountMode {
    Formula,
    BruteForce,
    ExhaustiveSubgroups,
    WitnessLowerBound,
}

/// The subgroup that attains (or bounds) a uniform count.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubgroupWitness {
    pub description: String,
    #[serde(serialize_with = "big_str")]
    pub order: BigUint,
    #[serde(serialize_with = "big_str")]
    pub index: BigUint,
    #[serde(serialize_with = "big_str")]
    pub count: BigUint,
}

impl SubgroupWitness {
    fn new(g: &PermGroup, h: &PermGroup, description: String, count: BigUint) -> Result<Self> {
        Ok(SubgroupWitness {
            description,
            order: h.order().clone(),
            index: g.index_of(h)?,
            count,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountReport {
    #[serde(serialize_with = "crate::serde_big::display")]
    pub n: u64,
    #[serde(serialize_with = "crate::serde_big::opt_display")]
    pub m: Option<u64>,
    #[serde(serialize_with = "big_str")]
    pub value: BigUint,
    pub mode: CountMode,
    pub witness: Option<SubgroupWitness>,
}

/// `I(n)` for a group with the given abelianization invariants.
pub fn cyclic_quotient_formula(inv: &AbelianInvariants, n: u64) -> BigUint {
    assert!(n > 0);
    let mut surj = BigInt::zero();
    for d in divisors(n) {
        let mu = mobius(n / d);
        if mu == 0 {
            continue;
        }
        let homs = BigInt::from_biguint(Sign::Plus, inv.hom_count(d));
        if mu > 0 {
            surj += homs;
        } else {
            surj -= homs;
        }
    }
    assert!(!surj.is_negative());
    let surj = surj.to_biguint().expect("non-negative");
    let phi = BigUint::from(euler_phi(n));
    assert!(
        (&surj % &phi).is_zero(),
        "surjection count divisible by φ(n)"
    );
    surj / phi
}

/// Exact `I_G(n)` via the abelianization.
pub fn count_cyclic_quotients(g: &PermGroup, n: u64) -> Result<CountReport> {
    if n == 0 {
        return Err(GwError::InvalidArgument("n must be positive".into()));
    }
    let value = if n == 1 {
        BigUint::one()
    } else {
        cyclic_quotient_formula(&abelian_invariants(g), n)
    };
    Ok(CountReport {
        n,
        m: None,
        value,
        mode: CountMode::Formula,
        witness: None,
    })
}

/// `I_G(n)` by enumerating normal subgroups. Refused above the oracle bound.
pub fn brute_force_cyclic_quotients(g: &PermGroup, n: u64, guards: &Guards) -> Result<CountReport> {
    if n == 0 {
        return Err(GwError::InvalidArgument("n must be positive".into()));
    }
    let oracle = NormalSubgroupOracle::new(g, guards.oracle_order)?;
    Ok(CountReport {
        n,
        m: None,
        value: oracle.count_cyclic(n),
        mode: CountMode::BruteForce,
        witness: None,
    })
}

/// `I_G(n, m)`. Without a witness every subgroup of index at most `m` is
/// enumerated and the exact maximum returned; with a witness the count of
/// that one subgroup is returned as a certified lower bound.
pub fn uniform_count(
    g: &PermGroup,
    n: u64,
    m: u64,
    witness: Option<&GroupExpr>,
    guards: &Guards,
) -> Result<CountReport> {
    if n == 0 || m == 0 {
        return Err(GwError::InvalidArgument("n and m must be positive".into()));
    }
    match witness {
        Some(expr) => {
            let h = eval_expr(expr, guards)?;
            if h.degree() != g.degree() || !g.is_subgroup(&h)? {
                return Err(GwError::NotASubgroup(format!("witness {expr}")));
            }
            let index = g.index_of(&h)?;
            if index > BigUint::from(m) {
                return Err(GwError::InvalidArgument(format!(
                    "witness index {index} exceeds m = {m}"
                )));
            }
            let value = count_cyclic_quotients(&h, n)?.value;
            Ok(CountReport {
                n,
                m: Some(m),
                witness: Some(SubgroupWitness::new(
                    g,
                    &h,
                    expr.to_string(),
                    value.clone(),
                )?),
                value,
                mode: CountMode::WitnessLowerBound,
            })
        }
        None => {
            let m_usize = m.to_usize().unwrap_or(usize::MAX);
            let subs = subgroups_up_to_index(g, m_usize, guards)?;
            let mut best: Option<(BigUint, &PermGroup)> = None;
            for h in &subs {
                let c = count_cyclic_quotients(h, n)?.value;
                if best.as_ref().is_none_or(|(b, _)| &c > b) {
                    best = Some((c, h));
                }
            }
            let (value, h) = best.expect("G itself has index 1");
            Ok(CountReport {
                n,
                m: Some(m),
                witness: Some(SubgroupWitness::new(g, h, h.describe(), value.clone())?),
                value,
                mode: CountMode::ExhaustiveSubgroups,
            })
        }
    }
}
