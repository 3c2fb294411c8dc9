//! `M_p(G)`, `p`-ranks and the invariant factors of `G/G′`.
//!
//! Everything is read off normal closures inside the chain engine: for a
//! prime `p` the subgroup `N_i = G′·G^{p^i}` satisfies
//! `log_p |G/N_i| = Σ_j min(e_j, i)` over the `p`-parts `p^{e_j}` of the
//! invariant factors, so consecutive differences recover the exponents.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Pow, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{GwError, Result};
use crate::perm::{PermGroup, Permutation};
use crate::primes::{factorize_smooth, is_prime};

/// Invariant factors `d_1 | d_2 | … | d_r` of `G/G′`, each at least 2.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AbelianInvariants {
    factors: Vec<BigUint>,
}

impl AbelianInvariants {
    /// Checks the divisibility chain.
    pub fn new(factors: Vec<BigUint>) -> Result<AbelianInvariants> {
        if factors.iter().any(|d| d < &BigUint::from(2u32)) {
            return Err(GwError::InvalidArgument(
                "invariant factors must be at least 2".into(),
            ));
        }
        if factors.windows(2).any(|w| !(&w[1] % &w[0]).is_zero()) {
            return Err(GwError::InvalidArgument(
                "invariant factors must form a divisibility chain".into(),
            ));
        }
        Ok(AbelianInvariants { factors })
    }

    pub fn from_u64(factors: &[u64]) -> Result<AbelianInvariants> {
        AbelianInvariants::new(factors.iter().map(|&d| BigUint::from(d)).collect())
    }

    pub fn factors(&self) -> &[BigUint] {
        &self.factors
    }

    /// `|G/G′|`.
    pub fn order(&self) -> BigUint {
        self.factors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    /// Number of factors divisible by `p`, i.e. `r_p`.
    pub fn rank_at(&self, p: u64) -> usize {
        let p = BigUint::from(p);
        self.factors.iter().filter(|d| (*d % &p).is_zero()).count()
    }

    /// `|Hom(G, C_n)| = Π gcd(d_j, n)`.
    pub fn hom_count(&self, n: u64) -> BigUint {
        let n = BigUint::from(n);
        self.factors.iter().map(|d| d.gcd(&n)).product()
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|d| d.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

impl Serialize for AbelianInvariants {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let parts: Vec<String> = self.factors.iter().map(|d| d.to_string()).collect();
        parts.serialize(s)
    }
}

fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(GwError::NotPrime { value: p })
    }
}

fn powers_closure(g: &PermGroup, derived: &PermGroup, q: &BigUint) -> PermGroup {
    let q = q.to_u64().expect("exponent fits u64");
    let seeds: Vec<Permutation> = derived
        .generators()
        .iter()
        .cloned()
        .chain(g.generators().iter().map(|x| x.pow(q)))
        .filter(|x| !x.is_identity())
        .collect();
    g.normal_closure_unchecked(seeds.iter())
}

/// `M_p(G)`: the normal closure of the generator commutators and `p`-th powers.
pub fn mp_subgroup(g: &PermGroup, p: u64) -> Result<PermGroup> {
    require_prime(p)?;
    let mut seeds = g.generator_commutators();
    seeds.extend(
        g.generators()
            .iter()
            .map(|x| x.pow(p))
            .filter(|x| !x.is_identity()),
    );
    Ok(g.normal_closure_unchecked(seeds.iter()))
}

/// Exact `log_p n`; panics unless `n` is a power of `p`.
fn exact_log(n: &BigUint, p: u64) -> usize {
    let bp = BigUint::from(p);
    let mut n = n.clone();
    let mut k = 0;
    while !n.is_one() {
        let (q, r) = n.div_rem(&bp);
        assert!(r.is_zero(), "index is not a power of {p}");
        n = q;
        k += 1;
    }
    k
}

/// `r_p(G) = log_p (G : M_p(G))`.
pub fn p_rank(g: &PermGroup, p: u64) -> Result<usize> {
    let m = mp_subgroup(g, p)?;
    Ok(exact_log(&(g.order() / m.order()), p))
}

/// Invariant factors of `G/G′`, ascending.
pub fn abelian_invariants(g: &PermGroup) -> AbelianInvariants {
    let derived = g.derived_subgroup();
    abelian_invariants_with_derived(g, &derived)
}

pub(crate) fn abelian_invariants_with_derived(
    g: &PermGroup,
    derived: &PermGroup,
) -> AbelianInvariants {
    let quotient = g.order() / derived.order();
    if quotient.is_one() {
        return AbelianInvariants::default();
    }
    // descending p-exponents per prime
    let mut per_prime: Vec<(u64, Vec<u32>)> = Vec::new();
    for (p, total) in factorize_smooth(&quotient, g.degree() as u64) {
        let mut ranks = vec![0u32];
        let mut i = 1u32;
        while *ranks.last().unwrap() < total {
            let q = Pow::pow(BigUint::from(p), i);
            let n_i = powers_closure(g, derived, &q);
            ranks.push(exact_log(&(g.order() / n_i.order()), p) as u32);
            i += 1;
        }
        // at_least[i] = number of factors with exponent ≥ i
        let at_least: Vec<u32> = ranks.windows(2).map(|w| w[1] - w[0]).collect();
        let mut exps = Vec::new();
        for (idx, &count) in at_least.iter().enumerate() {
            let next = at_least.get(idx + 1).copied().unwrap_or(0);
            for _ in 0..(count - next) {
                exps.push(idx as u32 + 1);
            }
        }
        exps.sort_unstable_by(|a, b| b.cmp(a));
        per_prime.push((p, exps));
    }
    let r = per_prime.iter().map(|(_, e)| e.len()).max().unwrap_or(0);
    let mut factors: Vec<BigUint> = (0..r)
        .map(|k| {
            per_prime
                .iter()
                .fold(BigUint::one(), |acc, (p, exps)| match exps.get(k) {
                    Some(&e) => acc * Pow::pow(BigUint::from(*p), e),
                    None => acc,
                })
        })
        .collect();
    factors.reverse();
    let inv = AbelianInvariants::new(factors).expect("merged factors form a chain");
    debug_assert_eq!(inv.order(), quotient);
    inv
}
