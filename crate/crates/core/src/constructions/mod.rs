//! The witness groups: standard families, regular representations, direct
//! powers and wreath products with their base subgroups.
//!
//! Wreath domain layout: `A ≀ S` acts on `deg(A) · |S|` points split into
//! `|S|` blocks of `deg(A)` points. Block `x` belongs to the element `τ ∈ S`
//! with `0^τ = x`; since `S` must be regular this is a bijection, and in a
//! group produced by [`regular_representation`] it is the element
//! enumeration order (block 0 is the identity). A base element `f` acts on
//! block `x` by `f(τ)`. The top element `σ` moves block `x` to block `x^σ`,
//! i.e. block `τ` to block `τσ`, so that `σ · f · σ⁻¹` is the function
//! `τ ↦ f(τσ)`.

mod expr;

pub use expr::{eval_expr, parse_group_expr, GroupExpr};

use num_bigint::BigUint;
use num_traits::{One, Pow, ToPrimitive};

use crate::config::Guards;
use crate::error::{GwError, Result};
use crate::perm::{ElementTable, PermGroup, Permutation};
use crate::primes::is_prime;

/// Block structure carried by groups built with [`wreath`].
#[derive(Clone, Debug)]
pub struct WreathInfo {
    pub base_group: PermGroup,
    pub top_group: PermGroup,
}

impl WreathInfo {
    pub fn block_size(&self) -> usize {
        self.base_group.degree()
    }

    pub fn block_count(&self) -> usize {
        self.top_group.degree()
    }

    pub fn degree(&self) -> usize {
        self.block_size() * self.block_count()
    }

    /// The base element acting by `f[x]` on block `x`.
    pub fn base_element(&self, f: &[Permutation]) -> Permutation {
        assert_eq!(f.len(), self.block_count());
        let a = self.block_size();
        let mut images = Vec::with_capacity(self.degree());
        for (x, fx) in f.iter().enumerate() {
            images.extend(fx.images().iter().map(|&i| (x * a) as u32 + i));
        }
        Permutation::from_images_unchecked(images)
    }

    /// `a` on block `x`, identity elsewhere.
    pub fn single_coordinate(&self, x: usize, a: &Permutation) -> Permutation {
        a.shifted(x * self.block_size(), self.degree())
    }

    /// The top element for `sigma ∈ S`, moving block `x` to block `x^sigma`.
    pub fn top_element(&self, sigma: &Permutation) -> Permutation {
        let a = self.block_size();
        let mut images = vec![0u32; self.degree()];
        for x in 0..self.block_count() {
            let y = sigma.image(x as u32) as usize;
            for i in 0..a {
                images[x * a + i] = (y * a + i) as u32;
            }
        }
        Permutation::from_images_unchecked(images)
    }
}

fn check_degree(guards: &Guards, degree: usize) -> Result<()> {
    if degree > guards.degree {
        return Err(GwError::GuardExceeded {
            guard: "guard-degree",
            required: degree.to_string(),
            limit: guards.degree.to_string(),
        });
    }
    Ok(())
}

fn check_order(guards: &Guards, order: &BigUint) -> Result<()> {
    if order > &guards.order {
        return Err(GwError::GuardExceeded {
            guard: "guard-order",
            required: order.to_string(),
            limit: guards.order.to_string(),
        });
    }
    Ok(())
}

fn factorial(n: u64) -> BigUint {
    (2..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

fn degree_of(n: u64) -> Result<usize> {
    if n == 0 {
        return Err(GwError::InvalidArgument("degree must be positive".into()));
    }
    usize::try_from(n).map_err(|_| GwError::InvalidArgument(format!("{n} too large")))
}

fn cycle(degree: usize, points: impl IntoIterator<Item = u32>) -> Permutation {
    Permutation::from_cycles(degree, &[points.into_iter().collect()]).expect("valid cycle")
}

/// `C_n` acting regularly on `n` points.
pub fn cyclic(n: u64, guards: &Guards) -> Result<PermGroup> {
    let d = degree_of(n)?;
    check_degree(guards, d)?;
    let gens = if d > 1 {
        vec![cycle(d, 0..d as u32)]
    } else {
        vec![]
    };
    PermGroup::new(d, gens)
}

/// `C_p^k` as `k` disjoint `p`-cycles on `p·k` points.
pub fn elementary_abelian(p: u64, k: u64, guards: &Guards) -> Result<PermGroup> {
    if !is_prime(p) {
        return Err(GwError::NotPrime { value: p });
    }
    let d = degree_of(
        p.checked_mul(k)
            .ok_or_else(|| GwError::InvalidArgument("E(p,k) degree overflows".into()))?,
    )?;
    check_degree(guards, d)?;
    let p = p as u32;
    let gens = (0..k as u32)
        .map(|j| cycle(d, j * p..(j + 1) * p))
        .collect();
    PermGroup::new(d, gens)
}

/// `S_n` on `n` points.
pub fn symmetric(n: u64, guards: &Guards) -> Result<PermGroup> {
    let d = degree_of(n)?;
    check_degree(guards, d)?;
    check_order(guards, &factorial(n))?;
    let gens = match d {
        1 => vec![],
        2 => vec![cycle(2, [0, 1])],
        _ => vec![cycle(d, 0..d as u32), cycle(d, [0, 1])],
    };
    PermGroup::new(d, gens)
}

/// `A_n` on `n` points.
pub fn alternating(n: u64, guards: &Guards) -> Result<PermGroup> {
    let d = degree_of(n)?;
    check_degree(guards, d)?;
    if n >= 2 {
        check_order(guards, &(factorial(n) / 2u32))?;
    }
    let gens = match d {
        1 | 2 => vec![],
        3 => vec![cycle(3, [0, 1, 2])],
        _ if d % 2 == 1 => vec![cycle(d, 0..d as u32), cycle(d, [0, 1, 2])],
        _ => vec![cycle(d, 1..d as u32), cycle(d, [0, 1, 2])],
    };
    PermGroup::new(d, gens)
}

/// Orbit of `point` under the generators, in discovery order.
pub fn orbit(group: &PermGroup, point: u32) -> Vec<u32> {
    let mut seen = vec![false; group.degree()];
    seen[point as usize] = true;
    let mut orbit = vec![point];
    let mut k = 0;
    while k < orbit.len() {
        for g in group.generators() {
            let y = g.image(orbit[k]);
            if !seen[y as usize] {
                seen[y as usize] = true;
                orbit.push(y);
            }
        }
        k += 1;
    }
    orbit
}

/// Transitive with trivial point stabilizers.
pub fn is_regular(group: &PermGroup) -> bool {
    BigUint::from(group.degree()) == *group.order() && orbit(group, 0).len() == group.degree()
}

fn require_regular(group: &PermGroup, role: &str) -> Result<()> {
    if is_regular(group) {
        return Ok(());
    }
    let orb = orbit(group, 0);
    if orb.len() != group.degree() {
        let missing = (0..group.degree() as u32)
            .find(|x| !orb.contains(x))
            .expect("intransitive");
        return Err(GwError::NotRegular(format!(
            "{role}: point {missing} is not in the orbit of 0"
        )));
    }
    // transitive but larger than its degree: the chain's second level stabilizes point 0
    let chain = group.chain();
    let witness = (0..chain.len())
        .skip(1)
        .flat_map(|l| chain.level_generators(l))
        .find(|g| g.image(0) == 0 && !g.is_identity())
        .map(|g| g.to_string())
        .unwrap_or_else(|| "?".into());
    Err(GwError::NotRegular(format!(
        "{role}: the stabilizer of point 0 contains {witness}"
    )))
}

/// The right regular representation on `|G|` points. Points are the
/// elements of `G` sorted by image sequence, so point 0 is the identity and
/// `x ↦ x·g` is the action of `g`.
pub fn regular_representation(group: &PermGroup, guards: &Guards) -> Result<PermGroup> {
    let n = group
        .order()
        .to_u64()
        .filter(|&n| n as usize <= guards.degree)
        .ok_or_else(|| GwError::GuardExceeded {
            guard: "guard-degree",
            required: group.order().to_string(),
            limit: guards.degree.to_string(),
        })?;
    let table = ElementTable::new(group, n)?;
    let gens = group
        .generators()
        .iter()
        .filter(|g| !g.is_identity())
        .map(|g| {
            let images = (0..table.len())
                .map(|j| table.index_of(&table.element(j).compose(g)) as u32)
                .collect();
            Permutation::from_images_unchecked(images)
        })
        .collect();
    Ok(PermGroup::with_known_order(n as usize, gens, group.order()))
}

/// Direct product acting on disjoint consecutive copies of the factors' domains.
pub fn direct_product(factors: &[PermGroup], guards: &Guards) -> Result<PermGroup> {
    if factors.is_empty() {
        return Ok(PermGroup::trivial(1));
    }
    let degree: usize = factors.iter().map(|f| f.degree()).sum();
    check_degree(guards, degree)?;
    let order = factors
        .iter()
        .fold(BigUint::one(), |acc, f| acc * f.order());
    check_order(guards, &order)?;
    let mut gens = Vec::new();
    let mut offset = 0;
    for f in factors {
        gens.extend(f.generators().iter().map(|g| g.shifted(offset, degree)));
        offset += f.degree();
    }
    PermGroup::new(degree, gens)
}

/// `G^k` on `k` disjoint copies of the domain.
pub fn direct_power(group: &PermGroup, k: u64, guards: &Guards) -> Result<PermGroup> {
    if k == 0 {
        return Err(GwError::InvalidArgument("power must be positive".into()));
    }
    (group.degree() as u64)
        .checked_mul(k)
        .filter(|&d| d as usize <= guards.degree)
        .ok_or_else(|| GwError::GuardExceeded {
            guard: "guard-degree",
            required: format!("{} * {k}", group.degree()),
            limit: guards.degree.to_string(),
        })?;
    let copies = vec![group.clone(); k as usize];
    direct_product(&copies, guards)
}

/// `A ≀ S` for regular `A` and `S`; see the module docs for the layout.
pub fn wreath(a: &PermGroup, s: &PermGroup, guards: &Guards) -> Result<PermGroup> {
    require_regular(a, "base group")?;
    require_regular(s, "top group")?;
    let blocks = s.degree();
    let degree = a.degree() * blocks;
    check_degree(guards, degree)?;
    let order = Pow::pow(a.order(), blocks) * s.order();
    check_order(guards, &order)?;
    let info = WreathInfo {
        base_group: a.clone(),
        top_group: s.clone(),
    };
    let mut gens: Vec<Permutation> = a
        .generators()
        .iter()
        .map(|g| info.single_coordinate(0, g))
        .collect();
    gens.extend(s.generators().iter().map(|g| info.top_element(g)));
    Ok(PermGroup::new(degree, gens)?.with_wreath(info))
}

/// The base `B = A^S` and its subgroup `B_0` of functions whose coordinate
/// product is the identity. `B_0` is only a subgroup when `A` is abelian,
/// so a non-abelian `A` is rejected.
pub fn wreath_base_parts(w: &PermGroup) -> Result<(PermGroup, PermGroup)> {
    let info = w.wreath_info().ok_or_else(|| {
        GwError::NotAWreath("group was not produced by the wreath construction".into())
    })?;
    if !info.base_group.is_abelian() {
        return Err(GwError::InvalidArgument(
            "B_0 requires an abelian base group".into(),
        ));
    }
    let a_gens: Vec<&Permutation> = info
        .base_group
        .generators()
        .iter()
        .filter(|g| !g.is_identity())
        .collect();
    let mut base_gens = Vec::new();
    let mut b0_gens = Vec::new();
    for x in 0..info.block_count() {
        for &g in &a_gens {
            base_gens.push(info.single_coordinate(x, g));
            if x > 0 {
                let mut f = vec![Permutation::identity(info.block_size()); info.block_count()];
                f[0] = g.clone();
                f[x] = g.inverse();
                b0_gens.push(info.base_element(&f));
            }
        }
    }
    Ok((
        PermGroup::new(w.degree(), base_gens)?,
        PermGroup::new(w.degree(), b0_gens)?,
    ))
}
