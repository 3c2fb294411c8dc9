use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::chain::StabChain;
use super::permutation::Permutation;
use crate::constructions::WreathInfo;
use crate::error::{GwError, Result};

/// A permutation group given by generators, certified by a complete
/// stabilizer chain. Immutable once built.
#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: Arc<StabChain>,
    order: BigUint,
    pub(crate) wreath: Option<Arc<WreathInfo>>,
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree)
            .field("order", &self.order.to_string())
            .field("generators", &self.generators)
            .finish()
    }
}

impl PermGroup {
    /// Builds the group generated by `gens` on `degree` points.
    pub fn new(degree: usize, gens: Vec<Permutation>) -> Result<PermGroup> {
        if degree == 0 {
            return Err(GwError::InvalidArgument("degree must be positive".into()));
        }
        for g in &gens {
            if g.degree() != degree {
                return Err(GwError::DegreeMismatch {
                    expected: degree,
                    actual: g.degree(),
                });
            }
        }
        let chain = StabChain::from_generators(degree, &gens);
        Ok(PermGroup::from_chain(degree, gens, chain))
    }

    /// Like [`PermGroup::new`] from raw image sequences, rejecting non-bijections.
    pub fn from_image_sequences(degree: usize, gens: Vec<Vec<u32>>) -> Result<PermGroup> {
        let gens = gens
            .into_iter()
            .map(Permutation::from_images)
            .collect::<Result<Vec<_>>>()?;
        PermGroup::new(degree, gens)
    }

    /// For groups whose order is known exactly by construction.
    pub(crate) fn with_known_order(
        degree: usize,
        gens: Vec<Permutation>,
        order: &BigUint,
    ) -> PermGroup {
        let chain = StabChain::with_known_order(degree, &gens, order);
        PermGroup::from_chain(degree, gens, chain)
    }

    pub(crate) fn from_chain(degree: usize, gens: Vec<Permutation>, chain: StabChain) -> PermGroup {
        let order = chain.order();
        PermGroup {
            degree,
            generators: gens,
            chain: Arc::new(chain),
            order,
            wreath: None,
        }
    }

    pub fn trivial(degree: usize) -> PermGroup {
        PermGroup::from_chain(degree, Vec::new(), StabChain::new(degree))
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn chain(&self) -> &StabChain {
        &self.chain
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    pub fn order_u64(&self) -> Option<u64> {
        self.order.to_u64()
    }

    pub fn is_trivial(&self) -> bool {
        self.order.is_one()
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    pub fn wreath_info(&self) -> Option<&WreathInfo> {
        self.wreath.as_deref()
    }

    pub(crate) fn with_wreath(mut self, info: WreathInfo) -> PermGroup {
        self.wreath = Some(Arc::new(info));
        self
    }

    fn check_degree(&self, g: &Permutation) -> Result<()> {
        if g.degree() != self.degree {
            return Err(GwError::DegreeMismatch {
                expected: self.degree,
                actual: g.degree(),
            });
        }
        Ok(())
    }

    pub fn contains(&self, g: &Permutation) -> Result<bool> {
        self.check_degree(g)?;
        Ok(self.chain.contains(g))
    }

    /// True when every generator of `h` lies in `self`.
    pub fn is_subgroup(&self, h: &PermGroup) -> Result<bool> {
        if h.degree != self.degree {
            return Err(GwError::DegreeMismatch {
                expected: self.degree,
                actual: h.degree,
            });
        }
        Ok(h.generators.iter().all(|g| self.chain.contains(g)))
    }

    fn require_subgroup(&self, h: &PermGroup) -> Result<()> {
        if !self.is_subgroup(h)? {
            let bad = h
                .generators
                .iter()
                .find(|g| !self.chain.contains(g))
                .map(|g| g.to_string())
                .unwrap_or_default();
            return Err(GwError::NotASubgroup(format!(
                "generator {bad} is not a member"
            )));
        }
        Ok(())
    }

    /// Same underlying set of permutations.
    pub fn same_group(&self, other: &PermGroup) -> bool {
        self.degree == other.degree
            && self.order == other.order
            && other.generators.iter().all(|g| self.chain.contains(g))
    }

    /// Smallest normal subgroup containing `seeds`.
    pub fn normal_closure(&self, seeds: &[Permutation]) -> Result<PermGroup> {
        for s in seeds {
            self.check_degree(s)?;
            if !self.chain.contains(s) {
                return Err(GwError::NotAMember(format!("seed {s}")));
            }
        }
        Ok(self.normal_closure_unchecked(seeds.iter()))
    }

    pub(crate) fn normal_closure_unchecked<'a>(
        &self,
        seeds: impl IntoIterator<Item = &'a Permutation>,
    ) -> PermGroup {
        let mut chain = StabChain::new(self.degree);
        let mut gens: Vec<Permutation> = Vec::new();
        for s in seeds {
            if chain.extend(s) {
                gens.push(s.clone());
            }
        }
        let conj: Vec<(Permutation, Permutation)> = self
            .generators
            .iter()
            .map(|g| (g.inverse(), g.clone()))
            .collect();
        let mut k = 0;
        while k < gens.len() {
            for (g_inv, g) in &conj {
                let c = g_inv.compose(&gens[k]).compose(g);
                if chain.extend(&c) {
                    gens.push(c);
                }
            }
            k += 1;
        }
        PermGroup::from_chain(self.degree, gens, chain)
    }

    /// Commutators of all generator pairs.
    pub fn generator_commutators(&self) -> Vec<Permutation> {
        let mut out = Vec::new();
        for (i, a) in self.generators.iter().enumerate() {
            for b in &self.generators[i + 1..] {
                let c = Permutation::commutator(a, b);
                if !c.is_identity() {
                    out.push(c);
                }
            }
        }
        out
    }

    /// G′, the normal closure of the generator commutators.
    pub fn derived_subgroup(&self) -> PermGroup {
        let comms = self.generator_commutators();
        self.normal_closure_unchecked(comms.iter())
    }

    pub fn is_perfect(&self) -> bool {
        self.derived_subgroup().order == self.order
    }

    pub fn is_abelian(&self) -> bool {
        self.generator_commutators().is_empty()
    }

    /// `(G:H)`, exact.
    pub fn index_of(&self, h: &PermGroup) -> Result<BigUint> {
        self.require_subgroup(h)?;
        let (q, r) = self.order.div_rem(&h.order);
        assert!(r.is_zero(), "Lagrange violated: |H| does not divide |G|");
        Ok(q)
    }

    pub fn is_normal(&self, h: &PermGroup) -> Result<bool> {
        self.require_subgroup(h)?;
        for g in &self.generators {
            let g_inv = g.inverse();
            for x in &h.generators {
                if !h.chain.contains(&g_inv.compose(x).compose(g)) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// All elements; refused above `bound`.
    pub fn elements(&self, bound: u64) -> Result<Vec<Permutation>> {
        match self.order.to_u64() {
            Some(n) if n <= bound => Ok(self.chain.elements()),
            _ => Err(GwError::GuardExceeded {
                guard: "oracle-bound",
                required: self.order.to_string(),
                limit: bound.to_string(),
            }),
        }
    }

    /// Subgroup of `self`'s degree generated by `gens` (not checked for membership).
    pub fn subgroup(&self, gens: Vec<Permutation>) -> Result<PermGroup> {
        let h = PermGroup::new(self.degree, gens)?;
        self.require_subgroup(&h)?;
        Ok(h)
    }

    /// Cycle-notation description of the generators.
    pub fn describe(&self) -> String {
        let gens: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        format!("deg {} <{}>", self.degree, gens.join(", "))
    }
}

/// Element indexing for small groups, used by brute-force oracles and the
/// full subgroup lattice.
pub struct ElementTable {
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
}

impl ElementTable {
    pub fn new(group: &PermGroup, bound: u64) -> Result<ElementTable> {
        let mut elements = group.elements(bound)?;
        elements.sort();
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        Ok(ElementTable { elements, index })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    pub fn index_of(&self, g: &Permutation) -> usize {
        self.index[g]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.index[&self.elements[a].compose(&self.elements[b])]
    }

    pub fn identity(&self) -> usize {
        // the identity is the lexicographically smallest image sequence
        0
    }

    /// Subgroup generated by the given elements, as a membership mask.
    pub fn closure(&self, gens: &[usize]) -> Vec<bool> {
        let mut mask = vec![false; self.len()];
        mask[self.identity()] = true;
        let mut queue = vec![self.identity()];
        let mut k = 0;
        while k < queue.len() {
            let x = &self.elements[queue[k]];
            for &g in gens {
                let y = self.index[&x.compose(&self.elements[g])];
                if !mask[y] {
                    mask[y] = true;
                    queue.push(y);
                }
            }
            k += 1;
        }
        mask
    }

    /// Order of `x` modulo the normal subgroup given by `mask`.
    pub fn order_mod(&self, x: usize, mask: &[bool]) -> usize {
        let mut y = x;
        let mut k = 1;
        while !mask[y] {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }
}
