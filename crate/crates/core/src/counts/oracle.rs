//! Brute-force normal-subgroup enumeration. Works on element tables only and
//! shares nothing with the abelianization formula it is used to check.

use num_bigint::BigUint;

use crate::error::Result;
use crate::perm::{ElementTable, PermGroup};

/// A subgroup of a small group as a membership mask plus a generating set
/// (element indices).
#[derive(Debug, Clone)]
pub struct MaskedSubgroup {
    pub mask: Vec<bool>,
    pub gens: Vec<usize>,
    pub order: usize,
}

impl MaskedSubgroup {
    pub(crate) fn key(&self) -> Vec<u64> {
        let mut words = vec![0u64; self.mask.len().div_ceil(64)];
        for (i, &m) in self.mask.iter().enumerate() {
            if m {
                words[i / 64] |= 1 << (i % 64);
            }
        }
        words
    }
}

/// Every normal subgroup of a small group.
pub struct NormalSubgroupOracle {
    table: ElementTable,
    normals: Vec<MaskedSubgroup>,
}

impl NormalSubgroupOracle {
    pub fn new(group: &PermGroup, bound: u64) -> Result<NormalSubgroupOracle> {
        let table = ElementTable::new(group, bound)?;
        let n = table.len();
        let gen_idx: Vec<(usize, usize)> = group
            .generators()
            .iter()
            .map(|g| (table.index_of(&g.inverse()), table.index_of(g)))
            .collect();

        // conjugacy classes by orbit under conjugation by the generators
        let mut class_of = vec![usize::MAX; n];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for start in 0..n {
            if class_of[start] != usize::MAX {
                continue;
            }
            let id = classes.len();
            class_of[start] = id;
            let mut class = vec![start];
            let mut k = 0;
            while k < class.len() {
                let x = class[k];
                for &(gi, g) in &gen_idx {
                    let y = table.mul(table.mul(gi, x), g);
                    if class_of[y] == usize::MAX {
                        class_of[y] = id;
                        class.push(y);
                    }
                }
                k += 1;
            }
            classes.push(class);
        }

        // normal closure of each class, with a greedy generating set
        let mut class_closures: Vec<MaskedSubgroup> = Vec::new();
        for class in &classes {
            let mut gens = Vec::new();
            let mut mask = table.closure(&gens);
            for &c in class {
                if !mask[c] {
                    gens.push(c);
                    mask = table.closure(&gens);
                }
            }
            let order = mask.iter().filter(|&&b| b).count();
            class_closures.push(MaskedSubgroup { mask, gens, order });
        }

        // every normal subgroup is a join of class closures
        let trivial = table.closure(&[]);
        let mut normals = vec![MaskedSubgroup {
            mask: trivial,
            gens: vec![],
            order: 1,
        }];
        let mut seen = std::collections::HashSet::new();
        seen.insert(normals[0].key());
        let mut k = 0;
        while k < normals.len() {
            for c in &class_closures {
                let covered = c.gens.iter().all(|&x| normals[k].mask[x]);
                if covered {
                    continue;
                }
                let mut gens = normals[k].gens.clone();
                gens.extend(c.gens.iter().copied().filter(|&x| !normals[k].mask[x]));
                let mask = table.closure(&gens);
                let order = mask.iter().filter(|&&b| b).count();
                let cand = MaskedSubgroup { mask, gens, order };
                if seen.insert(cand.key()) {
                    normals.push(cand);
                }
            }
            k += 1;
        }
        normals.sort_by_key(|s| s.order);
        Ok(NormalSubgroupOracle { table, normals })
    }

    pub fn normal_subgroups(&self) -> &[MaskedSubgroup] {
        &self.normals
    }

    pub fn table(&self) -> &ElementTable {
        &self.table
    }

    /// Number of `N ⊴ G` with `G/N ≅ C_n`.
    pub fn count_cyclic(&self, n: u64) -> BigUint {
        let order = self.table.len() as u64;
        let count = self
            .normals
            .iter()
            .filter(|s| s.order as u64 * n == order)
            .filter(|s| (0..self.table.len()).any(|x| self.table.order_mod(x, &s.mask) as u64 == n))
            .count();
        BigUint::from(count)
    }
}
