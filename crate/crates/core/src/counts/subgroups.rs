//! Subgroups of bounded index.
//!
//! Small groups get the whole lattice from element tables (cyclic
//! subgroups closed under joins). Otherwise the low-index search walks
//! coset tables of transitive actions on at most `m` points: entries are
//! filled in scan order and new cosets are numbered on first appearance,
//! so each subgroup has exactly one table. Short relators that hold in the
//! group prune partial tables, and every complete table is certified
//! exactly: the pairs `(g_j, π_j)` must generate a group of order `|G|`
//! (the graph of a homomorphism), and the stabilizer of coset 0 is read off
//! with Schreier generators.

use std::collections::HashSet;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::oracle::MaskedSubgroup;
use crate::config::Guards;
use crate::error::{GwError, Result};
use crate::perm::{ElementTable, PermGroup, Permutation, StabChain};

/// All subgroups of index at most `m`, ordered by index and then canonically
/// (element masks for the full lattice, coset tables for low index).
pub fn subgroups_up_to_index(g: &PermGroup, m: usize, guards: &Guards) -> Result<Vec<PermGroup>> {
    if m == 0 {
        return Err(GwError::InvalidArgument(
            "index bound must be positive".into(),
        ));
    }
    if m <= guards.low_index {
        return Ok(low_index_subgroups(g, m));
    }
    match g.order().to_u64() {
        Some(n) if n <= guards.oracle_order => full_lattice(g, n, m),
        _ => Err(GwError::EnumerationGuard {
            order: g.order().to_string(),
            oracle_bound: guards.oracle_order,
            m,
            low_index_bound: guards.low_index,
        }),
    }
}

/// Every subgroup of a small group, as masks over its element table.
pub fn subgroup_lattice(table: &ElementTable) -> Vec<MaskedSubgroup> {
    let n = table.len();
    let mut seen = HashSet::new();
    let mut cyclic: Vec<MaskedSubgroup> = Vec::new();
    for x in 0..n {
        let mask = table.closure(&[x]);
        let order = mask.iter().filter(|&&b| b).count();
        let s = MaskedSubgroup {
            mask,
            gens: if x == table.identity() {
                vec![]
            } else {
                vec![x]
            },
            order,
        };
        if seen.insert(s.key()) {
            cyclic.push(s);
        }
    }
    let mut all = cyclic.clone();
    let mut k = 0;
    while k < all.len() {
        for c in &cyclic {
            if c.gens.iter().all(|&x| all[k].mask[x]) {
                continue;
            }
            let mut gens = all[k].gens.clone();
            gens.extend_from_slice(&c.gens);
            let mask = table.closure(&gens);
            let order = mask.iter().filter(|&&b| b).count();
            let s = MaskedSubgroup { mask, gens, order };
            if seen.insert(s.key()) {
                all.push(s);
            }
        }
        k += 1;
    }
    all
}

fn full_lattice(g: &PermGroup, order: u64, m: usize) -> Result<Vec<PermGroup>> {
    let table = ElementTable::new(g, order)?;
    let mut subs: Vec<MaskedSubgroup> = subgroup_lattice(&table)
        .into_iter()
        .filter(|s| table.len() / s.order <= m)
        .collect();
    subs.sort_by(|a, b| b.order.cmp(&a.order).then_with(|| b.mask.cmp(&a.mask)));
    subs.iter()
        .map(|s| {
            let gens = s.gens.iter().map(|&x| table.element(x).clone()).collect();
            PermGroup::new(g.degree(), gens)
        })
        .collect()
}

/// A generating set of at most two elements when one turns up quickly,
/// otherwise the original non-identity generators.
fn small_generating_set(g: &PermGroup) -> Vec<Permutation> {
    let gens: Vec<Permutation> = g
        .generators()
        .iter()
        .filter(|x| !x.is_identity())
        .cloned()
        .collect();
    if gens.len() <= 2 {
        return gens;
    }
    let chain = g.chain();
    let mut rng = ChaCha8Rng::seed_from_u64(0x6777);
    let random = |rng: &mut ChaCha8Rng| {
        let mut x = Permutation::identity(g.degree());
        for l in (0..chain.len()).rev() {
            let orbit = chain.orbit(l);
            let pt = orbit[rng.gen_range(0..orbit.len())];
            x = x.compose(&chain.coset_rep(l, pt));
        }
        x
    };
    for _ in 0..200 {
        let pair = [random(&mut rng), random(&mut rng)];
        if StabChain::from_generators(g.degree(), &pair).order() == *g.order() {
            return pair.to_vec();
        }
    }
    gens
}

struct CosetSearch<'a> {
    group: &'a PermGroup,
    gens: Vec<Permutation>,
    /// letters: 2j = generator j, 2j+1 = its inverse (unused for involutions)
    involution: Vec<bool>,
    relators: Vec<Vec<usize>>,
    max: usize,
    table: Vec<Vec<Option<u32>>>,
    trail: Vec<(usize, usize)>,
    found: Vec<(Vec<Vec<u32>>, PermGroup)>,
}

impl CosetSearch<'_> {
    fn letters(&self) -> usize {
        2 * self.gens.len()
    }

    fn inv(&self, letter: usize) -> usize {
        if self.involution[letter / 2] {
            letter
        } else {
            letter ^ 1
        }
    }

    fn active(&self, letter: usize) -> bool {
        !(letter % 2 == 1 && self.involution[letter / 2])
    }

    fn first_gap(&self) -> Option<(usize, usize)> {
        for (c, row) in self.table.iter().enumerate() {
            for (l, e) in row.iter().enumerate() {
                if e.is_none() && self.active(l) {
                    return Some((c, l));
                }
            }
        }
        None
    }

    fn set(&mut self, c: usize, l: usize, d: usize) {
        let li = self.inv(l);
        self.table[c][l] = Some(d as u32);
        self.table[d][li] = Some(c as u32);
        self.trail.push((c, l));
        self.trail.push((d, li));
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let (c, l) = self.trail.pop().unwrap();
            self.table[c][l] = None;
        }
    }

    /// Scans every relator from every coset, filling single gaps. False on
    /// a contradiction.
    fn deduce(&mut self) -> bool {
        let mut fwd = Vec::new();
        loop {
            let mut changed = false;
            for r in 0..self.relators.len() {
                let len = self.relators[r].len();
                for start in 0..self.table.len() {
                    fwd.clear();
                    fwd.push(start);
                    let mut c = start;
                    for &l in &self.relators[r] {
                        match self.table[c][l] {
                            Some(d) => {
                                c = d as usize;
                                fwd.push(c);
                            }
                            None => break,
                        }
                    }
                    let i = fwd.len() - 1;
                    if i == len {
                        if c != start {
                            return false;
                        }
                        continue;
                    }
                    // backward from the end: b·w[k..] = start
                    let mut b = start;
                    let mut k = len;
                    while k > i {
                        let l = self.inv(self.relators[r][k - 1]);
                        match self.table[b][l] {
                            Some(d) => {
                                b = d as usize;
                                k -= 1;
                            }
                            None => break,
                        }
                    }
                    if k == i {
                        if fwd[i] != b {
                            return false;
                        }
                    } else if k == i + 1 {
                        let (f, l) = (fwd[i], self.relators[r][i]);
                        if self.table[b][self.inv(l)].is_some() {
                            return false;
                        }
                        self.set(f, l, b);
                        changed = true;
                    }
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn search(&mut self) {
        let Some((c, l)) = self.first_gap() else {
            self.certify();
            return;
        };
        let li = self.inv(l);
        let n = self.table.len();
        for d in 0..n {
            if self.table[d][li].is_some() {
                continue;
            }
            let mark = self.trail.len();
            self.set(c, l, d);
            if self.deduce() {
                self.search();
            }
            self.undo(mark);
        }
        if n < self.max {
            self.table.push(vec![None; self.letters()]);
            let mark = self.trail.len();
            self.set(c, l, n);
            if self.deduce() {
                self.search();
            }
            self.undo(mark);
            self.table.pop();
        }
    }

    fn certify(&mut self) {
        let n = self.table.len();
        let deg = self.group.degree();
        let perms: Vec<Vec<u32>> = (0..self.gens.len())
            .map(|j| (0..n).map(|c| self.table[c][2 * j].unwrap()).collect())
            .collect();
        let diag: Vec<Permutation> = self
            .gens
            .iter()
            .zip(&perms)
            .map(|(g, pi)| {
                let mut images = g.images().to_vec();
                images.extend(pi.iter().map(|&x| x + deg as u32));
                Permutation::from_images(images).expect("coset table columns are bijections")
            })
            .collect();
        let chain = StabChain::from_generators(deg + n, &diag);
        if chain.order() != *self.group.order() {
            return;
        }
        // Schreier generators for the stabilizer of coset 0
        let root = deg as u32;
        let mut reps: Vec<Option<Permutation>> = vec![None; n];
        reps[0] = Some(Permutation::identity(deg + n));
        let mut queue = vec![0usize];
        let mut k = 0;
        while k < queue.len() {
            let c = queue[k];
            for d in &diag {
                let e = (d.image(root + c as u32) - root) as usize;
                if reps[e].is_none() {
                    reps[e] = Some(reps[c].as_ref().unwrap().compose(d));
                    queue.push(e);
                }
            }
            k += 1;
        }
        let mut hgens: Vec<Permutation> = Vec::new();
        let mut hchain = StabChain::new(deg);
        for c in 0..n {
            let u = reps[c].as_ref().unwrap();
            for d in &diag {
                let e = (d.image(root + c as u32) - root) as usize;
                let s = u.compose(d).compose(&reps[e].as_ref().unwrap().inverse());
                let proj = Permutation::from_images(s.images()[..deg].to_vec())
                    .expect("stabilizer elements preserve the first block");
                if hchain.extend(&proj) {
                    hgens.push(proj);
                }
            }
        }
        let h = PermGroup::from_chain(deg, hgens, hchain);
        let index = self.group.index_of(&h).expect("stabilizer lies in G");
        assert_eq!(
            index,
            BigUint::from(n),
            "stabilizer index equals coset count"
        );
        self.found.push((perms, h));
    }
}

fn relators(gens: &[Permutation], involution: &[bool]) -> Vec<Vec<usize>> {
    let word_order = |w: &[usize]| -> Option<usize> {
        let deg = gens[0].degree();
        let mut x = Permutation::identity(deg);
        for &l in w {
            let g = if l % 2 == 0 || involution[l / 2] {
                gens[l / 2].clone()
            } else {
                gens[l / 2].inverse()
            };
            x = x.compose(&g);
        }
        x.order().to_usize().filter(|&o| o * w.len() <= 96)
    };
    // reduced words of length at most 4, up to rotation
    let letters: Vec<usize> = (0..2 * gens.len())
        .filter(|&l| !(l % 2 == 1 && involution[l / 2]))
        .collect();
    let inverse = |l: usize| if involution[l / 2] { l } else { l ^ 1 };
    let mut words: Vec<Vec<usize>> = Vec::new();
    let mut frontier: Vec<Vec<usize>> = letters.iter().map(|&l| vec![l]).collect();
    let mut seen = HashSet::new();
    for _ in 0..4 {
        let mut next = Vec::new();
        for w in &frontier {
            let canonical = (0..w.len())
                .map(|k| [&w[k..], &w[..k]].concat())
                .min()
                .unwrap();
            if (inverse(w[0]) != *w.last().unwrap() || w.len() == 1) && seen.insert(canonical) {
                words.push(w.clone());
            }
            for &l in &letters {
                if inverse(*w.last().unwrap()) != l {
                    let mut v = w.clone();
                    v.push(l);
                    next.push(v);
                }
            }
        }
        frontier = next;
    }
    words
        .into_iter()
        .filter_map(|w| {
            let o = word_order(&w)?;
            Some(
                w.iter()
                    .cycle()
                    .take(w.len() * o)
                    .map(|&l| {
                        if l % 2 == 1 && involution[l / 2] {
                            l ^ 1
                        } else {
                            l
                        }
                    })
                    .collect(),
            )
        })
        .collect()
}

fn low_index_subgroups(g: &PermGroup, m: usize) -> Vec<PermGroup> {
    let gens = small_generating_set(g);
    if gens.is_empty() {
        return vec![g.clone()];
    }
    let involution: Vec<bool> = gens.iter().map(|x| x.compose(x).is_identity()).collect();
    let relators = relators(&gens, &involution);
    let mut search = CosetSearch {
        group: g,
        involution,
        relators,
        max: m,
        table: vec![vec![None; 2 * gens.len()]],
        trail: Vec::new(),
        gens,
        found: Vec::new(),
    };
    search.search();
    let mut found = search.found;
    found.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
    found.into_iter().map(|(_, h)| h).collect()
}
