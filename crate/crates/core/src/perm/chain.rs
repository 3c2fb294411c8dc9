//! Deterministic Schreier–Sims.
//!
//! Basic orbits are kept as Schreier trees (one edge label per point) and
//! only ever grow: adding a strong generator extends the existing tree
//! without relabeling old points. Because of that, a Schreier generator
//! that once sifted to the identity keeps doing so, and each (point,
//! generator) pair is tested at most once over the whole life of the chain.
//! Extending a complete chain by a new generator therefore only pays for
//! the new pairs, which is what makes normal-closure loops affordable on
//! groups of order around 2^190.

use std::collections::HashSet;

use num_bigint::BigUint;
use num_traits::One;

use super::permutation::Permutation;

const NOT_IN_ORBIT: u32 = u32::MAX;
const ROOT: u32 = u32::MAX - 1;

#[derive(Clone, Debug)]
struct Level {
    base: u32,
    /// Indices into `StabChain::strong` of the generators for this level's group.
    gens: Vec<u32>,
    orbit: Vec<u32>,
    /// Per point: `NOT_IN_ORBIT`, `ROOT`, or the strong generator `s` with `x = parent^s`.
    edge: Vec<u32>,
    /// Schreier generators (orbit point, strong index) already known to sift.
    checked: HashSet<(u32, u32)>,
}

impl Level {
    fn new(degree: usize, base: u32) -> Level {
        let mut edge = vec![NOT_IN_ORBIT; degree];
        edge[base as usize] = ROOT;
        Level {
            base,
            gens: Vec::new(),
            orbit: vec![base],
            edge,
            checked: HashSet::new(),
        }
    }

    #[inline]
    fn in_orbit(&self, x: u32) -> bool {
        self.edge[x as usize] != NOT_IN_ORBIT
    }
}

/// Base and strong generating set with Schreier-tree transversals.
#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    strong: Vec<Permutation>,
    strong_inv: Vec<Permutation>,
    levels: Vec<Level>,
}

impl StabChain {
    /// The chain of the trivial group.
    pub fn new(degree: usize) -> StabChain {
        StabChain {
            degree,
            strong: Vec::new(),
            strong_inv: Vec::new(),
            levels: Vec::new(),
        }
    }

    pub fn from_generators<'a>(
        degree: usize,
        gens: impl IntoIterator<Item = &'a Permutation>,
    ) -> StabChain {
        let mut chain = StabChain::new(degree);
        for g in gens {
            chain.extend(g);
        }
        chain
    }

    /// Builds a chain for a group whose order is known in advance, stopping as
    /// soon as the product of basic orbit lengths reaches it. A partial chain
    /// whose orbit product equals the true order is complete, so the result
    /// is exact.
    pub fn with_known_order<'a>(
        degree: usize,
        gens: impl IntoIterator<Item = &'a Permutation>,
        order: &BigUint,
    ) -> StabChain {
        let mut chain = StabChain::new(degree);
        for g in gens {
            if &chain.order() == order {
                break;
            }
            chain.extend_with_target(g, Some(order));
        }
        assert_eq!(&chain.order(), order, "known order not reached");
        chain
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn strong_generators(&self) -> &[Permutation] {
        &self.strong
    }

    /// Generators of the stabilizer of the first `level` base points.
    pub fn level_generators(&self, level: usize) -> Vec<&Permutation> {
        self.levels[level]
            .gens
            .iter()
            .map(|&s| &self.strong[s as usize])
            .collect()
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    /// Strips `g` through the levels starting at `from`. Returns the residue
    /// and the index of the level where stripping stopped (`len()` when it
    /// passed every level).
    pub fn sift_from(&self, g: &Permutation, from: usize) -> (Permutation, usize) {
        let mut h = g.clone();
        for (l, level) in self.levels.iter().enumerate().skip(from) {
            let mut x = h.image(level.base);
            if !level.in_orbit(x) {
                return (h, l);
            }
            while level.edge[x as usize] != ROOT {
                let s = level.edge[x as usize] as usize;
                h.compose_in_place(&self.strong_inv[s]);
                x = self.strong_inv[s].image(x);
            }
        }
        (h, self.levels.len())
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.sift_from(g, 0).0.is_identity()
    }

    /// Adds `g` to the group and restores completeness. Returns false when `g`
    /// was already a member.
    pub fn extend(&mut self, g: &Permutation) -> bool {
        self.extend_with_target(g, None)
    }

    fn extend_with_target(&mut self, g: &Permutation, target: Option<&BigUint>) -> bool {
        assert_eq!(g.degree(), self.degree);
        let (h, j) = self.sift_from(g, 0);
        if h.is_identity() {
            return false;
        }
        self.add_strong(h, 0, j);
        self.complete(j, target);
        true
    }

    /// Coset representative `u` with `base^u = x` at the given level.
    pub fn coset_rep(&self, level: usize, x: u32) -> Permutation {
        let lv = &self.levels[level];
        debug_assert!(lv.in_orbit(x));
        let mut path = Vec::new();
        let mut y = x;
        while lv.edge[y as usize] != ROOT {
            let s = lv.edge[y as usize] as usize;
            path.push(s);
            y = self.strong_inv[s].image(y);
        }
        let mut u = Permutation::identity(self.degree);
        for &s in path.iter().rev() {
            u.compose_in_place(&self.strong[s]);
        }
        u
    }

    pub fn orbit(&self, level: usize) -> &[u32] {
        &self.levels[level].orbit
    }

    /// Lists every element. Only sensible for small groups.
    pub fn elements(&self) -> Vec<Permutation> {
        let mut elems = vec![Permutation::identity(self.degree)];
        for l in (0..self.levels.len()).rev() {
            let reps: Vec<Permutation> = self.levels[l]
                .orbit
                .iter()
                .map(|&x| self.coset_rep(l, x))
                .collect();
            let mut next = Vec::with_capacity(elems.len() * reps.len());
            for e in &elems {
                for u in &reps {
                    next.push(e.compose(u));
                }
            }
            elems = next;
        }
        elems
    }

    fn add_strong(&mut self, h: Permutation, from: usize, to: usize) {
        let idx = self.strong.len() as u32;
        self.strong_inv.push(h.inverse());
        self.strong.push(h);
        for l in from..=to {
            if l == self.levels.len() {
                let base = self.strong[idx as usize]
                    .smallest_moved_point()
                    .expect("non-identity residue");
                self.levels.push(Level::new(self.degree, base));
            }
            self.levels[l].gens.push(idx);
            self.extend_orbit(l, idx);
        }
    }

    fn extend_orbit(&mut self, l: usize, new_gen: u32) {
        let strong = &self.strong;
        let level = &mut self.levels[l];
        let old_len = level.orbit.len();
        let mut k = 0;
        while k < level.orbit.len() {
            let p = level.orbit[k];
            if k < old_len {
                let y = strong[new_gen as usize].image(p);
                if !level.in_orbit(y) {
                    level.edge[y as usize] = new_gen;
                    level.orbit.push(y);
                }
            } else {
                for gi in 0..level.gens.len() {
                    let s = level.gens[gi];
                    let y = strong[s as usize].image(p);
                    if !level.in_orbit(y) {
                        level.edge[y as usize] = s;
                        level.orbit.push(y);
                    }
                }
            }
            k += 1;
        }
    }

    fn complete(&mut self, start: usize, target: Option<&BigUint>) {
        let mut i = start as isize;
        while i >= 0 {
            if let Some(t) = target {
                if &self.order() == t {
                    return;
                }
            }
            let l = i as usize;
            match self.find_failing_schreier_generator(l) {
                Some((h, j)) => {
                    self.add_strong(h, l + 1, j);
                    i = j as isize;
                }
                None => i -= 1,
            }
        }
    }

    fn find_failing_schreier_generator(&mut self, l: usize) -> Option<(Permutation, usize)> {
        let mut oi = 0;
        while oi < self.levels[l].orbit.len() {
            let beta = self.levels[l].orbit[oi];
            let mut rep: Option<Permutation> = None;
            let mut gi = 0;
            while gi < self.levels[l].gens.len() {
                let s = self.levels[l].gens[gi];
                gi += 1;
                if !self.levels[l].checked.insert((beta, s)) {
                    continue;
                }
                let image = self.strong[s as usize].image(beta);
                let level = &self.levels[l];
                if level.edge[image as usize] == s
                    && self.strong_inv[s as usize].image(image) == beta
                {
                    // tree edge: the Schreier generator is the identity
                    continue;
                }
                let u = rep.get_or_insert_with(|| self.coset_rep(l, beta));
                let candidate = u.compose(&self.strong[s as usize]);
                let (h, j) = self.sift_from(&candidate, l);
                if !h.is_identity() {
                    return Some((h, j));
                }
            }
            oi += 1;
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(deg: usize, s: &str) -> Permutation {
        Permutation::parse(deg, s).unwrap()
    }

    #[test]
    fn symmetric_group_orders() {
        let s4 = StabChain::from_generators(4, &[p(4, "(0 1 2 3)"), p(4, "(0 1)")]);
        assert_eq!(s4.order(), BigUint::from(24u32));
        assert_eq!(s4.elements().len(), 24);
        let s7 = StabChain::from_generators(7, &[p(7, "(0 1 2 3 4 5 6)"), p(7, "(0 1)")]);
        assert_eq!(s7.order(), BigUint::from(5040u32));
    }

    #[test]
    fn base_points_are_smallest_moved() {
        let c = StabChain::from_generators(6, &[p(6, "(2 3 4)")]);
        assert_eq!(c.base(), vec![2]);
        assert_eq!(c.order(), BigUint::from(3u32));
    }

    #[test]
    fn known_order_build_matches() {
        let gens = [p(5, "(0 1 2 3 4)"), p(5, "(0 1 2)")];
        let c = StabChain::with_known_order(5, &gens, &BigUint::from(60u32));
        assert_eq!(c.order(), BigUint::from(60u32));
        assert!(c.contains(&p(5, "(0 1)(2 3)")));
        assert!(!c.contains(&p(5, "(0 1)")));
    }

    #[test]
    fn strong_generators_rebuild_same_group() {
        let gens = [p(6, "(0 1 2 3 4 5)"), p(6, "(0 1)")];
        let c = StabChain::from_generators(6, &gens);
        let rebuilt = StabChain::from_generators(6, c.strong_generators());
        assert_eq!(rebuilt.order(), c.order());
        assert_eq!(c.order(), BigUint::from(720u32));
    }
}
