use crate::error::{Error, Result};
use crate::groupcore::perm::Permutation;
use std::collections::HashMap;

/// Deterministic Schreier-Sims stabilizer chain.
///
/// Base points are the first moved point of the generator that forced the
/// level, generators are processed in input order and orbits grown
/// breadth-first, so the chain (and everything derived from it) is
/// reproducible run to run.
#[derive(Debug, Clone)]
pub struct StabilizerChain {
    degree: usize,
    levels: Vec<Level>,
}

#[derive(Debug, Clone)]
struct Level {
    base_point: u32,
    gens: Vec<Permutation>,
    /// Orbit of `base_point` in BFS order.
    orbit: Vec<u32>,
    /// point -> transversal element u with base_point^u = point.
    transversal: HashMap<u32, Permutation>,
}

impl Level {
    fn new(degree: usize, base_point: u32) -> Level {
        let mut transversal = HashMap::new();
        transversal.insert(base_point, Permutation::identity(degree));
        Level {
            base_point,
            gens: Vec::new(),
            orbit: vec![base_point],
            transversal,
        }
    }

    fn recompute_orbit(&mut self, degree: usize) {
        self.orbit = vec![self.base_point];
        self.transversal.clear();
        self.transversal
            .insert(self.base_point, Permutation::identity(degree));
        let mut head = 0;
        while head < self.orbit.len() {
            let p = self.orbit[head];
            head += 1;
            let u = self.transversal[&p].clone();
            for g in &self.gens {
                let q = g.apply(p);
                if let std::collections::hash_map::Entry::Vacant(slot) = self.transversal.entry(q)
                {
                    slot.insert(u.compose(g));
                    self.orbit.push(q);
                }
            }
        }
    }
}

impl StabilizerChain {
    pub fn new(degree: usize, gens: &[Permutation]) -> Result<StabilizerChain> {
        for g in gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch(degree, g.degree()));
            }
        }
        let mut chain = StabilizerChain {
            degree,
            levels: Vec::new(),
        };
        for g in gens {
            if g.is_identity() {
                continue;
            }
            if chain.levels.is_empty() {
                let base = g.first_moved_point().expect("non-identity");
                chain.levels.push(Level::new(degree, base));
            }
            chain.levels[0].gens.push(g.clone());
        }
        for lv in &mut chain.levels {
            lv.recompute_orbit(degree);
        }
        chain.verify_all();
        Ok(chain)
    }

    /// Bottom-up Schreier-Sims verification: levels deeper than the cursor
    /// are complete. A Schreier generator of level `i` that fails to sift is
    /// a missing strong generator of every stabilizer from level `i + 1` down
    /// to where sifting stalled; it is added to all of them and verification
    /// resumes at the deepest touched level.
    fn verify_all(&mut self) {
        if self.levels.is_empty() {
            return;
        }
        let mut i = self.levels.len() - 1;
        loop {
            match self.verify_level(i) {
                None => {
                    if i == 0 {
                        return;
                    }
                    i -= 1;
                }
                Some((residue, stuck)) => {
                    if stuck == self.levels.len() {
                        let base = residue.first_moved_point().expect("non-identity residue");
                        self.levels.push(Level::new(self.degree, base));
                    }
                    for level in i + 1..=stuck {
                        self.levels[level].gens.push(residue.clone());
                        self.levels[level].recompute_orbit(self.degree);
                    }
                    i = stuck;
                }
            }
        }
    }

    /// First Schreier generator of `level` that fails to sift, if any.
    fn verify_level(&self, level: usize) -> Option<(Permutation, usize)> {
        let lv = &self.levels[level];
        for p in &lv.orbit {
            let u_p = &lv.transversal[p];
            for s in &lv.gens {
                let q = s.apply(*p);
                let u_q_inv = lv.transversal[&q].inverse();
                let schreier = u_p.compose(s).compose(&u_q_inv);
                if let Some(fail) = self.sift_from(schreier, level + 1) {
                    return Some(fail);
                }
            }
        }
        None
    }

    /// Sift from the given level; `None` means the element reduced to identity.
    /// Otherwise returns the residue and the level where it must be inserted.
    fn sift_from(&self, mut g: Permutation, from: usize) -> Option<(Permutation, usize)> {
        let mut level = from;
        while level < self.levels.len() {
            if g.is_identity() {
                return None;
            }
            let lv = &self.levels[level];
            let p = g.apply(lv.base_point);
            match lv.transversal.get(&p) {
                None => return Some((g, level)),
                Some(u) => g = g.compose(&u.inverse()),
            }
            level += 1;
        }
        if g.is_identity() {
            None
        } else {
            Some((g, level))
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|lv| lv.base_point).collect()
    }

    /// Group order: product of the basic orbit lengths.
    pub fn order(&self) -> u128 {
        self.levels.iter().map(|lv| lv.orbit.len() as u128).product()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.sift_from(g.clone(), 0).is_none()
    }

    /// Enumerate all elements as transversal products, deepest level first.
    pub fn elements(&self, cap: usize) -> Result<Vec<Permutation>> {
        let order = self.order();
        if order > cap as u128 {
            return Err(Error::CapExceeded {
                cap,
                reached: cap.saturating_add(1),
            });
        }
        let mut out = vec![Permutation::identity(self.degree)];
        for lv in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(out.len() * lv.orbit.len());
            for partial in &out {
                for p in &lv.orbit {
                    next.push(partial.compose(&lv.transversal[p]));
                }
            }
            out = next;
        }
        Ok(out)
    }

    /// Strong generators, all levels.
    pub fn strong_generators(&self) -> Vec<Permutation> {
        self.levels.iter().flat_map(|lv| lv.gens.iter().cloned()).collect()
    }

    pub fn basic_orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|lv| lv.orbit.len()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(n: usize) -> StabilizerChain {
        let gens: Vec<Permutation> = (1..n as u32)
            .map(|i| Permutation::from_cycles(&[vec![i, i + 1]], n).unwrap())
            .collect();
        StabilizerChain::new(n, &gens).unwrap()
    }

    #[test]
    fn symmetric_group_orders() {
        assert_eq!(sym(4).order(), 24);
        assert_eq!(sym(5).order(), 120);
        assert_eq!(sym(7).order(), 5040);
    }

    #[test]
    fn membership_sifting() {
        let chain = StabilizerChain::new(
            4,
            &[
                Permutation::parse("(2,3)", 4).unwrap(),
                Permutation::parse("(3,4)", 4).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(chain.order(), 6);
        assert!(chain.contains(&Permutation::parse("(2,4)", 4).unwrap()));
        assert!(!chain.contains(&Permutation::parse("(1,2)", 4).unwrap()));
        assert!(chain.contains(&Permutation::identity(4)));
    }

    #[test]
    fn element_enumeration_matches_order() {
        let chain = sym(4);
        let elements = chain.elements(100).unwrap();
        assert_eq!(elements.len(), 24);
        let set: std::collections::HashSet<_> = elements.into_iter().collect();
        assert_eq!(set.len(), 24);
        for g in &set {
            assert!(chain.contains(g));
        }
    }

    #[test]
    fn chain_order_matches_closure_on_various_groups() {
        // closure oracle: breadth-first product closure of the generators
        let cases: Vec<(usize, Vec<&str>)> = vec![
            (4, vec!["(1,2)", "(2,3)", "(3,4)"]),
            (6, vec!["(1,2)(3,4)(5,6)", "(1,3)(2,4)", "(3,5)(4,6)"]),
            (8, vec!["(1,2)", "(1,3)(2,4)", "(3,5)(4,6)", "(5,7)(6,8)"]),
            (5, vec!["(1,2,3,4,5)", "(1,2)"]),
            (7, vec!["(1,2,3,4,5,6,7)", "(1,2)(3,6)"]),
        ];
        for (degree, gens) in cases {
            let gens: Vec<Permutation> =
                gens.iter().map(|s| Permutation::parse(s, degree).unwrap()).collect();
            let chain = StabilizerChain::new(degree, &gens).unwrap();
            let mut seen = std::collections::HashSet::new();
            let mut queue = vec![Permutation::identity(degree)];
            seen.insert(queue[0].clone());
            while let Some(g) = queue.pop() {
                for s in &gens {
                    let h = g.compose(s);
                    if seen.insert(h.clone()) {
                        queue.push(h);
                    }
                }
            }
            assert_eq!(chain.order(), seen.len() as u128, "degree {degree}");
            for g in &seen {
                assert!(chain.contains(g));
            }
        }
    }

    #[test]
    fn strong_generators_sift() {
        let chain = sym(5);
        for g in chain.strong_generators() {
            assert!(chain.contains(&g));
        }
        let product: u128 = chain
            .basic_orbit_lengths()
            .iter()
            .map(|&l| l as u128)
            .product();
        assert_eq!(product, chain.order());
    }

    #[test]
    fn trivial_group() {
        let chain = StabilizerChain::new(3, &[]).unwrap();
        assert_eq!(chain.order(), 1);
        assert!(chain.contains(&Permutation::identity(3)));
        assert_eq!(chain.elements(10).unwrap().len(), 1);
    }
}
