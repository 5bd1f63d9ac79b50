use crate::error::{Error, Result};
use crate::groupcore::chain::StabilizerChain;
use crate::groupcore::element::GroupElement;
use crate::groupcore::group::{closure, ElementSet, FiniteGroup, GroupKind};
use crate::groupcore::perm::Permutation;
use std::collections::HashSet;
use std::fmt;
use std::sync::{Arc, OnceLock};

/// A subgroup of a [`FiniteGroup`], with a membership backend: a stabilizer
/// chain when the parent is a permutation group, a capped closure otherwise.
#[derive(Clone)]
pub struct Subgroup {
    parent: Arc<FiniteGroup>,
    gens: Vec<GroupElement>,
    backend: Backend,
}

#[derive(Clone)]
enum Backend {
    Chain(Arc<StabilizerChain>),
    Closure(Arc<OnceLock<Result<Arc<ElementSet>>>>),
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Subgroup(<{} gens> of {})",
            self.gens.len(),
            self.parent.name()
        )
    }
}

impl Subgroup {
    /// Subgroup generated by `gens`; every generator must lie in the parent.
    pub fn generated(parent: Arc<FiniteGroup>, gens: Vec<GroupElement>) -> Result<Subgroup> {
        for g in &gens {
            if !parent.contains(g)? {
                return Err(Error::invalid(format!(
                    "generator {g} is not in {}",
                    parent.name()
                )));
            }
        }
        Self::generated_unchecked(parent, gens)
    }

    /// As [`Subgroup::generated`] without the parent-membership check, for
    /// internal call sites whose inputs are members by construction.
    pub(crate) fn generated_unchecked(
        parent: Arc<FiniteGroup>,
        gens: Vec<GroupElement>,
    ) -> Result<Subgroup> {
        let backend = match parent.kind() {
            GroupKind::Permutation { degree } => {
                let perms: Vec<Permutation> = gens
                    .iter()
                    .map(|g| g.as_perm().cloned().ok_or(Error::MixedGroupOperands))
                    .collect::<Result<_>>()?;
                Backend::Chain(Arc::new(StabilizerChain::new(*degree, &perms)?))
            }
            _ => Backend::Closure(Arc::new(OnceLock::new())),
        };
        Ok(Subgroup {
            parent,
            gens,
            backend,
        })
    }

    /// Subgroup from a full element set already known to be closed.
    pub(crate) fn from_elements_unchecked(
        parent: Arc<FiniteGroup>,
        elements: Arc<ElementSet>,
    ) -> Result<Subgroup> {
        let gens: Vec<GroupElement> = elements.iter().cloned().collect();
        match parent.kind() {
            GroupKind::Permutation { .. } => Self::generated_unchecked(parent, gens),
            _ => {
                let cell = OnceLock::new();
                let _ = cell.set(Ok(elements));
                Ok(Subgroup {
                    parent,
                    gens,
                    backend: Backend::Closure(Arc::new(cell)),
                })
            }
        }
    }

    pub fn trivial(parent: Arc<FiniteGroup>) -> Result<Subgroup> {
        Self::generated_unchecked(parent, Vec::new())
    }

    /// The whole parent as a subgroup of itself.
    pub fn full(parent: Arc<FiniteGroup>) -> Result<Subgroup> {
        let gens = parent
            .generators()
            .iter()
            .map(|(_, g)| g.clone())
            .collect();
        Self::generated_unchecked(parent, gens)
    }

    pub fn parent(&self) -> &Arc<FiniteGroup> {
        &self.parent
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.gens
    }

    pub fn same_parent(&self, other: &Subgroup) -> bool {
        Arc::ptr_eq(&self.parent, &other.parent)
    }

    pub fn order(&self) -> Result<u128> {
        match &self.backend {
            Backend::Chain(chain) => Ok(chain.order()),
            Backend::Closure(_) => Ok(self.elements()?.len() as u128),
        }
    }

    pub fn index(&self) -> Result<u128> {
        let order = self.order()?;
        let parent_order = self.parent.order()?;
        Ok(parent_order / order)
    }

    pub fn contains(&self, g: &GroupElement) -> Result<bool> {
        match &self.backend {
            Backend::Chain(chain) => match g.as_perm() {
                Some(p) => Ok(chain.contains(p)),
                None => Ok(false),
            },
            Backend::Closure(_) => Ok(self.elements()?.contains(g)),
        }
    }

    pub fn elements(&self) -> Result<Arc<ElementSet>> {
        let cap = self.parent.caps().closure;
        match &self.backend {
            Backend::Chain(chain) => {
                let elements = chain.elements(cap)?;
                Ok(Arc::new(
                    elements.into_iter().map(GroupElement::Perm).collect(),
                ))
            }
            Backend::Closure(cell) => cell
                .get_or_init(|| {
                    let set = closure(&self.gens, self.parent.identity(), cap, |a, b| {
                        self.parent.mul(a, b)
                    })?;
                    Ok(Arc::new(set))
                })
                .clone(),
        }
    }

    pub fn is_trivial(&self) -> Result<bool> {
        Ok(self.order()? == 1)
    }

    /// Set equality of subgroups (same parent assumed).
    pub fn equal_elements(&self, other: &Subgroup) -> Result<bool> {
        if self.order()? != other.order()? {
            return Ok(false);
        }
        for g in &self.gens {
            if !other.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_contained_in(&self, other: &Subgroup) -> Result<bool> {
        for g in &self.gens {
            if !other.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `{g : g in self and g in other}`, enumerating the smaller side and
    /// filtering by membership in the larger.
    pub fn intersect(&self, other: &Subgroup) -> Result<Subgroup> {
        if !self.same_parent(other) {
            return Err(Error::MixedGroupOperands);
        }
        let (small, large) = if self.order()? <= other.order()? {
            (self, other)
        } else {
            (other, self)
        };
        let mut kept = ElementSet::new();
        for g in small.elements()?.iter() {
            if large.contains(g)? {
                kept.insert(g.clone());
            }
        }
        Subgroup::from_elements_unchecked(self.parent.clone(), Arc::new(kept))
    }

    /// The set `{hk : h in self, k in other}`, deduplicated.
    pub fn product_set(&self, other: &Subgroup, cap: usize) -> Result<ElementSet> {
        if !self.same_parent(other) {
            return Err(Error::MixedGroupOperands);
        }
        let hs = self.elements()?;
        let ks = other.elements()?;
        let pairs = hs.len().saturating_mul(ks.len());
        if pairs > cap {
            return Err(Error::CapExceeded { cap, reached: pairs });
        }
        let mut out = ElementSet::new();
        for h in hs.iter() {
            for k in ks.iter() {
                out.insert(self.parent.mul(h, k)?);
            }
        }
        Ok(out)
    }

    /// Exactly one representative per left coset `gH`, each the order-minimum
    /// of its coset, in ascending order of representative.
    pub fn left_transversal(&self) -> Result<Vec<GroupElement>> {
        let parent_elements = self.parent.elements()?;
        let own = self.elements()?;
        let mut covered: HashSet<GroupElement> = HashSet::with_capacity(parent_elements.len());
        let mut reps = Vec::new();
        for g in parent_elements.iter() {
            if covered.contains(g) {
                continue;
            }
            reps.push(g.clone());
            for h in own.iter() {
                covered.insert(self.parent.mul(g, h)?);
            }
        }
        Ok(reps)
    }

    /// Order-minimum element of the coset `gH`.
    pub fn canonical_coset_rep(&self, g: &GroupElement) -> Result<GroupElement> {
        let mut best: Option<GroupElement> = None;
        for h in self.elements()?.iter() {
            let gh = self.parent.mul(g, h)?;
            if best.as_ref().is_none_or(|b| gh < *b) {
                best = Some(gh);
            }
        }
        best.ok_or_else(|| Error::invalid("empty subgroup"))
    }

    /// Subgroup generated by `{g^-1 h g : h generator of self}`.
    ///
    /// For permutation parents `g` may be any ambient permutation of the same
    /// degree; the conjugated generators must land back in the parent.
    pub fn conjugate(&self, g: &GroupElement) -> Result<Subgroup> {
        let g_inv = match (self.parent.kind(), g) {
            (GroupKind::Permutation { degree }, GroupElement::Perm(p)) => {
                if p.degree() != *degree {
                    return Err(Error::DegreeMismatch(*degree, p.degree()));
                }
                GroupElement::Perm(p.inverse())
            }
            (GroupKind::Permutation { .. }, _) => return Err(Error::MixedGroupOperands),
            _ => {
                if !self.parent.contains(g)? {
                    return Err(Error::invalid(
                        "conjugator outside a non-permutation parent group",
                    ));
                }
                self.parent.inv(g)?
            }
        };
        let mut new_gens = Vec::with_capacity(self.gens.len());
        for h in &self.gens {
            let conj = self.parent.mul(&self.parent.mul(&g_inv, h)?, g)?;
            new_gens.push(conj);
        }
        Subgroup::generated(self.parent.clone(), new_gens)
    }

    /// Promote to a standalone group of the same element shape.
    pub fn to_group(&self, name: impl Into<String>) -> Result<Arc<FiniteGroup>> {
        let labeled: Vec<(String, GroupElement)> = self
            .gens
            .iter()
            .enumerate()
            .map(|(i, g)| (format!("g{i}"), g.clone()))
            .collect();
        match self.backend {
            Backend::Chain(_) => FiniteGroup::generated(name, &self.parent, labeled),
            Backend::Closure(_) => {
                let elements = self.elements()?;
                FiniteGroup::generated_with_elements(name, &self.parent, labeled, elements)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupcore::group::tests::sym;

    fn gen(g: &Arc<FiniteGroup>, text: &str) -> GroupElement {
        GroupElement::Perm(Permutation::parse(text, g.degree().unwrap()).unwrap())
    }

    #[test]
    fn contains_examples() {
        let g = sym(4);
        let h = Subgroup::generated(g.clone(), vec![gen(&g, "(2,3)"), gen(&g, "(3,4)")]).unwrap();
        assert!(h.contains(&gen(&g, "(2,3)")).unwrap());
        assert!(!h.contains(&gen(&g, "(1,2)")).unwrap());
        assert!(h.contains(&g.identity()).unwrap());
        assert_eq!(h.order().unwrap(), 6);
    }

    #[test]
    fn intersect_examples() {
        let g = sym(4);
        let h = Subgroup::generated(g.clone(), vec![gen(&g, "(1,2)")]).unwrap();
        let k = Subgroup::generated(g.clone(), vec![gen(&g, "(3,4)")]).unwrap();
        assert_eq!(h.intersect(&h).unwrap().order().unwrap(), 2);
        assert_eq!(h.intersect(&k).unwrap().order().unwrap(), 1);

        // <rho_0,rho_1> /\ <rho_1,rho_2> = <rho_1> in the tetrahedron group
        let a01 = Subgroup::generated(g.clone(), vec![gen(&g, "(1,2)"), gen(&g, "(2,3)")]).unwrap();
        let a12 = Subgroup::generated(g.clone(), vec![gen(&g, "(2,3)"), gen(&g, "(3,4)")]).unwrap();
        let meet = a01.intersect(&a12).unwrap();
        assert_eq!(meet.order().unwrap(), 2);
        assert!(meet.contains(&gen(&g, "(2,3)")).unwrap());
    }

    #[test]
    fn product_set_examples() {
        let g3 = sym(3);
        let h = Subgroup::generated(g3.clone(), vec![gen(&g3, "(1,2)")]).unwrap();
        let trivial = Subgroup::trivial(g3.clone()).unwrap();
        assert_eq!(h.product_set(&trivial, 100).unwrap().len(), 2);
        let k = Subgroup::generated(g3.clone(), vec![gen(&g3, "(2,3)")]).unwrap();
        assert_eq!(h.product_set(&k, 100).unwrap().len(), 4);

        let g4 = sym(4);
        let a12 = Subgroup::generated(g4.clone(), vec![gen(&g4, "(2,3)"), gen(&g4, "(3,4)")])
            .unwrap();
        let a01 = Subgroup::generated(g4.clone(), vec![gen(&g4, "(1,2)"), gen(&g4, "(2,3)")])
            .unwrap();
        // |HK| = |H||K| / |H /\ K| = 36 / 2
        assert_eq!(a12.product_set(&a01, 1000).unwrap().len(), 18);
    }

    #[test]
    fn product_formula_invariant() {
        // |HK| * |H/\K| = |H| * |K| on assorted subgroup pairs of Sym(4)etc
        let g = sym(4);
        let subgroups = vec![
            Subgroup::generated(g.clone(), vec![gen(&g, "(1,2)")]).unwrap(),
            Subgroup::generated(g.clone(), vec![gen(&g, "(1,2)"), gen(&g, "(3,4)")]).unwrap(),
            Subgroup::generated(g.clone(), vec![gen(&g, "(2,3)"), gen(&g, "(3,4)")]).unwrap(),
            Subgroup::generated(g.clone(), vec![gen(&g, "(1,2,3)")]).unwrap(),
            Subgroup::full(g.clone()).unwrap(),
            Subgroup::trivial(g.clone()).unwrap(),
        ];
        for h in &subgroups {
            for k in &subgroups {
                let hk = h.product_set(k, 10_000).unwrap().len() as u128;
                let meet = h.intersect(k).unwrap().order().unwrap();
                assert_eq!(hk * meet, h.order().unwrap() * k.order().unwrap());
            }
        }
    }

    #[test]
    fn transversal_examples() {
        let g = sym(4);
        let full = Subgroup::full(g.clone()).unwrap();
        assert_eq!(full.left_transversal().unwrap(), vec![g.identity()]);

        let a2 = Subgroup::generated(g.clone(), vec![gen(&g, "(1,2)"), gen(&g, "(2,3)")]).unwrap();
        let reps = a2.left_transversal().unwrap();
        assert_eq!(reps.len(), 4);
        // pairwise distinct cosets, count * |H| = |G|
        for (i, r) in reps.iter().enumerate() {
            for s in reps.iter().skip(i + 1) {
                let quotient = g.mul(&g.inv(r).unwrap(), s).unwrap();
                assert!(!a2.contains(&quotient).unwrap());
            }
        }
        assert_eq!(reps.len() as u128 * a2.order().unwrap(), g.order().unwrap());
        // each representative is the minimum of its coset
        for r in &reps {
            assert_eq!(&a2.canonical_coset_rep(r).unwrap(), r);
        }
    }

    #[test]
    fn conjugate_examples() {
        let g = sym(4);
        let a0 = Subgroup::generated(g.clone(), vec![gen(&g, "(2,3)"), gen(&g, "(3,4)")]).unwrap();
        let tau = gen(&g, "(1,4)(2,3)");
        // (A_0)^tau = A_2
        let conj = a0.conjugate(&tau).unwrap();
        let a2 = Subgroup::generated(g.clone(), vec![gen(&g, "(1,2)"), gen(&g, "(2,3)")]).unwrap();
        assert!(conj.equal_elements(&a2).unwrap());
        // (A_1)^tau = A_1
        let a1 = Subgroup::generated(g.clone(), vec![gen(&g, "(1,2)"), gen(&g, "(3,4)")]).unwrap();
        assert!(a1.conjugate(&tau).unwrap().equal_elements(&a1).unwrap());
        // identity fixes everything; conjugating back recovers the subgroup
        assert!(a0.conjugate(&g.identity()).unwrap().equal_elements(&a0).unwrap());
        let back = conj.conjugate(&GroupElement::Perm(
            tau.as_perm().unwrap().inverse(),
        ))
        .unwrap();
        assert!(back.equal_elements(&a0).unwrap());
    }

    #[test]
    fn intersection_commutes_and_respects_membership() {
        let g = sym(4);
        let h = Subgroup::generated(g.clone(), vec![gen(&g, "(1,2)"), gen(&g, "(2,3)")]).unwrap();
        let k = Subgroup::generated(g.clone(), vec![gen(&g, "(2,3)"), gen(&g, "(3,4)")]).unwrap();
        let hk = h.intersect(&k).unwrap();
        let kh = k.intersect(&h).unwrap();
        assert!(hk.equal_elements(&kh).unwrap());
        for e in g.elements().unwrap().iter() {
            let both = h.contains(e).unwrap() && k.contains(e).unwrap();
            assert_eq!(hk.contains(e).unwrap(), both);
        }
    }
}
