use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::groupcore::chain::StabilizerChain;
use crate::groupcore::element::GroupElement;
use crate::groupcore::perm::Permutation;
use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock};

/// A finite set of group elements with total-order iteration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementSet {
    inner: BTreeSet<GroupElement>,
}

impl ElementSet {
    pub fn new() -> ElementSet {
        ElementSet {
            inner: BTreeSet::new(),
        }
    }

    pub fn from_iter_capped<I: IntoIterator<Item = GroupElement>>(
        iter: I,
        cap: usize,
    ) -> Result<ElementSet> {
        let mut inner = BTreeSet::new();
        for g in iter {
            inner.insert(g);
            if inner.len() > cap {
                return Err(Error::CapExceeded {
                    cap,
                    reached: inner.len(),
                });
            }
        }
        Ok(ElementSet { inner })
    }

    pub fn len(&self) -> usize {
        self.inner.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inner.is_empty()
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.inner.contains(g)
    }

    pub fn insert(&mut self, g: GroupElement) -> bool {
        self.inner.insert(g)
    }

    pub fn iter(&self) -> impl Iterator<Item = &GroupElement> {
        self.inner.iter()
    }

    pub fn intersection(&self, other: &ElementSet) -> ElementSet {
        ElementSet {
            inner: self.inner.intersection(&other.inner).cloned().collect(),
        }
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.inner.is_subset(&other.inner)
    }

    pub fn first(&self) -> Option<&GroupElement> {
        self.inner.iter().next()
    }

    /// First element of `self` missing from `other`, if any.
    pub fn difference_witness(&self, other: &ElementSet) -> Option<&GroupElement> {
        self.inner.iter().find(|g| !other.inner.contains(*g))
    }
}

impl Default for ElementSet {
    fn default() -> Self {
        ElementSet::new()
    }
}

impl FromIterator<GroupElement> for ElementSet {
    fn from_iter<I: IntoIterator<Item = GroupElement>>(iter: I) -> Self {
        ElementSet {
            inner: iter.into_iter().collect(),
        }
    }
}

/// How the actor of a semidirect product transforms the base group.
///
/// `apply(b, a)` computes the automorphism image written `a^b` in incidence
/// contexts; with the internal-product convention this is `b a b^-1`, so that
/// `(a1, b1)(a2, b2) = (a1 * apply(b1, a2), b1 b2)` realizes products in
/// `A x| B`.
#[derive(Debug)]
pub enum GroupAction {
    Trivial,
    /// Base and actor are permutation groups of one degree; the actor
    /// conjugates.
    Conjugation,
    /// Base is a tuple group over slots 1..n; component `w` of the image is
    /// component `w^pi(b)` of the argument, where `pi` maps each actor
    /// element to its slot permutation.
    CoordinatePermutation {
        table: HashMap<GroupElement, Permutation>,
    },
    /// Fully tabulated automorphism per actor element.
    Tabulated {
        table: HashMap<GroupElement, Arc<HashMap<GroupElement, GroupElement>>>,
    },
}

impl GroupAction {
    pub fn apply(&self, b: &GroupElement, a: &GroupElement) -> Result<GroupElement> {
        match self {
            GroupAction::Trivial => Ok(a.clone()),
            GroupAction::Conjugation => {
                let (bp, ap) = match (b.as_perm(), a.as_perm()) {
                    (Some(bp), Some(ap)) => (bp, ap),
                    _ => return Err(Error::MixedGroupOperands),
                };
                if bp.degree() != ap.degree() {
                    return Err(Error::DegreeMismatch(bp.degree(), ap.degree()));
                }
                Ok(GroupElement::Perm(bp.compose(ap).compose(&bp.inverse())))
            }
            GroupAction::CoordinatePermutation { table } => {
                let xs = a.as_tuple().ok_or(Error::MixedGroupOperands)?;
                let pi = table.get(b).ok_or(Error::ActionNotValidated)?;
                if pi.degree() != xs.len() {
                    return Err(Error::DegreeMismatch(pi.degree(), xs.len()));
                }
                let out: Vec<GroupElement> = (1..=xs.len() as u32)
                    .map(|w| xs[pi.apply(w) as usize - 1].clone())
                    .collect();
                Ok(GroupElement::Tuple(out))
            }
            GroupAction::Tabulated { table } => {
                let map = table.get(b).ok_or(Error::ActionNotValidated)?;
                map.get(a).cloned().ok_or(Error::MixedGroupOperands)
            }
        }
    }
}

/// The three group shapes.
#[derive(Clone)]
pub enum GroupKind {
    Permutation {
        degree: usize,
    },
    Pair {
        left: Arc<FiniteGroup>,
        right: Arc<FiniteGroup>,
        action: Arc<GroupAction>,
    },
    Tuple {
        factors: Vec<Arc<FiniteGroup>>,
    },
}

/// A finite group with named generators, a multiplication rule, and a
/// membership backend: a stabilizer chain for permutation groups, capped
/// closure enumeration for pair and tuple groups.
///
/// Groups are immutable after construction; the order and element caches are
/// guarded by single-initialization cells, so shared references may be used
/// concurrently.
pub struct FiniteGroup {
    name: String,
    gens: Vec<(String, GroupElement)>,
    kind: GroupKind,
    caps: Caps,
    chain: Option<Arc<StabilizerChain>>,
    order_cell: OnceLock<Result<u128>>,
    elements_cell: OnceLock<Result<Arc<ElementSet>>>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup({})", self.name)
    }
}

impl FiniteGroup {
    pub fn permutation(
        name: impl Into<String>,
        degree: usize,
        gens: Vec<(String, Permutation)>,
    ) -> Result<Arc<FiniteGroup>> {
        Self::permutation_with_caps(name, degree, gens, Caps::global())
    }

    pub fn permutation_with_caps(
        name: impl Into<String>,
        degree: usize,
        gens: Vec<(String, Permutation)>,
        caps: Caps,
    ) -> Result<Arc<FiniteGroup>> {
        let perms: Vec<Permutation> = gens.iter().map(|(_, p)| p.clone()).collect();
        let chain = StabilizerChain::new(degree, &perms)?;
        let gens = gens
            .into_iter()
            .map(|(label, p)| (label, GroupElement::Perm(p)))
            .collect::<Vec<_>>();
        check_labels(&gens)?;
        Ok(Arc::new(FiniteGroup {
            name: name.into(),
            gens,
            kind: GroupKind::Permutation { degree },
            caps,
            chain: Some(Arc::new(chain)),
            order_cell: OnceLock::new(),
            elements_cell: OnceLock::new(),
        }))
    }

    /// The trivial group, represented as permutations of the given degree.
    pub fn trivial(degree: usize) -> Arc<FiniteGroup> {
        FiniteGroup::permutation("1", degree, Vec::new()).expect("trivial group")
    }

    /// Semidirect product `left x| right` on pair elements.
    pub fn pair(
        name: impl Into<String>,
        left: Arc<FiniteGroup>,
        right: Arc<FiniteGroup>,
        action: Arc<GroupAction>,
        caps: Caps,
    ) -> Result<Arc<FiniteGroup>> {
        let mut gens = Vec::new();
        let el = left.identity();
        let er = right.identity();
        for (label, a) in &left.gens {
            gens.push((label.clone(), GroupElement::pair(a.clone(), er.clone())));
        }
        for (label, b) in &right.gens {
            gens.push((label.clone(), GroupElement::pair(el.clone(), b.clone())));
        }
        check_labels(&gens)?;
        Ok(Arc::new(FiniteGroup {
            name: name.into(),
            gens,
            kind: GroupKind::Pair {
                left,
                right,
                action,
            },
            caps,
            chain: None,
            order_cell: OnceLock::new(),
            elements_cell: OnceLock::new(),
        }))
    }

    /// Direct product of the factors on tuple elements. Generator labels are
    /// suffixed with `@slot` (1-based).
    pub fn tuple(
        name: impl Into<String>,
        factors: Vec<Arc<FiniteGroup>>,
        caps: Caps,
    ) -> Result<Arc<FiniteGroup>> {
        let identities: Vec<GroupElement> = factors.iter().map(|f| f.identity()).collect();
        let mut gens = Vec::new();
        for (slot, factor) in factors.iter().enumerate() {
            for (label, g) in &factor.gens {
                let mut xs = identities.clone();
                xs[slot] = g.clone();
                gens.push((format!("{label}@{}", slot + 1), GroupElement::Tuple(xs)));
            }
        }
        check_labels(&gens)?;
        Ok(Arc::new(FiniteGroup {
            name: name.into(),
            gens,
            kind: GroupKind::Tuple { factors },
            caps,
            chain: None,
            order_cell: OnceLock::new(),
            elements_cell: OnceLock::new(),
        }))
    }

    /// Like [`FiniteGroup::generated`], with a precomputed element set
    /// injected into the cache.
    pub fn generated_with_elements(
        name: impl Into<String>,
        template: &Arc<FiniteGroup>,
        gens: Vec<(String, GroupElement)>,
        elements: Arc<ElementSet>,
    ) -> Result<Arc<FiniteGroup>> {
        let group = FiniteGroup::generated(name, template, gens)?;
        if group.chain.is_none() {
            let _ = group.elements_cell.set(Ok(elements));
        }
        Ok(group)
    }

    /// A group of the same kind as `template` generated by the given elements
    /// (used to promote subgroups into standalone groups).
    pub fn generated(
        name: impl Into<String>,
        template: &Arc<FiniteGroup>,
        gens: Vec<(String, GroupElement)>,
    ) -> Result<Arc<FiniteGroup>> {
        match &template.kind {
            GroupKind::Permutation { degree } => {
                let mut perm_gens = Vec::with_capacity(gens.len());
                for (label, g) in gens {
                    let p = g.as_perm().ok_or(Error::MixedGroupOperands)?.clone();
                    perm_gens.push((label, p));
                }
                FiniteGroup::permutation_with_caps(name, *degree, perm_gens, template.caps)
            }
            kind => {
                check_labels(&gens)?;
                Ok(Arc::new(FiniteGroup {
                    name: name.into(),
                    gens,
                    kind: kind.clone(),
                    caps: template.caps,
                    chain: None,
                    order_cell: OnceLock::new(),
                    elements_cell: OnceLock::new(),
                }))
            }
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn caps(&self) -> Caps {
        self.caps
    }

    pub fn kind(&self) -> &GroupKind {
        &self.kind
    }

    pub fn generators(&self) -> &[(String, GroupElement)] {
        &self.gens
    }

    pub fn generator(&self, label: &str) -> Result<&GroupElement> {
        self.gens
            .iter()
            .find(|(l, _)| l == label)
            .map(|(_, g)| g)
            .ok_or_else(|| Error::UnresolvedReference(label.to_string()))
    }

    pub fn chain(&self) -> Option<&Arc<StabilizerChain>> {
        self.chain.as_ref()
    }

    pub fn degree(&self) -> Option<usize> {
        match &self.kind {
            GroupKind::Permutation { degree } => Some(*degree),
            _ => None,
        }
    }

    pub fn identity(&self) -> GroupElement {
        match &self.kind {
            GroupKind::Permutation { degree } => GroupElement::Perm(Permutation::identity(*degree)),
            GroupKind::Pair { left, right, .. } => {
                GroupElement::pair(left.identity(), right.identity())
            }
            GroupKind::Tuple { factors } => {
                GroupElement::Tuple(factors.iter().map(|f| f.identity()).collect())
            }
        }
    }

    pub fn mul(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        match &self.kind {
            GroupKind::Permutation { degree } => {
                let (ap, bp) = match (a.as_perm(), b.as_perm()) {
                    (Some(ap), Some(bp)) => (ap, bp),
                    _ => return Err(Error::MixedGroupOperands),
                };
                if ap.degree() != *degree || bp.degree() != *degree {
                    return Err(Error::MixedGroupOperands);
                }
                Ok(GroupElement::Perm(ap.compose(bp)))
            }
            GroupKind::Pair {
                left,
                right,
                action,
            } => {
                let (a1, b1) = a.as_pair().ok_or(Error::MixedGroupOperands)?;
                let (a2, b2) = b.as_pair().ok_or(Error::MixedGroupOperands)?;
                let twisted = action.apply(b1, a2)?;
                Ok(GroupElement::pair(
                    left.mul(a1, &twisted)?,
                    right.mul(b1, b2)?,
                ))
            }
            GroupKind::Tuple { factors } => {
                let xs = a.as_tuple().ok_or(Error::MixedGroupOperands)?;
                let ys = b.as_tuple().ok_or(Error::MixedGroupOperands)?;
                if xs.len() != factors.len() || ys.len() != factors.len() {
                    return Err(Error::MixedGroupOperands);
                }
                let mut out = Vec::with_capacity(factors.len());
                for ((f, x), y) in factors.iter().zip(xs).zip(ys) {
                    out.push(f.mul(x, y)?);
                }
                Ok(GroupElement::Tuple(out))
            }
        }
    }

    pub fn inv(&self, g: &GroupElement) -> Result<GroupElement> {
        match &self.kind {
            GroupKind::Permutation { .. } => {
                let p = g.as_perm().ok_or(Error::MixedGroupOperands)?;
                Ok(GroupElement::Perm(p.inverse()))
            }
            GroupKind::Pair {
                left,
                right,
                action,
            } => {
                let (a, b) = g.as_pair().ok_or(Error::MixedGroupOperands)?;
                let b_inv = right.inv(b)?;
                let a_inv = left.inv(a)?;
                Ok(GroupElement::pair(action.apply(&b_inv, &a_inv)?, b_inv))
            }
            GroupKind::Tuple { factors } => {
                let xs = g.as_tuple().ok_or(Error::MixedGroupOperands)?;
                let mut out = Vec::with_capacity(factors.len());
                for (f, x) in factors.iter().zip(xs) {
                    out.push(f.inv(x)?);
                }
                Ok(GroupElement::Tuple(out))
            }
        }
    }

    /// Least `k >= 1` with `g^k = e`.
    pub fn element_order(&self, g: &GroupElement) -> Result<u128> {
        if let (GroupKind::Permutation { .. }, Some(p)) = (&self.kind, g.as_perm()) {
            return Ok(p.order());
        }
        let identity = self.identity();
        let mut power = g.clone();
        let mut k: u128 = 1;
        while power != identity {
            power = self.mul(&power, g)?;
            k += 1;
            if k > self.caps.closure as u128 {
                return Err(Error::CapExceeded {
                    cap: self.caps.closure,
                    reached: self.caps.closure,
                });
            }
        }
        Ok(k)
    }

    /// Exact group order, memoized. Stabilizer chain for permutation groups,
    /// closure size otherwise.
    pub fn order(&self) -> Result<u128> {
        self.order_cell
            .get_or_init(|| match &self.chain {
                Some(chain) => Ok(chain.order()),
                None => self.elements().map(|set| set.len() as u128),
            })
            .clone()
    }

    /// Full element enumeration, memoized; capped by `caps.closure`.
    pub fn elements(&self) -> Result<Arc<ElementSet>> {
        self.elements_cell
            .get_or_init(|| match &self.chain {
                Some(chain) => {
                    let elements = chain.elements(self.caps.closure)?;
                    Ok(Arc::new(
                        elements.into_iter().map(GroupElement::Perm).collect(),
                    ))
                }
                None => {
                    let gens: Vec<GroupElement> =
                        self.gens.iter().map(|(_, g)| g.clone()).collect();
                    let set = closure(&gens, self.identity(), self.caps.closure, |a, b| {
                        self.mul(a, b)
                    })?;
                    Ok(Arc::new(set))
                }
            })
            .clone()
    }

    pub fn contains(&self, g: &GroupElement) -> Result<bool> {
        match (&self.chain, g.as_perm()) {
            (Some(chain), Some(p)) => Ok(chain.contains(p)),
            (Some(_), None) => Ok(false),
            _ => Ok(self.elements()?.contains(g)),
        }
    }
}

fn check_labels(gens: &[(String, GroupElement)]) -> Result<()> {
    let mut seen = std::collections::HashSet::new();
    for (label, _) in gens {
        if !seen.insert(label) {
            return Err(Error::invalid(format!("duplicate generator label {label:?}")));
        }
    }
    Ok(())
}

/// Breadth-first closure of a generating set under `mul`.
pub fn closure<F>(
    gens: &[GroupElement],
    identity: GroupElement,
    cap: usize,
    mul: F,
) -> Result<ElementSet>
where
    F: Fn(&GroupElement, &GroupElement) -> Result<GroupElement>,
{
    let mut set = ElementSet::new();
    let mut queue = VecDeque::new();
    set.insert(identity.clone());
    queue.push_back(identity);
    while let Some(g) = queue.pop_front() {
        for s in gens {
            let h = mul(&g, s)?;
            if set.contains(&h) {
                continue;
            }
            set.insert(h.clone());
            if set.len() > cap {
                return Err(Error::CapExceeded {
                    cap,
                    reached: set.len(),
                });
            }
            queue.push_back(h);
        }
    }
    Ok(set)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub fn sym(n: usize) -> Arc<FiniteGroup> {
        let gens = (1..n as u32)
            .map(|i| {
                (
                    format!("s{i}"),
                    Permutation::from_cycles(&[vec![i, i + 1]], n).unwrap(),
                )
            })
            .collect();
        FiniteGroup::permutation(format!("Sym({n})"), n, gens).unwrap()
    }

    #[test]
    fn arithmetic_on_symmetric_group() {
        let g = sym(4);
        let a = GroupElement::Perm(Permutation::parse("(1,2)", 4).unwrap());
        let b = GroupElement::Perm(Permutation::parse("(2,3)", 4).unwrap());
        let ab = g.mul(&a, &b).unwrap();
        assert_eq!(g.element_order(&ab).unwrap(), 3);
        let inv = g.inv(&ab).unwrap();
        assert_eq!(g.mul(&ab, &inv).unwrap(), g.identity());
        assert_eq!(g.element_order(&g.identity()).unwrap(), 1);
    }

    #[test]
    fn group_order_sym4() {
        let g = sym(4);
        assert_eq!(g.order().unwrap(), 24);
        assert_eq!(g.elements().unwrap().len(), 24);
    }

    #[test]
    fn pair_group_with_trivial_action_is_direct_product() {
        let a = sym(3);
        let b = FiniteGroup::permutation(
            "C2",
            2,
            vec![("t".into(), Permutation::parse("(1,2)", 2).unwrap())],
        )
        .unwrap();
        let g = FiniteGroup::pair(
            "S3xC2",
            a.clone(),
            b.clone(),
            Arc::new(GroupAction::Trivial),
            Caps::default(),
        )
        .unwrap();
        assert_eq!(g.order().unwrap(), 12);
        // factors commute
        let ga = g.generator("s1").unwrap().clone();
        let gb = g.generator("t").unwrap().clone();
        assert_eq!(g.mul(&ga, &gb).unwrap(), g.mul(&gb, &ga).unwrap());
    }

    #[test]
    fn conjugation_semidirect_of_sym4_by_tau() {
        let a = sym(4);
        let tau = Permutation::parse("(1,4)(2,3)", 4).unwrap();
        let b = FiniteGroup::permutation("C2", 4, vec![("tau".into(), tau)]).unwrap();
        let g = FiniteGroup::pair(
            "S4:2",
            a,
            b,
            Arc::new(GroupAction::Conjugation),
            Caps::default(),
        )
        .unwrap();
        assert_eq!(g.order().unwrap(), 48);
        for (_, s) in g.generators() {
            let inv = g.inv(s).unwrap();
            assert_eq!(g.mul(s, &inv).unwrap(), g.identity());
        }
    }

    #[test]
    fn tuple_group_order() {
        let c2 = FiniteGroup::permutation(
            "C2",
            2,
            vec![("a".into(), Permutation::parse("(1,2)", 2).unwrap())],
        )
        .unwrap();
        let g = FiniteGroup::tuple("C2^3", vec![c2.clone(), c2.clone(), c2], Caps::default())
            .unwrap();
        assert_eq!(g.order().unwrap(), 8);
    }

    #[test]
    fn closure_cap_reports() {
        let caps = Caps {
            closure: 10,
            ..Caps::default()
        };
        let gens = (1..5u32)
            .map(|i| {
                (
                    format!("s{i}"),
                    Permutation::from_cycles(&[vec![i, i + 1]], 5).unwrap(),
                )
            })
            .collect();
        let g = FiniteGroup::permutation_with_caps("Sym(5)", 5, gens, caps).unwrap();
        // order via chain is fine, enumeration is capped
        assert_eq!(g.order().unwrap(), 120);
        assert!(matches!(g.elements(), Err(Error::CapExceeded { .. })));
    }
}
