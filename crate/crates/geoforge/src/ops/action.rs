use crate::cosetgeom::{subsets_in_order, CosetSystem, TypeLabel, TypeSet};
use crate::error::{Error, Result};
use crate::groupcore::{
    automorphism_from_images, extend_by_words, FiniteGroup, GroupAction, GroupElement, Permutation,
};
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

/// How an action of `actor` on `target` by automorphisms is specified.
#[derive(Debug, Clone)]
pub enum ActionSpecKind {
    Trivial,
    /// Both groups are permutation groups of one degree; actor generators
    /// conjugate the target (automatically automorphisms once the target is
    /// normalized).
    Conjugation,
    /// Per actor-generator label, images of the target's generators.
    GeneratorImages(BTreeMap<String, Vec<(String, GroupElement)>>),
    /// The target is a tuple power and each actor element permutes slots;
    /// per actor-generator label, the slot permutation.
    SlotPermutation(Vec<(String, Permutation)>),
}

/// An action `phi` of `actor` (B) on `target` (A) by automorphisms, before
/// validation.
#[derive(Debug, Clone)]
pub struct ActionSpec {
    pub actor: Arc<FiniteGroup>,
    pub target: Arc<FiniteGroup>,
    pub kind: ActionSpecKind,
}

impl ActionSpec {
    pub fn trivial(actor: Arc<FiniteGroup>, target: Arc<FiniteGroup>) -> ActionSpec {
        ActionSpec {
            actor,
            target,
            kind: ActionSpecKind::Trivial,
        }
    }

    pub fn conjugation(actor: Arc<FiniteGroup>, target: Arc<FiniteGroup>) -> ActionSpec {
        ActionSpec {
            actor,
            target,
            kind: ActionSpecKind::Conjugation,
        }
    }

    pub fn generator_images(
        actor: Arc<FiniteGroup>,
        target: Arc<FiniteGroup>,
        images: BTreeMap<String, Vec<(String, GroupElement)>>,
    ) -> ActionSpec {
        ActionSpec {
            actor,
            target,
            kind: ActionSpecKind::GeneratorImages(images),
        }
    }

    /// Fast screen: generator images must preserve orders of generators and
    /// of pairwise generator products. Catches most typos; certifies nothing.
    pub fn validate_fast(&self) -> Result<()> {
        match &self.kind {
            ActionSpecKind::Trivial | ActionSpecKind::Conjugation => Ok(()),
            ActionSpecKind::SlotPermutation(_) => Ok(()),
            ActionSpecKind::GeneratorImages(images) => {
                let target_gens = self.target.generators();
                for (actor_label, list) in images {
                    let image_of = |label: &str| -> Result<&GroupElement> {
                        list.iter()
                            .find(|(l, _)| l == label)
                            .map(|(_, g)| g)
                            .ok_or_else(|| {
                                Error::invalid(format!(
                                    "action of {actor_label} misses generator {label}"
                                ))
                            })
                    };
                    for (la, a) in target_gens {
                        let ia = image_of(la)?;
                        if self.target.element_order(a)? != self.target.element_order(ia)? {
                            return Err(Error::invalid(format!(
                                "action of {actor_label} changes the order of {la}"
                            )));
                        }
                        for (lb, b) in target_gens {
                            let ib = image_of(lb)?;
                            let ab = self.target.mul(a, b)?;
                            let iab = self.target.mul(ia, ib)?;
                            if self.target.element_order(&ab)?
                                != self.target.element_order(&iab)?
                            {
                                return Err(Error::invalid(format!(
                                    "action of {actor_label} changes the order of {la}*{lb}"
                                )));
                            }
                        }
                    }
                }
                Ok(())
            }
        }
    }

    /// Exhaustive validation. Generator-image actions are certified by
    /// breadth-first automorphism construction per actor generator, then
    /// extended to every actor element with a word-independence check.
    /// Conjugation and slot-permutation actions are exact by construction
    /// (conjugating generators are still checked to normalize the target).
    pub fn validate(&self) -> Result<ValidatedAction> {
        let action = match &self.kind {
            ActionSpecKind::Trivial => GroupAction::Trivial,
            ActionSpecKind::Conjugation => {
                let da = self
                    .target
                    .degree()
                    .ok_or_else(|| Error::invalid("conjugation needs permutation groups"))?;
                let db = self
                    .actor
                    .degree()
                    .ok_or_else(|| Error::invalid("conjugation needs permutation groups"))?;
                if da != db {
                    return Err(Error::DegreeMismatch(da, db));
                }
                for (_, b) in self.actor.generators() {
                    for (_, a) in self.target.generators() {
                        for conj in [
                            GroupAction::Conjugation.apply(b, a)?,
                            GroupAction::Conjugation.apply(&self.actor.inv(b)?, a)?,
                        ] {
                            if !self.target.contains(&conj)? {
                                return Err(Error::invalid(
                                    "conjugation does not normalize the target group",
                                ));
                            }
                        }
                    }
                }
                GroupAction::Conjugation
            }
            ActionSpecKind::GeneratorImages(images) => {
                let mut gen_values: Vec<(GroupElement, Arc<HashMap<GroupElement, GroupElement>>)> =
                    Vec::new();
                for (actor_label, list) in images {
                    let b = self.actor.generator(actor_label)?.clone();
                    let auto = automorphism_from_images(&self.target, list, false)?;
                    gen_values.push((b, auto.map().clone()));
                }
                if gen_values.len() != self.actor.generators().len() {
                    return Err(Error::invalid("images must cover every actor generator"));
                }
                let identity_map: Arc<HashMap<GroupElement, GroupElement>> = Arc::new(
                    self.target
                        .elements()?
                        .iter()
                        .map(|g| (g.clone(), g.clone()))
                        .collect(),
                );
                let table = extend_by_words(&self.actor, identity_map, &gen_values, |f, g| {
                    // phi(x*s) = phi(x) o phi(s)
                    let mut composed = HashMap::with_capacity(g.len());
                    for (k, v) in g.iter() {
                        composed.insert(
                            k.clone(),
                            f.get(v).cloned().ok_or(Error::MixedGroupOperands)?,
                        );
                    }
                    Ok(Arc::new(composed))
                })?;
                GroupAction::Tabulated { table }
            }
            ActionSpecKind::SlotPermutation(per_gen) => {
                let slots = match self.target.kind() {
                    crate::groupcore::GroupKind::Tuple { factors } => factors.len(),
                    _ => return Err(Error::invalid("slot permutation needs a tuple target")),
                };
                let mut gen_values = Vec::new();
                for (label, pi) in per_gen {
                    if pi.degree() != slots {
                        return Err(Error::DegreeMismatch(pi.degree(), slots));
                    }
                    gen_values.push((self.actor.generator(label)?.clone(), pi.clone()));
                }
                if gen_values.len() != self.actor.generators().len() {
                    return Err(Error::invalid("images must cover every actor generator"));
                }
                let table = extend_by_words(
                    &self.actor,
                    Permutation::identity(slots),
                    &gen_values,
                    |a, b| Ok(a.compose(b)),
                )?;
                GroupAction::CoordinatePermutation { table }
            }
        };
        Ok(ValidatedAction {
            actor: self.actor.clone(),
            target: self.target.clone(),
            action: Arc::new(action),
        })
    }
}

/// An exhaustively validated action, ready for semidirect products.
#[derive(Debug, Clone)]
pub struct ValidatedAction {
    pub actor: Arc<FiniteGroup>,
    pub target: Arc<FiniteGroup>,
    pub action: Arc<GroupAction>,
}

impl ValidatedAction {
    /// `phi(b)(a)`.
    pub fn apply(&self, b: &GroupElement, a: &GroupElement) -> Result<GroupElement> {
        self.action.apply(b, a)
    }
}

/// The action of the actor on the target system's type set: a homomorphism
/// into the permutations of the type labels, with its orbit partition.
#[derive(Debug, Clone)]
pub struct TypeAction {
    actor: Arc<FiniteGroup>,
    labels: Vec<TypeLabel>,
    /// Per actor element, the label-index map applied as a function.
    table: HashMap<GroupElement, Vec<usize>>,
    orbits: Vec<Vec<usize>>,
}

impl TypeAction {
    pub fn actor(&self) -> &Arc<FiniteGroup> {
        &self.actor
    }

    pub fn labels(&self) -> &[TypeLabel] {
        &self.labels
    }

    /// Orbits as sorted label lists, ordered by their first label.
    pub fn orbits(&self) -> Vec<Vec<TypeLabel>> {
        self.orbits
            .iter()
            .map(|orbit| orbit.iter().map(|&i| self.labels[i].clone()).collect())
            .collect()
    }

    pub fn orbit_of(&self, label: &TypeLabel) -> Result<Vec<TypeLabel>> {
        let idx = self.index_of(label)?;
        let orbit = self
            .orbits
            .iter()
            .find(|orbit| orbit.contains(&idx))
            .expect("orbits partition the labels");
        Ok(orbit.iter().map(|&i| self.labels[i].clone()).collect())
    }

    fn index_of(&self, label: &TypeLabel) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnresolvedReference(label.to_string()))
    }

    /// `b(label)`.
    pub fn apply(&self, b: &GroupElement, label: &TypeLabel) -> Result<TypeLabel> {
        let map = self.table.get(b).ok_or(Error::ActionNotValidated)?;
        Ok(self.labels[map[self.index_of(label)?]].clone())
    }

    /// Orbit of `label` under a set of actor elements forming a subgroup.
    pub fn orbit_under(
        &self,
        label: &TypeLabel,
        subgroup_elements: &crate::groupcore::ElementSet,
    ) -> Result<BTreeSet<TypeLabel>> {
        let idx = self.index_of(label)?;
        let mut out = BTreeSet::new();
        for b in subgroup_elements.iter() {
            let map = self.table.get(b).ok_or(Error::ActionNotValidated)?;
            out.insert(self.labels[map[idx]].clone());
        }
        Ok(out)
    }

    /// Build from explicit label images per actor generator, verifying the
    /// extension to a homomorphism.
    pub fn from_generator_images(
        actor: Arc<FiniteGroup>,
        labels: Vec<TypeLabel>,
        images: &[(String, Vec<(TypeLabel, TypeLabel)>)],
    ) -> Result<TypeAction> {
        let mut gen_values = Vec::new();
        for (actor_label, pairs) in images {
            let b = actor.generator(actor_label)?.clone();
            let mut map = vec![usize::MAX; labels.len()];
            for (from, to) in pairs {
                let fi = labels
                    .iter()
                    .position(|l| l == from)
                    .ok_or_else(|| Error::UnresolvedReference(from.to_string()))?;
                let ti = labels
                    .iter()
                    .position(|l| l == to)
                    .ok_or_else(|| Error::UnresolvedReference(to.to_string()))?;
                map[fi] = ti;
            }
            for (i, slot) in map.iter_mut().enumerate() {
                if *slot == usize::MAX {
                    *slot = i;
                }
            }
            let mut seen = vec![false; labels.len()];
            for &t in &map {
                if seen[t] {
                    return Err(Error::NotBijective);
                }
                seen[t] = true;
            }
            gen_values.push((b, map));
        }
        Self::extend(actor, labels, gen_values)
    }

    /// Compute the type action of a validated group action on a system:
    /// `b(i)` is found by matching the image of each maximal parabolic.
    pub fn from_action(action: &ValidatedAction, alpha: &CosetSystem) -> Result<TypeAction> {
        if !Arc::ptr_eq(&action.target, alpha.group()) {
            return Err(Error::MixedGroupOperands);
        }
        let labels: Vec<TypeLabel> = alpha.types().to_vec();
        // the matching below is ambiguous if two parabolics coincide
        for (i, a) in labels.iter().enumerate() {
            for b in labels.iter().skip(i + 1) {
                if alpha
                    .maximal_parabolic(a)?
                    .equal_elements(&alpha.maximal_parabolic(b)?)?
                {
                    return Err(Error::invalid(format!(
                        "parabolics {a} and {b} coincide; type action undefined"
                    )));
                }
            }
        }
        let mut gen_values = Vec::new();
        for (gen_label, b) in action.actor.generators() {
            let mut map = vec![usize::MAX; labels.len()];
            for (i, label) in labels.iter().enumerate() {
                let sub = alpha.maximal_parabolic(label)?;
                let mut image_gens = Vec::with_capacity(sub.generators().len());
                for g in sub.generators() {
                    image_gens.push(action.apply(b, g)?);
                }
                let image =
                    crate::groupcore::Subgroup::generated(alpha.group().clone(), image_gens)?;
                let target = labels.iter().enumerate().find_map(|(j, cand)| {
                    match alpha.maximal_parabolic(cand) {
                        Ok(pj) => match image.equal_elements(&pj) {
                            Ok(true) => Some(Ok(j)),
                            Ok(false) => None,
                            Err(e) => Some(Err(e)),
                        },
                        Err(e) => Some(Err(e)),
                    }
                });
                match target {
                    Some(Ok(j)) => map[i] = j,
                    Some(Err(e)) => return Err(e),
                    None => {
                        return Err(Error::NotParabolicPermuting {
                            generator: gen_label.clone(),
                            type_label: label.clone(),
                        })
                    }
                }
            }
            gen_values.push((b.clone(), map));
        }
        Self::extend(action.actor.clone(), labels, gen_values)
    }

    fn extend(
        actor: Arc<FiniteGroup>,
        labels: Vec<TypeLabel>,
        gen_values: Vec<(GroupElement, Vec<usize>)>,
    ) -> Result<TypeAction> {
        let identity_map: Vec<usize> = (0..labels.len()).collect();
        let table = extend_by_words(&actor, identity_map, &gen_values, |f, g| {
            // t(x*s) = t(x) o t(s)
            Ok(g.iter().map(|&i| f[i]).collect())
        })?;
        // orbit partition, each orbit sorted, orbits by first member
        let mut seen = vec![false; labels.len()];
        let mut orbits = Vec::new();
        for start in 0..labels.len() {
            if seen[start] {
                continue;
            }
            let mut orbit = BTreeSet::new();
            for map in table.values() {
                orbit.insert(map[start]);
            }
            let orbit: Vec<usize> = orbit.into_iter().collect();
            for &i in &orbit {
                seen[i] = true;
            }
            orbits.push(orbit);
        }
        orbits.sort_by_key(|orbit| labels[orbit[0]].clone());
        Ok(TypeAction {
            actor,
            labels,
            table,
            orbits,
        })
    }
}

/// The orbit table of a representative: `M -> ^LO_M`, the orbit of the
/// representative under the parabolic `B_{I_beta \ M}`.
#[derive(Debug, Clone)]
pub struct OrbitTable {
    pub orbit: Vec<TypeLabel>,
    pub rep: TypeLabel,
    beta_types: TypeSet,
    by_lower: BTreeMap<TypeSet, BTreeSet<TypeLabel>>,
}

impl OrbitTable {
    /// `^LO_M`.
    pub fn lower(&self, m: &TypeSet) -> Result<&BTreeSet<TypeLabel>> {
        self.by_lower
            .get(m)
            .ok_or_else(|| Error::invalid(format!("no table entry for M = {m:?}")))
    }

    /// `^LO^J = ^LO_{I_beta \ J}`, the orbit of the representative under `B_J`.
    pub fn upper(&self, j: &TypeSet) -> Result<&BTreeSet<TypeLabel>> {
        let complement: TypeSet = self.beta_types.difference(j).cloned().collect();
        self.lower(&complement)
    }

    /// First `(M, N)` violating `^LO_M /\ ^LO_N = ^LO_{M /\ N}`, if any.
    pub fn ipo_violation(&self) -> Option<(TypeSet, TypeSet)> {
        let subsets: Vec<&TypeSet> = self.by_lower.keys().collect();
        for m in &subsets {
            for n in &subsets {
                let meet: TypeSet = m.intersection(n).cloned().collect();
                let lhs: BTreeSet<TypeLabel> = self.by_lower[*m]
                    .intersection(&self.by_lower[*n])
                    .cloned()
                    .collect();
                if lhs != self.by_lower[&meet] {
                    return Some(((*m).clone(), (*n).clone()));
                }
            }
        }
        None
    }

    pub fn satisfies_ipo(&self) -> bool {
        self.ipo_violation().is_none()
    }
}

/// Compute the orbit table of candidate representative `rep` of `orbit`.
pub fn orbit_table(
    type_action: &TypeAction,
    beta: &CosetSystem,
    rep: &TypeLabel,
) -> Result<OrbitTable> {
    let orbit = type_action.orbit_of(rep)?;
    let beta_types = beta.type_set();
    let mut by_lower = BTreeMap::new();
    for m in subsets_in_order(beta.types()) {
        let complement: TypeSet = beta_types.difference(&m).cloned().collect();
        let parabolic = beta.parabolic(&complement)?;
        let elements = parabolic.elements()?;
        by_lower.insert(m, type_action.orbit_under(rep, &elements)?);
    }
    Ok(OrbitTable {
        orbit,
        rep: rep.clone(),
        beta_types,
        by_lower,
    })
}

/// Admissibility data: per orbit, every representative whose orbit table
/// satisfies (IPO).
#[derive(Debug, Clone)]
pub struct Admissibility {
    pub per_orbit: Vec<OrbitChoices>,
}

#[derive(Debug, Clone)]
pub struct OrbitChoices {
    pub orbit: Vec<TypeLabel>,
    pub valid: Vec<OrbitTable>,
}

impl Admissibility {
    pub fn is_admissible(&self) -> bool {
        self.per_orbit.iter().all(|c| !c.valid.is_empty())
    }

    pub fn first_empty_orbit(&self) -> Option<TypeLabel> {
        self.per_orbit
            .iter()
            .find(|c| c.valid.is_empty())
            .map(|c| TypeLabel::orbit(c.orbit.clone()))
    }

    pub fn table_for(&self, rep: &TypeLabel) -> Option<&OrbitTable> {
        self.per_orbit
            .iter()
            .flat_map(|c| c.valid.iter())
            .find(|t| t.rep == *rep)
    }

    /// Valid representatives per orbit, labels only.
    pub fn valid_reps(&self) -> Vec<(TypeLabel, Vec<TypeLabel>)> {
        self.per_orbit
            .iter()
            .map(|c| {
                (
                    TypeLabel::orbit(c.orbit.clone()),
                    c.valid.iter().map(|t| t.rep.clone()).collect(),
                )
            })
            .collect()
    }
}

/// For each orbit of the type action, collect every representative whose
/// orbit table satisfies (IPO) for all `M, N` (empty sets included).
pub fn check_admissible(type_action: &TypeAction, beta: &CosetSystem) -> Result<Admissibility> {
    let mut per_orbit = Vec::new();
    for orbit in type_action.orbits() {
        let mut valid = Vec::new();
        for rep in &orbit {
            let table = orbit_table(type_action, beta, rep)?;
            if table.satisfies_ipo() {
                valid.push(table);
            }
        }
        per_orbit.push(OrbitChoices { orbit, valid });
    }
    Ok(Admissibility { per_orbit })
}
