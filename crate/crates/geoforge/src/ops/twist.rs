use crate::cosetgeom::{CosetSystem, TypeLabel, TypeSet};
use crate::error::{Error, Result};
use crate::groupcore::{ElementSet, FiniteGroup, GroupElement, Subgroup};
use crate::ops::action::{check_admissible, OrbitTable, TypeAction, ValidatedAction};
use crate::ops::product::semidirect;
use std::collections::BTreeMap;
use std::sync::Arc;

/// A twisted coset system together with the data needed to evaluate the
/// closed-form parabolic formula independently of subgroup intersections.
#[derive(Debug, Clone)]
pub struct Twist {
    pub system: CosetSystem,
    pub alpha: CosetSystem,
    pub beta: CosetSystem,
    pub action: ValidatedAction,
    pub type_action: TypeAction,
    /// Chosen representative table per orbit label.
    pub tables: BTreeMap<TypeLabel, OrbitTable>,
}

/// The twisting of `alpha` by `beta` with respect to a validated action and
/// an explicit choice of orbit representatives.
///
/// The type set is the disjoint union of beta's types and the orbit labels
/// (orbit labels first, each the sorted tuple of its members). Maximal
/// parabolics:
/// for beta types `i`, the base part is the parabolic of alpha over
/// everything outside the union of the representative orbits under `B_i`;
/// for an orbit label `L`, the base part is `A_L` and the acting part all of
/// `B`.
pub fn twist(
    alpha: &CosetSystem,
    beta: &CosetSystem,
    action: &ValidatedAction,
    reps: &BTreeMap<TypeLabel, TypeLabel>,
) -> Result<Twist> {
    let type_action = TypeAction::from_action(action, alpha)?;
    twist_with_type_action(alpha, beta, action, type_action, reps)
}

pub(crate) fn twist_with_type_action(
    alpha: &CosetSystem,
    beta: &CosetSystem,
    action: &ValidatedAction,
    type_action: TypeAction,
    reps: &BTreeMap<TypeLabel, TypeLabel>,
) -> Result<Twist> {
    if !Arc::ptr_eq(&action.actor, beta.group()) {
        return Err(Error::MixedGroupOperands);
    }
    let admissibility = check_admissible(&type_action, beta)?;
    if let Some(orbit) = admissibility.first_empty_orbit() {
        return Err(Error::NotAdmissible(orbit));
    }
    // every orbit needs a chosen representative, and it must satisfy (IPO)
    let mut tables: BTreeMap<TypeLabel, OrbitTable> = BTreeMap::new();
    for choice in &admissibility.per_orbit {
        let orbit_label = TypeLabel::orbit(choice.orbit.clone());
        let rep = reps.get(&orbit_label).ok_or_else(|| {
            Error::invalid(format!("no representative chosen for orbit {orbit_label}"))
        })?;
        if !choice.orbit.contains(rep) {
            return Err(Error::RepNotValid {
                orbit: orbit_label,
                rep: rep.clone(),
            });
        }
        match choice.valid.iter().find(|t| t.rep == *rep) {
            Some(table) => {
                tables.insert(orbit_label, table.clone());
            }
            None => {
                return Err(Error::RepNotValid {
                    orbit: orbit_label,
                    rep: rep.clone(),
                })
            }
        }
    }
    let group = semidirect(action)?;
    let ea = action.target.identity();
    let eb = action.actor.identity();
    let base = |g: &GroupElement| GroupElement::pair(g.clone(), eb.clone());
    let act = |g: &GroupElement| GroupElement::pair(ea.clone(), g.clone());

    let mut parabolics = Vec::new();
    // orbit types: A_L x| B
    for (orbit_label, table) in &tables {
        let members: TypeSet = table.orbit.iter().cloned().collect();
        let a_part = alpha.parabolic(&members)?;
        let mut gens: Vec<GroupElement> = a_part.generators().iter().map(&base).collect();
        for (_, b) in action.actor.generators() {
            gens.push(act(b));
        }
        parabolics.push((
            orbit_label.clone(),
            Subgroup::generated_unchecked(group.clone(), gens)?,
        ));
    }
    // beta types: A_{I_alpha \ U_L ^LO^i} x| B_i
    for i in beta.types() {
        let j: TypeSet = [i.clone()].into_iter().collect();
        let mut shielded: TypeSet = type_action.labels().iter().cloned().collect();
        for table in tables.values() {
            for t in table.upper(&j)? {
                shielded.remove(t);
            }
        }
        let a_part = alpha.parabolic(&shielded)?;
        let b_part = beta.maximal_parabolic(i)?;
        let mut gens: Vec<GroupElement> = a_part.generators().iter().map(&base).collect();
        gens.extend(b_part.generators().iter().map(&act));
        parabolics.push((
            i.clone(),
            Subgroup::generated_unchecked(group.clone(), gens)?,
        ));
    }
    let system = CosetSystem::new(group, parabolics)?;
    Ok(Twist {
        system,
        alpha: alpha.clone(),
        beta: beta.clone(),
        action: action.clone(),
        type_action,
        tables,
    })
}

impl Twist {
    /// Orbit labels, in type order.
    pub fn orbit_labels(&self) -> Vec<TypeLabel> {
        self.tables.keys().cloned().collect()
    }

    /// The parabolic `G_J` by the closed formula
    /// `A_{[J_alpha]} x| B_{J_beta}` with
    /// `[J_alpha] = J_alpha u (I_alpha \ U_L ^LO^{J_beta})`,
    /// built as a literal cartesian element set. This is the independent
    /// route checked against plain subgroup intersection.
    pub fn formula_parabolic(&self, j_set: &TypeSet) -> Result<Subgroup> {
        let beta_types = self.beta.type_set();
        let j_beta: TypeSet = j_set.intersection(&beta_types).cloned().collect();
        let mut bracket: TypeSet = TypeSet::new();
        for t in j_set {
            if let Some(members) = t.orbit_members() {
                if self.tables.contains_key(t) {
                    bracket.extend(members.iter().cloned());
                } else {
                    return Err(Error::UnresolvedReference(t.to_string()));
                }
            } else if !beta_types.contains(t) {
                return Err(Error::UnresolvedReference(t.to_string()));
            }
        }
        let mut outside: TypeSet = self.type_action.labels().iter().cloned().collect();
        for table in self.tables.values() {
            for covered in table.upper(&j_beta)? {
                outside.remove(covered);
            }
        }
        bracket.extend(outside);
        let a_part = self.alpha.parabolic(&bracket)?.elements()?;
        let b_part = self.beta.parabolic(&j_beta)?.elements()?;
        let mut set = ElementSet::new();
        for a in a_part.iter() {
            for b in b_part.iter() {
                set.insert(GroupElement::pair(a.clone(), b.clone()));
            }
        }
        Subgroup::from_elements_unchecked(self.system.group().clone(), Arc::new(set))
    }
}

/// Element-bijective comparison of a semidirect product with trivial action
/// against the direct product group (tuple shape).
pub fn trivial_twist_matches_direct_product(
    pair_group: &Arc<FiniteGroup>,
    tuple_group: &Arc<FiniteGroup>,
) -> Result<bool> {
    let pairs = pair_group.elements()?;
    let tuples = tuple_group.elements()?;
    if pairs.len() != tuples.len() {
        return Ok(false);
    }
    for g in pairs.iter() {
        let (a, b) = g.as_pair().ok_or(Error::MixedGroupOperands)?;
        let as_tuple = GroupElement::Tuple(vec![a.clone(), b.clone()]);
        if !tuples.contains(&as_tuple) {
            return Ok(false);
        }
    }
    Ok(true)
}
