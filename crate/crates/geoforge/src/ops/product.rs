use crate::cosetgeom::{CosetSystem, TypeLabel};
use crate::error::{Error, Result};
use crate::groupcore::{FiniteGroup, GroupElement, Subgroup};
use crate::ops::action::ValidatedAction;
use std::collections::BTreeSet;
use std::sync::Arc;

/// Direct product of two coset systems over the disjoint union of their type
/// sets: `G_i = A_i x B` for alpha types, `A x B_i` for beta types.
pub fn direct_product(alpha: &CosetSystem, beta: &CosetSystem) -> Result<CosetSystem> {
    let mut seen: BTreeSet<TypeLabel> = BTreeSet::new();
    for t in alpha.types().iter().chain(beta.types()) {
        if !seen.insert(t.clone()) {
            return Err(Error::TypeLabelCollision(t.clone()));
        }
    }
    let a = alpha.group().clone();
    let b = beta.group().clone();
    let group = FiniteGroup::tuple(
        format!("{} x {}", a.name(), b.name()),
        vec![a.clone(), b.clone()],
        a.caps(),
    )?;
    let ea = a.identity();
    let eb = b.identity();
    let embed = |xs: &[GroupElement], left: bool| -> Vec<GroupElement> {
        xs.iter()
            .map(|g| {
                if left {
                    GroupElement::Tuple(vec![g.clone(), eb.clone()])
                } else {
                    GroupElement::Tuple(vec![ea.clone(), g.clone()])
                }
            })
            .collect()
    };
    let a_full = embed(
        &a.generators().iter().map(|(_, g)| g.clone()).collect::<Vec<_>>(),
        true,
    );
    let b_full = embed(
        &b.generators().iter().map(|(_, g)| g.clone()).collect::<Vec<_>>(),
        false,
    );
    let mut parabolics = Vec::new();
    for t in alpha.types() {
        let ai = alpha.maximal_parabolic(t)?;
        let mut gens = embed(ai.generators(), true);
        gens.extend(b_full.iter().cloned());
        parabolics.push((t.clone(), Subgroup::generated_unchecked(group.clone(), gens)?));
    }
    for t in beta.types() {
        let bi = beta.maximal_parabolic(t)?;
        let mut gens = a_full.clone();
        gens.extend(embed(bi.generators(), false));
        parabolics.push((t.clone(), Subgroup::generated_unchecked(group.clone(), gens)?));
    }
    CosetSystem::new(group, parabolics)
}

/// The product system `prod_{w in 1..=copies} alpha` over types `i@w`, on the
/// tuple power of alpha's group.
pub fn tuple_power_system(alpha: &CosetSystem, copies: usize) -> Result<CosetSystem> {
    if copies == 0 {
        return Err(Error::invalid("empty products are not supported"));
    }
    let a = alpha.group().clone();
    let factors: Vec<Arc<FiniteGroup>> = (0..copies).map(|_| a.clone()).collect();
    let group = FiniteGroup::tuple(
        format!("{}^{copies}", a.name()),
        factors,
        a.caps(),
    )?;
    let identities: Vec<GroupElement> = (0..copies).map(|_| a.identity()).collect();
    let at_slot = |g: &GroupElement, slot: usize| -> GroupElement {
        let mut xs = identities.clone();
        xs[slot] = g.clone();
        GroupElement::Tuple(xs)
    };
    let mut parabolics = Vec::new();
    for slot in 0..copies {
        for t in alpha.types() {
            let label = TypeLabel::indexed(t.clone(), slot as u32 + 1);
            let mut gens = Vec::new();
            for other in 0..copies {
                if other == slot {
                    for g in alpha.maximal_parabolic(t)?.generators() {
                        gens.push(at_slot(g, slot));
                    }
                } else {
                    for (_, g) in a.generators() {
                        gens.push(at_slot(g, other));
                    }
                }
            }
            parabolics.push((label, Subgroup::generated_unchecked(group.clone(), gens)?));
        }
    }
    CosetSystem::new(group, parabolics)
}

/// Semidirect product `A x| B` on pair elements, with multiplication
/// `(a1, b1)(a2, b2) = (a1 * phi(b1)(a2), b1 b2)`.
pub fn semidirect(action: &ValidatedAction) -> Result<Arc<FiniteGroup>> {
    FiniteGroup::pair(
        format!("{} x| {}", action.target.name(), action.actor.name()),
        action.target.clone(),
        action.actor.clone(),
        action.action.clone(),
        action.target.caps(),
    )
}
