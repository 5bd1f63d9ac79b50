use crate::cosetgeom::{CosetSystem, TypeLabel};
use crate::error::{Error, Result};
use crate::groupcore::{extend_by_words, FiniteGroup, GroupElement, Permutation};
use crate::ops::action::{ActionSpec, ActionSpecKind, TypeAction, ValidatedAction};
use crate::ops::product::tuple_power_system;
use crate::ops::twist::{twist_with_type_action, Twist};
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

/// How the acting group permutes the index set of the product power.
#[derive(Debug, Clone)]
pub enum OmegaAction {
    /// The actor is a permutation group on the slots themselves.
    Natural,
    /// The actor preserves this partition of its permutation domain into
    /// blocks; slots are block indices (1-based).
    Blocks(Vec<Vec<u32>>),
    /// Explicit slot permutation per actor generator label.
    PerGenerator(Vec<(String, Permutation)>),
}

impl OmegaAction {
    /// Slot permutation of every actor element.
    pub fn table(
        &self,
        actor: &Arc<FiniteGroup>,
        slots: usize,
    ) -> Result<HashMap<GroupElement, Permutation>> {
        match self {
            OmegaAction::Natural => {
                let degree = actor
                    .degree()
                    .ok_or_else(|| Error::invalid("natural action needs a permutation actor"))?;
                if degree != slots {
                    return Err(Error::DegreeMismatch(degree, slots));
                }
                let mut table = HashMap::new();
                for g in actor.elements()?.iter() {
                    let p = g.as_perm().ok_or(Error::MixedGroupOperands)?.clone();
                    table.insert(g.clone(), p);
                }
                Ok(table)
            }
            OmegaAction::Blocks(blocks) => {
                if blocks.len() != slots {
                    return Err(Error::DegreeMismatch(blocks.len(), slots));
                }
                let degree = actor
                    .degree()
                    .ok_or_else(|| Error::invalid("block action needs a permutation actor"))?;
                let mut owner = vec![0usize; degree];
                let mut assigned = vec![false; degree];
                for (k, block) in blocks.iter().enumerate() {
                    if block.is_empty() {
                        return Err(Error::invalid("empty block"));
                    }
                    for &p in block {
                        if p == 0 || p as usize > degree {
                            return Err(Error::PointOutOfRange {
                                point: p as u64,
                                degree,
                            });
                        }
                        if assigned[p as usize - 1] {
                            return Err(Error::invalid(format!("point {p} in two blocks")));
                        }
                        assigned[p as usize - 1] = true;
                        owner[p as usize - 1] = k;
                    }
                }
                if assigned.iter().any(|a| !a) {
                    return Err(Error::invalid("blocks do not cover the domain"));
                }
                let mut table = HashMap::new();
                for g in actor.elements()?.iter() {
                    let p = g.as_perm().ok_or(Error::MixedGroupOperands)?;
                    let mut images = vec![0u32; slots];
                    for (k, block) in blocks.iter().enumerate() {
                        let image_block = owner[p.apply(block[0]) as usize - 1];
                        for &point in block {
                            if owner[p.apply(point) as usize - 1] != image_block {
                                return Err(Error::invalid(format!(
                                    "element {p} does not preserve the blocks"
                                )));
                            }
                        }
                        images[k] = image_block as u32 + 1;
                    }
                    table.insert(g.clone(), Permutation::from_images(images)?);
                }
                Ok(table)
            }
            OmegaAction::PerGenerator(per_gen) => {
                let mut gen_values = Vec::new();
                for (label, p) in per_gen {
                    if p.degree() != slots {
                        return Err(Error::DegreeMismatch(p.degree(), slots));
                    }
                    gen_values.push((actor.generator(label)?.clone(), p.clone()));
                }
                if gen_values.len() != actor.generators().len() {
                    return Err(Error::invalid("images must cover every actor generator"));
                }
                extend_by_words(actor, Permutation::identity(slots), &gen_values, |a, b| {
                    Ok(a.compose(b))
                })
            }
        }
    }
}

/// The wreath product of `alpha` by `beta` over the given slot action: the
/// product power of `alpha` is built with the coordinate-permutation action
/// and twisted by `beta`.
pub fn wreath(
    alpha: &CosetSystem,
    beta: &CosetSystem,
    omega: &OmegaAction,
    slots: usize,
    reps: &BTreeMap<TypeLabel, TypeLabel>,
) -> Result<Twist> {
    let abar = tuple_power_system(alpha, slots)?;
    let table = omega.table(beta.group(), slots)?;
    let per_gen: Vec<(String, Permutation)> = beta
        .group()
        .generators()
        .iter()
        .map(|(label, g)| (label.clone(), table[g].clone()))
        .collect();
    let spec = ActionSpec {
        actor: beta.group().clone(),
        target: abar.group().clone(),
        kind: ActionSpecKind::SlotPermutation(per_gen),
    };
    let action = spec.validate()?;
    // type action directly from the slot table: the action sends the
    // parabolic at (i, w) to the one at (i, w^(pi(b)^-1))
    let type_action = wreath_type_action(&action, &abar, alpha, &table, slots)?;
    twist_with_type_action(&abar, beta, &action, type_action, reps)
}

fn wreath_type_action(
    action: &ValidatedAction,
    abar: &CosetSystem,
    alpha: &CosetSystem,
    table: &HashMap<GroupElement, Permutation>,
    slots: usize,
) -> Result<TypeAction> {
    // cross-check the closed form against the generic subgroup matching
    let generic = TypeAction::from_action(action, abar)?;
    for (b, pi) in table {
        let pi_inv = pi.inverse();
        for t in alpha.types() {
            for slot in 1..=slots as u32 {
                let label = TypeLabel::indexed(t.clone(), slot);
                let expected = TypeLabel::indexed(t.clone(), pi_inv.apply(slot));
                if generic.apply(b, &label)? != expected {
                    return Err(Error::invalid(
                        "slot action disagrees with parabolic matching",
                    ));
                }
            }
        }
    }
    Ok(generic)
}

/// Natural permutation realization of an element of `C2 wr_Omega B` when the
/// base is a tuple power of the order-two group and `B` permutes 2-point
/// blocks: slot `w`'s toggle becomes the transposition of block `w`.
pub fn realize_c2_wreath(element: &GroupElement, blocks: &[Vec<u32>], degree: usize) -> Result<Permutation> {
    let (base, top) = element.as_pair().ok_or(Error::MixedGroupOperands)?;
    let slots = base.as_tuple().ok_or(Error::MixedGroupOperands)?;
    if slots.len() != blocks.len() {
        return Err(Error::DegreeMismatch(slots.len(), blocks.len()));
    }
    let mut perm = Permutation::identity(degree);
    for (slot, g) in slots.iter().enumerate() {
        let p = g.as_perm().ok_or(Error::MixedGroupOperands)?;
        if p.is_identity() {
            continue;
        }
        let block = &blocks[slot];
        if block.len() != 2 {
            return Err(Error::invalid("realization needs 2-point blocks"));
        }
        perm = perm.compose(&Permutation::from_cycles(
            &[vec![block[0], block[1]]],
            degree,
        )?);
    }
    let top = top.as_perm().ok_or(Error::MixedGroupOperands)?;
    if top.degree() != degree {
        return Err(Error::DegreeMismatch(top.degree(), degree));
    }
    Ok(perm.compose(top))
}
