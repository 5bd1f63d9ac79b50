use crate::cgroups::{cgroup_system, coxeter_diagram, CoxeterDiagram, GeneratorSystem};
use crate::cosetgeom::TypeLabel;
use crate::error::{Error, Result};
use crate::groupcore::{
    automorphism_from_images, FiniteGroup, GroupAction, GroupElement, InnerStatus, Permutation,
};
use crate::ops::action::{check_admissible, ValidatedAction};
use crate::ops::twist::{twist, Twist};
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

/// Result of twisting a self-dual string C-group by its duality.
#[derive(Debug, Clone)]
pub struct SelfDualTwist {
    pub twist: Twist,
    pub rank: usize,
    /// The generator system `{rho_F_L} u {tau}` of the twisted group.
    pub generators: GeneratorSystem,
    pub diagram: CoxeterDiagram,
    pub linear: bool,
    /// Whether the duality is inner, with a conjugating witness when it is.
    pub tau_inner: InnerStatus,
}

/// Validate the generator-reversal map `rho_i -> rho_{n-1-i}` as an
/// automorphism `tau` of the group of `s`, returning it together with its
/// inner/outer status.
pub fn duality_automorphism(
    s: &GeneratorSystem,
    search_inner: bool,
) -> Result<crate::groupcore::Automorphism> {
    let n = s.rank();
    let images: Vec<(String, GroupElement)> = (0..n)
        .map(|i| {
            (
                s.generators()[i].0.clone(),
                s.generators()[n - 1 - i].1.clone(),
            )
        })
        .collect();
    automorphism_from_images(s.group(), &images, search_inner)
        .map_err(|e| Error::NotSelfDual(e.to_string()))
}

/// Twist a self-dual string C-group of rank `n` by the order-two group of its
/// duality. Types are the orbits `{i, n-1-i}` plus one type for the duality;
/// the resulting rank is `ceil(n/2) + 1`.
///
/// `reps` maps each orbit label to the chosen member; the choice changes the
/// geometry, so it is an explicit argument everywhere.
pub fn self_dual_twist(
    s: &GeneratorSystem,
    reps: &BTreeMap<TypeLabel, TypeLabel>,
) -> Result<SelfDualTwist> {
    let auto = duality_automorphism(s, true)?;
    let alpha = cgroup_system(s)?;
    let actor = FiniteGroup::permutation_with_caps(
        "<tau>",
        2,
        vec![("tau".into(), Permutation::parse("(1,2)", 2)?)],
        s.group().caps(),
    )?;
    let beta = crate::cosetgeom::CosetSystem::new(
        actor.clone(),
        vec![(
            TypeLabel::name("tau"),
            crate::groupcore::Subgroup::trivial(actor.clone())?,
        )],
    )?;
    // tabulate the order-two action: identity and the duality
    let identity_map: HashMap<GroupElement, GroupElement> = s
        .group()
        .elements()?
        .iter()
        .map(|g| (g.clone(), g.clone()))
        .collect();
    let mut table = HashMap::new();
    table.insert(actor.identity(), Arc::new(identity_map));
    table.insert(
        actor.generator("tau")?.clone(),
        auto.map().clone(),
    );
    let action = ValidatedAction {
        actor: actor.clone(),
        target: s.group().clone(),
        action: Arc::new(GroupAction::Tabulated { table }),
    };
    let twisted = twist(&alpha, &beta, &action, reps)?;
    let rank = twisted.system.rank();
    if rank != s.rank().div_ceil(2) + 1 {
        return Err(Error::invalid(format!(
            "unexpected twisted rank {rank} for n = {}",
            s.rank()
        )));
    }
    // generator system {rho_F_L} u {tau} inside A x| <tau>
    let ea = s.group().identity();
    let eb = actor.identity();
    let mut gens: Vec<(String, GroupElement)> = Vec::new();
    for table in twisted.tables.values() {
        let rep_index = s
            .coset_system()?
            .types()
            .iter()
            .position(|t| *t == table.rep)
            .ok_or_else(|| Error::UnresolvedReference(table.rep.to_string()))?;
        let (label, rho) = &s.generators()[rep_index];
        gens.push((label.clone(), GroupElement::pair(rho.clone(), eb.clone())));
    }
    gens.push((
        "tau".to_string(),
        GroupElement::pair(ea, actor.generator("tau")?.clone()),
    ));
    let generators =
        GeneratorSystem::in_group(twisted.system.group(), "self-dual-twist", gens)?;
    if generators.group().order()? != twisted.system.group().order()? {
        return Err(Error::invalid(
            "twist generators do not generate the whole group",
        ));
    }
    let diagram = coxeter_diagram(&generators)?;
    let linear = diagram.is_linear();
    Ok(SelfDualTwist {
        twist: twisted,
        rank,
        generators,
        diagram,
        linear,
        tau_inner: auto.inner,
    })
}

/// Enumerate every valid representative choice and the resulting twist.
/// Choices are returned in lexicographic order of the chosen members.
pub fn enumerate_self_dual_choices(
    s: &GeneratorSystem,
) -> Result<Vec<(BTreeMap<TypeLabel, TypeLabel>, SelfDualTwist)>> {
    // fail early with NotSelfDual before enumerating anything
    duality_automorphism(s, false)?;
    let alpha = cgroup_system(s)?;
    let actor = FiniteGroup::permutation_with_caps(
        "<tau>",
        2,
        vec![("tau".into(), Permutation::parse("(1,2)", 2)?)],
        s.group().caps(),
    )?;
    let beta = crate::cosetgeom::CosetSystem::new(
        actor.clone(),
        vec![(
            TypeLabel::name("tau"),
            crate::groupcore::Subgroup::trivial(actor.clone())?,
        )],
    )?;
    // type action of the duality on alpha's labels: i -> n-1-i
    let n = s.rank();
    let labels: Vec<TypeLabel> = alpha.types().to_vec();
    let images: Vec<(String, Vec<(TypeLabel, TypeLabel)>)> = vec![(
        "tau".to_string(),
        (0..n)
            .map(|i| (TypeLabel::num(i), TypeLabel::num(n - 1 - i)))
            .collect(),
    )];
    let type_action =
        crate::ops::action::TypeAction::from_generator_images(actor, labels, &images)?;
    let admissibility = check_admissible(&type_action, &beta)?;
    let mut rep_lists: Vec<(TypeLabel, Vec<TypeLabel>)> = admissibility.valid_reps();
    rep_lists.sort_by(|a, b| a.0.cmp(&b.0));
    let mut assignments: Vec<BTreeMap<TypeLabel, TypeLabel>> = vec![BTreeMap::new()];
    for (orbit, choices) in &rep_lists {
        let mut next = Vec::new();
        for partial in &assignments {
            for rep in choices {
                let mut extended = partial.clone();
                extended.insert(orbit.clone(), rep.clone());
                next.push(extended);
            }
        }
        assignments = next;
    }
    let mut out = Vec::new();
    for reps in assignments {
        let twist = self_dual_twist(s, &reps)?;
        out.push((reps, twist));
    }
    Ok(out)
}
