//! Named example systems: the worked examples bundled for the regression
//! suite, the runnable examples, and the tests.

use crate::cgroups::{builtin_family, cgroup_system, Family, GeneratorSystem};
use crate::cosetgeom::{CosetSystem, TypeLabel};
use crate::error::Result;
use crate::groupcore::{FiniteGroup, GroupElement, Permutation, Subgroup};
use crate::ops::{direct_product, twist, wreath, ActionSpec, OmegaAction, Twist, ValidatedAction};
use std::collections::BTreeMap;

/// Permutation coset system from cycle-notation generator and parabolic
/// tables.
pub fn perm_system(
    name: &str,
    degree: usize,
    gens: &[(&str, &str)],
    parabolics: &[(&str, &[&str])],
) -> Result<CosetSystem> {
    let group = FiniteGroup::permutation(
        name.to_string(),
        degree,
        gens.iter()
            .map(|(l, t)| Ok((l.to_string(), Permutation::parse(t, degree)?)))
            .collect::<Result<Vec<_>>>()?,
    )?;
    let mut subs = Vec::new();
    for (label, texts) in parabolics {
        let elems: Vec<GroupElement> = texts
            .iter()
            .map(|t| Ok(GroupElement::Perm(Permutation::parse(t, degree)?)))
            .collect::<Result<Vec<_>>>()?;
        subs.push((
            TypeLabel::name(*label),
            Subgroup::generated(group.clone(), elems)?,
        ));
    }
    CosetSystem::new(group, subs)
}

/// The tetrahedron as a string C-group: Sym(4) with the adjacent
/// transpositions.
pub fn tetrahedron_generators() -> GeneratorSystem {
    GeneratorSystem::permutations(
        "tetrahedron",
        4,
        vec![
            ("r0".into(), Permutation::parse("(1,2)", 4).unwrap()),
            ("r1".into(), Permutation::parse("(2,3)", 4).unwrap()),
            ("r2".into(), Permutation::parse("(3,4)", 4).unwrap()),
        ],
    )
    .expect("tetrahedron generators")
}

/// The tetrahedron coset system over types 0, 1, 2.
pub fn tetrahedron() -> CosetSystem {
    cgroup_system(&tetrahedron_generators()).expect("tetrahedron system")
}

/// The `(n-1)`-simplex as a string C-group: Sym(n) with adjacent
/// transpositions, rank `n - 1`.
pub fn simplex_generators(n: usize) -> GeneratorSystem {
    let gens = (1..n as u32)
        .map(|i| {
            (
                format!("r{}", i - 1),
                Permutation::from_cycles(&[vec![i, i + 1]], n).unwrap(),
            )
        })
        .collect();
    GeneratorSystem::permutations(format!("simplex(Sym({n}))"), n, gens)
        .expect("simplex generators")
}

/// The square `{4}` as a rank-2 string C-group (dihedral of order 8).
pub fn square_generators() -> GeneratorSystem {
    GeneratorSystem::permutations(
        "square",
        4,
        vec![
            ("r0".into(), Permutation::parse("(1,2)(3,4)", 4).unwrap()),
            ("r1".into(), Permutation::parse("(2,4)", 4).unwrap()),
        ],
    )
    .expect("square generators")
}

/// The degree-22 generators of the `{4, 12}` polytope on the full
/// automorphism group of the Mathieu group M22.
pub fn m22_generators() -> GeneratorSystem {
    GeneratorSystem::permutations(
        "Aut(M22)",
        22,
        vec![
            (
                "r0".into(),
                Permutation::parse("(3,15)(4,16)(5,9)(6,19)(8,18)(10,17)(14,20)", 22).unwrap(),
            ),
            (
                "r1".into(),
                Permutation::parse(
                    "(1,3)(2,19)(4,5)(6,22)(7,18)(8,12)(9,16)(10,21)(11,17)(13,15)(14,20)",
                    22,
                )
                .unwrap(),
            ),
            (
                "r2".into(),
                Permutation::parse("(1,7)(2,12)(5,8)(6,20)(9,18)(11,22)(13,21)(14,19)", 22)
                    .unwrap(),
            ),
        ],
    )
    .expect("M22 generators")
}

/// Rank-1 system on a two-element group.
pub fn segment(label: &str) -> CosetSystem {
    let g = FiniteGroup::permutation(
        format!("C2[{label}]"),
        2,
        vec![(format!("a{label}"), Permutation::parse("(1,2)", 2).unwrap())],
    )
    .unwrap();
    let trivial = Subgroup::trivial(g.clone()).unwrap();
    CosetSystem::new(g, vec![(TypeLabel::name(label), trivial)]).unwrap()
}

/// The triangle: Sym(3) with its two point stabilizers.
pub fn triangle() -> CosetSystem {
    perm_system(
        "triangle",
        3,
        &[("a", "(1,2)"), ("b", "(2,3)")],
        &[("0", &["(2,3)"]), ("1", &["(1,2)"])],
    )
    .unwrap()
}

/// The digon: Klein four-group with two of its subgroups.
pub fn digon() -> CosetSystem {
    perm_system(
        "digon",
        4,
        &[("x", "(1,2)"), ("y", "(3,4)")],
        &[("0", &["(1,2)"]), ("1", &["(3,4)"])],
    )
    .unwrap()
}

/// Rank-2 system of the square.
pub fn square_system() -> CosetSystem {
    cgroup_system(&square_generators()).unwrap()
}

/// The Klein four-group with its three distinct order-two subgroups; fails
/// flag-transitivity (the classic product-condition counterexample).
pub fn klein_failure() -> CosetSystem {
    perm_system(
        "V4-three-subgroups",
        4,
        &[("x", "(1,2)"), ("y", "(3,4)")],
        &[
            ("0", &["(1,2)"]),
            ("1", &["(3,4)"]),
            ("2", &["(1,2)(3,4)"]),
        ],
    )
    .unwrap()
}

/// The duality action on a tetrahedron system: conjugation by
/// `tau = (1,4)(2,3)`.
pub fn tetrahedron_duality(alpha: &CosetSystem) -> Result<(CosetSystem, ValidatedAction)> {
    let tau = Permutation::parse("(1,4)(2,3)", 4)?;
    let actor = FiniteGroup::permutation("<tau>", 4, vec![("tau".into(), tau)])?;
    let beta = CosetSystem::new(
        actor.clone(),
        vec![(
            TypeLabel::name("tau"),
            Subgroup::trivial(actor.clone())?,
        )],
    )?;
    let action = ActionSpec::conjugation(actor, alpha.group().clone()).validate()?;
    Ok((beta, action))
}

/// Representatives `0` for the orbit `{0, 2}` and `1` for `{1}`.
pub fn tetrahedron_twist_reps() -> BTreeMap<TypeLabel, TypeLabel> {
    [
        (
            TypeLabel::orbit(vec![TypeLabel::num(0), TypeLabel::num(2)]),
            TypeLabel::num(0),
        ),
        (
            TypeLabel::orbit(vec![TypeLabel::num(1)]),
            TypeLabel::num(1),
        ),
    ]
    .into_iter()
    .collect()
}

/// The twisting of the tetrahedron by its duality (the cube).
pub fn tetrahedron_twist() -> Result<Twist> {
    let alpha = tetrahedron();
    let (beta, action) = tetrahedron_duality(&alpha)?;
    twist(&alpha, &beta, &action, &tetrahedron_twist_reps())
}

/// The wreath construction matching the single-0-edge family: the rank-one
/// system of C2, wreathed by the simplex system of Sym(r) realized on the
/// `2r`-point blocks. Returns the twist and the block partition used by the
/// permutation realization.
pub fn family13_wreath(r: usize) -> Result<(Twist, Vec<Vec<u32>>)> {
    let family = builtin_family(Family::T5_13, r)?;
    let alpha = segment("0");
    let top_gens: Vec<(String, Permutation)> = family.generators()[1..]
        .iter()
        .map(|(l, g)| (l.clone(), g.as_perm().expect("perm family").clone()))
        .collect();
    let top = FiniteGroup::permutation(format!("Sym({r})@2r"), 2 * r, top_gens)?;
    let mut parabolics = Vec::new();
    for skip in 0..top.generators().len() {
        let gens: Vec<GroupElement> = top
            .generators()
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != skip)
            .map(|(_, (_, g))| g.clone())
            .collect();
        parabolics.push((
            TypeLabel::num(skip + 1),
            Subgroup::generated_unchecked(top.clone(), gens)?,
        ));
    }
    let beta = CosetSystem::new(top, parabolics)?;
    let blocks: Vec<Vec<u32>> = (1..=r as u32).map(|w| vec![2 * w - 1, 2 * w]).collect();
    let orbit = TypeLabel::orbit(
        (1..=r as u32)
            .map(|w| TypeLabel::indexed(TypeLabel::name("0"), w))
            .collect(),
    );
    let reps: BTreeMap<TypeLabel, TypeLabel> = [(
        orbit,
        TypeLabel::indexed(TypeLabel::name("0"), 1),
    )]
    .into_iter()
    .collect();
    let tw = wreath(&alpha, &beta, &OmegaAction::Blocks(blocks.clone()), r, &reps)?;
    Ok((tw, blocks))
}

/// The seven-type analog of the running twisting example: Sym(3) = <b7, b8>
/// acting on type labels 0..6, b7 swapping 1/3 and 2/4, b8 swapping 3/5 and
/// 4/6. Returns the rank-2 system of the actor and the induced type action.
pub fn example1_type_action() -> Result<(CosetSystem, crate::ops::TypeAction)> {
    let b = FiniteGroup::permutation(
        "Sym(3)",
        3,
        vec![
            ("b7".into(), Permutation::parse("(1,2)", 3)?),
            ("b8".into(), Permutation::parse("(2,3)", 3)?),
        ],
    )?;
    let b7_par = Subgroup::generated(
        b.clone(),
        vec![GroupElement::Perm(Permutation::parse("(2,3)", 3)?)],
    )?;
    let b8_par = Subgroup::generated(
        b.clone(),
        vec![GroupElement::Perm(Permutation::parse("(1,2)", 3)?)],
    )?;
    let beta = CosetSystem::new(
        b.clone(),
        vec![(TypeLabel::num(7), b7_par), (TypeLabel::num(8), b8_par)],
    )?;
    let labels: Vec<TypeLabel> = (0..7).map(TypeLabel::num).collect();
    let images = vec![
        (
            "b7".to_string(),
            vec![
                (TypeLabel::num(1), TypeLabel::num(3)),
                (TypeLabel::num(3), TypeLabel::num(1)),
                (TypeLabel::num(2), TypeLabel::num(4)),
                (TypeLabel::num(4), TypeLabel::num(2)),
            ],
        ),
        (
            "b8".to_string(),
            vec![
                (TypeLabel::num(3), TypeLabel::num(5)),
                (TypeLabel::num(5), TypeLabel::num(3)),
                (TypeLabel::num(4), TypeLabel::num(6)),
                (TypeLabel::num(6), TypeLabel::num(4)),
            ],
        ),
    ];
    let ta = crate::ops::TypeAction::from_generator_images(b, labels, &images)?;
    Ok((beta, ta))
}

/// One system of the checker-equivalence catalog.
pub struct CheckerFixture {
    pub name: String,
    pub system: CosetSystem,
    /// True when the fixture was designed to fail flag-transitivity.
    pub designed_failure: bool,
}

impl CheckerFixture {
    fn passing(name: &str, system: CosetSystem) -> CheckerFixture {
        CheckerFixture {
            name: name.to_string(),
            system,
            designed_failure: false,
        }
    }

    fn failing(name: &str, system: CosetSystem) -> CheckerFixture {
        CheckerFixture {
            name: name.to_string(),
            system,
            designed_failure: true,
        }
    }
}

/// The fixture catalog for the checker-equivalence suite: the finite worked
/// examples plus five designed flag-transitivity failures.
pub fn checker_fixtures() -> Result<Vec<CheckerFixture>> {
    let mut out = vec![
        CheckerFixture::passing("tetrahedron", tetrahedron()),
        CheckerFixture::passing("twisted-tetrahedron", tetrahedron_twist()?.system),
    ];
    out.push(CheckerFixture::passing("triangle", triangle()));
    out.push(CheckerFixture::passing("digon", digon()));
    out.push(CheckerFixture::passing("square", square_system()));
    out.push(CheckerFixture::passing(
        "simplex-rank-4",
        cgroup_system(&simplex_generators(5))?,
    ));
    out.push(CheckerFixture::passing(
        "family-T9-1-r3",
        cgroup_system(&builtin_family(Family::T9_1, 3)?)?,
    ));
    out.push(CheckerFixture::passing(
        "family-T9-2-r3",
        cgroup_system(&builtin_family(Family::T9_2, 3)?)?,
    ));
    out.push(CheckerFixture::passing(
        "family-T5-13-r3",
        cgroup_system(&builtin_family(Family::T5_13, 3)?)?,
    ));
    out.push(CheckerFixture::passing(
        "family-T5-13-r4",
        cgroup_system(&builtin_family(Family::T5_13, 4)?)?,
    ));
    out.push(CheckerFixture::passing(
        "family-T5-14-r3",
        cgroup_system(&builtin_family(Family::T5_14, 3)?)?,
    ));
    out.push(CheckerFixture::passing(
        "family-T5-15-r3",
        cgroup_system(&builtin_family(Family::T5_15, 3)?)?,
    ));
    out.push(CheckerFixture::passing(
        "tetrahedron-x-segment",
        direct_product(&tetrahedron(), &segment("s"))?,
    ));
    out.push(CheckerFixture::passing(
        "segment-x-segment",
        direct_product(&segment("p"), &segment("q"))?,
    ));
    {
        let simplex4 = simplex_generators(5);
        let choices = crate::ops::enumerate_self_dual_choices(&simplex4)?;
        let (_, first) = choices.into_iter().next().expect("4-simplex twist choices");
        out.push(CheckerFixture::passing(
            "self-dual-4-simplex-twist",
            first.twist.system,
        ));
    }
    {
        let square = square_generators();
        let reps: BTreeMap<TypeLabel, TypeLabel> = [(
            TypeLabel::orbit(vec![TypeLabel::num(0), TypeLabel::num(1)]),
            TypeLabel::num(0),
        )]
        .into_iter()
        .collect();
        out.push(CheckerFixture::passing(
            "self-dual-square-twist",
            crate::ops::self_dual_twist(&square, &reps)?.twist.system,
        ));
    }
    {
        let tetra = tetrahedron();
        let vertex_type: crate::cosetgeom::TypeSet =
            [TypeLabel::num(1), TypeLabel::num(2)].into_iter().collect();
        out.push(CheckerFixture::passing(
            "tetrahedron-vertex-rank1",
            tetra.residue_system(&vertex_type)?,
        ));
        let residue: crate::cosetgeom::TypeSet = [TypeLabel::num(0)].into_iter().collect();
        out.push(CheckerFixture::passing(
            "tetrahedron-vertex-residue",
            tetra.residue_system(&residue)?,
        ));
    }
    out.push(CheckerFixture::passing(
        "sym3-three-reflections",
        perm_system(
            "Sym(3)-refl",
            3,
            &[("a", "(1,2)"), ("b", "(2,3)")],
            &[("0", &["(1,2)"]), ("1", &["(2,3)"]), ("2", &["(1,3)"])],
        )?,
    ));
    // flag-transitive but not residually connected
    out.push(CheckerFixture::passing(
        "sym4-scattered-involutions",
        perm_system(
            "Sym(4)-scattered",
            4,
            &[("a", "(1,2)"), ("b", "(3,4)"), ("c", "(1,3)")],
            &[("0", &["(1,2)"]), ("1", &["(3,4)"]), ("2", &["(1,3)"])],
        )?,
    ));
    // the designed failures
    out.push(CheckerFixture::failing("klein-three-subgroups", klein_failure()));
    out.push(CheckerFixture::failing(
        "c4xc2-diagonal",
        perm_system(
            "C4xC2",
            6,
            &[("a", "(1,2,3,4)"), ("b", "(5,6)")],
            &[
                ("0", &["(1,3)(2,4)"]),
                ("1", &["(5,6)"]),
                ("2", &["(1,3)(2,4)(5,6)"]),
            ],
        )?,
    ));
    out.push(CheckerFixture::failing(
        "sym4-three-kleins",
        perm_system(
            "Sym(4)-kleins",
            4,
            &[("a", "(1,2)"), ("b", "(2,3)"), ("c", "(3,4)")],
            &[
                ("0", &["(1,2)", "(3,4)"]),
                ("1", &["(1,3)", "(2,4)"]),
                ("2", &["(1,4)", "(2,3)"]),
            ],
        )?,
    ));
    out.push(CheckerFixture::failing(
        "alt4-mixed-orders",
        perm_system(
            "Alt(4)",
            4,
            &[("a", "(1,2,3)"), ("b", "(1,2)(3,4)")],
            &[
                ("0", &["(1,2,3)"]),
                ("1", &["(1,2)(3,4)"]),
                ("2", &["(1,3,4)"]),
            ],
        )?,
    ));
    out.push(CheckerFixture::failing(
        "klein-failure-x-segment",
        direct_product(&klein_failure(), &segment("s"))?,
    ));
    Ok(out)
}
