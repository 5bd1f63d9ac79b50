//! Cross-checks between independent routes: the materialized oracle against
//! the algebraic checkers, closed parabolic formulas against intersections,
//! and the family constructions against their product/wreath descriptions.

use geoforge::cgroups::{
    builtin_family, cgroup_system, check_intersection_property, search_rank3_polytope, Family,
    IntersectionMode,
};
use geoforge::cosetgeom::{FlagTransitivityMethod, RcVariant, TypeLabel, TypeSet};
use geoforge::fixtures;
use geoforge::groupcore::{GroupElement, Permutation, Subgroup};
use geoforge::materialize::{colored_isomorphic, join, materialize};
use geoforge::ops::{direct_product, orbit_table};
use std::collections::BTreeSet;

/// On thin, residually connected, flag-transitive systems the chamber count
/// is the group order over the Borel order.
#[test]
fn chamber_count_equals_group_order_over_borel() {
    for fixture in fixtures::checker_fixtures().unwrap() {
        let sys = &fixture.system;
        if sys.rank() < 2 {
            continue;
        }
        let ft = sys
            .check_flag_transitive(FlagTransitivityMethod::Product)
            .unwrap()
            .pass;
        let rc = sys.check_residually_connected(RcVariant::Rc1).unwrap().pass;
        let (_, thin) = sys.check_firm_thin(ft).unwrap();
        if !(ft && rc && thin.pass) {
            continue;
        }
        let geometry = materialize(sys).unwrap();
        let chambers = geometry.chambers().len() as u128;
        let expected = sys.group().order().unwrap() / sys.borel().unwrap().order().unwrap();
        assert_eq!(chambers, expected, "{}", fixture.name);
    }
}

/// The two-row families split as direct products; the coset system built
/// from the generators equals the product reconstruction element for
/// element (tuple elements realized by multiplying their factors).
#[test]
fn two_row_families_match_direct_product_reconstruction() {
    for family in [Family::T9_1, Family::T9_2] {
        for r in [3usize, 4] {
            let s = builtin_family(family, r).unwrap();
            let degree = 2 * r;
            let system = cgroup_system(&s).unwrap();
            // alpha = <rho_0> as a rank-1 system, beta = the top group
            let rho0 = s.generators()[0].1.as_perm().unwrap().clone();
            let alpha = fixtures::perm_system(
                "bottom",
                degree,
                &[("r0", &rho0.to_cycle_string())],
                &[("a", &[])],
            )
            .unwrap();
            let top_gens: Vec<(String, String)> = s.generators()[1..]
                .iter()
                .map(|(l, g)| (l.clone(), g.as_perm().unwrap().to_cycle_string()))
                .collect();
            let top_refs: Vec<(&str, &str)> = top_gens
                .iter()
                .map(|(l, t)| (l.as_str(), t.as_str()))
                .collect();
            let mut parabolic_specs: Vec<(String, Vec<&str>)> = Vec::new();
            for skip in 1..r {
                // parabolic generators given as cycle texts
                let kept: Vec<&str> = top_refs
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| *k != skip - 1)
                    .map(|(_, (_, text))| *text)
                    .collect();
                parabolic_specs.push((skip.to_string(), kept));
            }
            let parabolic_refs: Vec<(&str, &[&str])> = parabolic_specs
                .iter()
                .map(|(l, v)| (l.as_str(), v.as_slice()))
                .collect();
            let beta =
                fixtures::perm_system("top", degree, &top_refs, &parabolic_refs).unwrap();
            let product = direct_product(&alpha, &beta).unwrap();
            // realize Tuple([a, b]) as the permutation a * b
            let realize = |g: &GroupElement| -> Permutation {
                let xs = g.as_tuple().unwrap();
                xs[0]
                    .as_perm()
                    .unwrap()
                    .compose(xs[1].as_perm().unwrap())
            };
            let pairs: Vec<(TypeLabel, TypeLabel)> = std::iter::once((
                TypeLabel::name("a"),
                TypeLabel::num(0),
            ))
            .chain((1..r).map(|i| (TypeLabel::num(i), TypeLabel::num(i))))
            .collect();
            for (product_type, family_type) in pairs {
                let realized: BTreeSet<Permutation> = product
                    .maximal_parabolic(&product_type)
                    .unwrap()
                    .elements()
                    .unwrap()
                    .iter()
                    .map(realize)
                    .collect();
                let expected: BTreeSet<Permutation> = system
                    .maximal_parabolic(&family_type)
                    .unwrap()
                    .elements()
                    .unwrap()
                    .iter()
                    .map(|g| g.as_perm().unwrap().clone())
                    .collect();
                assert_eq!(
                    realized, expected,
                    "{} r={r} type {product_type}",
                    family.id()
                );
            }
        }
    }
}

/// Full and reduced intersection-property modes agree wherever both run.
#[test]
fn intersection_property_modes_agree() {
    let mut systems = vec![
        fixtures::tetrahedron_generators(),
        fixtures::simplex_generators(5),
        fixtures::m22_generators(),
    ];
    for family in [
        Family::T9_1,
        Family::T9_2,
        Family::T5_13,
        Family::T5_14,
        Family::T5_15,
        Family::T5_16,
    ] {
        for r in [3usize, 4, 5] {
            systems.push(builtin_family(family, r).unwrap());
        }
    }
    for s in &systems {
        let full = check_intersection_property(s, IntersectionMode::Full)
            .unwrap()
            .pass;
        let reduced = check_intersection_property(s, IntersectionMode::Reduced2E16)
            .unwrap()
            .pass;
        assert_eq!(full, reduced, "{}", s.group().name());
    }
}

/// Odd-rank members of the sign-representation family with 0-edges on all
/// but the first block: the raw full-mode verdict is recorded without
/// claiming anything beyond these ranks.
#[test]
fn family_16_odd_rank_raw_results() {
    for (r, expected_order) in [(3usize, 24u128), (5, 1920)] {
        let s = builtin_family(Family::T5_16, r).unwrap();
        assert_eq!(s.group().order().unwrap(), expected_order);
        let report = check_intersection_property(&s, IntersectionMode::Full).unwrap();
        assert!(report.pass, "T5-16 r={r} full-mode verdict changed");
    }
}

/// Joins are associative up to colored isomorphism.
#[test]
fn join_is_associative_up_to_isomorphism() {
    let a = materialize(&fixtures::segment("a")).unwrap();
    let b = materialize(&fixtures::triangle()).unwrap();
    let c = materialize(&fixtures::segment("c")).unwrap();
    let left = join(&[&join(&[&a, &b]).unwrap(), &c]).unwrap();
    let right = join(&[&a, &join(&[&b, &c]).unwrap()]).unwrap();
    let identity: Vec<usize> = (0..left.rank()).collect();
    assert!(colored_isomorphic(&left, &right, Some(&identity)).is_some());
}

/// Residues of the base flag match the residue system, beyond the vertex
/// case already covered in unit tests.
#[test]
fn residue_oracle_on_the_twisted_tetrahedron() {
    let twisted = fixtures::tetrahedron_twist().unwrap();
    let sys = &twisted.system;
    let geometry = materialize(sys).unwrap();
    for (k, t) in sys.types().iter().enumerate() {
        // base-flag element of this type: the identity coset
        let index = geometry
            .elements()
            .iter()
            .position(|e| {
                e.type_index == k && e.rep.as_ref() == Some(&sys.group().identity())
            })
            .expect("identity coset present");
        let flag = vec![index];
        let j: TypeSet = [t.clone()].into_iter().collect();
        let from_flag = geometry.residue(&flag);
        let from_system = materialize(&sys.residue_system(&j).unwrap()).unwrap();
        let identity: Vec<usize> = (0..from_flag.rank()).collect();
        assert!(
            colored_isomorphic(&from_flag, &from_system, Some(&identity)).is_some(),
            "residue at {t}"
        );
    }
}

/// The hypertope transfer: wreathing thin, residually connected,
/// flag-transitive systems with trivial Borels yields a system with the
/// same properties.
#[test]
fn wreath_preserves_hypertope_properties() {
    let (wr, _) = fixtures::family13_wreath(3).unwrap();
    let sys = &wr.system;
    assert_eq!(sys.borel().unwrap().order().unwrap(), 1);
    assert!(sys
        .check_flag_transitive(FlagTransitivityMethod::Product)
        .unwrap()
        .pass);
    assert!(sys.check_residually_connected(RcVariant::Rc1).unwrap().pass);
    let (firm, thin) = sys.check_firm_thin(true).unwrap();
    assert!(firm.pass && thin.pass);
}

/// Orbit-table set identities across two orbits: complements of upper orbit
/// unions behave like the single-orbit identity.
#[test]
fn orbit_table_set_identities_across_orbits() {
    let (beta, ta) = fixtures::example1_type_action().unwrap();
    let t135 = orbit_table(&ta, &beta, &TypeLabel::num(1)).unwrap();
    let t246 = orbit_table(&ta, &beta, &TypeLabel::num(2)).unwrap();
    let subsets = geoforge::cosetgeom::subsets_in_order(beta.types());
    let all_labels: BTreeSet<TypeLabel> = (0..7).map(TypeLabel::num).collect();
    for m in &subsets {
        for n in &subsets {
            // (L1 \ ^L1 O^M) u (L2 \ ^L2 O^N)
            //   = (L1 u L2) \ (^L1 O^M u ^L2 O^N)
            let l1: BTreeSet<TypeLabel> = t135.orbit.iter().cloned().collect();
            let l2: BTreeSet<TypeLabel> = t246.orbit.iter().cloned().collect();
            let o1 = t135.upper(m).unwrap();
            let o2 = t246.upper(n).unwrap();
            let lhs: BTreeSet<TypeLabel> = l1
                .difference(o1)
                .cloned()
                .chain(l2.difference(o2).cloned())
                .collect();
            let union_orbits: BTreeSet<TypeLabel> = l1.union(&l2).cloned().collect();
            let union_uppers: BTreeSet<TypeLabel> = o1.union(o2).cloned().collect();
            let rhs: BTreeSet<TypeLabel> =
                union_orbits.difference(&union_uppers).cloned().collect();
            assert_eq!(lhs, rhs);
            // complement-absorption: [I \ (U_L ^L O^M)] u L1 = I \ (U_{L != L1} ^L O^M)
            let t0 = orbit_table(&ta, &beta, &TypeLabel::num(0)).unwrap();
            let union_all: BTreeSet<TypeLabel> = t135
                .upper(m)
                .unwrap()
                .iter()
                .chain(t246.upper(m).unwrap().iter())
                .chain(t0.upper(m).unwrap().iter())
                .cloned()
                .collect();
            let lhs2: BTreeSet<TypeLabel> = all_labels
                .difference(&union_all)
                .cloned()
                .chain(l1.iter().cloned())
                .collect();
            let union_others: BTreeSet<TypeLabel> = t246
                .upper(m)
                .unwrap()
                .iter()
                .chain(t0.upper(m).unwrap().iter())
                .cloned()
                .collect();
            let rhs2: BTreeSet<TypeLabel> =
                all_labels.difference(&union_others).cloned().collect();
            assert_eq!(lhs2, rhs2);
        }
    }
}

/// The search also accepts caller-supplied candidate seeds.
#[test]
fn search_with_supplied_seeds() {
    let s = fixtures::tetrahedron_generators();
    let group = s.group().clone();
    let t = GroupElement::Perm(Permutation::parse("(1,2)", 4).unwrap());
    let seeds: Vec<GroupElement> = [
        "(2,3)",
        "(3,4)",
        "(1,2)",
        "(1,2)(3,4)",
        "(1,2,3)", // non-involution, silently skipped
    ]
    .iter()
    .map(|text| GroupElement::Perm(Permutation::parse(text, 4).unwrap()))
    .collect();
    let found = search_rank3_polytope(&group, &t, Some(&seeds)).unwrap();
    assert_eq!(found.group().order().unwrap(), 24);
}

/// Spec-recorded fixture: on Sym(5) the sweep with t = (1,2)(3,4) finds
/// nothing; the t = (1,2) sweep is the one with hits.
#[test]
fn search_sym5_with_even_involution_is_not_found() {
    let gens = (1..5u32)
        .map(|i| {
            (
                format!("s{i}"),
                Permutation::from_cycles(&[vec![i, i + 1]], 5).unwrap(),
            )
        })
        .collect();
    let group = geoforge::groupcore::FiniteGroup::permutation("Sym(5)", 5, gens).unwrap();
    let t = GroupElement::Perm(Permutation::parse("(1,2)(3,4)", 5).unwrap());
    assert!(matches!(
        search_rank3_polytope(&group, &t, None),
        Err(geoforge::Error::NotFound)
    ));
}

/// Minimal parabolics of the chosen self-dual twist match the generator
/// system: each is generated by one of {rho_F_L} u {tau}.
#[test]
fn self_dual_twist_minimal_parabolics() {
    let reps = fixtures::tetrahedron_twist_reps();
    let twisted =
        geoforge::ops::self_dual_twist(&fixtures::tetrahedron_generators(), &reps).unwrap();
    let sys = &twisted.twist.system;
    for (label, gen) in twisted.generators.generators() {
        let single = Subgroup::generated(sys.group().clone(), vec![gen.clone()])
            .unwrap();
        let matching = sys.types().iter().any(|t| {
            sys.minimal_parabolic(t)
                .unwrap()
                .equal_elements(&single)
                .unwrap()
        });
        assert!(matching, "generator {label} is not a minimal parabolic");
    }
}

/// Systems and their caches are safe to share across threads: the same
/// system checked concurrently from several workers gives one verdict.
#[test]
fn checkers_run_concurrently() {
    let sys = std::sync::Arc::new(fixtures::tetrahedron());
    let mut handles = Vec::new();
    for k in 0..4 {
        let sys = sys.clone();
        handles.push(std::thread::spawn(move || {
            let method = match k % 3 {
                0 => FlagTransitivityMethod::Product,
                1 => FlagTransitivityMethod::Triple,
                _ => FlagTransitivityMethod::Geometry,
            };
            let ft = sys.check_flag_transitive(method).unwrap().pass;
            let rc = sys.check_residually_connected(RcVariant::Rc1).unwrap().pass;
            (ft, rc)
        }));
    }
    for handle in handles {
        assert_eq!(handle.join().unwrap(), (true, true));
    }
}
