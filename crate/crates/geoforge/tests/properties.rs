//! Property tests for the algebraic invariants: group axioms on random
//! permutations, coset bookkeeping, round-trips, and the lamplighter
//! presentation.

use geoforge::groupcore::{FiniteGroup, GroupElement, Permutation, Subgroup};
use geoforge::streetlight::{
    bfs_distance, incident, ll_inv, ll_mul, street_act, street_path, LampConfig,
    LamplighterElement, StreetElement,
};
use proptest::prelude::*;
use std::sync::Arc;

/// A uniform-ish random permutation of {1..degree} from random sort keys.
fn perm_strategy(degree: usize) -> impl Strategy<Value = Permutation> {
    proptest::collection::vec(any::<u64>(), degree).prop_map(move |keys| {
        let mut order: Vec<usize> = (0..degree).collect();
        order.sort_by_key(|&i| (keys[i], i));
        let mut images = vec![0u32; degree];
        for (slot, &point) in order.iter().enumerate() {
            images[slot] = point as u32 + 1;
        }
        Permutation::from_images(images).expect("bijection by construction")
    })
}

fn config_strategy() -> impl Strategy<Value = LampConfig> {
    proptest::collection::btree_set(-6i64..=6, 0..5).prop_map(LampConfig::new)
}

fn lamplighter_strategy() -> impl Strategy<Value = LamplighterElement> {
    (config_strategy(), -5i64..=5).prop_map(|(config, shift)| LamplighterElement::new(config, shift))
}

fn sym(n: usize) -> Arc<FiniteGroup> {
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

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn inverse_cancels_and_composition_associates(
        a in perm_strategy(7),
        b in perm_strategy(7),
        c in perm_strategy(7),
    ) {
        prop_assert!(a.compose(&a.inverse()).is_identity());
        prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
        // inverse reverses products
        prop_assert_eq!(
            a.compose(&b).inverse(),
            b.inverse().compose(&a.inverse())
        );
    }

    #[test]
    fn order_divides_and_cycle_string_round_trips(p in perm_strategy(8)) {
        let text = p.to_cycle_string();
        prop_assert_eq!(&Permutation::parse(&text, 8).unwrap(), &p);
        // g^order = identity and no earlier power is
        let order = p.order() as usize;
        let mut power = Permutation::identity(8);
        for k in 1..=order {
            power = power.compose(&p);
            if k < order {
                prop_assert!(!power.is_identity());
            }
        }
        prop_assert!(power.is_identity());
    }

    #[test]
    fn subgroup_product_formula(
        xs in proptest::collection::vec(perm_strategy(4), 1..3),
        ys in proptest::collection::vec(perm_strategy(4), 1..3),
    ) {
        let g = sym(4);
        let h = Subgroup::generated(
            g.clone(),
            xs.into_iter().map(GroupElement::Perm).collect(),
        ).unwrap();
        let k = Subgroup::generated(
            g.clone(),
            ys.into_iter().map(GroupElement::Perm).collect(),
        ).unwrap();
        let product = h.product_set(&k, 10_000).unwrap().len() as u128;
        let meet = h.intersect(&k).unwrap().order().unwrap();
        prop_assert_eq!(product * meet, h.order().unwrap() * k.order().unwrap());
    }

    #[test]
    fn conjugation_round_trip(
        xs in proptest::collection::vec(perm_strategy(5), 1..3),
        g in perm_strategy(5),
    ) {
        let group = sym(5);
        let h = Subgroup::generated(
            group.clone(),
            xs.into_iter().map(GroupElement::Perm).collect(),
        ).unwrap();
        let g = GroupElement::Perm(g);
        let g_inv = GroupElement::Perm(g.as_perm().unwrap().inverse());
        let back = h.conjugate(&g).unwrap().conjugate(&g_inv).unwrap();
        prop_assert!(back.equal_elements(&h).unwrap());
    }

    #[test]
    fn transversal_counts(xs in proptest::collection::vec(perm_strategy(4), 1..3)) {
        let g = sym(4);
        let h = Subgroup::generated(
            g.clone(),
            xs.into_iter().map(GroupElement::Perm).collect(),
        ).unwrap();
        let reps = h.left_transversal().unwrap();
        prop_assert_eq!(reps.len() as u128 * h.order().unwrap(), g.order().unwrap());
        for r in &reps {
            prop_assert_eq!(&h.canonical_coset_rep(r).unwrap(), r);
        }
    }

    #[test]
    fn lamplighter_group_axioms(
        x in lamplighter_strategy(),
        y in lamplighter_strategy(),
        z in lamplighter_strategy(),
    ) {
        prop_assert_eq!(ll_mul(&x, &ll_inv(&x)), LamplighterElement::identity());
        prop_assert_eq!(
            ll_mul(&ll_mul(&x, &y), &z),
            ll_mul(&x, &ll_mul(&y, &z))
        );
    }

    #[test]
    fn street_action_preserves_types_and_incidence(
        g in lamplighter_strategy(),
        c in config_strategy(),
        known in config_strategy(),
        p in -6i64..=6,
    ) {
        let state = StreetElement::State(c.clone());
        let uncertain = StreetElement::uncertain(known, p);
        let moved_state = street_act(&g, &state);
        let moved_uncertain = street_act(&g, &uncertain);
        let state_kept = matches!(moved_state, StreetElement::State(_));
        let uncertain_kept = matches!(moved_uncertain, StreetElement::Uncertain { .. });
        prop_assert!(state_kept && uncertain_kept);
        let before = incident(&c, &uncertain);
        let after = match &moved_state {
            StreetElement::State(c2) => incident(c2, &moved_uncertain),
            _ => unreachable!(),
        };
        prop_assert_eq!(before, after);
    }

    #[test]
    fn street_paths_are_minimal(
        from in config_strategy(),
        to in config_strategy(),
    ) {
        let path = street_path(&from, &to);
        let edges = path.len().saturating_sub(1);
        prop_assert_eq!(edges, 2 * from.delta(&to).len());
        if from.delta(&to).len() <= 3 {
            let bfs = bfs_distance(&from, &to, -7..=7).unwrap();
            prop_assert_eq!(bfs, edges);
        }
    }
}

#[test]
fn permrep_round_trip_on_random_matchings() {
    // deterministic sweep over structured matchings rather than full proptest:
    // every subset of disjoint pairs on 8 points, two labels
    use geoforge::cgroups::{parse_permrep_graph, permrep_graph_of, GeneratorSystem};
    let pairs = [(1u32, 2u32), (3, 4), (5, 6), (7, 8)];
    for mask_a in 1u32..16 {
        for mask_b in 1u32..16 {
            let cycles = |mask: u32| -> Vec<Vec<u32>> {
                pairs
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| mask & (1 << k) != 0)
                    .map(|(_, &(a, b))| vec![a, b])
                    .collect()
            };
            let ra = Permutation::from_cycles(&cycles(mask_a), 8).unwrap();
            let rb = Permutation::from_cycles(&cycles(mask_b), 8).unwrap();
            let s = GeneratorSystem::permutations(
                "m",
                8,
                vec![("0".into(), ra), ("1".into(), rb)],
            )
            .unwrap();
            let text = permrep_graph_of(&s).unwrap().to_text();
            let back = parse_permrep_graph(&text, "m").unwrap();
            assert_eq!(back.generators(), s.generators());
            assert_eq!(permrep_graph_of(&back).unwrap().to_text(), text);
        }
    }
}
