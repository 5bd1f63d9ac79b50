//! The permutation-representation-graph families and the wreath product:
//! build each family, check the string and intersection properties, and
//! verify that the single-0-edge family is exactly the wreath construction.

use geoforge::cgroups::{
    builtin_family, cgroup_system, check_intersection_property, check_string_property,
    coxeter_diagram, permrep_graph_of, Family, IntersectionMode,
};
use geoforge::cosetgeom::TypeLabel;
use geoforge::fixtures::family13_wreath;
use geoforge::ops::realize_c2_wreath;

fn main() -> geoforge::Result<()> {
    for family in [
        Family::T9_1,
        Family::T9_2,
        Family::T5_13,
        Family::T5_14,
        Family::T5_15,
        Family::T5_16,
    ] {
        let s = builtin_family(family, 4)?;
        let string = check_string_property(&s)?.pass;
        let ip = check_intersection_property(&s, IntersectionMode::Full)?.pass;
        println!(
            "{:<6} r=4: |G| = {:>4}, string: {}, intersection property: {}",
            family.id(),
            s.group().order()?,
            string,
            ip
        );
    }
    let s = builtin_family(Family::T5_13, 3)?;
    println!("\npermutation representation graph of T5-13 (r=3):");
    print!("{}", permrep_graph_of(&s)?.to_text());
    println!("diagram: {}", coxeter_diagram(&s)?.to_text());

    // the wreath construction gives the same maximal parabolics
    let (wreathed, blocks) = family13_wreath(3)?;
    let family_system = cgroup_system(&s)?;
    let orbit_type = wreathed.orbit_labels()[0].clone();
    let pairs = [
        (orbit_type, TypeLabel::num(0)),
        (TypeLabel::num(1), TypeLabel::num(1)),
        (TypeLabel::num(2), TypeLabel::num(2)),
    ];
    println!("\nwreath parabolics realized on 6 points vs family parabolics:");
    for (wt, ft) in pairs {
        let realized: std::collections::BTreeSet<_> = wreathed
            .system
            .maximal_parabolic(&wt)?
            .elements()?
            .iter()
            .map(|g| realize_c2_wreath(g, &blocks, 6).unwrap())
            .collect();
        let expected: std::collections::BTreeSet<_> = family_system
            .maximal_parabolic(&ft)?
            .elements()?
            .iter()
            .map(|g| g.as_perm().unwrap().clone())
            .collect();
        println!("  type {wt}: equal = {}", realized == expected);
    }
    Ok(())
}
