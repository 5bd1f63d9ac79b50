//! The {4,12} polytope on Aut(M22): verify the group order and Schlafli
//! type from the explicit degree-22 generators, check the intersection
//! property, then halve and inspect the non-linear diagram.

use geoforge::cgroups::{
    check_intersection_property, coxeter_diagram, halve, IntersectionMode,
};
use geoforge::fixtures::m22_generators;

fn main() -> geoforge::Result<()> {
    let s = m22_generators();
    let g = s.group();
    println!("|<r0,r1,r2>| = {}", g.order()?);
    let o01 = g.element_order(&g.mul(&s.generators()[0].1, &s.generators()[1].1)?)?;
    let o12 = g.element_order(&g.mul(&s.generators()[1].1, &s.generators()[2].1)?)?;
    println!("Schlafli type {{{o01},{o12}}}");
    println!(
        "intersection property: {}",
        check_intersection_property(&s, IntersectionMode::Full)?.pass
    );
    let (halved, order, index) = halve(&s, 2, 1)?;
    println!("halved generators: r0, r1, r1^r2; order {order} (index {index})");
    let diagram = coxeter_diagram(&halved)?;
    println!("halved diagram: {}", diagram.to_text());
    println!("linear: {}", diagram.is_linear());
    Ok(())
}
