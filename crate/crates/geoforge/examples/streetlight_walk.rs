//! A walk down the Schrodinger street: lamplighter arithmetic, uncertainty
//! resolution, and a shortest alternating path between two street states.

use geoforge::streetlight::{
    bfs_distance, incident, ll_mul, resolve, street_act, street_path, LampConfig,
    LamplighterElement, StreetElement,
};

fn main() {
    let a = LamplighterElement::toggle();
    let t = LamplighterElement::shift_one();
    println!("a * a = identity: {}", ll_mul(&a, &a) == LamplighterElement::identity());
    let ta = ll_mul(&t, &a);
    println!("t a = (lamp at 1, shift 1): {:?}", ta);

    let from = LampConfig::empty();
    let to = LampConfig::new([3, 5]);
    let path = street_path(&from, &to);
    println!("\npath from 'all off' to 'on=3,5' ({} edges):", path.len() - 1);
    for e in &path {
        println!("  {e}");
    }
    println!(
        "breadth-first distance agrees: {}",
        bfs_distance(&from, &to, 3..=5) == Some(path.len() - 1)
    );

    let u = StreetElement::uncertain(LampConfig::new([2]), 0);
    let (off, on) = resolve(&u).unwrap();
    println!("\nresolving {u}: {off} | {on}");
    println!(
        "incidence: {} {}",
        incident(&LampConfig::new([2]), &u),
        incident(&LampConfig::new([0, 2]), &u)
    );
    let g = LamplighterElement::new(LampConfig::new([-1]), 2);
    println!("acting with (on=-1, shift=2) on {u}: {}", street_act(&g, &u));
}
