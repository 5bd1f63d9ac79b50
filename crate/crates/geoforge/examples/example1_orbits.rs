//! The orbit tables behind admissibility: Sym(3) acting on seven types with
//! two swaps, the tables ^LO_M per candidate representative, and which
//! representatives satisfy the orbit intersection property.

use geoforge::cosetgeom::TypeLabel;
use geoforge::fixtures::example1_type_action;
use geoforge::ops::{check_admissible, orbit_table};

fn main() -> geoforge::Result<()> {
    let (beta, action) = example1_type_action()?;
    println!("orbits of the type action:");
    for orbit in action.orbits() {
        let labels: Vec<String> = orbit.iter().map(|t| t.to_string()).collect();
        println!("  {{{}}}", labels.join(","));
    }
    let table = orbit_table(&action, &beta, &TypeLabel::num(1))?;
    println!("orbit table for representative 1 of {{1,3,5}}:");
    for m in geoforge::cosetgeom::subsets_in_order(beta.types()) {
        let names: Vec<String> = m.iter().map(|t| t.to_string()).collect();
        let orbit: Vec<String> = table.lower(&m)?.iter().map(|t| t.to_string()).collect();
        println!("  ^LO_{{{}}} = {{{}}}", names.join(","), orbit.join(","));
    }
    let adm = check_admissible(&action, &beta)?;
    println!("admissible: {}", adm.is_admissible());
    for (orbit, reps) in adm.valid_reps() {
        let reps: Vec<String> = reps.iter().map(|t| t.to_string()).collect();
        println!("  valid representatives of {orbit}: {}", reps.join(", "));
    }
    Ok(())
}
