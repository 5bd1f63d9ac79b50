//! Twist the self-dual tetrahedron by its duality and watch the cube appear:
//! parabolic orders, the algebraic checkers, the materialized geometry, and
//! the colored isomorphism against the hard-coded cube.

use geoforge::cosetgeom::{FlagTransitivityMethod, RcVariant};
use geoforge::fixtures;
use geoforge::materialize::{colored_isomorphic, cube_reference, export_dot, materialize};

fn main() -> geoforge::Result<()> {
    let twisted = fixtures::tetrahedron_twist()?;
    let sys = &twisted.system;
    println!("twisted group order: {}", sys.group().order()?);
    for t in sys.types() {
        println!("  G_{t} has order {}", sys.maximal_parabolic(t)?.order()?);
    }
    for method in [
        FlagTransitivityMethod::Product,
        FlagTransitivityMethod::Triple,
        FlagTransitivityMethod::Geometry,
    ] {
        let report = sys.check_flag_transitive(method)?;
        println!("flag-transitive via {:<8}: {}", report.method, report.pass);
    }
    println!(
        "residually connected: {}",
        sys.check_residually_connected(RcVariant::Rc1)?.pass
    );
    let (firm, thin) = sys.check_firm_thin(true)?;
    println!("firm: {}, thin: {}", firm.pass, thin.pass);

    let geometry = materialize(sys)?;
    println!("materialized counts by type: {:?}", geometry.counts_by_type());
    let report = geometry.check_direct();
    println!("chambers: {}", report.chamber_count);
    let cube = cube_reference();
    match colored_isomorphic(&geometry, &cube, None) {
        Some(_) => println!("colored-isomorphic to the cube: yes"),
        None => println!("colored-isomorphic to the cube: NO"),
    }
    let dot = export_dot(&geometry);
    println!("DOT export: {} bytes (try piping to graphviz)", dot.len());
    Ok(())
}
