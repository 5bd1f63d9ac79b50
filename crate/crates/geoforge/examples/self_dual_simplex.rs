//! Twisting a self-dual polytope by its duality: enumerate every valid
//! representative choice for the 4-simplex {3,3,3} over Sym(5) and report
//! which choices give a linear diagram (an abstract regular polytope) and
//! which give a proper hypertope.

use geoforge::cosetgeom::{FlagTransitivityMethod, RcVariant};
use geoforge::fixtures::simplex_generators;
use geoforge::ops::enumerate_self_dual_choices;

fn main() -> geoforge::Result<()> {
    let simplex = simplex_generators(5);
    println!(
        "alpha = {{3,3,3}} on Sym(5), |A| = {}",
        simplex.group().order()?
    );
    for (reps, twisted) in enumerate_self_dual_choices(&simplex)? {
        let chosen: Vec<String> = reps.values().map(|t| t.to_string()).collect();
        let sys = &twisted.twist.system;
        let ft = sys.check_flag_transitive(FlagTransitivityMethod::Product)?.pass;
        let rc = sys.check_residually_connected(RcVariant::Rc1)?.pass;
        let (_, thin) = sys.check_firm_thin(true)?;
        println!(
            "reps ({}): rank {}, |G| = {}, FT {} RC {} thin {}, diagram {} => {}",
            chosen.join(","),
            twisted.rank,
            sys.group().order()?,
            ft,
            rc,
            thin.pass,
            twisted.diagram.to_text(),
            if twisted.linear { "polytope (linear)" } else { "hypertope" },
        );
    }
    Ok(())
}
