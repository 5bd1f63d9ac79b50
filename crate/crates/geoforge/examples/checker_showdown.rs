//! Every checker on every fixture: the three flag-transitivity methods and
//! the three residual-connectedness variants, side by side, with the five
//! designed failures standing out.

use geoforge::cosetgeom::{FlagTransitivityMethod, RcVariant};
use geoforge::fixtures::checker_fixtures;

fn main() -> geoforge::Result<()> {
    println!(
        "{:<28} {:>7} {:<22} {:<22}",
        "fixture", "|G|", "FT product/triple/geo", "RC rc1/rc2/intersect"
    );
    for fixture in checker_fixtures()? {
        let sys = &fixture.system;
        let ft: Vec<String> = [
            FlagTransitivityMethod::Product,
            FlagTransitivityMethod::Triple,
            FlagTransitivityMethod::Geometry,
        ]
        .iter()
        .map(|&m| {
            sys.check_flag_transitive(m)
                .map(|r| if r.pass { "ok".into() } else { "FAIL".into() })
                .unwrap_or_else(|e| format!("({e})"))
        })
        .collect();
        let rc: Vec<String> = [RcVariant::Rc1, RcVariant::Rc2, RcVariant::Intersection]
            .iter()
            .map(|&v| {
                sys.check_residually_connected(v)
                    .map(|r| if r.pass { "ok".into() } else { "FAIL".into() })
                    .unwrap_or_else(|e| format!("({e})"))
            })
            .collect();
        println!(
            "{:<28} {:>7} {:<22} {:<22}{}",
            fixture.name,
            sys.group().order()?,
            ft.join("/"),
            rc.join("/"),
            if fixture.designed_failure { "  <- designed failure" } else { "" }
        );
    }
    Ok(())
}
