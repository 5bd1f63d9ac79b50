//! Thin command-line front end over the library: pipeline execution,
//! one-shot constructions, geometry export and isomorphism, street paths,
//! and the bundled regression suite.

use geoforge::caps::Caps;
use geoforge::materialize::{colored_isomorphic, import_json};
use geoforge::pipeline::{parse_spec, run_pipeline, PipelineReport, PipelineSpec};
use geoforge::streetlight::{parse_state, street_path};
use geoforge::suite::paper_suite;
use std::process::ExitCode;

const USAGE: &str = "\
geoforge <command> [args]

commands:
  check <spec.json>                      run a pipeline spec, print a JSON report
  twist <spec.json> --alpha A --beta B --action ACT --reps r0,r1 [--bind NAME]
  wreath <spec.json> --alpha A --beta B --slots N --reps r0@1 [--blocks 1,2;3,4]
  materialize <spec.json> --system S [--dot FILE] [--json FILE]
  iso <g1.json> <g2.json>                colored isomorphism of two geometries
  street path --from \"on=\" --to \"on=3,5\"  shortest street path as JSON
  paper-suite [--filter NAME] [--json]   run the bundled example suite

exit codes: 0 all checks pass, 1 a check failed, 2 input error, 3 cap exceeded.
caps: set GEOFORGE_CAPS, e.g. GEOFORGE_CAPS=closure=100000,geometry=5000";

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let caps = Caps::from_env();
    let code = match args.first().map(String::as_str) {
        Some("check") => cmd_check(&args[1..], caps),
        Some("twist") => cmd_construct(&args[1..], caps, false),
        Some("wreath") => cmd_construct(&args[1..], caps, true),
        Some("materialize") => cmd_materialize(&args[1..], caps),
        Some("iso") => cmd_iso(&args[1..]),
        Some("street") => cmd_street(&args[1..]),
        Some("paper-suite") => cmd_suite(&args[1..]),
        Some("--help") | Some("-h") | None => {
            eprintln!("{USAGE}");
            if args.is_empty() { 2 } else { 0 }
        }
        Some(other) => {
            eprintln!("unknown command {other:?}\n{USAGE}");
            2
        }
    };
    ExitCode::from(code as u8)
}

fn flag_value<'a>(args: &'a [String], name: &str) -> Option<&'a str> {
    args.iter()
        .position(|a| a == name)
        .and_then(|i| args.get(i + 1))
        .map(String::as_str)
}

fn load_spec(path: &str) -> Result<PipelineSpec, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {path}: {e}"))?;
    parse_spec(&text).map_err(|e| e.to_string())
}

fn print_report(report: &PipelineReport) -> i32 {
    println!(
        "{}",
        serde_json::to_string_pretty(report).expect("serializable report")
    );
    report.exit_code()
}

fn cmd_check(args: &[String], caps: Caps) -> i32 {
    let Some(path) = args.first() else {
        eprintln!("usage: geoforge check <spec.json>");
        return 2;
    };
    match load_spec(path) {
        Ok(spec) => print_report(&run_pipeline(&spec, caps)),
        Err(e) => {
            eprintln!("{e}");
            2
        }
    }
}

/// Build a one-step twist/wreath pipeline from flags and run it.
fn cmd_construct(args: &[String], caps: Caps, is_wreath: bool) -> i32 {
    let Some(path) = args.first() else {
        eprintln!("usage: geoforge twist|wreath <spec.json> --alpha A --beta B ...");
        return 2;
    };
    let mut spec = match load_spec(path) {
        Ok(spec) => spec,
        Err(e) => {
            eprintln!("{e}");
            return 2;
        }
    };
    let (Some(alpha), Some(beta)) = (flag_value(args, "--alpha"), flag_value(args, "--beta"))
    else {
        eprintln!("--alpha and --beta are required");
        return 2;
    };
    let reps: Vec<String> = flag_value(args, "--reps")
        .map(|r| r.split(',').map(str::trim).map(String::from).collect())
        .unwrap_or_default();
    let bind = flag_value(args, "--bind").unwrap_or("result").to_string();
    let step = if is_wreath {
        let Some(slots) = flag_value(args, "--slots").and_then(|s| s.parse().ok()) else {
            eprintln!("--slots N is required for wreath");
            return 2;
        };
        let omega = match flag_value(args, "--blocks") {
            Some(text) => {
                let blocks: Vec<Vec<u32>> = text
                    .split(';')
                    .map(|b| b.split(',').filter_map(|p| p.trim().parse().ok()).collect())
                    .collect();
                geoforge::pipeline::OmegaSpec::Blocks { blocks }
            }
            None => geoforge::pipeline::OmegaSpec::Natural,
        };
        geoforge::pipeline::Step::Wreath {
            alpha: alpha.into(),
            beta: beta.into(),
            omega,
            slots,
            reps,
            bind,
        }
    } else {
        let Some(action) = flag_value(args, "--action") else {
            eprintln!("--action is required for twist");
            return 2;
        };
        geoforge::pipeline::Step::Twist {
            alpha: alpha.into(),
            beta: beta.into(),
            action: action.into(),
            reps,
            bind,
        }
    };
    spec.pipeline.push(step);
    print_report(&run_pipeline(&spec, caps))
}

fn cmd_materialize(args: &[String], caps: Caps) -> i32 {
    let Some(path) = args.first() else {
        eprintln!("usage: geoforge materialize <spec.json> --system S [--dot FILE] [--json FILE]");
        return 2;
    };
    let spec = match load_spec(path) {
        Ok(spec) => spec,
        Err(e) => {
            eprintln!("{e}");
            return 2;
        }
    };
    let Some(system) = flag_value(args, "--system") else {
        eprintln!("--system is required");
        return 2;
    };
    // run declarations plus any pipeline steps, then materialize the target
    let report = run_pipeline(&spec, caps);
    if report.exit_code() != 0 {
        return print_report(&report);
    }
    let mut spec = spec;
    spec.pipeline.push(geoforge::pipeline::Step::Materialize {
        system: system.to_string(),
        bind: "__target".into(),
    });
    if let Some(file) = flag_value(args, "--dot") {
        spec.pipeline.push(geoforge::pipeline::Step::Export {
            geometry: "__target".into(),
            format: geoforge::pipeline::ExportFormat::Dot,
            path: file.to_string(),
        });
    }
    if let Some(file) = flag_value(args, "--json") {
        spec.pipeline.push(geoforge::pipeline::Step::Export {
            geometry: "__target".into(),
            format: geoforge::pipeline::ExportFormat::Json,
            path: file.to_string(),
        });
    }
    print_report(&run_pipeline(&spec, caps))
}

fn cmd_iso(args: &[String]) -> i32 {
    let (Some(left), Some(right)) = (args.first(), args.get(1)) else {
        eprintln!("usage: geoforge iso <g1.json> <g2.json>");
        return 2;
    };
    let load = |path: &str| -> Result<geoforge::materialize::Geometry, String> {
        let text =
            std::fs::read_to_string(path).map_err(|e| format!("cannot read {path}: {e}"))?;
        import_json(&text).map_err(|e| e.to_string())
    };
    match (load(left), load(right)) {
        (Ok(a), Ok(b)) => match colored_isomorphic(&a, &b, None) {
            Some(mapping) => {
                let pairs: Vec<(String, String)> = mapping
                    .iter()
                    .enumerate()
                    .map(|(i, &j)| {
                        (a.elements()[i].id.clone(), b.elements()[j].id.clone())
                    })
                    .collect();
                println!(
                    "{}",
                    serde_json::to_string_pretty(&pairs).expect("serializable mapping")
                );
                0
            }
            None => {
                eprintln!("not isomorphic");
                1
            }
        },
        (Err(e), _) | (_, Err(e)) => {
            eprintln!("{e}");
            2
        }
    }
}

fn cmd_street(args: &[String]) -> i32 {
    if args.first().map(String::as_str) != Some("path") {
        eprintln!("usage: geoforge street path --from \"on=\" --to \"on=3,5\"");
        return 2;
    }
    let (Some(from), Some(to)) = (flag_value(args, "--from"), flag_value(args, "--to")) else {
        eprintln!("--from and --to are required");
        return 2;
    };
    match (parse_state(from), parse_state(to)) {
        (Ok(a), Ok(b)) => {
            let path = street_path(&a, &b);
            println!(
                "{}",
                serde_json::to_string_pretty(&path).expect("serializable path")
            );
            0
        }
        (Err(e), _) | (_, Err(e)) => {
            eprintln!("{e}");
            2
        }
    }
}

fn cmd_suite(args: &[String]) -> i32 {
    let filter = flag_value(args, "--filter");
    let report = paper_suite(filter);
    if args.iter().any(|a| a == "--json") {
        println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("serializable suite")
        );
    } else {
        for entry in &report.entries {
            println!(
                "{:<24} {}  {:>6} ms  {}",
                entry.name,
                if entry.pass { "PASS" } else { "FAIL" },
                entry.millis,
                entry.detail
            );
        }
        println!(
            "total {} ms, {}",
            report.total_millis,
            if report.all_pass { "all pass" } else { "FAILURES" }
        );
    }
    if report.cap_exceeded {
        3
    } else if report.all_pass {
        0
    } else {
        1
    }
}
