//! Command-line surface:
//!
//! ```text
//! dynlforge validate <file>
//! dynlforge suite <file|catalog-name> <lcan|duality|link|jets|scalars>
//!                 [--seed N] [--grid-radius R] [--grid-count M] [--order K] [--out PATH]
//! dynlforge export <catalog-name>
//! ```
//!
//! Exit codes: 0 pass, 2 structure error, 3 parse error, 4 residual failure,
//! 5 usage error. DYNLFORGE_TOL_SCALE multiplies all suite tolerances.

use dynlforge::algebra::{export_json, load_setup, QuasiBialgebra};
use dynlforge::catalog::catalog_get;
use dynlforge::error::AlgebraError;
use dynlforge::suites::{run_suite, SuiteKind, SuiteOptions};
use std::process::exit;

const USAGE: &str = "usage:
  dynlforge validate <file>
  dynlforge suite <file|catalog-name> <lcan|duality|link|jets|scalars> \
[--seed N] [--grid-radius R] [--grid-count M] [--order K] [--out PATH]
  dynlforge export <catalog-name>";

fn usage_exit() -> ! {
    eprintln!("{USAGE}");
    exit(5)
}

fn algebra_exit(e: &AlgebraError) -> ! {
    eprintln!("error: {e}");
    match e {
        AlgebraError::Parse(_) => exit(3),
        AlgebraError::UnknownName(_) => exit(5),
        _ => exit(2),
    }
}

fn load_from_arg(arg: &str) -> QuasiBialgebra {
    if std::path::Path::new(arg).exists() {
        let text = match std::fs::read_to_string(arg) {
            Ok(t) => t,
            Err(e) => {
                eprintln!("error: cannot read {arg}: {e}");
                exit(3);
            }
        };
        match load_setup(&text) {
            Ok((qb, _)) => qb,
            Err(e) => algebra_exit(&e),
        }
    } else {
        match catalog_get(arg) {
            Ok(qb) => qb,
            Err(AlgebraError::UnknownName(_)) => {
                eprintln!("error: {arg} is neither a readable file nor a catalog name");
                exit(3);
            }
            Err(e) => algebra_exit(&e),
        }
    }
}

fn cmd_validate(file: &str) -> ! {
    let text = match std::fs::read_to_string(file) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {file}: {e}");
            exit(3);
        }
    };
    match load_setup(&text) {
        Ok((qb, report)) => {
            let doc = serde_json::json!({
                "setup": qb.name,
                "bidynamical": qb.bidynamical,
                "checks": report.checks,
                "verdict": if report.pass() { "pass" } else { "fail" },
            });
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
            exit(if report.pass() { 0 } else { 2 })
        }
        Err(e) => algebra_exit(&e),
    }
}

fn cmd_suite(args: &[String]) -> ! {
    if args.len() < 2 {
        usage_exit();
    }
    let suite = match SuiteKind::parse(&args[1]) {
        Some(s) => s,
        None => usage_exit(),
    };
    let qb = load_from_arg(&args[0]);

    let mut opts = SuiteOptions::default();
    if let Ok(scale) = std::env::var("DYNLFORGE_TOL_SCALE") {
        match scale.parse::<f64>() {
            Ok(s) if s > 0.0 => opts.tol_scale = s,
            _ => {
                eprintln!("error: bad DYNLFORGE_TOL_SCALE {scale:?}");
                exit(5);
            }
        }
    }
    let mut out_path: Option<String> = None;
    let mut i = 2;
    while i < args.len() {
        let need_value = |i: usize| -> &str {
            if i + 1 >= args.len() {
                usage_exit();
            }
            &args[i + 1]
        };
        match args[i].as_str() {
            "--seed" => match need_value(i).parse() {
                Ok(v) => opts.seed = v,
                Err(_) => usage_exit(),
            },
            "--grid-radius" => match need_value(i).parse() {
                Ok(v) => opts.grid_radius = Some(v),
                Err(_) => usage_exit(),
            },
            "--grid-count" => match need_value(i).parse() {
                Ok(v) => opts.grid_count = v,
                Err(_) => usage_exit(),
            },
            "--order" => match need_value(i).parse() {
                Ok(v) => opts.order = Some(v),
                Err(_) => usage_exit(),
            },
            "--out" => out_path = Some(need_value(i).to_string()),
            _ => usage_exit(),
        }
        i += 2;
    }

    let report = run_suite(&qb, suite, &opts);
    let text = report.to_jsonl();
    match &out_path {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("error: cannot write {path}: {e}");
                exit(5);
            }
        }
        None => print!("{text}"),
    }
    exit(if report.passed() { 0 } else { 4 })
}

fn cmd_export(name: &str) -> ! {
    match catalog_get(name) {
        Ok(qb) => {
            println!("{}", export_json(&qb));
            exit(0)
        }
        Err(e) => algebra_exit(&e),
    }
}

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    match args.first().map(String::as_str) {
        Some("validate") if args.len() == 2 => cmd_validate(&args[1]),
        Some("suite") if args.len() >= 3 => cmd_suite(&args[1..]),
        Some("export") if args.len() == 2 => cmd_export(&args[1]),
        _ => usage_exit(),
    }
}
