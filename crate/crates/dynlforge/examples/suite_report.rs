//! Run a residual suite through the library API and render the JSON-lines
//! report (the same machinery behind `dynlforge suite`).
//!
//! ```bash
//! cargo run --example suite_report
//! ```

use dynlforge::catalog::catalog_get;
use dynlforge::suites::{detect_conditioning_radius, run_suite, SuiteKind, SuiteOptions};

fn main() {
    let qb = catalog_get("sl2-cartan").unwrap();
    println!(
        "detected conditioning radius: {}",
        detect_conditioning_radius(&qb, 7)
    );

    let opts = SuiteOptions {
        seed: 7,
        grid_count: 10,
        ..Default::default()
    };
    let report = run_suite(&qb, SuiteKind::Lcan, &opts);
    println!(
        "suite {} on {}: verdict {}, max residual {:.3e} over {} points ({} skipped)",
        report.summary.suite,
        report.summary.setup,
        report.summary.verdict,
        report.summary.max_residual,
        report.summary.total_points,
        report.summary.skipped_points,
    );
    // the serialized form round-trips bit-exactly
    let text = report.to_jsonl();
    let back = dynlforge::report::ResidualReport::from_jsonl(&text).unwrap();
    assert_eq!(text, back.to_jsonl());
    print!("{}", text.lines().last().unwrap());
    println!();
}
