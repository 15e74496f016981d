//! Load a quasi-bialgebra from its JSON description and inspect the
//! validation report.
//!
//! ```bash
//! cargo run --example validate_setup
//! ```

use dynlforge::algebra::load_setup;

const SL2: &str = r#"{
  "name": "sl2-demo",
  "dim_l": 1, "dim_m": 2,
  "labels": ["h", "e", "f"],
  "brackets": [[0,1,1,2.0], [0,2,2,-2.0], [1,2,0,1.0]],
  "cobracket": [],
  "phi": [[0,1,2,"0.0625"]],
  "bidynamical": true
}"#;

fn main() {
    let (qb, report) = load_setup(SL2).expect("valid setup");
    println!("setup {:?}: bidynamical = {}", qb.name, qb.bidynamical);
    for check in &report.checks {
        println!(
            "  {:<32} {:>12.3e}  (tol {:.1e})  {}",
            check.name,
            check.value,
            check.tolerance,
            if check.pass { "ok" } else { "FAIL" }
        );
    }

    // a deliberately inconsistent bracket is rejected with a named residual
    let bad = SL2.replace("[0,1,1,2.0]", "[0,1,1,2.0], [1,0,1,2.0]");
    match load_setup(&bad) {
        Err(e) => println!("inconsistent variant rejected: {e}"),
        Ok(_) => unreachable!(),
    }
}
