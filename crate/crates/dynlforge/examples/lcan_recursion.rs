//! The formal degree-by-degree recursion for the canonical ℓ-matrix, checked
//! against the closed form: the order-K jet matches to O(t^{K+1}) along a ray.
//!
//! ```bash
//! cargo run --example lcan_recursion
//! ```

use dynlforge::catalog::catalog_get;
use dynlforge::kernel::deriv::loglog_slope;
use dynlforge::lmatrix::{lcan_eval, lcan_jets};

fn main() {
    let qb = catalog_get("sl2-cartan").unwrap();
    let p0 = vec![1.0];
    for order in [2usize, 4, 6] {
        let jet = lcan_jets(&qb, &p0, order);
        let ts: Vec<f64> = (3..=10).map(|k| 0.5f64.powi(k)).collect();
        let errs: Vec<f64> = ts
            .iter()
            .map(|&t| {
                let p: Vec<f64> = p0.iter().map(|c| c * t).collect();
                jet.eval(t).sub(&lcan_eval(&qb, &p).unwrap().l).max_abs()
            })
            .collect();
        println!("order {order}:");
        for (t, e) in ts.iter().zip(&errs) {
            println!("  t = {t:<9.5}  |jet - closed form| = {e:.3e}");
        }
        if let Some(slope) = loglog_slope(&ts, &errs, 1e-13) {
            println!(
                "  log-log slope = {slope:.2} (expect >= {:.1})",
                order as f64 + 0.7
            );
        } else {
            println!("  agreement at rounding level across the whole range");
        }
    }
}
