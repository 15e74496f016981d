//! Build the Drinfel'd double d = g ⊕ g* of a catalog setup and measure its
//! structural residuals.
//!
//! ```bash
//! cargo run --example build_double
//! ```

use dynlforge::catalog::{catalog_get, NAMES};

fn main() {
    for name in NAMES {
        let qb = catalog_get(name).expect("catalog entry");
        let d = qb.double();
        println!(
            "{name:<22} dim d = {:>2}  jacobi = {:.2e}  pairing-invariance = {:.2e}  g*_0-closure = {:.2e}",
            d.dim(),
            d.lie.jacobi_residual(),
            d.invariance_residual(),
            d.gstar0_closure_residual(),
        );
    }
}
