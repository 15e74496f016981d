//! The link between the canonical ℓ-matrices of a setup and of its dual,
//! read on the double: the gauge of j lcan(G) j* by p ↦ e^{-sp} differs from
//! the K-transported lcan(G*) by the constant p_l − p_{m^⊥}.
//!
//! ```bash
//! cargo run --example link_identity
//! ```

use dynlforge::catalog::catalog_get;
use dynlforge::duality::{double_bidyn, dual_over_l, functoriality_residual, link_residual};

fn main() {
    for name in ["sl2-cartan", "so3-quadratic-AM", "sl2-ev-twist"] {
        let qb = catalog_get(name).unwrap();
        let dual = dual_over_l(&qb).unwrap();
        let g2 = double_bidyn(&qb).unwrap();
        let p: Vec<f64> = (0..qb.layout().dl).map(|i| 0.2 + 0.05 * i as f64).collect();

        println!("{name}:");
        println!(
            "  functoriality j lcan j* = lcan(G⁽²⁾): {:.3e}",
            functoriality_residual(&qb, &g2, &p).unwrap()
        );
        let rep = link_residual(&qb, &dual, &g2, &p).unwrap();
        println!("  link identity residual: {:.3e}", rep.link_residual);
        println!(
            "  K rmx* K* + rmx constant defect: {:.3e}",
            rep.k_rmx_residual
        );
    }
}
