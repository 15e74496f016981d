//! The dual over l: extraction from the splitting (l⊕l^⊥, m^⊥⊕m) of the
//! double, the isomorphism K of the two doubles, self-duality of the
//! quadratic case, and the bidual.
//!
//! ```bash
//! cargo run --example dual_quasi_bialgebra
//! ```

use dynlforge::catalog::{catalog_get, ev_t_alpha_full};
use dynlforge::duality::{bidual_op_residual, dual_over_l};

fn main() {
    let am = catalog_get("so3-quadratic-AM").unwrap();
    let d = dual_over_l(&am).unwrap();
    println!(
        "so3-quadratic-AM: self-dual to {:.3e}, K isomorphism defect {:.3e}",
        d.dual.tensor_diff(&am),
        d.k_iso_residual
    );

    let qb = catalog_get("sl2-ev-twist").unwrap();
    let d = dual_over_l(&qb).unwrap();
    println!(
        "sl2-ev-twist: dual bidynamical = {}, K isomorphism defect {:.3e}",
        d.dual.bidynamical, d.k_iso_residual
    );
    // the printed dual cobracket entry: ϖ*_{e^α} e_α = t_α h_α with
    // e^α = κ(e_{-α}) = 4e*, e_α = e
    let t_alpha = ev_t_alpha_full();
    println!(
        "ϖ*_{{e^α}} e_α = {:.6} h  (t_α = {:.6})",
        4.0 * d.dual.w_basis(1).get(0, 1),
        t_alpha
    );

    let (vs_op, vs_plain) = bidual_op_residual(&qb).unwrap();
    println!("bidual vs original: {vs_plain:.3e} (the dual is involutive here)");
    println!("bidual vs opposite: {vs_op:.3e} (differs by the mixed [l,m] signs)");
}
