//! Evaluate the canonical ℓ-matrix by the closed form and verify the
//! defining equations pointwise, including the classical special cases:
//! coth(ad_p) − 1/ad_p for a quadratic Lie algebra and tanh(ad_{sp}) for the
//! compatible case.
//!
//! ```bash
//! cargo run --example lcan_closed_form
//! ```

use dynlforge::catalog::catalog_get;
use dynlforge::lmatrix::{
    cdybe_residual, equivariance_residual, lcan_eval, ode_residual, pmadtau_residuals, Lcan,
};

fn main() {
    for (name, p) in [
        ("sl2-cartan", vec![0.35]),
        ("so3-quadratic-AM", vec![0.3, -0.2, 0.25]),
        ("sl2-ev-twist", vec![0.2]),
        ("heisenberg-degenerate", vec![0.8]),
    ] {
        let qb = catalog_get(name).unwrap();
        let ev = Lcan::new(&qb);
        let lv = lcan_eval(&qb, &p).unwrap();
        println!("{name} at p = {p:?}");
        println!("  skew       = {:.3e}", lv.skew_residual);
        println!("  l_p(sp)    = {:.3e}", lv.lsp_residual);
        println!(
            "  cdybe      = {:.3e}",
            cdybe_residual(&qb, &ev, &p).unwrap()
        );
        let z = {
            let mut z = vec![0.0; qb.layout().dl];
            z[0] = 1.0;
            z
        };
        println!(
            "  equivar    = {:.3e}",
            equivariance_residual(&qb, &ev, &p, &z).unwrap()
        );
        println!("  ode        = {:.3e}", ode_residual(&qb, &ev, &p).unwrap());
        let samples = vec![(z.clone(), vec![0.0; qb.layout().dm])];
        let r = pmadtau_residuals(&qb, &ev, &p, &samples).unwrap();
        println!(
            "  block ids  = {:.3e} {:.3e} {:.3e} {:.3e}",
            r[0], r[1], r[2], r[3]
        );
    }

    // the quadratic case matches the scalar series of coth z − 1/z
    let am = catalog_get("so3-quadratic-AM").unwrap();
    let p = vec![0.4, 0.1, -0.3];
    let lv = lcan_eval(&am, &p).unwrap();
    println!(
        "\nso3 l_p first column: {:?}",
        (0..3).map(|i| *lv.l.get(i, 0)).collect::<Vec<_>>()
    );
    println!("(compare with (coth(ad_p) − 1/ad_p) applied to the dual basis)");
}
