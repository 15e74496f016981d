//! The gauge action on dynamical ℓ-matrices: gauging the canonical solution
//! by σ = exp(Σ) preserves the defining equations, and the degree-by-degree
//! normalization recovers the canonical jet from a gauged one.
//!
//! ```bash
//! cargo run --example gauge_action
//! ```

use dynlforge::catalog::catalog_get;
use dynlforge::kernel::deriv::ray_jet;
use dynlforge::lmatrix::{
    cdybe_residual, equivariance_residual, gauge_normalize_jets, lcan_jets, GaugeMap, Gauged,
    LEvaluator, Lcan, LJet,
};

fn main() {
    // equivariant gauges for the Cartan line are Cartan-valued polynomials;
    // the Cartan stabilizes the canonical solution, so this family fixes it
    let qb = catalog_get("sl2-cartan").unwrap();
    let base = Lcan::new(&qb);
    let sigma = GaugeMap::new(
        1,
        3,
        vec![
            (vec![2], vec![0.5, 0.0, 0.0]),
            (vec![3], vec![-0.3, 0.0, 0.0]),
        ],
    );
    println!(
        "sl2 Σ equivariance defect: {:.3e}",
        sigma.equivariance_defect(&qb, &[vec![0.3], vec![-0.6]])
    );
    let gauged = Gauged {
        qb: &qb,
        base: &base,
        sigma,
        coboundary: None,
    };
    for x in [0.15, -0.4] {
        println!(
            "  p = {x:+.2}: gauged cdybe = {:.3e}, gauged equivariance = {:.3e}",
            cdybe_residual(&qb, &gauged, &[x]).unwrap(),
            equivariance_residual(&qb, &gauged, &[x], &[1.0]).unwrap()
        );
    }

    // a central l makes every polynomial Σ equivariant and the derivative
    // term θ genuinely moves the canonical solution
    let heis = catalog_get("heisenberg-degenerate").unwrap();
    let base_h = Lcan::new(&heis);
    let sigma = GaugeMap::new(
        1,
        3,
        vec![
            (vec![2], vec![0.0, 0.6, -0.2]),
            (vec![3], vec![0.1, 0.0, 0.3]),
        ],
    );
    let gauged = Gauged {
        qb: &heis,
        base: &base_h,
        sigma,
        coboundary: None,
    };
    let l = gauged.eval::<f64>(&[0.5]).unwrap();
    println!(
        "\nheisenberg: |l^σ| = {:.3} (canonical solution is 0 here), cdybe = {:.3e}",
        l.max_abs(),
        cdybe_residual(&heis, &gauged, &[0.5]).unwrap()
    );

    // jet normalization walks the gauge back, degree by degree
    let order = 6;
    let p0 = vec![1.0];
    let raw = ray_jet(|p| gauged.eval(p), &p0, order).unwrap();
    let lj = LJet {
        p0: p0.clone(),
        coeffs: raw.coeffs,
    };
    let sp = [1.0, 0.0, 0.0];
    let defect = (1..=order)
        .map(|k| {
            lj.coeffs[k]
                .apply(&sp)
                .iter()
                .map(|v| v.abs())
                .fold(0.0f64, f64::max)
        })
        .fold(0.0f64, f64::max);
    let (_sigmas, normalized) = gauge_normalize_jets(&heis, &lj).unwrap();
    let canonical = lcan_jets(&heis, &p0, order);
    let mut worst = 0.0f64;
    for k in 0..=order {
        worst = worst.max(normalized.coeffs[k].sub(&canonical.coeffs[k]).max_abs());
    }
    println!("gauged-jet defect max |[l]_k sp| = {defect:.3e}");
    println!("normalized gauged jet vs canonical jet: {worst:.3e}");
}
