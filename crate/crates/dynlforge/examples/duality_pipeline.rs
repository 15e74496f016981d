//! The trivialization pipeline of the dual algebroid: vertex-algebra
//! isomorphism, flat connection, the ℓ-free trivialization, and the
//! Lie-algebroid morphism property on polynomial sections.
//!
//! ```bash
//! cargo run --example duality_pipeline
//! ```

use dynlforge::catalog::catalog_get;
use dynlforge::duality::{
    flatness_residual, iso_bracket_residual, morphism_residual, psi_consistency_residual,
    trivialization_forms_residual, u_h_lemma_residual, vertex_samples, PolyMap, TrivialSection,
};
use dynlforge::lmatrix::Lcan;

fn main() {
    let qb = catalog_get("so3-quadratic-AM").unwrap();
    let ev = Lcan::new(&qb);
    let p = vec![0.3, -0.2, 0.25];

    let samples = vertex_samples(&qb, &p);
    let mut brk = 0.0f64;
    for i in 0..samples.len() {
        for j in i + 1..samples.len() {
            brk = brk.max(iso_bracket_residual(&qb, &ev, &p, &samples[i], &samples[j]).unwrap());
        }
    }
    println!("vertex iso bracket preservation: {brk:.3e}");

    let (f1, f2) = flatness_residual(&qb, &ev, &p).unwrap();
    println!("flatness residuals: {f1:.3e}, {f2:.3e}");
    println!(
        "u = h − l s̃ lemma: {:.3e}",
        u_h_lemma_residual(&qb, &ev, &p).unwrap()
    );

    println!(
        "trivialization, two displayed forms agree: {:.3e}",
        trivialization_forms_residual(&qb, &ev, &p, &[0.2, -0.1, 0.4], &[0.3, 0.0, -0.2], &[])
            .unwrap()
    );
    println!(
        "ψ-part equals −φ_p^{{-1}}: {:.3e}",
        psi_consistency_residual(&qb, &p, &[0.3, 0.0, -0.2], &[]).unwrap()
    );

    // degree-2 polynomial sections of the trivial algebroid
    let lin = |a: usize, v: [f64; 3]| {
        let mut e = vec![0u32; 3];
        e[a] = 1;
        (e, v.to_vec())
    };
    let s1 = TrivialSection {
        alpha: PolyMap::new(3, 3, vec![lin(0, [0.5, 0.1, -0.2])]),
        z: PolyMap::new(
            3,
            3,
            vec![
                lin(1, [0.3, 0.0, 0.4]),
                (vec![2, 0, 0], vec![0.1, -0.2, 0.0]),
            ],
        ),
        xi_perp: PolyMap::zero(3, 0),
    };
    let s2 = TrivialSection {
        alpha: PolyMap::new(3, 3, vec![(vec![0, 0, 0], vec![0.2, -0.3, 0.1])]),
        z: PolyMap::new(3, 3, vec![lin(2, [-0.4, 0.2, 0.6])]),
        xi_perp: PolyMap::zero(3, 0),
    };
    println!(
        "algebroid morphism residual (degree ≤ 2 sections): {:.3e}",
        morphism_residual(&qb, &ev, &s1, &s2, &p).unwrap()
    );
}
