//! Duality pipeline checks: vertex algebras and their isomorphism, the flat
//! connection, the trivialization, the dual quasi-bialgebra, and the double
//! as a bidynamical structure.

use dynlforge::algebra::twist;
use dynlforge::catalog::catalog_get;
use dynlforge::duality::*;
use dynlforge::kernel::mat::vec_norm;
use dynlforge::lmatrix::{LEvaluator, Lcan};
use dynlforge::rng::SplitMix64;

fn sample_p(name: &str) -> Vec<f64> {
    match name {
        "so3-quadratic-AM" => vec![0.3, -0.2, 0.25],
        _ => vec![0.3],
    }
}

#[test]
fn vertex_bracket_at_zero_on_l_is_the_l_bracket() {
    let qb = catalog_get("so3-quadratic-AM").unwrap();
    let ev = Lcan::new(&qb);
    let p = vec![0.0; 3];
    let samples = vertex_samples(&qb, &p);
    // z-type samples carry the l-basis; their bracket is i([z, z'])
    let b = vertex_bracket(&qb, &ev, &p, &samples[0], &samples[1]).unwrap();
    // [x, y] = z in so3
    assert!((b.z[2] - 1.0).abs() < 1e-14);
    assert!(vec_norm(&b.xi) < 1e-14);
}

#[test]
fn vertex_bracket_at_zero_on_lperp_is_the_phi_contraction() {
    // sl2 with φ = κ h∧e∧f: [e*, f*]*_0 = ⟨e*⊗f*⊗1, φ⟩ = κ h
    let qb = catalog_get("sl2-cocomm-compat").unwrap();
    let ev = Lcan::new(&qb);
    let p = vec![0.0];
    let mk = |idx: usize| VertexElement {
        p: p.clone(),
        z: vec![0.0],
        xi: {
            let mut v = vec![0.0; 3];
            v[idx] = 1.0;
            v
        },
    };
    let b = vertex_bracket(&qb, &ev, &p, &mk(1), &mk(2)).unwrap();
    assert!((b.z[0] - 1.0).abs() < 1e-14, "expected κ h with κ = 1");
    assert!(vec_norm(&b.xi) < 1e-14);
}

#[test]
fn vertex_bracket_antisymmetry_and_closure() {
    let mut rng = SplitMix64::new(31);
    for name in ["sl2-cartan", "so3-quadratic-AM", "sl2-ev-twist"] {
        let qb = catalog_get(name).unwrap();
        let ev = Lcan::new(&qb);
        let p = sample_p(name);
        let samples = vertex_samples(&qb, &p);
        for _ in 0..4 {
            let i = rng.next_u64() as usize % samples.len();
            let j = rng.next_u64() as usize % samples.len();
            let bij = vertex_bracket(&qb, &ev, &p, &samples[i], &samples[j]).unwrap();
            let bji = vertex_bracket(&qb, &ev, &p, &samples[j], &samples[i]).unwrap();
            let za: Vec<f64> = bij.z.iter().zip(&bji.z).map(|(a, b)| a + b).collect();
            let xa: Vec<f64> = bij.xi.iter().zip(&bji.xi).map(|(a, b)| a + b).collect();
            assert!(
                vec_norm(&za).max(vec_norm(&xa)) < 1e-12,
                "{name}: antisymmetry"
            );
            assert!(bij.membership_residual(&qb) < 1e-10, "{name}: closure");
        }
    }
}

#[test]
fn vertex_bracket_rejects_non_members() {
    let qb = catalog_get("sl2-cartan").unwrap();
    let ev = Lcan::new(&qb);
    let p = vec![0.4];
    // z = h with ξ = 0 violates i*ξ = ad*_z p at p ≠ 0... for the Cartan
    // ad*_h p = 0, so instead pollute the m^⊥-part directly
    let bad = VertexElement {
        p: p.clone(),
        z: vec![1.0],
        xi: vec![0.5, 0.0, 0.0],
    };
    assert!(bad.membership_residual(&qb) > 0.1);
    let good = &vertex_samples(&qb, &p)[0];
    assert!(matches!(
        vertex_bracket(&qb, &ev, &p, &bad, good),
        Err(dynlforge::error::EngineError::Membership(_))
    ));
}

#[test]
fn vertex_jacobi_on_samples() {
    let qb = catalog_get("sl2-ev-twist").unwrap();
    let ev = Lcan::new(&qb);
    let p = vec![0.25];
    let s = vertex_samples(&qb, &p);
    let br = |x: &VertexElement, y: &VertexElement| vertex_bracket(&qb, &ev, &p, x, y).unwrap();
    let (a, b, c) = (&s[0], &s[1], &s[2]);
    let mut zacc = vec![0.0; 1];
    let mut xacc = vec![0.0; 3];
    for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
        let t = br(&br(x, y), z);
        for i in 0..1 {
            zacc[i] += t.z[i];
        }
        for i in 0..3 {
            xacc[i] += t.xi[i];
        }
    }
    assert!(vec_norm(&zacc).max(vec_norm(&xacc)) < 1e-9);
}

#[test]
fn vertex_iso_round_trip_and_bracket_preservation() {
    for name in ["sl2-cartan", "so3-quadratic-AM", "sl2-ev-twist"] {
        let qb = catalog_get(name).unwrap();
        let ev = Lcan::new(&qb);
        let p = sample_p(name);
        let samples = vertex_samples(&qb, &p);
        for x in &samples {
            let x0 = vertex_iso(&qb, &ev, &p, x).unwrap();
            let back = vertex_iso_inv(&qb, &p, &x0).unwrap();
            let dz = vec_norm(
                &x.z.iter()
                    .zip(&back.z)
                    .map(|(a, b)| a - b)
                    .collect::<Vec<_>>(),
            );
            let dxi = vec_norm(
                &x.xi
                    .iter()
                    .zip(&back.xi)
                    .map(|(a, b)| a - b)
                    .collect::<Vec<_>>(),
            );
            assert!(
                dz.max(dxi) < 1e-10,
                "{name}: round trip {:.3e}",
                dz.max(dxi)
            );
        }
        for (i, j) in [(0, 1), (1, 2), (0, 2)] {
            let r = iso_bracket_residual(&qb, &ev, &p, &samples[i], &samples[j]).unwrap();
            assert!(r < 1e-9, "{name}: bracket preservation {r:.3e}");
        }
    }
}

#[test]
fn vertex_iso_at_zero_is_identity() {
    let qb = catalog_get("sl2-cartan").unwrap();
    let ev = Lcan::new(&qb);
    let p = vec![0.0];
    for x in vertex_samples(&qb, &p) {
        let y = vertex_iso(&qb, &ev, &p, &x).unwrap();
        let dz = vec_norm(&x.z.iter().zip(&y.z).map(|(a, b)| a - b).collect::<Vec<_>>());
        let dxi = vec_norm(
            &x.xi
                .iter()
                .zip(&y.xi)
                .map(|(a, b)| a - b)
                .collect::<Vec<_>>(),
        );
        assert!(dz.max(dxi) < 1e-14);
    }
}

#[test]
fn nabla_at_zero_and_flatness() {
    for name in ["sl2-cartan", "so3-quadratic-AM", "sl2-ev-twist"] {
        let qb = catalog_get(name).unwrap();
        let ev = Lcan::new(&qb);
        let dl = qb.layout().dl;
        // ∇_0(α) = (0, sα)
        let mut alpha = vec![0.0; dl];
        alpha[0] = 1.0;
        let (u, st) = nabla(&qb, &vec![0.0; dl], &alpha).unwrap();
        assert!(vec_norm(&u) < 1e-14);
        assert!((st[0] - 1.0).abs() < 1e-14);
        assert!(vec_norm(&st[1..]) < 1e-14);

        let p = sample_p(name);
        let (f1, f2) = flatness_residual(&qb, &ev, &p).unwrap();
        assert!(
            f1 < 1e-9 && f2 < 1e-9,
            "{name}: flatness ({f1:.3e}, {f2:.3e})"
        );
        let uh = u_h_lemma_residual(&qb, &ev, &p).unwrap();
        assert!(uh < 1e-10, "{name}: u = h − l s̃ defect {uh:.3e}");
    }
}

#[test]
fn trivialization_forms_and_psi() {
    let mut rng = SplitMix64::new(77);
    for name in ["sl2-cartan", "so3-quadratic-AM", "sl2-ev-twist"] {
        let qb = catalog_get(name).unwrap();
        let ev = Lcan::new(&qb);
        let lay = qb.layout();
        assert!(trivialize_at_zero_matches(&qb).unwrap() < 1e-14, "{name}");
        let p = sample_p(name);
        for _ in 0..3 {
            let alpha: Vec<f64> = (0..lay.dl).map(|_| rng.next_sym()).collect();
            let z: Vec<f64> = (0..lay.dl).map(|_| rng.next_sym()).collect();
            let xi: Vec<f64> = (0..lay.dm).map(|_| rng.next_sym()).collect();
            let forms = trivialization_forms_residual(&qb, &ev, &p, &alpha, &z, &xi).unwrap();
            assert!(forms < 1e-10, "{name}: τ-form vs ℓ-free form {forms:.3e}");
            let psi = psi_consistency_residual(&qb, &p, &z, &xi).unwrap();
            assert!(psi < 1e-10, "{name}: ψ vs −φ_p^{{-1}} {psi:.3e}");
        }
    }
}

#[test]
fn algebroid_morphism_on_polynomial_sections() {
    let mut rng = SplitMix64::new(2024);
    for name in ["sl2-cartan", "so3-quadratic-AM"] {
        let qb = catalog_get(name).unwrap();
        let ev = Lcan::new(&qb);
        let lay = qb.layout();
        let (dl, dm) = (lay.dl, lay.dm);
        let mut rand_poly = |out: usize| {
            let mut terms = Vec::new();
            // constant, all linear, and a few quadratic monomials
            let mut exps = vec![vec![0u32; dl]];
            for a in 0..dl {
                let mut e = vec![0u32; dl];
                e[a] = 1;
                exps.push(e.clone());
                e[a] = 2;
                exps.push(e);
            }
            for e in exps {
                terms.push((e, (0..out).map(|_| 0.4 * rng.next_sym()).collect()));
            }
            PolyMap::new(dl, out, terms)
        };
        let mut make_section = |scale_z: f64| TrivialSection {
            alpha: rand_poly(dl),
            z: {
                let mut s = rand_poly(dl);
                for (_, c) in s.terms.iter_mut() {
                    for v in c.iter_mut() {
                        *v *= scale_z;
                    }
                }
                s
            },
            xi_perp: rand_poly(dm),
        };
        let s1 = make_section(1.0);
        let s2 = make_section(0.7);
        s1.check_degree();
        s2.check_degree();
        let p = sample_p(name);
        let r = morphism_residual(&qb, &ev, &s1, &s2, &p).unwrap();
        assert!(r < 1e-8, "{name}: morphism residual {r:.3e}");
        let a1 = anchor_residual(&qb, &s1, &p).unwrap();
        assert!(a1 < 1e-10, "{name}: anchor residual {a1:.3e}");
    }
}

#[test]
fn morphism_negative_control_identity_map() {
    // replacing T by the identity pairing of coordinates must break the
    // morphism equation badly
    let qb = catalog_get("so3-quadratic-AM").unwrap();
    let ev = Lcan::new(&qb);
    let p = vec![0.3, -0.2, 0.25];
    // sections whose T-images genuinely differ from the raw coordinates
    let s1 = TrivialSection {
        alpha: PolyMap::new(3, 3, vec![(vec![0, 0, 0], vec![0.5, 0.1, -0.2])]),
        z: PolyMap::new(3, 3, vec![(vec![1, 0, 0], vec![0.3, 0.0, 0.4])]),
        xi_perp: PolyMap::zero(3, 0),
    };
    let s2 = TrivialSection {
        alpha: PolyMap::new(3, 3, vec![(vec![0, 1, 0], vec![0.2, -0.3, 0.1])]),
        z: PolyMap::new(3, 3, vec![(vec![0, 0, 0], vec![-0.4, 0.2, 0.6])]),
        xi_perp: PolyMap::zero(3, 0),
    };
    let good = morphism_residual(&qb, &ev, &s1, &s2, &p).unwrap();
    assert!(good < 1e-8);
    // "identity" comparison: bracket the raw sections through the N(U)
    // formula by skipping T — realized by evaluating the morphism residual
    // at a fake point where T degenerates is not possible, so instead check
    // that T itself is far from the identity on these inputs.
    let (tl, tgs) = trivialize(
        &qb,
        &p,
        &s1.alpha.eval::<f64>(&p),
        &s1.z.eval::<f64>(&p),
        &s1.xi_perp.eval::<f64>(&p),
    )
    .unwrap();
    let mut diff = 0.0f64;
    let a = s1.alpha.eval::<f64>(&p);
    let z = s1.z.eval::<f64>(&p);
    for i in 0..3 {
        diff = diff.max((tl[i] - z[i]).abs());
        diff = diff.max((tgs[i] - a[i]).abs());
    }
    assert!(
        diff > 1e-2,
        "T should differ from the identity, got {diff:.3e}"
    );
}

#[test]
fn dual_over_l_properties() {
    // AM self-duality
    let am = catalog_get("so3-quadratic-AM").unwrap();
    let d = dual_over_l(&am).unwrap();
    assert!(d.dual.tensor_diff(&am) < 1e-12, "AM dual must be AM itself");
    assert!(d.k_iso_residual < 1e-12);

    for name in ["sl2-cartan", "sl2-ev-twist", "heisenberg-degenerate"] {
        let qb = catalog_get(name).unwrap();
        let d = dual_over_l(&qb).unwrap();
        assert!(d.dual.bidynamical, "{name}: dual must be bidynamical");
        assert!(
            d.k_iso_residual < 1e-10,
            "{name}: K iso {:.3e}",
            d.k_iso_residual
        );
        // the dual is exactly involutive in these conventions; the opposite
        // structure coincides with the bidual precisely when [l, m] = 0 on
        // the mixed signs (heisenberg: central l)
        let (vs_op, vs_plain) = bidual_op_residual(&qb).unwrap();
        assert!(vs_plain < 1e-10, "{name}: (G*)* vs G {vs_plain:.3e}");
        if name == "heisenberg-degenerate" {
            assert!(vs_op < 1e-10, "{name}: (G*)* vs G^op {vs_op:.3e}");
        }
    }
}

#[test]
fn ev_dual_cobracket_table() {
    // Dual-of-the-EV-twist table for sl2, with the root vectors e_α = e,
    // e_{-α} = f, e^α = κ(e_{-α}) = 4e*, h_α = h (κ the Killing map), and
    // (α, p)_{h*}-geometry giving (α, α) = 1/2.
    let qb = catalog_get("sl2-ev-twist").unwrap();
    let t_alpha = dynlforge::catalog::ev_t_alpha_full();
    let d = dual_over_l(&qb).unwrap();
    // G* basis: (h, e*, f*); its dual basis ↦ (h*, e, f) ⊂ d.
    let w = d.dual.w_basis(1); // ϖ*_{e*}

    // ϖ*_{e^α} e_α = 4 · ϖ*_{e*}(e-dual) = t_α h_α
    let got_h = 4.0 * w.get(0, 1);
    assert!(
        (got_h - t_alpha).abs() < 1e-10,
        "ϖ*_{{e^α}}e_α = {got_h:.6} h, want t_α = {t_alpha:.6}"
    );
    assert!(w.get(1, 1).abs() + w.get(2, 1).abs() < 1e-12);

    // ϖ*_{e^α} α = −t_α (α,α) e^α: with α = 2·(h-dual), e^α = 4e*, this
    // reads 8 ϖ*_{e*}(h-dual) = −t_α · (1/2) · 4 e*
    let got_e = 8.0 * w.get(1, 0);
    assert!(
        (got_e + 2.0 * t_alpha).abs() < 1e-10,
        "ϖ*_{{e^α}}α = {got_e:.6} e*, want −2 t_α"
    );

    // ⟨α ⊗ e_α ⊗ 1, φ*⟩ = (α,α) e^{-α} = 2 f*
    let phi_f = 2.0 * d.dual.phi(0, 1, 2);
    assert!(
        (phi_f - 2.0).abs() < 1e-10,
        "φ* contraction {phi_f:.6}, want 2"
    );

    // ⟨e_α ⊗ e_β ⊗ 1, φ*⟩ = δ_{α,-β} h_α: contraction of (e, f)-duals gives h
    assert!((d.dual.phi(1, 2, 0) - 1.0).abs() < 1e-10);
}

#[test]
fn double_bidyn_structure() {
    for name in ["sl2-cartan", "so3-quadratic-AM"] {
        let qb = catalog_get(name).unwrap();
        let g2 = double_bidyn(&qb).unwrap();
        assert!(g2.bidynamical);
        let lay = qb.layout();
        // ∂_z rmx = 0 for z in the l-block
        for i in 0..lay.dl {
            assert!(g2.w_basis(i).max_abs() < 1e-14, "{name}: ∂_z rmx != 0");
        }
        // twisting by −rmx yields the cocommutative structure
        let tw = twist(&g2, &rmx_hat(lay.n()).neg()).unwrap();
        let wmax = (0..g2.n())
            .map(|i| tw.w_basis(i).max_abs())
            .fold(0.0f64, f64::max);
        assert!(wmax < 1e-12, "{name}: twisted cobracket {wmax:.3e}");

        let p = sample_p(name);
        let f = functoriality_residual(&qb, &g2, &p).unwrap();
        assert!(f < 1e-9, "{name}: functoriality {f:.3e}");
    }
}

#[test]
fn link_identity_holds() {
    for name in ["sl2-cartan", "so3-quadratic-AM", "sl2-ev-twist"] {
        let qb = catalog_get(name).unwrap();
        let dual = dual_over_l(&qb).unwrap();
        let g2 = double_bidyn(&qb).unwrap();
        let p = sample_p(name);
        let rep = link_residual(&qb, &dual, &g2, &p).unwrap();
        assert!(
            rep.link_residual < 1e-8,
            "{name}: link {:.3e}",
            rep.link_residual
        );
        assert!(
            rep.k_rmx_residual < 1e-12,
            "{name}: k-rmx {:.3e}",
            rep.k_rmx_residual
        );
        // at p = 0 both sides vanish
        let rep0 = link_residual(&qb, &dual, &g2, &vec![0.0; qb.layout().dl]).unwrap();
        assert!(rep0.link_residual < 1e-12);
    }
}
