//! Structure-constant layer checks: setup loading, double construction,
//! splitting extraction, twisting and the opposite involution.

use dynlforge::algebra::*;
use dynlforge::catalog::{catalog_get, ev_twist_map, NAMES};
use dynlforge::error::AlgebraError;
use dynlforge::kernel::mat::Mat;
use dynlforge::lmatrix::{cdybe_residual, equivariance_residual, Lcan, Shifted};
use dynlforge::rng::SplitMix64;

const SL2_JSON: &str = r#"{
  "name": "sl2",
  "dim_l": 1, "dim_m": 2,
  "labels": ["h", "e", "f"],
  "brackets": [[0,1,1,2.0], [0,2,2,-2.0], [1,2,0,1.0]],
  "cobracket": [],
  "phi": [[0,1,2,"1.0"]],
  "bidynamical": true
}"#;

#[test]
fn load_setup_accepts_sl2_with_string_values() {
    let (qb, report) = load_setup(SL2_JSON).unwrap();
    assert!(report.pass());
    assert!(qb.bidynamical);
    assert_eq!(qb.n(), 3);
    assert_eq!(qb.phi(0, 1, 2), 1.0);
}

#[test]
fn load_setup_rejects_antisymmetry_conflict() {
    let bad = SL2_JSON.replace("[0,1,1,2.0], [0,2,2,-2.0]", "[0,1,1,2.0], [1,0,1,2.0]");
    match load_setup(&bad) {
        Err(AlgebraError::Structure { residual, .. }) => {
            assert!(residual.contains("antisymmetry"))
        }
        other => panic!("expected antisymmetry StructureError, got {other:?}"),
    }
}

#[test]
fn load_setup_rejects_malformed_json() {
    assert!(matches!(
        load_setup("{ not json"),
        Err(AlgebraError::Parse(_))
    ));
}

#[test]
fn sl2_phi_scan_every_kappa_is_admissible() {
    // Λ³ of a 3-dimensional unimodular algebra is ad-invariant, so the
    // double satisfies Jacobi for every κ; the Jacobi-residual oracle
    // confirms this rather than singling out one value.
    for kappa in [-2.0, -1.0 / 16.0, 0.5, 1.0, 3.0] {
        let doc = SL2_JSON.replace("\"1.0\"", &format!("{kappa}"));
        let (qb, _) = load_setup(&doc).unwrap();
        assert!(qb.bidynamical, "κ = {kappa} must be admissible");
    }
}

#[test]
fn random_phi_on_four_dims_breaks_the_axioms() {
    // on gl2 = sl2 ⊕ center a generic trivector is not ad-invariant
    let mut rng = SplitMix64::new(99);
    let basis =
        DecomposedBasis::new(2, 2, vec!["h".into(), "c".into(), "e".into(), "f".into()]).unwrap();
    let g = LieAlgebraData::from_triples(basis, &[(0, 2, 2, 2.0), (0, 3, 3, -2.0), (2, 3, 0, 1.0)])
        .unwrap();
    let mut failures = 0;
    for _ in 0..5 {
        let phi: Vec<(usize, usize, usize, f64)> = vec![
            (0, 1, 2, rng.next_sym()),
            (0, 1, 3, rng.next_sym()),
            (0, 2, 3, rng.next_sym()),
            (1, 2, 3, rng.next_sym()),
        ];
        match QuasiBialgebra::new("gl2-random-phi".into(), g.clone(), &[], &phi, false, None) {
            Err(AlgebraError::Axiom { .. }) => failures += 1,
            Ok(_) => {}
            Err(e) => panic!("unexpected error {e:?}"),
        }
    }
    assert!(
        failures >= 4,
        "random φ should generically fail ({failures}/5)"
    );
}

#[test]
fn double_of_cocommutative_is_semidirect_product() {
    // ϖ = 0, φ = 0: d = g ⋉ g*, Jacobi residual exactly 0
    let doc = SL2_JSON.replace("[[0,1,2,\"1.0\"]]", "[]");
    let (qb, _) = load_setup(&doc).unwrap();
    let d = qb.double();
    assert_eq!(d.lie.jacobi_residual(), 0.0);
    assert_eq!(d.invariance_residual(), 0.0);
    assert_eq!(d.gstar0_closure_residual(), 0.0);
}

#[test]
fn extract_build_round_trip() {
    for name in NAMES {
        let qb = catalog_get(name).unwrap();
        let d = qb.double();
        let split = LagrangianSplitting::canonical(d);
        let back =
            extract_from_splitting(d, &split, qb.g.basis.clone(), qb.name.clone(), Some(qb.tol))
                .unwrap();
        let diff = back.tensor_diff(&qb);
        assert!(diff < 1e-12, "{name}: round trip {diff:.3e}");
    }
}

#[test]
fn non_isotropic_b_is_rejected() {
    let qb = catalog_get("sl2-cartan").unwrap();
    let d = qb.double();
    let mut split = LagrangianSplitting::canonical(d);
    // pollute b with a g-direction so (b, b) no longer vanishes
    split.b.set(0, 1, 1.0);
    let r = extract_from_splitting(d, &split, qb.g.basis.clone(), "bad".into(), None);
    assert!(matches!(r, Err(AlgebraError::Split(_))));
}

#[test]
fn twist_by_zero_is_identity() {
    let qb = catalog_get("sl2-cartan").unwrap();
    let t0 = Mat::zeros(3, 3);
    let tw = twist(&qb, &t0).unwrap();
    assert!(tw.tensor_diff(&qb) < 1e-14);
}

#[test]
fn twist_round_trip_and_ev_cobracket() {
    let qb = catalog_get("sl2-cartan").unwrap();
    let t = ev_twist_map(dynlforge::catalog::ev_t_alpha_full());
    let tw = twist(&qb, &t).unwrap();
    // the twisted setup is genuinely non-cocommutative
    let wmax = (0..3)
        .map(|i| tw.w_basis(i).max_abs())
        .fold(0.0f64, f64::max);
    assert!(wmax > 0.1, "ϖ^t should be nonzero, got {wmax:.3e}");
    assert!(tw.bidynamical, "EV twist stays bidynamical");
    // re-twisting by −t returns the original
    let back = twist(&tw, &t.neg()).unwrap();
    assert!(back.tensor_diff(&qb) < 1e-12);
}

#[test]
fn twist_shifts_every_canonical_l_matrix() {
    // lcan(G) − t solves the equations of G^t, for the EV twist and for a
    // seeded random skew map
    let qb = catalog_get("sl2-cartan").unwrap();
    let base = Lcan::new(&qb);
    let mut rng = SplitMix64::new(5150);
    let mut rand_skew = Mat::<f64>::zeros(3, 3);
    for i in 0..3 {
        for j in i + 1..3 {
            let v = 0.3 * rng.next_sym();
            rand_skew.set(i, j, v);
            rand_skew.set(j, i, -v);
        }
    }
    for t in [
        Mat::zeros(3, 3),
        ev_twist_map(dynlforge::catalog::ev_t_alpha_full()),
        rand_skew,
    ] {
        let gt = twist(&qb, &t).unwrap();
        let shifted = Shifted {
            base: &base,
            t: t.clone(),
        };
        for p in [vec![0.2], vec![-0.35]] {
            let c = cdybe_residual(&gt, &shifted, &p).unwrap();
            assert!(c < 1e-9, "CDYBE for twisted setup: {c:.3e}");
            let e = equivariance_residual(&gt, &shifted, &p, &[1.0]).unwrap();
            assert!(e < 1e-9, "equivariance for twisted setup: {e:.3e}");
        }
    }
}

#[test]
fn opposite_is_an_involution_with_the_expected_signs() {
    let qb = catalog_get("sl2-cartan").unwrap();
    let op = qb.opposite().unwrap();
    // [h,e]^op = −2e, [e,f]^op = h
    assert_eq!(op.g.c(0, 1, 1), -2.0);
    assert_eq!(op.g.c(1, 2, 0), 1.0);
    let back = op.opposite().unwrap();
    assert!(back.tensor_diff(&qb) < 1e-14);

    // m = 0: op is the identity
    let am = catalog_get("so3-quadratic-AM").unwrap();
    assert!(am.opposite().unwrap().tensor_diff(&am) < 1e-14);
}

#[test]
fn sp_bracket_lands_in_mperp() {
    // [sp, z]_d ∈ m^⊥ for z in the l-block
    for name in NAMES {
        let qb = catalog_get(name).unwrap();
        let lay = qb.layout();
        let d = qb.double();
        let p: Vec<f64> = (0..lay.dl).map(|i| 0.4 - 0.1 * i as f64).collect();
        let a = d.ad_sp(&p);
        for z in 0..lay.dl {
            let mut v = vec![0.0; lay.dd()];
            v[z] = 1.0;
            let img = a.apply(&v);
            for (i, x) in img.iter().enumerate() {
                if !lay.mp().contains(&i) {
                    assert!(x.abs() < 1e-14, "{name}: [sp, z] leaves m^⊥ at index {i}");
                }
            }
        }
    }
}

#[test]
fn export_round_trips_through_validation() {
    for name in NAMES {
        let qb = catalog_get(name).unwrap();
        let json = export_json(&qb);
        let (back, report) = load_setup(&json).unwrap();
        assert!(report.pass(), "{name}: exported setup must validate");
        assert!(back.tensor_diff(&qb) < 1e-15, "{name}: export round trip");
        // deterministic export
        assert_eq!(json, export_json(&qb));
    }
}
