//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//!
//! Criteria 8 and 9 each contain one sub-check of a displayed constant that
//! is convention-sensitive (an overall involution relabeling of the dual-side
//! identification); those sub-checks are asserted literally and are expected
//! to fail, with the certified equivalent printed alongside. Run with
//! `--nocapture` to see every line.

use dynlforge::algebra::{extract_from_splitting, twist, LagrangianSplitting};
use dynlforge::catalog::{
    catalog_get, ev_t_alpha_full, ev_twist_map, scalar_series, SeriesName, NAMES,
};
use dynlforge::duality::{double_bidyn, dual_over_l, link_residual};
use dynlforge::kernel::deriv::ray_jet;
use dynlforge::kernel::mat::Mat;
use dynlforge::lmatrix::{
    cdybe_residual, equivariance_residual, gauge_normalize_jets, lcan_eval, lcan_jets, GaugeMap,
    Gauged, LEvaluator, LJet, Lcan, Shifted,
};
use dynlforge::rng::SplitMix64;
use dynlforge::suites::{run_suite, SuiteKind, SuiteOptions};

fn opts(seed: u64) -> SuiteOptions {
    SuiteOptions {
        seed,
        ..Default::default()
    }
}

/// Odd scalar series applied to ad_{sp} on the double, g*→g block; the
/// coefficients come from the exact rational catalog series, so this is an
/// oracle independent of the φ-function engine.
fn odd_series_block(
    qb: &dynlforge::algebra::QuasiBialgebra,
    p: &[f64],
    name: SeriesName,
    order: usize,
) -> Mat<f64> {
    let lay = qb.layout();
    let (n, dd) = (lay.n(), lay.dd());
    let series = scalar_series(name, order);
    let a = qb.double().ad_sp(p);
    let a2 = a.matmul(&a);
    let mut acc = Mat::<f64>::zeros(dd, dd);
    let mut pow = a.clone();
    let mut k = 1;
    while k <= order {
        let c = series.coeff(k);
        if !c.is_zero() {
            assert_eq!(c.c.len(), 1);
            let v = c.c[0].numer().to_string().parse::<f64>().unwrap()
                / c.c[0].denom().to_string().parse::<f64>().unwrap();
            acc = acc.add(&pow.scale(v));
        }
        pow = pow.matmul(&a2);
        k += 2;
    }
    acc.block(0, n, n, dd)
}

#[test]
fn criterion_01_structure_suite() {
    let mut worst_structure = 0.0f64;
    let mut worst_roundtrip = 0.0f64;
    for name in NAMES {
        let qb = catalog_get(name).unwrap();
        let d = qb.double();
        worst_structure = worst_structure
            .max(d.lie.jacobi_residual())
            .max(d.invariance_residual())
            .max(d.gstar0_closure_residual());
        let back = extract_from_splitting(
            d,
            &LagrangianSplitting::canonical(d),
            qb.g.basis.clone(),
            qb.name.clone(),
            Some(qb.tol),
        )
        .unwrap();
        worst_roundtrip = worst_roundtrip.max(back.tensor_diff(&qb));
    }
    let pass = worst_structure <= 1e-10 && worst_roundtrip <= 1e-12;
    println!(
        "criterion 1: {} — structure suite (jacobi+invariance {:.2e} <= 1e-10, extract∘build {:.2e} <= 1e-12)",
        if pass { "PASS" } else { "FAIL" },
        worst_structure,
        worst_roundtrip
    );
    assert!(pass);
}

#[test]
fn criterion_02_canonical_lmatrix_suite() {
    let mut all = true;
    for name in NAMES {
        let qb = catalog_get(name).unwrap();
        let report = run_suite(&qb, SuiteKind::Lcan, &opts(0xC2));
        println!(
            "criterion 2: {} — lcan suite on {name} (max residual {:.2e}, {} skipped of {})",
            if report.passed() { "PASS" } else { "FAIL" },
            report.summary.max_residual,
            report.summary.skipped_points,
            report.summary.total_points
        );
        all &= report.passed();
    }
    assert!(all, "canonical ℓ-matrix suite failed");
}

#[test]
fn criterion_03_jet_convergence() {
    let mut all = true;
    for name in ["sl2-cartan", "so3-quadratic-AM"] {
        let qb = catalog_get(name).unwrap();
        let report = run_suite(&qb, SuiteKind::Jets, &opts(0xC3));
        for r in &report.records {
            if r.name.starts_with("jet_vs_eval_slope") {
                println!(
                    "criterion 3: {} — {name} {} = {:.2} (>= {:.1})",
                    if r.pass { "PASS" } else { "FAIL" },
                    r.name,
                    r.value,
                    r.tolerance
                );
            }
        }
        all &= report.passed();
    }
    assert!(all, "jet-vs-eval convergence failed");
}

#[test]
fn criterion_04_am_reproduction() {
    let qb = catalog_get("so3-quadratic-AM").unwrap();
    let mut rng = SplitMix64::new(0xC4);
    let mut worst = 0.0f64;
    for _ in 0..12 {
        let p = rng.next_in_ball(3, 1.0);
        let lv = lcan_eval(&qb, &p).unwrap();
        let oracle = odd_series_block(&qb, &p, SeriesName::Cothm, 40);
        worst = worst.max(lv.l.sub(&oracle).max_abs());
    }
    let pass = worst <= 1e-10;
    println!(
        "criterion 4: {} — coth(ad_p) − 1/ad_p reproduction over ‖p‖ <= 1 ({:.2e} <= 1e-10)",
        if pass { "PASS" } else { "FAIL" },
        worst
    );
    assert!(pass);
}

#[test]
fn criterion_05_compatible_reproduction() {
    let qb = catalog_get("sl2-cartan").unwrap();
    let mut worst_tanh = 0.0f64;
    let mut worst_coth = 0.0f64;
    for x in [0.15, -0.3, 0.55, 0.8, -0.7] {
        let p = vec![x];
        let lv = lcan_eval(&qb, &p).unwrap();
        let tanh_blk = odd_series_block(&qb, &p, SeriesName::Tanh, 40);
        let coth_blk = odd_series_block(&qb, &p, SeriesName::Cothm, 40);
        for r in 0..3 {
            worst_coth = worst_coth.max((lv.l.get(r, 0) - coth_blk.get(r, 0)).abs());
            for c in 1..3 {
                worst_tanh = worst_tanh.max((lv.l.get(r, c) - tanh_blk.get(r, c)).abs());
            }
        }
    }
    let pass = worst_tanh <= 1e-10 && worst_coth <= 1e-10;
    println!(
        "criterion 5: {} — compatible case: l^⊥-block tanh {:.2e}, m^⊥-block coth−1/z {:.2e} (<= 1e-10)",
        if pass { "PASS" } else { "FAIL" },
        worst_tanh,
        worst_coth
    );
    assert!(pass);
}

#[test]
fn criterion_06_gauge_suite() {
    let mut rng = SplitMix64::new(0xC6);
    let mut worst_gauged = 0.0f64;

    // two equivariant gauges on sl2-cartan (Cartan-valued polynomials; the
    // stabilizer case, where the action fixes the canonical solution)
    let sl2 = catalog_get("sl2-cartan").unwrap();
    let base = Lcan::new(&sl2);
    for _ in 0..2 {
        let sigma = GaugeMap::new(
            1,
            3,
            (1..=3)
                .map(|d| (vec![d as u32], vec![0.5 * rng.next_sym(), 0.0, 0.0]))
                .collect(),
        );
        assert!(sigma.equivariance_defect(&sl2, &[vec![0.4], vec![-0.8]]) < 1e-12);
        let gauged = Gauged {
            qb: &sl2,
            base: &base,
            sigma,
            coboundary: None,
        };
        for x in [0.2, -0.35] {
            worst_gauged = worst_gauged
                .max(cdybe_residual(&sl2, &gauged, &[x]).unwrap())
                .max(equivariance_residual(&sl2, &gauged, &[x], &[1.0]).unwrap());
        }
    }

    // one unconstrained gauge on the central-l setup, where θ genuinely
    // moves the canonical solution
    let heis = catalog_get("heisenberg-degenerate").unwrap();
    let base_h = Lcan::new(&heis);
    {
        let sigma = GaugeMap::new(
            1,
            3,
            vec![
                (vec![1], (0..3).map(|_| 0.4 * rng.next_sym()).collect()),
                (vec![2], (0..3).map(|_| 0.4 * rng.next_sym()).collect()),
                (vec![3], (0..3).map(|_| 0.4 * rng.next_sym()).collect()),
            ],
        );
        assert!(sigma.equivariance_defect(&heis, &[vec![0.5], vec![-0.9]]) < 1e-12);
        let gauged = Gauged {
            qb: &heis,
            base: &base_h,
            sigma,
            coboundary: None,
        };
        let moved = gauged.eval::<f64>(&[0.5]).unwrap().max_abs();
        assert!(moved > 1e-3, "this gauge must move lcan, got {moved:.3e}");
        for x in [0.5, -0.8] {
            worst_gauged = worst_gauged
                .max(cdybe_residual(&heis, &gauged, &[x]).unwrap())
                .max(equivariance_residual(&heis, &gauged, &[x], &[1.0]).unwrap());
        }
    }

    // two equivariant gauges on so3 (radial maps through the Killing form)
    let so3 = catalog_get("so3-quadratic-AM").unwrap();
    let base3 = Lcan::new(&so3);
    for _ in 0..2 {
        let (c1, c3) = (0.4 * rng.next_sym(), 0.3 * rng.next_sym());
        let mut terms = Vec::new();
        for a in 0..3 {
            let mut lin = vec![0u32; 3];
            lin[a] = 1;
            let mut coeff = vec![0.0; 3];
            coeff[a] = c1;
            terms.push((lin.clone(), coeff));
            for b in 0..3 {
                let mut cub = lin.clone();
                cub[b] += 2;
                let mut coeff = vec![0.0; 3];
                coeff[a] = c3;
                terms.push((cub, coeff));
            }
        }
        let sigma = GaugeMap::new(3, 3, terms);
        assert!(sigma.equivariance_defect(&so3, &[vec![0.3, -0.1, 0.2]]) < 1e-12);
        let gauged = Gauged {
            qb: &so3,
            base: &base3,
            sigma,
            coboundary: None,
        };
        let p = vec![0.25, -0.2, 0.15];
        worst_gauged = worst_gauged.max(cdybe_residual(&so3, &gauged, &p).unwrap());
    }
    let gauge_pass = worst_gauged <= 1e-7;
    println!(
        "criterion 6: {} — gauged lcan keeps CDYBE/equivariance ({:.2e} <= 1e-7, 5 random Σ)",
        if gauge_pass { "PASS" } else { "FAIL" },
        worst_gauged
    );

    // normalization recovers the canonical jet from a genuinely gauged one
    // (Map₀^(2) Σ on the central-l setup, whose gauge orbit is nontrivial)
    let sigma = GaugeMap::new(
        1,
        3,
        vec![
            (vec![2], vec![0.0, 0.45, -0.15]),
            (vec![4], vec![0.1, -0.2, 0.25]),
        ],
    );
    assert!(sigma.is_map02());
    let gauged = Gauged {
        qb: &heis,
        base: &base_h,
        sigma,
        coboundary: None,
    };
    let order = 6;
    let p0 = vec![1.0];
    let jet = ray_jet(|p| gauged.eval(p), &p0, order).unwrap();
    let lj = LJet {
        p0: p0.clone(),
        coeffs: jet.coeffs,
    };
    let defect = (1..=order)
        .map(|k| {
            lj.coeffs[k]
                .apply(&[1.0, 0.0, 0.0])
                .iter()
                .map(|v| v.abs())
                .fold(0.0f64, f64::max)
        })
        .fold(0.0f64, f64::max);
    assert!(defect > 1e-3, "the gauged jet must carry a defect");
    let (_s, normalized) = gauge_normalize_jets(&heis, &lj).unwrap();
    let canonical = lcan_jets(&heis, &p0, order);
    let mut recover = 0.0f64;
    for k in 0..=order {
        recover = recover.max(normalized.coeffs[k].sub(&canonical.coeffs[k]).max_abs());
    }
    let norm_pass = recover <= 1e-9;
    println!(
        "criterion 6: {} — jet normalization recovers the canonical jet ({recover:.2e} <= 1e-9, defect was {defect:.2e})",
        if norm_pass { "PASS" } else { "FAIL" }
    );
    assert!(gauge_pass && norm_pass);
}

#[test]
fn criterion_07_twist_suite() {
    let qb = catalog_get("sl2-cartan").unwrap();
    let base = Lcan::new(&qb);
    let mut rng = SplitMix64::new(0xC7);
    let mut rand_skew = Mat::<f64>::zeros(3, 3);
    for i in 0..3 {
        for j in i + 1..3 {
            let v = 0.25 * rng.next_sym();
            rand_skew.set(i, j, v);
            rand_skew.set(j, i, -v);
        }
    }
    let mut worst = 0.0f64;
    for (label, t) in [
        ("t = 0", Mat::zeros(3, 3)),
        ("t = rEV_0", ev_twist_map(ev_t_alpha_full())),
        ("random skew", rand_skew),
    ] {
        let gt = twist(&qb, &t).unwrap();
        let shifted = Shifted { base: &base, t };
        let mut here = 0.0f64;
        for x in [0.1, 0.3, -0.2, 0.45] {
            here = here.max(cdybe_residual(&gt, &shifted, &[x]).unwrap());
        }
        println!("criterion 7: lcan(G) − t vs G^t [{label}]: {here:.2e}");
        worst = worst.max(here);
    }
    let pass = worst <= 1e-9;
    println!(
        "criterion 7: {} — twist correspondence ({worst:.2e} <= 1e-9)",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass);
}

#[test]
fn criterion_08_duality_suite() {
    let mut main_pass = true;
    for name in [
        "sl2-cartan",
        "so3-quadratic-AM",
        "sl2-ev-twist",
        "heisenberg-degenerate",
    ] {
        let qb = catalog_get(name).unwrap();
        let report = run_suite(&qb, SuiteKind::Duality, &opts(0xC8));
        let mut literal_bidual = f64::NAN;
        let mut involution = f64::NAN;
        let mut grid_ok = true;
        let mut grid_max = 0.0f64;
        for r in &report.records {
            match r.name.as_str() {
                "bidual_vs_opposite" => literal_bidual = r.value,
                "bidual_involution" => involution = r.value,
                _ => {
                    grid_ok &= r.pass;
                    if r.value.is_finite() {
                        grid_max = grid_max.max(r.value.abs());
                    }
                }
            }
        }
        println!(
            "criterion 8: {} — duality grid checks on {name} (iso/flatness/morphism, max {grid_max:.2e})",
            if grid_ok { "PASS" } else { "FAIL" }
        );
        println!(
            "criterion 8: {} — (G*)* vs G^op on {name}: {:.2e} <= 1e-10 [certified: (G*)* = G at {:.2e}]",
            if literal_bidual <= 1e-10 { "PASS" } else { "FAIL" },
            literal_bidual,
            involution
        );
        main_pass &= grid_ok && involution <= 1e-10;
        main_pass &= literal_bidual <= 1e-10;
    }
    // AM self-duality, exact
    let am = catalog_get("so3-quadratic-AM").unwrap();
    let self_dual = dual_over_l(&am).unwrap().dual.tensor_diff(&am);
    println!(
        "criterion 8: {} — AM self-duality ({self_dual:.2e} <= 1e-12)",
        if self_dual <= 1e-12 { "PASS" } else { "FAIL" }
    );
    main_pass &= self_dual <= 1e-12;
    assert!(
        main_pass,
        "duality suite: the (G*)* = G^op sub-check fails by the mixed-sign involution; \
         the dual is exactly involutive instead (see the printed lines and the bidual \
         analysis in dual_over_l)"
    );
}

#[test]
fn criterion_09_link_suite() {
    let mut link_pass = true;
    let mut literal_krmx_pass = true;
    for name in ["sl2-cartan", "so3-quadratic-AM", "sl2-ev-twist"] {
        let qb = catalog_get(name).unwrap();
        let report = run_suite(&qb, SuiteKind::Link, &opts(0xC9));
        let mut worst_link = 0.0f64;
        let mut worst_funct = 0.0f64;
        let mut worst_krmx_mirror = 0.0f64;
        for r in &report.records {
            match r.name.as_str() {
                "link_identity" => worst_link = worst_link.max(r.value.abs()),
                "functoriality" => worst_funct = worst_funct.max(r.value.abs()),
                "k_rmx_constant" => worst_krmx_mirror = worst_krmx_mirror.max(r.value.abs()),
                _ => {}
            }
        }
        // the literal displayed constant p_l − p_{m^⊥} for K rmx* K* + rmx
        let dual = dual_over_l(&qb).unwrap();
        let g2 = double_bidyn(&qb).unwrap();
        let p = vec![0.0; qb.layout().dl];
        let _ = link_residual(&qb, &dual, &g2, &p).unwrap();
        let n = qb.n();
        let m = dual.transport();
        let c = m
            .matmul(&dynlforge::duality::rmx_hat(n))
            .matmul(&m.transpose())
            .add(&dynlforge::duality::rmx_hat(n));
        let literal = c
            .sub(&dynlforge::duality::doubletwo::pl_minus_pmp_hat(
                qb.layout().dl,
                n,
            ))
            .max_abs();
        println!(
            "criterion 9: {} — link identity on {name} (residual {:.2e} <= 1e-8, functoriality {:.2e} <= 1e-9)",
            if worst_link <= 1e-8 && worst_funct <= 1e-9 { "PASS" } else { "FAIL" },
            worst_link,
            worst_funct
        );
        println!(
            "criterion 9: {} — K rmx* K* + rmx = p_l − p_m⊥ on {name}: {literal:.2e} <= 1e-12 [certified mirror p_l⊥ − p_m at {:.2e}]",
            if literal <= 1e-12 { "PASS" } else { "FAIL" },
            worst_krmx_mirror
        );
        link_pass &= worst_link <= 1e-8 && worst_funct <= 1e-9 && worst_krmx_mirror <= 1e-12;
        literal_krmx_pass &= literal <= 1e-12;
    }
    assert!(link_pass, "link/functoriality residuals failed");
    assert!(
        literal_krmx_pass,
        "the displayed K rmx* K* + rmx constant differs from p_l − p_{{m^⊥}} by the \
         lagrangian-complement mirror; the full link identity holds with the displayed \
         constant (see the printed lines)"
    );
}

#[test]
fn criterion_10_scalar_suite() {
    let qb = catalog_get("sl2-cartan").unwrap();
    let report = run_suite(&qb, SuiteKind::Scalars, &opts(0xCA));
    for r in &report.records {
        println!(
            "criterion 10: {} — {} = {}",
            if r.pass { "PASS" } else { "FAIL" },
            r.name,
            r.value
        );
    }
    assert!(report.passed(), "scalar suite failed");
}
