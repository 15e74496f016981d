//! Built-in example setups.

use crate::algebra::{twist, DecomposedBasis, LieAlgebraData, QuasiBialgebra};
use crate::error::AlgebraError;
use crate::kernel::mat::Mat;

pub const NAMES: &[&str] = &[
    "sl2-cartan",
    "sl2-cocomm-compat",
    "so3-quadratic-AM",
    "sl2-ev-twist",
    "sl2-ev-twist-empty",
    "heisenberg-degenerate",
];

fn sl2(dim_l: usize) -> LieAlgebraData {
    let dim_m = 3 - dim_l;
    let basis =
        DecomposedBasis::new(dim_l, dim_m, vec!["h".into(), "e".into(), "f".into()]).unwrap();
    LieAlgebraData::from_triples(basis, &[(0, 1, 1, 2.0), (0, 2, 2, -2.0), (1, 2, 0, 1.0)]).unwrap()
}

/// sl2 with Cartan l = span(h) and the Killing-normalized trivector
/// ⟨ξ⊗η⊗ζ, φ⟩ = ⟨ξ, [η, ζ]⟩ under g ≅ g*; the base of the Etingof–Varchenko
/// twists. φ_{h e f} = −1/16 in this basis.
fn sl2_cartan() -> Result<QuasiBialgebra, AlgebraError> {
    let (qb, _) = QuasiBialgebra::new(
        "sl2-cartan".into(),
        sl2(1),
        &[],
        &[(0, 1, 2, -1.0 / 16.0)],
        true,
        None,
    )?;
    Ok(qb)
}

/// sl2 with Cartan l, cocommutative, φ = h∧e∧f: the canonically compatible
/// case in its simplest normalization.
fn sl2_cocomm_compat() -> Result<QuasiBialgebra, AlgebraError> {
    let (qb, _) = QuasiBialgebra::new(
        "sl2-cocomm-compat".into(),
        sl2(1),
        &[],
        &[(0, 1, 2, 1.0)],
        true,
        None,
    )?;
    Ok(qb)
}

/// so(3) with l = g (quadratic via the Killing form), m = 0: the setup whose
/// canonical ℓ-matrix is coth(ad_p) − 1/ad_p.
fn so3_quadratic() -> Result<QuasiBialgebra, AlgebraError> {
    let basis = DecomposedBasis::new(3, 0, vec!["x".into(), "y".into(), "z".into()])?;
    let g =
        LieAlgebraData::from_triples(basis, &[(0, 1, 2, 1.0), (1, 2, 0, 1.0), (0, 2, 1, -1.0)])?;
    // Killing form is -2·Id here; ⟨ξ, [K^{-1}η, K^{-1}ζ]⟩ gives φ_{xyz} = 1/4
    let (qb, _) = QuasiBialgebra::new(
        "so3-quadratic-AM".into(),
        g,
        &[],
        &[(0, 1, 2, 0.25)],
        true,
        None,
    )?;
    Ok(qb)
}

/// The Etingof–Varchenko twist element r^EV_0 for sl2-cartan.
///
/// With root vectors normalized against the Killing form, the twist is the
/// skew map e* ↦ (t_α/4) f, f* ↦ −(t_α/4) e, h* ↦ 0, where t_α = coth((α,μ))
/// for Γ = {α} and t_α = ±1 for Γ = ∅.
pub fn ev_twist_map(t_alpha: f64) -> Mat<f64> {
    let mut t = Mat::zeros(3, 3);
    t.set(2, 1, t_alpha / 4.0);
    t.set(1, 2, -t_alpha / 4.0);
    t
}

/// t_α for the default Γ = {α} entry: (α, μ) = 1.
pub fn ev_t_alpha_full() -> f64 {
    1.0f64.tanh().recip() // coth(1)
}

fn sl2_ev_twist(t_alpha: f64, name: &str) -> Result<QuasiBialgebra, AlgebraError> {
    let base = sl2_cartan()?;
    let mut tw = twist(&base, &ev_twist_map(t_alpha))?;
    tw.name = name.into();
    Ok(tw)
}

/// Heisenberg algebra with central l: [x, y] = z, l = span(z), ϖ = φ = 0.
/// ad_{sp} is nilpotent, so everything analytic degenerates to polynomials.
fn heisenberg() -> Result<QuasiBialgebra, AlgebraError> {
    let basis = DecomposedBasis::new(1, 2, vec!["z".into(), "x".into(), "y".into()])?;
    let g = LieAlgebraData::from_triples(basis, &[(1, 2, 0, 1.0)])?;
    let (qb, _) = QuasiBialgebra::new("heisenberg-degenerate".into(), g, &[], &[], true, None)?;
    Ok(qb)
}

/// Fetch a built-in setup by name.
pub fn catalog_get(name: &str) -> Result<QuasiBialgebra, AlgebraError> {
    match name {
        "sl2-cartan" => sl2_cartan(),
        "sl2-cocomm-compat" => sl2_cocomm_compat(),
        "so3-quadratic-AM" => so3_quadratic(),
        "sl2-ev-twist" => sl2_ev_twist(ev_t_alpha_full(), "sl2-ev-twist"),
        "sl2-ev-twist-empty" => sl2_ev_twist(1.0, "sl2-ev-twist-empty"),
        "heisenberg-degenerate" => heisenberg(),
        other => Err(AlgebraError::UnknownName(other.into())),
    }
}
