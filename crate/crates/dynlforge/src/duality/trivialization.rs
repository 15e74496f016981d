//! The trivialization T of the dual algebroid N(U), in the form where the
//! ℓ-matrix does not appear:
//!
//! ```text
//! T_p(α, z+ξ) = p_l φ2(A) sα + p_{g*} φ1(A) sα − p_l φ1(A)(z+ξ) − p_{g*} e^A (z+ξ)
//! ```
//!
//! with A = ad_{sp}; the τ_{−l_p}-form is computed alongside as a cross-check.

use crate::algebra::QuasiBialgebra;
use crate::error::KernelError;
use crate::kernel::expm::{expm, phi_func};
use crate::kernel::mat::Mat;
use crate::kernel::scalar::Scalar;
use crate::lmatrix::LEvaluator;

/// T_p(α, X0) ∈ l ⊕ g*, generic over the kernel scalar.
pub fn trivialize_generic<T: Scalar>(
    qb: &QuasiBialgebra,
    p: &[T],
    alpha: &[T],
    z: &[T],
    xi_perp: &[T],
) -> Result<(Vec<T>, Vec<T>), KernelError> {
    let lay = qb.layout();
    let (n, dl, dd) = (lay.n(), lay.dl, lay.dd());
    let a = qb.double().ad_sp(p);
    let e = expm(&a)?;
    let phi1 = phi_func(&a, 1)?;
    let phi2 = phi_func(&a, 2)?;

    let mut sa = vec![T::zero(); dd];
    for c in 0..dl {
        sa[lay.dual(c)] = alpha[c].clone();
    }
    let mut x0 = vec![T::zero(); dd];
    x0[..dl].clone_from_slice(z);
    for (j, v) in xi_perp.iter().enumerate() {
        x0[n + dl + j] = v.clone();
    }

    let p2sa = phi2.apply(&sa);
    let p1sa = phi1.apply(&sa);
    let p1x = phi1.apply(&x0);
    let ex = e.apply(&x0);

    let l_part: Vec<T> = (0..dl).map(|i| p2sa[i].clone() - p1x[i].clone()).collect();
    let gs_part: Vec<T> = (0..n)
        .map(|i| p1sa[n + i].clone() - ex[n + i].clone())
        .collect();
    Ok((l_part, gs_part))
}

/// Plain evaluation of T_p.
pub fn trivialize(
    qb: &QuasiBialgebra,
    p: &[f64],
    alpha: &[f64],
    z: &[f64],
    xi_perp: &[f64],
) -> Result<(Vec<f64>, Vec<f64>), KernelError> {
    trivialize_generic(qb, p, alpha, z, xi_perp)
}

/// Agreement between the two displayed forms of T: the ℓ-free expression
/// above versus τ_{−l_p}((Ad_{e^{sp}}−1)/ad sα − Ad_{e^{sp}} X0).
pub fn trivialization_forms_residual(
    qb: &QuasiBialgebra,
    ev: &impl LEvaluator,
    p: &[f64],
    alpha: &[f64],
    z: &[f64],
    xi_perp: &[f64],
) -> Result<f64, KernelError> {
    let lay = qb.layout();
    let (n, dl, dd) = (lay.n(), lay.dl, lay.dd());
    let (l_part, gs_part) = trivialize(qb, p, alpha, z, xi_perp)?;

    let a = qb.double().ad_sp(p);
    let e = expm(&a)?;
    let phi1 = phi_func(&a, 1)?;
    let l = ev.eval::<f64>(p)?;
    let mut sa = vec![0.0; dd];
    for c in 0..dl {
        sa[lay.dual(c)] = alpha[c];
    }
    let mut x0 = vec![0.0; dd];
    x0[..dl].copy_from_slice(z);
    for (j, v) in xi_perp.iter().enumerate() {
        x0[n + dl + j] = *v;
    }
    let y: Vec<f64> = phi1
        .apply(&sa)
        .iter()
        .zip(&e.apply(&x0))
        .map(|(a, b)| a - b)
        .collect();
    // τ_{−l}: subtract l applied to the g*-part from the g-part
    let lxi = l.apply(&y[n..]);
    let mut diff = 0.0f64;
    for i in 0..dl {
        diff = diff.max((y[i] - lxi[i] - l_part[i]).abs());
    }
    // the m-part of the τ-form must vanish for the forms to agree in l ⊕ g*
    for i in dl..n {
        diff = diff.max((y[i] - lxi[i]).abs());
    }
    for i in 0..n {
        diff = diff.max((y[n + i] - gs_part[i]).abs());
    }
    Ok(diff)
}

/// T_p(0, X0) must equal −φ_p^{-1}(X0) (the ψ-part of the trivialization).
pub fn psi_consistency_residual(
    qb: &QuasiBialgebra,
    p: &[f64],
    z: &[f64],
    xi_perp: &[f64],
) -> Result<f64, KernelError> {
    let lay = qb.layout();
    let dl = lay.dl;
    let alpha = vec![0.0; dl];
    let (l_part, gs_part) = trivialize(qb, p, &alpha, z, xi_perp)?;

    // φ_p^{-1} = p_l φ1(A) + p_{g*} e^A on g*_0
    let a = qb.double().ad_sp(p);
    let e = expm(&a)?;
    let phi1 = phi_func(&a, 1)?;
    let n = lay.n();
    let mut x0 = vec![0.0; lay.dd()];
    x0[..dl].copy_from_slice(z);
    for (j, v) in xi_perp.iter().enumerate() {
        x0[n + dl + j] = *v;
    }
    let w1 = phi1.apply(&x0);
    let w2 = e.apply(&x0);
    let mut worst = 0.0f64;
    for i in 0..dl {
        worst = worst.max((l_part[i] + w1[i]).abs());
    }
    for i in 0..n {
        worst = worst.max((gs_part[i] + w2[n + i]).abs());
    }
    Ok(worst)
}

/// T_0(α, z+ξ) = (−z, sα − ξ).
pub fn trivialize_at_zero_matches(qb: &QuasiBialgebra) -> Result<f64, KernelError> {
    let lay = qb.layout();
    let (dl, dm) = (lay.dl, lay.dm);
    let p = vec![0.0; dl];
    let mut worst = 0.0f64;
    for c in 0..dl {
        for zc in 0..dl {
            for xc in 0..dm {
                let mut alpha = vec![0.0; dl];
                alpha[c] = 1.0;
                let mut z = vec![0.0; dl];
                z[zc] = 0.5;
                let mut xi = vec![0.0; dm];
                xi[xc] = -0.75;
                let (lp, gp) = trivialize(qb, &p, &alpha, &z, &xi)?;
                for i in 0..dl {
                    worst = worst.max((lp[i] + z[i]).abs());
                    let expected_mp = if i == c { 1.0 } else { 0.0 };
                    worst = worst.max((gp[i] - expected_mp).abs());
                }
                for j in 0..dm {
                    worst = worst.max((gp[dl + j] + xi[j]).abs());
                }
            }
        }
    }
    Ok(worst)
}

/// Deterministic grid helper returning a (Mat-shaped) matrix of T over all
/// basis inputs; used by the suites.
pub fn trivialization_matrix(qb: &QuasiBialgebra, p: &[f64]) -> Result<Mat<f64>, KernelError> {
    let lay = qb.layout();
    let (n, dl, dm) = (lay.n(), lay.dl, lay.dm);
    let cols = dl + dl + dm;
    let mut out = Mat::zeros(dl + n, cols);
    for c in 0..cols {
        let mut alpha = vec![0.0; dl];
        let mut z = vec![0.0; dl];
        let mut xi = vec![0.0; dm];
        if c < dl {
            alpha[c] = 1.0;
        } else if c < 2 * dl {
            z[c - dl] = 1.0;
        } else {
            xi[c - 2 * dl] = 1.0;
        }
        let (lp, gp) = trivialize(qb, p, &alpha, &z, &xi)?;
        for i in 0..dl {
            out.set(i, c, lp[i]);
        }
        for i in 0..n {
            out.set(dl + i, c, gp[i]);
        }
    }
    Ok(out)
}
