//! Residuals of the equations characterizing dynamical ℓ-matrices: the
//! generalized CDYBE, l-equivariance, the characterizing ODE, and the four
//! block identities behind the closed form.

use super::LEvaluator;
use crate::algebra::QuasiBialgebra;
use crate::error::KernelError;
use crate::kernel::deriv::dir_derivative;
use crate::kernel::expm::{expm, phi_func};
use crate::kernel::mat::{vec_norm, Mat};
use crate::kernel::scalar::Scalar;

/// Directional derivatives of l in the dl coordinate directions of l*.
fn l_partials(ev: &impl LEvaluator, p: &[f64], dl: usize) -> Result<Vec<Mat<f64>>, KernelError> {
    (0..dl)
        .map(|a| {
            let mut dir = vec![0.0; p.len()];
            dir[a] = 1.0;
            dir_derivative(|q| ev.eval(q), p, &dir)
        })
        .collect()
}

fn embed_g<T: Scalar>(x: &[T], dd: usize) -> Vec<T> {
    let mut v = vec![T::zero(); dd];
    v[..x.len()].clone_from_slice(x);
    v
}

/// Max over basis triples (ξ,η,ζ) of
/// |Cycl (ζ, d_p l(i*ξ) η − [l_p ξ, l_p η + η])_d − ⟨ξ⊗η⊗ζ, φ⟩|,
/// all structure read from `target` (the setup the evaluator is claimed to be
/// an ℓ-matrix for).
pub fn cdybe_residual(
    target: &QuasiBialgebra,
    ev: &impl LEvaluator,
    p: &[f64],
) -> Result<f64, KernelError> {
    let lay = target.layout();
    let (n, dl, dd) = (lay.n(), lay.dl, lay.dd());
    let d = target.double();
    let l = ev.eval::<f64>(p)?;
    let dls = l_partials(ev, p, dl)?;

    // bracket part (η-index, ξ-index): (·, [l ξ, l η + η])_d has only the
    // g-component of the bracket visible to a g*-pairing.
    let mut brk = vec![vec![vec![0.0; n]; n]; n]; // [i][j][k] = (e^k, [l e^i, l e^j + e^j])
    for i in 0..n {
        let x = embed_g(&l.column(i), dd);
        for j in 0..n {
            let mut y = embed_g(&l.column(j), dd);
            y[lay.dual(j)] = 1.0;
            let b = d.bracket(&x, &y);
            for k in 0..n {
                brk[i][j][k] = b[k];
            }
        }
    }

    let term = |i: usize, j: usize, k: usize| -> f64 {
        // ⟨e^k, d_p l(i* e^i) e^j⟩ − (e^k, [l e^i, l e^j + e^j])_d
        let deriv = if i < dl { *dls[i].get(k, j) } else { 0.0 };
        deriv - brk[i][j][k]
    };

    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let cyc = term(i, j, k) + term(j, k, i) + term(k, i, j);
                let phi = target.phi(i, j, k);
                worst = worst.max((cyc - phi).abs());
            }
        }
    }
    Ok(worst)
}

/// ‖d_p l(ad*_z p) + ϖ_z + ad_z l_p + l_p ad*_z‖ (operator 2-norm) for an
/// l-vector z (dl components).
pub fn equivariance_residual(
    target: &QuasiBialgebra,
    ev: &impl LEvaluator,
    p: &[f64],
    z: &[f64],
) -> Result<f64, KernelError> {
    let lay = target.layout();
    let dl = lay.dl;
    assert_eq!(z.len(), dl);
    // ad*_z p ∈ l*: ⟨ad*_z p, w⟩ = ⟨p, [z, w]_l⟩
    let mut dir = vec![0.0; dl];
    for j in 0..dl {
        for i in 0..dl {
            for k in 0..dl {
                dir[j] += z[i] * target.g.c(i, j, k) * p[k];
            }
        }
    }
    let dl_mat = dir_derivative(|q| ev.eval(q), p, &dir)?;
    let l = ev.eval::<f64>(p)?;
    let zg = embed_g(z, target.n());
    let adz = target.g.ad(&zg);
    let m = dl_mat
        .add(&target.w_of(&zg))
        .add(&adz.matmul(&l))
        .add(&l.matmul(&adz.transpose()));
    Ok(m.op2_norm())
}

/// Max over basis covectors ζ of the defect of the characterizing ODE
/// d_p l(p) ζ = ad_{sp}(l ζ + ζ) − (l ζ̃ + ζ̃) − p_l l ζ − l s i* ζ,
/// evaluated in the double.
pub fn ode_residual(
    target: &QuasiBialgebra,
    ev: &impl LEvaluator,
    p: &[f64],
) -> Result<f64, KernelError> {
    let lay = target.layout();
    let (n, dl, dd) = (lay.n(), lay.dl, lay.dd());
    let d = target.double();
    let l = ev.eval::<f64>(p)?;
    let dlp = dir_derivative(|q| ev.eval(q), p, p)?;
    let a = d.ad_sp(p);

    let mut worst = 0.0f64;
    for c in 0..n {
        let mut x = embed_g(&l.column(c), dd);
        x[lay.dual(c)] = 1.0;
        let ax = a.apply(&x);
        let zt: Vec<f64> = (0..n).map(|i| ax[n + i]).collect(); // ζ̃ = p_{g*} ad_{sp}(lζ+ζ)
        let mut rhs = ax.clone();
        let lzt = l.apply(&zt);
        for i in 0..n {
            rhs[i] -= lzt[i];
            rhs[n + i] -= zt[i];
        }
        for i in 0..dl {
            rhs[i] -= l.get(i, c); // p_l l ζ
        }
        if c < dl {
            // l s i* ζ = l e^c
            for i in 0..n {
                rhs[i] -= l.get(i, c);
            }
        }
        let mut lhs = vec![0.0; dd];
        lhs[..n].copy_from_slice(&dlp.column(c));
        let diff: Vec<f64> = lhs.iter().zip(&rhs).map(|(a, b)| a - b).collect();
        worst = worst.max(vec_norm(&diff));
    }
    Ok(worst)
}

/// The four identities behind analyticity, for samples X_p = z + ad_{sp}z + ξ
/// of the vertex algebra and all basis α ∈ l*:
///
/// 1. p_m Ad_{e^{-sp}} τ_l X = 0
/// 2. p_l (Ad_{e^{-sp}}−1)/ad τ_l X + p_l X = 0
/// 3. p_m Ad_{e^{-sp}} τ_l sα + p_m (Ad_{e^{-sp}}−1)/ad sα = 0
/// 4. p_l (Ad_{e^{-sp}}−1)/ad τ_l sα + p_l (Ad_{e^{-sp}}−1+ad)/ad² sα = 0
pub fn pmadtau_residuals(
    target: &QuasiBialgebra,
    ev: &impl LEvaluator,
    p: &[f64],
    samples: &[(Vec<f64>, Vec<f64>)],
) -> Result<[f64; 4], KernelError> {
    let lay = target.layout();
    let (n, dl, dm, dd) = (lay.n(), lay.dl, lay.dm, lay.dd());
    let d = target.double();
    let l = ev.eval::<f64>(p)?;
    let a = d.ad_sp(p);
    let e_neg = expm(&a.neg())?;
    let dm1 = phi_func(&a.neg(), 1)?.neg(); // (Ad_{e^{-sp}} - 1)/ad_{sp}
    let dm2 = phi_func(&a.neg(), 2)?; // (Ad_{e^{-sp}} - 1 + ad_{sp})/ad²_{sp}

    // τ_{l_p} = Id + l on the g* slot
    let tau = |v: &[f64]| -> Vec<f64> {
        let xi: Vec<f64> = (0..n).map(|i| v[n + i]).collect();
        let lx = l.apply(&xi);
        let mut out = v.to_vec();
        for i in 0..n {
            out[i] += lx[i];
        }
        out
    };
    let pm = |v: &[f64]| -> f64 { vec_norm(&v[dl..n]) };
    let pl = |v: &[f64]| -> f64 { vec_norm(&v[..dl]) };

    let mut r = [0.0f64; 4];
    for (z, xi) in samples {
        assert_eq!(z.len(), dl);
        assert_eq!(xi.len(), dm);
        let mut x = vec![0.0; dd];
        x[..dl].copy_from_slice(z);
        let adz = a.apply(&embed_g(z, dd));
        for i in 0..dd {
            x[i] += adz[i];
        }
        for (j, v) in xi.iter().enumerate() {
            x[n + dl + j] += v;
        }
        let tx = tau(&x);
        r[0] = r[0].max(pm(&e_neg.apply(&tx)));
        let mut v2 = dm1.apply(&tx);
        for i in 0..dl {
            v2[i] += x[i];
        }
        r[1] = r[1].max(pl(&v2));
    }
    for alpha in 0..dl {
        let mut sa = vec![0.0; dd];
        sa[lay.dual(alpha)] = 1.0;
        let tsa = tau(&sa);
        let v3: Vec<f64> = e_neg
            .apply(&tsa)
            .iter()
            .zip(&dm1.apply(&sa))
            .map(|(a, b)| a + b)
            .collect();
        r[2] = r[2].max(pm(&v3));
        let v4: Vec<f64> = dm1
            .apply(&tsa)
            .iter()
            .zip(&dm2.apply(&sa))
            .map(|(a, b)| a + b)
            .collect();
        r[3] = r[3].max(pl(&v4));
    }
    Ok(r)
}
