//! The flat connection ∇ of the trivialization:
//! ∇_p(α) = (u_p α, s̃_p α) with u_p = p_l φ2(ad_{sp}) s and
//! s̃_p = p_{g*} φ1(ad_{sp}) s.

use crate::algebra::QuasiBialgebra;
use crate::error::KernelError;
use crate::kernel::deriv::dir_derivative;
use crate::kernel::expm::phi_func;
use crate::kernel::mat::{vec_norm, Mat};
use crate::kernel::scalar::Scalar;
use crate::lmatrix::LEvaluator;

/// (u_p, h_p, s̃_p, v_p) as matrices with dl columns (one per basis α):
/// u: dl×dl into l, h: n×dl into g, s̃: n×dl into g*, v: dm×dl into l^⊥.
pub struct NablaParts<T> {
    pub u: Mat<T>,
    pub h: Mat<T>,
    pub st: Mat<T>,
    pub v: Mat<T>,
}

pub fn nabla_parts<T: Scalar>(qb: &QuasiBialgebra, p: &[T]) -> Result<NablaParts<T>, KernelError> {
    let lay = qb.layout();
    let (n, dl, dd) = (lay.n(), lay.dl, lay.dd());
    let a = qb.double().ad_sp(p);
    let phi1 = phi_func(&a, 1)?;
    let phi2 = phi_func(&a, 2)?;
    // s: l* -> d, columns e^{dual(a)}
    let mut s = Mat::<T>::zeros(dd, dl);
    for c in 0..dl {
        s.set(lay.dual(c), c, T::one());
    }
    let p1s = phi1.matmul(&s);
    let p2s = phi2.matmul(&s);
    Ok(NablaParts {
        u: p2s.block(0, dl, 0, dl),
        h: p1s.block(0, n, 0, dl),
        st: p1s.block(n, dd, 0, dl),
        v: p1s.block(n + dl, dd, 0, dl),
    })
}

/// ∇_p(α) as an N(U) fiber element (l-part, g*-part).
pub fn nabla(
    qb: &QuasiBialgebra,
    p: &[f64],
    alpha: &[f64],
) -> Result<(Vec<f64>, Vec<f64>), KernelError> {
    let parts = nabla_parts::<f64>(qb, p)?;
    Ok((parts.u.apply(alpha), parts.st.apply(alpha)))
}

/// ‖u_p α − h_p α + l_p s̃_p α‖ (the u = h − l s̃ identity), max over basis α.
pub fn u_h_lemma_residual(
    qb: &QuasiBialgebra,
    ev: &impl LEvaluator,
    p: &[f64],
) -> Result<f64, KernelError> {
    let lay = qb.layout();
    let parts = nabla_parts::<f64>(qb, p)?;
    let l = ev.eval::<f64>(p)?;
    let mut worst = 0.0f64;
    for c in 0..lay.dl {
        let u = parts.u.column(c);
        let h = parts.h.column(c);
        let lst = l.apply(&parts.st.column(c));
        let mut diff = vec![0.0; lay.n()];
        for i in 0..lay.n() {
            let ui = if i < lay.dl { u[i] } else { 0.0 };
            diff[i] = ui - h[i] + lst[i];
        }
        worst = worst.max(vec_norm(&diff));
    }
    Ok(worst)
}

/// The two flatness residuals of ∇ (max over basis pairs α, β):
///
/// flat1 = d_p u(α)β − d_p u(β)α − [u α, u β] + ⟨s̃α, d_p l(·) s̃β⟩ ∈ l
/// flat2 = d_p s̃β(α) − d_p s̃α(β) − p_{g*}([uα, s̃β] + [s̃α, uβ] + [s̃α, s̃β]
///          + [l s̃α, s̃β] + [s̃α, l s̃β]) ∈ g*.
pub fn flatness_residual(
    qb: &QuasiBialgebra,
    ev: &impl LEvaluator,
    p: &[f64],
) -> Result<(f64, f64), KernelError> {
    let lay = qb.layout();
    let (n, dl, dd) = (lay.n(), lay.dl, lay.dd());
    let d = qb.double();
    let parts = nabla_parts::<f64>(qb, p)?;
    let l = ev.eval::<f64>(p)?;

    // directional derivatives of u and s̃ in each coordinate direction
    let mut du = Vec::with_capacity(dl);
    let mut dst = Vec::with_capacity(dl);
    for a in 0..dl {
        let mut dir = vec![0.0; dl];
        dir[a] = 1.0;
        let dparts = dir_derivative(
            |q| {
                let np = nabla_parts(qb, q)?;
                let mut stacked = Mat::zeros(dl + n, dl);
                stacked.set_block(0, 0, &np.u);
                stacked.set_block(dl, 0, &np.st);
                Ok(stacked)
            },
            p,
            &dir,
        )?;
        du.push(dparts.block(0, dl, 0, dl));
        dst.push(dparts.block(dl, dl + n, 0, dl));
    }
    let dl_mats: Vec<Mat<f64>> = (0..dl)
        .map(|a| {
            let mut dir = vec![0.0; dl];
            dir[a] = 1.0;
            dir_derivative(|q| ev.eval(q), p, &dir)
        })
        .collect::<Result<_, _>>()?;

    let embed_g = |x: &[f64]| -> Vec<f64> {
        let mut v = vec![0.0; dd];
        v[..x.len()].copy_from_slice(x);
        v
    };
    let embed_l = |x: &[f64]| -> Vec<f64> {
        let mut v = vec![0.0; dd];
        v[..dl].copy_from_slice(x);
        v
    };
    let embed_gs = |x: &[f64]| -> Vec<f64> {
        let mut v = vec![0.0; dd];
        v[n..].copy_from_slice(x);
        v
    };

    let mut w1 = 0.0f64;
    let mut w2 = 0.0f64;
    for a in 0..dl {
        for b in 0..dl {
            let ua = parts.u.column(a);
            let ub = parts.u.column(b);
            let sta = parts.st.column(a);
            let stb = parts.st.column(b);

            // flat1
            let mut f1 = vec![0.0; dl];
            for i in 0..dl {
                f1[i] = du[a].get(i, b) - du[b].get(i, a);
            }
            let br = d.bracket(&embed_l(&ua), &embed_l(&ub));
            for i in 0..dl {
                f1[i] -= br[i];
            }
            for c in 0..dl {
                let mut s = 0.0;
                for r in 0..n {
                    for q in 0..n {
                        s += sta[r] * dl_mats[c].get(r, q) * stb[q];
                    }
                }
                f1[c] += s;
            }
            w1 = w1.max(vec_norm(&f1));

            // flat2
            let mut f2 = vec![0.0; n];
            for i in 0..n {
                f2[i] = dst[a].get(i, b) - dst[b].get(i, a);
            }
            let mut acc = vec![0.0; dd];
            let mut addbr = |x: &[f64], y: &[f64]| {
                let b = d.bracket(x, y);
                for i in 0..dd {
                    acc[i] += b[i];
                }
            };
            addbr(&embed_l(&ua), &embed_gs(&stb));
            addbr(&embed_gs(&sta), &embed_l(&ub));
            addbr(&embed_gs(&sta), &embed_gs(&stb));
            addbr(&embed_g(&l.apply(&sta)), &embed_gs(&stb));
            addbr(&embed_gs(&sta), &embed_g(&l.apply(&stb)));
            for i in 0..n {
                f2[i] -= acc[n + i];
            }
            w2 = w2.max(vec_norm(&f2));
        }
    }
    Ok((w1, w2))
}
