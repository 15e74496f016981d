//! Closed-form evaluation of the canonical dynamical ℓ-matrix.
//!
//! For ξ ∈ l^⊥ and α ∈ l* the blocks are assembled as
//!
//! ```text
//!   p_m l_p ξ  =  (Id_m − R S i_m)^{-1} R (S ξ − ξ)
//!   p_l l_p ξ  =  (Id_l − S R i_l)^{-1} S (R ξ − ξ)
//!   p_m l_p sα =  (Id_m − R S i_m)^{-1} R (S + K + phi1(A) − 1) sα
//!   p_l l_p sα = −(Id_l − S R i_l)^{-1} (S + K + S R (phi1(A) − 1)) sα
//! ```
//!
//! where phi1(A) − 1 realizes (Ad_{e^{sp}} − 1 − ad_{sp})/ad_{sp}.

use super::krs::krs_generic;
use crate::algebra::QuasiBialgebra;
use crate::error::KernelError;
use crate::kernel::mat::{vec_norm, Mat};
use crate::kernel::scalar::Scalar;
use crate::kernel::solve::solve_checked;

/// The evaluated skew operator l_p: g* -> g together with the measured
/// invariants of the canonical representative.
#[derive(Clone, Debug)]
pub struct LValue {
    pub p: Vec<f64>,
    pub l: Mat<f64>,
    /// ‖l_p + l_pᵀ‖_max
    pub skew_residual: f64,
    /// ‖l_p(sp)‖
    pub lsp_residual: f64,
}

pub(crate) fn lcan_generic<T: Scalar>(qb: &QuasiBialgebra, p: &[T]) -> Result<Mat<T>, KernelError> {
    let lay = qb.layout();
    let (n, dl, dm, dd) = (lay.n(), lay.dl, lay.dm, lay.dd());
    let cond_max = qb.tol.cond_max;
    let ops = krs_generic(qb, p)?;

    // R restricted to l ⊂ d and S restricted to m ⊂ d
    let rl = ops.r.block(0, dm, lay.l().start, lay.l().end);
    let sm = ops.s.block(0, dl, lay.m().start, lay.m().end);
    let im_rs = Mat::<T>::identity(dm).sub(&rl.matmul(&sm));
    let il_sr = Mat::<T>::identity(dl).sub(&sm.matmul(&rl));
    let phi1_m1 = ops.phi1_pos.sub(&Mat::identity(dd));

    let mut l = Mat::<T>::zeros(n, n);
    for c in 0..n {
        let mut v = vec![T::zero(); dd];
        v[lay.dual(c)] = T::one();
        let sv = ops.s.apply(&v);
        let (m_rhs, l_rhs): (Vec<T>, Vec<T>) = if c < dl {
            // sα-type column
            let kv = ops.k.apply(&v);
            let sk: Vec<T> = sv
                .iter()
                .zip(&kv)
                .map(|(a, b)| a.clone() + b.clone())
                .collect();
            let phiv = phi1_m1.apply(&v);
            let r_phiv = ops.r.apply(&phiv);
            // R(embed_l(S+K) v + phi v) = Rl (S+K)v + R phi v
            let m_rhs: Vec<T> = rl
                .apply(&sk)
                .iter()
                .zip(&r_phiv)
                .map(|(a, b)| a.clone() + b.clone())
                .collect();
            // (S + K + S R phi) v, negated afterwards
            let sm_rphiv = sm.apply(&r_phiv);
            let l_rhs: Vec<T> = sk
                .iter()
                .zip(&sm_rphiv)
                .map(|(a, b)| -(a.clone() + b.clone()))
                .collect();
            (m_rhs, l_rhs)
        } else {
            // ξ-type column (ξ ∈ l^⊥)
            let rv = ops.r.apply(&v);
            // R(embed_l(Sv) − v) = Rl Sv − Rv
            let m_rhs: Vec<T> = rl
                .apply(&sv)
                .iter()
                .zip(&rv)
                .map(|(a, b)| a.clone() - b.clone())
                .collect();
            // S(embed_m(Rv) − v) = Sm Rv − Sv
            let l_rhs: Vec<T> = sm
                .apply(&rv)
                .iter()
                .zip(&sv)
                .map(|(a, b)| a.clone() - b.clone())
                .collect();
            (m_rhs, l_rhs)
        };
        let m_part = solve_checked(&im_rs, &Mat::col_vec(&m_rhs), cond_max)?;
        let l_part = solve_checked(&il_sr, &Mat::col_vec(&l_rhs), cond_max)?;
        for r in 0..dl {
            l.set(r, c, l_part.get(r, 0).clone());
        }
        for r in 0..dm {
            l.set(dl + r, c, m_part.get(r, 0).clone());
        }
    }
    Ok(l)
}

/// Evaluate the canonical ℓ-matrix, checking the canonical-representative
/// invariants (skewness and l_p(sp) = 0).
pub fn lcan_eval(qb: &QuasiBialgebra, p: &[f64]) -> Result<LValue, KernelError> {
    let l = lcan_generic::<f64>(qb, p)?;
    let skew_residual = l.add(&l.transpose()).max_abs();
    // sp has covector components p on the l-block
    let mut sp = vec![0.0; qb.n()];
    sp[..p.len()].copy_from_slice(p);
    let lsp_residual = vec_norm(&l.apply(&sp));
    Ok(LValue {
        p: p.to_vec(),
        l,
        skew_residual,
        lsp_residual,
    })
}
