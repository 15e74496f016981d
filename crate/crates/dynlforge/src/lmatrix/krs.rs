//! The auxiliary operators K_p, R_p, S_p of the closed-form ℓ-matrix.
//!
//! With A = ad_{sp} acting on the double and the φ-functions of the kernel,
//!
//! ```text
//!   (Ad_{e^{-sp}} - 1)/A          = -phi1(-A)
//!   (Ad_{e^{-sp}} - 1 + A)/A^2    =  phi2(-A)
//! ```
//!
//! so
//!
//! ```text
//!   R_p = (p_m e^{-A} i_m)^{-1} p_m e^{-A}
//!   S_p = (p_l phi1(-A) i_l)^{-1} p_l phi1(-A)
//!   K_p = -(p_l phi1(-A) i_l)^{-1} p_l phi2(-A)
//! ```
//!
//! R maps d to m-coordinates, S and K map d to l-coordinates. Every block
//! inverse is a condition-gated solve; failures mean p left the domain of
//! analyticity.

use crate::algebra::QuasiBialgebra;
use crate::error::KernelError;
use crate::kernel::expm::{expm, phi_func};
use crate::kernel::mat::Mat;
use crate::kernel::scalar::Scalar;
use crate::kernel::solve::solve_checked;

/// Evaluated block operators with their layout.
#[derive(Clone, Debug)]
pub struct KrsOperators {
    /// K_p: d -> l, dl x 2n.
    pub k: Mat<f64>,
    /// R_p: d -> m, dm x 2n.
    pub r: Mat<f64>,
    /// S_p: d -> l, dl x 2n.
    pub s: Mat<f64>,
}

pub(crate) struct KrsGeneric<T> {
    pub k: Mat<T>,
    pub r: Mat<T>,
    pub s: Mat<T>,
    /// phi1(A) - used by the sα-columns of the closed form.
    pub phi1_pos: Mat<T>,
}

pub(crate) fn krs_generic<T: Scalar>(
    qb: &QuasiBialgebra,
    p: &[T],
) -> Result<KrsGeneric<T>, KernelError> {
    let lay = qb.layout();
    let d = qb.double();
    let cond_max = qb.tol.cond_max;
    let a = d.ad_sp(p);
    let neg_a = a.neg();

    let e_neg = expm(&neg_a)?;
    let phi1_neg = phi_func(&neg_a, 1)?;
    let phi2_neg = phi_func(&neg_a, 2)?;
    let phi1_pos = phi_func(&a, 1)?;

    let (l, m) = (lay.l(), lay.m());
    let dd = lay.dd();

    let r = solve_checked(
        &e_neg.block(m.start, m.end, m.start, m.end),
        &e_neg.block(m.start, m.end, 0, dd),
        cond_max,
    )?;
    let phi1_ll = phi1_neg.block(l.start, l.end, l.start, l.end);
    let s = solve_checked(&phi1_ll, &phi1_neg.block(l.start, l.end, 0, dd), cond_max)?;
    let k = solve_checked(&phi1_ll, &phi2_neg.block(l.start, l.end, 0, dd), cond_max)?.neg();

    Ok(KrsGeneric { k, r, s, phi1_pos })
}

/// Evaluate K_p, R_p, S_p at a plain point.
pub fn krs_operators(qb: &QuasiBialgebra, p: &[f64]) -> Result<KrsOperators, KernelError> {
    let g = krs_generic::<f64>(qb, p)?;
    Ok(KrsOperators {
        k: g.k,
        r: g.r,
        s: g.s,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::catalog_get;

    #[test]
    fn at_zero_r_is_pm_s_is_pl_and_k_kills_salpha() {
        let qb = catalog_get("sl2-cartan").unwrap();
        let lay = qb.layout();
        let ops = krs_operators(&qb, &[0.0]).unwrap();
        for c in 0..lay.dd() {
            for r in 0..lay.dm {
                let expect = if c == lay.dl + r { 1.0 } else { 0.0 };
                assert!((ops.r.get(r, c) - expect).abs() < 1e-14, "R_0 != p_m");
            }
            for r in 0..lay.dl {
                let expect = if c == r { 1.0 } else { 0.0 };
                assert!((ops.s.get(r, c) - expect).abs() < 1e-14, "S_0 != p_l");
            }
        }
        // K_0 sα = 0 and S_0 sα = 0 (the sα-columns live in m^⊥)
        for a in 0..lay.dl {
            for r in 0..lay.dl {
                assert!(ops.k.get(r, lay.dual(a)).abs() < 1e-14);
                assert!(ops.s.get(r, lay.dual(a)).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn invertibility_margin_inside_the_ball() {
        // ‖R_p S_p i_m‖ < 1 keeps Id − R S i_m solvable
        let qb = catalog_get("sl2-cartan").unwrap();
        let lay = qb.layout();
        let ops = krs_operators(&qb, &[0.3]).unwrap();
        let rl = ops.r.block(0, lay.dm, lay.l().start, lay.l().end);
        let sm = ops.s.block(0, lay.dl, lay.m().start, lay.m().end);
        assert!(rl.matmul(&sm).op2_norm() < 1.0);
    }

    #[test]
    fn boundary_probe_reports_outside_domain() {
        // the EV-twisted ℓ-matrix has a pole where coth((α,p)) = t_α, i.e.
        // at coordinate x = 4; scaling p into it trips the gate
        let qb = catalog_get("sl2-ev-twist").unwrap();
        let mut hit = false;
        for k in 0..60 {
            let p = vec![3.5 + 0.05 * k as f64];
            match crate::lmatrix::lcan::lcan_eval(&qb, &p) {
                Ok(_) => {}
                Err(KernelError::OutsideAnalyticDomain { cond }) => {
                    assert!(cond > qb.tol.cond_max);
                    hit = true;
                    break;
                }
                Err(e) => panic!("unexpected error {e:?}"),
            }
        }
        assert!(hit, "no boundary found while scaling p");
    }
}
