//! Integration of the Lie algebra 1-cocycle ϖ to the group cocycle π along
//! exponentials: π_{exp x} = φ1(D_x) ϖ_x, where D_x T = ad_x T + T ad*_x acts
//! on skew maps g* -> g. Validated at runtime by the defining cocycle ODE
//! d/dt π_{exp tx} = Ad^(2)_{exp tx} ϖ_x rather than assumed.

use crate::algebra::QuasiBialgebra;
use crate::error::KernelError;
use crate::kernel::expm::{expm, phi_func};
use crate::kernel::mat::Mat;
use crate::kernel::scalar::{Dual, Scalar};

/// The operator D_x on vectorized n×n matrices (row-major):
/// vec(ad_x T + T ad_xᵀ).
fn dx_operator<T: Scalar>(adx: &Mat<T>) -> Mat<T> {
    let n = adx.rows();
    let mut d = Mat::zeros(n * n, n * n);
    for r in 0..n {
        for s in 0..n {
            let row = r * n + s;
            for u in 0..n {
                // (ad T)_{rs} <- ad_{ru} T_{us}
                d.add_at(row, u * n + s, adx.get(r, u).clone());
                // (T adᵀ)_{rs} <- T_{ru} ad_{su}
                d.add_at(row, r * n + u, adx.get(s, u).clone());
            }
        }
    }
    d
}

pub(crate) fn group_cocycle_generic<T: Scalar>(
    qb: &QuasiBialgebra,
    x: &[T],
) -> Result<Mat<T>, KernelError> {
    let n = qb.n();
    let wx = qb.w_of(x);
    if wx.max_abs_approx() == 0.0 && qb.cobracket_triples().is_empty() {
        return Ok(Mat::zeros(n, n));
    }
    let adx = qb.g.ad_generic(x);
    let d = dx_operator(&adx);
    let phi1 = phi_func(&d, 1)?;
    let vec_w: Vec<T> = (0..n * n).map(|i| wx.get(i / n, i % n).clone()).collect();
    let out = phi1.apply(&vec_w);
    Ok(Mat::from_fn(n, n, |i, j| out[i * n + j].clone()))
}

/// π_{exp x} as a skew map g* -> g.
pub fn group_cocycle(qb: &QuasiBialgebra, x: &[f64]) -> Result<Mat<f64>, KernelError> {
    group_cocycle_generic(qb, x)
}

/// Defect of d/dt π_{exp t x} = Ad^(2)_{exp t x} ϖ_x at the given t
/// (dual-number derivative against the conjugation form).
pub fn cocycle_ode_residual(qb: &QuasiBialgebra, x: &[f64], t: f64) -> Result<f64, KernelError> {
    let td = Dual::<f64>::variable(t);
    let xt: Vec<Dual<f64>> = x.iter().map(|&c| td.clone().scale(c)).collect();
    let pi = group_cocycle_generic(qb, &xt)?;
    let deriv = Mat::from_fn(pi.rows(), pi.cols(), |i, j| pi.get(i, j).der);

    let adx = qb.g.ad(x);
    let e = expm(&adx.scale(t))?;
    let rhs = e.matmul(&qb.w_of(x)).matmul(&e.transpose());
    Ok(deriv.sub(&rhs).max_abs())
}
