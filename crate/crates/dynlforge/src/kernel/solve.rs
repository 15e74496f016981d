//! LU solves with partial pivoting and a 1-norm condition estimate.
//!
//! The condition estimate runs on the `f64` shadow of the matrix; when it
//! exceeds `cond_max` the solve reports [`KernelError::OutsideAnalyticDomain`],
//! which the engine treats as "p left the domain of analyticity".

use super::mat::Mat;
use super::scalar::Scalar;
use crate::error::KernelError;

/// Default condition threshold defining the computational domain boundary.
pub const COND_MAX_DEFAULT: f64 = 1e8;

struct Lu<T> {
    lu: Mat<T>,
    perm: Vec<usize>,
}

fn lu_factor<T: Scalar>(a: &Mat<T>) -> Result<Lu<T>, KernelError> {
    assert!(a.is_square());
    let n = a.rows();
    let mut lu = a.clone();
    let mut perm: Vec<usize> = (0..n).collect();
    for k in 0..n {
        // pivot on the largest value part
        let (mut p, mut best) = (k, lu.get(k, k).approx().abs());
        for i in k + 1..n {
            let v = lu.get(i, k).approx().abs();
            if v > best {
                p = i;
                best = v;
            }
        }
        if best == 0.0 {
            return Err(KernelError::Singular);
        }
        if p != k {
            for j in 0..n {
                let a = lu.get(k, j).clone();
                let b = lu.get(p, j).clone();
                lu.set(k, j, b);
                lu.set(p, j, a);
            }
            perm.swap(k, p);
        }
        let inv_piv = lu.get(k, k).recip();
        for i in k + 1..n {
            let m = lu.get(i, k).clone() * inv_piv.clone();
            lu.set(i, k, m.clone());
            for j in k + 1..n {
                let v = lu.get(i, j).clone() - m.clone() * lu.get(k, j).clone();
                lu.set(i, j, v);
            }
        }
    }
    Ok(Lu { lu, perm })
}

fn lu_solve_factored<T: Scalar>(f: &Lu<T>, b: &Mat<T>) -> Mat<T> {
    let n = f.lu.rows();
    let mut x: Mat<T> = Mat::zeros(n, b.cols());
    for j in 0..b.cols() {
        // forward
        let mut y = vec![T::zero(); n];
        for i in 0..n {
            let mut s = b.get(f.perm[i], j).clone();
            for k in 0..i {
                s = s - f.lu.get(i, k).clone() * y[k].clone();
            }
            y[i] = s;
        }
        // backward
        for i in (0..n).rev() {
            let mut s = y[i].clone();
            for k in i + 1..n {
                s = s - f.lu.get(i, k).clone() * x.get(k, j).clone();
            }
            x.set(i, j, s * f.lu.get(i, i).recip());
        }
    }
    x
}

/// Plain solve, erroring only on an exactly singular pivot.
pub fn solve<T: Scalar>(a: &Mat<T>, b: &Mat<T>) -> Result<Mat<T>, KernelError> {
    if a.rows() == 0 {
        return Ok(Mat::zeros(0, b.cols()));
    }
    let f = lu_factor(a)?;
    Ok(lu_solve_factored(&f, b))
}

/// 1-norm condition number of the `f64` shadow (via the explicit inverse;
/// matrices here are tiny).
pub fn cond_1(a: &Mat<f64>) -> Result<f64, KernelError> {
    if a.rows() == 0 {
        return Ok(1.0);
    }
    let f = lu_factor(a)?;
    let inv = lu_solve_factored(&f, &Mat::identity(a.rows()));
    Ok(a.one_norm_approx() * inv.one_norm_approx())
}

/// Solve `A X = B` with the condition gate of the analytic domain.
///
/// The gate trips on κ₁(A) > cond_max or ‖A⁻¹‖₁ > cond_max: the blocks fed
/// through here are identity-normalized at p = 0, so a huge inverse norm
/// means p approached a pole of the ℓ-matrix even when the block is too
/// small for κ to see it (a 1×1 block always has κ = 1).
pub fn solve_checked<T: Scalar>(
    a: &Mat<T>,
    b: &Mat<T>,
    cond_max: f64,
) -> Result<Mat<T>, KernelError> {
    if a.rows() == 0 {
        return Ok(Mat::zeros(0, b.cols()));
    }
    let shadow = a.approx();
    let gate = (|| -> Result<f64, KernelError> {
        let f = lu_factor(&shadow)?;
        let inv = lu_solve_factored(&f, &Mat::identity(shadow.rows()));
        let inv_norm = inv.one_norm_approx();
        Ok(inv_norm.max(shadow.one_norm_approx() * inv_norm))
    })()
    .map_err(|_| KernelError::OutsideAnalyticDomain {
        cond: f64::INFINITY,
    })?;
    if !gate.is_finite() || gate > cond_max {
        return Err(KernelError::OutsideAnalyticDomain { cond: gate });
    }
    solve(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solve_identity() {
        let b = Mat::<f64>::from_rows(vec![vec![1.0, 2.0], vec![3.0, 4.0]]);
        let x = solve_checked(&Mat::identity(2), &b, COND_MAX_DEFAULT).unwrap();
        assert_eq!(x, b);
    }

    #[test]
    fn solve_roundtrip() {
        let a = Mat::<f64>::from_rows(vec![
            vec![2.0, 1.0, 0.5],
            vec![-1.0, 3.0, 1.0],
            vec![0.0, 0.7, -2.0],
        ]);
        let b = Mat::<f64>::from_rows(vec![vec![1.0], vec![0.0], vec![2.0]]);
        let x = solve(&a, &b).unwrap();
        let r = a.matmul(&x).sub(&b);
        assert!(r.max_abs() < 1e-12);
    }

    #[test]
    fn near_singular_is_outside_domain() {
        let a = Mat::<f64>::from_rows(vec![vec![1.0, 1.0], vec![1.0, 1.0 + 1e-12]]);
        match solve_checked(&a, &Mat::identity(2), COND_MAX_DEFAULT) {
            Err(KernelError::OutsideAnalyticDomain { cond }) => assert!(cond >= 1e10),
            other => panic!("expected OutsideAnalyticDomain, got {other:?}"),
        }
    }

    #[test]
    fn singular_errors() {
        let a = Mat::<f64>::from_rows(vec![vec![0.0, 0.0], vec![0.0, 0.0]]);
        assert!(solve(&a, &Mat::identity(2)).is_err());
    }
}
