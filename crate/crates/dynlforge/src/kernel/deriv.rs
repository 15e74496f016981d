//! Directional derivatives and ray jets of matrix-valued maps on l*.
//!
//! The primary route is dual numbers through the generic evaluation graph;
//! central finite differences with Richardson extrapolation are kept as an
//! independent cross-check.

use super::jet::MatJet;
use super::mat::Mat;
use super::scalar::{Dual, JetS, Scalar};
use crate::error::KernelError;

/// Exact directional derivative `d_p f (dir)` by dual-number evaluation.
///
/// `f` must be written generically over [`Scalar`].
pub fn dir_derivative<T, F>(f: F, p: &[T], dir: &[T]) -> Result<Mat<T>, KernelError>
where
    T: Scalar,
    F: Fn(&[Dual<T>]) -> Result<Mat<Dual<T>>, KernelError>,
{
    let seeded: Vec<Dual<T>> = p
        .iter()
        .zip(dir)
        .map(|(v, d)| Dual::new(v.clone(), d.clone()))
        .collect();
    let out = f(&seeded)?;
    Ok(Mat::from_fn(out.rows(), out.cols(), |i, j| {
        out.get(i, j).der.clone()
    }))
}

/// Central finite difference with two step sizes and Richardson
/// extrapolation; cross-check only.
pub fn fd_derivative<F>(f: F, p: &[f64], dir: &[f64], h: f64) -> Result<Mat<f64>, KernelError>
where
    F: Fn(&[f64]) -> Result<Mat<f64>, KernelError>,
{
    let shift = |s: f64| -> Vec<f64> { p.iter().zip(dir).map(|(x, d)| x + s * d).collect() };
    let central = |h: f64| -> Result<Mat<f64>, KernelError> {
        let fp = f(&shift(h))?;
        let fm = f(&shift(-h))?;
        Ok(fp.sub(&fm).scale(0.5 / h))
    };
    let d1 = central(h)?;
    let d2 = central(h / 2.0)?;
    // (4 D(h/2) - D(h)) / 3
    Ok(d2.scale(4.0 / 3.0).sub(&d1.scale(1.0 / 3.0)))
}

/// Taylor coefficients of `t -> f(t p0)` up to `order`, via jet arithmetic
/// through the evaluation graph.
pub fn ray_jet<F>(f: F, p0: &[f64], order: usize) -> Result<MatJet, KernelError>
where
    F: Fn(&[JetS]) -> Result<Mat<JetS>, KernelError>,
{
    let seeded: Vec<JetS> = p0.iter().map(|&c| JetS::variable(0.0, c, order)).collect();
    let out = f(&seeded)?;
    Ok(MatJet::from_mat_of_jets(&out, order))
}

/// Least-squares slope of log2(err) against log2(t); points with error below
/// `floor` are dropped so rounding noise cannot flatten the fit.
pub fn loglog_slope(ts: &[f64], errs: &[f64], floor: f64) -> Option<f64> {
    let pts: Vec<(f64, f64)> = ts
        .iter()
        .zip(errs)
        .filter(|(_, e)| **e > floor)
        .map(|(t, e)| (t.log2(), e.log2()))
        .collect();
    if pts.len() < 3 {
        return None;
    }
    let n = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    Some((n * sxy - sx * sy) / (n * sxx - sx * sx))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::expm::expm;

    #[test]
    fn constant_map_has_zero_derivative() {
        let f = |_: &[Dual<f64>]| Ok(Mat::<Dual<f64>>::identity(3));
        let d = dir_derivative(f, &[0.3, 0.1], &[1.0, -2.0]).unwrap();
        assert!(d.max_abs() < 1e-15);
    }

    #[test]
    fn linear_map_derivative_is_itself() {
        // f(p) = p0 * M, direction (a, b) -> a * M
        let m = Mat::<f64>::from_rows(vec![vec![1.0, 2.0], vec![3.0, 4.0]]);
        let mref = &m;
        let f = move |p: &[Dual<f64>]| Ok(mref.lift::<Dual<f64>>().scale_t(&p[0]));
        let d = dir_derivative(f, &[0.7, 0.0], &[2.5, 1.0]).unwrap();
        assert!(d.sub(&m.scale(2.5)).max_abs() < 1e-14);
    }

    #[test]
    fn dual_vs_fd_on_exp() {
        let a = Mat::<f64>::from_rows(vec![vec![0.0, 1.0], vec![-0.3, 0.2]]);
        let aref = &a;
        let fdual = move |p: &[Dual<f64>]| expm(&aref.lift::<Dual<f64>>().scale_t(&p[0]));
        let fplain = move |p: &[f64]| expm(&aref.scale(p[0]));
        let d = dir_derivative(fdual, &[0.9], &[1.0]).unwrap();
        let fd = fd_derivative(fplain, &[0.9], &[1.0], 1e-3).unwrap();
        assert!(d.sub(&fd).max_abs() < 1e-9);
    }

    #[test]
    fn ray_jet_of_exp_series() {
        // exp(t A): coefficients I, A, A^2/2
        let a = Mat::<f64>::from_rows(vec![vec![0.0, 2.0], vec![1.0, 0.0]]);
        let aref = &a;
        let f = move |p: &[JetS]| expm(&aref.lift::<JetS>().scale_t(&p[0]));
        let j = ray_jet(f, &[1.0], 2).unwrap();
        assert!(j.coeffs[0].sub(&Mat::identity(2)).max_abs() < 1e-13);
        assert!(j.coeffs[1].sub(&a).max_abs() < 1e-13);
        assert!(j.coeffs[2].sub(&a.matmul(&a).scale(0.5)).max_abs() < 1e-13);
    }
}
