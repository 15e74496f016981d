//! The canonical dynamical ℓ-matrix engine: closed-form evaluation, formal
//! recursion, residuals of the defining equations, and the gauge action.

pub mod cocycle;
pub mod gauge;
pub mod krs;
pub mod lcan;
pub mod recursion;
pub mod residuals;

pub use cocycle::{cocycle_ode_residual, group_cocycle};
pub use gauge::{gauge_apply, CocycleMode, GaugeMap, Gauged};
pub use krs::{krs_operators, KrsOperators};
pub use lcan::{lcan_eval, LValue};
pub use recursion::{gauge_normalize_jets, lcan_jets, LJet};
pub use residuals::{cdybe_residual, equivariance_residual, ode_residual, pmadtau_residuals};

use crate::algebra::QuasiBialgebra;
use crate::error::KernelError;
use crate::kernel::mat::Mat;
use crate::kernel::scalar::Scalar;

/// A map p ↦ l_p evaluatable over any kernel scalar, so the same object can
/// be differentiated by dual numbers or expanded into ray jets.
pub trait LEvaluator: Sync {
    fn eval<T: Scalar>(&self, p: &[T]) -> Result<Mat<T>, KernelError>;
}

/// The canonical ℓ-matrix of a setup.
#[derive(Clone, Copy)]
pub struct Lcan<'g> {
    pub qb: &'g QuasiBialgebra,
}

impl<'g> Lcan<'g> {
    pub fn new(qb: &'g QuasiBialgebra) -> Self {
        Lcan { qb }
    }
}

impl LEvaluator for Lcan<'_> {
    fn eval<T: Scalar>(&self, p: &[T]) -> Result<Mat<T>, KernelError> {
        lcan::lcan_generic(self.qb, p)
    }
}

/// A base evaluator shifted by a constant skew map: p ↦ base(p) − t.
/// This realizes both the twist correspondence (lcan(G) − t for G^t) and
/// constant perturbations in negative controls.
pub struct Shifted<'a, E: LEvaluator> {
    pub base: &'a E,
    pub t: Mat<f64>,
}

impl<E: LEvaluator> LEvaluator for Shifted<'_, E> {
    fn eval<T: Scalar>(&self, p: &[T]) -> Result<Mat<T>, KernelError> {
        Ok(self.base.eval(p)?.sub(&self.t.lift::<T>()))
    }
}

/// The zero map; negative control in residual tests.
pub struct ZeroL {
    pub n: usize,
}

impl LEvaluator for ZeroL {
    fn eval<T: Scalar>(&self, _p: &[T]) -> Result<Mat<T>, KernelError> {
        Ok(Mat::zeros(self.n, self.n))
    }
}

/// A univariate matrix polynomial l(p) = Σ_k M_k p^k (only meaningful when
/// dim l* = 1); used to re-evaluate ray jets as ℓ-matrix candidates.
pub struct PolyL {
    pub coeffs: Vec<Mat<f64>>,
}

impl LEvaluator for PolyL {
    fn eval<T: Scalar>(&self, p: &[T]) -> Result<Mat<T>, KernelError> {
        assert_eq!(p.len(), 1, "PolyL is univariate");
        let n = self.coeffs[0].rows();
        let mut acc: Mat<T> = Mat::zeros(n, n);
        for m in self.coeffs.iter().rev() {
            acc = acc.scale_t(&p[0]).add(&m.lift::<T>());
        }
        Ok(acc)
    }
}
