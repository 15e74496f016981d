//! Gauge action on dynamical ℓ-matrices for maps σ = exp ∘ Σ with Σ a
//! polynomial map l* -> g:
//!
//! ```text
//!   l^σ_p = Ad_{σ_p} l_p Ad*_{σ_p} + θ^σ_p + π_{σ_p}
//!   θ^σ_p = ρ_p i* Ad*_{σ_p} − (ρ_p)* ,   ρ_p = φ1(ad_{Σ_p}) d_pΣ
//! ```
//!
//! π is the group cocycle integrating ϖ: by φ1-integration in general, or by
//! the exact coboundary formula π_g = Ad^(2)_g T − T when the cobracket is a
//! coboundary ∂T.

use super::cocycle::group_cocycle_generic;
use super::LEvaluator;
use crate::algebra::QuasiBialgebra;
use crate::error::KernelError;
use crate::kernel::expm::{expm, phi_func};
use crate::kernel::mat::Mat;
use crate::kernel::scalar::Scalar;

/// Polynomial map Σ: l* -> g in exp-coordinates, stored as monomials
/// (exponent vector over the l*-coordinates, coefficient vector in g).
#[derive(Clone, Debug)]
pub struct GaugeMap {
    pub dim_l: usize,
    pub n: usize,
    pub terms: Vec<(Vec<u32>, Vec<f64>)>,
}

impl GaugeMap {
    pub fn new(dim_l: usize, n: usize, terms: Vec<(Vec<u32>, Vec<f64>)>) -> Self {
        for (e, c) in &terms {
            assert_eq!(e.len(), dim_l);
            assert_eq!(c.len(), n);
        }
        GaugeMap { dim_l, n, terms }
    }

    pub fn zero(dim_l: usize, n: usize) -> Self {
        GaugeMap::new(dim_l, n, Vec::new())
    }

    /// Σ_0 = 0 and d_0Σ = 0 (membership in Map₀^(2)).
    pub fn is_map02(&self) -> bool {
        self.terms.iter().all(|(e, c)| {
            c.iter().all(|x| *x == 0.0) || e.iter().map(|x| *x as usize).sum::<usize>() >= 2
        })
    }

    pub fn eval<T: Scalar>(&self, p: &[T]) -> Vec<T> {
        let mut out = vec![T::zero(); self.n];
        for (exps, coeff) in &self.terms {
            let mut mono = T::one();
            for (a, &e) in exps.iter().enumerate() {
                for _ in 0..e {
                    mono = mono * p[a].clone();
                }
            }
            for (i, &c) in coeff.iter().enumerate() {
                if c != 0.0 {
                    out[i] = out[i].clone() + mono.clone().scale(c);
                }
            }
        }
        out
    }

    /// d_pΣ as an n × dl matrix (exact monomial differentiation).
    pub fn jacobian<T: Scalar>(&self, p: &[T]) -> Mat<T> {
        let mut out = Mat::zeros(self.n, self.dim_l);
        for (exps, coeff) in &self.terms {
            for a in 0..self.dim_l {
                if exps[a] == 0 {
                    continue;
                }
                let mut mono = T::from_f64(exps[a] as f64);
                for (b, &e) in exps.iter().enumerate() {
                    let pow = if a == b { e - 1 } else { e };
                    for _ in 0..pow {
                        mono = mono * p[b].clone();
                    }
                }
                for (i, &c) in coeff.iter().enumerate() {
                    if c != 0.0 {
                        out.add_at(i, a, mono.clone().scale(c));
                    }
                }
            }
        }
        out
    }

    /// Max defect of l-equivariance dΣ(ad*_z p) + ad_z Σ(p) = 0 over sampled
    /// p and basis z (the direction convention of the equivariance equation
    /// for ℓ-matrices).
    pub fn equivariance_defect(&self, qb: &QuasiBialgebra, samples: &[Vec<f64>]) -> f64 {
        let dl = self.dim_l;
        let mut worst = 0.0f64;
        for p in samples {
            let sig = self.eval::<f64>(p);
            let jac = self.jacobian::<f64>(p);
            for zi in 0..dl {
                let mut dir = vec![0.0; dl];
                for j in 0..dl {
                    for k in 0..dl {
                        dir[j] += qb.g.c(zi, j, k) * p[k];
                    }
                }
                let lhs = jac.apply(&dir);
                let mut z = vec![0.0; qb.n()];
                z[zi] = 1.0;
                let rhs = qb.g.ad(&z).apply(&sig);
                for (a, b) in lhs.iter().zip(&rhs) {
                    worst = worst.max((a + b).abs());
                }
            }
        }
        worst
    }
}

/// How π_{σ_p} is obtained.
#[derive(Clone, Copy)]
pub enum CocycleMode<'a> {
    /// φ1(D_x)ϖ_x integration along the exponential.
    Integrate,
    /// Exact coboundary formula for ϖ = ∂T: π_g = Ad^(2)_g T − T.
    Coboundary(&'a Mat<f64>),
}

/// Evaluate the gauge transform l^σ at p over any scalar.
pub fn gauge_apply<T: Scalar>(
    qb: &QuasiBialgebra,
    base: &impl LEvaluator,
    sigma: &GaugeMap,
    mode: CocycleMode<'_>,
    p: &[T],
) -> Result<Mat<T>, KernelError> {
    let n = qb.n();
    let dl = qb.layout().dl;
    let l = base.eval(p)?;
    let sig = sigma.eval(p);
    let ad_sig = qb.g.ad_generic(&sig);
    let ad_star = expm(&ad_sig)?;
    let ad_star_t = ad_star.transpose();

    // ρ = φ1(ad_Σ) dΣ : l* -> g
    let rho = phi_func(&ad_sig, 1)?.matmul(&sigma.jacobian(p));

    // θ = ρ i* Ad*_σ − i_l ρᵀ
    let theta1 = rho.matmul(&ad_star_t.block(0, dl, 0, n));
    let mut theta = theta1;
    let rho_t = rho.transpose();
    for i in 0..dl {
        for j in 0..n {
            let v = theta.get(i, j).clone() - rho_t.get(i, j).clone();
            theta.set(i, j, v);
        }
    }

    let pi = match mode {
        CocycleMode::Integrate => group_cocycle_generic(qb, &sig)?,
        CocycleMode::Coboundary(t0) => {
            let t = t0.lift::<T>();
            ad_star.matmul(&t).matmul(&ad_star_t).sub(&t)
        }
    };

    Ok(ad_star.matmul(&l).matmul(&ad_star_t).add(&theta).add(&pi))
}

/// An ℓ-matrix evaluator wrapping the gauge transform of a base evaluator.
pub struct Gauged<'a, E: LEvaluator> {
    pub qb: &'a QuasiBialgebra,
    pub base: &'a E,
    pub sigma: GaugeMap,
    pub coboundary: Option<Mat<f64>>,
}

impl<E: LEvaluator> LEvaluator for Gauged<'_, E> {
    fn eval<T: Scalar>(&self, p: &[T]) -> Result<Mat<T>, KernelError> {
        let mode = match &self.coboundary {
            Some(t) => CocycleMode::Coboundary(t),
            None => CocycleMode::Integrate,
        };
        gauge_apply(self.qb, self.base, &self.sigma, mode, p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::catalog_get;
    use crate::lmatrix::residuals::{cdybe_residual, equivariance_residual};
    use crate::lmatrix::Lcan;

    #[test]
    fn zero_sigma_is_identity() {
        let qb = catalog_get("sl2-cartan").unwrap();
        let base = Lcan::new(&qb);
        let sigma = GaugeMap::zero(1, 3);
        let p = vec![0.3];
        let direct = base.eval::<f64>(&p).unwrap();
        let gauged = gauge_apply(&qb, &base, &sigma, CocycleMode::Integrate, &p).unwrap();
        assert!(direct.sub(&gauged).max_abs() < 1e-14);
    }

    #[test]
    fn gauged_lcan_still_solves_cdybe_sl2() {
        // equivariant Σ on sl2-cartan take values in the Cartan line
        let qb = catalog_get("sl2-cartan").unwrap();
        let base = Lcan::new(&qb);
        let sigma = GaugeMap::new(
            1,
            3,
            vec![
                (vec![2], vec![0.4, 0.0, 0.0]),
                (vec![3], vec![-0.25, 0.0, 0.0]),
            ],
        );
        assert!(sigma.equivariance_defect(&qb, &[vec![0.3], vec![-0.7]]) < 1e-14);
        let gauged = Gauged {
            qb: &qb,
            base: &base,
            sigma,
            coboundary: None,
        };
        for x in [0.15, -0.4] {
            let l = gauged.eval::<f64>(&[x]).unwrap();
            let skew = l.add(&l.transpose()).max_abs();
            assert!(skew < 1e-11, "gauged map not skew: {skew:.3e}");
            let c = cdybe_residual(&qb, &gauged, &[x]).unwrap();
            assert!(c < 1e-8, "gauged CDYBE residual {c:.3e}");
            let e = equivariance_residual(&qb, &gauged, &[x], &[1.0]).unwrap();
            assert!(e < 1e-8, "gauged equivariance residual {e:.3e}");
        }
    }

    #[test]
    fn gauged_lcan_still_solves_cdybe_so3() {
        // for l = g quadratic, Σ(p) = (c1 + c2 ⟨p,p⟩) K^{-1}p is equivariant
        let qb = catalog_get("so3-quadratic-AM").unwrap();
        let base = Lcan::new(&qb);
        // K = -2 Id, so K^{-1}p = -p/2; fold the constant into c1, c2
        let mut terms = Vec::new();
        for a in 0..3 {
            let mut lin = vec![0u32; 3];
            lin[a] = 1;
            let mut coeff = vec![0.0; 3];
            coeff[a] = 0.3;
            terms.push((lin.clone(), coeff));
            for b in 0..3 {
                let mut cub = lin.clone();
                cub[b] += 2;
                let mut coeff = vec![0.0; 3];
                coeff[a] = -0.2;
                terms.push((cub, coeff));
            }
        }
        let sigma = GaugeMap::new(3, 3, terms);
        assert!(
            sigma.equivariance_defect(&qb, &[vec![0.3, -0.1, 0.2], vec![0.0, 0.5, -0.4]]) < 1e-13
        );
        let gauged = Gauged {
            qb: &qb,
            base: &base,
            sigma,
            coboundary: None,
        };
        let p = vec![0.2, -0.15, 0.1];
        let l = gauged.eval::<f64>(&p).unwrap();
        let skew = l.add(&l.transpose()).max_abs();
        assert!(skew < 1e-11, "gauged map not skew: {skew:.3e}");
        let c = cdybe_residual(&qb, &gauged, &p).unwrap();
        assert!(c < 1e-8, "gauged CDYBE residual {c:.3e}");
    }
}
