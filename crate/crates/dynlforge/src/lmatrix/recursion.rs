//! Formal recursion for the canonical ℓ-matrix along a ray t ↦ t·p0, and
//! degree-by-degree gauge normalization of arbitrary ℓ-matrix jets.
//!
//! With L_p ζ = p_g ad_{sp} ζ + ad_{sp} l_p ζ − l_p ζ̃_p, the homogeneous
//! terms of the canonical ℓ-matrix satisfy the four scaling rules
//!
//! ```text
//!   p_m [l]_k ξ  = (1/k)     p_m [L]_k ξ        p_l [l]_k ξ  = (1/(k+1)) p_l [L]_k ξ
//!   p_m [l]_k sα = (1/(k+1)) p_m [L]_k sα       p_l [l]_k sα = (1/(k+2)) p_l [L]_k sα
//! ```
//!
//! which determine `[l]_k` from lower degrees.

use super::gauge::{GaugeMap, Gauged};
use super::{LEvaluator, PolyL};
use crate::algebra::QuasiBialgebra;
use crate::error::{EngineError, KernelError};
use crate::kernel::deriv::ray_jet;
use crate::kernel::mat::Mat;

/// Truncated expansion of the ℓ-matrix along a ray.
#[derive(Clone, Debug)]
pub struct LJet {
    pub p0: Vec<f64>,
    /// coefficient k is the matrix of the degree-k term along t ↦ t p0.
    pub coeffs: Vec<Mat<f64>>,
}

impl LJet {
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, t: f64) -> Mat<f64> {
        let mut acc = self.coeffs[self.order()].clone();
        for k in (0..self.order()).rev() {
            acc = acc.scale(t).add(&self.coeffs[k]);
        }
        acc
    }
}

/// Build the canonical jet degree-by-degree from the recursion.
pub fn lcan_jets(qb: &QuasiBialgebra, p0: &[f64], order: usize) -> LJet {
    assert!(order <= 32, "recursion order capped at 32");
    let lay = qb.layout();
    let (n, dl, dd) = (lay.n(), lay.dl, lay.dd());
    let a0 = qb.double().ad_sp(p0);

    let mut coeffs: Vec<Mat<f64>> = vec![Mat::zeros(n, n)];
    for k in 1..=order {
        let mut lk = Mat::<f64>::zeros(n, n);
        for c in 0..n {
            // unit covector e^c embedded in d
            let mut v = vec![0.0; dd];
            v[lay.dual(c)] = 1.0;

            // [L]_k ζ, assembled in d then projected
            let mut big = vec![0.0; dd];
            if k == 1 {
                let av = a0.apply(&v);
                for i in 0..dd {
                    big[i] += av[i];
                }
            }
            // ad_{sp} l_{k-1} ζ
            let mut lw = vec![0.0; dd];
            for i in 0..n {
                lw[i] = *coeffs[k - 1].get(i, c);
            }
            let alw = a0.apply(&lw);
            for i in 0..dd {
                big[i] += alw[i];
            }
            // − Σ_{a+b=k, a,b>=1} l_a ζ̃^{(b)} with ζ̃^{(1)} = p_{g*} A0 ζ and
            // ζ̃^{(b)} = p_{g*} A0 l_{b-1} ζ for b >= 2
            for b in 1..k {
                let zt: Vec<f64> = if b == 1 {
                    let av = a0.apply(&v);
                    (0..n).map(|i| av[n + i]).collect()
                } else {
                    let mut le = vec![0.0; dd];
                    for i in 0..n {
                        le[i] = *coeffs[b - 1].get(i, c);
                    }
                    let ale = a0.apply(&le);
                    (0..n).map(|i| ale[n + i]).collect()
                };
                let la_zt = coeffs[k - b].apply(&zt);
                for i in 0..n {
                    big[i] -= la_zt[i];
                }
            }

            let (fl, fm) = if c < dl {
                (1.0 / (k as f64 + 2.0), 1.0 / (k as f64 + 1.0))
            } else {
                (1.0 / (k as f64 + 1.0), 1.0 / k as f64)
            };
            for r in 0..dl {
                lk.set(r, c, fl * big[r]);
            }
            for r in dl..n {
                lk.set(r, c, fm * big[r]);
            }
        }
        coeffs.push(lk);
    }
    LJet {
        p0: p0.to_vec(),
        coeffs,
    }
}

/// Gauge-normalize a ray jet so that `[l]_k sp = 0` for all k <= K, using the
/// degree-(k+1) corrections `Σ_p = −(1/(k+1)) p_m [l]_k sp − (1/(k+2)) p_l [l]_k sp`.
///
/// Ray data suffices only when dim l* = 1 (then the ray is all of l*); higher
/// rank would need multivariate jets, which the recursion checks do not.
/// Returns the per-degree Σ coefficients and the normalized jet.
pub fn gauge_normalize_jets(
    qb: &QuasiBialgebra,
    lj: &LJet,
) -> Result<(Vec<Vec<f64>>, LJet), EngineError> {
    let lay = qb.layout();
    let (n, dl) = (lay.n(), lay.dl);
    if dl != 1 {
        return Err(EngineError::Unsupported(
            "jet gauge normalization needs dim l* = 1 (ray jets only)".into(),
        ));
    }
    let order = lj.order();
    let rho = lj.p0[0];
    assert!(rho != 0.0, "ray direction must be nonzero");

    // current jet as a univariate polynomial evaluator
    let mut coeffs = lj.coeffs.clone();
    // undo the ray scaling: l(x) = Σ M_k (x/ρ)^k
    for (k, m) in coeffs.iter_mut().enumerate() {
        *m = m.scale(rho.powi(-(k as i32)));
    }
    let mut sigma_jets: Vec<Vec<f64>> = Vec::new();

    for k in 1..=order {
        // defect [l]_k s p at p = 1 coordinate: column action on sp = x e^0
        let sp = {
            let mut v = vec![0.0; n];
            v[0] = 1.0;
            v
        };
        // [l(x) s(x·e^0)]_{x^{k+1}} = M_k · e^0-covector; the degree-k matrix
        // applied to sp contributes at degree k+1
        let ck = coeffs[k].apply(&sp);
        let defect: f64 = ck.iter().map(|v| v * v).sum::<f64>().sqrt();
        let mut sig = vec![0.0; n];
        if defect > 1e-15 {
            for i in 0..dl {
                sig[i] = -ck[i] / (k as f64 + 2.0);
            }
            for i in dl..n {
                sig[i] = -ck[i] / (k as f64 + 1.0);
            }
            let gauge = GaugeMap::new(1, n, vec![(vec![k as u32 + 1], sig.clone())]);
            let poly = PolyL {
                coeffs: coeffs.clone(),
            };
            let gauged = Gauged {
                qb,
                base: &poly,
                sigma: gauge,
                coboundary: None,
            };
            let jet = ray_jet(|x| gauged.eval(x), &[1.0], order)
                .map_err(|e: KernelError| EngineError::Kernel(e))?;
            coeffs = jet.coeffs;
        }
        sigma_jets.push(sig);
    }

    // rescale back onto the ray
    let mut out = coeffs;
    for (k, m) in out.iter_mut().enumerate() {
        *m = m.scale(rho.powi(k as i32));
    }
    Ok((
        sigma_jets,
        LJet {
            p0: lj.p0.clone(),
            coeffs: out,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::catalog_get;
    use crate::kernel::deriv::loglog_slope;
    use crate::lmatrix::lcan::lcan_eval;

    #[test]
    fn jet_order_zero_and_skewness() {
        let qb = catalog_get("sl2-cartan").unwrap();
        let j = lcan_jets(&qb, &[1.0], 6);
        assert!(j.coeffs[0].max_abs() == 0.0);
        for c in &j.coeffs {
            assert!(c.add(&c.transpose()).max_abs() < 1e-12);
        }
    }

    #[test]
    fn am_jet_matches_coth_series() {
        // coth z − 1/z = z/3 − z³/45 + 2z⁵/945 applied to ad_{p0}
        let qb = catalog_get("so3-quadratic-AM").unwrap();
        let p0 = vec![0.7, -0.2, 0.4];
        let j = lcan_jets(&qb, &p0, 5);
        let lay = qb.layout();
        let (n, dd) = (lay.n(), lay.dd());
        let a = qb.double().ad_sp(&p0);
        let a2 = a.matmul(&a);
        let a3 = a2.matmul(&a);
        let a5 = a3.matmul(&a2);
        let expect = [
            (1, a.scale(1.0 / 3.0)),
            (3, a3.scale(-1.0 / 45.0)),
            (5, a5.scale(2.0 / 945.0)),
        ];
        for (k, m) in expect {
            let blk = m.block(0, n, n, dd);
            let d = j.coeffs[k].sub(&blk).max_abs();
            assert!(d < 1e-12, "degree {k} off by {d:.3e}");
        }
        for k in [0, 2, 4] {
            assert!(j.coeffs[k].max_abs() < 1e-12);
        }
    }

    #[test]
    fn jet_vs_closed_form_convergence() {
        for (name, p0, order) in [
            ("sl2-cartan", vec![1.0], 4usize),
            ("so3-quadratic-AM", vec![0.8, 0.5, -0.3], 4),
        ] {
            let qb = catalog_get(name).unwrap();
            let j = lcan_jets(&qb, &p0, order);
            let ts: Vec<f64> = (3..=10).map(|k| 0.5f64.powi(k)).collect();
            let errs: Vec<f64> = ts
                .iter()
                .map(|&t| {
                    let p: Vec<f64> = p0.iter().map(|c| c * t).collect();
                    let exact = lcan_eval(&qb, &p).unwrap().l;
                    j.eval(t).sub(&exact).max_abs()
                })
                .collect();
            let slope = loglog_slope(&ts, &errs, 1e-13).expect("enough usable points");
            assert!(
                slope >= order as f64 + 0.7,
                "{name}: slope {slope:.2} below {}",
                order as f64 + 0.7
            );
        }
    }
}
