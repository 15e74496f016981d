//! Polynomial sections of the trivial algebroid U × (l* ⊕ g*_0) and the
//! Lie-algebroid-morphism residual of the trivialization T against the
//! bracket of N(U).

use super::trivialization::trivialize_generic;
use crate::algebra::QuasiBialgebra;
use crate::error::KernelError;
use crate::kernel::deriv::dir_derivative;
use crate::kernel::mat::{vec_norm, Mat};
use crate::kernel::scalar::{Dual, Scalar};
use crate::lmatrix::LEvaluator;

/// Polynomial map between coordinate spaces, stored as monomials.
#[derive(Clone, Debug)]
pub struct PolyMap {
    pub dim_in: usize,
    pub dim_out: usize,
    pub terms: Vec<(Vec<u32>, Vec<f64>)>,
}

impl PolyMap {
    pub fn new(dim_in: usize, dim_out: usize, terms: Vec<(Vec<u32>, Vec<f64>)>) -> Self {
        for (e, c) in &terms {
            assert_eq!(e.len(), dim_in);
            assert_eq!(c.len(), dim_out);
        }
        PolyMap {
            dim_in,
            dim_out,
            terms,
        }
    }

    pub fn zero(dim_in: usize, dim_out: usize) -> Self {
        PolyMap::new(dim_in, dim_out, Vec::new())
    }

    pub fn degree(&self) -> usize {
        self.terms
            .iter()
            .map(|(e, _)| e.iter().map(|x| *x as usize).sum())
            .max()
            .unwrap_or(0)
    }

    pub fn eval<T: Scalar>(&self, p: &[T]) -> Vec<T> {
        let mut out = vec![T::zero(); self.dim_out];
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
}

/// Section (α, X) of the trivial algebroid, with X = z + ξ valued in
/// g*_0 = l ⊕ l^⊥ by construction.
#[derive(Clone, Debug)]
pub struct TrivialSection {
    pub alpha: PolyMap,
    pub z: PolyMap,
    pub xi_perp: PolyMap,
}

impl TrivialSection {
    /// Degree cap from the section type.
    pub fn check_degree(&self) {
        assert!(
            self.alpha.degree() <= 4 && self.z.degree() <= 4 && self.xi_perp.degree() <= 4,
            "section degree capped at 4"
        );
    }
}

fn dual_seed<T: Scalar>(p: &[T], dir: &[T]) -> Vec<Dual<T>> {
    p.iter()
        .zip(dir)
        .map(|(v, d)| Dual::new(v.clone(), d.clone()))
        .collect()
}

fn dual_der<T: Scalar>(v: &[Dual<T>]) -> Vec<T> {
    v.iter().map(|x| x.der.clone()).collect()
}

/// The image section p ↦ T_p(σ(p)) ∈ l ⊕ g*, generic over the scalar.
fn t_image<T: Scalar>(
    qb: &QuasiBialgebra,
    sec: &TrivialSection,
    p: &[T],
) -> Result<(Vec<T>, Vec<T>), KernelError> {
    let alpha = sec.alpha.eval(p);
    let z = sec.z.eval(p);
    let xi = sec.xi_perp.eval(p);
    trivialize_generic(qb, p, &alpha, &z, &xi)
}

/// a^{N(U)}_p(z, ξ) = i*ξ − ad*_z p over any scalar.
fn anchor<T: Scalar>(qb: &QuasiBialgebra, p: &[T], z: &[T], xi: &[T]) -> Vec<T> {
    let dl = qb.layout().dl;
    let mut a: Vec<T> = xi[..dl].to_vec();
    for j in 0..dl {
        for i in 0..dl {
            for k in 0..dl {
                let c = qb.g.c(i, j, k);
                if c != 0.0 {
                    a[j] = a[j].clone() - (z[i].clone() * p[k].clone()).scale(c);
                }
            }
        }
    }
    a
}

/// Max residual of T being a Lie algebroid morphism on one pair of sections:
/// ‖T([σ,σ']_triv) − [Tσ, Tσ']_{N(U)}‖ plus the anchor compatibility defect.
pub fn morphism_residual(
    qb: &QuasiBialgebra,
    ev: &impl LEvaluator,
    s1: &TrivialSection,
    s2: &TrivialSection,
    p: &[f64],
) -> Result<f64, KernelError> {
    let lay = qb.layout();
    let (n, dl, dd) = (lay.n(), lay.dl, lay.dd());
    let d = qb.double();

    // --- trivial-side bracket at p
    let a1 = s1.alpha.eval::<f64>(p);
    let a2 = s2.alpha.eval::<f64>(p);
    let sec_der = |s: &TrivialSection, dir: &[f64]| -> (Vec<f64>, Vec<f64>, Vec<f64>) {
        let seeds = dual_seed(p, dir);
        (
            dual_der(&s.alpha.eval(&seeds)),
            dual_der(&s.z.eval(&seeds)),
            dual_der(&s.xi_perp.eval(&seeds)),
        )
    };
    let (da2, dz2, dxi2) = sec_der(s2, &a1);
    let (da1, dz1, dxi1) = sec_der(s1, &a2);

    let alpha_out: Vec<f64> = da2.iter().zip(&da1).map(|(a, b)| a - b).collect();
    // fiber bracket in g*_0 ⊂ d
    let embed = |z: &[f64], xi: &[f64]| -> Vec<f64> {
        let mut v = vec![0.0; dd];
        v[..dl].copy_from_slice(z);
        for (j, x) in xi.iter().enumerate() {
            v[n + dl + j] = *x;
        }
        v
    };
    let x1 = embed(&s1.z.eval::<f64>(p), &s1.xi_perp.eval::<f64>(p));
    let x2 = embed(&s2.z.eval::<f64>(p), &s2.xi_perp.eval::<f64>(p));
    let br = d.bracket(&x1, &x2);
    let mut z_out = vec![0.0; dl];
    let mut xi_out = vec![0.0; lay.dm];
    for i in 0..dl {
        z_out[i] = dz2[i] - dz1[i] + br[i];
    }
    for j in 0..lay.dm {
        xi_out[j] = dxi2[j] - dxi1[j] + br[n + dl + j];
    }
    // closure defects of the fiber bracket (m and m^⊥ components) count too
    let mut worst = vec_norm(&br[dl..n]).max(vec_norm(&br[n..n + dl]));

    let (lhs_l, lhs_gs) = trivialize_generic(qb, p, &alpha_out, &z_out, &xi_out)?;

    // --- N(U)-side bracket of the image sections
    let (c1_l, c1_gs) = t_image::<f64>(qb, s1, p)?;
    let (c2_l, c2_gs) = t_image::<f64>(qb, s2, p)?;
    let anc1 = anchor(qb, p, &c1_l, &c1_gs);
    let anc2 = anchor(qb, p, &c2_l, &c2_gs);

    let img_der = |s: &TrivialSection, dir: &[f64]| -> Result<(Vec<f64>, Vec<f64>), KernelError> {
        let seeds = dual_seed(p, dir);
        let (l, gs) = t_image::<Dual<f64>>(qb, s, &seeds)?;
        Ok((dual_der(&l), dual_der(&gs)))
    };
    let (dzn2, dxin2) = img_der(s2, &anc1)?;
    let (dzn1, dxin1) = img_der(s1, &anc2)?;

    let l = ev.eval::<f64>(p)?;
    let dl_mats: Vec<Mat<f64>> = (0..dl)
        .map(|a| {
            let mut dir = vec![0.0; dl];
            dir[a] = 1.0;
            dir_derivative(|q| ev.eval(q), p, &dir)
        })
        .collect::<Result<_, _>>()?;

    let z1g = {
        let mut v = vec![0.0; n];
        v[..dl].copy_from_slice(&c1_l);
        v
    };
    let z2g = {
        let mut v = vec![0.0; n];
        v[..dl].copy_from_slice(&c2_l);
        v
    };
    let ad_z1t = qb.g.ad(&z1g).transpose();
    let ad_z2t = qb.g.ad(&z2g).transpose();
    let lxi1 = l.apply(&c1_gs);
    let lxi2 = l.apply(&c2_gs);

    // first component (∈ l)
    let mut rhs_l = vec![0.0; dl];
    let brz = qb.g.bracket(&z1g, &z2g);
    for i in 0..dl {
        rhs_l[i] = dzn2[i] - dzn1[i] - brz[i];
    }
    for c in 0..dl {
        let mut s = 0.0;
        for r in 0..n {
            for q in 0..n {
                s += c1_gs[r] * dl_mats[c].get(r, q) * c2_gs[q];
            }
        }
        rhs_l[c] += s;
    }

    // second component (∈ g*)
    let mut rhs_gs = vec![0.0; n];
    let t1 = ad_z1t.apply(&c2_gs);
    let t2 = ad_z2t.apply(&c1_gs);
    let t3 = qb.g.ad(&lxi1).transpose().apply(&c2_gs);
    let t4 = qb.g.ad(&lxi2).transpose().apply(&c1_gs);
    for k in 0..n {
        let mut wterm = 0.0;
        for a in 0..n {
            for b in 0..n {
                wterm += c1_gs[a] * qb.w_basis(k).get(a, b) * c2_gs[b];
            }
        }
        rhs_gs[k] = dxin2[k] - dxin1[k] + t1[k] - t2[k] + wterm + t3[k] - t4[k];
    }

    for i in 0..dl {
        worst = worst.max((lhs_l[i] - rhs_l[i]).abs());
    }
    for i in 0..n {
        worst = worst.max((lhs_gs[i] - rhs_gs[i]).abs());
    }
    Ok(worst)
}

/// ‖a^{N(U)}(Tσ) − a_trivial(σ)‖ at p.
pub fn anchor_residual(
    qb: &QuasiBialgebra,
    sec: &TrivialSection,
    p: &[f64],
) -> Result<f64, KernelError> {
    let (zl, gs) = t_image::<f64>(qb, sec, p)?;
    let anc = anchor(qb, p, &zl, &gs);
    let alpha = sec.alpha.eval::<f64>(p);
    Ok(vec_norm(
        &anc.iter()
            .zip(&alpha)
            .map(|(a, b)| a - b)
            .collect::<Vec<_>>(),
    ))
}
