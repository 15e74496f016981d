//! The vertex algebras g*_p = { i(z) + ξ : i*ξ = ad*_z p } with their
//! brackets, and the isomorphism φ_p: g*_p -> g*_0 built from the canonical
//! ℓ-matrix.

use crate::algebra::QuasiBialgebra;
use crate::error::EngineError;
use crate::kernel::expm::{expm, phi_func};
use crate::kernel::mat::vec_norm;
use crate::lmatrix::LEvaluator;

/// Element of g*_p in (z, ξ) coordinates: z ∈ l (dl components),
/// ξ ∈ g* (n components).
#[derive(Clone, Debug)]
pub struct VertexElement {
    pub p: Vec<f64>,
    pub z: Vec<f64>,
    pub xi: Vec<f64>,
}

impl VertexElement {
    /// Defect of the membership constraint i*ξ = ad*_z p.
    pub fn membership_residual(&self, qb: &QuasiBialgebra) -> f64 {
        let dl = qb.layout().dl;
        let mut worst = 0.0f64;
        for j in 0..dl {
            let mut rhs = 0.0;
            for i in 0..dl {
                for k in 0..dl {
                    rhs += self.z[i] * qb.g.c(i, j, k) * self.p[k];
                }
            }
            worst = worst.max((self.xi[j] - rhs).abs());
        }
        worst
    }

    /// The unique re-coordinatization X = z + ad_{sp}z + ξ0 with ξ0 ∈ l^⊥.
    pub fn perp_part(&self, qb: &QuasiBialgebra) -> Vec<f64> {
        let dl = qb.layout().dl;
        self.xi[dl..].to_vec()
    }

    /// As a vector in the double d.
    pub fn to_double(&self, qb: &QuasiBialgebra) -> Vec<f64> {
        let lay = qb.layout();
        let mut v = vec![0.0; lay.dd()];
        v[..lay.dl].copy_from_slice(&self.z);
        v[lay.n()..].copy_from_slice(&self.xi);
        v
    }

    fn from_double(qb: &QuasiBialgebra, p: &[f64], v: &[f64]) -> (Self, f64) {
        let lay = qb.layout();
        let n = lay.n();
        let m_defect = vec_norm(&v[lay.dl..n]);
        (
            VertexElement {
                p: p.to_vec(),
                z: v[..lay.dl].to_vec(),
                xi: v[n..].to_vec(),
            },
            m_defect,
        )
    }
}

fn membership_tol(x: &VertexElement, y: &VertexElement) -> f64 {
    let scale = vec_norm(&x.z) + vec_norm(&x.xi) + vec_norm(&y.z) + vec_norm(&y.xi);
    1e-8 * (1.0 + scale)
}

/// The bracket [i(z)+ξ, i(z')+ξ']*_p of the vertex algebra, with the result
/// verified to satisfy the membership constraint.
pub fn vertex_bracket(
    qb: &QuasiBialgebra,
    ev: &impl LEvaluator,
    p: &[f64],
    x: &VertexElement,
    y: &VertexElement,
) -> Result<VertexElement, EngineError> {
    let tol = membership_tol(x, y);
    let rx = x.membership_residual(qb);
    let ry = y.membership_residual(qb);
    if rx > tol || ry > tol {
        return Err(EngineError::Membership(rx.max(ry)));
    }
    let n = qb.n();
    let l = ev.eval::<f64>(p)?;

    let zx = {
        let mut v = vec![0.0; n];
        v[..x.z.len()].copy_from_slice(&x.z);
        v
    };
    let zy = {
        let mut v = vec![0.0; n];
        v[..y.z.len()].copy_from_slice(&y.z);
        v
    };
    let (xi, eta) = (&x.xi, &y.xi);
    let lxi = l.apply(xi);
    let leta = l.apply(eta);
    let ad_zx = qb.g.ad(&zx);
    let ad_zy = qb.g.ad(&zy);
    let ad_lxi = qb.g.ad(&lxi);
    let ad_leta = qb.g.ad(&leta);

    // g-part
    let mut gp = qb.g.bracket(&zx, &zy);
    let add = |acc: &mut Vec<f64>, v: Vec<f64>, s: f64| {
        for (a, b) in acc.iter_mut().zip(v) {
            *a += s * b;
        }
    };
    add(&mut gp, qb.w_of(&zx).apply(eta), 1.0);
    add(&mut gp, ad_zx.apply(&leta), 1.0);
    add(&mut gp, l.apply(&ad_zx.transpose().apply(eta)), 1.0);
    add(&mut gp, qb.w_of(&zy).apply(xi), -1.0);
    add(&mut gp, ad_zy.apply(&lxi), -1.0);
    add(&mut gp, l.apply(&ad_zy.transpose().apply(xi)), -1.0);
    add(&mut gp, qb.g.bracket(&lxi, &leta), 1.0);
    add(&mut gp, l.apply(&ad_lxi.transpose().apply(eta)), 1.0);
    add(&mut gp, l.apply(&ad_leta.transpose().apply(xi)), -1.0);
    add(&mut gp, qb.w_of(&lxi).apply(eta), 1.0);
    add(&mut gp, qb.w_of(&leta).apply(xi), -1.0);
    // −⟨ξ, ϖ_{l_p •} η⟩: the g-element with c-component ξᵀ W(l e^c) η
    for c in 0..n {
        let lec = l.column(c);
        let w = qb.w_of(&lec);
        let mut s = 0.0;
        for a in 0..n {
            for b in 0..n {
                s += xi[a] * w.get(a, b) * eta[b];
            }
        }
        gp[c] -= s;
    }
    add(&mut gp, qb.phi_contract2(xi, eta), 1.0);

    // g*-part
    let mut sp = vec![0.0; n];
    add(&mut sp, ad_zx.transpose().apply(eta), -1.0);
    add(&mut sp, ad_zy.transpose().apply(xi), 1.0);
    for k in 0..n {
        let mut s = 0.0;
        for a in 0..n {
            for b in 0..n {
                s += xi[a] * qb.w_basis(k).get(a, b) * eta[b];
            }
        }
        sp[k] -= s;
    }
    add(&mut sp, ad_lxi.transpose().apply(eta), -1.0);
    add(&mut sp, ad_leta.transpose().apply(xi), 1.0);

    // the g-part must lie in i(l)
    let dl = qb.layout().dl;
    let m_defect = vec_norm(&gp[dl..]);
    if m_defect > tol {
        return Err(EngineError::Membership(m_defect));
    }
    let out = VertexElement {
        p: p.to_vec(),
        z: gp[..dl].to_vec(),
        xi: sp,
    };
    let rout = out.membership_residual(qb);
    if rout > tol {
        return Err(EngineError::Membership(rout));
    }
    Ok(out)
}

/// φ_p(X) = Ad_{e^{-sp}} τ_{l_p} X ∈ g*_0.
pub fn vertex_iso(
    qb: &QuasiBialgebra,
    ev: &impl LEvaluator,
    p: &[f64],
    x: &VertexElement,
) -> Result<VertexElement, EngineError> {
    let lay = qb.layout();
    let n = lay.n();
    let l = ev.eval::<f64>(p)?;
    let a = qb.double().ad_sp(p);
    let e_neg = expm(&a.neg())?;
    let mut v = x.to_double(qb);
    let lx = l.apply(&x.xi);
    for i in 0..n {
        v[i] += lx[i];
    }
    let out = e_neg.apply(&v);
    let (elt, m_defect) = VertexElement::from_double(qb, &vec![0.0; lay.dl], &out);
    // membership in g*_0 also requires a vanishing m^⊥ part
    let mp_defect = vec_norm(&out[n..n + lay.dl]);
    let tol = 1e-8 * (1.0 + vec_norm(&v));
    if m_defect.max(mp_defect) > tol {
        return Err(EngineError::Membership(m_defect.max(mp_defect)));
    }
    Ok(elt)
}

/// φ_p^{-1}(z+ξ) = (p_l (Ad_{e^{sp}}−1)/ad_{sp} + p_{g*} Ad_{e^{sp}})(z+ξ).
pub fn vertex_iso_inv(
    qb: &QuasiBialgebra,
    p: &[f64],
    x0: &VertexElement,
) -> Result<VertexElement, EngineError> {
    let lay = qb.layout();
    let n = lay.n();
    let a = qb.double().ad_sp(p);
    let e_pos = expm(&a)?;
    let phi1_pos = phi_func(&a, 1)?;
    let v = x0.to_double(qb);
    let w1 = phi1_pos.apply(&v);
    let w2 = e_pos.apply(&v);
    let elt = VertexElement {
        p: p.to_vec(),
        z: w1[..lay.dl].to_vec(),
        xi: w2[n..].to_vec(),
    };
    let tol = 1e-8 * (1.0 + vec_norm(&v));
    let r = elt.membership_residual(qb);
    if r > tol {
        return Err(EngineError::Membership(r));
    }
    Ok(elt)
}

/// `‖φ_p([X,Y]*_p) − [φ_p X, φ_p Y]*_0‖` on the given pair.
pub fn iso_bracket_residual(
    qb: &QuasiBialgebra,
    ev: &impl LEvaluator,
    p: &[f64],
    x: &VertexElement,
    y: &VertexElement,
) -> Result<f64, EngineError> {
    let zero = vec![0.0; qb.layout().dl];
    let lhs = vertex_iso(qb, ev, p, &vertex_bracket(qb, ev, p, x, y)?)?;
    let rhs = vertex_bracket(
        qb,
        ev,
        &zero,
        &vertex_iso(qb, ev, p, x)?,
        &vertex_iso(qb, ev, p, y)?,
    )?;
    let dz = vec_norm(
        &lhs.z
            .iter()
            .zip(&rhs.z)
            .map(|(a, b)| a - b)
            .collect::<Vec<_>>(),
    );
    let dxi = vec_norm(
        &lhs.xi
            .iter()
            .zip(&rhs.xi)
            .map(|(a, b)| a - b)
            .collect::<Vec<_>>(),
    );
    Ok(dz.max(dxi))
}

/// Deterministic sample of g*_p elements: z ranges over the l-basis (with the
/// forced m^⊥ completion) and ξ over the l^⊥ basis.
pub fn vertex_samples(qb: &QuasiBialgebra, p: &[f64]) -> Vec<VertexElement> {
    let lay = qb.layout();
    let (n, dl, dm) = (lay.n(), lay.dl, lay.dm);
    let a = qb.double().ad_sp(p);
    let mut out = Vec::new();
    for i in 0..dl {
        let mut zfull = vec![0.0; lay.dd()];
        zfull[i] = 1.0;
        let az = a.apply(&zfull);
        let mut xi = vec![0.0; n];
        xi.copy_from_slice(&az[n..]);
        let mut z = vec![0.0; dl];
        z[i] = 1.0;
        out.push(VertexElement {
            p: p.to_vec(),
            z,
            xi,
        });
    }
    for j in 0..dm {
        let mut xi = vec![0.0; n];
        xi[dl + j] = 1.0;
        out.push(VertexElement {
            p: p.to_vec(),
            z: vec![0.0; dl],
            xi,
        });
    }
    out
}
