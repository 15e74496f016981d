//! The double as a bidynamical quasi-bialgebra:
//! G^(2) = (d, `[,]_d`, ∂rmx, j^(3)φ) with rmx = ½(p_{g*} − p_g) and reductive
//! decomposition d = l ⊕ (m ⊕ g*).

use crate::algebra::{DecomposedBasis, LieAlgebraData, QuasiBialgebra};
use crate::error::EngineError;
use crate::kernel::mat::Mat;
use crate::kernel::scalar::Scalar;
use crate::lmatrix::{lcan_eval, LEvaluator};

/// rmx as a skew map d* → d (the pairing identification Λ²d ≅ skew maps
/// composed on the right with Ω): ½ [[0, −I], [I, 0]] in (g, g*) blocks.
pub fn rmx_hat(n: usize) -> Mat<f64> {
    let mut r = Mat::zeros(2 * n, 2 * n);
    for i in 0..n {
        r.set(i, n + i, -0.5);
        r.set(n + i, i, 0.5);
    }
    r
}

/// The projection difference p_l − p_{m^⊥} as a skew map d* → d under the
/// same identification.
pub fn pl_minus_pmp_hat(dl: usize, n: usize) -> Mat<f64> {
    let mut m = Mat::zeros(2 * n, 2 * n);
    for i in 0..dl {
        m.set(i, n + i, 1.0);
        m.set(n + i, i, -1.0);
    }
    m
}

/// The projection difference p_{l^⊥} − p_m as a skew map d* → d; the mirror
/// of `pl_minus_pmp_hat` under the involution exchanging the two lagrangian
/// complements.
pub fn plp_minus_pm_hat(dl: usize, n: usize) -> Mat<f64> {
    let mut m = Mat::zeros(2 * n, 2 * n);
    for j in dl..n {
        m.set(n + j, j, 1.0);
        m.set(j, n + j, -1.0);
    }
    m
}

/// Build G^(2) as plain quasi-bialgebra data on the 2n-dimensional double,
/// with cobracket the coboundary ∂_X rmx = ad_X rmx + rmx ad*_X and trivector
/// the image of φ under the inclusion of g.
pub fn double_bidyn(qb: &QuasiBialgebra) -> Result<QuasiBialgebra, EngineError> {
    if !qb.bidynamical {
        return Err(EngineError::Unsupported(
            "the double construction needs a bidynamical setup".into(),
        ));
    }
    let lay = qb.layout();
    let (n, dl, dd) = (lay.n(), lay.dl, lay.dd());
    let d = qb.double();

    let labels = d.lie.basis.labels.clone();
    let basis = DecomposedBasis::new(dl, dd - dl, labels).map_err(EngineError::Algebra)?;
    let g2 =
        LieAlgebraData::from_triples(basis, d.lie.triples_lower()).map_err(EngineError::Algebra)?;

    let r = rmx_hat(n);
    let mut cob = Vec::new();
    for x in 0..dd {
        let adx = d.lie.ad_basis(x);
        let w = adx.matmul(&r).add(&r.matmul(&adx.transpose()));
        for i in 0..dd {
            for j in i + 1..dd {
                let v = *w.get(i, j);
                if v != 0.0 {
                    cob.push((x, i, j, v));
                }
            }
        }
    }

    let mut phi2 = Vec::new();
    for (a, b, c, v) in qb.phi_triples() {
        phi2.push((a, b, c, v));
    }

    let (out, _) = QuasiBialgebra::new(
        format!("{}^(2)", qb.name),
        g2,
        &cob,
        &phi2,
        true,
        Some(qb.tol),
    )
    .map_err(EngineError::Algebra)?;
    Ok(out)
}

/// The embedded ℓ-matrix j ∘ lcan(G) ∘ j*: an evaluator on the double.
pub struct EmbeddedLcan<'g> {
    pub qb: &'g QuasiBialgebra,
}

impl LEvaluator for EmbeddedLcan<'_> {
    fn eval<T: Scalar>(&self, p: &[T]) -> Result<Mat<T>, crate::error::KernelError> {
        let n = self.qb.n();
        let l = crate::lmatrix::lcan::lcan_generic(self.qb, p)?;
        let mut out = Mat::zeros(2 * n, 2 * n);
        out.set_block(0, 0, &l);
        Ok(out)
    }
}

/// ‖j lcan(G) j* − lcan(G^(2))‖ at p (functoriality of the inclusion j).
pub fn functoriality_residual(
    qb: &QuasiBialgebra,
    g2: &QuasiBialgebra,
    p: &[f64],
) -> Result<f64, EngineError> {
    let emb = EmbeddedLcan { qb };
    let direct = emb.eval::<f64>(p).map_err(EngineError::Kernel)?;
    let via_double = lcan_eval(g2, p).map_err(EngineError::Kernel)?;
    Ok(direct.sub(&via_double.l).max_abs())
}
