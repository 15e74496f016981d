//! The dual over l of a bidynamical Lie quasi-bialgebra:
//! G* = (G_{(d, l⊕l^⊥, m^⊥⊕m)})^− on g* = l ⊕ l^⊥, together with the
//! canonical identification of the two doubles and the isomorphism
//! K = p_{l⊕l^⊥} − p_{m^⊥⊕m}.

use crate::algebra::{
    extract_from_splitting, DecomposedBasis, LagrangianSplitting, QuasiBialgebra,
};
use crate::error::EngineError;
use crate::kernel::mat::{vec_norm, Mat};

/// The dual quasi-bialgebra plus identification bookkeeping.
#[derive(Clone, Debug)]
pub struct DualData {
    pub dual: QuasiBialgebra,
    /// Basis identification from the double of G* to d: a_i ↦ (l, l^⊥)
    /// vectors, a^i ↦ their pairing partners in (m^⊥, m).
    pub iota: Mat<f64>,
    /// The involution p_{l⊕l^⊥} − p_{m^⊥⊕m} on d.
    pub kappa: Mat<f64>,
    /// Homomorphism defect of K: d → double(G*).
    pub k_iso_residual: f64,
}

impl DualData {
    /// K as a matrix d → double(G*): ι^{-1} ∘ κ.
    pub fn k_matrix(&self) -> Mat<f64> {
        self.iota.transpose().matmul(&self.kappa)
    }

    /// Transport matrix double(G*) → d used for Λ²-conjugations: κ ∘ ι.
    pub fn transport(&self) -> Mat<f64> {
        self.kappa.matmul(&self.iota)
    }
}

fn negate_cobracket(qb: &QuasiBialgebra, name: String) -> Result<QuasiBialgebra, EngineError> {
    let cob: Vec<_> = qb
        .cobracket_triples()
        .into_iter()
        .map(|(i, j, k, v)| (i, j, k, -v))
        .collect();
    let (out, _) = QuasiBialgebra::new(
        name,
        qb.g.clone(),
        &cob,
        &qb.phi_triples(),
        qb.bidynamical,
        Some(qb.tol),
    )
    .map_err(EngineError::Algebra)?;
    Ok(out)
}

/// Compute the dual over l.
pub fn dual_over_l(qb: &QuasiBialgebra) -> Result<DualData, EngineError> {
    if !qb.bidynamical {
        return Err(EngineError::Unsupported(
            "dual over l needs a bidynamical setup".into(),
        ));
    }
    let lay = qb.layout();
    let (n, dl, dm, dd) = (lay.n(), lay.dl, lay.dm, lay.dd());
    let d = qb.double();

    // a = l ⊕ l^⊥, b = m^⊥ ⊕ m (already pairing-normalized)
    let mut a = Mat::zeros(dd, n);
    let mut b = Mat::zeros(dd, n);
    for i in 0..dl {
        a.set(i, i, 1.0);
        b.set(n + i, i, 1.0);
    }
    for j in 0..dm {
        a.set(n + dl + j, dl + j, 1.0);
        b.set(dl + j, dl + j, 1.0);
    }
    let labels: Vec<String> = qb.g.basis.labels[..dl]
        .iter()
        .cloned()
        .chain(qb.g.basis.labels[dl..].iter().map(|l| format!("{l}*")))
        .collect();
    let decomp = DecomposedBasis::new(dl, dm, labels).map_err(EngineError::Algebra)?;
    let pre = extract_from_splitting(
        d,
        &LagrangianSplitting {
            a: a.clone(),
            b: b.clone(),
        },
        decomp,
        format!("{}*", qb.name),
        Some(qb.tol),
    )
    .map_err(EngineError::Algebra)?;
    let dual = negate_cobracket(&pre, format!("{}*", qb.name))?;
    if !dual.bidynamical {
        return Err(EngineError::Unsupported(
            "dual over l is not bidynamical; construction inconsistent".into(),
        ));
    }

    // identification ι: double(G*) → d by pairing partners
    let mut iota = Mat::zeros(dd, dd);
    for c in 0..n {
        for r in 0..dd {
            iota.set(r, c, *a.get(r, c));
            iota.set(r, n + c, *b.get(r, c));
        }
    }

    let mut kappa = Mat::zeros(dd, dd);
    for i in 0..dl {
        kappa.set(i, i, 1.0);
        kappa.set(n + i, n + i, -1.0);
    }
    for j in dl..n {
        kappa.set(j, j, -1.0);
        kappa.set(n + j, n + j, 1.0);
    }

    let mut data = DualData {
        dual,
        iota,
        kappa,
        k_iso_residual: f64::INFINITY,
    };
    data.k_iso_residual = k_homomorphism_residual(qb, &data);
    Ok(data)
}

/// Max over basis pairs of `‖K[X,Y]_d − [KX, KY]_{double(G*)}‖`.
pub fn k_homomorphism_residual(qb: &QuasiBialgebra, data: &DualData) -> f64 {
    let d = qb.double();
    let ds = data.dual.double();
    let k = data.k_matrix();
    let dd = d.dim();
    let mut worst = 0.0f64;
    for i in 0..dd {
        for j in i + 1..dd {
            let mut x = vec![0.0; dd];
            x[i] = 1.0;
            let mut y = vec![0.0; dd];
            y[j] = 1.0;
            let lhs = k.apply(&d.bracket(&x, &y));
            let rhs = ds.bracket(&k.apply(&x), &k.apply(&y));
            let diff: Vec<f64> = lhs.iter().zip(&rhs).map(|(a, b)| a - b).collect();
            worst = worst.max(vec_norm(&diff));
        }
    }
    worst
}

/// Tensor distances of the bidual: (‖(G*)* − G^op‖, ‖(G*)* − G‖).
///
/// In the double conventions reconstructed here the dual is exactly
/// involutive — the second residual vanishes — while the first differs by
/// the mixed-bracket signs whenever [l, m] ≠ 0.
pub fn bidual_op_residual(qb: &QuasiBialgebra) -> Result<(f64, f64), EngineError> {
    let first = dual_over_l(qb)?;
    let second = dual_over_l(&first.dual)?;
    let op = qb.opposite().map_err(EngineError::Algebra)?;
    Ok((second.dual.tensor_diff(&op), second.dual.tensor_diff(qb)))
}
