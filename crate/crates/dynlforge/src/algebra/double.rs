//! The canonical double d = g ⊕ g* of a Lie quasi-bialgebra, lagrangian
//! splittings, extraction of a quasi-bialgebra from a Manin quasi-triple,
//! and twisting by a change of isotropic complement.

use super::basis::{DecomposedBasis, Layout};
use super::lie::LieAlgebraData;
use super::quasi::{QuasiBialgebra, Tolerances};
use crate::error::AlgebraError;
use crate::kernel::mat::Mat;
use crate::kernel::scalar::Scalar;
use crate::kernel::solve::solve;

/// Quadratic Lie algebra on g ⊕ g* with the canonical pairing
/// (x+ξ, y+η) = ⟨ξ,y⟩ + ⟨η,x⟩.
#[derive(Clone, Debug)]
pub struct DoubleAlgebra {
    pub lie: LieAlgebraData,
    /// Pairing matrix Ω (block [[0, I], [I, 0]]).
    pub pairing: Mat<f64>,
    /// Block layout of the underlying quasi-bialgebra.
    pub layout: Layout,
    /// Name of the source setup.
    pub source: String,
}

impl DoubleAlgebra {
    pub(crate) fn placeholder() -> Self {
        DoubleAlgebra {
            lie: LieAlgebraData::from_triples(
                DecomposedBasis::new(1, 0, vec!["_".into()]).unwrap(),
                &[],
            )
            .unwrap(),
            pairing: Mat::zeros(1, 1),
            layout: Layout { dl: 1, dm: 0 },
            source: String::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.lie.n()
    }

    /// (X, Y)_d over any scalar.
    pub fn pair<T: Scalar>(&self, x: &[T], y: &[T]) -> T {
        let n = self.layout.n();
        let mut s = T::zero();
        for i in 0..n {
            s = s + x[i].clone() * y[n + i].clone() + x[n + i].clone() * y[i].clone();
        }
        s
    }

    pub fn bracket<T: Scalar>(&self, x: &[T], y: &[T]) -> Vec<T> {
        self.lie.bracket(x, y)
    }

    /// ad matrix of sp for p ∈ l* (sp ∈ m^⊥), over any scalar.
    pub fn ad_sp<T: Scalar>(&self, p: &[T]) -> Mat<T> {
        let lay = self.layout;
        assert_eq!(p.len(), lay.dl);
        let mut out = Mat::zeros(lay.dd(), lay.dd());
        for (i, pi) in p.iter().enumerate() {
            out = out.add(&self.lie.ad_basis(lay.dual(i)).lift::<T>().scale_t(pi));
        }
        out
    }

    /// Max over basis triples of |(\[X,Y\],Z) + (Y,\[X,Z\])|.
    pub fn invariance_residual(&self) -> f64 {
        let d = self.dim();
        let mut worst = 0.0f64;
        let basis: Vec<Vec<f64>> = (0..d)
            .map(|i| {
                let mut v = vec![0.0; d];
                v[i] = 1.0;
                v
            })
            .collect();
        for x in 0..d {
            let adx = self.lie.ad_basis(x);
            for y in 0..d {
                let xy = adx.apply(&basis[y]);
                for z in 0..d {
                    let xz = adx.apply(&basis[z]);
                    let r = self.pair(&xy, &basis[z]) + self.pair(&basis[y], &xz);
                    worst = worst.max(r.abs());
                }
            }
        }
        worst
    }

    /// Closure residual of the lagrangian subalgebra g*_0 = l ⊕ l^⊥
    /// (zero for bidynamical sources).
    pub fn gstar0_closure_residual(&self) -> f64 {
        let lay = self.layout;
        let in_gstar0 = |i: usize| lay.l().contains(&i) || lay.lp().contains(&i);
        let d = self.dim();
        let mut worst = 0.0f64;
        for i in 0..d {
            if !in_gstar0(i) {
                continue;
            }
            for j in 0..d {
                if !in_gstar0(j) {
                    continue;
                }
                for k in 0..d {
                    if in_gstar0(k) {
                        continue;
                    }
                    worst = worst.max(self.lie.c(i, j, k).abs());
                }
            }
        }
        worst
    }
}

/// Bracket on d from the quasi-bialgebra tensors:
/// `[x,y] = [x,y]_g`, `[x,ξ] = ϖ_x ξ − ad*_x ξ`,
/// `[ξ,η] = ⟨ξ⊗η⊗1, φ⟩ − ⟨ξ, ϖ_• η⟩`.
pub fn build_double(qb: &QuasiBialgebra) -> DoubleAlgebra {
    let n = qb.n();
    let lay = qb.layout();
    let mut triples: Vec<(usize, usize, usize, f64)> = Vec::new();

    // g x g
    for &(i, j, k, v) in qb.g.triples_lower() {
        triples.push((i, j, k, v));
    }

    // g x g*: [e_i, e^j] = W_i e^j − ad*_{e_i} e^j
    for i in 0..n {
        let wi = qb.w_basis(i);
        for j in 0..n {
            for r in 0..n {
                let v = *wi.get(r, j);
                if v != 0.0 {
                    triples.push((i, lay.dual(j), r, v));
                }
            }
            // (ad*_{e_i} e^j)_k = c[i][k][j]
            for k in 0..n {
                let v = qb.g.c(i, k, j);
                if v != 0.0 {
                    triples.push((i, lay.dual(j), lay.dual(k), -v));
                }
            }
        }
    }

    // g* x g*: [e^i, e^j] = ⟨e^i ⊗ e^j ⊗ 1, φ⟩ − (x ↦ −⟨e^i, ϖ_x e^j⟩)
    for i in 0..n {
        for j in i + 1..n {
            for c in 0..n {
                let v = qb.phi(i, j, c);
                if v != 0.0 {
                    triples.push((lay.dual(i), lay.dual(j), c, v));
                }
            }
            for k in 0..n {
                let v = -*qb.w_basis(k).get(i, j);
                if v != 0.0 {
                    triples.push((lay.dual(i), lay.dual(j), lay.dual(k), v));
                }
            }
        }
    }

    let labels: Vec<String> =
        qb.g.basis
            .labels
            .iter()
            .cloned()
            .chain(qb.g.basis.labels.iter().map(|l| format!("{l}*")))
            .collect();
    // decomposition of d over l used by the engine: l first, everything else after
    let dbasis = DecomposedBasis::new(lay.dl, lay.dd() - lay.dl, labels).unwrap();
    let lie = LieAlgebraData::from_triples(dbasis, &triples)
        .expect("double tensor is antisymmetric by construction");

    let dd = lay.dd();
    let mut pairing = Mat::zeros(dd, dd);
    for i in 0..n {
        pairing.set(i, n + i, 1.0);
        pairing.set(n + i, i, 1.0);
    }

    DoubleAlgebra {
        lie,
        pairing,
        layout: lay,
        source: qb.name.clone(),
    }
}

/// Two complementary subspaces of a quadratic Lie algebra given as spanning
/// matrices (columns); `a` must be a subalgebra and both must be isotropic.
#[derive(Clone, Debug)]
pub struct LagrangianSplitting {
    pub a: Mat<f64>,
    pub b: Mat<f64>,
}

impl LagrangianSplitting {
    /// The standard (g, g*) splitting of a double.
    pub fn canonical(d: &DoubleAlgebra) -> Self {
        let n = d.layout.n();
        let dd = d.dim();
        LagrangianSplitting {
            a: Mat::from_fn(dd, n, |i, j| if i == j { 1.0 } else { 0.0 }),
            b: Mat::from_fn(dd, n, |i, j| if i == n + j { 1.0 } else { 0.0 }),
        }
    }
}

/// Read a quasi-bialgebra off a Manin quasi-triple: identify b ≅ a* via the
/// pairing, then the bracket on a, the cobracket from the b-component of
/// `[b,b]`, and φ from the a-component of `[b,b]`.
pub fn extract_from_splitting(
    d: &DoubleAlgebra,
    split: &LagrangianSplitting,
    decomp: DecomposedBasis,
    name: String,
    tol: Option<Tolerances>,
) -> Result<QuasiBialgebra, AlgebraError> {
    let dd = d.dim();
    let n = decomp.n();
    if split.a.rows() != dd || split.b.rows() != dd || split.a.cols() != n || split.b.cols() != n {
        return Err(AlgebraError::Split(format!(
            "spanning matrices must be {dd}x{n}"
        )));
    }
    let tol = tol.unwrap_or_else(|| Tolerances::for_scale(d.lie.max_structure_constant()));

    // isotropy
    let mut iso_a = 0.0f64;
    let mut iso_b = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            iso_a = iso_a.max(d.pair(&split.a.column(i), &split.a.column(j)).abs());
            iso_b = iso_b.max(d.pair(&split.b.column(i), &split.b.column(j)).abs());
        }
    }
    if iso_a > tol.structure {
        return Err(AlgebraError::Split(format!(
            "a not isotropic ({iso_a:.3e})"
        )));
    }
    if iso_b > tol.structure {
        return Err(AlgebraError::Split(format!(
            "b not isotropic ({iso_b:.3e})"
        )));
    }

    // normalize b so that (a_i, b^j) = δ_ij
    let p = Mat::from_fn(n, n, |i, j| d.pair(&split.a.column(i), &split.b.column(j)));
    let bt = match solve(&p.transpose(), &split.b.transpose()) {
        Ok(x) => x.transpose(),
        Err(_) => {
            return Err(AlgebraError::Split(
                "pairing between a and b is degenerate".into(),
            ))
        }
    };

    // change-of-basis solves against [a | b~]
    let mut m = Mat::zeros(dd, dd);
    m.set_block(0, 0, &split.a);
    m.set_block(0, n, &bt);
    let coords = |v: &[f64]| -> Result<Vec<f64>, AlgebraError> {
        let x = solve(&m, &Mat::col_vec(v))
            .map_err(|_| AlgebraError::Split("a + b does not span".into()))?;
        Ok(x.column(0))
    };

    // bracket on a (b-component measures closure)
    let mut brackets = Vec::new();
    let mut closure = 0.0f64;
    for i in 0..n {
        for j in i + 1..n {
            let v = d.bracket(&split.a.column(i), &split.a.column(j));
            let co = coords(&v)?;
            for k in 0..n {
                closure = closure.max(co[n + k].abs());
                if co[k].abs() > 0.0 {
                    brackets.push((i, j, k, co[k]));
                }
            }
        }
    }
    if closure > tol.structure {
        return Err(AlgebraError::Split(format!(
            "a is not a subalgebra (residual {closure:.3e})"
        )));
    }

    // [b^i, b^j]: a-part -> φ, b-part -> cobracket (W_k)_{ij} = -β^{ij}_k
    let mut cob = Vec::new();
    let mut phi_raw = vec![0.0; n * n * n];
    for i in 0..n {
        for j in i + 1..n {
            let v = d.bracket(&bt.column(i), &bt.column(j));
            let co = coords(&v)?;
            for c in 0..n {
                phi_raw[(i * n + j) * n + c] = co[c];
            }
            for k in 0..n {
                let w = -co[n + k];
                if w != 0.0 {
                    cob.push((k, i, j, w));
                }
            }
        }
    }
    // antisymmetrize φ over each index orbit (solves introduce rounding noise)
    let mut phi_t = Vec::new();
    let mut phi_skewness = 0.0f64;
    let raw = |i: usize, j: usize, c: usize| phi_raw[(i * n + j) * n + c];
    for a in 0..n {
        // diagonal-index entries must vanish
        for j in a + 1..n {
            phi_skewness = phi_skewness.max(raw(a, j, a).abs()).max(raw(a, j, j).abs());
        }
        for b in a + 1..n {
            for c in b + 1..n {
                let v = (raw(a, b, c) - raw(a, c, b) + raw(b, c, a)) / 3.0;
                phi_skewness = phi_skewness
                    .max((raw(a, b, c) - v).abs())
                    .max((raw(a, c, b) + v).abs())
                    .max((raw(b, c, a) - v).abs());
                if v != 0.0 {
                    phi_t.push((a, b, c, v));
                }
            }
        }
    }
    if phi_skewness > tol.structure {
        return Err(AlgebraError::Split(format!(
            "extracted trivector not antisymmetric (residual {phi_skewness:.3e})"
        )));
    }

    let ga = LieAlgebraData::from_triples(decomp, &brackets)?;
    let (qb, _) = QuasiBialgebra::new(name, ga, &cob, &phi_t, false, Some(tol))?;
    Ok(qb)
}

/// Twist by a skew map t: g* -> g: replace the complement g* of the double by
/// the isotropic complement {tξ + ξ} and re-extract. The double of the result
/// is isomorphic to the double of the input by construction.
pub fn twist(qb: &QuasiBialgebra, t: &Mat<f64>) -> Result<QuasiBialgebra, AlgebraError> {
    let n = qb.n();
    assert_eq!((t.rows(), t.cols()), (n, n));
    let skew = t.add(&t.transpose()).max_abs();
    if skew > qb.tol.structure {
        return Err(AlgebraError::Split(format!(
            "twist map not skew ({skew:.3e})"
        )));
    }
    let d = qb.double();
    let mut b = Mat::zeros(d.dim(), n);
    for j in 0..n {
        for r in 0..n {
            b.set(r, j, *t.get(r, j));
        }
        b.set(n + j, j, 1.0);
    }
    let split = LagrangianSplitting {
        a: LagrangianSplitting::canonical(d).a,
        b,
    };
    extract_from_splitting(
        d,
        &split,
        qb.g.basis.clone(),
        format!("{}^t", qb.name),
        Some(qb.tol),
    )
}
