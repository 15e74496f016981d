//! Lie algebras as structure-constant data over a decomposed basis.

use super::basis::DecomposedBasis;
use crate::error::AlgebraError;
use crate::kernel::mat::Mat;
use crate::kernel::scalar::Scalar;

/// Structure constants `c[i][j][k]` meaning `[e_i, e_j] = Σ_k c[i][j][k] e_k`.
///
/// Internally both a dense tensor (for residual scans) and the lower triples
/// i < j (for contraction and export) are kept; the two stay in sync because
/// the type is immutable after construction.
#[derive(Clone, Debug)]
pub struct LieAlgebraData {
    pub basis: DecomposedBasis,
    dense: Vec<f64>,
    triples: Vec<(usize, usize, usize, f64)>,
}

impl LieAlgebraData {
    /// Build from raw (i, j, k, v) triples; both orientations may appear and
    /// must then agree antisymmetrically.
    pub fn from_triples(
        basis: DecomposedBasis,
        raw: &[(usize, usize, usize, f64)],
    ) -> Result<Self, AlgebraError> {
        let n = basis.n();
        let mut dense = vec![f64::NAN; n * n * n];
        let idx = |i: usize, j: usize, k: usize| (i * n + j) * n + k;
        for &(i, j, k, v) in raw {
            if i >= n || j >= n || k >= n {
                return Err(AlgebraError::Parse(format!(
                    "bracket index ({i},{j},{k}) out of range for dimension {n}"
                )));
            }
            if i == j && v != 0.0 {
                return Err(AlgebraError::Structure {
                    residual: "bracket antisymmetry".into(),
                    value: v,
                    tol: 0.0,
                });
            }
            for (a, b, w) in [(i, j, v), (j, i, -v)] {
                let slot = &mut dense[idx(a, b, k)];
                if slot.is_nan() {
                    *slot = w;
                } else if *slot != w {
                    return Err(AlgebraError::Structure {
                        residual: "bracket antisymmetry".into(),
                        value: *slot - w,
                        tol: 0.0,
                    });
                }
            }
        }
        for v in dense.iter_mut() {
            if v.is_nan() {
                *v = 0.0;
            }
        }
        let mut triples = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in 0..n {
                    let v = dense[idx(i, j, k)];
                    if v != 0.0 {
                        triples.push((i, j, k, v));
                    }
                }
            }
        }
        Ok(LieAlgebraData {
            basis,
            dense,
            triples,
        })
    }

    pub fn n(&self) -> usize {
        self.basis.n()
    }

    #[inline]
    pub fn c(&self, i: usize, j: usize, k: usize) -> f64 {
        let n = self.n();
        self.dense[(i * n + j) * n + k]
    }

    pub fn triples_lower(&self) -> &[(usize, usize, usize, f64)] {
        &self.triples
    }

    pub fn max_structure_constant(&self) -> f64 {
        self.dense.iter().fold(0.0f64, |a, v| a.max(v.abs()))
    }

    /// ad_x as a matrix: `(ad_x)[r][k]` = coefficient of e_r in `[x, e_k]`.
    pub fn ad(&self, x: &[f64]) -> Mat<f64> {
        let n = self.n();
        let mut m = Mat::zeros(n, n);
        for &(i, j, k, v) in &self.triples {
            // [e_i, e_j] = v e_k and [e_j, e_i] = -v e_k
            m.add_at(k, j, v * x[i]);
            m.add_at(k, i, -v * x[j]);
        }
        m
    }

    /// ad_x over any kernel scalar.
    pub fn ad_generic<T: Scalar>(&self, x: &[T]) -> Mat<T> {
        let n = self.n();
        let mut m = Mat::zeros(n, n);
        for &(i, j, k, v) in &self.triples {
            m.add_at(k, j, x[i].clone().scale(v));
            m.add_at(k, i, x[j].clone().scale(-v));
        }
        m
    }

    /// ad matrix of the basis vector e_i.
    pub fn ad_basis(&self, i: usize) -> Mat<f64> {
        let mut x = vec![0.0; self.n()];
        x[i] = 1.0;
        self.ad(&x)
    }

    /// `[x, y]` over any kernel scalar.
    pub fn bracket<T: Scalar>(&self, x: &[T], y: &[T]) -> Vec<T> {
        let mut out = vec![T::zero(); self.n()];
        for &(i, j, k, v) in &self.triples {
            let term = x[i].clone() * y[j].clone() - x[j].clone() * y[i].clone();
            out[k] = out[k].clone() + term.scale(v);
        }
        out
    }

    /// Max Jacobi residual over basis triples.
    pub fn jacobi_residual(&self) -> f64 {
        let n = self.n();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    for r in 0..n {
                        let mut s = 0.0;
                        for q in 0..n {
                            s += self.c(i, j, q) * self.c(q, k, r)
                                + self.c(j, k, q) * self.c(q, i, r)
                                + self.c(k, i, q) * self.c(q, j, r);
                        }
                        worst = worst.max(s.abs());
                    }
                }
            }
        }
        worst
    }

    /// Max violation of "l closed under bracket".
    pub fn l_closure_residual(&self) -> f64 {
        let dl = self.basis.dim_l;
        let mut worst = 0.0f64;
        for i in 0..dl {
            for j in 0..dl {
                for k in dl..self.n() {
                    worst = worst.max(self.c(i, j, k).abs());
                }
            }
        }
        worst
    }

    /// Max violation of [l, m] ⊆ m.
    pub fn reductivity_residual(&self) -> f64 {
        let dl = self.basis.dim_l;
        let mut worst = 0.0f64;
        for i in 0..dl {
            for j in dl..self.n() {
                for k in 0..dl {
                    worst = worst.max(self.c(i, j, k).abs());
                }
            }
        }
        worst
    }
}
