//! Lie quasi-bialgebras G = (g, `[,]`, ϖ, φ) over a reductive decomposition.

use super::basis::Layout;
use super::double::{build_double, DoubleAlgebra};
use super::lie::LieAlgebraData;
use crate::error::AlgebraError;
use crate::kernel::mat::Mat;
use crate::kernel::scalar::Scalar;

/// Structural tolerances attached to a setup.
#[derive(Clone, Copy, Debug)]
pub struct Tolerances {
    /// Absolute bound for structure residuals; by default scales with the
    /// largest structure constant.
    pub structure: f64,
    /// Condition threshold bounding the computational domain of analyticity.
    pub cond_max: f64,
}

impl Tolerances {
    pub fn for_scale(max_c: f64) -> Self {
        Tolerances {
            structure: 1e-10 * max_c.max(1.0),
            cond_max: crate::kernel::solve::COND_MAX_DEFAULT,
        }
    }
}

/// One named residual with its verdict.
#[derive(Clone, Debug, serde::Serialize, serde::Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub value: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// Residuals gathered while validating a setup.
#[derive(Clone, Debug, Default, serde::Serialize, serde::Deserialize)]
pub struct ValidationReport {
    pub checks: Vec<CheckRecord>,
}

impl ValidationReport {
    pub fn push(&mut self, name: &str, value: f64, tolerance: f64) {
        self.checks.push(CheckRecord {
            name: name.into(),
            value,
            tolerance,
            pass: value.abs() <= tolerance,
        });
    }
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// A validated Lie quasi-bialgebra with its canonical double.
#[derive(Clone, Debug)]
pub struct QuasiBialgebra {
    pub name: String,
    pub g: LieAlgebraData,
    /// ϖ_{e_i} as a skew matrix W_i: g* -> g.
    w: Vec<Mat<f64>>,
    /// Totally antisymmetric trivector, dense φ[a][b][c].
    phi: Vec<f64>,
    pub bidynamical: bool,
    pub tol: Tolerances,
    double: DoubleAlgebra,
}

fn fill_skew_matrices(
    n: usize,
    raw: &[(usize, usize, usize, f64)],
) -> Result<Vec<Mat<f64>>, AlgebraError> {
    let mut w = vec![vec![f64::NAN; n * n]; n];
    for &(i, j, k, v) in raw {
        if i >= n || j >= n || k >= n {
            return Err(AlgebraError::Parse(format!(
                "cobracket index ({i},{j},{k}) out of range"
            )));
        }
        if j == k && v != 0.0 {
            return Err(AlgebraError::Structure {
                residual: "cobracket skewness".into(),
                value: v,
                tol: 0.0,
            });
        }
        for (a, b, val) in [(j, k, v), (k, j, -v)] {
            let slot = &mut w[i][a * n + b];
            if slot.is_nan() {
                *slot = val;
            } else if *slot != val {
                return Err(AlgebraError::Structure {
                    residual: "cobracket skewness".into(),
                    value: *slot - val,
                    tol: 0.0,
                });
            }
        }
    }
    Ok(w.into_iter()
        .map(|flat| {
            Mat::from_fn(n, n, |a, b| {
                let v = flat[a * n + b];
                if v.is_nan() {
                    0.0
                } else {
                    v
                }
            })
        })
        .collect())
}

fn fill_trivector(n: usize, raw: &[(usize, usize, usize, f64)]) -> Result<Vec<f64>, AlgebraError> {
    let mut phi = vec![f64::NAN; n * n * n];
    let idx = |a: usize, b: usize, c: usize| (a * n + b) * n + c;
    for &(a, b, c, v) in raw {
        if a >= n || b >= n || c >= n {
            return Err(AlgebraError::Parse(format!(
                "phi index ({a},{b},{c}) out of range"
            )));
        }
        if (a == b || b == c || a == c) && v != 0.0 {
            return Err(AlgebraError::Structure {
                residual: "phi antisymmetry".into(),
                value: v,
                tol: 0.0,
            });
        }
        let orbit = [
            (a, b, c, v),
            (b, c, a, v),
            (c, a, b, v),
            (b, a, c, -v),
            (a, c, b, -v),
            (c, b, a, -v),
        ];
        for (x, y, z, val) in orbit {
            let slot = &mut phi[idx(x, y, z)];
            if slot.is_nan() {
                *slot = val;
            } else if *slot != val {
                return Err(AlgebraError::Structure {
                    residual: "phi antisymmetry".into(),
                    value: *slot - val,
                    tol: 0.0,
                });
            }
        }
    }
    Ok(phi
        .into_iter()
        .map(|v| if v.is_nan() { 0.0 } else { v })
        .collect())
}

impl QuasiBialgebra {
    /// Validate and assemble a quasi-bialgebra from raw tensors. Checks the
    /// g-level structure first, then certifies the axioms by building the
    /// double; the validation report lists every residual.
    pub fn new(
        name: String,
        g: LieAlgebraData,
        cobracket: &[(usize, usize, usize, f64)],
        phi_triples: &[(usize, usize, usize, f64)],
        want_bidynamical: bool,
        tol: Option<Tolerances>,
    ) -> Result<(Self, ValidationReport), AlgebraError> {
        let n = g.n();
        let tol = tol.unwrap_or_else(|| Tolerances::for_scale(g.max_structure_constant()));
        let mut report = ValidationReport::default();

        report.push("g.jacobi", g.jacobi_residual(), tol.structure);
        report.push("g.l_closure", g.l_closure_residual(), tol.structure);
        report.push("g.reductivity", g.reductivity_residual(), tol.structure);
        for c in &report.checks {
            if !c.pass {
                return Err(AlgebraError::Structure {
                    residual: c.name.clone(),
                    value: c.value,
                    tol: c.tolerance,
                });
            }
        }

        let w = fill_skew_matrices(n, cobracket)?;
        let phi = fill_trivector(n, phi_triples)?;

        let mut qb = QuasiBialgebra {
            name,
            g,
            w,
            phi,
            bidynamical: false,
            tol,
            double: DoubleAlgebra::placeholder(),
        };
        qb.double = build_double(&qb);

        let jd = qb.double.lie.jacobi_residual();
        report.push("double.jacobi", jd, tol.structure);
        if jd > tol.structure {
            return Err(AlgebraError::Axiom {
                residual: "double.jacobi".into(),
                value: jd,
                tol: tol.structure,
            });
        }
        let inv = qb.double.invariance_residual();
        report.push("double.pairing_invariance", inv, tol.structure);
        if inv > tol.structure {
            return Err(AlgebraError::Axiom {
                residual: "double.pairing_invariance".into(),
                value: inv,
                tol: tol.structure,
            });
        }

        let (wl, phim) = qb.bidynamical_residuals();
        let is_bidyn = wl <= tol.structure && phim <= tol.structure;
        if want_bidynamical {
            report.push("bidynamical.cobracket_on_l", wl, tol.structure);
            report.push("bidynamical.phi_mod_l", phim, tol.structure);
            if !is_bidyn {
                return Err(AlgebraError::NotBidynamical(format!(
                    "cobracket-on-l residual {wl:.3e}, phi-mod-l residual {phim:.3e}"
                )));
            }
        }
        qb.bidynamical = is_bidyn;
        Ok((qb, report))
    }

    pub fn placeholder_clone_with(&self, name: String) -> Self {
        let mut c = self.clone();
        c.name = name;
        c
    }

    pub fn n(&self) -> usize {
        self.g.n()
    }
    pub fn layout(&self) -> Layout {
        self.g.basis.layout()
    }
    pub fn double(&self) -> &DoubleAlgebra {
        &self.double
    }

    pub fn w_basis(&self, i: usize) -> &Mat<f64> {
        &self.w[i]
    }

    /// ϖ_x as a matrix over any scalar.
    pub fn w_of<T: Scalar>(&self, x: &[T]) -> Mat<T> {
        let n = self.n();
        let mut out = Mat::zeros(n, n);
        for (i, wi) in self.w.iter().enumerate() {
            if wi.max_abs() == 0.0 {
                continue;
            }
            out = out.add(&wi.lift::<T>().scale_t(&x[i]));
        }
        out
    }

    #[inline]
    pub fn phi(&self, a: usize, b: usize, c: usize) -> f64 {
        let n = self.n();
        self.phi[(a * n + b) * n + c]
    }

    /// ⟨ξ ⊗ η ⊗ 1, φ⟩ ∈ g.
    pub fn phi_contract2<T: Scalar>(&self, xi: &[T], eta: &[T]) -> Vec<T> {
        let n = self.n();
        let mut out = vec![T::zero(); n];
        for a in 0..n {
            for b in 0..n {
                let v = xi[a].clone() * eta[b].clone();
                for c in 0..n {
                    let p = self.phi(a, b, c);
                    if p != 0.0 {
                        out[c] = out[c].clone() + v.clone().scale(p);
                    }
                }
            }
        }
        out
    }

    /// ⟨ξ ⊗ η ⊗ ζ, φ⟩.
    pub fn phi_contract3(&self, xi: &[f64], eta: &[f64], zeta: &[f64]) -> f64 {
        self.phi_contract2(xi, eta)
            .iter()
            .zip(zeta)
            .map(|(g, z)| g * z)
            .sum()
    }

    /// (‖ϖ_z‖ for z in the l-block, image of φ in Λ³(g/l)) residuals.
    pub fn bidynamical_residuals(&self) -> (f64, f64) {
        let dl = self.layout().dl;
        let n = self.n();
        let wl = (0..dl).map(|i| self.w[i].max_abs()).fold(0.0, f64::max);
        let mut phim = 0.0f64;
        for a in dl..n {
            for b in dl..n {
                for c in dl..n {
                    phim = phim.max(self.phi(a, b, c).abs());
                }
            }
        }
        (wl, phim)
    }

    /// Raw tensor entries for export: cobracket triples (j < k) and phi
    /// triples (a < b < c).
    pub fn cobracket_triples(&self) -> Vec<(usize, usize, usize, f64)> {
        let n = self.n();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in j + 1..n {
                    let v = *self.w[i].get(j, k);
                    if v != 0.0 {
                        out.push((i, j, k, v));
                    }
                }
            }
        }
        out
    }

    pub fn phi_triples(&self) -> Vec<(usize, usize, usize, f64)> {
        let n = self.n();
        let mut out = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    let v = self.phi(a, b, c);
                    if v != 0.0 {
                        out.push((a, b, c, v));
                    }
                }
            }
        }
        out
    }

    /// Largest entry-wise difference across the (c, ϖ, φ) tensors.
    pub fn tensor_diff(&self, other: &QuasiBialgebra) -> f64 {
        assert_eq!(self.n(), other.n());
        let n = self.n();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    worst = worst.max((self.g.c(i, j, k) - other.g.c(i, j, k)).abs());
                    worst = worst.max((self.phi(i, j, k) - other.phi(i, j, k)).abs());
                    worst = worst.max((self.w[i].get(j, k) - other.w[i].get(j, k)).abs());
                }
            }
        }
        worst
    }

    /// The opposite quasi-bialgebra G^op for the standard involution of the
    /// reductive decomposition (identity on l, minus identity on m).
    pub fn opposite(&self) -> Result<QuasiBialgebra, AlgebraError> {
        assert!(self.bidynamical, "opposite needs a bidynamical setup");
        let n = self.n();
        let dl = self.layout().dl;
        let sgn = |i: usize| if i < dl { 1.0 } else { -1.0 };

        // bracket: sign flips exactly on mixed l/m pairs
        let mut brackets = Vec::new();
        for &(i, j, k, v) in self.g.triples_lower() {
            let s = if (i < dl) != (j < dl) { -1.0 } else { 1.0 };
            brackets.push((i, j, k, s * v));
        }
        let g_op = LieAlgebraData::from_triples(self.g.basis.clone(), &brackets)?;

        // ϖ^op_x = op ϖ_{op(x)} op*
        let mut cob = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in j + 1..n {
                    let v = sgn(i) * sgn(j) * sgn(k) * self.w[i].get(j, k);
                    if v != 0.0 {
                        cob.push((i, j, k, v));
                    }
                }
            }
        }

        // φ^op = op ⊗ op ⊗ op φ
        let mut phi_t = Vec::new();
        for (a, b, c, v) in self.phi_triples() {
            phi_t.push((a, b, c, sgn(a) * sgn(b) * sgn(c) * v));
        }

        let (qb, _) = QuasiBialgebra::new(
            format!("{}^op", self.name),
            g_op,
            &cob,
            &phi_t,
            true,
            Some(self.tol),
        )?;
        Ok(qb)
    }
}
