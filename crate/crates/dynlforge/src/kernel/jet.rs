//! Matrix-valued truncated Taylor series in one real variable.

use super::mat::Mat;
use super::scalar::JetS;

/// Coefficient list `[A_0 .. A_K]` of a matrix jet; arithmetic truncates at
/// order K.
#[derive(Clone, Debug)]
pub struct MatJet {
    pub coeffs: Vec<Mat<f64>>,
}

impl MatJet {
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn zeros(rows: usize, cols: usize, order: usize) -> Self {
        MatJet {
            coeffs: vec![Mat::zeros(rows, cols); order + 1],
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.order(), o.order());
        MatJet {
            coeffs: self
                .coeffs
                .iter()
                .zip(&o.coeffs)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.order(), o.order());
        let k = self.order();
        let mut out = Vec::with_capacity(k + 1);
        for d in 0..=k {
            let mut acc = Mat::zeros(self.coeffs[0].rows(), o.coeffs[0].cols());
            for a in 0..=d {
                acc = acc.add(&self.coeffs[a].matmul(&o.coeffs[d - a]));
            }
            out.push(acc);
        }
        MatJet { coeffs: out }
    }

    /// Horner evaluation at t.
    pub fn eval(&self, t: f64) -> Mat<f64> {
        let mut acc = self.coeffs[self.order()].clone();
        for k in (0..self.order()).rev() {
            acc = acc.scale(t).add(&self.coeffs[k]);
        }
        acc
    }

    /// Repackage a matrix of scalar jets as a jet of matrices.
    pub fn from_mat_of_jets(m: &Mat<JetS>, order: usize) -> Self {
        let coeffs = (0..=order)
            .map(|k| Mat::from_fn(m.rows(), m.cols(), |i, j| m.get(i, j).coeff(k)))
            .collect();
        MatJet { coeffs }
    }

    pub fn to_mat_of_jets(&self) -> Mat<JetS> {
        let k = self.order();
        Mat::from_fn(self.coeffs[0].rows(), self.coeffs[0].cols(), |i, j| JetS {
            c: (0..=k).map(|d| *self.coeffs[d].get(i, j)).collect(),
        })
    }
}
