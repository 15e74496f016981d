//! Basis bookkeeping for a reductive decomposition g = l ⊕ m and the induced
//! block layout of the double d = g ⊕ g*.
//!
//! Basis order convention: g lists the l-block first, then the m-block. The
//! double d (dimension 2n) is ordered l, m, m^⊥, l^⊥, where m^⊥ carries the
//! dual basis of the l-block and l^⊥ the dual basis of the m-block; the dual
//! basis vector e^i therefore sits at double index n + i.

use crate::error::AlgebraError;
use std::ops::Range;

#[derive(Clone, Debug, PartialEq)]
pub struct DecomposedBasis {
    pub dim_l: usize,
    pub dim_m: usize,
    pub labels: Vec<String>,
}

impl DecomposedBasis {
    pub fn new(dim_l: usize, dim_m: usize, labels: Vec<String>) -> Result<Self, AlgebraError> {
        let n = dim_l + dim_m;
        if n == 0 {
            return Err(AlgebraError::Parse("total dimension must be >= 1".into()));
        }
        if labels.len() != n {
            return Err(AlgebraError::Parse(format!(
                "expected {n} labels, got {}",
                labels.len()
            )));
        }
        Ok(DecomposedBasis {
            dim_l,
            dim_m,
            labels,
        })
    }

    pub fn n(&self) -> usize {
        self.dim_l + self.dim_m
    }

    pub fn layout(&self) -> Layout {
        Layout {
            dl: self.dim_l,
            dm: self.dim_m,
        }
    }
}

/// Index ranges of the four blocks of d = l ⊕ m ⊕ m^⊥ ⊕ l^⊥.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Layout {
    pub dl: usize,
    pub dm: usize,
}

impl Layout {
    pub fn n(&self) -> usize {
        self.dl + self.dm
    }
    pub fn dd(&self) -> usize {
        2 * self.n()
    }

    pub fn l(&self) -> Range<usize> {
        0..self.dl
    }
    pub fn m(&self) -> Range<usize> {
        self.dl..self.n()
    }
    pub fn mp(&self) -> Range<usize> {
        self.n()..self.n() + self.dl
    }
    pub fn lp(&self) -> Range<usize> {
        self.n() + self.dl..self.dd()
    }
    pub fn g(&self) -> Range<usize> {
        0..self.n()
    }
    pub fn gs(&self) -> Range<usize> {
        self.n()..self.dd()
    }

    /// Double index of the dual basis vector e^i.
    pub fn dual(&self, i: usize) -> usize {
        self.n() + i
    }
}
