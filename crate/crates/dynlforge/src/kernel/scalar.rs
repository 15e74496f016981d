//! Scalar tower for the numeric kernel.
//!
//! Every evaluation pipeline in this crate is written once, generically over
//! [`Scalar`], and instantiated three ways:
//!
//! * `f64` for plain evaluation,
//! * [`Dual`] for exact directional derivatives (nestable, so second
//!   derivatives come from `Dual<Dual<f64>>`),
//! * [`JetS`] for truncated Taylor expansions along a ray.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

/// Ring-with-approximation scalar used by the matrix kernel.
///
/// `approx` returns the underlying value part (recursively for nested
/// scalars); it drives pivot selection and norm-based scaling, never the
/// arithmetic itself.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_f64(x: f64) -> Self;
    fn zero() -> Self;
    fn one() -> Self;
    /// Multiplicative inverse. Requires an invertible value part.
    fn recip(&self) -> Self;
    /// Value part as `f64`.
    fn approx(&self) -> f64;

    fn is_zero(&self) -> bool {
        *self == Self::zero()
    }
    fn scale(&self, s: f64) -> Self {
        self.clone() * Self::from_f64(s)
    }
}

impl Scalar for f64 {
    fn from_f64(x: f64) -> Self {
        x
    }
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn recip(&self) -> Self {
        1.0 / *self
    }
    fn approx(&self) -> f64 {
        *self
    }
}

/// First-order dual number over any scalar: value + derivative part.
///
/// Arithmetic satisfies the Leibniz rule exactly, so running an analytic
/// pipeline on `Dual` inputs yields the exact directional derivative of the
/// pipeline (to rounding).
#[derive(Clone, Debug, PartialEq)]
pub struct Dual<T> {
    pub val: T,
    pub der: T,
}

impl<T: Scalar> Dual<T> {
    pub fn new(val: T, der: T) -> Self {
        Dual { val, der }
    }
    /// A constant (zero derivative part).
    pub fn constant(val: T) -> Self {
        Dual {
            val,
            der: T::zero(),
        }
    }
    /// The seed `val + eps * der` with `der = 1`.
    pub fn variable(val: T) -> Self {
        Dual { val, der: T::one() }
    }
}

impl<T: Scalar> Add for Dual<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Dual {
            val: self.val + o.val,
            der: self.der + o.der,
        }
    }
}

impl<T: Scalar> Sub for Dual<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Dual {
            val: self.val - o.val,
            der: self.der - o.der,
        }
    }
}

impl<T: Scalar> Mul for Dual<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Dual {
            val: self.val.clone() * o.val.clone(),
            der: self.val * o.der + self.der * o.val,
        }
    }
}

impl<T: Scalar> Neg for Dual<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Dual {
            val: -self.val,
            der: -self.der,
        }
    }
}

impl<T: Scalar> Scalar for Dual<T> {
    fn from_f64(x: f64) -> Self {
        Dual::constant(T::from_f64(x))
    }
    fn zero() -> Self {
        Dual::constant(T::zero())
    }
    fn one() -> Self {
        Dual::constant(T::one())
    }
    fn recip(&self) -> Self {
        // (v + eps d)^-1 = v^-1 - eps v^-2 d
        let iv = self.val.recip();
        Dual {
            val: iv.clone(),
            der: -(iv.clone() * iv * self.der.clone()),
        }
    }
    fn approx(&self) -> f64 {
        self.val.approx()
    }
}

/// Scalar truncated Taylor series in one variable.
///
/// A constant is a length-1 jet; binary operations pad the shorter operand
/// with zeros, so constants broadcast to the working order. All variable
/// inputs of one computation must share the same order.
#[derive(Clone, Debug)]
pub struct JetS {
    pub c: Vec<f64>,
}

impl JetS {
    pub fn constant(x: f64) -> Self {
        JetS { c: vec![x] }
    }
    /// The seed `c0 + c1 t`, padded with zeros to hold `order + 1` coefficients.
    pub fn variable(c0: f64, c1: f64, order: usize) -> Self {
        let mut c = vec![0.0; order + 1];
        c[0] = c0;
        if order >= 1 {
            c[1] = c1;
        }
        JetS { c }
    }
    pub fn order(&self) -> usize {
        self.c.len() - 1
    }
    pub fn coeff(&self, k: usize) -> f64 {
        self.c.get(k).copied().unwrap_or(0.0)
    }
}

impl PartialEq for JetS {
    fn eq(&self, o: &Self) -> bool {
        let n = self.c.len().max(o.c.len());
        (0..n).all(|k| self.coeff(k) == o.coeff(k))
    }
}

impl Add for JetS {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let n = self.c.len().max(o.c.len());
        JetS {
            c: (0..n).map(|k| self.coeff(k) + o.coeff(k)).collect(),
        }
    }
}

impl Sub for JetS {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        let n = self.c.len().max(o.c.len());
        JetS {
            c: (0..n).map(|k| self.coeff(k) - o.coeff(k)).collect(),
        }
    }
}

impl Mul for JetS {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        // Cauchy product truncated at the broadcast order.
        let n = self.c.len().max(o.c.len());
        let mut c = vec![0.0; n];
        for (i, a) in self.c.iter().enumerate() {
            if *a == 0.0 {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if i + j >= n {
                    break;
                }
                c[i + j] += a * b;
            }
        }
        JetS { c }
    }
}

impl Neg for JetS {
    type Output = Self;
    fn neg(self) -> Self {
        JetS {
            c: self.c.iter().map(|x| -x).collect(),
        }
    }
}

impl Scalar for JetS {
    fn from_f64(x: f64) -> Self {
        JetS::constant(x)
    }
    fn zero() -> Self {
        JetS::constant(0.0)
    }
    fn one() -> Self {
        JetS::constant(1.0)
    }
    fn recip(&self) -> Self {
        // power-series reciprocal; needs c0 != 0
        let n = self.c.len();
        let mut r = vec![0.0; n];
        let i0 = 1.0 / self.c[0];
        r[0] = i0;
        for k in 1..n {
            let mut s = 0.0;
            for j in 1..=k {
                s += self.coeff(j) * r[k - j];
            }
            r[k] = -i0 * s;
        }
        JetS { c: r }
    }
    fn approx(&self) -> f64 {
        self.c[0]
    }
}
