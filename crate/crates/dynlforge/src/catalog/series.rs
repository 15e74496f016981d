//! Exact rational series for the scalar special functions of the example
//! ℓ-matrices, and their defining first-order systems.
//!
//! Everything here is computed in BigRational arithmetic (coefficients may be
//! polynomials in one symbol for the shifted-coth family), so the residuals
//! of the differential systems are exact zeros, not small floats.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::HashMap;
use std::sync::Mutex;
use std::sync::OnceLock;

/// Coefficients: polynomials in one symbol `a` over the rationals. Plain
/// rationals are degree-0 polynomials.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly {
    /// coefficient of a^k at index k
    pub c: Vec<BigRational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { c: Vec::new() }
    }
    pub fn one() -> Self {
        Poly::constant(BigRational::one())
    }
    pub fn constant(x: BigRational) -> Self {
        if x.is_zero() {
            Poly::zero()
        } else {
            Poly { c: vec![x] }
        }
    }
    pub fn symbol() -> Self {
        Poly {
            c: vec![BigRational::zero(), BigRational::one()],
        }
    }
    pub fn from_i64(n: i64, d: i64) -> Self {
        Poly::constant(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }
    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }
    fn trim(mut self) -> Self {
        while matches!(self.c.last(), Some(x) if x.is_zero()) {
            self.c.pop();
        }
        self
    }
    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let c = (0..n)
            .map(|k| {
                let a = self.c.get(k).cloned().unwrap_or_else(BigRational::zero);
                let b = o.c.get(k).cloned().unwrap_or_else(BigRational::zero);
                a + b
            })
            .collect();
        Poly { c }.trim()
    }
    pub fn neg(&self) -> Self {
        Poly {
            c: self.c.iter().map(|x| -x.clone()).collect(),
        }
    }
    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![BigRational::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] += a.clone() * b.clone();
            }
        }
        Poly { c }.trim()
    }
    /// Exact inverse; only constants are invertible in `Q[a]`.
    pub fn inv(&self) -> Option<Self> {
        if self.c.len() == 1 && !self.c[0].is_zero() {
            Some(Poly::constant(BigRational::one() / self.c[0].clone()))
        } else {
            None
        }
    }
}

/// Truncated series Σ c_k z^k with polynomial coefficients, exact.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalarSeries {
    pub coeffs: Vec<Poly>,
}

impl ScalarSeries {
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn zero(order: usize) -> Self {
        ScalarSeries {
            coeffs: vec![Poly::zero(); order + 1],
        }
    }

    fn from_fn(order: usize, f: impl Fn(usize) -> Poly) -> Self {
        ScalarSeries {
            coeffs: (0..=order).map(f).collect(),
        }
    }

    pub fn coeff(&self, k: usize) -> Poly {
        self.coeffs.get(k).cloned().unwrap_or_else(Poly::zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        ScalarSeries::from_fn(n, |k| self.coeffs[k].add(&o.coeffs[k]))
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        ScalarSeries::from_fn(n, |k| self.coeffs[k].sub(&o.coeffs[k]))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        let mut out = ScalarSeries::zero(n);
        for i in 0..=n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(n - i) {
                let t = self.coeffs[i].mul(&o.coeffs[j]);
                out.coeffs[i + j] = out.coeffs[i + j].add(&t);
            }
        }
        out
    }

    pub fn scale(&self, s: &Poly) -> Self {
        ScalarSeries {
            coeffs: self.coeffs.iter().map(|c| c.mul(s)).collect(),
        }
    }

    /// Derivative d/dz.
    pub fn derivative(&self) -> Self {
        let n = self.order();
        ScalarSeries::from_fn(n.saturating_sub(1), |k| {
            self.coeff(k + 1).mul(&Poly::from_i64((k + 1) as i64, 1))
        })
    }

    /// Multiply by z^k (shifting; truncation order kept).
    pub fn shift(&self, k: usize) -> Self {
        let n = self.order();
        ScalarSeries::from_fn(n, |j| {
            if j < k {
                Poly::zero()
            } else {
                self.coeff(j - k)
            }
        })
    }

    /// Divide by z^k; the dropped coefficients must vanish.
    pub fn unshift(&self, k: usize) -> Self {
        for j in 0..k.min(self.coeffs.len()) {
            assert!(
                self.coeffs[j].is_zero(),
                "series not divisible by z^{k}: coefficient {j} nonzero"
            );
        }
        let n = self.order();
        ScalarSeries::from_fn(n - k, |j| self.coeff(j + k))
    }

    /// Reciprocal of a unit series (constant term invertible in `Q[a]`).
    pub fn recip(&self) -> Self {
        let c0 = self.coeffs[0]
            .inv()
            .expect("series reciprocal needs an invertible constant term");
        let n = self.order();
        let mut r = ScalarSeries::zero(n);
        r.coeffs[0] = c0.clone();
        for k in 1..=n {
            let mut s = Poly::zero();
            for j in 1..=k {
                s = s.add(&self.coeffs[j].mul(&r.coeffs[k - j]));
            }
            r.coeffs[k] = c0.mul(&s).neg();
        }
        r
    }

    pub fn div(&self, o: &Self) -> Self {
        self.mul(&o.recip())
    }

    /// Indices of nonzero coefficients.
    pub fn support(&self) -> Vec<usize> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, _)| k)
            .collect()
    }

    /// Every nonzero exponent is ≡ r (mod 4).
    pub fn support_is_mod4(&self, r: usize) -> bool {
        self.support().iter().all(|k| k % 4 == r)
    }

    /// Largest |coefficient| as f64 (0 for exact zero), for reporting.
    pub fn max_abs_f64(&self) -> f64 {
        let mut worst = 0.0f64;
        for p in &self.coeffs {
            for q in &p.c {
                let v = q
                    .numer()
                    .to_string()
                    .parse::<f64>()
                    .unwrap_or(f64::INFINITY)
                    / q.denom().to_string().parse::<f64>().unwrap_or(1.0);
                worst = worst.max(v.abs());
            }
        }
        worst
    }

    pub fn is_exactly_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Evaluate at a float (rational coefficients only).
    pub fn eval_f64(&self, z: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            let v = if c.is_zero() {
                0.0
            } else {
                assert!(c.c.len() == 1, "symbolic coefficient in float evaluation");
                c.c[0].numer().to_string().parse::<f64>().unwrap()
                    / c.c[0].denom().to_string().parse::<f64>().unwrap()
            };
            acc = acc * z + v;
        }
        acc
    }
}

fn factorial(n: usize) -> BigRational {
    let mut f = BigInt::one();
    for k in 2..=n {
        f *= BigInt::from(k);
    }
    BigRational::from_integer(f)
}

fn exp_like(order: usize, sign_period: impl Fn(usize) -> Option<bool>) -> ScalarSeries {
    // sign_period(k): None to drop the term, Some(negative?) otherwise
    ScalarSeries::from_fn(order, |k| match sign_period(k) {
        None => Poly::zero(),
        Some(neg) => {
            let c = BigRational::one() / factorial(k);
            Poly::constant(if neg { -c } else { c })
        }
    })
}

pub fn series_sinh(order: usize) -> ScalarSeries {
    exp_like(order, |k| if k % 2 == 1 { Some(false) } else { None })
}
pub fn series_cosh(order: usize) -> ScalarSeries {
    exp_like(order, |k| if k % 2 == 0 { Some(false) } else { None })
}
pub fn series_sin(order: usize) -> ScalarSeries {
    exp_like(order, |k| if k % 2 == 1 { Some(k % 4 == 3) } else { None })
}
pub fn series_cos(order: usize) -> ScalarSeries {
    exp_like(order, |k| if k % 2 == 0 { Some(k % 4 == 2) } else { None })
}

/// coth z − 1/z = (z cosh z − sinh z)/(z sinh z), regular at 0.
fn series_cothm(order: usize) -> ScalarSeries {
    let n = order + 2;
    let num = series_cosh(n).shift(1).sub(&series_sinh(n)); // valuation 3
    let den = series_sinh(n).shift(1); // valuation 2
    num.unshift(2).div(&den.unshift(2))
}

fn series_tanh(order: usize) -> ScalarSeries {
    series_sinh(order).div(&series_cosh(order))
}

/// Denominator of the non-compatible family: cosh·sin + cos·sinh = 2z·(unit).
fn mixed_den(n: usize) -> ScalarSeries {
    series_cosh(n)
        .mul(&series_sin(n))
        .add(&series_cos(n).mul(&series_sinh(n)))
}

/// F = (cosh cos − 1)/(cosh sin + cos sinh)
fn series_f(order: usize) -> ScalarSeries {
    let n = order + 2;
    let num = series_cosh(n)
        .mul(&series_cos(n))
        .sub(&ScalarSeries::from_fn(n, |k| {
            if k == 0 {
                Poly::one()
            } else {
                Poly::zero()
            }
        }));
    num.unshift(1).div(&mixed_den(n).unshift(1))
}

/// G = sinh sin/(cosh sin + cos sinh)
fn series_g(order: usize) -> ScalarSeries {
    let n = order + 2;
    let num = series_sinh(n).mul(&series_sin(n));
    num.unshift(1).div(&mixed_den(n).unshift(1))
}

/// H = (cos(z cosh − sinh) − sin cosh + z)/(z(cos sinh + cosh sin))
fn series_h(order: usize) -> ScalarSeries {
    let n = order + 4;
    let one_z = ScalarSeries::from_fn(n, |k| if k == 1 { Poly::one() } else { Poly::zero() });
    let num = series_cos(n)
        .mul(&series_cosh(n).shift(1).sub(&series_sinh(n)))
        .sub(&series_sin(n).mul(&series_cosh(n)))
        .add(&one_z);
    let den = mixed_den(n).shift(1);
    num.unshift(2).div(&den.unshift(2))
}

/// F* = 2 sin sinh/(cosh sin + cos sinh)
fn series_f_star(order: usize) -> ScalarSeries {
    series_g(order).scale(&Poly::from_i64(2, 1))
}

/// G* = −2 (sin cosh − cos sinh)² / (cosh(2z) cos(2z) − 1)
fn series_g_star(order: usize) -> ScalarSeries {
    let n = order + 4;
    let diff = series_sin(n)
        .mul(&series_cosh(n))
        .sub(&series_cos(n).mul(&series_sinh(n)));
    let num = diff.mul(&diff).scale(&Poly::from_i64(-2, 1)); // valuation 6
    let two_z = |s: ScalarSeries| -> ScalarSeries {
        // substitute z -> 2z
        let mut p = BigRational::one();
        let mut out = s.clone();
        for k in 0..=s.order() {
            out.coeffs[k] = s.coeffs[k].mul(&Poly::constant(p.clone()));
            p *= BigRational::from_integer(BigInt::from(2));
        }
        out
    };
    let den = two_z(series_cosh(n))
        .mul(&two_z(series_cos(n)))
        .sub(&ScalarSeries::from_fn(n, |k| {
            if k == 0 {
                Poly::one()
            } else {
                Poly::zero()
            }
        })); // valuation 4
    num.unshift(4).div(&den.unshift(4))
}

/// H* = (2z cos cosh − sin cosh − cos sinh)/(z(cos sinh + sin cosh))
fn series_h_star(order: usize) -> ScalarSeries {
    let n = order + 4;
    let num = series_cos(n)
        .mul(&series_cosh(n))
        .shift(1)
        .scale(&Poly::from_i64(2, 1))
        .sub(&series_sin(n).mul(&series_cosh(n)))
        .sub(&series_cos(n).mul(&series_sinh(n)));
    let den = series_cos(n)
        .mul(&series_sinh(n))
        .add(&series_sin(n).mul(&series_cosh(n)))
        .shift(1);
    num.unshift(2).div(&den.unshift(2))
}

/// coth(x − a) expanded at x = 0 with t = coth(−a) as the symbol:
/// (t + x(tS + 1)) / (1 + x(S + t)) where coth x = 1/x + S(x).
fn series_ev_coth(order: usize) -> ScalarSeries {
    let n = order + 1;
    let t = Poly::symbol();
    let s = series_cothm(n); // S(x) = coth x − 1/x
    let one = ScalarSeries::from_fn(n, |k| if k == 0 { Poly::one() } else { Poly::zero() });
    let num = one.scale(&t).add(&s.scale(&t).add(&one).shift(1));
    let den = one.add(&s.add(&one.scale(&t)).shift(1));
    num.div(&den)
}

/// 1/(coth x − a) = x/(1 + x(S(x) − a)), symbol a.
fn series_ev_lmatrix(order: usize) -> ScalarSeries {
    let n = order + 1;
    let a = Poly::symbol();
    let s = series_cothm(n);
    let one = ScalarSeries::from_fn(n, |k| if k == 0 { Poly::one() } else { Poly::zero() });
    let den = one.add(&s.sub(&one.scale(&a)).shift(1));
    one.shift(1).div(&den)
}

/// Named scalar series of the catalog.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum SeriesName {
    F,
    G,
    H,
    FStar,
    GStar,
    HStar,
    Cothm,
    Tanh,
    EvCoth,
    EvLmatrix,
}

impl SeriesName {
    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "F" => SeriesName::F,
            "G" => SeriesName::G,
            "H" => SeriesName::H,
            "Fstar" | "F*" => SeriesName::FStar,
            "Gstar" | "G*" => SeriesName::GStar,
            "Hstar" | "H*" => SeriesName::HStar,
            "cothm" => SeriesName::Cothm,
            "tanh" => SeriesName::Tanh,
            "ev" | "ev-lmatrix" => SeriesName::EvLmatrix,
            "ev-coth" => SeriesName::EvCoth,
            _ => return None,
        })
    }

    pub fn all() -> [SeriesName; 10] {
        [
            SeriesName::F,
            SeriesName::G,
            SeriesName::H,
            SeriesName::FStar,
            SeriesName::GStar,
            SeriesName::HStar,
            SeriesName::Cothm,
            SeriesName::Tanh,
            SeriesName::EvCoth,
            SeriesName::EvLmatrix,
        ]
    }
}

fn compute(name: SeriesName, order: usize) -> ScalarSeries {
    match name {
        SeriesName::F => series_f(order),
        SeriesName::G => series_g(order),
        SeriesName::H => series_h(order),
        SeriesName::FStar => series_f_star(order),
        SeriesName::GStar => series_g_star(order),
        SeriesName::HStar => series_h_star(order),
        SeriesName::Cothm => series_cothm(order),
        SeriesName::Tanh => series_tanh(order),
        SeriesName::EvCoth => series_ev_coth(order),
        SeriesName::EvLmatrix => series_ev_lmatrix(order),
    }
}

static CACHE: OnceLock<Mutex<HashMap<(SeriesName, usize), ScalarSeries>>> = OnceLock::new();

/// Exact series to the given order (N ≤ 64), memoized.
pub fn scalar_series(name: SeriesName, order: usize) -> ScalarSeries {
    assert!(order <= 64, "series order capped at 64");
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap();
    guard
        .entry((name, order))
        .or_insert_with(|| compute(name, order))
        .clone()
}

/// Differential systems certified exactly.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum OdeSystem {
    /// zF′ = −z(F² + G²); zG′ = z − zG(H+F) − G; zH′ = −zG² − zH² − 2H.
    Fgh,
    /// zF*′ = z(1 + G*²); zG*′ = zF* − zG*H* − G*; zH*′ = −2zG* − zH*² − 2H*.
    FghStar,
    /// f = coth(x − a): f′ + f² = 1.
    EvCoth,
    /// f = 1/(coth x − a): f′ = 1 + 2af + (a²−1)f².
    EvLmatrix,
}

/// Max |residual coefficient| through the given order; exact zero expected.
pub fn scalar_ode_residual(system: OdeSystem, order: usize) -> f64 {
    let residuals: Vec<ScalarSeries> = match system {
        OdeSystem::Fgh => {
            let f = scalar_series(SeriesName::F, order + 1);
            let g = scalar_series(SeriesName::G, order + 1);
            let h = scalar_series(SeriesName::H, order + 1);
            let zf = f.derivative().shift(1);
            let zg = g.derivative().shift(1);
            let zh = h.derivative().shift(1);
            let z =
                ScalarSeries::from_fn(
                    order + 1,
                    |k| {
                        if k == 1 {
                            Poly::one()
                        } else {
                            Poly::zero()
                        }
                    },
                );
            vec![
                zf.add(&f.mul(&f).add(&g.mul(&g)).shift(1)),
                zg.sub(&z).add(&g.mul(&h.add(&f)).shift(1)).add(&g),
                zh.add(&g.mul(&g).shift(1))
                    .add(&h.mul(&h).shift(1))
                    .add(&h.scale(&Poly::from_i64(2, 1))),
            ]
        }
        OdeSystem::FghStar => {
            let f = scalar_series(SeriesName::FStar, order + 1);
            let g = scalar_series(SeriesName::GStar, order + 1);
            let h = scalar_series(SeriesName::HStar, order + 1);
            let zf = f.derivative().shift(1);
            let zg = g.derivative().shift(1);
            let zh = h.derivative().shift(1);
            let z =
                ScalarSeries::from_fn(
                    order + 1,
                    |k| {
                        if k == 1 {
                            Poly::one()
                        } else {
                            Poly::zero()
                        }
                    },
                );
            vec![
                zf.sub(&z.add(&g.mul(&g).shift(1))),
                zg.sub(&f.shift(1)).add(&g.mul(&h).shift(1)).add(&g),
                zh.add(&g.scale(&Poly::from_i64(2, 1)).shift(1))
                    .add(&h.mul(&h).shift(1))
                    .add(&h.scale(&Poly::from_i64(2, 1))),
            ]
        }
        OdeSystem::EvCoth => {
            let f = scalar_series(SeriesName::EvCoth, order + 1);
            let one =
                ScalarSeries::from_fn(order, |k| if k == 0 { Poly::one() } else { Poly::zero() });
            vec![f.derivative().add(&f.mul(&f)).sub(&one)]
        }
        OdeSystem::EvLmatrix => {
            let f = scalar_series(SeriesName::EvLmatrix, order + 1);
            let a = Poly::symbol();
            let a2m1 = a.mul(&a).sub(&Poly::one());
            let one =
                ScalarSeries::from_fn(order, |k| if k == 0 { Poly::one() } else { Poly::zero() });
            // f′ − 1 − 2af − (a²−1)f²
            vec![f
                .derivative()
                .sub(&one)
                .sub(&f.scale(&a.mul(&Poly::from_i64(2, 1))))
                .sub(&f.mul(&f).scale(&a2m1))]
        }
    };
    residuals
        .iter()
        .map(|r| {
            let t = ScalarSeries {
                coeffs: r.coeffs[..=order.min(r.order())].to_vec(),
            };
            t.max_abs_f64()
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(p: &Poly) -> BigRational {
        if p.is_zero() {
            BigRational::zero()
        } else {
            assert_eq!(p.c.len(), 1);
            p.c[0].clone()
        }
    }

    #[test]
    fn cothm_leading_terms() {
        // z/3 − z³/45 + 2z⁵/945 − ...
        let s = scalar_series(SeriesName::Cothm, 6);
        assert_eq!(rat(&s.coeff(1)), BigRational::new(1.into(), 3.into()));
        assert_eq!(rat(&s.coeff(3)), BigRational::new((-1).into(), 45.into()));
        assert_eq!(rat(&s.coeff(5)), BigRational::new(2.into(), 945.into()));
        assert!(s.coeff(0).is_zero() && s.coeff(2).is_zero() && s.coeff(4).is_zero());
    }

    #[test]
    fn support_patterns_mod4() {
        let n = 24;
        assert!(scalar_series(SeriesName::F, n).support_is_mod4(3));
        assert!(scalar_series(SeriesName::G, n).support_is_mod4(1));
        assert!(scalar_series(SeriesName::H, n).support_is_mod4(3));
        assert!(scalar_series(SeriesName::FStar, n).support_is_mod4(1));
        assert!(scalar_series(SeriesName::GStar, n).support_is_mod4(2));
        assert!(scalar_series(SeriesName::HStar, n).support_is_mod4(3));
    }

    #[test]
    fn ode_systems_are_exact() {
        for sys in [
            OdeSystem::Fgh,
            OdeSystem::FghStar,
            OdeSystem::EvCoth,
            OdeSystem::EvLmatrix,
        ] {
            let r = scalar_ode_residual(sys, 24);
            assert_eq!(r, 0.0, "{sys:?} residual nonzero");
        }
    }

    #[test]
    fn ev_lmatrix_ode_symbolic_to_order_16() {
        assert_eq!(scalar_ode_residual(OdeSystem::EvLmatrix, 16), 0.0);
    }

    #[test]
    fn tanh_matches_float() {
        // radius of convergence is π/2; order 24 reaches 1e-12 inside |z| ≤ 0.4
        let s = scalar_series(SeriesName::Tanh, 24);
        for z in [0.1f64, 0.25, 0.4] {
            assert!((s.eval_f64(z) - z.tanh()).abs() < 1e-12);
        }
    }
}
