//! Matrix exponential and the entire functions phi_k.
//!
//! `expm` is scaling-and-squaring with the fixed order-13 Padé approximant;
//! the scaling power is chosen from the 1-norm of the value part, so the same
//! deterministic schedule runs for plain, dual and jet scalars.
//!
//! phi1 and phi2 come from one exponential of an augmented block matrix,
//!
//! ```text
//!   exp [A I 0]   [e^A  phi1(A)  phi2(A)]
//!       [0 0 I] = [ 0      I        I   ]
//!       [0 0 0]   [ 0      0        I   ]
//! ```
//!
//! which stays exact when A is singular — always the case for ad_{sp}.

use super::mat::Mat;
use super::scalar::Scalar;
use super::solve::solve;
use crate::error::KernelError;

const THETA_13: f64 = 5.371920351148152;

const B13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];

fn pade13<T: Scalar>(a: &Mat<T>) -> Result<Mat<T>, KernelError> {
    let n = a.rows();
    let id = Mat::<T>::identity(n);
    let a2 = a.matmul(a);
    let a4 = a2.matmul(&a2);
    let a6 = a4.matmul(&a2);

    let w1 = a6
        .scale(B13[13])
        .add(&a4.scale(B13[11]))
        .add(&a2.scale(B13[9]));
    let w = a6
        .matmul(&w1)
        .add(&a6.scale(B13[7]))
        .add(&a4.scale(B13[5]))
        .add(&a2.scale(B13[3]))
        .add(&id.scale(B13[1]));
    let u = a.matmul(&w);

    let z1 = a6
        .scale(B13[12])
        .add(&a4.scale(B13[10]))
        .add(&a2.scale(B13[8]));
    let v = a6
        .matmul(&z1)
        .add(&a6.scale(B13[6]))
        .add(&a4.scale(B13[4]))
        .add(&a2.scale(B13[2]))
        .add(&id.scale(B13[0]));

    solve(&v.sub(&u), &v.add(&u))
}

/// exp(A) for square A over any kernel scalar.
pub fn expm<T: Scalar>(a: &Mat<T>) -> Result<Mat<T>, KernelError> {
    assert!(a.is_square(), "expm needs a square matrix");
    let n = a.rows();
    if n == 0 {
        return Ok(Mat::zeros(0, 0));
    }
    let norm = a.one_norm_approx();
    let s = if norm > THETA_13 {
        (norm / THETA_13).log2().ceil().max(0.0) as u32
    } else {
        0
    };
    let scaled = a.scale(0.5f64.powi(s as i32));
    let mut r = pade13(&scaled)?;
    for _ in 0..s {
        r = r.matmul(&r);
    }
    Ok(r)
}

/// phi_0 = e^A, phi_1 = (e^A - 1)/A, phi_2 = (e^A - 1 - A)/A^2, all by their
/// everywhere-convergent series via the augmented exponential.
pub fn phi_func<T: Scalar>(a: &Mat<T>, k: usize) -> Result<Mat<T>, KernelError> {
    assert!(a.is_square());
    assert!(k <= 2, "only phi_0..phi_2 are needed");
    if k == 0 {
        return expm(a);
    }
    let n = a.rows();
    if n == 0 {
        return Ok(Mat::zeros(0, 0));
    }
    let big = (k + 1) * n;
    let mut w = Mat::<T>::zeros(big, big);
    w.set_block(0, 0, a);
    for b in 0..k {
        w.set_block(b * n, (b + 1) * n, &Mat::identity(n));
    }
    let e = expm(&w)?;
    Ok(e.block(0, n, k * n, (k + 1) * n))
}
