#![allow(dead_code)]

use superfock::linalg::c;
use superfock::{CMatrix, CVector, OrthogonalTransform, C64};

pub fn cv(entries: &[(f64, f64)]) -> CVector {
    CVector::from_iterator(entries.len(), entries.iter().map(|&(a, b)| c(a, b)))
}

pub fn unit(d: usize, k: usize) -> CVector {
    let mut v = CVector::zeros(d);
    v[k] = c(1.0, 0.0);
    v
}

/// The 2x2 skew unit with `J_12 = 1`.
pub fn jmat() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0), c(0.0, 0.0)])
}

/// `R(cos t I, sin t J)` on two modes.
pub fn bcs(t: f64) -> OrthogonalTransform {
    OrthogonalTransform::new(
        CMatrix::identity(2, 2) * c(t.cos(), 0.0),
        jmat() * c(t.sin(), 0.0),
    )
    .expect("valid")
}

pub fn close(a: C64, b: C64, tol: f64) -> bool {
    (a - b).norm() <= tol
}

/// Relative difference scaled by the larger modulus, floored at one.
pub fn rel(a: C64, b: C64) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(1.0)
}

/// Independent implementer oracle on the identity component.
///
/// For `A` anti-Hermitian and `B` skew, `Q = sum A_ij a+_i a-_j + 1/2 sum B_ij a+_i a+_j - h.c.`
/// satisfies `[Q, a+(e_k)] = a+(A e_k) + a-(B e_k)`, so `exp Q` implements the
/// transformation whose doubled matrix is `exp [[A, -B], [-conj B, conj A]]`.
pub struct QuadraticOracle {
    pub transform: OrthogonalTransform,
    pub operator: CMatrix,
}

pub fn quadratic_oracle(a: &CMatrix, b: &CMatrix) -> QuadraticOracle {
    use superfock::{annihilate, create};
    let d = a.nrows();
    let n = 1usize << d;
    let mut q = CMatrix::zeros(n, n);
    let cr: Vec<CMatrix> = (0..d)
        .map(|k| create(&unit(d, k)).unwrap().into_matrix())
        .collect();
    let an: Vec<CMatrix> = (0..d)
        .map(|k| annihilate(&unit(d, k)).unwrap().into_matrix())
        .collect();
    for i in 0..d {
        for j in 0..d {
            q += &cr[i] * &an[j] * a[(i, j)];
            let pair = &cr[i] * &cr[j] * (b[(i, j)] * 0.5);
            q += &pair - pair.adjoint();
        }
    }
    let mut big = CMatrix::zeros(2 * d, 2 * d);
    big.view_mut((0, 0), (d, d)).copy_from(a);
    big.view_mut((0, d), (d, d)).copy_from(&(-b));
    big.view_mut((d, 0), (d, d)).copy_from(&(-b.conjugate()));
    big.view_mut((d, d), (d, d)).copy_from(&a.conjugate());
    let r = big.exp();
    let u = r.view((0, 0), (d, d)).into_owned();
    let v = r.view((0, d), (d, d)).into_owned();
    QuadraticOracle {
        transform: OrthogonalTransform::new(u, v).expect("exponential of a generator"),
        operator: q.exp(),
    }
}

/// `|a - chi b|_max` with the phase `chi` read off at the largest entry of `b`.
pub fn phase_residual(a: &CMatrix, b: &CMatrix) -> (C64, f64) {
    let (mut best, mut best_abs) = (0, -1.0);
    for (i, z) in b.iter().enumerate() {
        if z.norm() > best_abs {
            best_abs = z.norm();
            best = i;
        }
    }
    let chi = a.as_slice()[best] / b.as_slice()[best];
    let res = (a - b * chi).iter().map(|z| z.norm()).fold(0.0, f64::max);
    (chi, res)
}
