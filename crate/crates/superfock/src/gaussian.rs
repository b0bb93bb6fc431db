//! Skew-symmetric matrices, Pfaffians and the Gaussian vectors `exp Omega(X)`.
//!
//! `Omega(X)` is the degree-two vector fixed by `<Omega(X)||f ^ g> = <f||X g>`
//! for the symmetric bilinear form of [`FockVector::bilinear`]. With the sign
//! that the involution puts on degree two this comes out as
//! `Omega(X) = sum_(i<j) X_ji e_i ^ e_j`, and the amplitude of `exp Omega(X)` on
//! an even subset `A` is the Pfaffian of the principal block of `X^T` on `A`.

use crate::fock::FockVector;
use crate::linalg::{c, max_abs, phase_fix};
use crate::subset::parity_sign;
use crate::{CMatrix, CVector, Error, Result, C64};

/// Largest matrix dimension accepted by the subset-memoised Pfaffian.
pub const MAX_PFAFFIAN_DIM: usize = 20;

/// A complex matrix with `X^T = -X`.
#[derive(Debug, Clone, PartialEq)]
pub struct SkewMatrix(CMatrix);

impl SkewMatrix {
    /// Accepts `m` when `|m + m^T|_max <= 1e-10 (1 + |m|_max)` and stores `(m - m^T)/2`.
    pub fn new(m: CMatrix) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::dim(format!(
                "{}x{} matrix is not square",
                m.nrows(),
                m.ncols()
            )));
        }
        let residual = max_abs(&(&m + m.transpose()));
        if residual > 1e-10 * (1.0 + max_abs(&m)) {
            return Err(Error::NotSkew { residual });
        }
        Ok(SkewMatrix((&m - m.transpose()) * c(0.5, 0.0)))
    }

    pub fn zero(d: usize) -> Self {
        SkewMatrix(CMatrix::zeros(d, d))
    }

    /// `z (E_ij - E_ji)`.
    pub fn elementary(d: usize, i: usize, j: usize, z: C64) -> Self {
        let mut m = CMatrix::zeros(d, d);
        m[(i, j)] += z;
        m[(j, i)] -= z;
        SkewMatrix(m)
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> CMatrix {
        self.0
    }

    pub fn scale(&self, z: C64) -> Self {
        SkewMatrix(&self.0 * z)
    }
}

/// Pfaffians of every principal submatrix, indexed by the subset bitmask.
///
/// Each entry comes from expansion along the lowest index of the subset,
/// reusing the already computed smaller subsets. Odd subsets get zero.
pub fn principal_pfaffians(m: &CMatrix) -> Result<Vec<C64>> {
    let n = m.nrows();
    if n > MAX_PFAFFIAN_DIM {
        return Err(Error::TooLarge {
            what: "Pfaffian dimension",
            got: n,
            max: MAX_PFAFFIAN_DIM,
        });
    }
    let size = 1usize << n;
    let mut pf = vec![c(0.0, 0.0); size];
    pf[0] = c(1.0, 0.0);
    for s in 1..size {
        if s.count_ones() % 2 == 1 {
            continue;
        }
        let i = s.trailing_zeros() as usize;
        let rest = s & !(1 << i);
        let mut acc = c(0.0, 0.0);
        let mut pos = 0u32;
        let mut r = rest;
        while r != 0 {
            let j = r.trailing_zeros() as usize;
            r &= r - 1;
            let sub = pf[rest & !(1 << j)];
            if sub != c(0.0, 0.0) {
                acc += m[(i, j)] * sub * parity_sign(pos);
            }
            pos += 1;
        }
        pf[s] = acc;
    }
    Ok(pf)
}

/// Pfaffian of a skew matrix; zero in odd dimension.
pub fn pfaffian(x: &SkewMatrix) -> Result<C64> {
    let n = x.dim();
    if n % 2 == 1 {
        return Ok(c(0.0, 0.0));
    }
    if n == 0 {
        return Ok(c(1.0, 0.0));
    }
    let pf = principal_pfaffians(x.matrix())?;
    Ok(pf[(1 << n) - 1])
}

/// The degree-two vector `Omega(X)`.
pub fn omega(x: &SkewMatrix) -> Result<FockVector> {
    let d = x.dim();
    let mut v = FockVector::zero(d);
    for i in 0..d {
        for j in (i + 1)..d {
            v.set_amplitude((1 << i) | (1 << j), x.matrix()[(j, i)]);
        }
    }
    Ok(v)
}

/// `exp Omega(X)`: vacuum amplitude one, Pfaffians of `X^T` on even subsets.
pub fn exp_omega(x: &SkewMatrix) -> Result<FockVector> {
    let d = x.dim();
    let pf = principal_pfaffians(&x.matrix().transpose())?;
    FockVector::from_amplitudes(d, pf)
}

/// `det(I + X^dagger Y)`, the square of `(exp Omega(X)|exp Omega(Y))`.
pub fn overlap_det(x: &SkewMatrix, y: &SkewMatrix) -> Result<C64> {
    if x.dim() != y.dim() {
        return Err(Error::dim("skew matrices of different size"));
    }
    let d = x.dim();
    Ok((CMatrix::identity(d, d) + x.matrix().adjoint() * y.matrix()).determinant())
}

/// `|exp Omega(X)| = det(I + X^dagger X)^(1/4)`.
pub fn gaussian_norm(x: &SkewMatrix) -> f64 {
    let d = x.dim();
    let h = CMatrix::identity(d, d) + x.matrix().adjoint() * x.matrix();
    // log-det through eigenvalues stays accurate for large entries
    let logdet: f64 = crate::linalg::hermitian_eigen(&h)
        .0
        .iter()
        .map(|l| l.ln())
        .sum();
    (0.25 * logdet).exp()
}

/// One block `z (e_plus e_minus^T - e_minus e_plus^T)` of the canonical form.
#[derive(Debug, Clone)]
pub struct SkewPair {
    pub z: f64,
    pub e_plus: CVector,
    pub e_minus: CVector,
}

/// `X = sum_m z_m (e_m e_(-m)^T - e_(-m) e_m^T)` with `z_m > 0` descending.
///
/// The pair vectors together with `kernel` form an orthonormal basis;
/// `kernel` spans the kernel of `X^dagger`, and its conjugate spans that of `X`.
#[derive(Debug, Clone)]
pub struct SkewCanonical {
    pub pairs: Vec<SkewPair>,
    pub kernel: Vec<CVector>,
}

impl SkewCanonical {
    pub fn reconstruct(&self, d: usize) -> CMatrix {
        let mut m = CMatrix::zeros(d, d);
        for p in &self.pairs {
            let t = &p.e_plus * p.e_minus.transpose();
            m += (&t - t.transpose()) * c(p.z, 0.0);
        }
        m
    }

    /// All basis vectors, pairs first as `e_1, e_-1, e_2, e_-2, ..`.
    pub fn basis(&self) -> Vec<CVector> {
        let mut out = Vec::new();
        for p in &self.pairs {
            out.push(p.e_plus.clone());
            out.push(p.e_minus.clone());
        }
        out.extend(self.kernel.iter().cloned());
        out
    }
}

/// Canonical form through the eigenstructure of `X^dagger X`, read off an SVD of `X`.
///
/// Inside a (numerically) degenerate eigenspace vectors are picked by
/// Gram-Schmidt and paired through `u -> conj(X u)/z`, which maps the
/// eigenspace to itself and squares to `-1`.
pub fn skew_canonical(x: &SkewMatrix) -> SkewCanonical {
    let d = x.dim();
    let xm = x.matrix();
    if d == 0 {
        return SkewCanonical {
            pairs: vec![],
            kernel: vec![],
        };
    }
    // right singular vectors of X are eigenvectors of X^dagger X, and the
    // singular values stay accurate near zero
    let svd = crate::linalg::svd(xm);
    let vecs = svd.v;
    let zs = svd.s;
    let zmax = zs[0];
    let zero_tol = 1e-10 * zmax.max(1.0);
    let cluster_tol = 1e-8 * zmax.max(1.0);

    let mut pairs = Vec::new();
    let mut kernel = Vec::new();
    let mut start = 0;
    while start < d {
        let mut end = start + 1;
        while end < d && zs[end - 1] - zs[end] <= cluster_tol {
            end += 1;
        }
        if zs[start] <= zero_tol {
            // everything from here on is kernel; conjugates span ker X^dagger
            for j in start..d {
                let v = vecs.column(j).into_owned();
                let mut w = v.map(|z| z.conj());
                phase_fix(&mut w);
                kernel.push(w);
            }
            break;
        }
        let block: Vec<CVector> = (start..end).map(|j| vecs.column(j).into_owned()).collect();
        let mut used: Vec<CVector> = Vec::new();
        while used.len() < block.len() {
            let mut best: Option<(f64, CVector)> = None;
            for v in &block {
                let mut r = v.clone();
                for _ in 0..2 {
                    for w in &used {
                        let ov = w.dotc(&r);
                        r -= w * ov;
                    }
                }
                let nr = r.norm();
                if best.as_ref().is_none_or(|(b, _)| nr > *b) {
                    best = Some((nr, r));
                }
            }
            let (nr, r) = best.expect("nonempty block");
            if nr < 0.5 {
                break;
            }
            let u = r / c(nr, 0.0);
            let xu = xm * &u;
            let z = xu.norm();
            let e_plus = &xu / c(z, 0.0);
            let e_minus = u.map(|w| w.conj());
            used.push(u);
            used.push(e_plus.map(|w| w.conj()));
            pairs.push(SkewPair { z, e_plus, e_minus });
        }
        start = end;
    }
    SkewCanonical { pairs, kernel }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::FockVector;

    fn skew_from(vals: &[(usize, usize, C64)], d: usize) -> SkewMatrix {
        let mut m = CMatrix::zeros(d, d);
        for &(i, j, z) in vals {
            m[(i, j)] = z;
            m[(j, i)] = -z;
        }
        SkewMatrix::new(m).unwrap()
    }

    #[test]
    fn pfaffian_small_cases() {
        let x = skew_from(&[(0, 1, c(2.0, 1.0))], 2);
        assert_eq!(pfaffian(&x).unwrap(), c(2.0, 1.0));
        // Pf = a b - a' b' + a'' b'' for 4x4
        let x = skew_from(
            &[
                (0, 1, c(1.0, 0.0)),
                (0, 2, c(2.0, 0.0)),
                (0, 3, c(3.0, 0.0)),
                (1, 2, c(4.0, 0.0)),
                (1, 3, c(5.0, 0.0)),
                (2, 3, c(6.0, 0.0)),
            ],
            4,
        );
        assert_eq!(
            pfaffian(&x).unwrap(),
            c(1.0 * 6.0 - 2.0 * 5.0 + 3.0 * 4.0, 0.0)
        );
        assert_eq!(pfaffian(&SkewMatrix::zero(3)).unwrap(), c(0.0, 0.0));
    }

    #[test]
    fn non_skew_rejected() {
        let m =
            CMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]);
        assert!(matches!(SkewMatrix::new(m), Err(Error::NotSkew { .. })));
    }

    #[test]
    fn omega_defining_identity() {
        let x = skew_from(
            &[
                (0, 1, c(0.5, -1.0)),
                (0, 2, c(2.0, 0.0)),
                (1, 2, c(0.0, 3.0)),
            ],
            3,
        );
        let om = omega(&x).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let ei = FockVector::basis(3, 1 << i);
                let ej = FockVector::basis(3, 1 << j);
                let lhs = om.bilinear(&ei.wedge(&ej).unwrap()).unwrap();
                let rhs = x.matrix()[(i, j)];
                assert!((lhs - rhs).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn exp_omega_d2() {
        let z = c(0.7, 0.2);
        let x = skew_from(&[(0, 1, z)], 2);
        let v = exp_omega(&x).unwrap();
        assert_eq!(v.amplitude(0), c(1.0, 0.0));
        assert_eq!(v.amplitude(0b11), -z);
        assert_eq!(v.amplitude(0b01), c(0.0, 0.0));
    }

    #[test]
    fn canonical_form_of_degenerate_block() {
        let d = 4;
        let x = skew_from(&[(0, 1, c(0.0, 2.0)), (2, 3, c(2.0, 0.0))], d);
        let cf = skew_canonical(&x);
        assert_eq!(cf.pairs.len(), 2);
        assert!(max_abs(&(cf.reconstruct(d) - x.matrix())) < 1e-12);
        for p in &cf.pairs {
            assert!((p.z - 2.0).abs() < 1e-12);
        }
    }

    #[test]
    fn canonical_form_odd_dimension_has_kernel() {
        let x = skew_from(&[(0, 1, c(1.0, 0.0)), (1, 2, c(0.0, 1.0))], 3);
        let cf = skew_canonical(&x);
        assert_eq!(cf.pairs.len(), 1);
        assert_eq!(cf.kernel.len(), 1);
        let k = &cf.kernel[0];
        assert!((x.matrix().adjoint() * k).norm() < 1e-12);
    }
}
