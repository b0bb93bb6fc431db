//! Small dense linear-algebra helpers on top of nalgebra.
//!
//! Singular value and Hermitian eigen decompositions go through faer: the
//! nalgebra complex SVD loses up to eight digits on matrices with clustered
//! singular values, which is exactly the unitary-like regime used here.

use faer::{c64, Mat, Side};

use crate::{CMatrix, CVector, Error, Result, C64};

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn identity(d: usize) -> CMatrix {
    CMatrix::identity(d, d)
}

/// Largest entry modulus, zero for empty matrices.
pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn max_abs_vec(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn to_faer(m: &CMatrix) -> Mat<c64> {
    Mat::from_fn(m.nrows(), m.ncols(), |i, j| {
        let z = m[(i, j)];
        c64::new(z.re, z.im)
    })
}

fn from_faer(m: faer::MatRef<'_, c64>) -> CMatrix {
    CMatrix::from_fn(m.nrows(), m.ncols(), |i, j| {
        let z = m[(i, j)];
        c(z.re, z.im)
    })
}

/// Matrix product; large products go through faer, which is several times faster
/// than nalgebra's generic complex kernel.
pub fn matmul(a: &CMatrix, b: &CMatrix) -> CMatrix {
    if a.nrows() * a.ncols() * b.ncols() < 1 << 18 {
        return a * b;
    }
    from_faer((to_faer(a) * to_faer(b)).as_ref())
}

/// Full SVD `M = U diag(s) V^dag` with `s` descending.
#[derive(Debug, Clone)]
pub struct Svd {
    pub u: CMatrix,
    pub s: Vec<f64>,
    pub v: CMatrix,
}

pub fn svd(m: &CMatrix) -> Svd {
    let (r, k) = m.shape();
    if r == 0 || k == 0 {
        return Svd {
            u: identity(r),
            s: Vec::new(),
            v: identity(k),
        };
    }
    let f = to_faer(m).svd().expect("svd of a finite matrix");
    let sd = f.S().column_vector();
    let n = r.min(k);
    let mut order: Vec<usize> = (0..n).collect();
    let raw: Vec<f64> = (0..n).map(|i| sd[i].re).collect();
    order.sort_by(|&a, &b| raw[b].total_cmp(&raw[a]));
    let (fu, fv) = (from_faer(f.U()), from_faer(f.V()));
    let mut u = fu.clone();
    let mut v = fv.clone();
    for (dst, &src) in order.iter().enumerate() {
        u.set_column(dst, &fu.column(src));
        v.set_column(dst, &fv.column(src));
    }
    Svd {
        u,
        s: order.iter().map(|&j| raw[j]).collect(),
        v,
    }
}

/// Eigenvalues (ascending) and orthonormal eigenvectors of the Hermitian part of `h`.
pub fn hermitian_eigen(h: &CMatrix) -> (Vec<f64>, CMatrix) {
    if h.is_empty() {
        return (Vec::new(), h.clone());
    }
    let herm = (h + h.adjoint()) * c(0.5, 0.0);
    let f = to_faer(&herm)
        .self_adjoint_eigen(Side::Lower)
        .expect("eigen decomposition of a finite matrix");
    let sd = f.S().column_vector();
    let vals: Vec<f64> = (0..h.nrows()).map(|i| sd[i].re).collect();
    let mut order: Vec<usize> = (0..vals.len()).collect();
    order.sort_by(|&a, &b| vals[a].total_cmp(&vals[b]));
    let fu = from_faer(f.U());
    let mut vecs = fu.clone();
    for (dst, &src) in order.iter().enumerate() {
        vecs.set_column(dst, &fu.column(src));
    }
    (order.iter().map(|&j| vals[j]).collect(), vecs)
}

/// Singular values in descending order.
pub fn singular_values(m: &CMatrix) -> Vec<f64> {
    svd(m).s
}

/// Operator norm (largest singular value).
pub fn op_norm(m: &CMatrix) -> f64 {
    singular_values(m).first().copied().unwrap_or(0.0)
}

/// Hilbert-Schmidt (Frobenius) norm.
pub fn hs_norm(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// `f(H)` for a Hermitian matrix through its eigendecomposition.
pub fn hermitian_map(h: &CMatrix, f: impl Fn(f64) -> f64) -> CMatrix {
    if h.is_empty() {
        return h.clone();
    }
    let (vals, vecs) = hermitian_eigen(h);
    let mut scaled = vecs.clone();
    for (j, &lam) in vals.iter().enumerate() {
        scaled.column_mut(j).scale_mut(f(lam));
    }
    scaled * vecs.adjoint()
}

/// Inverse of a square matrix, refusing condition numbers above `max_cond`.
pub fn checked_inverse(m: &CMatrix, max_cond: f64) -> Result<CMatrix> {
    let s = singular_values(m);
    let (Some(&hi), Some(&lo)) = (s.first(), s.last()) else {
        return Ok(m.clone());
    };
    if lo == 0.0 || hi / lo > max_cond {
        let cond = if lo == 0.0 { f64::INFINITY } else { hi / lo };
        return Err(Error::IllConditioned(cond));
    }
    m.clone()
        .try_inverse()
        .ok_or(Error::IllConditioned(f64::INFINITY))
}

/// Multiply `v` by a unit phase so that its largest-modulus entry is real and positive.
pub fn phase_fix(v: &mut CVector) {
    let mut best = 0;
    let mut best_abs = -1.0;
    for (i, z) in v.iter().enumerate() {
        // strict comparison with a small margin keeps the earliest index on near-ties
        if z.norm() > best_abs * (1.0 + 1e-12) {
            best_abs = z.norm();
            best = i;
        }
    }
    if best_abs > 0.0 {
        let ph = v[best].conj() / best_abs;
        for z in v.iter_mut() {
            *z *= ph;
        }
    }
}

/// Canonical orthonormal basis of the range of an orthogonal projector.
///
/// Standard basis vectors are projected and Gram-Schmidt orthonormalised,
/// always taking the one with the largest remaining component next; ties go
/// to the lowest index. The result depends only on the subspace.
pub fn canonical_basis(projector: &CMatrix, rank: usize) -> Vec<CVector> {
    let d = projector.nrows();
    let mut out: Vec<CVector> = Vec::with_capacity(rank);
    for _ in 0..rank {
        let mut best: Option<(f64, CVector)> = None;
        for k in 0..d {
            let mut r: CVector = projector.column(k).into_owned();
            for _ in 0..2 {
                for w in &out {
                    let ov = w.dotc(&r);
                    r -= w * ov;
                }
            }
            let nr = r.norm();
            if best
                .as_ref()
                .is_none_or(|(b, _)| nr > b * (1.0 + 1e-9) + 1e-14)
            {
                best = Some((nr, r));
            }
        }
        let (nr, mut r) = best.expect("projector has at least one column");
        r /= c(nr, 0.0);
        phase_fix(&mut r);
        out.push(r);
    }
    out
}

/// Orthonormal basis of the range of a Hermitian projector (eigenvalue one).
pub fn projector_range(projector: &CMatrix) -> Vec<CVector> {
    if projector.is_empty() {
        return Vec::new();
    }
    let (vals, vecs) = hermitian_eigen(projector);
    (0..vals.len())
        .filter(|&j| vals[j] > 0.5)
        .map(|j| vecs.column(j).into_owned())
        .collect()
}

/// Matrix whose columns are the given vectors.
pub fn columns(vectors: &[CVector], rows: usize) -> CMatrix {
    let mut m = CMatrix::zeros(rows, vectors.len());
    for (j, v) in vectors.iter().enumerate() {
        m.set_column(j, v);
    }
    m
}

/// Incremental orthonormal basis used for rank counting.
#[derive(Debug, Clone)]
pub struct RowSpace {
    dim: usize,
    basis: Vec<CVector>,
    tol: f64,
}

impl RowSpace {
    pub fn new(dim: usize, tol: f64) -> Self {
        RowSpace {
            dim,
            basis: Vec::new(),
            tol,
        }
    }

    /// Adds a vector, returning whether it enlarged the span.
    pub fn push(&mut self, v: &CVector) -> bool {
        let scale = v.norm();
        if scale == 0.0 || self.is_full() {
            return false;
        }
        let mut r = v.clone();
        for _ in 0..2 {
            for w in &self.basis {
                let ov = w.dotc(&r);
                r -= w * ov;
            }
        }
        let nr = r.norm();
        if nr > self.tol * scale {
            self.basis.push(r / c(nr, 0.0));
            true
        } else {
            false
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.dim
    }

    /// Orthogonal projector onto the span.
    pub fn projector(&self) -> CMatrix {
        let mut p = CMatrix::zeros(self.dim, self.dim);
        for w in &self.basis {
            p += w * w.adjoint();
        }
        p
    }
}
