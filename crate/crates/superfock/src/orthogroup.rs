//! Orthogonal transformations `R(U, V)` of the real Hilbert space underlying `H = C^d`.
//!
//! `R(U, V) f = U f + V f*` preserves `Re (f|g)` exactly when
//!
//! ```text
//! U U^dag + V V^dag = I = U^dag U + V^T conj(V)
//! U V^T + V U^T = 0 = U^dag V + V^T conj(U)
//! ```
//!
//! Rank decisions on `U` use its singular values relative to the largest one:
//! below [`RANK_ZERO`] counts as zero, at least [`RANK_NONZERO`] as nonzero,
//! and anything in between is reported as ambiguous rather than guessed.

use crate::gaussian::SkewMatrix;
use crate::grassmann::Parity;
use crate::linalg::{c, canonical_basis, hermitian_map, hs_norm, identity, max_abs, op_norm};
use crate::module::SuperVector;
use crate::{CMatrix, CVector, Error, Result};

/// Relative singular value below which `U` is treated as vanishing.
pub const RANK_ZERO: f64 = 1e-10;
/// Relative singular value from which `U` is treated as nonvanishing.
pub const RANK_NONZERO: f64 = 1e-8;
/// Default tolerance on the orthogonality residuals.
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct OrthogonalTransform {
    u: CMatrix,
    v: CMatrix,
}

/// Max-norm residuals of the four defining relations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrthResiduals {
    /// `|U U^dag + V V^dag - I|`
    pub unit_left: f64,
    /// `|U^dag U + V^T conj(V) - I|`
    pub unit_right: f64,
    /// `|U V^T + V U^T|`
    pub skew_left: f64,
    /// `|U^dag V + V^T conj(U)|`
    pub skew_right: f64,
}

impl OrthResiduals {
    pub fn max(&self) -> f64 {
        self.unit_left
            .max(self.unit_right)
            .max(self.skew_left)
            .max(self.skew_right)
    }
}

impl OrthogonalTransform {
    /// Validates with [`DEFAULT_TOL`].
    pub fn new(u: CMatrix, v: CMatrix) -> Result<Self> {
        Self::with_tolerance(u, v, DEFAULT_TOL)
    }

    pub fn with_tolerance(u: CMatrix, v: CMatrix, tol: f64) -> Result<Self> {
        let r = Self::new_unchecked(u, v)?;
        let residual = r.residuals().max();
        if residual > tol {
            return Err(Error::NotOrthogonal { residual });
        }
        Ok(r)
    }

    /// Only checks shapes.
    pub fn new_unchecked(u: CMatrix, v: CMatrix) -> Result<Self> {
        let d = u.nrows();
        if u.ncols() != d || v.nrows() != d || v.ncols() != d {
            return Err(Error::dim(format!(
                "U is {}x{} and V is {}x{}",
                u.nrows(),
                u.ncols(),
                v.nrows(),
                v.ncols()
            )));
        }
        Ok(OrthogonalTransform { u, v })
    }

    pub fn identity(d: usize) -> Self {
        OrthogonalTransform {
            u: identity(d),
            v: CMatrix::zeros(d, d),
        }
    }

    /// The complex-linear transformation `R(S, 0)`; `S` must be unitary.
    pub fn unitary(s: CMatrix) -> Result<Self> {
        let d = s.nrows();
        Self::new(s, CMatrix::zeros(d, d))
    }

    pub fn dim(&self) -> usize {
        self.u.nrows()
    }

    pub fn u(&self) -> &CMatrix {
        &self.u
    }

    pub fn v(&self) -> &CMatrix {
        &self.v
    }

    pub fn residuals(&self) -> OrthResiduals {
        let (u, v) = (&self.u, &self.v);
        let i = identity(self.dim());
        OrthResiduals {
            unit_left: max_abs(&(u * u.adjoint() + v * v.adjoint() - &i)),
            unit_right: max_abs(&(u.adjoint() * u + v.transpose() * v.conjugate() - &i)),
            skew_left: max_abs(&(u * v.transpose() + v * u.transpose())),
            skew_right: max_abs(&(u.adjoint() * v + v.transpose() * u.conjugate())),
        }
    }

    /// `self . other`, i.e. `other` acts first.
    pub fn compose(&self, other: &OrthogonalTransform) -> Result<OrthogonalTransform> {
        if self.dim() != other.dim() {
            return Err(Error::dim("transforms act on different dimensions"));
        }
        Ok(OrthogonalTransform {
            u: &self.u * &other.u + &self.v * other.v.conjugate(),
            v: &self.u * &other.v + &self.v * other.u.conjugate(),
        })
    }

    /// `R(U, V)^(-1) = R(U^dag, V^T)`.
    pub fn inverse(&self) -> OrthogonalTransform {
        OrthogonalTransform {
            u: self.u.adjoint(),
            v: self.v.transpose(),
        }
    }

    /// `|U|_op + |V|_HS`.
    pub fn norm(&self) -> f64 {
        op_norm(&self.u) + hs_norm(&self.v)
    }

    /// `U f + V f*`.
    pub fn apply(&self, f: &CVector) -> CVector {
        &self.u * f + &self.v * f.map(|z| z.conj())
    }

    /// Action on supervectors: `R (mu (x) f) = mu (x) U f + mu* (x) V f*`.
    pub fn apply_supervector(&self, xi: &SuperVector) -> SuperVector {
        &xi.map(&self.u) + &xi.conj().map(&self.v)
    }

    /// Connected component: the parity of `dim ker U`.
    pub fn component(&self) -> Result<Parity> {
        Ok(Parity::of_degree(kernel_decomposition(self)?.n))
    }

    /// Block-diagonal sum acting on the first `a.dim()` and the last `b.dim()` modes.
    pub fn direct_sum(a: &OrthogonalTransform, b: &OrthogonalTransform) -> OrthogonalTransform {
        let (n, m) = (a.dim(), b.dim());
        let mut u = CMatrix::zeros(n + m, n + m);
        let mut v = CMatrix::zeros(n + m, n + m);
        u.view_mut((0, 0), (n, n)).copy_from(&a.u);
        u.view_mut((n, n), (m, m)).copy_from(&b.u);
        v.view_mut((0, 0), (n, n)).copy_from(&a.v);
        v.view_mut((n, n), (m, m)).copy_from(&b.v);
        OrthogonalTransform { u, v }
    }
}

/// Kernels of `U` and `U^dag` with the associated projectors.
///
/// `F_0 = ker U`, `H_0 = ker U^dag`, `F_1`, `H_1` their complements; `P_i`
/// project onto `H_i` and `Q_i` onto `F_i`. The bases are canonical: they
/// depend only on the subspaces (see [`canonical_basis`]).
#[derive(Debug, Clone)]
pub struct KernelDecomposition {
    pub n: usize,
    pub h0: Vec<CVector>,
    pub f0: Vec<CVector>,
    pub p0: CMatrix,
    pub p1: CMatrix,
    pub q0: CMatrix,
    pub q1: CMatrix,
    /// Singular values of `U`, descending.
    pub singular_values: Vec<f64>,
}

pub fn kernel_decomposition(r: &OrthogonalTransform) -> Result<KernelDecomposition> {
    let d = r.dim();
    if d == 0 {
        let e = CMatrix::zeros(0, 0);
        return Ok(KernelDecomposition {
            n: 0,
            h0: vec![],
            f0: vec![],
            p0: e.clone(),
            p1: e.clone(),
            q0: e.clone(),
            q1: e,
            singular_values: vec![],
        });
    }
    let svd = crate::linalg::svd(&r.u);
    let (left, right) = (&svd.u, &svd.v);
    let sv = svd.s.clone();
    let rank = numerical_rank(&sv)?;
    let mut p0 = CMatrix::zeros(d, d);
    let mut q0 = CMatrix::zeros(d, d);
    for j in rank..d {
        let h = left.column(j);
        let f = right.column(j);
        p0 += h * h.adjoint();
        q0 += f * f.adjoint();
    }
    let n = d - rank;
    let i = identity(d);
    Ok(KernelDecomposition {
        n,
        h0: canonical_basis(&p0, n),
        f0: canonical_basis(&q0, n),
        p1: &i - &p0,
        q1: &i - &q0,
        p0,
        q0,
        singular_values: sv,
    })
}

/// Number of singular values counted as nonzero, or an error in the gray zone.
pub fn numerical_rank(sorted_desc: &[f64]) -> Result<usize> {
    let Some(&smax) = sorted_desc.first() else {
        return Ok(0);
    };
    if smax == 0.0 {
        return Ok(0);
    }
    let mut rank = 0;
    for &s in sorted_desc {
        let rel = s / smax;
        if rel >= RANK_NONZERO {
            rank += 1;
        } else if rel >= RANK_ZERO {
            return Err(Error::AmbiguousRank {
                sigma: s,
                scale: smax,
            });
        }
    }
    Ok(rank)
}

/// Moore-Penrose inverse, dropping singular values below `RANK_ZERO * s_max`.
pub fn gen_inverse(a: &CMatrix) -> CMatrix {
    let svd = crate::linalg::svd(a);
    let smax = svd.s.first().copied().unwrap_or(0.0);
    let mut out = CMatrix::zeros(a.ncols(), a.nrows());
    for (j, &s) in svd.s.iter().enumerate() {
        if s > RANK_ZERO * smax {
            out += svd.v.column(j) * svd.u.column(j).adjoint() * c(1.0 / s, 0.0);
        }
    }
    out
}

/// `U^(-1)`: inverse of `U` from `F_1` onto `H_1`, zero on `H_0`.
pub fn u_gen_inverse(r: &OrthogonalTransform, kd: &KernelDecomposition) -> CMatrix {
    let rank = r.dim() - kd.n;
    let svd = crate::linalg::svd(&r.u);
    let mut out = CMatrix::zeros(r.dim(), r.dim());
    for j in 0..rank {
        let s = svd.s[j];
        out += svd.v.column(j) * svd.u.column(j).adjoint() * c(1.0 / s, 0.0);
    }
    out
}

/// Point of the coset space `O(H)/U(H)` in the chart `X = V conj(U)^(-1)`.
#[derive(Debug, Clone)]
pub struct CosetPoint {
    pub x: SkewMatrix,
    /// Canonical basis of `H_0 = ker U^dag`; empty on the invertible chart.
    pub h0_basis: Vec<CVector>,
}

pub fn coset_coordinate(r: &OrthogonalTransform) -> Result<CosetPoint> {
    let kd = kernel_decomposition(r)?;
    let inv = u_gen_inverse(r, &kd);
    let x = &r.v * inv.conjugate();
    Ok(CosetPoint {
        x: SkewMatrix::new(x)?,
        h0_basis: kd.h0,
    })
}

/// Section of the coset chart: `L = (I + X X^dag)^(-1/2)`, `W = X (I + X^dag X)^(-1/2)`.
pub fn lift(x: &SkewMatrix) -> OrthogonalTransform {
    let d = x.dim();
    let xm = x.matrix();
    let i = identity(d);
    let l = hermitian_map(&(&i + xm * xm.adjoint()), |t| t.powf(-0.5));
    let w = xm * hermitian_map(&(&i + xm.adjoint() * xm), |t| t.powf(-0.5));
    OrthogonalTransform { u: l, v: w }
}
