//! Unitary implementers `T(R)` of orthogonal transformations on `A(H)`.
//!
//! `T(R)` is characterised up to a phase by `T Delta(f) T^dag = Delta(U f + V f*)`.
//! On the invertible chart the phase is fixed by a positive vacuum overlap.
//! When `U` has a kernel, `T(R)` factors through the splitting `H = H_0 + H_1`,
//! and the phase is fixed by the canonical basis of `H_0`.

use rayon::prelude::*;

use crate::fock::{delta, wedge_columns, FockOperator, FockVector};
use crate::gaussian::{exp_omega, gaussian_norm, principal_pfaffians, SkewMatrix};
use crate::linalg::{c, checked_inverse, columns, identity, max_abs, projector_range};
use crate::module::RegularOperator;
use crate::orthogroup::{kernel_decomposition, numerical_rank, OrthogonalTransform};
use crate::subset::{full, parity_sign, submasks, tau};
use crate::{CMatrix, CVector, Error, Result, C64, MAX_MODES};

/// A unitary implementer together with the data that fixed its phase.
#[derive(Debug, Clone)]
pub struct Implementer {
    pub transform: OrthogonalTransform,
    pub operator: FockOperator,
    /// `dim ker U`.
    pub kernel_dim: usize,
    /// Basis `e_1, .., e_n` of `H_0`; the vacuum is sent to `e_1 ^ .. ^ e_n ^ (..)`.
    pub h0_basis: Vec<CVector>,
}

impl Implementer {
    pub fn matrix(&self) -> &CMatrix {
        self.operator.matrix()
    }
}

/// `c_X = det(I + X^dag X)^(-1/4)`, the normalisation of `exp Omega(X)`.
pub fn c_norm(x: &SkewMatrix) -> f64 {
    1.0 / gaussian_norm(x)
}

/// The unit vector `c_X exp Omega(X)`.
pub fn theta(x: &SkewMatrix) -> Result<FockVector> {
    Ok(exp_omega(x)?.scale(c(c_norm(x), 0.0)))
}

fn check_modes(d: usize) -> Result<()> {
    if d > MAX_MODES {
        return Err(Error::TooLarge {
            what: "modes",
            got: d,
            max: MAX_MODES,
        });
    }
    Ok(())
}

/// `T(R)` for invertible `U`, normalised so that `(1_vac | T 1_vac) > 0`.
///
/// With `X = V conj(U)^-1` and `Y = -V^dag U^dag^-1`,
/// `T e_M = c_X sum_(K u L = M) (-1)^tau(K,L) Pf(Y_K) (Gamma(U^dag^-1) e_L) ^ exp Omega(X)`.
pub fn implement_invertible(r: &OrthogonalTransform) -> Result<Implementer> {
    let d = r.dim();
    check_modes(d)?;
    let sv = crate::linalg::singular_values(r.u());
    let rank = numerical_rank(&sv)?;
    if rank < d {
        return Err(Error::Singular(d - rank));
    }
    let uinv = checked_inverse(r.u(), 1.0 / crate::orthogroup::RANK_NONZERO)?;
    let x = SkewMatrix::new(r.v() * uinv.conjugate())?;
    let udi = uinv.adjoint();
    let y = -(r.v().adjoint() * &udi);
    let cx = c(c_norm(&x), 0.0);
    let gauss = exp_omega(&x)?;
    let phi = principal_pfaffians(&y)?;
    let g = wedge_columns(
        &(0..d)
            .map(|k| udi.column(k).into_owned())
            .collect::<Vec<_>>(),
        d,
    );

    let n = 1usize << d;
    let cols: Vec<CVector> = (0..n)
        .into_par_iter()
        .map(|m| {
            let mut v = CVector::zeros(n);
            for k in submasks(m) {
                let pk = phi[k];
                if pk == c(0.0, 0.0) {
                    continue;
                }
                let l = m & !k;
                v += g.column(l) * (pk * parity_sign(tau(k, l)));
            }
            let w = FockVector::from_cvector(d, &v)
                .expect("size")
                .wedge(&gauss)
                .expect("same modes");
            w.to_cvector() * cx
        })
        .collect();
    let op = FockOperator::from_matrix(d, columns(&cols, n))?;
    Ok(Implementer {
        transform: r.clone(),
        operator: op,
        kernel_dim: 0,
        h0_basis: vec![],
    })
}

/// The duality block `T_0 : A(F_0) -> A(H_0)`, `f_K -> (-1)^tau(K,M) e_(M\K)`.
///
/// `matrix` acts on coordinates: column `K` is the image of `f_K`
/// expressed in the basis `e_K` of `A(H_0)`.
#[derive(Debug, Clone)]
pub struct DualityBlock {
    pub e_basis: Vec<CVector>,
    pub f_basis: Vec<CVector>,
    pub matrix: CMatrix,
}

impl DualityBlock {
    /// The block as an operator on `A(H)`, vanishing on the complement of `A(F_0)`.
    pub fn embedded(&self, modes: usize) -> Result<FockOperator> {
        let ee = wedge_columns(&self.e_basis, modes);
        let ef = wedge_columns(&self.f_basis, modes);
        FockOperator::from_matrix(modes, ee * &self.matrix * ef.adjoint())
    }
}

/// Builds the duality block from `J = P_0 V` and a basis of `H_0`; `f_m = -J^T e_m*`.
pub fn t0_duality(j: &CMatrix, e_basis: &[CVector]) -> DualityBlock {
    let n = e_basis.len();
    let f_basis: Vec<CVector> = e_basis
        .iter()
        .map(|e| -(j.adjoint() * e).map(|z| z.conj()))
        .collect();
    let top = full(n);
    let size = 1usize << n;
    let mut m = CMatrix::zeros(size, size);
    for k in 0..size {
        m[(top & !k, k)] = c(parity_sign(tau(k, top)), 0.0);
    }
    DualityBlock {
        e_basis: e_basis.to_vec(),
        f_basis,
        matrix: m,
    }
}

/// `T(R)` for any orthogonal `R`.
///
/// On `A(F_0) ^ A(F_1)` it acts as `F_0 ^ F_1 -> (T_0 F_0) ^ (T_1 Gamma((-1)^n Q_1) F_1)`,
/// with `T_1` the invertible-chart implementer of `R(U + U_0, P_1 V)` and
/// `U_0 = sum_m e_m f_m^dag`.
pub fn implement_general(r: &OrthogonalTransform) -> Result<Implementer> {
    let d = r.dim();
    check_modes(d)?;
    let kd = kernel_decomposition(r)?;
    let n = kd.n;
    if n == 0 {
        return implement_invertible(r);
    }
    let j = &kd.p0 * r.v();
    let block = t0_duality(&j, &kd.h0);
    let fmat = columns(&block.f_basis, d);
    let emat = columns(&block.e_basis, d);
    let u0 = &emat * fmat.adjoint();
    let inner = OrthogonalTransform::new_unchecked(r.u() + &u0, &kd.p1 * r.v())?;
    let t1 = implement_invertible(&inner)?;

    let q1 = identity(d) - &fmat * fmat.adjoint();
    let mut basis = block.f_basis.clone();
    basis.extend(projector_range(&q1));
    if basis.len() != d {
        return Err(Error::Precondition(format!(
            "kernel splitting produced {} basis vectors for {} modes",
            basis.len(),
            d
        )));
    }
    let gf = wedge_columns(&basis, d);
    let ee = wedge_columns(&block.e_basis, d);
    let size = 1usize << d;
    let top = full(n);
    let images: Vec<CVector> = (0..size)
        .into_par_iter()
        .map(|s| {
            let k = s & top;
            let l = s >> n;
            let left = ee.column(top & !k) * c(parity_sign(tau(k, top)), 0.0);
            let sign = parity_sign((n * l.count_ones() as usize) as u32);
            let right = t1.matrix() * gf.column(l << n) * c(sign, 0.0);
            let lv = FockVector::from_cvector(d, &left).expect("size");
            let rv = FockVector::from_cvector(d, &right).expect("size");
            lv.wedge(&rv).expect("same modes").to_cvector()
        })
        .collect();
    let img = columns(&images, size);
    let op = FockOperator::from_matrix(d, img * gf.adjoint())?;
    Ok(Implementer {
        transform: r.clone(),
        operator: op,
        kernel_dim: n,
        h0_basis: kd.h0,
    })
}

/// `max_f |T Delta(f) T^dag - Delta(U f + V f*)|_max` over `f = e_k` and `f = i e_k`.
pub fn intertwining_residual(r: &OrthogonalTransform, t: &FockOperator) -> Result<f64> {
    let d = r.dim();
    let mut worst: f64 = 0.0;
    for k in 0..d {
        for ph in [c(1.0, 0.0), c(0.0, 1.0)] {
            let mut f = CVector::zeros(d);
            f[k] = ph;
            let lhs = &(t * &delta(&f)?) * &t.adjoint();
            let rhs = delta(&r.apply(&f))?;
            worst = worst.max(lhs.max_diff(&rhs));
        }
    }
    Ok(worst)
}

/// `kappa_0 (x) T` on the module with the given number of generators.
pub fn module_lift(t: &FockOperator, generators: usize) -> RegularOperator {
    RegularOperator::lift(generators, t)
}

/// Phase `chi` with `T(R_2) T(R_1) = chi T(R_2 R_1)` and the residual of that identity.
pub fn cocycle(r2: &OrthogonalTransform, r1: &OrthogonalTransform) -> Result<(C64, f64)> {
    let t2 = implement_general(r2)?;
    let t1 = implement_general(r1)?;
    let t21 = implement_general(&r2.compose(r1)?)?;
    let prod = t2.matrix() * t1.matrix();
    let chi = ratio_at_peak(&prod, t21.matrix());
    let residual = max_abs(&(&prod - t21.matrix() * chi));
    Ok((chi, residual))
}

/// `a[i] / b[i]` at the entry where `|b|` is largest.
pub(crate) fn ratio_at_peak(a: &CMatrix, b: &CMatrix) -> C64 {
    let mut best = 0;
    let mut best_abs = -1.0;
    for (i, z) in b.iter().enumerate() {
        if z.norm() > best_abs {
            best_abs = z.norm();
            best = i;
        }
    }
    a.as_slice()[best] / b.as_slice()[best]
}

/// `T(R) 1_vac` from the closed form: `c_X exp Omega(X)`, wedged with
/// `e_1 ^ .. ^ e_n` when `U` has a kernel; `X = V conj(U)^(-1)` on the generalised inverse.
pub fn vacuum_orbit(r: &OrthogonalTransform) -> Result<FockVector> {
    let d = r.dim();
    check_modes(d)?;
    let p = crate::orthogroup::coset_coordinate(r)?;
    let th = theta(&p.x)?;
    if p.h0_basis.is_empty() {
        return Ok(th);
    }
    let top = wedge_columns(&p.h0_basis, d)
        .column(full(p.h0_basis.len()))
        .into_owned();
    FockVector::from_cvector(d, &top)?.wedge(&th)
}

/// One step of the vacuum-orbit action on coset coordinates.
#[derive(Debug, Clone)]
pub struct OrbitStep {
    /// `T(R_2) Theta(X_1) = chi Theta(X_3)`.
    pub chi: C64,
    pub x3: SkewMatrix,
    pub residual: f64,
}

/// `X_3 = (U_2 X_1 + V_2)(conj(U_2) + conj(V_2) X_1)^(-1)`, checked against the implementer.
pub fn orbit_transform(r2: &OrthogonalTransform, x1: &SkewMatrix) -> Result<OrbitStep> {
    if r2.dim() != x1.dim() {
        return Err(Error::dim("transform and coordinate sizes differ"));
    }
    let num = r2.u() * x1.matrix() + r2.v();
    let den = r2.u().conjugate() + r2.v().conjugate() * x1.matrix();
    // a uniformly small denominator has condition number 1, so measure it against the numerator too
    let scale = crate::linalg::op_norm(&den).max(crate::linalg::op_norm(&num));
    let smin = crate::linalg::singular_values(&den)
        .last()
        .copied()
        .unwrap_or(scale);
    if smin < crate::orthogroup::RANK_NONZERO * scale {
        return Err(Error::Precondition(format!(
            "image leaves the invertible chart (denominator scale {:.3e})",
            smin / scale
        )));
    }
    let den_inv =
        checked_inverse(&den, 1.0 / crate::orthogroup::RANK_NONZERO).map_err(|e| match e {
            Error::IllConditioned(k) => Error::Precondition(format!(
                "image leaves the invertible chart (condition number {k:.3e})"
            )),
            other => other,
        })?;
    let x3 = SkewMatrix::new(num * den_inv)?;
    let t2 = implement_general(r2)?;
    let lhs = t2.operator.apply(&theta(x1)?);
    let rhs = theta(&x3)?;
    let chi = rhs.inner(&lhs)?;
    let residual = lhs.max_diff(&rhs.scale(chi));
    Ok(OrbitStep { chi, x3, residual })
}
