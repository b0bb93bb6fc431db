//! Antisymmetric Fock space `A(H)` over `H = C^d`.
//!
//! The basis element `e_A` for a subset `A = {a_1 < .. < a_p}` is the wedge
//! `e_(a_1) ^ .. ^ e_(a_p)`; vectors store one amplitude per subset. The norm is
//! the determinant-normalised one, so the `e_A` are orthonormal.

use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use crate::subset::{below, parity_sign, star_sign, tau};
use crate::{CMatrix, CVector, Error, Result, C64, MAX_MODES};

fn check_modes(modes: usize) -> Result<()> {
    if modes > MAX_MODES {
        return Err(Error::TooLarge {
            what: "modes",
            got: modes,
            max: MAX_MODES,
        });
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct FockVector {
    modes: usize,
    amps: Vec<C64>,
}

impl FockVector {
    pub fn zero(modes: usize) -> Self {
        FockVector {
            modes,
            amps: vec![C64::new(0.0, 0.0); 1 << modes],
        }
    }

    /// The vacuum `1_vac`.
    pub fn vacuum(modes: usize) -> Self {
        Self::basis(modes, 0)
    }

    /// The basis element `e_A`.
    pub fn basis(modes: usize, subset: usize) -> Self {
        let mut v = Self::zero(modes);
        v.amps[subset] = C64::new(1.0, 0.0);
        v
    }

    pub fn from_amplitudes(modes: usize, amps: Vec<C64>) -> Result<Self> {
        check_modes(modes)?;
        if amps.len() != 1 << modes {
            return Err(Error::dim(format!(
                "{} amplitudes supplied for {} modes",
                amps.len(),
                modes
            )));
        }
        Ok(FockVector { modes, amps })
    }

    /// A one-particle vector `f` viewed as an element of degree one.
    pub fn one_particle(f: &CVector) -> Self {
        let mut v = Self::zero(f.len());
        for (k, z) in f.iter().enumerate() {
            v.amps[1 << k] = *z;
        }
        v
    }

    pub fn from_cvector(modes: usize, v: &CVector) -> Result<Self> {
        Self::from_amplitudes(modes, v.iter().copied().collect())
    }

    pub fn to_cvector(&self) -> CVector {
        CVector::from_column_slice(&self.amps)
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn amplitude(&self, subset: usize) -> C64 {
        self.amps[subset]
    }

    pub fn set_amplitude(&mut self, subset: usize, z: C64) {
        self.amps[subset] = z;
    }

    /// Exterior product `self ^ other`.
    pub fn wedge(&self, other: &FockVector) -> Result<FockVector> {
        self.same_modes(other)?;
        let full = (1usize << self.modes) - 1;
        let mut out = Self::zero(self.modes);
        for (a, &x) in self.amps.iter().enumerate() {
            if x == C64::new(0.0, 0.0) {
                continue;
            }
            let comp = full & !a;
            let mut b = comp;
            loop {
                let y = other.amps[b];
                if y != C64::new(0.0, 0.0) {
                    out.amps[a | b] += x * y * parity_sign(tau(a, b));
                }
                if b == 0 {
                    break;
                }
                b = (b - 1) & comp;
            }
        }
        Ok(out)
    }

    /// The conjugate-linear involution with `e_k* = e_k`, reversing wedge order.
    pub fn star(&self) -> FockVector {
        let amps = self
            .amps
            .iter()
            .enumerate()
            .map(|(a, z)| z.conj() * star_sign(a))
            .collect();
        FockVector {
            modes: self.modes,
            amps,
        }
    }

    /// Hermitian inner product, conjugate-linear in `self`.
    pub fn inner(&self, other: &FockVector) -> Result<C64> {
        self.same_modes(other)?;
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(x, y)| x.conj() * y)
            .sum())
    }

    /// Symmetric bilinear form `<F||G> = (F*|G)`.
    pub fn bilinear(&self, other: &FockVector) -> Result<C64> {
        self.same_modes(other)?;
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .enumerate()
            .map(|(a, (x, y))| x * y * star_sign(a))
            .sum())
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Component of wedge degree `p`.
    pub fn degree_part(&self, p: usize) -> FockVector {
        let amps = self
            .amps
            .iter()
            .enumerate()
            .map(|(a, z)| {
                if a.count_ones() as usize == p {
                    *z
                } else {
                    C64::new(0.0, 0.0)
                }
            })
            .collect();
        FockVector {
            modes: self.modes,
            amps,
        }
    }

    pub fn scale(&self, z: C64) -> FockVector {
        FockVector {
            modes: self.modes,
            amps: self.amps.iter().map(|x| x * z).collect(),
        }
    }

    /// Largest amplitude modulus of `self - other`.
    pub fn max_diff(&self, other: &FockVector) -> f64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }

    fn same_modes(&self, other: &FockVector) -> Result<()> {
        if self.modes != other.modes {
            return Err(Error::dim(format!(
                "Fock vectors on {} and {} modes",
                self.modes, other.modes
            )));
        }
        Ok(())
    }
}

impl Add for &FockVector {
    type Output = FockVector;
    fn add(self, rhs: &FockVector) -> FockVector {
        assert_eq!(self.modes, rhs.modes);
        FockVector {
            modes: self.modes,
            amps: self
                .amps
                .iter()
                .zip(&rhs.amps)
                .map(|(x, y)| x + y)
                .collect(),
        }
    }
}

impl Sub for &FockVector {
    type Output = FockVector;
    fn sub(self, rhs: &FockVector) -> FockVector {
        assert_eq!(self.modes, rhs.modes);
        FockVector {
            modes: self.modes,
            amps: self
                .amps
                .iter()
                .zip(&rhs.amps)
                .map(|(x, y)| x - y)
                .collect(),
        }
    }
}

impl AddAssign<&FockVector> for FockVector {
    fn add_assign(&mut self, rhs: &FockVector) {
        assert_eq!(self.modes, rhs.modes);
        for (x, y) in self.amps.iter_mut().zip(&rhs.amps) {
            *x += y;
        }
    }
}

impl Neg for &FockVector {
    type Output = FockVector;
    fn neg(self) -> FockVector {
        self.scale(C64::new(-1.0, 0.0))
    }
}

/// Applies `a+(f)` to a vector without materialising the operator.
pub fn apply_create(f: &CVector, v: &FockVector) -> FockVector {
    let d = v.modes;
    let mut out = FockVector::zero(d);
    for (k, fk) in f.iter().enumerate() {
        if *fk == C64::new(0.0, 0.0) {
            continue;
        }
        let bit = 1usize << k;
        for (a, x) in v.amps.iter().enumerate() {
            if a & bit == 0 && *x != C64::new(0.0, 0.0) {
                out.amps[a | bit] += fk * x * parity_sign(below(a, k));
            }
        }
    }
    out
}

/// Dense operator on `A(H)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FockOperator {
    modes: usize,
    matrix: CMatrix,
}

impl FockOperator {
    pub fn from_matrix(modes: usize, matrix: CMatrix) -> Result<Self> {
        check_modes(modes)?;
        let n = 1usize << modes;
        if matrix.nrows() != n || matrix.ncols() != n {
            return Err(Error::dim(format!(
                "{}x{} matrix for {} modes",
                matrix.nrows(),
                matrix.ncols(),
                modes
            )));
        }
        Ok(FockOperator { modes, matrix })
    }

    pub fn identity(modes: usize) -> Self {
        let n = 1usize << modes;
        FockOperator {
            modes,
            matrix: CMatrix::identity(n, n),
        }
    }

    pub fn zero(modes: usize) -> Self {
        let n = 1usize << modes;
        FockOperator {
            modes,
            matrix: CMatrix::zeros(n, n),
        }
    }

    /// The parity operator `Gamma(-I)`.
    pub fn parity(modes: usize) -> Self {
        let n = 1usize << modes;
        let mut m = CMatrix::zeros(n, n);
        for a in 0..n {
            m[(a, a)] = C64::new(parity_sign(a.count_ones()), 0.0);
        }
        FockOperator { modes, matrix: m }
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    pub fn apply(&self, v: &FockVector) -> FockVector {
        assert_eq!(self.modes, v.modes);
        let out = &self.matrix * v.to_cvector();
        FockVector {
            modes: self.modes,
            amps: out.iter().copied().collect(),
        }
    }

    pub fn adjoint(&self) -> FockOperator {
        FockOperator {
            modes: self.modes,
            matrix: self.matrix.adjoint(),
        }
    }

    pub fn scale(&self, z: C64) -> FockOperator {
        FockOperator {
            modes: self.modes,
            matrix: &self.matrix * z,
        }
    }

    /// Largest entry modulus of `self - other`.
    pub fn max_diff(&self, other: &FockOperator) -> f64 {
        crate::linalg::max_abs(&(&self.matrix - &other.matrix))
    }
}

impl Mul for &FockOperator {
    type Output = FockOperator;
    fn mul(self, rhs: &FockOperator) -> FockOperator {
        assert_eq!(self.modes, rhs.modes);
        FockOperator {
            modes: self.modes,
            matrix: crate::linalg::matmul(&self.matrix, &rhs.matrix),
        }
    }
}

impl Add for &FockOperator {
    type Output = FockOperator;
    fn add(self, rhs: &FockOperator) -> FockOperator {
        assert_eq!(self.modes, rhs.modes);
        FockOperator {
            modes: self.modes,
            matrix: &self.matrix + &rhs.matrix,
        }
    }
}

impl Sub for &FockOperator {
    type Output = FockOperator;
    fn sub(self, rhs: &FockOperator) -> FockOperator {
        assert_eq!(self.modes, rhs.modes);
        FockOperator {
            modes: self.modes,
            matrix: &self.matrix - &rhs.matrix,
        }
    }
}

/// Creation operator `a+(f) F = f ^ F`.
pub fn create(f: &CVector) -> Result<FockOperator> {
    let d = f.len();
    check_modes(d)?;
    let n = 1usize << d;
    let mut m = CMatrix::zeros(n, n);
    for (k, fk) in f.iter().enumerate() {
        let bit = 1usize << k;
        for a in 0..n {
            if a & bit == 0 {
                m[(a | bit, a)] += fk * parity_sign(below(a, k));
            }
        }
    }
    Ok(FockOperator {
        modes: d,
        matrix: m,
    })
}

/// Annihilation operator `a-(f)`, the adjoint of `a+(f)`; conjugate-linear in `f`.
pub fn annihilate(f: &CVector) -> Result<FockOperator> {
    Ok(create(f)?.adjoint())
}

/// `Delta(f) = a+(f) - a-(f)`; real-linear in `f` and skew-adjoint.
pub fn delta(f: &CVector) -> Result<FockOperator> {
    let p = create(f)?;
    let m = &p - &p.adjoint();
    Ok(m)
}

/// Second quantisation `Gamma(B) e_A = B e_(a_1) ^ .. ^ B e_(a_p)` of any square `B`.
pub fn gamma(b: &CMatrix) -> Result<FockOperator> {
    let d = b.nrows();
    if b.ncols() != d {
        return Err(Error::dim(format!("Gamma of a {}x{} matrix", d, b.ncols())));
    }
    check_modes(d)?;
    let cols: Vec<CVector> = (0..d).map(|k| b.column(k).into_owned()).collect();
    Ok(FockOperator {
        modes: d,
        matrix: wedge_columns(&cols, d),
    })
}

/// The `2^d x 2^n` matrix whose column `K` is the ordered wedge of `vectors[k]`, `k in K`.
pub fn wedge_columns(vectors: &[CVector], modes: usize) -> CMatrix {
    let n = vectors.len();
    let rows = 1usize << modes;
    let mut m = CMatrix::zeros(rows, 1 << n);
    m[(0, 0)] = C64::new(1.0, 0.0);
    for k in 1..(1usize << n) {
        let low = k.trailing_zeros() as usize;
        let prev = FockVector {
            modes,
            amps: m.column(k & (k - 1)).iter().copied().collect(),
        };
        let next = apply_create(&vectors[low], &prev);
        m.set_column(k, &next.to_cvector());
    }
    m
}
