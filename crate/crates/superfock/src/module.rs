//! The super-module `Lambda (x) A(H)` of Fock vectors with Grassmann coefficients.
//!
//! A [`ModuleTensor`] stores one amplitude per pair (generator subset `K`,
//! mode subset `A`) at index `(K << d) | A`. The product is
//! `(lambda (x) F) o (mu (x) G) = lambda mu (x) (F ^ G)` with no extra sign, and
//! the Grassmann-valued inner product is `(lambda (x) F | mu (x) G) = lambda* mu (F|G)`.

use std::ops::{Add, Sub};

use crate::fock::{annihilate, create, wedge_columns, FockOperator, FockVector};
use crate::gaussian::{exp_omega, SkewMatrix};
use crate::grassmann::{GrassmannElement, Parity};
use crate::linalg::{c, max_abs, RowSpace};
use crate::subset::{factorial, parity_sign, star_sign, tau};
use crate::{CMatrix, CVector, Error, Result, C64, MAX_GENERATORS, MAX_MODES};

const ZERO: C64 = C64::new(0.0, 0.0);

fn check_sizes(generators: usize, modes: usize) -> Result<()> {
    if generators > MAX_GENERATORS {
        return Err(Error::TooLarge {
            what: "generators",
            got: generators,
            max: MAX_GENERATORS,
        });
    }
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
pub struct ModuleTensor {
    generators: usize,
    modes: usize,
    amps: Vec<C64>,
}

impl ModuleTensor {
    pub fn zero(generators: usize, modes: usize) -> Self {
        ModuleTensor {
            generators,
            modes,
            amps: vec![ZERO; 1 << (generators + modes)],
        }
    }

    pub fn basis(generators: usize, modes: usize, k: usize, a: usize) -> Self {
        let mut t = Self::zero(generators, modes);
        t.amps[(k << modes) | a] = c(1.0, 0.0);
        t
    }

    pub fn from_amplitudes(generators: usize, modes: usize, amps: Vec<C64>) -> Result<Self> {
        check_sizes(generators, modes)?;
        if amps.len() != 1 << (generators + modes) {
            return Err(Error::dim(format!(
                "{} amplitudes for G = {}, d = {}",
                amps.len(),
                generators,
                modes
            )));
        }
        Ok(ModuleTensor {
            generators,
            modes,
            amps,
        })
    }

    /// The elementary tensor `lambda (x) F`.
    pub fn from_parts(lambda: &GrassmannElement, f: &FockVector) -> Self {
        let (g, d) = (lambda.generators(), f.modes());
        let mut t = Self::zero(g, d);
        for (k, x) in lambda.coeffs().iter().enumerate() {
            if *x == ZERO {
                continue;
            }
            for (a, y) in f.amplitudes().iter().enumerate() {
                t.amps[(k << d) | a] = x * y;
            }
        }
        t
    }

    /// `kappa_0 (x) F`, where `kappa_0` is the unit of the Grassmann algebra.
    pub fn embed(generators: usize, f: &FockVector) -> Self {
        Self::from_parts(&GrassmannElement::one(generators), f)
    }

    pub fn generators(&self) -> usize {
        self.generators
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

    pub fn amplitude(&self, k: usize, a: usize) -> C64 {
        self.amps[(k << self.modes) | a]
    }

    /// Fock vector multiplying `kappa_K`.
    pub fn slice(&self, k: usize) -> FockVector {
        let n = 1usize << self.modes;
        FockVector::from_amplitudes(self.modes, self.amps[k * n..(k + 1) * n].to_vec())
            .expect("slice length")
    }

    pub fn to_cvector(&self) -> CVector {
        CVector::from_column_slice(&self.amps)
    }

    pub fn from_cvector(generators: usize, modes: usize, v: &CVector) -> Result<Self> {
        Self::from_amplitudes(generators, modes, v.iter().copied().collect())
    }

    /// The module product `self o other`.
    pub fn compose(&self, other: &ModuleTensor) -> Result<ModuleTensor> {
        self.same_shape(other)?;
        let d = self.modes;
        let mask = (1usize << d) - 1;
        let mut out = Self::zero(self.generators, d);
        let rhs: Vec<(usize, usize, C64)> = other
            .amps
            .iter()
            .enumerate()
            .filter(|(_, z)| **z != ZERO)
            .map(|(i, z)| (i >> d, i & mask, *z))
            .collect();
        for (i, x) in self.amps.iter().enumerate() {
            if *x == ZERO {
                continue;
            }
            let (k, a) = (i >> d, i & mask);
            for &(l, b, y) in &rhs {
                if k & l == 0 && a & b == 0 {
                    let s = parity_sign(tau(k, l) + tau(a, b));
                    out.amps[((k | l) << d) | a | b] += x * y * s;
                }
            }
        }
        Ok(out)
    }

    /// Left multiplication by a Grassmann element.
    pub fn left_mul(&self, lambda: &GrassmannElement) -> Result<ModuleTensor> {
        if lambda.generators() != self.generators {
            return Err(Error::dim(
                "Grassmann element and tensor use different generators",
            ));
        }
        let d = self.modes;
        let n = 1usize << d;
        let mut out = Self::zero(self.generators, d);
        for (k, x) in lambda.coeffs().iter().enumerate() {
            if *x == ZERO {
                continue;
            }
            for l in 0..(1usize << self.generators) {
                if k & l != 0 {
                    continue;
                }
                let s = x * parity_sign(tau(k, l));
                let (src, dst) = (l * n, (k | l) * n);
                for a in 0..n {
                    let y = self.amps[src + a];
                    if y != ZERO {
                        out.amps[dst + a] += s * y;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Grassmann-valued inner product, conjugate-linear in `self`.
    pub fn lambda_inner(&self, other: &ModuleTensor) -> Result<GrassmannElement> {
        self.same_shape(other)?;
        let n = 1usize << self.modes;
        let ng = 1usize << self.generators;
        // (F_K | G_L) for every pair of slices
        let mut out = GrassmannElement::zero(self.generators);
        let mut coeffs = out.coeffs().to_vec();
        for k in 0..ng {
            let fk = &self.amps[k * n..(k + 1) * n];
            if fk.iter().all(|z| *z == ZERO) {
                continue;
            }
            let sk = star_sign(k);
            for l in 0..ng {
                if k & l != 0 {
                    continue;
                }
                let gl = &other.amps[l * n..(l + 1) * n];
                let ip: C64 = fk.iter().zip(gl).map(|(x, y)| x.conj() * y).sum();
                if ip != ZERO {
                    coeffs[k | l] += ip * sk * parity_sign(tau(k, l));
                }
            }
        }
        out = GrassmannElement::from_coeffs(self.generators, coeffs)?;
        Ok(out)
    }

    /// Hilbert cross norm: `|kappa_K (x) e_A| = 1/|K|!`.
    pub fn norm(&self) -> f64 {
        self.norm_sqr_weighted(|_| 1.0).sqrt()
    }

    /// `(sum_p (p!)^alpha |Xi_p|^2)^(1/2)`, `p` the Fock degree.
    pub fn weighted_norm(&self, alpha: f64) -> f64 {
        self.norm_sqr_weighted(|p| factorial(p).powf(alpha)).sqrt()
    }

    fn norm_sqr_weighted(&self, w: impl Fn(usize) -> f64) -> f64 {
        let d = self.modes;
        let mask = (1usize << d) - 1;
        self.amps
            .iter()
            .enumerate()
            .map(|(i, z)| {
                let k = i >> d;
                let p = (i & mask).count_ones() as usize;
                w(p) * z.norm_sqr() / factorial(k.count_ones() as usize).powi(2)
            })
            .sum()
    }

    /// Component of Fock degree `p`.
    pub fn fock_degree_part(&self, p: usize) -> ModuleTensor {
        let mask = (1usize << self.modes) - 1;
        let mut out = self.clone();
        for (i, z) in out.amps.iter_mut().enumerate() {
            if (i & mask).count_ones() as usize != p {
                *z = ZERO;
            }
        }
        out
    }

    /// Total parity (Grassmann degree plus Fock degree) if homogeneous.
    pub fn parity(&self) -> Option<Parity> {
        let mut seen = [false, false];
        for (i, z) in self.amps.iter().enumerate() {
            if *z != ZERO {
                seen[(i.count_ones() % 2) as usize] = true;
            }
        }
        match seen {
            [_, false] => Some(Parity::Even),
            [false, true] => Some(Parity::Odd),
            _ => None,
        }
    }

    pub fn scale(&self, z: C64) -> ModuleTensor {
        ModuleTensor {
            generators: self.generators,
            modes: self.modes,
            amps: self.amps.iter().map(|x| x * z).collect(),
        }
    }

    /// Same tensor inside an algebra with more generators.
    pub fn extend_generators(&self, generators: usize) -> ModuleTensor {
        assert!(generators >= self.generators);
        let mut out = Self::zero(generators, self.modes);
        out.amps[..self.amps.len()].copy_from_slice(&self.amps);
        out
    }

    pub fn max_diff(&self, other: &ModuleTensor) -> f64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.amps.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    fn same_shape(&self, other: &ModuleTensor) -> Result<()> {
        if self.generators != other.generators || self.modes != other.modes {
            return Err(Error::dim(format!(
                "tensors of shape (G={}, d={}) and (G={}, d={})",
                self.generators, self.modes, other.generators, other.modes
            )));
        }
        Ok(())
    }
}

impl Add for &ModuleTensor {
    type Output = ModuleTensor;
    fn add(self, rhs: &ModuleTensor) -> ModuleTensor {
        assert_eq!((self.generators, self.modes), (rhs.generators, rhs.modes));
        ModuleTensor {
            generators: self.generators,
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

impl Sub for &ModuleTensor {
    type Output = ModuleTensor;
    fn sub(self, rhs: &ModuleTensor) -> ModuleTensor {
        assert_eq!((self.generators, self.modes), (rhs.generators, rhs.modes));
        ModuleTensor {
            generators: self.generators,
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

/// An even supervector `xi = sum_m kappa_m (x) f_m`; row `m` of `coeffs` is `f_m`.
#[derive(Debug, Clone, PartialEq)]
pub struct SuperVector {
    coeffs: CMatrix,
}

impl SuperVector {
    pub fn new(coeffs: CMatrix) -> Result<Self> {
        check_sizes(coeffs.nrows(), coeffs.ncols())?;
        Ok(SuperVector { coeffs })
    }

    pub fn zero(generators: usize, modes: usize) -> Self {
        SuperVector {
            coeffs: CMatrix::zeros(generators, modes),
        }
    }

    /// `kappa_m (x) f`.
    pub fn single(generators: usize, m: usize, f: &CVector) -> Self {
        let mut s = Self::zero(generators, f.len());
        s.coeffs.set_row(m, &f.transpose());
        s
    }

    pub fn generators(&self) -> usize {
        self.coeffs.nrows()
    }

    pub fn modes(&self) -> usize {
        self.coeffs.ncols()
    }

    pub fn coeffs(&self) -> &CMatrix {
        &self.coeffs
    }

    /// The vector `f_m`.
    pub fn component(&self, m: usize) -> CVector {
        self.coeffs.row(m).transpose()
    }

    pub fn components(&self) -> Vec<CVector> {
        (0..self.generators()).map(|m| self.component(m)).collect()
    }

    pub fn to_tensor(&self) -> ModuleTensor {
        let (g, d) = (self.generators(), self.modes());
        let mut t = ModuleTensor::zero(g, d);
        for m in 0..g {
            for k in 0..d {
                t.amps[((1 << m) << d) | (1 << k)] = self.coeffs[(m, k)];
            }
        }
        t
    }

    /// `(xi|eta) = sum_(m,n) kappa_m kappa_n (f_m|g_n)`, an element of degree two.
    pub fn inner(&self, other: &SuperVector) -> GrassmannElement {
        let g = self.generators();
        let gram = self.coeffs.conjugate() * other.coeffs.transpose();
        let mut coeffs = vec![ZERO; 1 << g];
        for m in 0..g {
            for n in (m + 1)..g {
                coeffs[(1 << m) | (1 << n)] = gram[(m, n)] - gram[(n, m)];
            }
        }
        GrassmannElement::from_coeffs(g, coeffs).expect("generator count checked")
    }

    /// `xi* = sum_m kappa_m (x) conj(f_m)`.
    pub fn conj(&self) -> SuperVector {
        SuperVector {
            coeffs: self.coeffs.conjugate(),
        }
    }

    /// `sum_m kappa_m (x) A f_m`.
    pub fn map(&self, a: &CMatrix) -> SuperVector {
        SuperVector {
            coeffs: &self.coeffs * a.transpose(),
        }
    }

    pub fn scale(&self, z: C64) -> SuperVector {
        SuperVector {
            coeffs: &self.coeffs * z,
        }
    }

    /// Cross norm, equal to the Frobenius norm of the coefficients.
    pub fn norm(&self) -> f64 {
        self.coeffs.norm()
    }

    /// Places the components at generators `offset..` of an algebra with `generators` generators.
    pub fn shifted(&self, offset: usize, generators: usize) -> SuperVector {
        assert!(offset + self.generators() <= generators);
        let mut out = CMatrix::zeros(generators, self.modes());
        out.view_mut((offset, 0), (self.generators(), self.modes()))
            .copy_from(&self.coeffs);
        SuperVector { coeffs: out }
    }
}

impl Add for &SuperVector {
    type Output = SuperVector;
    fn add(self, rhs: &SuperVector) -> SuperVector {
        SuperVector {
            coeffs: &self.coeffs + &rhs.coeffs,
        }
    }
}

impl Sub for &SuperVector {
    type Output = SuperVector;
    fn sub(self, rhs: &SuperVector) -> SuperVector {
        SuperVector {
            coeffs: &self.coeffs - &rhs.coeffs,
        }
    }
}

/// `exp xi = sum_K kappa_K (x) f_K` where `f_K` is the ordered wedge of the components.
pub fn coherent(xi: &SuperVector) -> ModuleTensor {
    let (g, d) = (xi.generators(), xi.modes());
    let w = wedge_columns(&xi.components(), d);
    let n = 1usize << d;
    let mut t = ModuleTensor::zero(g, d);
    for k in 0..(1usize << g) {
        for a in 0..n {
            t.amps[(k << d) | a] = w[(a, k)];
        }
    }
    t
}

/// `Psi(X, xi) = exp(xi) o (kappa_0 (x) exp Omega(X))`.
pub fn ultracoherent(x: &SkewMatrix, xi: &SuperVector) -> Result<ModuleTensor> {
    if x.dim() != xi.modes() {
        return Err(Error::dim(
            "skew matrix and supervector act on different mode counts",
        ));
    }
    let gauss = ModuleTensor::embed(xi.generators(), &exp_omega(x)?);
    coherent(xi).compose(&gauss)
}

/// Operator `sum_K kappa_K (x) T_K` on the module, kept in canonical form.
#[derive(Debug, Clone, PartialEq)]
pub struct RegularOperator {
    generators: usize,
    modes: usize,
    parts: Vec<Option<CMatrix>>,
}

impl RegularOperator {
    pub fn zero(generators: usize, modes: usize) -> Self {
        RegularOperator {
            generators,
            modes,
            parts: vec![None; 1 << generators],
        }
    }

    pub fn identity(generators: usize, modes: usize) -> Self {
        Self::lift(generators, &FockOperator::identity(modes))
    }

    /// `kappa_0 (x) T`.
    pub fn lift(generators: usize, t: &FockOperator) -> Self {
        let mut r = Self::zero(generators, t.modes());
        r.parts[0] = Some(t.matrix().clone());
        r
    }

    /// Left multiplication by `lambda`, i.e. `lambda (x) I`.
    pub fn scalar(lambda: &GrassmannElement, modes: usize) -> Self {
        Self::from_terms(
            lambda.generators(),
            modes,
            &[(lambda.clone(), FockOperator::identity(modes))],
        )
        .expect("shapes agree")
    }

    /// `sum_j mu_j (x) T_j`.
    pub fn from_terms(
        generators: usize,
        modes: usize,
        terms: &[(GrassmannElement, FockOperator)],
    ) -> Result<Self> {
        check_sizes(generators, modes)?;
        let mut r = Self::zero(generators, modes);
        for (mu, t) in terms {
            if mu.generators() != generators || t.modes() != modes {
                return Err(Error::dim("term does not match the operator shape"));
            }
            for (k, z) in mu.coeffs().iter().enumerate() {
                if *z != ZERO {
                    r.add_part(k, &(t.matrix() * *z));
                }
            }
        }
        Ok(r)
    }

    fn add_part(&mut self, k: usize, m: &CMatrix) {
        match &mut self.parts[k] {
            Some(p) => *p += m,
            slot @ None => *slot = Some(m.clone()),
        }
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    /// Fock operator multiplying `kappa_K`.
    pub fn part(&self, k: usize) -> FockOperator {
        match &self.parts[k] {
            Some(m) => FockOperator::from_matrix(self.modes, m.clone()).expect("shape"),
            None => FockOperator::zero(self.modes),
        }
    }

    /// Nonzero terms `(kappa_K, T_K)`.
    pub fn terms(&self) -> Vec<(GrassmannElement, FockOperator)> {
        self.parts
            .iter()
            .enumerate()
            .filter_map(|(k, p)| {
                p.as_ref().map(|m| {
                    (
                        GrassmannElement::basis(self.generators, k),
                        FockOperator::from_matrix(self.modes, m.clone()).expect("shape"),
                    )
                })
            })
            .collect()
    }

    pub fn apply(&self, xi: &ModuleTensor) -> Result<ModuleTensor> {
        if xi.generators != self.generators || xi.modes != self.modes {
            return Err(Error::dim("operator and tensor shapes differ"));
        }
        let n = 1usize << self.modes;
        let ng = 1usize << self.generators;
        let mut out = ModuleTensor::zero(self.generators, self.modes);
        for l in 0..ng {
            let src = &xi.amps[l * n..(l + 1) * n];
            if src.iter().all(|z| *z == ZERO) {
                continue;
            }
            let x = CVector::from_column_slice(src);
            for (k, p) in self.parts.iter().enumerate() {
                let Some(m) = p else { continue };
                if k & l != 0 {
                    continue;
                }
                let y = m * &x * c(parity_sign(tau(k, l)), 0.0);
                let dst = (k | l) * n;
                for (a, z) in y.iter().enumerate() {
                    out.amps[dst + a] += z;
                }
            }
        }
        Ok(out)
    }

    /// Operator product `self . other`.
    pub fn compose(&self, other: &RegularOperator) -> Result<RegularOperator> {
        if (self.generators, self.modes) != (other.generators, other.modes) {
            return Err(Error::dim("operator shapes differ"));
        }
        let mut out = Self::zero(self.generators, self.modes);
        for (k, a) in self.parts.iter().enumerate() {
            let Some(a) = a else { continue };
            for (l, b) in other.parts.iter().enumerate() {
                let Some(b) = b else { continue };
                if k & l == 0 {
                    out.add_part(k | l, &((a * b) * c(parity_sign(tau(k, l)), 0.0)));
                }
            }
        }
        Ok(out)
    }

    /// `sum_K kappa_K* (x) T_K^dagger`.
    pub fn superadjoint(&self) -> RegularOperator {
        RegularOperator {
            generators: self.generators,
            modes: self.modes,
            parts: self
                .parts
                .iter()
                .enumerate()
                .map(|(k, p)| p.as_ref().map(|m| m.adjoint() * c(star_sign(k), 0.0)))
                .collect(),
        }
    }

    /// Matrix on the flattened module space of dimension `2^(G+d)`.
    pub fn to_dense(&self) -> CMatrix {
        let n = 1usize << self.modes;
        let ng = 1usize << self.generators;
        let mut out = CMatrix::zeros(ng * n, ng * n);
        for (k, p) in self.parts.iter().enumerate() {
            let Some(m) = p else { continue };
            for l in 0..ng {
                if k & l != 0 {
                    continue;
                }
                let s = c(parity_sign(tau(k, l)), 0.0);
                let mut block = out.view_mut(((k | l) * n, l * n), (n, n));
                block += m * s;
            }
        }
        out
    }

    pub fn scale(&self, z: C64) -> RegularOperator {
        RegularOperator {
            generators: self.generators,
            modes: self.modes,
            parts: self
                .parts
                .iter()
                .map(|p| p.as_ref().map(|m| m * z))
                .collect(),
        }
    }

    pub fn add(&self, other: &RegularOperator) -> RegularOperator {
        assert_eq!(
            (self.generators, self.modes),
            (other.generators, other.modes)
        );
        let mut out = self.clone();
        for (k, p) in other.parts.iter().enumerate() {
            if let Some(m) = p {
                out.add_part(k, m);
            }
        }
        out
    }

    pub fn sub(&self, other: &RegularOperator) -> RegularOperator {
        self.add(&other.scale(c(-1.0, 0.0)))
    }

    /// Same operator in an algebra with more generators.
    pub fn extend_generators(&self, generators: usize) -> RegularOperator {
        assert!(generators >= self.generators);
        let mut parts = self.parts.clone();
        parts.resize(1 << generators, None);
        RegularOperator {
            generators,
            modes: self.modes,
            parts,
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.parts.iter().flatten().map(max_abs).fold(0.0, f64::max)
    }
}

/// `b+(eta) = sum_m kappa_m (x) a+(f_m)`, so that `b+(eta) Xi = eta o Xi`.
pub fn b_plus(eta: &SuperVector) -> Result<RegularOperator> {
    let terms = eta
        .components()
        .iter()
        .enumerate()
        .map(|(m, f)| Ok((GrassmannElement::generator(eta.generators(), m), create(f)?)))
        .collect::<Result<Vec<_>>>()?;
    RegularOperator::from_terms(eta.generators(), eta.modes(), &terms)
}

/// `b-(eta) = sum_m kappa_m* (x) a-(f_m)`, the superadjoint of `b+(eta)`.
pub fn b_minus(eta: &SuperVector) -> Result<RegularOperator> {
    let terms = eta
        .components()
        .iter()
        .enumerate()
        .map(|(m, f)| {
            Ok((
                GrassmannElement::generator(eta.generators(), m).star(),
                annihilate(f)?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    RegularOperator::from_terms(eta.generators(), eta.modes(), &terms)
}

/// Where the probing supervectors of [`pairing_rank`] take their generators from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProbeGenerators {
    /// The probes use the same generators as the tensors being probed.
    Shared,
    /// The probes use this many extra generators, disjoint from the tensors' own.
    Fresh(usize),
}

/// Supervectors with every coefficient in `{0, 1, i}`, in base-3 counting order.
pub fn probe_family(generators: usize, modes: usize) -> impl Iterator<Item = SuperVector> {
    let cells = generators * modes;
    let total = 3usize.pow(cells as u32);
    (0..total).map(move |mut idx| {
        let mut m = CMatrix::zeros(generators, modes);
        for cell in 0..cells {
            m[(cell / modes, cell % modes)] = match idx % 3 {
                0 => ZERO,
                1 => c(1.0, 0.0),
                _ => c(0.0, 1.0),
            };
            idx /= 3;
        }
        SuperVector { coeffs: m }
    })
}

/// Outcome of [`pairing_rank`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairingRank {
    pub rank: usize,
    pub dim: usize,
    pub probes_used: usize,
}

/// Numerical rank of `Xi -> ((exp zeta_i | Xi))_i` on the module with `G`
/// generators and `d` modes, `zeta_i` running over [`probe_family`].
///
/// Enumeration stops as soon as the rank is full.
pub fn pairing_rank(
    generators: usize,
    modes: usize,
    probes: ProbeGenerators,
    tol: f64,
) -> Result<PairingRank> {
    let (gp, offset) = match probes {
        ProbeGenerators::Shared => (generators, 0),
        ProbeGenerators::Fresh(gp) => (gp, generators),
    };
    let total = offset + gp;
    check_sizes(total, modes)?;
    let dim = 1usize << (generators + modes);
    let n = 1usize << modes;
    let mut space = RowSpace::new(dim, tol);
    let mut used = 0;
    for zeta in probe_family(gp, modes) {
        used += 1;
        let ex = coherent(&zeta);
        // row index: output monomial; column index: module basis (L, B)
        let mut rows = vec![CVector::zeros(dim); 1 << total];
        for k in 0..(1usize << gp) {
            let kk = k << offset;
            let sk = star_sign(k);
            for l in 0..(1usize << generators) {
                if kk & l != 0 {
                    continue;
                }
                let s = sk * parity_sign(tau(kk, l));
                for b in 0..n {
                    let z = ex.amplitude(k, b);
                    if z != ZERO {
                        rows[kk | l][(l << modes) | b] += z.conj() * s;
                    }
                }
            }
        }
        for r in &rows {
            space.push(r);
        }
        if space.is_full() {
            break;
        }
    }
    Ok(PairingRank {
        rank: space.rank(),
        dim,
        probes_used: used,
    })
}

/// Span of the Fock components `f_K` of the probe coherent vectors.
pub fn probe_fock_span(generators: usize, modes: usize, tol: f64) -> RowSpace {
    let n = 1usize << modes;
    let mut space = RowSpace::new(n, tol);
    for zeta in probe_family(generators, modes) {
        let ex = coherent(&zeta);
        for k in 0..(1usize << generators) {
            space.push(&ex.slice(k).to_cvector());
        }
        if space.is_full() {
            break;
        }
    }
    space
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::FockVector;

    fn cv(v: &[(f64, f64)]) -> CVector {
        CVector::from_iterator(v.len(), v.iter().map(|&(a, b)| c(a, b)))
    }

    #[test]
    fn product_of_elementary_tensors() {
        let (g, d) = (2, 2);
        let a = ModuleTensor::basis(g, d, 0b10, 0b01);
        let b = ModuleTensor::basis(g, d, 0b01, 0b10);
        // kappa_1 kappa_0 (x) e_0 ^ e_1 = - kappa_01 (x) e_01
        let p = a.compose(&b).unwrap();
        assert_eq!(p.amplitude(0b11, 0b11), c(-1.0, 0.0));
        let q = b.compose(&a).unwrap();
        assert_eq!(q.amplitude(0b11, 0b11), c(-1.0, 0.0));
    }

    #[test]
    fn coherent_matches_power_series() {
        let xi = SuperVector::new(CMatrix::from_row_slice(
            2,
            3,
            &[
                c(1.0, 0.5),
                c(0.0, -1.0),
                c(2.0, 0.0),
                c(-0.3, 0.0),
                c(0.7, 0.7),
                c(0.0, 1.0),
            ],
        ))
        .unwrap();
        let t = xi.to_tensor();
        let mut sum = ModuleTensor::embed(2, &FockVector::vacuum(3));
        let mut term = sum.clone();
        for p in 1..=2 {
            term = term.compose(&t).unwrap().scale(c(1.0 / p as f64, 0.0));
            sum = &sum + &term;
        }
        assert!(sum.max_diff(&coherent(&xi)) < 1e-14);
    }

    #[test]
    fn b_plus_is_left_product() {
        let eta = SuperVector::single(2, 1, &cv(&[(1.0, 0.0), (0.0, 2.0)]));
        let xi = ModuleTensor::basis(2, 2, 0b01, 0b01);
        let lhs = b_plus(&eta).unwrap().apply(&xi).unwrap();
        let rhs = eta.to_tensor().compose(&xi).unwrap();
        assert!(lhs.max_diff(&rhs) < 1e-15);
    }

    #[test]
    fn b_minus_is_superadjoint_of_b_plus() {
        let eta = SuperVector::new(CMatrix::from_fn(2, 2, |i, j| {
            c(i as f64 + 0.5, j as f64 - 0.25)
        }))
        .unwrap();
        let bp = b_plus(&eta).unwrap();
        let bm = b_minus(&eta).unwrap();
        assert!(max_abs(&(bp.superadjoint().to_dense() - bm.to_dense())) < 1e-15);
    }

    #[test]
    fn dense_matches_apply() {
        let eta =
            SuperVector::new(CMatrix::from_fn(2, 2, |i, j| c((i + 2 * j) as f64, 1.0))).unwrap();
        let op = b_plus(&eta)
            .unwrap()
            .compose(&b_minus(&eta).unwrap())
            .unwrap();
        let xi = coherent(&eta);
        let a = op.apply(&xi).unwrap().to_cvector();
        let b = op.to_dense() * xi.to_cvector();
        assert!((a - b).norm() < 1e-12);
    }

    #[test]
    fn weighted_norm_at_zero_is_cross_norm() {
        let xi =
            SuperVector::new(CMatrix::from_fn(2, 2, |i, j| c(i as f64, j as f64 + 1.0))).unwrap();
        let t = coherent(&xi);
        assert!((t.weighted_norm(0.0) - t.norm()).abs() < 1e-14);
    }

    #[test]
    fn probe_family_size() {
        assert_eq!(probe_family(1, 2).count(), 9);
        let last = probe_family(1, 2).last().unwrap();
        assert_eq!(last.coeffs()[(0, 1)], c(0.0, 1.0));
    }
}
