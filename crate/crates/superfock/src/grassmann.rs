//! Finite Grassmann algebra on `G` anticommuting generators `kappa_0 .. kappa_(G-1)`.
//!
//! Elements are stored densely in the monomial basis `kappa_K`, ordered
//! products over increasing indices. The generators are self-adjoint under the
//! involution, and the norm gives `kappa_K` length `1/|K|!`.

use std::ops::{Add, Mul, Neg, Sub};

use crate::subset::{factorial, parity_sign, star_sign, tau};
use crate::{Error, Result, C64, MAX_GENERATORS};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of_degree(p: usize) -> Self {
        if p.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn bit(self) -> u32 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GrassmannElement {
    generators: usize,
    coeffs: Vec<C64>,
}

const ZERO: C64 = C64::new(0.0, 0.0);

impl GrassmannElement {
    pub fn zero(generators: usize) -> Self {
        assert!(generators <= MAX_GENERATORS, "too many generators");
        GrassmannElement {
            generators,
            coeffs: vec![ZERO; 1 << generators],
        }
    }

    pub fn one(generators: usize) -> Self {
        Self::scalar(generators, C64::new(1.0, 0.0))
    }

    pub fn scalar(generators: usize, z: C64) -> Self {
        let mut g = Self::zero(generators);
        g.coeffs[0] = z;
        g
    }

    /// The generator `kappa_m`.
    pub fn generator(generators: usize, m: usize) -> Self {
        Self::basis(generators, 1 << m)
    }

    /// The monomial `kappa_K`.
    pub fn basis(generators: usize, subset: usize) -> Self {
        let mut g = Self::zero(generators);
        g.coeffs[subset] = C64::new(1.0, 0.0);
        g
    }

    pub fn from_coeffs(generators: usize, coeffs: Vec<C64>) -> Result<Self> {
        if generators > MAX_GENERATORS {
            return Err(Error::TooLarge {
                what: "generators",
                got: generators,
                max: MAX_GENERATORS,
            });
        }
        if coeffs.len() != 1 << generators {
            return Err(Error::dim(format!(
                "{} coefficients for {} generators",
                coeffs.len(),
                generators
            )));
        }
        Ok(GrassmannElement { generators, coeffs })
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn coeff(&self, subset: usize) -> C64 {
        self.coeffs[subset]
    }

    pub fn scalar_part(&self) -> C64 {
        self.coeffs[0]
    }

    /// Reinterprets the element inside an algebra with more generators.
    pub fn extend(&self, generators: usize) -> Self {
        assert!(generators >= self.generators);
        let mut g = Self::zero(generators);
        g.coeffs[..self.coeffs.len()].copy_from_slice(&self.coeffs);
        g
    }

    /// Product in the algebra.
    pub fn product(&self, other: &Self) -> Self {
        assert_eq!(
            self.generators, other.generators,
            "generator count mismatch"
        );
        let mut out = Self::zero(self.generators);
        for (k, x) in self.coeffs.iter().enumerate() {
            if *x == ZERO {
                continue;
            }
            for (l, y) in other.coeffs.iter().enumerate() {
                if k & l == 0 && *y != ZERO {
                    out.coeffs[k | l] += x * y * parity_sign(tau(k, l));
                }
            }
        }
        out
    }

    /// The involution: conjugate coefficients, reverse monomials.
    pub fn star(&self) -> Self {
        GrassmannElement {
            generators: self.generators,
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(k, z)| z.conj() * star_sign(k))
                .collect(),
        }
    }

    /// Hilbert norm `sum_p (p!)^(-2) |lambda_p|^2`.
    pub fn norm(&self) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, z)| z.norm_sqr() / factorial(k.count_ones() as usize).powi(2))
            .sum::<f64>()
            .sqrt()
    }

    pub fn degree_part(&self, p: usize) -> Self {
        GrassmannElement {
            generators: self.generators,
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(k, z)| {
                    if k.count_ones() as usize == p {
                        *z
                    } else {
                        ZERO
                    }
                })
                .collect(),
        }
    }

    /// Parity if the element is homogeneous; zero counts as even.
    pub fn parity(&self) -> Option<Parity> {
        let even = self
            .coeffs
            .iter()
            .enumerate()
            .any(|(k, z)| *z != ZERO && k.count_ones() % 2 == 0);
        let odd = self
            .coeffs
            .iter()
            .enumerate()
            .any(|(k, z)| *z != ZERO && k.count_ones() % 2 == 1);
        match (even, odd) {
            (_, false) => Some(Parity::Even),
            (false, true) => Some(Parity::Odd),
            _ => None,
        }
    }

    /// Exponential of a pure degree-two element; the series stops at `G/2`.
    pub fn exp(&self) -> Result<Self> {
        if self
            .coeffs
            .iter()
            .enumerate()
            .any(|(k, z)| *z != ZERO && k.count_ones() != 2)
        {
            return Err(Error::NotDegreeTwo);
        }
        Ok(self.exp_nilpotent())
    }

    /// `sum_k x^k / k!` for an element without scalar part.
    pub(crate) fn exp_nilpotent(&self) -> Self {
        let mut out = Self::one(self.generators);
        let mut term = Self::one(self.generators);
        for k in 1..=self.generators {
            term = term.product(self).scale(C64::new(1.0 / k as f64, 0.0));
            if term.coeffs.iter().all(|z| *z == ZERO) {
                break;
            }
            out = &out + &term;
        }
        out
    }

    pub fn scale(&self, z: C64) -> Self {
        GrassmannElement {
            generators: self.generators,
            coeffs: self.coeffs.iter().map(|x| x * z).collect(),
        }
    }

    /// Largest coefficient modulus of `self - other`.
    pub fn max_diff(&self, other: &Self) -> f64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

impl Add for &GrassmannElement {
    type Output = GrassmannElement;
    fn add(self, rhs: &GrassmannElement) -> GrassmannElement {
        assert_eq!(self.generators, rhs.generators);
        GrassmannElement {
            generators: self.generators,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(x, y)| x + y)
                .collect(),
        }
    }
}

impl Sub for &GrassmannElement {
    type Output = GrassmannElement;
    fn sub(self, rhs: &GrassmannElement) -> GrassmannElement {
        assert_eq!(self.generators, rhs.generators);
        GrassmannElement {
            generators: self.generators,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(x, y)| x - y)
                .collect(),
        }
    }
}

impl Mul for &GrassmannElement {
    type Output = GrassmannElement;
    fn mul(self, rhs: &GrassmannElement) -> GrassmannElement {
        self.product(rhs)
    }
}

impl Neg for &GrassmannElement {
    type Output = GrassmannElement;
    fn neg(self) -> GrassmannElement {
        self.scale(C64::new(-1.0, 0.0))
    }
}
