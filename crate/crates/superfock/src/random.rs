//! Seeded generators of random test objects.
//!
//! Everything is driven by a ChaCha stream, so a seed fixes every sample.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::fock::FockVector;
use crate::gaussian::SkewMatrix;
use crate::grassmann::GrassmannElement;
use crate::linalg::c;
use crate::module::{ModuleTensor, SuperVector};
use crate::orthogroup::{lift, OrthogonalTransform};
use crate::{CMatrix, CVector, C64};

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn normal(&mut self) -> f64 {
        StandardNormal.sample(&mut self.rng)
    }

    /// Uniform sample from `[lo, hi)`.
    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * rand::Rng::random::<f64>(&mut self.rng)
    }

    /// Uniform integer in `lo..=hi`.
    pub fn int(&mut self, lo: usize, hi: usize) -> usize {
        rand::Rng::random_range(&mut self.rng, lo..=hi)
    }

    /// Standard complex Gaussian, `E|z|^2 = 1`.
    pub fn complex(&mut self) -> C64 {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        c(s * self.normal(), s * self.normal())
    }

    pub fn matrix(&mut self, rows: usize, cols: usize, scale: f64) -> CMatrix {
        CMatrix::from_fn(rows, cols, |_, _| self.complex() * scale)
    }

    pub fn vector(&mut self, d: usize, scale: f64) -> CVector {
        CVector::from_fn(d, |_, _| self.complex() * scale)
    }

    /// Haar unitary through the QR decomposition of a Gaussian matrix.
    pub fn unitary(&mut self, d: usize) -> CMatrix {
        if d == 0 {
            return CMatrix::zeros(0, 0);
        }
        let qr = self.matrix(d, d, 1.0).qr();
        let (mut q, r) = (qr.q(), qr.r());
        for j in 0..d {
            let z = r[(j, j)];
            let ph = if z.norm() > 0.0 {
                z / z.norm()
            } else {
                c(1.0, 0.0)
            };
            for i in 0..d {
                q[(i, j)] *= ph;
            }
        }
        q
    }

    pub fn skew(&mut self, d: usize, scale: f64) -> SkewMatrix {
        let m = self.matrix(d, d, scale);
        SkewMatrix::new((&m - m.transpose()) * c(0.5, 0.0)).expect("skew by construction")
    }

    /// `lift(X) . R(S, 0)`: a generic element of the invertible chart.
    pub fn invertible_transform(&mut self, d: usize, scale: f64) -> OrthogonalTransform {
        let x = self.skew(d, scale);
        let s = OrthogonalTransform::unitary(self.unitary(d)).expect("unitary");
        lift(&x).compose(&s).expect("same dimension")
    }

    /// A transform whose `U` has a kernel of dimension exactly `n`.
    ///
    /// Built as `R(S_1, 0) . (R(0, W_0) (+) lift(X)) . R(S_2, 0)` with
    /// `W_0` unitary on the first `n` modes and `X` skew on the rest.
    pub fn singular_transform(&mut self, d: usize, n: usize, scale: f64) -> OrthogonalTransform {
        assert!(n <= d);
        let w0 = self.unitary(n);
        let swap = OrthogonalTransform::new(CMatrix::zeros(n, n), w0).expect("partial swap");
        let rest = lift(&self.skew(d - n, scale));
        let core = OrthogonalTransform::direct_sum(&swap, &rest);
        let s1 = OrthogonalTransform::unitary(self.unitary(d)).expect("unitary");
        let s2 = OrthogonalTransform::unitary(self.unitary(d)).expect("unitary");
        s1.compose(&core)
            .and_then(|t| t.compose(&s2))
            .expect("same dimension")
    }

    pub fn supervector(&mut self, generators: usize, modes: usize, scale: f64) -> SuperVector {
        SuperVector::new(self.matrix(generators, modes, scale)).expect("sizes")
    }

    pub fn grassmann(&mut self, generators: usize, scale: f64) -> GrassmannElement {
        let coeffs = (0..1usize << generators)
            .map(|_| self.complex() * scale)
            .collect();
        GrassmannElement::from_coeffs(generators, coeffs).expect("sizes")
    }

    pub fn fock_vector(&mut self, modes: usize, scale: f64) -> FockVector {
        let amps = (0..1usize << modes)
            .map(|_| self.complex() * scale)
            .collect();
        FockVector::from_amplitudes(modes, amps).expect("sizes")
    }

    pub fn tensor(&mut self, generators: usize, modes: usize, scale: f64) -> ModuleTensor {
        let amps = (0..1usize << (generators + modes))
            .map(|_| self.complex() * scale)
            .collect();
        ModuleTensor::from_amplitudes(generators, modes, amps).expect("sizes")
    }

    /// Random tensor supported on basis elements of the given total parity.
    pub fn tensor_with_parity(
        &mut self,
        generators: usize,
        modes: usize,
        odd: bool,
        scale: f64,
    ) -> ModuleTensor {
        let amps = (0..1usize << (generators + modes))
            .map(|i| {
                let z = self.complex() * scale;
                if (i.count_ones() % 2 == 1) == odd {
                    z
                } else {
                    c(0.0, 0.0)
                }
            })
            .collect();
        ModuleTensor::from_amplitudes(generators, modes, amps).expect("sizes")
    }

    /// Random tensor in `Lambda (x) A_p`.
    pub fn tensor_of_degree(
        &mut self,
        generators: usize,
        modes: usize,
        p: usize,
        scale: f64,
    ) -> ModuleTensor {
        let mask = (1usize << modes) - 1;
        let amps = (0..1usize << (generators + modes))
            .map(|i| {
                let z = self.complex() * scale;
                if (i & mask).count_ones() as usize == p {
                    z
                } else {
                    c(0.0, 0.0)
                }
            })
            .collect();
        ModuleTensor::from_amplitudes(generators, modes, amps).expect("sizes")
    }
}
