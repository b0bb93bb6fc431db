//! Fermionic Fock space over a finite-dimensional one-particle space, its
//! Grassmann-valued super-module, and the unitary implementers of orthogonal
//! (Bogoliubov) transformations.
//!
//! Amplitudes are dense: a state on `d` modes carries `2^d` complex numbers
//! indexed by bitmask subsets, so everything here is exponential in `d`.
//! Dense operators are restricted to [`MAX_MODES`].

pub mod bogoliubov;
pub mod error;
pub mod fock;
pub mod gaussian;
pub mod grassmann;
pub mod linalg;
pub mod module;
pub mod orthogroup;
pub mod random;
pub mod subset;
pub mod weyl;

pub use error::{Error, Result};
pub use nalgebra::Complex;

/// Complex scalar used throughout.
pub type C64 = Complex<f64>;
/// Dense complex matrix.
pub type CMatrix = nalgebra::DMatrix<C64>;
/// Dense complex column vector.
pub type CVector = nalgebra::DVector<C64>;

/// Largest number of modes accepted by dense Fock operators.
pub const MAX_MODES: usize = 12;

/// Largest number of Grassmann generators accepted by the super-module.
pub const MAX_GENERATORS: usize = 12;

pub use bogoliubov::{
    c_norm, cocycle, implement_general, implement_invertible, intertwining_residual, module_lift,
    orbit_transform, t0_duality, vacuum_orbit, DualityBlock, Implementer, OrbitStep,
};
pub use fock::{annihilate, create, delta, gamma, FockOperator, FockVector};
pub use gaussian::{
    exp_omega, gaussian_norm, omega, overlap_det, pfaffian, skew_canonical, SkewCanonical,
    SkewMatrix,
};
pub use grassmann::{GrassmannElement, Parity};
pub use module::{
    b_minus, b_plus, coherent, ultracoherent, ModuleTensor, RegularOperator, SuperVector,
};
pub use orthogroup::{
    coset_coordinate, gen_inverse, kernel_decomposition, lift, CosetPoint, KernelDecomposition,
    OrthogonalTransform,
};
pub use weyl::{omega_form, weyl, WeylOperator};
