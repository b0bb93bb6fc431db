mod common;

use proptest::prelude::*;
use superfock::linalg::{c, identity, max_abs};
use superfock::random::Sampler;
use superfock::weyl::{
    generator, on_coherent, on_ultracoherent_tensor, weyl_factorize, weyl_restricted,
};
use superfock::*;

fn scalar_op(lambda: &GrassmannElement, d: usize) -> RegularOperator {
    RegularOperator::scalar(lambda, d)
}

/// Unitary on a random 2-dimensional `F` inside three modes, with the projector onto `F`.
fn subspace_unitary(s: &mut Sampler) -> (CMatrix, CMatrix) {
    let q = s.unitary(3);
    let inner = s.unitary(2);
    let mut block = CMatrix::zeros(3, 3);
    block.view_mut((0, 0), (2, 2)).copy_from(&inner);
    block[(2, 2)] = c(0.0, 1.0);
    let mut proj = CMatrix::zeros(3, 3);
    proj[(0, 0)] = c(1.0, 0.0);
    proj[(1, 1)] = c(1.0, 0.0);
    (&q * block * q.adjoint(), &q * proj * q.adjoint())
}

#[test]
fn zero_is_identity_and_ultracoherent_fixed() {
    let mut s = Sampler::new(1);
    let x = s.skew(3, 1.0);
    let xi = s.supervector(3, 3, 1.0);
    let zero = SuperVector::zero(3, 3);
    let psi = ultracoherent(&x, &xi).unwrap();
    assert!(weyl(&zero).unwrap().apply(&psi).unwrap().max_diff(&psi) < 1e-15);
    assert!(
        on_ultracoherent_tensor(&zero, &x, &xi)
            .unwrap()
            .max_diff(&psi)
            < 1e-15
    );
}

#[test]
fn omega_vanishes_on_the_diagonal() {
    let mut s = Sampler::new(2);
    let xi = s.supervector(3, 3, 1.0);
    assert!(omega_form(&xi, &xi).max_abs() < 1e-15);
}

#[test]
fn restricted_trivial_cases() {
    let mut s = Sampler::new(3);
    let eta = s.supervector(2, 3, 1.0);
    assert!(weyl_restricted(&identity(3), &identity(3), &eta).unwrap() < 1e-15);
    let u = s.unitary(3);
    assert!(weyl_restricted(&u, &identity(3), &eta).unwrap() <= 1e-10);
}

#[test]
fn factorize_with_one_factor_trivial() {
    let mut s = Sampler::new(4);
    let (g, d) = (2, 3);
    let (_, p1) = subspace_unitary(&mut s);
    let p2 = identity(d) - &p1;
    let eta = s.supervector(g, d, 1.0).map(&p1);
    let on1 = RegularOperator::lift(g, &gamma(&p1).unwrap());
    let on2 = RegularOperator::lift(g, &gamma(&p2).unwrap());
    let xi1 = on1.apply(&s.tensor_with_parity(g, d, false, 1.0)).unwrap();
    let xi2 = on2.apply(&s.tensor_with_parity(g, d, true, 1.0)).unwrap();
    let got = weyl_factorize(&eta, &p1, &xi1, &xi2).unwrap();
    let want = weyl(&eta)
        .unwrap()
        .apply(&xi1)
        .unwrap()
        .compose(&xi2)
        .unwrap();
    assert!(got.max_diff(&want) <= 1e-10);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn shift_on_coherent_vectors(seed in any::<u64>(), g in 1usize..=3, d in 1usize..=3) {
        let mut s = Sampler::new(seed);
        let eta = s.supervector(g, d, 1.0);
        let xi = s.supervector(g, d, 1.0);
        let lhs = weyl(&eta).unwrap().apply(&coherent(&xi)).unwrap();
        let arg = &eta.inner(&xi).scale(c(-1.0, 0.0)) - &eta.inner(&eta).scale(c(0.5, 0.0));
        let rhs = coherent(&(&eta + &xi)).left_mul(&arg.exp().unwrap()).unwrap();
        prop_assert!(lhs.max_diff(&rhs) <= 1e-10);
        let (pre, shifted) = on_coherent(&eta, &xi).unwrap();
        prop_assert!(coherent(&shifted).left_mul(&pre).unwrap().max_diff(&rhs) <= 1e-12);
    }

    #[test]
    fn group_law(seed in any::<u64>(), g in 1usize..=3, d in 1usize..=3) {
        let mut s = Sampler::new(seed);
        let xi = s.supervector(g, d, 1.0);
        let eta = s.supervector(g, d, 1.0);
        let lhs = weyl(&xi).unwrap().regular().compose(weyl(&eta).unwrap().regular()).unwrap();
        let phase = omega_form(&xi, &eta).scale(c(0.0, -1.0)).exp().unwrap();
        let rhs = scalar_op(&phase, d).compose(weyl(&(&xi + &eta)).unwrap().regular()).unwrap();
        prop_assert!(max_abs(&(lhs.to_dense() - rhs.to_dense())) <= 1e-9);
    }

    #[test]
    fn preserves_the_lambda_inner_product(seed in any::<u64>(), g in 1usize..=3, d in 1usize..=3) {
        let mut s = Sampler::new(seed);
        let w = weyl(&s.supervector(g, d, 1.0)).unwrap();
        let (a, b) = (s.tensor(g, d, 1.0), s.tensor(g, d, 1.0));
        let lhs = w.apply(&a).unwrap().lambda_inner(&w.apply(&b).unwrap()).unwrap();
        prop_assert!(lhs.max_diff(&a.lambda_inner(&b).unwrap()) <= 1e-10);
    }

    #[test]
    fn superadjoint_is_inverse(seed in any::<u64>(), g in 1usize..=3, d in 1usize..=3) {
        let mut s = Sampler::new(seed);
        let eta = s.supervector(g, d, 1.0);
        let w = weyl(&eta).unwrap();
        let minus = weyl(&eta.scale(c(-1.0, 0.0))).unwrap();
        let dim = 1usize << (g + d);
        prop_assert!(max_abs(&(w.regular().superadjoint().to_dense() - minus.dense())) <= 1e-10);
        prop_assert!(max_abs(&(w.dense() * minus.dense() - CMatrix::identity(dim, dim))) <= 1e-10);
        prop_assert!(max_abs(&(w.dense() - w.dense_exponential().unwrap())) <= 1e-9);
    }

    #[test]
    fn ultracoherent_action(seed in any::<u64>(), g in 1usize..=3, d in 1usize..=3) {
        let mut s = Sampler::new(seed);
        let eta = s.supervector(g, d, 1.0);
        let xi = s.supervector(g, d, 1.0);
        let x = s.skew(d, 1.0);
        let lhs = weyl(&eta).unwrap().apply(&ultracoherent(&x, &xi).unwrap()).unwrap();
        prop_assert!(lhs.max_diff(&on_ultracoherent_tensor(&eta, &x, &xi).unwrap()) <= 1e-9);
    }

    #[test]
    fn ultracoherent_vacuum_shifts(seed in any::<u64>(), g in 1usize..=3, d in 1usize..=3) {
        let mut s = Sampler::new(seed);
        let x = s.skew(d, 0.8);
        let xm = x.matrix();
        let psi = ultracoherent(&x, &SuperVector::zero(g, d)).unwrap();
        // W(eta) Psi(X) = exp(-1/2 <eta*||eta - X eta*>) Psi(X, eta - X eta*)
        let eta = s.supervector(g, d, 1.0);
        let shift = &eta - &eta.conj().map(xm);
        let pre = eta.inner(&shift).scale(c(-0.5, 0.0)).exp().unwrap();
        let lhs = weyl(&eta).unwrap().apply(&psi).unwrap();
        prop_assert!(lhs.max_diff(&ultracoherent(&x, &shift).unwrap().left_mul(&pre).unwrap()) <= 1e-10);
        // solved for the target: eta = B xi + A xi* reaches Psi(X, xi)
        let xi = s.supervector(g, d, 1.0);
        let bm = (identity(d) + xm * xm.adjoint()).try_inverse().unwrap();
        let am = xm * (identity(d) + xm.adjoint() * xm).try_inverse().unwrap();
        let eta = &xi.map(&bm) + &xi.conj().map(&am);
        let arg = &xi.inner(&xi.map(&bm)) + &xi.conj().inner(&xi.map(&am.adjoint()));
        let want = ultracoherent(&x, &xi).unwrap().left_mul(&arg.scale(c(-0.5, 0.0)).exp().unwrap()).unwrap();
        prop_assert!(weyl(&eta).unwrap().apply(&psi).unwrap().max_diff(&want) <= 1e-10);
    }

    #[test]
    fn generator_is_the_derivative(seed in any::<u64>(), g in 1usize..=3, d in 1usize..=3) {
        let mut s = Sampler::new(seed);
        let eta = s.supervector(g, d, 1.0);
        let psi = coherent(&s.supervector(g, d, 1.0));
        let h = 1e-5;
        let up = weyl(&eta.scale(c(h, 0.0))).unwrap().apply(&psi).unwrap();
        let down = weyl(&eta.scale(c(-h, 0.0))).unwrap().apply(&psi).unwrap();
        let fd = (&up - &down).scale(c(0.5 / h, 0.0));
        let exact = generator(&eta).unwrap().apply(&psi).unwrap();
        prop_assert!(fd.max_diff(&exact) <= 1e-7);
    }

    #[test]
    fn omega_is_antisymmetric_and_invariant(seed in any::<u64>(), g in 1usize..=3, d in 1usize..=4, n in 0usize..=2) {
        prop_assume!(n <= d);
        let mut s = Sampler::new(seed);
        let xi = s.supervector(g, d, 1.0);
        let eta = s.supervector(g, d, 1.0);
        let w = omega_form(&xi, &eta);
        prop_assert!((&w + &omega_form(&eta, &xi)).max_abs() <= 1e-14);
        let r = s.singular_transform(d, n, 1.0);
        let moved = omega_form(&r.apply_supervector(&xi), &r.apply_supervector(&eta));
        prop_assert!(moved.max_diff(&w) <= 1e-10);
    }

    #[test]
    fn restricted_unitary_moves_the_argument(seed in any::<u64>(), g in 1usize..=3) {
        let mut s = Sampler::new(seed);
        let (su, p) = subspace_unitary(&mut s);
        let eta = s.supervector(g, 3, 1.0).map(&p);
        prop_assert!(weyl_restricted(&su, &p, &eta).unwrap() <= 1e-10);
    }

    #[test]
    fn factorizes_over_orthogonal_subspaces(seed in any::<u64>(), g in 1usize..=2, odd in any::<bool>()) {
        let mut s = Sampler::new(seed);
        let d = 3;
        let (_, p1) = subspace_unitary(&mut s);
        let p2 = identity(d) - &p1;
        let eta = s.supervector(g, d, 1.0);
        let on1 = RegularOperator::lift(g, &gamma(&p1).unwrap());
        let on2 = RegularOperator::lift(g, &gamma(&p2).unwrap());
        let xi1 = on1.apply(&s.tensor_with_parity(g, d, odd, 1.0)).unwrap();
        let xi2 = on2.apply(&s.tensor(g, d, 1.0)).unwrap();
        let got = weyl_factorize(&eta, &p1, &xi1, &xi2).unwrap();
        let want = weyl(&eta).unwrap().apply(&xi1.compose(&xi2).unwrap()).unwrap();
        prop_assert!(got.max_diff(&want) <= 1e-10);
    }
}
