mod common;

use common::unit;
use proptest::prelude::*;
use superfock::linalg::{c, identity, max_abs, RowSpace};
use superfock::module::{pairing_rank, probe_family, probe_fock_span, ProbeGenerators};
use superfock::random::Sampler;
use superfock::subset::factorial;
use superfock::*;

fn vacuum(g: usize, d: usize) -> ModuleTensor {
    ModuleTensor::embed(g, &FockVector::vacuum(d))
}

/// Random tensor with Fock support inside the modes of `mask` and the given total parity.
fn supported(s: &mut Sampler, g: usize, d: usize, mask: usize, odd: bool) -> ModuleTensor {
    let t = s.tensor_with_parity(g, d, odd, 1.0);
    let full = (1usize << d) - 1;
    let amps = t
        .amplitudes()
        .iter()
        .enumerate()
        .map(|(i, z)| {
            if i & full & !mask == 0 {
                *z
            } else {
                c(0.0, 0.0)
            }
        })
        .collect();
    ModuleTensor::from_amplitudes(g, d, amps).unwrap()
}

fn random_regular(s: &mut Sampler, g: usize, d: usize) -> RegularOperator {
    let n = 1usize << d;
    let terms: Vec<_> = (0..3)
        .map(|_| {
            let t = FockOperator::from_matrix(d, s.matrix(n, n, 1.0)).unwrap();
            (s.grassmann(g, 1.0), t)
        })
        .collect();
    RegularOperator::from_terms(g, d, &terms).unwrap()
}

fn bil(a: &SuperVector, t: &CMatrix, b: &SuperVector) -> GrassmannElement {
    a.conj().inner(&b.map(t))
}

#[test]
fn vacuum_is_the_unit() {
    let mut s = Sampler::new(2);
    let xi = s.tensor(2, 3, 1.0);
    let v = vacuum(2, 3);
    assert_eq!(v.compose(&xi).unwrap(), xi);
    assert_eq!(xi.compose(&v).unwrap(), xi);
}

#[test]
fn graded_sign_of_the_product_on_basis() {
    let (g, d) = (3, 3);
    for i in 0..(1usize << (g + d)) {
        for j in 0..(1usize << (g + d)) {
            let (k, a) = (i >> d, i & 7);
            let (l, b) = (j >> d, j & 7);
            let x = ModuleTensor::basis(g, d, k, a);
            let y = ModuleTensor::basis(g, d, l, b);
            let xy = x.compose(&y).unwrap();
            let yx = y.compose(&x).unwrap();
            let deg = |m: usize| m.count_ones() as usize;
            let exponent = deg(k) * deg(l) + deg(a) * deg(b);
            let s = if exponent % 2 == 1 { -1.0 } else { 1.0 };
            assert_eq!(xy, yx.scale(c(s, 0.0)));
        }
    }
}

#[test]
fn odd_fock_tensors_anticommute() {
    let (g, d) = (3, 3);
    let x = ModuleTensor::basis(g, d, 0b011, 0b001);
    let y = ModuleTensor::basis(g, d, 0b100, 0b010);
    let xy = x.compose(&y).unwrap();
    assert_eq!(xy, y.compose(&x).unwrap().scale(c(-1.0, 0.0)));
    assert!(xy.max_abs() > 0.0);
}

#[test]
fn lambda_inner_examples() {
    let v = vacuum(2, 2);
    assert_eq!(v.lambda_inner(&v).unwrap(), GrassmannElement::one(2));
    let xi = SuperVector::single(2, 0, &unit(2, 0));
    let e = coherent(&xi);
    assert!(
        e.lambda_inner(&e)
            .unwrap()
            .max_diff(&GrassmannElement::one(2))
            < 1e-15
    );
}

#[test]
fn coherent_examples() {
    assert_eq!(coherent(&SuperVector::zero(2, 2)), vacuum(2, 2));
    let xi = SuperVector::single(2, 0, &unit(2, 0));
    let want = &vacuum(2, 2) + &ModuleTensor::basis(2, 2, 0b01, 0b01);
    assert_eq!(coherent(&xi), want);
}

#[test]
fn ultracoherent_of_zero_is_vacuum() {
    let u = ultracoherent(&SkewMatrix::zero(3), &SuperVector::zero(2, 3)).unwrap();
    assert_eq!(u, vacuum(2, 3));
}

#[test]
fn ultracoherent_is_even_and_factorises_both_ways() {
    let mut s = Sampler::new(12);
    let (x, xi) = (s.skew(3, 1.0), s.supervector(3, 3, 1.0));
    let psi = ultracoherent(&x, &xi).unwrap();
    assert_eq!(psi.parity(), Some(Parity::Even));
    let gauss = ModuleTensor::embed(3, &exp_omega(&x).unwrap());
    let other = gauss.compose(&coherent(&xi)).unwrap();
    assert!(psi.max_diff(&other) < 1e-14);
}

#[test]
fn b_operators_on_the_vacuum() {
    let mut s = Sampler::new(5);
    let eta = s.supervector(2, 3, 1.0);
    let v = vacuum(2, 3);
    assert!(
        b_plus(&eta)
            .unwrap()
            .apply(&v)
            .unwrap()
            .max_diff(&eta.to_tensor())
            < 1e-15
    );
    assert_eq!(b_minus(&eta).unwrap().apply(&v).unwrap().max_abs(), 0.0);
}

#[test]
fn superadjoint_examples() {
    let id = RegularOperator::identity(2, 2);
    assert!(max_abs(&(id.superadjoint().to_dense() - id.to_dense())) == 0.0);
    let mut s = Sampler::new(6);
    let t = FockOperator::from_matrix(2, s.matrix(4, 4, 1.0)).unwrap();
    let k1 = GrassmannElement::generator(2, 0);
    let op = RegularOperator::from_terms(2, 2, &[(k1.clone(), t.clone())]).unwrap();
    let want = RegularOperator::from_terms(2, 2, &[(k1, t.adjoint())]).unwrap();
    assert!(max_abs(&(op.superadjoint().to_dense() - want.to_dense())) < 1e-15);
}

#[test]
fn weighted_norm_is_monotone() {
    let mut s = Sampler::new(7);
    let t = s.tensor(2, 4, 1.0);
    let mut prev = t.weighted_norm(0.0);
    assert!((prev - t.norm()).abs() < 1e-15);
    for alpha in [0.25, 0.5, 1.0, 1.5, 2.0] {
        let w = t.weighted_norm(alpha);
        assert!(w >= prev);
        prev = w;
    }
}

#[test]
fn coherent_vectors_separate_with_fresh_probe_generators() {
    for d in 1..=3 {
        let r = pairing_rank(d, d, ProbeGenerators::Fresh(d), 1e-9).unwrap();
        assert_eq!(r.rank, 1 << (2 * d), "d={d}");
    }
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn shared_generators_leave_high_degree_tensors_unseen() {
    // kappa_L (x) e_B pairs to zero with every exp zeta once |L| + |B| > G
    for d in 1..=3 {
        let r = pairing_rank(d, d, ProbeGenerators::Shared, 1e-9).unwrap();
        let seen: usize = (0..=d).map(|k| binomial(2 * d, k)).sum();
        assert_eq!(r.rank, seen, "d={d}");
        let top = ModuleTensor::basis(d, d, (1 << d) - 1, 1);
        for zeta in probe_family(d, d).take(200) {
            assert_eq!(coherent(&zeta).lambda_inner(&top).unwrap().max_abs(), 0.0);
        }
    }
}

#[test]
fn probe_components_span_the_fock_space() {
    for d in 1..=3 {
        assert!(probe_fock_span(d, d, 1e-9).is_full(), "d={d}");
    }
}

#[test]
fn regular_operators_are_determined_by_probes() {
    // T -> (T exp zeta_i)_i is injective on operators sum_K kappa_K (x) T_K
    let (g, d, gp) = (1, 2, 2);
    let total = g + gp;
    let n = 1usize << d;
    let probes: Vec<ModuleTensor> = probe_family(gp, d)
        .map(|z| coherent(&z.shifted(g, total)))
        .collect();
    let unknowns = (1usize << g) * n * n;
    let mut space = RowSpace::new(probes.len() * (1 << (total + d)), 1e-9);
    for k in 0..(1usize << g) {
        for a in 0..n {
            for b in 0..n {
                let mut m = CMatrix::zeros(n, n);
                m[(a, b)] = c(1.0, 0.0);
                let t = FockOperator::from_matrix(d, m).unwrap();
                let op = RegularOperator::from_terms(g, d, &[(GrassmannElement::basis(g, k), t)])
                    .unwrap()
                    .extend_generators(total);
                let mut out = Vec::new();
                for p in &probes {
                    out.extend_from_slice(op.apply(p).unwrap().amplitudes());
                }
                space.push(&CVector::from_vec(out));
            }
        }
    }
    assert_eq!(space.rank(), unknowns);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn product_is_associative(seed in any::<u64>(), g in 1usize..=3, d in 1usize..=3) {
        let mut s = Sampler::new(seed);
        let (a, b, e) = (s.tensor(g, d, 1.0), s.tensor(g, d, 1.0), s.tensor(g, d, 1.0));
        let l = a.compose(&b).unwrap().compose(&e).unwrap();
        let r = a.compose(&b.compose(&e).unwrap()).unwrap();
        prop_assert!(l.max_diff(&r) <= 1e-12 * (1.0 + l.max_abs()));
    }

    #[test]
    fn supervector_product_norm_bound(seed in any::<u64>(), g in 1usize..=4, d in 1usize..=4) {
        let mut s = Sampler::new(seed);
        let xi = s.supervector(g, d, 1.0);
        let th = s.tensor(g, d, 1.0);
        let lhs = xi.to_tensor().compose(&th).unwrap().norm();
        prop_assert!(lhs <= xi.norm() * th.norm() * (1.0 + 1e-12));
        prop_assert!((xi.to_tensor().norm() - xi.norm()).abs() <= 1e-13);
    }

    #[test]
    fn homogeneous_product_norm_bound(seed in any::<u64>(), g in 1usize..=3, d in 2usize..=4, p in 0usize..=2, q in 0usize..=2) {
        prop_assume!(p + q <= d);
        let mut s = Sampler::new(seed);
        let a = s.tensor_of_degree(g, d, p, 1.0);
        let b = s.tensor_of_degree(g, d, q, 1.0);
        let k = (3.0 * factorial(p + q) / (factorial(p) * factorial(q))).sqrt();
        prop_assert!(a.compose(&b).unwrap().norm() <= k * a.norm() * b.norm() * (1.0 + 1e-12));
    }

    #[test]
    fn lambda_inner_is_hermitian_and_bounded(seed in any::<u64>(), g in 1usize..=3, d in 1usize..=3) {
        let mut s = Sampler::new(seed);
        let (a, b) = (s.tensor(g, d, 1.0), s.tensor(g, d, 1.0));
        let ab = a.lambda_inner(&b).unwrap();
        let ba = b.lambda_inner(&a).unwrap();
        prop_assert!(ab.star().max_diff(&ba) <= 1e-13);
        prop_assert!(ab.norm() <= 3f64.sqrt() * a.norm() * b.norm());
    }

    #[test]
    fn coherent_vectors_multiply(seed in any::<u64>(), g in 1usize..=3, d in 1usize..=3) {
        let mut s = Sampler::new(seed);
        let (xi, eta) = (s.supervector(g, d, 1.0), s.supervector(g, d, 1.0));
        let lhs = coherent(&xi).compose(&coherent(&eta)).unwrap();
        prop_assert!(lhs.max_diff(&coherent(&(&xi + &eta))) <= 1e-12);
    }

    #[test]
    fn coherent_inner_product(seed in any::<u64>(), g in 1usize..=4, d in 1usize..=4) {
        let mut s = Sampler::new(seed);
        let (xi, eta) = (s.supervector(g, d, 1.0), s.supervector(g, d, 1.0));
        let lhs = coherent(&xi).lambda_inner(&coherent(&eta)).unwrap();
        let rhs = xi.inner(&eta).exp().unwrap();
        prop_assert!(lhs.max_diff(&rhs) <= 1e-12 * (1.0 + rhs.max_abs()));
    }

    #[test]
    fn coherent_against_ultracoherent(seed in any::<u64>(), g in 1usize..=3, d in 1usize..=4) {
        let mut s = Sampler::new(seed);
        let (xi, eta, x) = (s.supervector(g, d, 0.8), s.supervector(g, d, 0.8), s.skew(d, 0.8));
        let lhs = coherent(&xi).lambda_inner(&ultracoherent(&x, &eta).unwrap()).unwrap();
        let rhs = xi.inner(&(&eta + &xi.conj().map(x.matrix()).scale(c(0.5, 0.0)))).exp().unwrap();
        prop_assert!(lhs.max_diff(&rhs) <= 1e-12 * (1.0 + rhs.max_abs()));
        let zero = SuperVector::zero(g, d);
        let lhs0 = coherent(&xi).lambda_inner(&ultracoherent(&x, &zero).unwrap()).unwrap();
        let rhs0 = xi.inner(&xi.conj().map(x.matrix())).scale(c(0.5, 0.0)).exp().unwrap();
        prop_assert!(lhs0.max_diff(&rhs0) <= 1e-12 * (1.0 + rhs0.max_abs()));
    }

    #[test]
    fn ultracoherent_self_inner_product(seed in any::<u64>(), g in 1usize..=3, d in 1usize..=4) {
        let mut s = Sampler::new(seed);
        let (xi, x) = (s.supervector(g, d, 0.8), s.skew(d, 0.8));
        let psi = ultracoherent(&x, &xi).unwrap();
        let lhs = psi.lambda_inner(&psi).unwrap();
        let xm = x.matrix();
        let a = xm * (identity(d) + xm.adjoint() * xm).try_inverse().unwrap();
        let b = (identity(d) + xm * xm.adjoint()).try_inverse().unwrap();
        let xs = xi.conj();
        let arg = &(&bil(&xs, &a, &xs).scale(c(0.5, 0.0)) + &bil(&xs, &b, &xi))
            + &bil(&xi, &a.adjoint(), &xi).scale(c(0.5, 0.0));
        let rhs = arg.exp().unwrap().scale(c(gaussian_norm(&x).powi(2), 0.0));
        prop_assert!(lhs.max_diff(&rhs) <= 1e-11 * (1.0 + rhs.max_abs()));
    }

    #[test]
    fn coherent_pairing_is_multiplicative_on_even_tensors(seed in any::<u64>(), g in 1usize..=3, d in 1usize..=3) {
        let mut s = Sampler::new(seed);
        let xi = s.supervector(g, d, 1.0);
        let th = s.tensor_with_parity(g, d, false, 1.0);
        let ps = s.tensor_with_parity(g, d, false, 1.0);
        let e = coherent(&xi);
        let lhs = e.lambda_inner(&th.compose(&ps).unwrap()).unwrap();
        let rhs = e.lambda_inner(&th).unwrap().product(&e.lambda_inner(&ps).unwrap());
        prop_assert!(lhs.max_diff(&rhs) <= 1e-11 * (1.0 + rhs.max_abs()));
    }

    #[test]
    fn inner_product_factorises_over_orthogonal_modes(seed in any::<u64>(), g in 1usize..=3, odd in any::<bool>(), odd2 in any::<bool>(), odd3 in any::<bool>()) {
        let d = 4;
        let (m1, m2) = (0b0011, 0b1100);
        let mut s = Sampler::new(seed);
        let t1 = supported(&mut s, g, d, m1, odd);
        let x1 = supported(&mut s, g, d, m1, odd);
        let t2 = supported(&mut s, g, d, m2, odd2);
        let x2 = supported(&mut s, g, d, m2, odd3);
        let lhs = t1.compose(&t2).unwrap().lambda_inner(&x1.compose(&x2).unwrap()).unwrap();
        let rhs = t1.lambda_inner(&x1).unwrap().product(&t2.lambda_inner(&x2).unwrap());
        prop_assert!(lhs.max_diff(&rhs) <= 1e-11 * (1.0 + rhs.max_abs()));
    }

    #[test]
    fn b_operators_on_coherent_vectors(seed in any::<u64>(), g in 1usize..=3, d in 1usize..=3) {
        let mut s = Sampler::new(seed);
        let (xi, eta) = (s.supervector(g, d, 1.0), s.supervector(g, d, 1.0));
        let e = coherent(&xi);
        let plus = b_plus(&eta).unwrap().apply(&e).unwrap();
        prop_assert!(plus.max_diff(&eta.to_tensor().compose(&e).unwrap()) <= 1e-13);
        let minus = b_minus(&eta).unwrap().apply(&e).unwrap();
        let want = e.left_mul(&eta.inner(&xi)).unwrap();
        prop_assert!(minus.max_diff(&want) <= 1e-12);
    }

    #[test]
    fn b_operator_norm_bounds(seed in any::<u64>(), g in 1usize..=3, d in 1usize..=3) {
        let mut s = Sampler::new(seed);
        let eta = s.supervector(g, d, 1.0);
        let t = s.tensor(g, d, 1.0);
        let bp = b_plus(&eta).unwrap().apply(&t).unwrap().norm();
        let bm = b_minus(&eta).unwrap().apply(&t).unwrap().norm();
        prop_assert!(bp <= eta.norm() * t.norm() * (1.0 + 1e-12));
        prop_assert!(bm <= eta.norm() * t.norm() * (1.0 + 1e-12));
    }

    #[test]
    fn module_anticommutation_relations(seed in any::<u64>(), g in 1usize..=3, d in 1usize..=3) {
        let mut s = Sampler::new(seed);
        let (xi, eta) = (s.supervector(g, d, 1.0), s.supervector(g, d, 1.0));
        let (mx, pe) = (b_minus(&xi).unwrap(), b_plus(&eta).unwrap());
        let comm = mx.compose(&pe).unwrap().sub(&pe.compose(&mx).unwrap());
        let want = RegularOperator::scalar(&xi.inner(&eta), d);
        prop_assert!(max_abs(&(comm.to_dense() - want.to_dense())) <= 1e-12);
        let px = b_plus(&xi).unwrap();
        let cc = px.compose(&pe).unwrap().sub(&pe.compose(&px).unwrap());
        prop_assert!(cc.max_abs() <= 1e-12);
    }

    #[test]
    fn superadjoint_identity(seed in any::<u64>(), g in 1usize..=2, d in 1usize..=3) {
        let mut s = Sampler::new(seed);
        let t = random_regular(&mut s, g, d);
        let (a, b) = (s.tensor(g, d, 1.0), s.tensor(g, d, 1.0));
        let lhs = a.lambda_inner(&t.apply(&b).unwrap()).unwrap();
        let rhs = t.superadjoint().apply(&a).unwrap().lambda_inner(&b).unwrap();
        prop_assert!(lhs.max_diff(&rhs) <= 1e-11 * (1.0 + lhs.max_abs()));
    }
}
