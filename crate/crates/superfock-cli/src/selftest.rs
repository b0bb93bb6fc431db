//! Invariant battery on seeded random data.

use superfock::linalg::{c, identity, max_abs};
use superfock::random::Sampler;
use superfock::weyl::{on_ultracoherent_tensor, weyl_factorize, weyl_restricted};
use superfock::{
    annihilate, coherent, coset_coordinate, create, exp_omega, gamma, implement_general,
    implement_invertible, intertwining_residual, module_lift, omega_form, overlap_det,
    ultracoherent, vacuum_orbit, weyl, CMatrix, CVector, FockOperator, OrthogonalTransform,
    RegularOperator,
};

use crate::report::Report;
use crate::CliError;

/// Module checks build dense operators of size `2^(G + d)`.
const MODULE_MAX_MODES: usize = 6;
const TRIALS: usize = 5;

/// Unitary commuting with a random rank-`k` projector, and that projector.
fn block_unitary(s: &mut Sampler, d: usize, k: usize) -> (CMatrix, CMatrix) {
    let q = s.unitary(d);
    let mut block = CMatrix::zeros(d, d);
    let mut proj = CMatrix::zeros(d, d);
    block.view_mut((0, 0), (k, k)).copy_from(&s.unitary(k));
    block
        .view_mut((k, k), (d - k, d - k))
        .copy_from(&s.unitary(d - k));
    for i in 0..k {
        proj[(i, i)] = c(1.0, 0.0);
    }
    (&q * block * q.adjoint(), &q * proj * q.adjoint())
}

fn car(d: usize) -> Result<f64, CliError> {
    let unit = |k: usize| {
        let mut v = CVector::zeros(d);
        v[k] = c(1.0, 0.0);
        v
    };
    let (id, zero) = (FockOperator::identity(d), FockOperator::zero(d));
    let mut worst: f64 = 0.0;
    for i in 0..d {
        let (ai, ci) = (annihilate(&unit(i))?, create(&unit(i))?);
        for j in 0..d {
            let (aj, cj) = (annihilate(&unit(j))?, create(&unit(j))?);
            let mixed = &(&ai * &cj) + &(&cj * &ai);
            worst = worst.max(mixed.max_diff(if i == j { &id } else { &zero }));
            worst = worst.max((&(&ai * &aj) + &(&aj * &ai)).max_diff(&zero));
            worst = worst.max((&(&ci * &cj) + &(&cj * &ci)).max_diff(&zero));
        }
    }
    Ok(worst)
}

fn fock_checks(s: &mut Sampler, d: usize, report: &mut Report) -> Result<(), CliError> {
    report.residual("car", car(d)?);

    let mut det_err: f64 = 0.0;
    let mut impl_err: f64 = 0.0;
    let mut overlap_err: f64 = 0.0;
    let mut unitary_factor_err: f64 = 0.0;
    for t in 0..TRIALS {
        let (x, y) = (s.skew(d, 1.0), s.skew(d, 1.0));
        let ov = exp_omega(&x)?.inner(&exp_omega(&y)?)?;
        let det = overlap_det(&x, &y)?;
        det_err = det_err.max((ov * ov - det).norm() / det.norm().max(1.0));

        let r = s.singular_transform(d, t % 3 % (d + 1), 1.0);
        let imp = implement_general(&r)?;
        impl_err = impl_err.max(intertwining_residual(&r, &imp.operator)?);

        let ri = s.invertible_transform(d, 1.0);
        let phi = vacuum_orbit(&ri)?;
        let xm = coset_coordinate(&ri)?.x.into_matrix();
        let want = (identity(d) + &xm * xm.adjoint())
            .determinant()
            .re
            .powf(-0.25);
        overlap_err = overlap_err.max((phi.amplitude(0) - c(want, 0.0)).norm());

        let sm = s.unitary(d);
        let right = OrthogonalTransform::new(r.u() * &sm, r.v() * sm.conjugate())?;
        let lhs = &imp.operator * &gamma(&sm)?;
        unitary_factor_err =
            unitary_factor_err.max(lhs.max_diff(&implement_general(&right)?.operator));
    }
    report.residual("pfaffian_determinant", det_err);
    report.residual("implementer_intertwining", impl_err);
    report.residual("vacuum_overlap", overlap_err);
    report.residual("right_unitary_factor", unitary_factor_err);
    Ok(())
}

fn module_checks(s: &mut Sampler, g: usize, d: usize, report: &mut Report) -> Result<(), CliError> {
    let mut worst = [0.0f64; 9];
    for _ in 0..TRIALS {
        let (xi, eta) = (s.supervector(g, d, 1.0), s.supervector(g, d, 1.0));
        let x = s.skew(d, 0.8);

        let lhs = coherent(&xi).lambda_inner(&coherent(&eta))?;
        worst[0] = worst[0].max(lhs.max_diff(&xi.inner(&eta).exp()?));

        let lhs = coherent(&xi).lambda_inner(&ultracoherent(&x, &eta)?)?;
        let shifted = &eta + &xi.conj().map(x.matrix()).scale(c(0.5, 0.0));
        worst[1] = worst[1].max(lhs.max_diff(&xi.inner(&shifted).exp()?));

        let lhs = weyl(&xi)?.regular().compose(weyl(&eta)?.regular())?;
        let phase = omega_form(&xi, &eta).scale(c(0.0, -1.0)).exp()?;
        let rhs = RegularOperator::scalar(&phase, d).compose(weyl(&(&xi + &eta))?.regular())?;
        worst[2] = worst[2].max(max_abs(&(lhs.to_dense() - rhs.to_dense())));

        let w = weyl(&eta)?;
        let (a, b) = (s.tensor(g, d, 1.0), s.tensor(g, d, 1.0));
        let moved = w.apply(&a)?.lambda_inner(&w.apply(&b)?)?;
        worst[3] = worst[3].max(moved.max_diff(&a.lambda_inner(&b)?));

        let direct = w.apply(&ultracoherent(&x, &xi)?)?;
        worst[4] = worst[4].max(direct.max_diff(&on_ultracoherent_tensor(&eta, &x, &xi)?));

        let (su, p) = block_unitary(s, d, d.div_ceil(2));
        worst[5] = worst[5].max(weyl_restricted(&su, &p, &eta.map(&p))?);

        let p2 = identity(d) - &p;
        let on1 = RegularOperator::lift(g, &gamma(&p)?);
        let on2 = RegularOperator::lift(g, &gamma(&p2)?);
        let xi1 = on1.apply(&s.tensor_with_parity(g, d, true, 1.0))?;
        let xi2 = on2.apply(&s.tensor(g, d, 1.0))?;
        let split = weyl_factorize(&eta, &p, &xi1, &xi2)?;
        worst[6] = worst[6].max(split.max_diff(&w.apply(&xi1.compose(&xi2)?)?));

        let r = s.invertible_transform(d, 1.0);
        let t = module_lift(&implement_invertible(&r)?.operator, g).to_dense();
        let lhs = &t * weyl(&xi)?.dense();
        let rhs = weyl(&r.apply_supervector(&xi))?.dense() * &t;
        worst[7] = worst[7].max(max_abs(&(lhs - rhs)));

        worst[8] = worst[8].max(max_abs(&(w.dense() - w.dense_exponential()?)));
    }
    let names = [
        "coherent_inner_product",
        "coherent_ultracoherent_pairing",
        "weyl_group_law",
        "weyl_isometry",
        "weyl_on_ultracoherent",
        "weyl_restricted",
        "weyl_factorization",
        "module_intertwining",
        "weyl_realizations",
    ];
    for (name, w) in names.iter().zip(worst) {
        report.residual(name, w);
    }
    Ok(())
}

pub fn run(
    modes: usize,
    generators: usize,
    seed: u64,
    report: &mut Report,
) -> Result<(), CliError> {
    if modes == 0 {
        return Err(CliError::Input("selftest needs at least one mode".into()));
    }
    report.output("modes", modes);
    report.output("generators", generators);
    report.output("seed", seed);
    if modes > MODULE_MAX_MODES {
        report.warn(format!(
            "d = {modes}: exponential cost, the Fock space has dimension 2^{modes}"
        ));
    }
    let mut s = Sampler::new(seed);
    fock_checks(&mut s, modes, report)?;
    if generators == 0 {
        report.warn("G = 0: module checks skipped");
    } else if modes > MODULE_MAX_MODES {
        report.warn(format!(
            "module checks skipped: they need d <= {MODULE_MAX_MODES}"
        ));
    } else {
        module_checks(&mut s, generators, modes, report)?;
    }
    let passed: Vec<String> = report
        .residuals
        .iter()
        .filter(|(_, v)| **v <= report.tolerance)
        .map(|(k, _)| k.clone())
        .collect();
    report.output("passed", passed);
    Ok(())
}
