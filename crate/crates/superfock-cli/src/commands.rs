use std::path::{Path, PathBuf};

use superfock::linalg::identity;
use superfock::{
    cocycle, coset_coordinate, implement_general, intertwining_residual, kernel_decomposition,
    vacuum_orbit, OrthogonalTransform,
};

use crate::json::{self, read_transform, write_matrix, JsonMatrix, TransformFile};
use crate::report::Report;
use crate::CliError;

/// Above this many modes dense Fock operators get expensive.
const COST_WARNING_MODES: usize = 6;

fn load(path: &Path, tol: f64) -> Result<OrthogonalTransform, CliError> {
    let (u, v) = read_transform(path)?.matrices()?;
    // validation failures are mathematical, not parse errors
    Ok(OrthogonalTransform::with_tolerance(u, v, tol)?)
}

fn warn_cost(d: usize, report: &mut Report) {
    if d > COST_WARNING_MODES {
        report.warn(format!(
            "d = {d}: exponential cost, the Fock space has dimension 2^{d}"
        ));
    }
}

fn component(n: usize) -> &'static str {
    if n.is_multiple_of(2) {
        "identity"
    } else {
        "other"
    }
}

pub fn check(path: &Path, report: &mut Report) -> Result<(), CliError> {
    let (u, v) = read_transform(path)?.matrices()?;
    let r = OrthogonalTransform::new_unchecked(u, v)?;
    let res = r.residuals();
    report.residual("unitarity_left", res.unit_left);
    report.residual("unitarity_right", res.unit_right);
    report.residual("skew_left", res.skew_left);
    report.residual("skew_right", res.skew_right);
    report.output("d", r.dim());
    let kd = kernel_decomposition(&r)?;
    report.output("dim_ker_u", kd.n);
    report.output("dim_ker_u_dagger", kd.h0.len());
    report.output("singular_values_u", &kd.singular_values);
    if res.max() <= report.tolerance {
        report.output("component", component(kd.n));
    }
    Ok(())
}

pub fn implement(path: &Path, out: Option<&Path>, report: &mut Report) -> Result<(), CliError> {
    let r = load(path, report.tolerance)?;
    warn_cost(r.dim(), report);
    let t = implement_general(&r)?;
    let n = 1usize << r.dim();
    let unitarity = superfock::linalg::max_abs(&(t.matrix().adjoint() * t.matrix() - identity(n)));
    report.residual("unitarity", unitarity);
    report.residual("intertwining", intertwining_residual(&r, &t.operator)?);
    report.output("d", r.dim());
    report.output("kernel_dim", t.kernel_dim);
    match out {
        Some(p) => {
            write_matrix(p, t.matrix())?;
            report.output("matrix_file", p.display().to_string());
        }
        None => report.output("matrix", JsonMatrix::from_matrix(t.matrix())),
    }
    Ok(())
}

pub fn compose(paths: &[PathBuf], report: &mut Report) -> Result<(), CliError> {
    let [a, b] = paths else {
        return Err(CliError::Input(format!(
            "compose takes two inputs, got {}",
            paths.len()
        )));
    };
    let (ra, rb) = (load(a, report.tolerance)?, load(b, report.tolerance)?);
    if ra.dim() != rb.dim() {
        return Err(CliError::Input(format!(
            "inputs act on d = {} and d = {}",
            ra.dim(),
            rb.dim()
        )));
    }
    warn_cost(ra.dim(), report);
    let composed = ra.compose(&rb)?;
    let (chi, residual) = cocycle(&ra, &rb)?;
    report.residual("composed_orthogonality", composed.residuals().max());
    report.residual("chi_modulus_defect", (chi.norm() - 1.0).abs());
    report.residual("ray", residual);
    report.output("composed", TransformFile::from_transform(&composed));
    report.output("chi", json::complex(chi));
    Ok(())
}

pub fn vacuum(path: &Path, report: &mut Report) -> Result<(), CliError> {
    let r = load(path, report.tolerance)?;
    warn_cost(r.dim(), report);
    let phi = vacuum_orbit(&r)?;
    let coset = coset_coordinate(&r)?;
    report.residual("norm_defect", (phi.norm() - 1.0).abs());
    if coset.h0_basis.is_empty() {
        // on the invertible chart the vacuum overlap has a closed form
        let xm = coset.x.matrix();
        let det = (identity(r.dim()) + xm * xm.adjoint()).determinant().re;
        report.residual(
            "overlap_closed_form",
            (phi.amplitude(0).norm() - det.powf(-0.25)).abs(),
        );
    }
    report.output("d", r.dim());
    report.output("overlap", json::complex(phi.amplitude(0)));
    report.output("amplitudes", json::vector(&phi.to_cvector()));
    report.output("coset_x", JsonMatrix::from_matrix(coset.x.matrix()));
    let h0: Vec<_> = coset.h0_basis.iter().map(json::vector).collect();
    report.output("h0_basis", h0);
    Ok(())
}
