//! Weyl operators `W(eta) = exp(b+(eta) - b-(eta))` on the super-module.
//!
//! The generator only carries odd Grassmann coefficients, so every series
//! here terminates after at most `G + 1` terms.

use crate::fock::gamma;
use crate::gaussian::SkewMatrix;
use crate::grassmann::{GrassmannElement, Parity};
use crate::linalg::c;
use crate::module::{b_minus, b_plus, ultracoherent, ModuleTensor, RegularOperator, SuperVector};
use crate::{CMatrix, Error, Result};

/// `omega(xi, eta) = ((xi|eta) - (eta|xi)) / 2i`.
pub fn omega_form(xi: &SuperVector, eta: &SuperVector) -> GrassmannElement {
    let diff = &xi.inner(eta) - &eta.inner(xi);
    diff.scale(c(0.0, -0.5))
}

/// `D_eta = b+(eta) - b-(eta)`.
pub fn generator(eta: &SuperVector) -> Result<RegularOperator> {
    Ok(b_plus(eta)?.sub(&b_minus(eta)?))
}

/// Series `sum_k A^k / k!` of an operator without `kappa_0` part.
fn exp_nilpotent(a: &RegularOperator) -> Result<RegularOperator> {
    let mut out = RegularOperator::identity(a.generators(), a.modes());
    let mut term = out.clone();
    for k in 1..=a.generators() {
        term = term.compose(a)?.scale(c(1.0 / k as f64, 0.0));
        if term.max_abs() == 0.0 {
            break;
        }
        out = out.add(&term);
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct WeylOperator {
    eta: SuperVector,
    op: RegularOperator,
}

/// Normal-ordered form `exp(-(eta|eta)/2) exp(b+(eta)) exp(-b-(eta))`.
pub fn weyl(eta: &SuperVector) -> Result<WeylOperator> {
    let pre = eta.inner(eta).scale(c(-0.5, 0.0)).exp()?;
    let plus = exp_nilpotent(&b_plus(eta)?)?;
    let minus = exp_nilpotent(&b_minus(eta)?.scale(c(-1.0, 0.0)))?;
    let op = RegularOperator::scalar(&pre, eta.modes())
        .compose(&plus)?
        .compose(&minus)?;
    Ok(WeylOperator {
        eta: eta.clone(),
        op,
    })
}

impl WeylOperator {
    pub fn eta(&self) -> &SuperVector {
        &self.eta
    }

    pub fn regular(&self) -> &RegularOperator {
        &self.op
    }

    pub fn apply(&self, xi: &ModuleTensor) -> Result<ModuleTensor> {
        self.op.apply(xi)
    }

    pub fn dense(&self) -> CMatrix {
        self.op.to_dense()
    }

    /// Independent realisation: the dense matrix exponential of `D_eta`.
    pub fn dense_exponential(&self) -> Result<CMatrix> {
        Ok(generator(&self.eta)?.to_dense().exp())
    }
}

/// `W(eta) exp(xi) = exp(-(eta|xi) - (eta|eta)/2) exp(eta + xi)`, as (prefactor, shifted supervector).
pub fn on_coherent(eta: &SuperVector, xi: &SuperVector) -> Result<(GrassmannElement, SuperVector)> {
    let arg = &eta.inner(xi).scale(c(-1.0, 0.0)) - &eta.inner(eta).scale(c(0.5, 0.0));
    Ok((arg.exp()?, eta + xi))
}

/// `W(eta) Psi(X, xi) = exp(-(eta|eta)/2 + (eta|X eta* - 2 xi)/2) Psi(X, xi + eta - X eta*)`.
pub fn on_ultracoherent(
    eta: &SuperVector,
    x: &SkewMatrix,
    xi: &SuperVector,
) -> Result<(GrassmannElement, SuperVector)> {
    let x_eta_star = eta.conj().map(x.matrix());
    let shift = &x_eta_star - &xi.scale(c(2.0, 0.0));
    let arg = &eta.inner(eta).scale(c(-0.5, 0.0)) + &eta.inner(&shift).scale(c(0.5, 0.0));
    Ok((arg.exp()?, &(xi + eta) - &x_eta_star))
}

/// Evaluates the right-hand side of [`on_ultracoherent`] as a tensor.
pub fn on_ultracoherent_tensor(
    eta: &SuperVector,
    x: &SkewMatrix,
    xi: &SuperVector,
) -> Result<ModuleTensor> {
    let (pre, shifted) = on_ultracoherent(eta, x, xi)?;
    ultracoherent(x, &shifted)?.left_mul(&pre)
}

/// Residual of `Gamma(S) W(eta) Gamma(S^dag P) = W(S eta) Gamma(P)` on the module.
///
/// Meant for `S` commuting with the projector `P`, unitary on its range,
/// and `eta` supported in that range.
pub fn weyl_restricted(s: &CMatrix, p: &CMatrix, eta: &SuperVector) -> Result<f64> {
    let g = eta.generators();
    let gs = RegularOperator::lift(g, &gamma(s)?);
    let gsp = RegularOperator::lift(g, &gamma(&(s.adjoint() * p))?);
    let gp = RegularOperator::lift(g, &gamma(p)?);
    let lhs = gs.compose(weyl(eta)?.regular())?.compose(&gsp)?;
    let rhs = weyl(&eta.map(s))?.regular().compose(&gp)?;
    Ok(lhs.sub(&rhs).max_abs())
}

/// `(W(P_1 eta) Xi_1) o (W((-1)^k P_2 eta) Xi_2)` with `k` the parity of `Xi_1`
/// and `P_2 = I - P_1`.
///
/// For `Xi_j` supported on `P_j H` this equals `W(eta) (Xi_1 o Xi_2)`.
pub fn weyl_factorize(
    eta: &SuperVector,
    p1: &CMatrix,
    xi1: &ModuleTensor,
    xi2: &ModuleTensor,
) -> Result<ModuleTensor> {
    let k = xi1.parity().ok_or(Error::MixedParity)?;
    let d = eta.modes();
    let p2 = CMatrix::identity(d, d) - p1;
    let sign = if k == Parity::Odd { -1.0 } else { 1.0 };
    let left = weyl(&eta.map(p1))?.apply(xi1)?;
    let right = weyl(&eta.map(&p2).scale(c(sign, 0.0)))?.apply(xi2)?;
    left.compose(&right)
}
