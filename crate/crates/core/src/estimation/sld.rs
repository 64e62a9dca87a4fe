use crate::error::{Error, Result};
use crate::linalg::{c, C64, Vec4};
use crate::state::PureState4;

/// Relative threshold on `|β| / ‖∂ψ‖` below which the SLD is degenerate.
pub const EPS_BETA: f64 = 1e-10;

/// SLD of a pure state restricted to `span{ψ, ψ⊥}`.
///
/// With `∂ψ = αψ + βψ⊥`, the SLD `L = 2(|∂ψ⟩⟨ψ| + |ψ⟩⟨∂ψ|)` acts on that
/// span as `2 [[α+α*, β*], [β, 0]]`. Its eigenvectors are
/// `e_± ∝ (ν_±/β) ψ + ψ⊥` with `ν_± = (a ± sqrt(a² + 4|β|²))/2`, `a = α+α*`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SldPureDecomposition {
    pub alpha: C64,
    pub beta: C64,
    pub psi_perp: PureState4,
    pub e_plus: PureState4,
    pub e_minus: PureState4,
    /// Eigenvalues of `L` belonging to `e_±`.
    pub mu_plus: f64,
    pub mu_minus: f64,
}

impl SldPureDecomposition {
    /// `L` applied to an arbitrary vector.
    pub fn apply(&self, psi: &PureState4, dpsi: &Vec4, v: &Vec4) -> Vec4 {
        (dpsi * psi.0.dotc(v) + psi.0 * dpsi.dotc(v)) * c(2.0, 0.0)
    }
}

pub fn sld_pure(psi: &PureState4, dpsi: &Vec4) -> Result<SldPureDecomposition> {
    let alpha = psi.0.dotc(dpsi);
    let rest = dpsi - psi.0 * alpha;
    let beta_abs = rest.norm();
    if !(beta_abs > EPS_BETA * dpsi.norm()) {
        return Err(Error::DegenerateSld(beta_abs));
    }
    let perp = rest / c(beta_abs, 0.0);
    let beta = perp.dotc(dpsi);
    let a = 2.0 * alpha.re;
    let disc = (a * a + 4.0 * beta.norm_sqr()).sqrt();
    let nu_plus = 0.5 * (a + disc);
    let nu_minus = 0.5 * (a - disc);
    let vector = |nu: f64| (psi.0 * (c(nu, 0.0) / beta) + perp).normalize();
    Ok(SldPureDecomposition {
        alpha,
        beta,
        psi_perp: PureState4(perp),
        e_plus: PureState4(vector(nu_plus)),
        e_minus: PureState4(vector(nu_minus)),
        mu_plus: 2.0 * nu_plus,
        mu_minus: 2.0 * nu_minus,
    })
}
