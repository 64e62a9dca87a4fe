use crate::differentiation::{mixed_state_fn, pure_state_fn, sample, tangent, FdSteps, Parameter};
use crate::error::{Error, Result};
use crate::kinematics::{Constants, ProcessKind, ScatteringPoint};
use crate::linalg::Vec4;
use num_complex::Complex64;
use crate::state::{InitialState, PureState4};

/// Outcomes with probability at or below this are dropped from the sum.
pub const EPS_PROB: f64 = 1e-12;
/// A dropped outcome whose derivative reaches this signals a boundary.
pub const EPS_DPROB: f64 = 1e-8;

/// `F = Σ_k (∂p_k)² / p_k` for one parameter.
///
/// The probabilities need not be complete: a measurement on a subspace
/// that contains the state to first order loses nothing by omitting the
/// completion outcome.
pub fn cfi_projective(probs: &[f64], dprobs: &[f64]) -> Result<f64> {
    if probs.len() != dprobs.len() {
        return Err(Error::Domain(format!(
            "{} probabilities but {} derivatives",
            probs.len(),
            dprobs.len()
        )));
    }
    let total: f64 = probs.iter().sum();
    if probs.iter().any(|p| !(p.is_finite() && *p >= -1e-12)) || total > 1.0 + 1e-10 {
        return Err(Error::Domain(format!("not a probability vector: {probs:?}")));
    }
    let mut acc = 0.0;
    for (&p, &dp) in probs.iter().zip(dprobs) {
        if !dp.is_finite() {
            return Err(Error::Domain(format!("non-finite probability derivative {dp}")));
        }
        if p <= EPS_PROB {
            if dp.abs() >= EPS_DPROB {
                return Err(Error::Boundary(dp));
            }
            continue;
        }
        acc += dp * dp / p;
    }
    Ok(acc)
}

/// CFI of projecting a pure state onto `basis`, with the outcome
/// derivatives `∂p_k = 2 Re(⟨b_k|ψ⟩* ⟨b_k|∂ψ⟩)` taken through the state
/// derivative. The part of `∂ψ` along `ψ` that changes the norm is removed
/// first, so a finite-difference `∂ψ` cannot leak probability.
pub fn cfi_pure(psi: &PureState4, dpsi: &Vec4, basis: &[Vec4]) -> Result<f64> {
    let dpsi = tangent(&psi.0, dpsi);
    let amp: Vec<_> = basis.iter().map(|b| (b.dotc(&psi.0), b.dotc(&dpsi))).collect();
    let probs: Vec<f64> = amp.iter().map(|(a, _)| a.norm_sqr()).collect();
    let dprobs: Vec<f64> = amp.iter().map(|(a, d)| 2.0 * (a.conj() * d).re).collect();
    cfi_projective(&probs, &dprobs)
}

/// The product helicity basis, in the component order of [`Vec4`].
pub fn helicity_basis() -> [Vec4; 4] {
    std::array::from_fn(|i| {
        let mut v = Vec4::zeros();
        v[i] = Complex64::new(1.0, 0.0);
        v
    })
}

fn diagonal(m: &crate::linalg::Mat4) -> [f64; 4] {
    std::array::from_fn(|i| m[(i, i)].re)
}

/// CFI of a measurement in the product helicity basis of the outgoing pair.
/// For the mixed input the probabilities are the diagonal of `ρ`.
pub fn helicity_basis_cfi(
    kind: ProcessKind,
    input: InitialState,
    pt: &ScatteringPoint,
    param: Parameter,
    steps: &FdSteps,
    consts: &Constants,
) -> Result<f64> {
    let h = steps.step(param);
    let (probs, dprobs) = match input {
        InitialState::Mixed => {
            let f = mixed_state_fn(kind, *consts);
            let s = sample(kind, pt, param, h, &f)?;
            (diagonal(&f(pt)?), s.derivative_of(diagonal))
        }
        InitialState::Pure(lam) => {
            let f = pure_state_fn(kind, lam, *consts);
            let s = sample(kind, pt, param, h, &f)?;
            return cfi_pure(&PureState4(f(pt)?), &s.derivative(), &helicity_basis());
        }
    };
    cfi_projective(&probs, &dprobs)
}
