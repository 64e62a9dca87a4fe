//! Finite-difference derivatives of the filtered state in `p`, `θ` and `φ`.
//!
//! Interior points use second-order central differences. Where the central
//! stencil would leave the admissible domain a second-order one-sided stencil
//! is used instead.

use std::f64::consts::PI;

use crate::amplitudes::{amplitude_table, JointLabel};
use crate::error::{Error, Result};
use crate::kinematics::{Constants, ProcessKind, ScatteringPoint};
use crate::linalg::{c, Mat4, Vec4};
use crate::state::{mixed_out_state, pure_out_state, InitialState};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parameter {
    P,
    Theta,
    Phi,
}

/// Step sizes; MeV for `p`, rad for the angles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FdSteps {
    pub h_p: f64,
    pub h_theta: f64,
    pub h_phi: f64,
}

impl Default for FdSteps {
    fn default() -> Self {
        FdSteps {
            h_p: 1e-4,
            h_theta: 1e-5,
            h_phi: 1e-5,
        }
    }
}

impl FdSteps {
    pub fn step(&self, param: Parameter) -> f64 {
        match param {
            Parameter::P => self.h_p,
            Parameter::Theta => self.h_theta,
            Parameter::Phi => self.h_phi,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stencil {
    Central,
    Forward,
    Backward,
}

impl Stencil {
    /// Sample offsets in units of the step.
    pub fn offsets(self) -> &'static [f64] {
        match self {
            Stencil::Central => &[-1.0, 1.0],
            Stencil::Forward => &[0.0, 1.0, 2.0],
            Stencil::Backward => &[0.0, -1.0, -2.0],
        }
    }

    pub fn weights(self) -> &'static [f64] {
        match self {
            Stencil::Central => &[-0.5, 0.5],
            Stencil::Forward => &[-1.5, 2.0, -0.5],
            Stencil::Backward => &[1.5, -2.0, 0.5],
        }
    }
}

/// Quantities that can be differentiated: real linear combinations.
pub trait FdValue: Sized {
    fn lin_comb(terms: impl Iterator<Item = (f64, Self)>) -> Self;
}

impl FdValue for f64 {
    fn lin_comb(terms: impl Iterator<Item = (f64, Self)>) -> Self {
        terms.map(|(w, x)| w * x).sum()
    }
}

impl<const N: usize> FdValue for [f64; N] {
    fn lin_comb(terms: impl Iterator<Item = (f64, Self)>) -> Self {
        let mut acc = [0.0; N];
        for (w, x) in terms {
            for (a, v) in acc.iter_mut().zip(x) {
                *a += w * v;
            }
        }
        acc
    }
}

impl FdValue for Mat4 {
    fn lin_comb(terms: impl Iterator<Item = (f64, Self)>) -> Self {
        terms.fold(Mat4::zeros(), |acc, (w, x)| acc + x * c(w, 0.0))
    }
}

impl FdValue for Vec4 {
    fn lin_comb(terms: impl Iterator<Item = (f64, Self)>) -> Self {
        terms.fold(Vec4::zeros(), |acc, (w, x)| acc + x * c(w, 0.0))
    }
}

/// Samples of some state-valued function on a one-parameter stencil.
#[derive(Debug, Clone)]
pub struct Samples<T> {
    pub param: Parameter,
    pub step: f64,
    pub stencil: Stencil,
    pub values: Vec<T>,
}

impl<T> Samples<T> {
    /// Derivative of `g ∘ f` at the stencil centre.
    pub fn derivative_of<U: FdValue>(&self, g: impl Fn(&T) -> U) -> U {
        let inv = 1.0 / self.step;
        U::lin_comb(
            self.stencil
                .weights()
                .iter()
                .zip(&self.values)
                .map(|(w, v)| (w * inv, g(v))),
        )
    }
}

impl<T: FdValue + Clone> Samples<T> {
    pub fn derivative(&self) -> T {
        self.derivative_of(T::clone)
    }
}

fn shifted(pt: &ScatteringPoint, param: Parameter, delta: f64) -> ScatteringPoint {
    let mut q = *pt;
    match param {
        Parameter::P => q.p += delta,
        Parameter::Theta => q.theta += delta,
        Parameter::Phi => q.phi = (q.phi + delta).rem_euclid(2.0 * PI),
    }
    q
}

fn inside(kind: ProcessKind, pt: &ScatteringPoint) -> bool {
    pt.p > 0.0 && kind.theta_is_admissible(pt.theta)
}

/// Chooses the stencil for `param` at `pt`: central when both neighbours are
/// admissible, otherwise the one-sided stencil that stays inside.
pub fn choose_stencil(kind: ProcessKind, pt: &ScatteringPoint, param: Parameter, h: f64) -> Result<Stencil> {
    if param == Parameter::Phi {
        return Ok(Stencil::Central);
    }
    let ok = |k: f64| inside(kind, &shifted(pt, param, k * h));
    if ok(-1.0) && ok(1.0) {
        Ok(Stencil::Central)
    } else if ok(1.0) && ok(2.0) {
        Ok(Stencil::Forward)
    } else if ok(-1.0) && ok(-2.0) {
        Ok(Stencil::Backward)
    } else {
        Err(Error::Domain(format!(
            "no finite-difference stencil fits at {pt:?} for {param:?} (h = {h})"
        )))
    }
}

/// Evaluates `f` on the stencil for `param` around `pt`.
pub fn sample<T>(
    kind: ProcessKind,
    pt: &ScatteringPoint,
    param: Parameter,
    h: f64,
    f: impl Fn(&ScatteringPoint) -> Result<T>,
) -> Result<Samples<T>> {
    if !(h > 0.0) {
        return Err(Error::Domain(format!("finite-difference step must be positive, got {h}")));
    }
    let stencil = choose_stencil(kind, pt, param, h)?;
    let values = stencil
        .offsets()
        .iter()
        .map(|&k| f(&shifted(pt, param, k * h)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Samples {
        param,
        step: h,
        stencil,
        values,
    })
}

/// `∂/∂p` and `∂/∂θ` of a state, together with the steps used.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateDerivatives<T> {
    pub d_dp: T,
    pub d_dtheta: T,
    pub h_p: f64,
    pub h_theta: f64,
}

impl<T> StateDerivatives<T> {
    pub fn get(&self, param: Parameter) -> &T {
        match param {
            Parameter::P => &self.d_dp,
            Parameter::Theta => &self.d_dtheta,
            Parameter::Phi => panic!("φ derivatives are not carried in StateDerivatives"),
        }
    }
}

/// Derivatives of either the density matrix or the pure state vector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Derivatives {
    Mixed(StateDerivatives<Mat4>),
    Pure(StateDerivatives<Vec4>),
}

pub fn mixed_state_fn(kind: ProcessKind, consts: Constants) -> impl Fn(&ScatteringPoint) -> Result<Mat4> {
    move |pt| Ok(mixed_out_state(&amplitude_table(kind, pt, &consts)?)?.0)
}

pub fn pure_state_fn(
    kind: ProcessKind,
    lam: JointLabel,
    consts: Constants,
) -> impl Fn(&ScatteringPoint) -> Result<Vec4> {
    move |pt| Ok(pure_out_state(&amplitude_table(kind, pt, &consts)?, lam)?.0)
}

/// `d` minus its norm-changing component along `psi`. For a unit-norm
/// family that component is truncation error of the stencil, `O(h²)`.
pub fn tangent(psi: &Vec4, d: &Vec4) -> Vec4 {
    d - psi * c(psi.dotc(d).re / psi.norm_squared(), 0.0)
}

fn derivatives_of<T: FdValue + Clone>(
    kind: ProcessKind,
    pt: &ScatteringPoint,
    steps: &FdSteps,
    f: impl Fn(&ScatteringPoint) -> Result<T>,
) -> Result<StateDerivatives<T>> {
    let dp = sample(kind, pt, Parameter::P, steps.h_p, &f)?.derivative();
    let dt = sample(kind, pt, Parameter::Theta, steps.h_theta, &f)?.derivative();
    Ok(StateDerivatives {
        d_dp: dp,
        d_dtheta: dt,
        h_p: steps.h_p,
        h_theta: steps.h_theta,
    })
}

pub fn differentiate_state(
    kind: ProcessKind,
    input: InitialState,
    pt: &ScatteringPoint,
    steps: &FdSteps,
    consts: &Constants,
) -> Result<Derivatives> {
    match input {
        InitialState::Mixed => {
            derivatives_of(kind, pt, steps, mixed_state_fn(kind, *consts)).map(Derivatives::Mixed)
        }
        InitialState::Pure(lam) => {
            let f = pure_state_fn(kind, lam, *consts);
            let psi = f(pt)?;
            let d = derivatives_of(kind, pt, steps, &f)?;
            Ok(Derivatives::Pure(StateDerivatives {
                d_dp: tangent(&psi, &d.d_dp),
                d_dtheta: tangent(&psi, &d.d_dtheta),
                ..d
            }))
        }
    }
}
