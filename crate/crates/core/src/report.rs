//! Everything the sweep records about one `(p, θ)` point.

use crate::differentiation::{mixed_state_fn, pure_state_fn, sample, tangent, FdSteps, Parameter, Samples};
use crate::error::{Error, Result};
use crate::estimation::{
    cfi_projective, cfi_pure, concurrence, helicity_basis, fixed_parameter_bound, qcrlb, qfim_mixed, qfim_pure, sld_pure,
    CrlbReport, FixedBound, Qfim2,
};
use crate::differentiation::StateDerivatives;
use crate::amplitudes::JointLabel;
use crate::kinematics::{Constants, ProcessKind, ScatteringPoint};
use crate::linalg::{Mat4, Vec4};
use crate::state::{DensityMatrix4, InitialState, PureState4};

/// Inputs for a single-point evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointSpec {
    pub kind: ProcessKind,
    pub input: InitialState,
    pub point: ScatteringPoint,
    /// Number of repeated measurements in the Cramér–Rao bound.
    pub n: u64,
    pub steps: FdSteps,
    pub consts: Constants,
}

impl PointSpec {
    pub fn new(kind: ProcessKind, input: InitialState, point: ScatteringPoint) -> Self {
        PointSpec {
            kind,
            input,
            point,
            n: 1,
            steps: FdSteps::default(),
            consts: Constants::CODATA,
        }
    }
}

/// Two-outcome measurement in the SLD eigenbasis for one parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimalBasis {
    pub cfi: f64,
    pub concurrence_plus: f64,
    pub concurrence_minus: f64,
}

/// Per-parameter arrays are indexed `[p, θ]`.
#[derive(Debug, Clone, PartialEq)]
pub struct EstimationReport {
    pub spec: PointSpec,
    pub qfim: Option<Qfim2>,
    pub cfi_helicity: [Option<f64>; 2],
    /// Pure inputs only.
    pub optimal: [Option<OptimalBasis>; 2],
    pub crlb: Option<CrlbReport>,
    pub fixed: [Option<FixedBound>; 2],
    pub errors: Vec<Error>,
}

const PARAMS: [Parameter; 2] = [Parameter::P, Parameter::Theta];

impl EstimationReport {
    fn empty(spec: PointSpec) -> Self {
        EstimationReport {
            spec,
            qfim: None,
            cfi_helicity: [None; 2],
            optimal: [None; 2],
            crlb: None,
            fixed: [None; 2],
            errors: Vec::new(),
        }
    }

    fn keep<T>(&mut self, r: Result<T>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                if !self.errors.contains(&e) {
                    self.errors.push(e);
                }
                None
            }
        }
    }

    /// Distinct error codes joined by `;`, empty when the point is clean.
    pub fn error_flag(&self) -> String {
        let mut codes: Vec<&str> = Vec::new();
        for e in &self.errors {
            if !codes.contains(&e.code()) {
                codes.push(e.code());
            }
        }
        codes.join(";")
    }
}

fn admissible(spec: &PointSpec) -> Result<()> {
    spec.point.validate()?;
    if !spec.kind.theta_is_admissible(spec.point.theta) {
        return Err(Error::Domain(format!(
            "theta = {} outside the {} domain",
            spec.point.theta,
            spec.kind.name()
        )));
    }
    Ok(())
}

fn both_samples<T>(
    spec: &PointSpec,
    f: &impl Fn(&ScatteringPoint) -> Result<T>,
) -> Result<[Samples<T>; 2]> {
    let [a, b] = PARAMS.map(|param| sample(spec.kind, &spec.point, param, spec.steps.step(param), f));
    Ok([a?, b?])
}

fn derivatives<T: Copy>(spec: &PointSpec, d: [T; 2]) -> StateDerivatives<T> {
    StateDerivatives {
        d_dp: d[0],
        d_dtheta: d[1],
        h_p: spec.steps.h_p,
        h_theta: spec.steps.h_theta,
    }
}

fn diagonal(m: &Mat4) -> [f64; 4] {
    std::array::from_fn(|i| m[(i, i)].re)
}

fn evaluate_mixed(spec: &PointSpec, r: &mut EstimationReport) {
    let f = mixed_state_fn(spec.kind, spec.consts);
    let Some(rho) = r.keep(f(&spec.point)) else { return };
    let Some(samples) = r.keep(both_samples(spec, &f)) else { return };
    let d = samples.each_ref().map(|s| s.derivative());
    r.qfim = Some(qfim_mixed(&DensityMatrix4(rho), &derivatives(spec, d)));
    let probs = diagonal(&rho);
    for (i, s) in samples.iter().enumerate() {
        r.cfi_helicity[i] = r.keep(cfi_projective(&probs, &s.derivative_of(diagonal)));
    }
}

fn evaluate_pure(spec: &PointSpec, lam: JointLabel, r: &mut EstimationReport) {
    let f = pure_state_fn(spec.kind, lam, spec.consts);
    let Some(v) = r.keep(f(&spec.point)) else { return };
    let psi = PureState4(v);
    let Some(samples) = r.keep(both_samples(spec, &f)) else { return };
    let d = samples.each_ref().map(|s| tangent(&v, &s.derivative()));
    r.qfim = Some(qfim_pure(&psi, &derivatives(spec, d)));
    let helicity = helicity_basis();
    for i in 0..2 {
        r.cfi_helicity[i] = r.keep(cfi_pure(&psi, &d[i], &helicity));
        r.optimal[i] = r.keep(optimal_basis(&psi, &d[i]));
    }
}

fn optimal_basis(psi: &PureState4, dpsi: &Vec4) -> Result<OptimalBasis> {
    let sld = sld_pure(psi, dpsi)?;
    let cfi = cfi_pure(psi, dpsi, &[sld.e_plus.0, sld.e_minus.0])?;
    Ok(OptimalBasis {
        cfi,
        concurrence_plus: concurrence(&sld.e_plus),
        concurrence_minus: concurrence(&sld.e_minus),
    })
}

/// Evaluates one point. Failures are collected in `errors`; whatever could
/// still be computed is kept.
pub fn evaluate_point(spec: &PointSpec) -> EstimationReport {
    let mut r = EstimationReport::empty(*spec);
    if r.keep(admissible(spec)).is_none() {
        return r;
    }
    match spec.input {
        InitialState::Mixed => evaluate_mixed(spec, &mut r),
        InitialState::Pure(lam) => evaluate_pure(spec, lam, &mut r),
    }
    if let Some(q) = r.qfim {
        let pt = spec.point;
        r.fixed = [
            r.keep(fixed_parameter_bound(q.pp, spec.n, pt.p)),
            r.keep(fixed_parameter_bound(q.thetatheta, spec.n, pt.theta)),
        ];
        r.crlb = r.keep(qcrlb(&q, spec.n, &pt));
    }
    r
}
