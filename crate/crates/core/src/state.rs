//! Momentum-filtered two-qubit states built from an amplitude table.

use crate::amplitudes::{HelicityAmplitudeTable, JointLabel};
use crate::error::{Error, Result};
use crate::linalg::{c, hermitian_eigen, Mat4, Vec4};

/// Density matrix in the canonical `LL, LR, RL, RR` basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix4(pub Mat4);

/// Unit-norm state vector in the canonical basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PureState4(pub Vec4);

impl DensityMatrix4 {
    pub fn trace(&self) -> f64 {
        self.0.trace().re
    }

    /// `tr ρ²`.
    pub fn purity(&self) -> f64 {
        (self.0 * self.0).trace().re
    }

    pub fn eigenvalues(&self) -> [f64; 4] {
        hermitian_eigen(&self.0).0
    }

    pub fn from_pure(psi: &PureState4) -> DensityMatrix4 {
        DensityMatrix4(psi.0 * psi.0.adjoint())
    }
}

impl PureState4 {
    pub fn norm(&self) -> f64 {
        self.0.norm()
    }

    /// Born-rule probabilities in the canonical product basis.
    pub fn probabilities(&self) -> [f64; 4] {
        std::array::from_fn(|i| self.0[i].norm_sqr())
    }
}

/// Internal state of the incoming pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InitialState {
    /// Maximally mixed over the four joint helicities.
    Mixed,
    Pure(JointLabel),
}

impl std::fmt::Display for InitialState {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            InitialState::Mixed => f.write_str("mixed"),
            InitialState::Pure(l) => write!(f, "{l}"),
        }
    }
}

impl std::str::FromStr for InitialState {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.eq_ignore_ascii_case("mixed") {
            Ok(InitialState::Mixed)
        } else {
            s.parse()
                .map(InitialState::Pure)
                .map_err(|_| Error::config(s, "expected mixed, LL, LR, RL or RR"))
        }
    }
}

/// Outgoing filtered state for either kind of input.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OutState {
    Mixed(DensityMatrix4),
    Pure(PureState4),
}

pub fn out_state(table: &HelicityAmplitudeTable, input: InitialState) -> Result<OutState> {
    match input {
        InitialState::Mixed => mixed_out_state(table).map(OutState::Mixed),
        InitialState::Pure(lam) => pure_out_state(table, lam).map(OutState::Pure),
    }
}

/// `ρ_{ηη'} = Σ_λ M_{λ→η} M*_{λ→η'} / Σ_{λν} |M_{λ→ν}|²` for a maximally
/// mixed incoming state.
pub fn mixed_out_state(table: &HelicityAmplitudeTable) -> Result<DensityMatrix4> {
    let total = table.total_weight();
    if !(total > 0.0) || !total.is_finite() {
        return Err(Error::DegenerateState("all amplitudes vanish"));
    }
    let mut rho = Mat4::zeros();
    for row in &table.m {
        let v = Vec4::from_column_slice(row);
        rho += v * v.adjoint();
    }
    rho /= c(total, 0.0);
    // Exact Hermiticity; the outer products are Hermitian only up to rounding.
    let rho = (rho + rho.adjoint()) * c(0.5, 0.0);
    Ok(DensityMatrix4(rho))
}

/// `|ψ_out⟩ ∝ Σ_η M_{λ→η} |η⟩`, normalised to unit norm.
pub fn pure_out_state(table: &HelicityAmplitudeTable, lam: JointLabel) -> Result<PureState4> {
    let row = Vec4::from_column_slice(&table.m[lam.index()]);
    let norm = row.norm();
    if !(norm > 0.0) || !norm.is_finite() {
        return Err(Error::DegenerateState("amplitude row vanishes"));
    }
    Ok(PureState4(row / c(norm, 0.0)))
}

/// Transition weight `w_λ = Σ_ν |M_{λ→ν}|² / Σ_{λν} |M|²` of each input.
pub fn input_weights(table: &HelicityAmplitudeTable) -> [f64; 4] {
    let total = table.total_weight();
    std::array::from_fn(|i| table.m[i].iter().map(|z| z.norm_sqr()).sum::<f64>() / total)
}
