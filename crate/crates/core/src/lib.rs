//! Quantum Fisher information of the internal (helicity / polarisation)
//! state left behind by tree-level QED scattering.
//!
//! The pipeline for one `(p, θ)` point is:
//!
//! 1. [`kinematics`] builds the centre-of-mass momenta,
//! 2. [`dirac`] supplies helicity spinors and photon polarisation vectors,
//! 3. [`amplitudes`] evaluates the 16 helicity amplitudes,
//! 4. [`state`] turns them into the momentum-filtered two-qubit state,
//! 5. [`differentiation`] takes finite-difference derivatives in `p` and `θ`,
//! 6. [`estimation`] computes the QFIM, SLD eigenbasis, classical Fisher
//!    information, Cramér–Rao bounds and signal-to-noise ratios.
//!
//! [`report`] composes the steps for a single point and [`sweep`] drives a
//! whole grid.

pub mod amplitudes;
pub mod dirac;
pub mod differentiation;
pub mod error;
pub mod estimation;
pub mod kinematics;
pub mod linalg;
pub mod report;
pub mod state;
pub mod sweep;

pub use amplitudes::{amplitude_table, HelicityAmplitudeTable, JointLabel};
pub use dirac::Handedness;
pub use differentiation::{FdSteps, Parameter, StateDerivatives};
pub use error::{Error, Result};
pub use estimation::{CrlbReport, Qfim2};
pub use kinematics::{Constants, FourMomentum, ProcessKind, ScatteringPoint};
pub use report::{evaluate_point, EstimationReport, PointSpec};
pub use state::{DensityMatrix4, InitialState, PureState4};
pub use sweep::{run_sweep, GridRecord, SweepConfig, SweepOutput};

pub use num_complex::Complex64;
