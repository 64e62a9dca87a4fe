//! Fisher-information machinery: QFIM for mixed and pure states, the SLD
//! eigenbasis, classical Fisher information of projective measurements,
//! Cramér–Rao bounds and concurrence.

mod bounds;
mod cfi;
mod entanglement;
mod qfim;
mod sld;

pub use bounds::{fixed_parameter_bound, qcrlb, sampling_error, CrlbReport, FixedBound, SamplingError};
pub use cfi::{cfi_projective, cfi_pure, helicity_basis, helicity_basis_cfi, EPS_DPROB, EPS_PROB};
pub use entanglement::concurrence;
pub use qfim::{qfim_matrix_mixed, qfim_matrix_pure, qfim_mixed, qfim_pure, Qfim2, EPS_NULL};
pub use sld::{sld_pure, SldPureDecomposition, EPS_BETA};
