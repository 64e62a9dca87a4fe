use super::qfim::Qfim2;
use crate::error::{Error, Result};
use crate::kinematics::ScatteringPoint;

/// `det I` at or below this fraction of `‖I‖²` counts as singular. A
/// diagonal entry at or below it (absolute) gives no fixed-parameter bound.
pub const EPS_DET: f64 = 1e-14;

/// Joint and fixed-parameter Cramér–Rao bounds for `N` events.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrlbReport {
    pub n: u64,
    pub var_p_bound: f64,
    pub var_theta_bound: f64,
    pub cov_ptheta_bound: f64,
    pub var_p_fixed_theta: f64,
    pub var_theta_fixed_p: f64,
    pub snr_p: f64,
    pub snr_theta: f64,
    pub snr_p_fixed_theta: f64,
    pub snr_theta_fixed_p: f64,
}

/// Single-parameter bound `1/(N I)` and the matching SNR.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FixedBound {
    pub var: f64,
    pub snr: f64,
}

fn check_n(n: u64) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain("event count must be positive".into()));
    }
    Ok(n as f64)
}

pub fn fixed_parameter_bound(info: f64, n: u64, true_value: f64) -> Result<FixedBound> {
    let n = check_n(n)?;
    if !(info > EPS_DET) || !info.is_finite() {
        return Err(Error::SingularFisher(info));
    }
    let var = 1.0 / (n * info);
    Ok(FixedBound { var, snr: true_value / var.sqrt() })
}

/// Inverts the QFIM. Fails with `SingularFisher` when the joint bound is
/// undefined; fixed-parameter bounds may still exist in that case.
pub fn qcrlb(q: &Qfim2, n: u64, pt: &ScatteringPoint) -> Result<CrlbReport> {
    let nf = check_n(n)?;
    let fp = fixed_parameter_bound(q.pp, n, pt.p)?;
    let ft = fixed_parameter_bound(q.thetatheta, n, pt.theta)?;
    let det = q.det();
    let scale = q.max_abs_entry();
    if !(det > EPS_DET * scale * scale) || !det.is_finite() {
        return Err(Error::SingularFisher(det));
    }
    let var_p = q.thetatheta / (nf * det);
    let var_theta = q.pp / (nf * det);
    Ok(CrlbReport {
        n,
        var_p_bound: var_p,
        var_theta_bound: var_theta,
        cov_ptheta_bound: -q.ptheta / (nf * det),
        var_p_fixed_theta: fp.var,
        var_theta_fixed_p: ft.var,
        snr_p: pt.p / var_p.sqrt(),
        snr_theta: pt.theta / var_theta.sqrt(),
        snr_p_fixed_theta: fp.snr,
        snr_theta_fixed_p: ft.snr,
    })
}

/// Sampling error `Δ = σ / (SNR sqrt(f_s t_s))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SamplingError {
    pub delta: f64,
    pub f_s: f64,
    pub t_s: f64,
}

pub fn sampling_error(snr: f64, sigma_true: f64, f_s: f64, t_s: f64) -> Result<SamplingError> {
    if !(snr > 0.0 && f_s > 0.0 && t_s > 0.0) {
        return Err(Error::Domain(format!(
            "sampling error needs positive snr, f_s and t_s (got {snr}, {f_s}, {t_s})"
        )));
    }
    Ok(SamplingError { delta: sigma_true / (snr * (f_s * t_s).sqrt()), f_s, t_s })
}
