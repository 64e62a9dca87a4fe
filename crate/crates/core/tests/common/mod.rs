//! Independent oracles and property checks shared by the integration tests.
#![allow(dead_code)]

use std::f64::consts::PI;

use nalgebra::Matrix4;
use qfim_core::amplitudes::{amplitude_table, compton_amplitude_with_outgoing_vector};
use qfim_core::differentiation::{mixed_state_fn, pure_state_fn, sample, FdSteps, Parameter};
use qfim_core::estimation::{qfim_matrix_mixed, qfim_matrix_pure};
use qfim_core::state::{input_weights, mixed_out_state, pure_out_state};
use qfim_core::sweep::{write_csv, GridRecord, COLUMNS};
use qfim_core::{
    evaluate_point, run_sweep, Complex64, Constants, DensityMatrix4, Handedness, InitialState,
    JointLabel, PointSpec, ProcessKind, PureState4, ScatteringPoint, SweepConfig,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Mat4 = Matrix4<Complex64>;
pub type Check = Result<(), String>;

pub const C: Constants = Constants::CODATA;
pub const KINDS: [ProcessKind; 2] = [ProcessKind::ElectronMuon, ProcessKind::Compton];
pub const INPUTS: [InitialState; 5] = [
    InitialState::Mixed,
    InitialState::Pure(JointLabel::LL),
    InitialState::Pure(JointLabel::LR),
    InitialState::Pure(JointLabel::RL),
    InitialState::Pure(JointLabel::RR),
];

/// `|a − b| / max(|a|, |b|)`, zero when both vanish.
pub fn rel(a: f64, b: f64) -> f64 {
    let m = a.abs().max(b.abs());
    if m == 0.0 {
        0.0
    } else {
        (a - b).abs() / m
    }
}

pub fn point(p: f64, theta: f64, phi: f64) -> ScatteringPoint {
    ScatteringPoint::new(p, theta, phi).unwrap()
}

/// Uniform points away from the grid edges, `φ` anywhere.
pub fn random_points(n: usize, seed: u64) -> Vec<ScatteringPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            point(
                rng.random_range(0.05..5.0),
                rng.random_range(0.05..PI - 0.05),
                rng.random_range(0.0..2.0 * PI),
            )
        })
        .collect()
}

pub fn random_label(rng: &mut impl Rng) -> JointLabel {
    JointLabel::ALL[rng.random_range(0..4)]
}

// ---------------------------------------------------------------------------
// Kinematic invariants computed from (p, θ) alone.

pub struct Invariants {
    pub s: f64,
    pub t: f64,
    pub u: f64,
}

pub fn invariants(kind: ProcessKind, p: f64, theta: f64) -> Invariants {
    let (m1, m2) = kind.masses(&C);
    let e1 = (p * p + m1 * m1).sqrt();
    let e2 = (p * p + m2 * m2).sqrt();
    let s = (e1 + e2).powi(2);
    let t = -2.0 * p * p * (1.0 - theta.cos());
    Invariants { s, t, u: 2.0 * (m1 * m1 + m2 * m2) - s - t }
}

/// Spin-averaged `|M|²` for `e μ → e μ` from the trace technique.
pub fn emu_trace_oracle(p: f64, theta: f64) -> f64 {
    let Invariants { s, t, u } = invariants(ProcessKind::ElectronMuon, p, theta);
    let sum_m2 = C.m_e * C.m_e + C.m_mu * C.m_mu;
    let e4 = (4.0 * PI * C.alpha).powi(2);
    2.0 * e4 * ((s - sum_m2).powi(2) + (u - sum_m2).powi(2) + 2.0 * t * sum_m2) / (t * t)
}

/// Spin-averaged `|M|²` for `e γ → e γ` from the trace technique, written
/// with `p·k` and `p·k'`.
pub fn compton_trace_oracle(p: f64, theta: f64) -> f64 {
    let m = C.m_e;
    let e = (p * p + m * m).sqrt();
    let pk = e * p + p * p;
    let pkp = e * p + p * p * theta.cos();
    let e4 = (4.0 * PI * C.alpha).powi(2);
    let d = 1.0 / pk - 1.0 / pkp;
    2.0 * e4 * (pkp / pk + pk / pkp + 2.0 * m * m * d + m.powi(4) * d * d)
}

pub fn trace_oracle(kind: ProcessKind, p: f64, theta: f64) -> f64 {
    match kind {
        ProcessKind::ElectronMuon => emu_trace_oracle(p, theta),
        ProcessKind::Compton => compton_trace_oracle(p, theta),
    }
}

// ---------------------------------------------------------------------------
// Fidelity oracles.

/// Bures deficit `1 − tr sqrt(√ρ σ √ρ)` for full-rank `ρ` and nearby `σ`.
///
/// In the eigenbasis of `ρ = diag(λ)`, `sqrt(√ρ σ √ρ) = ρ + X` where `X`
/// solves `ρX + Xρ + X² = √ρ (σ − ρ) √ρ`. Taking the trace against `ρ⁻¹/2`
/// gives `tr X = tr(σ − ρ)/2 − Σ_i (X²)_ii / 2λ_i`, and the first term is
/// zero for unit-trace states, so the deficit needs no subtraction from 1.
pub fn bures_deficit(rho: &Mat4, sigma: &Mat4) -> f64 {
    let eig = rho.symmetric_eigen();
    let u = &eig.eigenvectors;
    let lam = eig.eigenvalues;
    assert!(lam.min() > 1e-6, "oracle needs a full-rank state: {lam:?}");
    let root = Mat4::from_diagonal(&lam.map(|x| Complex64::new(x.sqrt(), 0.0)));
    let b = &root * (u.adjoint() * (sigma - rho) * u) * &root;
    let mut x = Mat4::zeros();
    for _ in 0..200 {
        let rhs = &b - &x * &x;
        let next = Mat4::from_fn(|i, j| rhs[(i, j)] / (lam[i] + lam[j]));
        let change = (&next - &x).norm();
        x = next;
        if change <= 1e-17 * x.norm() {
            break;
        }
    }
    let x2 = &x * &x;
    (0..4).map(|i| x2[(i, i)].re / (2.0 * lam[i])).sum()
}

/// `1 − |⟨ψ|φ⟩|` for unit vectors, via `1 − |o|² = ‖φ − oψ‖²`.
pub fn overlap_deficit(psi: &qfim_core::linalg::Vec4, phi: &qfim_core::linalg::Vec4) -> f64 {
    let o = psi.dotc(phi);
    let residual = (phi - psi * o).norm_squared();
    residual / (1.0 + o.norm())
}

pub fn shifted(pt: &ScatteringPoint, dir: (f64, f64), delta: f64) -> ScatteringPoint {
    ScatteringPoint { p: pt.p + dir.0 * delta, theta: pt.theta + dir.1 * delta, phi: pt.phi }
}

/// `I_vv ≈ 8 [1 − sqrt F(σ, σ ± δv)] / δ²`, averaged over both signs, with
/// the `O(δ²)` error removed by a second evaluation at `2δ`. `deficit`
/// returns `1 − sqrt F`.
pub fn fidelity_information(
    pt: &ScatteringPoint,
    dir: (f64, f64),
    delta: f64,
    deficit: impl Fn(&ScatteringPoint, &ScatteringPoint) -> f64,
) -> f64 {
    let at = |d: f64| {
        let plus = deficit(pt, &shifted(pt, dir, d));
        let minus = deficit(pt, &shifted(pt, dir, -d));
        4.0 * (plus + minus) / (d * d)
    };
    (4.0 * at(delta) - at(2.0 * delta)) / 3.0
}

pub fn mixed_state(kind: ProcessKind, pt: &ScatteringPoint) -> Mat4 {
    mixed_out_state(&amplitude_table(kind, pt, &C).unwrap()).unwrap().0
}

pub fn pure_state(kind: ProcessKind, lam: JointLabel, pt: &ScatteringPoint) -> PureState4 {
    pure_out_state(&amplitude_table(kind, pt, &C).unwrap(), lam).unwrap()
}

pub const FIDELITY_DELTA: f64 = 1e-3;

/// Directions in units of (MeV, rad); the diagonal one probes `I_pθ`.
pub const DIRECTIONS: [(f64, f64); 3] = [
    (1.0, 0.0),
    (0.0, 1.0),
    (std::f64::consts::FRAC_1_SQRT_2, std::f64::consts::FRAC_1_SQRT_2),
];

fn along(q: &qfim_core::Qfim2, d: (f64, f64)) -> f64 {
    q.pp * d.0 * d.0 + 2.0 * q.ptheta * d.0 * d.1 + q.thetatheta * d.1 * d.1
}

pub fn check_fidelity(kind: ProcessKind, input: InitialState, pt: &ScatteringPoint, tol: f64) -> Check {
    let report = evaluate_point(&PointSpec::new(kind, input, *pt));
    let q = report.qfim.ok_or_else(|| format!("no QFIM at {pt:?}: {:?}", report.errors))?;
    for dir in DIRECTIONS {
        let oracle = match input {
            InitialState::Mixed => fidelity_information(pt, dir, FIDELITY_DELTA, |a, b| {
                bures_deficit(&mixed_state(kind, a), &mixed_state(kind, b))
            }),
            InitialState::Pure(lam) => fidelity_information(pt, dir, FIDELITY_DELTA, |a, b| {
                overlap_deficit(&pure_state(kind, lam, a).0, &pure_state(kind, lam, b).0)
            }),
        };
        let got = along(&q, dir);
        if rel(got, oracle) > tol {
            return Err(format!(
                "{kind:?} {input} at {pt:?} along {dir:?}: QFIM {got:e} vs fidelity {oracle:e}"
            ));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Finite-difference oracle.

/// Fourth-order central difference `[f(−2h) − 8f(−h) + 8f(h) − f(2h)] / 12h`.
pub fn richardson(f: impl Fn(f64) -> Mat4, x: f64, h: f64) -> Mat4 {
    let w = |k: f64| Complex64::new(k / (12.0 * h), 0.0);
    f(x - 2.0 * h) * w(1.0) - f(x - h) * w(8.0) + f(x + h) * w(8.0) - f(x + 2.0 * h) * w(1.0)
}

// ---------------------------------------------------------------------------
// Pointwise property checks.

pub fn check_trace_oracle(kind: ProcessKind, pt: &ScatteringPoint, tol: f64) -> Check {
    let table = amplitude_table(kind, pt, &C).map_err(|e| e.to_string())?;
    let avg = table.total_weight() / 4.0;
    let oracle = trace_oracle(kind, pt.p, pt.theta);
    if rel(avg, oracle) > tol {
        return Err(format!("{kind:?} at {pt:?}: spin average {avg:e} vs trace {oracle:e}"));
    }
    Ok(())
}

/// Contracting the outgoing photon slot with `k'` must give zero. The scale
/// is the largest physical amplitude times the photon energy, which is what
/// the same contraction gives for a unit polarisation.
pub fn check_ward(pt: &ScatteringPoint, tol: f64) -> Check {
    let table = amplitude_table(ProcessKind::Compton, pt, &C).map_err(|e| e.to_string())?;
    let scale = table.m.iter().flatten().fold(0.0f64, |a, z| a.max(z.norm())) * pt.p;
    let (st, ct) = pt.theta.sin_cos();
    let (sp, cp) = pt.phi.sin_cos();
    let k_out = [pt.p, -pt.p * st * cp, -pt.p * st * sp, -pt.p * ct].map(|x| Complex64::new(x, 0.0));
    for lam in JointLabel::ALL {
        for h in [Handedness::L, Handedness::R] {
            let m = compton_amplitude_with_outgoing_vector(pt, lam, h, k_out, &C)
                .map_err(|e| e.to_string())?;
            if m.norm() > tol * scale {
                return Err(format!("{lam}→{h:?} at {pt:?}: |M(k')| = {:e}, scale {scale:e}", m.norm()));
            }
        }
    }
    Ok(())
}

pub fn check_weighted_average(kind: ProcessKind, pt: &ScatteringPoint, tol: f64) -> Check {
    let table = amplitude_table(kind, pt, &C).map_err(|e| e.to_string())?;
    let rho = mixed_out_state(&table).unwrap().0;
    let w = input_weights(&table);
    let mut avg = Mat4::zeros();
    for lam in JointLabel::ALL {
        let psi = pure_out_state(&table, lam).unwrap().0;
        avg += psi * psi.adjoint() * Complex64::new(w[lam.index()], 0.0);
    }
    let err = (rho - avg).iter().fold(0.0f64, |a, z| a.max(z.norm()));
    if err > tol {
        return Err(format!("{kind:?} at {pt:?}: weighted average off by {err:e}"));
    }
    Ok(())
}

fn matrix_scale(m: &[Vec<f64>], n: usize) -> f64 {
    (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).fold(0.0f64, |a, (i, j)| a.max(m[i][j].abs()))
}

fn pure_derivative(kind: ProcessKind, lam: JointLabel, pt: &ScatteringPoint, param: Parameter) -> qfim_core::linalg::Vec4 {
    let steps = FdSteps::default();
    sample(kind, pt, param, steps.step(param), pure_state_fn(kind, lam, C)).unwrap().derivative()
}

fn mixed_derivative(kind: ProcessKind, pt: &ScatteringPoint, param: Parameter) -> Mat4 {
    let steps = FdSteps::default();
    sample(kind, pt, param, steps.step(param), mixed_state_fn(kind, C)).unwrap().derivative()
}

/// The mixed-state formula on `|ψ⟩⟨ψ|` with `∂ρ = |∂ψ⟩⟨ψ| + |ψ⟩⟨∂ψ|`
/// against the pure-state formula.
pub fn check_rank_one(kind: ProcessKind, lam: JointLabel, pt: &ScatteringPoint, tol: f64) -> Check {
    let psi = pure_state(kind, lam, pt);
    let d = [Parameter::P, Parameter::Theta].map(|k| pure_derivative(kind, lam, pt, k));
    let pure = qfim_matrix_pure(&psi, &d);
    let v = psi.0;
    let drho = d.map(|x| x * v.adjoint() + v * x.adjoint());
    let mixed = qfim_matrix_mixed(&DensityMatrix4::from_pure(&psi), &drho);
    let scale = matrix_scale(&pure, 2);
    for i in 0..2 {
        for j in 0..2 {
            if (pure[i][j] - mixed[i][j]).abs() > tol * scale {
                return Err(format!(
                    "{kind:?} {lam} at {pt:?}: I[{i}][{j}] pure {:e} vs rank-1 mixed {:e}",
                    pure[i][j], mixed[i][j]
                ));
            }
        }
    }
    Ok(())
}

/// The two-parameter QFIM assembled by the library formulas is symmetric
/// and positive semi-definite.
pub fn check_matrix_symmetric_psd(kind: ProcessKind, input: InitialState, pt: &ScatteringPoint) -> Check {
    let params = [Parameter::P, Parameter::Theta];
    let m = match input {
        InitialState::Mixed => {
            let rho = DensityMatrix4(mixed_state(kind, pt));
            qfim_matrix_mixed(&rho, &params.map(|k| mixed_derivative(kind, pt, k)))
        }
        InitialState::Pure(lam) => {
            let psi = pure_state(kind, lam, pt);
            qfim_matrix_pure(&psi, &params.map(|k| pure_derivative(kind, lam, pt, k)))
        }
    };
    let scale = matrix_scale(&m, 2);
    let (a, b, d) = (m[0][0], 0.5 * (m[0][1] + m[1][0]), m[1][1]);
    let lowest = 0.5 * (a + d) - (0.5 * (a - d)).hypot(b);
    if (m[0][1] - m[1][0]).abs() > 1e-12 * scale || lowest < -1e-8 * scale {
        return Err(format!("{kind:?} {input} at {pt:?}: {m:?}"));
    }
    Ok(())
}

/// The `φ` row of the `(p, θ, φ)` QFIM relative to the `(p, θ)` block.
pub fn phi_row(kind: ProcessKind, input: InitialState, pt: &ScatteringPoint) -> ([f64; 3], f64) {
    let params = [Parameter::P, Parameter::Theta, Parameter::Phi];
    let m = match input {
        InitialState::Mixed => {
            let rho = DensityMatrix4(mixed_state(kind, pt));
            qfim_matrix_mixed(&rho, &params.map(|k| mixed_derivative(kind, pt, k)))
        }
        InitialState::Pure(lam) => {
            let psi = pure_state(kind, lam, pt);
            qfim_matrix_pure(&psi, &params.map(|k| pure_derivative(kind, lam, pt, k)))
        }
    };
    ([m[2][0], m[2][1], m[2][2]], matrix_scale(&m, 2))
}

pub fn check_phi_row(kind: ProcessKind, input: InitialState, pt: &ScatteringPoint, tol: f64) -> Check {
    let (row, scale) = phi_row(kind, input, pt);
    if row.iter().any(|x| x.abs() > tol * scale) {
        return Err(format!("{kind:?} {input} at {pt:?}: φ row {row:?}, (p, θ) scale {scale:e}"));
    }
    Ok(())
}

/// Natural size of a column's value, used to compare quantities that may
/// pass through zero.
fn column_scale(r: &GridRecord, column: &str, value: f64) -> f64 {
    let get = |c: &str| r.get(c).unwrap_or(0.0).abs();
    match column {
        "I_ptheta" => (get("I_pp") * get("I_thetatheta")).sqrt(),
        "cov_ptheta_bound" => (get("var_p_bound") * get("var_theta_bound")).sqrt(),
        c if c.starts_with("concurrence") => 1.0,
        _ => value.abs(),
    }
}

/// Every numeric column and the error flag of two records agree.
pub fn compare_records(a: &GridRecord, b: &GridRecord, tol: f64) -> Check {
    if a.error_flag != b.error_flag {
        return Err(format!("flags differ: {:?} vs {:?}", a.error_flag, b.error_flag));
    }
    for (column, (x, y)) in COLUMNS.iter().zip(a.values().iter().zip(b.values())) {
        match (x, y) {
            (None, None) => {}
            (Some(x), Some(y)) => {
                let scale = column_scale(a, column, *x).max(column_scale(b, column, y));
                if (x - y).abs() > tol * scale {
                    return Err(format!("{column}: {x:e} vs {y:e}"));
                }
            }
            _ => return Err(format!("{column}: {x:?} vs {y:?}")),
        }
    }
    Ok(())
}

pub fn check_phi_invariance(
    kind: ProcessKind,
    input: InitialState,
    pt: &ScatteringPoint,
    other_phi: f64,
    tol: f64,
) -> Check {
    let a = evaluate_point(&PointSpec::new(kind, input, *pt));
    let moved = point(pt.p, pt.theta, other_phi);
    let b = evaluate_point(&PointSpec::new(kind, input, moved));
    compare_records(&GridRecord::from_report(&a), &GridRecord::from_report(&b), tol)
        .map_err(|e| format!("{kind:?} {input} at {pt:?} vs φ = {other_phi}: {e}"))
}

pub fn check_optimal_at_point(kind: ProcessKind, lam: JointLabel, pt: &ScatteringPoint, tol: f64) -> Check {
    let r = GridRecord::from_report(&evaluate_point(&PointSpec::new(kind, InitialState::Pure(lam), *pt)));
    check_optimal_saturates(std::slice::from_ref(&r), tol)
}

// ---------------------------------------------------------------------------
// Grid-wide checks over sweep records.

pub fn check_qfim_psd(records: &[GridRecord]) -> Check {
    for r in records {
        let (Some(pp), Some(pt), Some(tt)) = (r.i_pp, r.i_ptheta, r.i_thetatheta) else { continue };
        let scale = pp.abs().max(pt.abs()).max(tt.abs());
        let mean = 0.5 * (pp + tt);
        let lo = mean - (0.5 * (pp - tt)).hypot(pt);
        if lo < -1e-8 * scale || pp < 0.0 || tt < 0.0 {
            return Err(format!("QFIM not PSD at p={}, θ={}: [{pp:e}, {pt:e}; {tt:e}]", r.p, r.theta));
        }
    }
    Ok(())
}

/// Additive slack for CFI ≤ QFI.
pub const CFI_SLACK: f64 = 1e-6;

pub fn check_cfi_below_qfi(records: &[GridRecord]) -> Check {
    for r in records {
        let pairs = [
            ("cfi_p_helicity", r.cfi_p_helicity, r.i_pp),
            ("cfi_theta_helicity", r.cfi_theta_helicity, r.i_thetatheta),
            ("cfi_p_optimal", r.cfi_p_optimal, r.i_pp),
            ("cfi_theta_optimal", r.cfi_theta_optimal, r.i_thetatheta),
        ];
        for (name, cfi, qfi) in pairs {
            if let (Some(c), Some(q)) = (cfi, qfi) {
                if c > q + CFI_SLACK {
                    return Err(format!("{name} = {c:e} exceeds QFI {q:e} at p={}, θ={}", r.p, r.theta));
                }
            }
        }
    }
    Ok(())
}

pub fn check_optimal_saturates(records: &[GridRecord], tol: f64) -> Check {
    let mut seen = 0usize;
    for r in records {
        for (cfi, qfi) in [(r.cfi_p_optimal, r.i_pp), (r.cfi_theta_optimal, r.i_thetatheta)] {
            if let (Some(c), Some(q)) = (cfi, qfi) {
                seen += 1;
                if rel(c, q) > tol {
                    return Err(format!("optimal CFI {c:e} vs QFI {q:e} at p={}, θ={}", r.p, r.theta));
                }
            }
        }
    }
    if seen == 0 {
        return Err("no optimal-basis values to compare".into());
    }
    Ok(())
}

/// QFIM entries of parity-paired runs, entrywise relative.
pub fn check_parity(a: &[GridRecord], b: &[GridRecord], tol: f64) -> Check {
    if a.len() != b.len() {
        return Err(format!("record counts differ: {} vs {}", a.len(), b.len()));
    }
    for (x, y) in a.iter().zip(b) {
        for (name, u, v) in [
            ("I_pp", x.i_pp, y.i_pp),
            ("I_ptheta", x.i_ptheta, y.i_ptheta),
            ("I_thetatheta", x.i_thetatheta, y.i_thetatheta),
        ] {
            match (u, v) {
                (Some(u), Some(v)) if rel(u, v) <= tol => {}
                (None, None) => {}
                _ => return Err(format!("{name} at p={}, θ={}: {u:?} vs {v:?}", x.p, x.theta)),
            }
        }
    }
    Ok(())
}

/// Small grid used for worker-count determinism.
pub fn small_config(kind: ProcessKind, input: InitialState) -> SweepConfig {
    let mut cfg = SweepConfig::defaults(kind);
    cfg.initial = input;
    cfg.p_min = 0.05;
    cfg.p_max = 1.0;
    cfg.p_step = 0.05;
    cfg.theta_step = PI / 40.0;
    cfg.theta_min = if kind == ProcessKind::Compton { 0.0 } else { cfg.theta_step };
    cfg
}

pub fn csv_bytes(cfg: &SweepConfig) -> Vec<u8> {
    let out = run_sweep(cfg).unwrap();
    let mut buf = Vec::new();
    write_csv(&mut buf, &out.records).unwrap();
    buf
}

pub fn check_worker_determinism(kind: ProcessKind, input: InitialState) -> Check {
    let mut cfg = small_config(kind, input);
    cfg.workers = Some(1);
    let one = csv_bytes(&cfg);
    cfg.workers = Some(8);
    let eight = csv_bytes(&cfg);
    if one != eight {
        return Err(format!("{kind:?} {input}: CSV differs between 1 and 8 workers"));
    }
    Ok(())
}

/// Runs `check` on every item and reports the first failure with a count.
pub fn all<T>(items: impl IntoIterator<Item = T>, check: impl Fn(T) -> Check) -> Check {
    let mut failures = Vec::new();
    let mut total = 0;
    for item in items {
        total += 1;
        if let Err(e) = check(item) {
            failures.push(e);
        }
    }
    match failures.first() {
        None => Ok(()),
        Some(first) => Err(format!("{} of {total} failed; first: {first}", failures.len())),
    }
}
