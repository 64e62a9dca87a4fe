//! Fixtures shared by the criterion benchmarks.

use qfim_core::{InitialState, JointLabel, PointSpec, ProcessKind, ScatteringPoint, SweepConfig};

/// A representative interior point for each process.
pub fn interior_point() -> ScatteringPoint {
    ScatteringPoint::new(1.3, 1.9, 0.0).expect("valid point")
}

pub fn point_spec(kind: ProcessKind, input: InitialState) -> PointSpec {
    PointSpec::new(kind, input, interior_point())
}

/// Every input state in a fixed order.
pub fn inputs() -> [InitialState; 5] {
    [
        InitialState::Mixed,
        InitialState::Pure(JointLabel::LL),
        InitialState::Pure(JointLabel::LR),
        InitialState::Pure(JointLabel::RL),
        InitialState::Pure(JointLabel::RR),
    ]
}

/// A coarse `side × side` grid for sweep throughput.
pub fn small_sweep(kind: ProcessKind, input: InitialState, side: usize) -> SweepConfig {
    let mut cfg = SweepConfig::defaults(kind);
    cfg.initial = input;
    cfg.p_step = (cfg.p_max - cfg.p_min) / (side - 1) as f64;
    cfg.p_min = cfg.p_step;
    cfg.p_max = cfg.p_step * side as f64;
    cfg.theta_step = (cfg.theta_max - cfg.theta_min) / (side - 1) as f64;
    cfg.workers = Some(1);
    cfg
}
