use crate::state::PureState4;

/// Wootters concurrence `|⟨ψ|σ_y⊗σ_y|ψ*⟩| = 2|ψ_LL ψ_RR − ψ_LR ψ_RL|`.
pub fn concurrence(psi: &PureState4) -> f64 {
    let v = &psi.0;
    2.0 * (v[0] * v[3] - v[1] * v[2]).norm() / v.norm_squared()
}
