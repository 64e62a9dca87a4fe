use crate::differentiation::StateDerivatives;
use crate::linalg::{hermitian_eigen, Mat4, Vec4};
use crate::state::{DensityMatrix4, PureState4};

/// Eigenvalue pairs with `λ_k + λ_l` at or below this are skipped.
pub const EPS_NULL: f64 = 1e-12;

/// Symmetric 2×2 QFIM over `(p, θ)`; units MeV⁻², MeV⁻¹rad⁻¹, rad⁻².
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Qfim2 {
    pub pp: f64,
    pub ptheta: f64,
    pub thetatheta: f64,
}

impl Qfim2 {
    pub fn from_matrix(m: &[Vec<f64>]) -> Qfim2 {
        Qfim2 {
            pp: m[0][0],
            ptheta: 0.5 * (m[0][1] + m[1][0]),
            thetatheta: m[1][1],
        }
    }

    pub fn det(&self) -> f64 {
        self.pp * self.thetatheta - self.ptheta * self.ptheta
    }

    pub fn max_abs_entry(&self) -> f64 {
        self.pp.abs().max(self.ptheta.abs()).max(self.thetatheta.abs())
    }

    /// Eigenvalues, ascending.
    pub fn eigenvalues(&self) -> [f64; 2] {
        let mean = 0.5 * (self.pp + self.thetatheta);
        let half = 0.5 * (self.pp - self.thetatheta);
        let r = half.hypot(self.ptheta);
        [mean - r, mean + r]
    }
}

/// Multi-parameter QFIM of a mixed state from the eigen-decomposition of `ρ`:
/// `I_ij = 2 Σ_{kl} Re[⟨k|∂_iρ|l⟩⟨l|∂_jρ|k⟩] / (λ_k + λ_l)`.
pub fn qfim_matrix_mixed(rho: &DensityMatrix4, derivs: &[Mat4]) -> Vec<Vec<f64>> {
    let (vals, vecs) = hermitian_eigen(&rho.0);
    let rotated: Vec<Mat4> = derivs.iter().map(|d| vecs.adjoint() * d * vecs).collect();
    let n = derivs.len();
    let mut out = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in i..n {
            let mut acc = 0.0;
            for k in 0..4 {
                for l in 0..4 {
                    let denom = vals[k] + vals[l];
                    if denom <= EPS_NULL {
                        continue;
                    }
                    acc += (rotated[i][(k, l)] * rotated[j][(l, k)]).re / denom;
                }
            }
            out[i][j] = 2.0 * acc;
            out[j][i] = 2.0 * acc;
        }
    }
    out
}

pub fn qfim_mixed(rho: &DensityMatrix4, d: &StateDerivatives<Mat4>) -> Qfim2 {
    Qfim2::from_matrix(&qfim_matrix_mixed(rho, &[d.d_dp, d.d_dtheta]))
}

/// `I_ij = 4 Re[⟨∂_iψ|∂_jψ⟩ − ⟨∂_iψ|ψ⟩⟨ψ|∂_jψ⟩]`.
pub fn qfim_matrix_pure(psi: &PureState4, derivs: &[Vec4]) -> Vec<Vec<f64>> {
    let n = derivs.len();
    let mut out = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in i..n {
            let a = derivs[i].dotc(&derivs[j]);
            let b = derivs[i].dotc(&psi.0) * psi.0.dotc(&derivs[j]);
            let v = 4.0 * (a - b).re;
            out[i][j] = v;
            out[j][i] = v;
        }
    }
    out
}

pub fn qfim_pure(psi: &PureState4, d: &StateDerivatives<Vec4>) -> Qfim2 {
    Qfim2::from_matrix(&qfim_matrix_pure(psi, &[d.d_dp, d.d_dtheta]))
}
