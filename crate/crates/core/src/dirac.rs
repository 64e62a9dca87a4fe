//! Dirac algebra in the chiral (Weyl) representation.
//!
//! Helicity two-spinors follow the rotation `R(φ, θ, 0)` applied to the
//! `z`-axis spin states, which keeps every phase smooth in `θ` and leaves only
//! label-independent phases as functions of `φ`. A particle moving *against*
//! an axis `n̂` with helicity `h` is described by the `-h` spin state along
//! `n̂` (the usual second-particle convention for two-body states).

use std::sync::OnceLock;

use nalgebra::Matrix2;

use crate::error::{Error, Result};
use crate::kinematics::{Direction, FourMomentum};
use crate::linalg::{c, C64, I, Mat4, ONE, Vec4, ZERO};

/// Helicity of a fermion, or circular polarisation of a photon.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Handedness {
    L,
    R,
}

impl Handedness {
    pub const BOTH: [Handedness; 2] = [Handedness::L, Handedness::R];

    /// `-1` for L, `+1` for R.
    pub fn sign(self) -> f64 {
        match self {
            Handedness::L => -1.0,
            Handedness::R => 1.0,
        }
    }

    pub fn flipped(self) -> Handedness {
        match self {
            Handedness::L => Handedness::R,
            Handedness::R => Handedness::L,
        }
    }
}

/// Four-component Dirac spinor, MeV^{1/2}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BiSpinor(pub Vec4);

impl BiSpinor {
    /// Dirac adjoint `ū = u† γ⁰` as a row of components.
    pub fn bar(&self) -> nalgebra::RowVector4<C64> {
        self.0.adjoint() * gamma_set().gamma[0]
    }
}

/// Contravariant complex four-vector `ε^μ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarizationVector(pub [C64; 4]);

impl PolarizationVector {
    pub fn conj(&self) -> PolarizationVector {
        PolarizationVector(self.0.map(|z| z.conj()))
    }
}

/// Minkowski product of two complex four-vectors (no conjugation).
pub fn minkowski(a: &[C64; 4], b: &[C64; 4]) -> C64 {
    a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3]
}

pub fn to_complex(p: &FourMomentum) -> [C64; 4] {
    p.components().map(|x| c(x, 0.0))
}

pub struct GammaSet {
    pub gamma: [Mat4; 4],
    /// `g^{μν} = diag(1, -1, -1, -1)`.
    pub metric: [f64; 4],
}

fn pauli() -> [Matrix2<C64>; 3] {
    [
        Matrix2::new(ZERO, ONE, ONE, ZERO),
        Matrix2::new(ZERO, -I, I, ZERO),
        Matrix2::new(ONE, ZERO, ZERO, -ONE),
    ]
}

fn blocks(tl: Matrix2<C64>, tr: Matrix2<C64>, bl: Matrix2<C64>, br: Matrix2<C64>) -> Mat4 {
    let mut m = Mat4::zeros();
    m.fixed_view_mut::<2, 2>(0, 0).copy_from(&tl);
    m.fixed_view_mut::<2, 2>(0, 2).copy_from(&tr);
    m.fixed_view_mut::<2, 2>(2, 0).copy_from(&bl);
    m.fixed_view_mut::<2, 2>(2, 2).copy_from(&br);
    m
}

fn build_gamma_set() -> GammaSet {
    let z = Matrix2::zeros();
    let id = Matrix2::identity();
    let [s1, s2, s3] = pauli();
    GammaSet {
        gamma: [
            blocks(z, id, id, z),
            blocks(z, s1, -s1, z),
            blocks(z, s2, -s2, z),
            blocks(z, s3, -s3, z),
        ],
        metric: [1.0, -1.0, -1.0, -1.0],
    }
}

/// Chiral-representation gamma matrices, built once.
pub fn gamma_set() -> &'static GammaSet {
    static SET: OnceLock<GammaSet> = OnceLock::new();
    SET.get_or_init(build_gamma_set)
}

/// `v̸ = γ^μ g_{μν} v^ν` for a contravariant complex four-vector.
pub fn slash(v: &[C64; 4]) -> Mat4 {
    let g = gamma_set();
    g.gamma[0] * v[0] - g.gamma[1] * v[1] - g.gamma[2] * v[2] - g.gamma[3] * v[3]
}

/// Helicity operator `Σ·n̂`.
pub fn helicity_operator(n: [f64; 3]) -> Mat4 {
    let [s1, s2, s3] = pauli();
    let sn = s1 * c(n[0], 0.0) + s2 * c(n[1], 0.0) + s3 * c(n[2], 0.0);
    blocks(sn, Matrix2::zeros(), Matrix2::zeros(), sn)
}

/// Spin-1/2 state with projection `h/2` along `axis`.
pub fn two_spinor(axis: Direction, h: Handedness) -> [C64; 2] {
    let (s, co) = (axis.theta / 2.0).sin_cos();
    let lo = C64::from_polar(1.0, -axis.phi / 2.0);
    let hi = C64::from_polar(1.0, axis.phi / 2.0);
    match h {
        Handedness::R => [lo * co, hi * s],
        Handedness::L => [-lo * s, hi * co],
    }
}

fn check_on_shell(mom: &FourMomentum, m: f64) -> Result<()> {
    let resid = (mom.mass_squared() - m * m).abs();
    if !(mom.e > 0.0) || resid > 1e-9 * mom.e * mom.e {
        return Err(Error::Domain(format!(
            "momentum {:?} is not on shell for mass {m}",
            mom.components()
        )));
    }
    Ok(())
}

/// Spin axis and spin projection that realise helicity `h` for a momentum
/// parallel or antiparallel to `axis`.
fn spin_state(mom: &FourMomentum, axis: Direction, h: Handedness) -> Result<Handedness> {
    let n = axis.unit();
    let along = mom.px * n[0] + mom.py * n[1] + mom.pz * n[2];
    let norm = mom.three_norm();
    if norm == 0.0 {
        return Err(Error::Domain("helicity undefined at zero momentum".into()));
    }
    if (along.abs() - norm).abs() > 1e-9 * norm {
        return Err(Error::Domain("momentum is not collinear with its axis".into()));
    }
    Ok(if along > 0.0 { h } else { h.flipped() })
}

/// Helicity spinor `u(p, h)` with the direction read off the momentum
/// (`φ = 0` on the z axis).
pub fn helicity_spinor(mom: &FourMomentum, m: f64, h: Handedness) -> Result<BiSpinor> {
    let axis = Direction::of_vector(mom.three())
        .ok_or_else(|| Error::Domain("helicity undefined at zero momentum".into()))?;
    helicity_spinor_about(mom, m, h, axis)
}

/// Helicity spinor for a momentum collinear with `axis`. Phases are taken
/// from `axis`, so a family of momenta sharing a smooth axis gives a smooth
/// family of spinors.
pub fn helicity_spinor_about(
    mom: &FourMomentum,
    m: f64,
    h: Handedness,
    axis: Direction,
) -> Result<BiSpinor> {
    check_on_shell(mom, m)?;
    let spin = spin_state(mom, axis, h)?;
    let xi = two_spinor(axis, spin);
    let p = mom.three_norm();
    // Chiral components: sqrt(p·σ) ξ and sqrt(p·σ̄) ξ.
    let lower = (mom.e - h.sign() * p).max(0.0).sqrt();
    let upper = (mom.e + h.sign() * p).sqrt();
    Ok(BiSpinor(Vec4::new(
        xi[0] * lower,
        xi[1] * lower,
        xi[0] * upper,
        xi[1] * upper,
    )))
}

/// Circular polarisation vector of a real photon, direction from the momentum.
pub fn photon_polarization(mom: &FourMomentum, h: Handedness) -> Result<PolarizationVector> {
    let axis = Direction::of_vector(mom.three())
        .ok_or_else(|| Error::Domain("photon with zero momentum".into()))?;
    photon_polarization_about(mom, h, axis)
}

/// `ε_±(n̂) = ∓(θ̂ ± i φ̂)/√2` with `ε⁰ = 0`, for a photon collinear with `axis`.
pub fn photon_polarization_about(
    mom: &FourMomentum,
    h: Handedness,
    axis: Direction,
) -> Result<PolarizationVector> {
    if mom.mass_squared().abs() > 1e-9 * mom.e * mom.e {
        return Err(Error::Domain("photon momentum must be light-like".into()));
    }
    let spin = spin_state(mom, axis, h)?;
    let th = axis.theta_hat();
    let ph = axis.phi_hat();
    let s = spin.sign();
    let k = -s * std::f64::consts::FRAC_1_SQRT_2;
    let comp = |i: usize| c(k * th[i], k * s * ph[i]);
    Ok(PolarizationVector([ZERO, comp(0), comp(1), comp(2)]))
}
