//! Centre-of-mass kinematics for elastic two-body scattering.
//!
//! All momenta are in MeV with metric signature `(+, -, -, -)`. The incoming
//! pair travels along `±z`; the outgoing pair along `±q̂(θ, φ)`.

use std::f64::consts::PI;
use std::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};

/// Physical constants. Masses in MeV.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Constants {
    pub m_e: f64,
    pub m_mu: f64,
    /// Fine-structure constant.
    pub alpha: f64,
}

impl Constants {
    pub const CODATA: Constants = Constants {
        m_e: 0.510999,
        m_mu: 105.6584,
        alpha: 1.0 / 137.035999,
    };

    /// Dimensionless gauge coupling `e = sqrt(4π α)`.
    pub fn e_coupling(&self) -> f64 {
        (4.0 * PI * self.alpha).sqrt()
    }
}

impl Default for Constants {
    fn default() -> Self {
        Self::CODATA
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProcessKind {
    /// `e⁻ μ⁻ → e⁻ μ⁻`, single t-channel photon exchange.
    ElectronMuon,
    /// `e⁻ γ → e⁻ γ`, s- and u-channel electron exchange.
    Compton,
}

impl ProcessKind {
    /// Masses of (particle 1, particle 2). Particle 1 is always the electron.
    pub fn masses(self, c: &Constants) -> (f64, f64) {
        match self {
            ProcessKind::ElectronMuon => (c.m_e, c.m_mu),
            ProcessKind::Compton => (c.m_e, 0.0),
        }
    }

    /// Smallest admissible polar angle; the e-μ t-channel pole excludes `θ = 0`.
    pub fn theta_is_admissible(self, theta: f64) -> bool {
        match self {
            ProcessKind::ElectronMuon => theta > 0.0 && theta <= PI,
            ProcessKind::Compton => (0.0..=PI).contains(&theta),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ProcessKind::ElectronMuon => "emu",
            ProcessKind::Compton => "compton",
        }
    }
}

impl std::str::FromStr for ProcessKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "emu" | "e-mu" | "electron-muon" => Ok(ProcessKind::ElectronMuon),
            "compton" => Ok(ProcessKind::Compton),
            _ => Err(Error::config(s, "expected `emu` or `compton`")),
        }
    }
}

/// External parameters of the filtered two-particle state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatteringPoint {
    /// COM three-momentum magnitude, MeV.
    pub p: f64,
    /// Polar scattering angle of particle 1, rad.
    pub theta: f64,
    /// Azimuthal angle, rad.
    pub phi: f64,
}

impl ScatteringPoint {
    /// Validating constructor; `phi` is wrapped into `[0, 2π)`.
    pub fn new(p: f64, theta: f64, phi: f64) -> Result<Self> {
        let pt = ScatteringPoint {
            p,
            theta,
            phi: phi.rem_euclid(2.0 * PI),
        };
        pt.validate()?;
        Ok(pt)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.p > 0.0) || !self.p.is_finite() {
            return Err(Error::Domain(format!("p must be positive, got {}", self.p)));
        }
        if !(0.0..=PI).contains(&self.theta) {
            return Err(Error::Domain(format!(
                "theta must lie in [0, pi], got {}",
                self.theta
            )));
        }
        if !self.phi.is_finite() {
            return Err(Error::Domain("phi must be finite".into()));
        }
        Ok(())
    }
}

/// Polar/azimuthal angles of a unit vector.
///
/// Spinor and polarisation phases are tied to these angles rather than to the
/// Cartesian components, so conventions stay smooth through the poles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Direction {
    pub theta: f64,
    pub phi: f64,
}

impl Direction {
    pub const PLUS_Z: Direction = Direction { theta: 0.0, phi: 0.0 };

    pub fn new(theta: f64, phi: f64) -> Self {
        Direction { theta, phi }
    }

    /// Angles of a three-vector; `phi = 0` on the z axis.
    pub fn of_vector(v: [f64; 3]) -> Option<Self> {
        let r = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if r == 0.0 {
            return None;
        }
        let rho = v[0].hypot(v[1]);
        let theta = rho.atan2(v[2]);
        let phi = if rho <= 1e-15 * r { 0.0 } else { v[1].atan2(v[0]) };
        Some(Direction { theta, phi })
    }

    pub fn unit(&self) -> [f64; 3] {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [st * cp, st * sp, ct]
    }

    /// Unit vector `θ̂ = ∂n̂/∂θ`.
    pub fn theta_hat(&self) -> [f64; 3] {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [ct * cp, ct * sp, -st]
    }

    /// Unit vector `φ̂ = ẑ × n̂ / sin θ` (well defined at the poles too).
    pub fn phi_hat(&self) -> [f64; 3] {
        let (sp, cp) = self.phi.sin_cos();
        [-sp, cp, 0.0]
    }
}

/// Contravariant four-vector `(E, px, py, pz)` in MeV.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FourMomentum {
    pub e: f64,
    pub px: f64,
    pub py: f64,
    pub pz: f64,
}

impl FourMomentum {
    pub const ZERO: FourMomentum = FourMomentum {
        e: 0.0,
        px: 0.0,
        py: 0.0,
        pz: 0.0,
    };

    pub fn new(e: f64, px: f64, py: f64, pz: f64) -> Self {
        FourMomentum { e, px, py, pz }
    }

    /// On-shell momentum of mass `m` and magnitude `p` along `dir`.
    pub fn on_shell(m: f64, p: f64, dir: Direction) -> Self {
        let [x, y, z] = dir.unit();
        FourMomentum {
            e: (p * p + m * m).sqrt(),
            px: p * x,
            py: p * y,
            pz: p * z,
        }
    }

    pub fn three(&self) -> [f64; 3] {
        [self.px, self.py, self.pz]
    }

    pub fn three_norm(&self) -> f64 {
        (self.px * self.px + self.py * self.py + self.pz * self.pz).sqrt()
    }

    /// Minkowski product.
    pub fn dot(&self, o: &FourMomentum) -> f64 {
        self.e * o.e - self.px * o.px - self.py * o.py - self.pz * o.pz
    }

    pub fn mass_squared(&self) -> f64 {
        self.dot(self)
    }

    pub fn components(&self) -> [f64; 4] {
        [self.e, self.px, self.py, self.pz]
    }
}

impl Add for FourMomentum {
    type Output = FourMomentum;
    fn add(self, o: FourMomentum) -> FourMomentum {
        FourMomentum::new(self.e + o.e, self.px + o.px, self.py + o.py, self.pz + o.pz)
    }
}

impl Sub for FourMomentum {
    type Output = FourMomentum;
    fn sub(self, o: FourMomentum) -> FourMomentum {
        FourMomentum::new(self.e - o.e, self.px - o.px, self.py - o.py, self.pz - o.pz)
    }
}

impl Neg for FourMomentum {
    type Output = FourMomentum;
    fn neg(self) -> FourMomentum {
        FourMomentum::new(-self.e, -self.px, -self.py, -self.pz)
    }
}

/// The four external momenta of a COM two-body scattering.
///
/// Index 0 is the electron, index 1 the muon or photon. `in_axis` / `out_axis`
/// are the directions of particle 0; particle 1 travels against them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComMomenta {
    pub incoming: [FourMomentum; 2],
    pub outgoing: [FourMomentum; 2],
    pub in_axis: Direction,
    pub out_axis: Direction,
    pub masses: (f64, f64),
}

pub fn com_momenta(kind: ProcessKind, pt: &ScatteringPoint, c: &Constants) -> Result<ComMomenta> {
    if !(pt.p > 0.0) {
        return Err(Error::Domain(format!("p must be positive, got {}", pt.p)));
    }
    let (m1, m2) = kind.masses(c);
    let in_axis = Direction::PLUS_Z;
    let out_axis = Direction::new(pt.theta, pt.phi);
    let p1 = FourMomentum::on_shell(m1, pt.p, in_axis);
    let q1 = FourMomentum::on_shell(m1, pt.p, out_axis);
    let p2 = FourMomentum::new((pt.p * pt.p + m2 * m2).sqrt(), -p1.px, -p1.py, -p1.pz);
    let q2 = FourMomentum::new(p2.e, -q1.px, -q1.py, -q1.pz);
    Ok(ComMomenta {
        incoming: [p1, p2],
        outgoing: [q1, q2],
        in_axis,
        out_axis,
        masses: (m1, m2),
    })
}

/// Mandelstam invariants in MeV².
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mandelstam {
    pub s: f64,
    /// `(q₁ − p₁)²`: momentum transfer along the electron line.
    pub t: f64,
    /// `(q₂ − p₁)²`.
    pub u: f64,
}

pub fn mandelstam(m: &ComMomenta) -> Mandelstam {
    let [p1, p2] = m.incoming;
    let [q1, q2] = m.outgoing;
    Mandelstam {
        s: (p1 + p2).mass_squared(),
        t: (q1 - p1).mass_squared(),
        u: (q2 - p1).mass_squared(),
    }
}
