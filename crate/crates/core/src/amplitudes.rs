//! Tree-level helicity amplitudes `M_{λ→η}` for e-μ and Compton scattering.
//!
//! Labels are `(particle 1, particle 2)` with particle 1 the electron. The
//! overall phase of every amplitude is convention dependent and never used.

use std::fmt;

use crate::dirac::{
    helicity_spinor_about, photon_polarization_about, slash, to_complex, BiSpinor, Handedness,
    PolarizationVector,
};
use crate::error::{Error, Result};
use crate::kinematics::{com_momenta, mandelstam, ComMomenta, Constants, ProcessKind, ScatteringPoint};
use crate::linalg::{c, C64, Mat4};

/// Joint helicity label of the two particles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JointLabel(pub Handedness, pub Handedness);

impl JointLabel {
    pub const LL: JointLabel = JointLabel(Handedness::L, Handedness::L);
    pub const LR: JointLabel = JointLabel(Handedness::L, Handedness::R);
    pub const RL: JointLabel = JointLabel(Handedness::R, Handedness::L);
    pub const RR: JointLabel = JointLabel(Handedness::R, Handedness::R);

    /// Canonical basis order of the two-qubit space.
    pub const ALL: [JointLabel; 4] = [Self::LL, Self::LR, Self::RL, Self::RR];

    pub fn index(self) -> usize {
        let bit = |h: Handedness| match h {
            Handedness::L => 0,
            Handedness::R => 1,
        };
        2 * bit(self.0) + bit(self.1)
    }

    pub fn from_index(i: usize) -> JointLabel {
        Self::ALL[i]
    }

    /// Parity image: both handedness labels flipped.
    pub fn parity(self) -> JointLabel {
        JointLabel(self.0.flipped(), self.1.flipped())
    }
}

impl fmt::Display for JointLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ch = |h: Handedness| match h {
            Handedness::L => 'L',
            Handedness::R => 'R',
        };
        write!(f, "{}{}", ch(self.0), ch(self.1))
    }
}

impl std::str::FromStr for JointLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        JointLabel::ALL
            .into_iter()
            .find(|l| l.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::config(s, "expected one of LL, LR, RL, RR"))
    }
}

/// All 16 amplitudes at one scattering point, `m[λ_in][η_out]`.
#[derive(Debug, Clone, PartialEq)]
pub struct HelicityAmplitudeTable {
    pub kind: ProcessKind,
    pub point: ScatteringPoint,
    pub m: [[C64; 4]; 4],
}

impl HelicityAmplitudeTable {
    pub fn get(&self, lam: JointLabel, eta: JointLabel) -> C64 {
        self.m[lam.index()][eta.index()]
    }

    /// `Σ_{λη} |M|²`.
    pub fn total_weight(&self) -> f64 {
        self.m.iter().flatten().map(|z| z.norm_sqr()).sum()
    }
}

fn check_point(kind: ProcessKind, pt: &ScatteringPoint) -> Result<()> {
    if pt.p == 0.0 {
        return Err(Error::Infrared);
    }
    if kind == ProcessKind::ElectronMuon && pt.theta == 0.0 {
        return Err(Error::Pole);
    }
    pt.validate()
}

/// Spinors (and for Compton, polarisation vectors) of all four legs.
struct Legs {
    mom: ComMomenta,
    e_in: [BiSpinor; 2],
    e_out: [BiSpinor; 2],
    second: SecondLegs,
}

enum SecondLegs {
    Muon {
        u_in: [BiSpinor; 2],
        u_out: [BiSpinor; 2],
    },
    Photon {
        eps_in: [PolarizationVector; 2],
        eps_out: [PolarizationVector; 2],
    },
}

fn hidx(h: Handedness) -> usize {
    match h {
        Handedness::L => 0,
        Handedness::R => 1,
    }
}

impl Legs {
    fn new(kind: ProcessKind, pt: &ScatteringPoint, consts: &Constants) -> Result<Legs> {
        check_point(kind, pt)?;
        let mom = com_momenta(kind, pt, consts)?;
        let (m1, m2) = mom.masses;
        let [p1, p2] = mom.incoming;
        let [q1, q2] = mom.outgoing;
        let spinors = |p, m, axis| -> Result<[BiSpinor; 2]> {
            Ok([
                helicity_spinor_about(p, m, Handedness::L, axis)?,
                helicity_spinor_about(p, m, Handedness::R, axis)?,
            ])
        };
        let e_in = spinors(&p1, m1, mom.in_axis)?;
        let e_out = spinors(&q1, m1, mom.out_axis)?;
        let second = match kind {
            ProcessKind::ElectronMuon => SecondLegs::Muon {
                u_in: spinors(&p2, m2, mom.in_axis)?,
                u_out: spinors(&q2, m2, mom.out_axis)?,
            },
            ProcessKind::Compton => {
                let pol = |k, axis| -> Result<[PolarizationVector; 2]> {
                    Ok([
                        photon_polarization_about(k, Handedness::L, axis)?,
                        photon_polarization_about(k, Handedness::R, axis)?,
                    ])
                };
                SecondLegs::Photon {
                    eps_in: pol(&p2, mom.in_axis)?,
                    eps_out: pol(&q2, mom.out_axis)?,
                }
            }
        };
        Ok(Legs {
            mom,
            e_in,
            e_out,
            second,
        })
    }
}

/// `ū_out γ^μ u_in` for every μ.
fn current(out: &BiSpinor, inc: &BiSpinor) -> [C64; 4] {
    let bar = out.bar();
    let g = crate::dirac::gamma_set();
    std::array::from_fn(|mu| (bar * g.gamma[mu] * inc.0)[0])
}

struct EmuContext {
    coupling2: f64,
    t: f64,
    electron: [[[C64; 4]; 2]; 2],
    muon: [[[C64; 4]; 2]; 2],
}

impl EmuContext {
    fn new(legs: &Legs, consts: &Constants) -> EmuContext {
        let SecondLegs::Muon { u_in, u_out } = &legs.second else {
            unreachable!("e-mu legs always carry muon spinors")
        };
        let cur = |out: &[BiSpinor; 2], inc: &[BiSpinor; 2]| {
            std::array::from_fn(|a| std::array::from_fn(|b| current(&out[b], &inc[a])))
        };
        let e = consts.e_coupling();
        EmuContext {
            coupling2: e * e,
            t: mandelstam(&legs.mom).t,
            electron: cur(&legs.e_out, &legs.e_in),
            muon: cur(u_out, u_in),
        }
    }

    /// `M = e² J_e·J_μ / t` from `iM = ū(-ieγ^μ)u (-i g_μν / t) ū(-ieγ^ν)u`.
    fn amplitude(&self, lam: JointLabel, eta: JointLabel) -> C64 {
        let je = &self.electron[hidx(lam.0)][hidx(eta.0)];
        let jm = &self.muon[hidx(lam.1)][hidx(eta.1)];
        let dot = je[0] * jm[0] - je[1] * jm[1] - je[2] * jm[2] - je[3] * jm[3];
        dot * (self.coupling2 / self.t)
    }
}

struct ComptonContext {
    coupling2: f64,
    /// `p̸₁ + k̸ + m` and `p̸₁ − k̸' + m`.
    s_num: Mat4,
    u_num: Mat4,
    s_den: f64,
    u_den: f64,
}

impl ComptonContext {
    fn new(legs: &Legs, consts: &Constants) -> ComptonContext {
        let m = legs.mom.masses.0;
        let [p1, k] = legs.mom.incoming;
        let kp = legs.mom.outgoing[1];
        let mass = Mat4::identity() * c(m, 0.0);
        let e = consts.e_coupling();
        ComptonContext {
            coupling2: e * e,
            s_num: slash(&to_complex(&(p1 + k))) + mass,
            u_num: slash(&to_complex(&(p1 - kp))) + mass,
            s_den: (p1 + k).mass_squared() - m * m,
            u_den: (p1 - kp).mass_squared() - m * m,
        }
    }

    /// `M_s + M_u` with arbitrary vectors standing in for `ε(k)` and `ε*(k')`.
    fn contract(&self, ubar_out: &BiSpinor, u_in: &BiSpinor, eps_in: &[C64; 4], eps_out_conj: &[C64; 4]) -> C64 {
        let a = slash(eps_in);
        let b = slash(eps_out_conj);
        let bar = ubar_out.bar();
        let ms = (bar * b * self.s_num * a * u_in.0)[0] / self.s_den;
        let mu = (bar * a * self.u_num * b * u_in.0)[0] / self.u_den;
        -(ms + mu) * self.coupling2
    }
}

fn compton_entry(legs: &Legs, ctx: &ComptonContext, lam: JointLabel, eta: JointLabel) -> C64 {
    let SecondLegs::Photon { eps_in, eps_out } = &legs.second else {
        unreachable!("Compton legs always carry photon polarisations")
    };
    ctx.contract(
        &legs.e_out[hidx(eta.0)],
        &legs.e_in[hidx(lam.0)],
        &eps_in[hidx(lam.1)].0,
        &eps_out[hidx(eta.1)].conj().0,
    )
}

/// Single t-channel photon exchange, electron line `λ₁→η₁`, muon line `λ₂→η₂`.
pub fn emu_amplitude(
    pt: &ScatteringPoint,
    lam: JointLabel,
    eta: JointLabel,
    consts: &Constants,
) -> Result<C64> {
    let legs = Legs::new(ProcessKind::ElectronMuon, pt, consts)?;
    Ok(EmuContext::new(&legs, consts).amplitude(lam, eta))
}

/// Sum of the s- and u-channel diagrams; electron `λ₁→η₁`, photon `λ₂→η₂`.
pub fn compton_amplitude(
    pt: &ScatteringPoint,
    lam: JointLabel,
    eta: JointLabel,
    consts: &Constants,
) -> Result<C64> {
    let legs = Legs::new(ProcessKind::Compton, pt, consts)?;
    let ctx = ComptonContext::new(&legs, consts);
    Ok(compton_entry(&legs, &ctx, lam, eta))
}

/// Compton amplitude with the outgoing photon's `ε*(k')` replaced by an
/// arbitrary four-vector. Passing `k'` itself checks gauge invariance.
pub fn compton_amplitude_with_outgoing_vector(
    pt: &ScatteringPoint,
    lam: JointLabel,
    eta_electron: Handedness,
    outgoing_vector: [C64; 4],
    consts: &Constants,
) -> Result<C64> {
    let legs = Legs::new(ProcessKind::Compton, pt, consts)?;
    let ctx = ComptonContext::new(&legs, consts);
    let SecondLegs::Photon { eps_in, .. } = &legs.second else {
        unreachable!()
    };
    Ok(ctx.contract(
        &legs.e_out[hidx(eta_electron)],
        &legs.e_in[hidx(lam.0)],
        &eps_in[hidx(lam.1)].0,
        &outgoing_vector,
    ))
}

/// Evaluates all 16 amplitudes of `kind` at `pt`.
pub fn amplitude_table(
    kind: ProcessKind,
    pt: &ScatteringPoint,
    consts: &Constants,
) -> Result<HelicityAmplitudeTable> {
    let legs = Legs::new(kind, pt, consts)?;
    let mut m = [[C64::default(); 4]; 4];
    match kind {
        ProcessKind::ElectronMuon => {
            let ctx = EmuContext::new(&legs, consts);
            for lam in JointLabel::ALL {
                for eta in JointLabel::ALL {
                    m[lam.index()][eta.index()] = ctx.amplitude(lam, eta);
                }
            }
        }
        ProcessKind::Compton => {
            let ctx = ComptonContext::new(&legs, consts);
            for lam in JointLabel::ALL {
                for eta in JointLabel::ALL {
                    m[lam.index()][eta.index()] = compton_entry(&legs, &ctx, lam, eta);
                }
            }
        }
    }
    Ok(HelicityAmplitudeTable {
        kind,
        point: *pt,
        m,
    })
}
