//! Preparation of one chromophore by a short classical pulse.
//!
//! In the frame co-rotating with the drive carrier, the light–matter
//! Hamiltonian is time-independent (rotating-wave approximation), so the
//! whole pulse is a single propagator of the drive generator M below. The
//! pulse lasts one unit of dimensionless time; all energies are
//! pre-multiplied by the pulse duration T (δ = ωT, γ = E₀dT/ħ).

use num_complex::Complex64 as C64;
use thiserror::Error;

use crate::linalg::{self, ComplexMatrix, LinalgError};
use crate::model::{DimensionlessParams, ModelError, QuditModel, TruncationMode};
use crate::state::StateVector;

#[derive(Debug, Error)]
pub enum ExcitationError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// M = Ĥ_cr·T/ħ, the rotating-frame drive generator for a unit-duration
/// pulse. Hermitian, d×d; entries vanish exactly wherever there is no level
/// detuning and no dipole-allowed transition.
#[derive(Debug, Clone)]
pub struct DriveGenerator {
    pub matrix: ComplexMatrix,
}

/// Assemble the drive generator.
///
/// Diagonal: (δ·ρ, δ·ω₁/ω, δ·ω₂/ω, δ·(ω₃/ω − ρ)) with ρ = ω_L/ω — level |0⟩
/// carries the +ω_L frame phase and the two-photon level |3⟩ the −ω_L one.
/// Off-diagonal: γ·|dₙₘ|/d on the dipole-allowed pairs, real by convention.
pub fn build_drive_generator(
    m: &QuditModel,
    p: &DimensionlessParams,
) -> Result<DriveGenerator, ExcitationError> {
    m.validate()?;
    p.validate()?;
    let d = m.dimension();
    let mut g = ComplexMatrix::zeros(d, d);
    g[(0, 0)] = C64::new(p.delta * p.drive_ratio, 0.0);
    for k in 1..d {
        g[(k, k)] = C64::new(p.delta * m.level_ratios[k], 0.0);
    }
    if d == 4 {
        g[(3, 3)] = C64::new(p.delta * (m.level_ratios[3] - p.drive_ratio), 0.0);
    }
    for ((a, b), ratio) in m.dipole_transitions() {
        let v = C64::new(p.gamma * ratio, 0.0);
        g[(a, b)] = v;
        g[(b, a)] = v;
    }
    Ok(DriveGenerator { matrix: g })
}

/// The frame transformation Û at dimensionless time `phase_time`:
/// diag(e^{+iδ_L·t}, 1, …, 1, e^{−iδ_L·t}) with δ_L = δ·ρ; the last entry
/// only acquires a phase in the four-level case (two-photon level).
pub fn rotating_frame_unitary(
    m: &QuditModel,
    p: &DimensionlessParams,
    phase_time: f64,
) -> ComplexMatrix {
    let d = m.dimension();
    let delta_l = p.delta * p.drive_ratio * phase_time;
    let mut u = ComplexMatrix::identity(d);
    u[(0, 0)] = C64::from_polar(1.0, delta_l);
    if d == 4 {
        u[(3, 3)] = C64::from_polar(1.0, -delta_l);
    }
    u
}

/// State of chromophore A right after the pulse:
/// ψ_in = Û(1)†·exp(−iM)·Û(0)·|0⟩ with Û(0) = I — move into the rotating
/// frame at t = 0, evolve for the unit pulse, and rotate back at t = 1. The
/// residual |0⟩/|3⟩ frame phases matter for the joint dynamics and are kept.
///
/// In `SingleExcitonManifold` mode the state is |1⟩ by definition (exactly
/// one excitation assumed); γ is ignored.
pub fn prepare_initial_state(
    m: &QuditModel,
    p: &DimensionlessParams,
) -> Result<StateVector, ExcitationError> {
    if m.truncation == TruncationMode::SingleExcitonManifold {
        m.validate()?;
        p.validate()?;
        return Ok(StateVector::basis_state(2, 1));
    }
    let gen = build_drive_generator(m, p)?;
    let pulse = linalg::propagator(&gen.matrix, 1.0)?;
    let back = rotating_frame_unitary(m, p, 1.0).dagger();
    let full = back.mul(&pulse)?;
    let ground = StateVector::basis_state(m.dimension(), 0);
    let amps = full.matvec(ground.amplitudes())?;
    Ok(StateVector::from_amplitudes(amps).expect("unitary image of a finite state is finite"))
}

/// pₙ = |⟨n|ψ⟩|². Assumes a unit-norm input (then Σpₙ = 1 to rounding).
pub fn populations(psi: &StateVector) -> Vec<f64> {
    psi.amplitudes().iter().map(|a| a.norm_sqr()).collect()
}
