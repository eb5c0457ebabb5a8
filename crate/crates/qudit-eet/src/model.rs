//! The dimensionless chromophore model and its truncations.
//!
//! A single chromophore is a ladder of up to four levels |0⟩–|3⟩ whose
//! spacings, transition dipoles, and inter-chromophore couplings are all
//! expressed relative to a reference scale: level energies as ωₙ/ω, dipoles
//! as |dₙₘ|/d, couplings as J_x/J. The canonical values shipped as defaults
//! come from a chlorophyll-like parameter estimate (see the `estimation`
//! module for where such numbers come from).

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("{field} must have {expected} entries for {mode}, got {got}")]
    WrongLength {
        field: &'static str,
        mode: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("level_ratios[0] is the reference ground level and must be 0, got {got}")]
    GroundLevelNonzero { got: f64 },
    #[error("{field}[{index}] must be finite")]
    NonFinite { field: &'static str, index: usize },
    #[error("truncation must start from a four-level model, got {found}")]
    AlreadyTruncated { found: &'static str },
    #[error("{name} must be {requirement}, got {got}")]
    InvalidParam {
        name: &'static str,
        requirement: &'static str,
        got: f64,
    },
}

/// Ladder truncations of the four-level chromophore.
///
/// `SingleExcitonManifold` shares the two-level structure but pins the
/// prepared state to |1⟩ exactly (one excitation by assumption, no drive).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TruncationMode {
    FourLevel,
    ThreeLevel,
    TwoLevel,
    SingleExcitonManifold,
}

impl TruncationMode {
    pub fn dimension(self) -> usize {
        match self {
            TruncationMode::FourLevel => 4,
            TruncationMode::ThreeLevel => 3,
            TruncationMode::TwoLevel | TruncationMode::SingleExcitonManifold => 2,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            TruncationMode::FourLevel => "four-level",
            TruncationMode::ThreeLevel => "three-level",
            TruncationMode::TwoLevel => "two-level",
            TruncationMode::SingleExcitonManifold => "single-exciton-manifold",
        }
    }

    pub const ALL: [TruncationMode; 4] = [
        TruncationMode::FourLevel,
        TruncationMode::ThreeLevel,
        TruncationMode::TwoLevel,
        TruncationMode::SingleExcitonManifold,
    ];
}

/// Overall sign carried by every coupling matrix element (the coupling
/// ratios are quoted relative to |J|; the physical J may be negative).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CouplingSign {
    Negative,
    Positive,
}

impl CouplingSign {
    pub fn factor(self) -> f64 {
        match self {
            CouplingSign::Negative => -1.0,
            CouplingSign::Positive => 1.0,
        }
    }
}

/// One inter-chromophore coupling term J·(|ket⟩⟨bra| + h.c.) in the pair
/// basis |m⟩_A⊗|n⟩_B.
#[derive(Clone, Copy, Debug)]
pub struct CouplingTerm {
    pub label: &'static str,
    pub ket: (usize, usize),
    pub bra: (usize, usize),
}

impl CouplingTerm {
    pub fn max_level(&self) -> usize {
        self.ket.0.max(self.ket.1).max(self.bra.0).max(self.bra.1)
    }
}

/// The eight coupling terms of the full four-level pair, in the fixed order
/// used by `QuditModel::coupling_ratios`.
pub const COUPLING_TERMS: [CouplingTerm; 8] = [
    CouplingTerm { label: "J10,01", ket: (1, 0), bra: (0, 1) },
    CouplingTerm { label: "J20,02", ket: (2, 0), bra: (0, 2) },
    CouplingTerm { label: "J20,01", ket: (2, 0), bra: (0, 1) },
    CouplingTerm { label: "J10,02", ket: (1, 0), bra: (0, 2) },
    CouplingTerm { label: "J13,31", ket: (1, 3), bra: (3, 1) },
    CouplingTerm { label: "J11,30", ket: (1, 1), bra: (3, 0) },
    CouplingTerm { label: "J11,03", ket: (1, 1), bra: (0, 3) },
    CouplingTerm { label: "J12,30", ket: (1, 2), bra: (3, 0) },
];

/// Dipole-allowed transitions, in the fixed order used by
/// `QuditModel::dipole_ratios`: 0↔1, 0↔2, 1↔3. All other pairs are dark.
pub const DIPOLE_TRANSITIONS: [(usize, usize); 3] = [(0, 1), (0, 2), (1, 3)];

fn surviving_coupling_count(d: usize) -> usize {
    COUPLING_TERMS.iter().filter(|t| t.max_level() < d).count()
}

fn surviving_dipole_count(d: usize) -> usize {
    DIPOLE_TRANSITIONS.iter().filter(|&&(a, b)| a < d && b < d).count()
}

/// Level structure, dipoles, and couplings of one chromophore species (both
/// chromophores in a pair are taken identical).
#[derive(Clone, Debug, PartialEq)]
pub struct QuditModel {
    /// ωₙ/ω per level; entry 0 is the ground level and must be 0.
    pub level_ratios: Vec<f64>,
    /// |dₙₘ|/d per surviving entry of [`DIPOLE_TRANSITIONS`].
    pub dipole_ratios: Vec<f64>,
    /// J_x/J per surviving entry of [`COUPLING_TERMS`]; signed.
    pub coupling_ratios: Vec<f64>,
    pub coupling_sign: CouplingSign,
    pub truncation: TruncationMode,
}

impl QuditModel {
    pub fn dimension(&self) -> usize {
        self.truncation.dimension()
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        let d = self.dimension();
        let mode = self.truncation.label();
        if self.level_ratios.len() != d {
            return Err(ModelError::WrongLength {
                field: "level_ratios",
                mode,
                expected: d,
                got: self.level_ratios.len(),
            });
        }
        if self.dipole_ratios.len() != surviving_dipole_count(d) {
            return Err(ModelError::WrongLength {
                field: "dipole_ratios",
                mode,
                expected: surviving_dipole_count(d),
                got: self.dipole_ratios.len(),
            });
        }
        if self.coupling_ratios.len() != surviving_coupling_count(d) {
            return Err(ModelError::WrongLength {
                field: "coupling_ratios",
                mode,
                expected: surviving_coupling_count(d),
                got: self.coupling_ratios.len(),
            });
        }
        for (field, values) in [
            ("level_ratios", &self.level_ratios),
            ("dipole_ratios", &self.dipole_ratios),
            ("coupling_ratios", &self.coupling_ratios),
        ] {
            if let Some(index) = values.iter().position(|v| !v.is_finite()) {
                return Err(ModelError::NonFinite { field, index });
            }
        }
        if self.level_ratios[0] != 0.0 {
            return Err(ModelError::GroundLevelNonzero {
                got: self.level_ratios[0],
            });
        }
        Ok(())
    }

    /// Surviving coupling terms paired with their signed ratios, in the
    /// canonical order. Call only on a validated model.
    pub fn coupling_terms(&self) -> impl Iterator<Item = (&'static CouplingTerm, f64)> + '_ {
        let d = self.dimension();
        COUPLING_TERMS
            .iter()
            .filter(move |t| t.max_level() < d)
            .zip(self.coupling_ratios.iter().copied())
    }

    /// Surviving dipole-allowed transitions with their ratios.
    pub fn dipole_transitions(&self) -> impl Iterator<Item = ((usize, usize), f64)> + '_ {
        let d = self.dimension();
        DIPOLE_TRANSITIONS
            .iter()
            .copied()
            .filter(move |&(a, b)| a < d && b < d)
            .zip(self.dipole_ratios.iter().copied())
    }
}

impl Default for QuditModel {
    fn default() -> Self {
        default_model()
    }
}

/// Dimensionless knobs of the excitation + pair-evolution pipeline.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DimensionlessParams {
    /// γ = E₀dT/ħ, the degree of initial excitation (pulse area scale).
    pub gamma: f64,
    /// δ = ωT, reference level spacing over the pulse duration.
    pub delta: f64,
    /// ω_L/ω; 1 means the drive is resonant with the |0⟩→|1⟩ transition.
    pub drive_ratio: f64,
    /// r = ω/|J|: how fast free phases wind per unit of coupling time γ₂.
    pub r: f64,
    /// Upper end of the γ₂ = |J|t/ħ evolution window.
    pub gamma2_max: f64,
}

impl DimensionlessParams {
    pub fn validate(&self) -> Result<(), ModelError> {
        for (name, v) in [
            ("gamma", self.gamma),
            ("delta", self.delta),
            ("drive_ratio", self.drive_ratio),
            ("r", self.r),
            ("gamma2_max", self.gamma2_max),
        ] {
            if !v.is_finite() {
                return Err(ModelError::InvalidParam {
                    name,
                    requirement: "finite",
                    got: v,
                });
            }
        }
        if self.gamma < 0.0 {
            return Err(ModelError::InvalidParam {
                name: "gamma",
                requirement: "non-negative",
                got: self.gamma,
            });
        }
        if self.r <= 0.0 {
            return Err(ModelError::InvalidParam {
                name: "r",
                requirement: "positive",
                got: self.r,
            });
        }
        if self.gamma2_max < 0.0 {
            return Err(ModelError::InvalidParam {
                name: "gamma2_max",
                requirement: "non-negative",
                got: self.gamma2_max,
            });
        }
        Ok(())
    }
}

impl Default for DimensionlessParams {
    fn default() -> Self {
        default_params()
    }
}

/// Canonical four-level model: levels (0, ω, 1.04ω, 2ω), dipoles
/// (d, 0.94d, d), and the eight coupling ratios of the full pair.
pub fn default_model() -> QuditModel {
    QuditModel {
        level_ratios: vec![0.0, 1.0, 1.04, 2.0],
        dipole_ratios: vec![1.0, 0.94, 1.0],
        coupling_ratios: vec![1.0, 0.50, -0.67, 0.72, 0.90, 0.81, 0.81, 0.76],
        coupling_sign: CouplingSign::Negative,
        truncation: TruncationMode::FourLevel,
    }
}

/// Canonical dimensionless parameters: γ = 0.41, δ = ωT = 29.9,
/// resonant drive, r = ω/|J| = 2392, and a γ₂ window of [0, 5].
pub fn default_params() -> DimensionlessParams {
    DimensionlessParams {
        gamma: 0.41,
        delta: 29.9,
        drive_ratio: 1.0,
        r: 2392.0,
        gamma2_max: 5.0,
    }
}

/// Restrict a four-level model to `mode`, dropping every level, dipole, and
/// coupling that touches a removed level. Surviving entries are copied
/// exactly. Truncating an already-truncated model is rejected rather than
/// silently composed.
pub fn truncate(m: &QuditModel, mode: TruncationMode) -> Result<QuditModel, ModelError> {
    if m.truncation != TruncationMode::FourLevel {
        return Err(ModelError::AlreadyTruncated {
            found: m.truncation.label(),
        });
    }
    m.validate()?;
    if mode == TruncationMode::FourLevel {
        return Ok(m.clone());
    }
    let d = mode.dimension();
    let level_ratios = m.level_ratios[..d].to_vec();
    let dipole_ratios = DIPOLE_TRANSITIONS
        .iter()
        .zip(&m.dipole_ratios)
        .filter(|(&(a, b), _)| a < d && b < d)
        .map(|(_, &ratio)| ratio)
        .collect();
    let coupling_ratios = COUPLING_TERMS
        .iter()
        .zip(&m.coupling_ratios)
        .filter(|(t, _)| t.max_level() < d)
        .map(|(_, &ratio)| ratio)
        .collect();
    Ok(QuditModel {
        level_ratios,
        dipole_ratios,
        coupling_ratios,
        coupling_sign: m.coupling_sign,
        truncation: mode,
    })
}
