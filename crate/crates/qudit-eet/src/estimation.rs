//! Where the model's numbers come from: exciton analysis of a pair of
//! two-site Frenkel blocks (energies, couplings, transition dipoles) and the
//! pulse-energy → γ conversion, with explicit unit handling.
//!
//! The derived ratios do not exactly reproduce the shipped canonical
//! defaults — labeling and sign conventions in this kind of estimate are
//! genuinely ambiguous — so the report lists every labeling convention and
//! marks which model entries are derived here versus assigned constants.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{CouplingSign, QuditModel, TruncationMode};

/// CODATA-2018 constants, SI.
pub const HBAR: f64 = 1.054571817e-34; // J·s
pub const EPSILON_0: f64 = 8.8541878128e-12; // F/m
pub const SPEED_OF_LIGHT: f64 = 2.99792458e8; // m/s
pub const SPEED_OF_LIGHT_CM: f64 = 2.99792458e10; // cm/s
/// 1 Debye in C·m.
pub const DEBYE: f64 = 3.33564e-30;

#[derive(Debug, Error)]
pub enum EstimationError {
    #[error("inter-chromophore matrix must have zero diagonal blocks; entry ({row},{col}) = {got}")]
    BadBlockStructure { row: usize, col: usize, got: f64 },
    #[error("inter-chromophore matrix must be symmetric; ({row},{col}) = {got} vs ({col},{row}) = {mirror}")]
    NotSymmetric {
        row: usize,
        col: usize,
        got: f64,
        mirror: f64,
    },
    #[error("pulse {field} must be {requirement}, got {got}")]
    InvalidPulse {
        field: &'static str,
        requirement: &'static str,
        got: f64,
    },
    #[error("{field} must be finite")]
    NonFinite { field: &'static str },
    #[error("coupling J10,01 vanishes under the primary labeling; ratios are undefined")]
    DegenerateCouplingUnit,
}

/// One chromophore's 2×2 site-basis excitation Hamiltonian, cm⁻¹.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrenkelBlock {
    pub site_energies: [f64; 2],
    pub coupling: f64,
}

/// Exciton eigenbasis of a block: energies ascending, eigenvectors as rows
/// with the largest-magnitude component made positive.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExcitonBasis {
    pub energies: [f64; 2],
    pub vectors: [[f64; 2]; 2],
}

impl ExcitonBasis {
    /// QᵀΛQ reassembled, for reconstruction tests.
    pub fn reconstruct(&self) -> [[f64; 2]; 2] {
        let mut h = [[0.0; 2]; 2];
        for (k, row) in self.vectors.iter().enumerate() {
            for i in 0..2 {
                for j in 0..2 {
                    h[i][j] += self.energies[k] * row[i] * row[j];
                }
            }
        }
        h
    }
}

fn phase_fix_2(v: [f64; 2]) -> [f64; 2] {
    let flip = if v[1].abs() > v[0].abs() { v[1] < 0.0 } else { v[0] < 0.0 };
    if flip { [-v[0], -v[1]] } else { v }
}

/// Closed-form diagonalization of a real symmetric 2×2 block:
/// λ = tr/2 ± √((Δ/2)² + v²).
pub fn diagonalize_block(b: &FrenkelBlock) -> ExcitonBasis {
    let [e1, e2] = b.site_energies;
    let v = b.coupling;
    if v == 0.0 {
        let (energies, vectors) = if e1 <= e2 {
            ([e1, e2], [[1.0, 0.0], [0.0, 1.0]])
        } else {
            ([e2, e1], [[0.0, 1.0], [1.0, 0.0]])
        };
        return ExcitonBasis { energies, vectors };
    }
    let half_tr = 0.5 * (e1 + e2);
    let rad = f64::hypot(0.5 * (e1 - e2), v);
    let energies = [half_tr - rad, half_tr + rad];
    let mut vectors = [[0.0; 2]; 2];
    for (k, &lam) in energies.iter().enumerate() {
        // (H − λ)(x, y)ᵀ = 0 ⇒ (x, y) ∝ (v, λ − e1); exact orthogonality by
        // the characteristic equation
        let raw = [v, lam - e1];
        let norm = f64::hypot(raw[0], raw[1]);
        vectors[k] = phase_fix_2([raw[0] / norm, raw[1] / norm]);
    }
    ExcitonBasis { energies, vectors }
}

/// The four inter-chromophore exciton couplings, cm⁻¹, under one labeling.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExcitonCouplings {
    pub j10_01: f64,
    pub j20_02: f64,
    pub j10_02: f64,
    pub j20_01: f64,
}

impl ExcitonCouplings {
    /// (label, value) pairs in the reporting order.
    pub fn entries(&self) -> [(&'static str, f64); 4] {
        [
            ("J10,01", self.j10_01),
            ("J20,02", self.j20_02),
            ("J10,02", self.j10_02),
            ("J20,01", self.j20_01),
        ]
    }
}

fn check_block_structure(v: &[[f64; 4]; 4]) -> Result<(), EstimationError> {
    for (i, row) in v.iter().enumerate() {
        for (j, &vij) in row.iter().enumerate() {
            if !vij.is_finite() {
                return Err(EstimationError::NonFinite { field: "v" });
            }
            let same_block = (i < 2) == (j < 2);
            if same_block && vij != 0.0 {
                return Err(EstimationError::BadBlockStructure {
                    row: i,
                    col: j,
                    got: vij,
                });
            }
            if (vij - v[j][i]).abs() > 1e-9 {
                return Err(EstimationError::NotSymmetric {
                    row: i,
                    col: j,
                    got: vij,
                    mirror: v[j][i],
                });
            }
        }
    }
    Ok(())
}

/// J_{j0,0k} = ⟨j|_A V̂ |k⟩_B: sandwich the inter-block 2×2 of V between the
/// exciton rows. Site order in V is (A₁, A₂, B₁, B₂); diagonal blocks must
/// be zero (intra-chromophore mixing already lives in the Frenkel blocks).
pub fn exciton_couplings(
    basis_a: &ExcitonBasis,
    basis_b: &ExcitonBasis,
    v: &[[f64; 4]; 4],
) -> Result<ExcitonCouplings, EstimationError> {
    check_block_structure(v)?;
    let sandwich = |ja: usize, kb: usize| -> f64 {
        let a = basis_a.vectors[ja];
        let b = basis_b.vectors[kb];
        let mut acc = 0.0;
        for i in 0..2 {
            for k in 0..2 {
                acc += a[i] * v[i][2 + k] * b[k];
            }
        }
        acc
    };
    Ok(ExcitonCouplings {
        j10_01: sandwich(0, 0),
        j20_02: sandwich(1, 1),
        j10_02: sandwich(0, 1),
        j20_01: sandwich(1, 0),
    })
}

/// |d₁₀| and |d₂₀| in Debye, plus their ratio |d₂₀|/|d₁₀|.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TransitionDipoles {
    pub d10: f64,
    pub d20: f64,
    /// |d₂₀|/|d₁₀|; meaningless (NaN) if |d₁₀| = 0.
    pub ratio: f64,
}

/// Exciton transition dipoles: d_k = Σᵢ (row k)ᵢ·(site dipole i), magnitudes
/// taken Euclidean.
pub fn transition_dipoles(
    basis: &ExcitonBasis,
    site1: &[f64; 3],
    site2: &[f64; 3],
) -> TransitionDipoles {
    let combine = |row: [f64; 2]| -> f64 {
        let mut sq = 0.0;
        for c in 0..3 {
            let comp = row[0] * site1[c] + row[1] * site2[c];
            sq += comp * comp;
        }
        sq.sqrt()
    };
    let d10 = combine(basis.vectors[0]);
    let d20 = combine(basis.vectors[1]);
    TransitionDipoles {
        d10,
        d20,
        ratio: d20 / d10,
    }
}

/// ω = 2π·c·ν̃ with ν̃ in cm⁻¹.
pub fn wavenumber_to_angular(nu: f64) -> f64 {
    2.0 * std::f64::consts::PI * SPEED_OF_LIGHT_CM * nu
}

/// A laser pulse in SI units.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PulseSpec {
    /// W, J. Zero is allowed (no light, γ = 0).
    pub energy: f64,
    /// T, s.
    pub duration: f64,
    /// A, m².
    pub cross_section: f64,
    /// d, C·m.
    pub dipole: f64,
}

impl PulseSpec {
    /// Build from bench units: nJ, fs, μm², Debye.
    pub fn from_lab_units(
        energy_nj: f64,
        duration_fs: f64,
        cross_section_um2: f64,
        dipole_debye: f64,
    ) -> Self {
        Self {
            energy: energy_nj * 1e-9,
            duration: duration_fs * 1e-15,
            cross_section: cross_section_um2 * 1e-12,
            dipole: dipole_debye * DEBYE,
        }
    }
}

/// γ = (d/ħ)·√(2WT/(cAε₀)) — the field amplitude of a flat pulse of energy
/// W over duration T and spot area A, times dT/ħ.
pub fn gamma_from_pulse(p: &PulseSpec) -> Result<f64, EstimationError> {
    let checks = [
        ("energy", p.energy, false),
        ("duration", p.duration, true),
        ("cross_section", p.cross_section, true),
        ("dipole", p.dipole, true),
    ];
    for (field, value, strict) in checks {
        if !value.is_finite() {
            return Err(EstimationError::NonFinite { field });
        }
        if value < 0.0 || (strict && value == 0.0) {
            return Err(EstimationError::InvalidPulse {
                field,
                requirement: if strict { "positive" } else { "non-negative" },
                got: value,
            });
        }
    }
    let field_sq = 2.0 * p.energy * p.duration / (SPEED_OF_LIGHT * p.cross_section * EPSILON_0);
    Ok(p.dipole / HBAR * field_sq.sqrt())
}

/// The four site transition-dipole vectors, Debye.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SiteDipoles {
    pub a1: [f64; 3],
    pub a2: [f64; 3],
    pub b1: [f64; 3],
    pub b2: [f64; 3],
}

/// Exciton couplings under one |1⟩/|2⟩ labeling choice.
#[derive(Clone, Debug)]
pub struct LabeledCouplings {
    pub label: String,
    pub couplings: ExcitonCouplings,
}

/// Everything the estimate produced, for rendering and auditing.
#[derive(Clone, Debug)]
pub struct EstimationReport {
    pub basis_a: ExcitonBasis,
    pub basis_b: ExcitonBasis,
    /// Primary labeling: |1⟩ = lower exciton on both chromophores.
    pub couplings: ExcitonCouplings,
    /// All four labeling conventions, primary first.
    pub conventions: Vec<LabeledCouplings>,
    pub dipoles_a: TransitionDipoles,
    pub dipoles_b: TransitionDipoles,
    /// rad/s, from chromophore A's excitons.
    pub omega1: f64,
    pub omega2: f64,
    pub level_ratio: f64,
    /// J ≡ J10,01 under the primary labeling.
    pub coupling_unit_cm: f64,
    pub coupling_unit_rad: f64,
    /// ω₁/|J|.
    pub r: f64,
    /// Assigned, not derived: coupling tail (J13,31 J11,30 J11,03 J12,30)/J.
    pub assigned_coupling_tail: [f64; 4],
    /// Assigned, not derived: ω₃/ω and |d₁₃|/d.
    pub assigned_level3: f64,
    pub assigned_dipole13: f64,
}

impl EstimationReport {
    /// Human-readable report; every number also appears in `key_values`.
    pub fn render_text(&self) -> String {
        use std::fmt::Write;
        let mut s = String::new();
        let _ = writeln!(s, "parameter estimation report");
        let _ = writeln!(s, "constants: hbar = {HBAR:e} J s, epsilon0 = {EPSILON_0:e} F/m, c = {SPEED_OF_LIGHT:e} m/s, 1 D = {DEBYE:e} C m");
        let _ = writeln!(s);
        for (name, basis, dip) in [
            ("A", &self.basis_a, &self.dipoles_a),
            ("B", &self.basis_b, &self.dipoles_b),
        ] {
            let _ = writeln!(
                s,
                "chromophore {name}: exciton energies {:.6} / {:.6} cm^-1",
                basis.energies[0], basis.energies[1]
            );
            let _ = writeln!(
                s,
                "  eigenvector rows: ({:.9}, {:.9}), ({:.9}, {:.9})",
                basis.vectors[0][0], basis.vectors[0][1], basis.vectors[1][0], basis.vectors[1][1]
            );
            let _ = writeln!(
                s,
                "  transition dipoles: |d10| = {:.6} D, |d20| = {:.6} D, ratio = {:.6}",
                dip.d10, dip.d20, dip.ratio
            );
        }
        let _ = writeln!(s);
        let _ = writeln!(s, "exciton couplings by labeling convention (cm^-1):");
        for convention in &self.conventions {
            let entries = convention.couplings.entries();
            let _ = write!(s, "  [{}]", convention.label);
            for (label, value) in entries {
                let _ = write!(s, " {label} = {value:.6}");
            }
            let _ = writeln!(s);
        }
        let _ = writeln!(s);
        let _ = writeln!(
            s,
            "angular frequencies: omega1 = {:.6e} rad/s, omega2 = {:.6e} rad/s, omega2/omega1 = {:.9}",
            self.omega1, self.omega2, self.level_ratio
        );
        let _ = writeln!(
            s,
            "coupling unit: J = J10,01 = {:.6} cm^-1 = {:.6e} rad/s, r = omega1/|J| = {:.3}",
            self.coupling_unit_cm, self.coupling_unit_rad, self.r
        );
        let _ = writeln!(s);
        let _ = writeln!(s, "derived model entries use the primary labeling (|1> = lower exciton).");
        let _ = writeln!(
            s,
            "assigned (not derived) entries: omega3/omega = {}, |d13|/d = {}, coupling tail = {:?}",
            self.assigned_level3, self.assigned_dipole13, self.assigned_coupling_tail
        );
        s
    }

    /// Machine-readable key/value pairs (flat, fixed order).
    pub fn key_values(&self) -> Vec<(String, f64)> {
        let mut kv: Vec<(String, f64)> = Vec::new();
        for (name, basis, dip) in [
            ("a", &self.basis_a, &self.dipoles_a),
            ("b", &self.basis_b, &self.dipoles_b),
        ] {
            kv.push((format!("exciton_energy_{name}1_cm"), basis.energies[0]));
            kv.push((format!("exciton_energy_{name}2_cm"), basis.energies[1]));
            for (k, row) in basis.vectors.iter().enumerate() {
                kv.push((format!("eigenvector_{name}{}_site1", k + 1), row[0]));
                kv.push((format!("eigenvector_{name}{}_site2", k + 1), row[1]));
            }
            kv.push((format!("dipole_{name}10_debye"), dip.d10));
            kv.push((format!("dipole_{name}20_debye"), dip.d20));
            kv.push((format!("dipole_ratio_{name}"), dip.ratio));
        }
        for convention in &self.conventions {
            let tag: String = convention
                .label
                .chars()
                .map(|c| if c.is_ascii_alphanumeric() { c.to_ascii_lowercase() } else { '_' })
                .collect();
            for (label, value) in convention.couplings.entries() {
                let label = label.replace(',', "_").to_lowercase();
                kv.push((format!("coupling_{tag}_{label}_cm"), value));
            }
        }
        for (key, value) in [
            ("omega1_rad_s", self.omega1),
            ("omega2_rad_s", self.omega2),
            ("level_ratio_omega2_omega1", self.level_ratio),
            ("coupling_unit_cm", self.coupling_unit_cm),
            ("coupling_unit_rad_s", self.coupling_unit_rad),
            ("r_omega1_over_j", self.r),
        ] {
            kv.push((key.to_string(), value));
        }
        kv
    }
}

fn swapped(basis: &ExcitonBasis) -> ExcitonBasis {
    ExcitonBasis {
        energies: [basis.energies[1], basis.energies[0]],
        vectors: [basis.vectors[1], basis.vectors[0]],
    }
}

/// Run the full estimate: diagonalize both blocks, form exciton couplings
/// under every labeling convention, combine site dipoles, and convert to the
/// dimensionless ratios of a [`QuditModel`].
///
/// The returned model carries the *computed* ratios (never silently replaced
/// by the canonical defaults); entries that cannot be derived from these
/// inputs — the level-3 spacing, the |1⟩→|3⟩ dipole, and the doubly-excited
/// coupling tail — are assigned from the canonical defaults and labeled as
/// such in the report.
pub fn estimate_table1(
    block_a: &FrenkelBlock,
    block_b: &FrenkelBlock,
    v: &[[f64; 4]; 4],
    dipoles: &SiteDipoles,
) -> Result<(QuditModel, EstimationReport), EstimationError> {
    for (field, block) in [("block_a", block_a), ("block_b", block_b)] {
        if !block.site_energies.iter().all(|e| e.is_finite()) || !block.coupling.is_finite() {
            return Err(EstimationError::NonFinite { field });
        }
    }
    let basis_a = diagonalize_block(block_a);
    let basis_b = diagonalize_block(block_b);

    let mut conventions = Vec::with_capacity(4);
    for (swap_a, swap_b) in [(false, false), (false, true), (true, false), (true, true)] {
        let a = if swap_a { swapped(&basis_a) } else { basis_a };
        let b = if swap_b { swapped(&basis_b) } else { basis_b };
        let label = format!(
            "A:|1>={}, B:|1>={}",
            if swap_a { "upper" } else { "lower" },
            if swap_b { "upper" } else { "lower" }
        );
        conventions.push(LabeledCouplings {
            label,
            couplings: exciton_couplings(&a, &b, v)?,
        });
    }
    let couplings = conventions[0].couplings;
    if couplings.j10_01 == 0.0 {
        return Err(EstimationError::DegenerateCouplingUnit);
    }

    let dipoles_a = transition_dipoles(&basis_a, &dipoles.a1, &dipoles.a2);
    let dipoles_b = transition_dipoles(&basis_b, &dipoles.b1, &dipoles.b2);

    let omega1 = wavenumber_to_angular(basis_a.energies[0]);
    let omega2 = wavenumber_to_angular(basis_a.energies[1]);
    let level_ratio = basis_a.energies[1] / basis_a.energies[0];

    let canonical = crate::model::default_model();
    let assigned_coupling_tail = [
        canonical.coupling_ratios[4],
        canonical.coupling_ratios[5],
        canonical.coupling_ratios[6],
        canonical.coupling_ratios[7],
    ];
    let assigned_level3 = canonical.level_ratios[3];
    let assigned_dipole13 = canonical.dipole_ratios[2];

    let j = couplings.j10_01;
    let model = QuditModel {
        level_ratios: vec![0.0, 1.0, level_ratio, assigned_level3],
        dipole_ratios: vec![1.0, dipoles_a.ratio, assigned_dipole13],
        coupling_ratios: vec![
            1.0,
            couplings.j20_02 / j,
            couplings.j20_01 / j,
            couplings.j10_02 / j,
            assigned_coupling_tail[0],
            assigned_coupling_tail[1],
            assigned_coupling_tail[2],
            assigned_coupling_tail[3],
        ],
        coupling_sign: if j < 0.0 { CouplingSign::Negative } else { CouplingSign::Positive },
        truncation: TruncationMode::FourLevel,
    };

    let coupling_unit_rad = wavenumber_to_angular(j.abs());
    let report = EstimationReport {
        basis_a,
        basis_b,
        couplings,
        conventions,
        dipoles_a,
        dipoles_b,
        omega1,
        omega2,
        level_ratio,
        coupling_unit_cm: j,
        coupling_unit_rad,
        r: omega1 / coupling_unit_rad,
        assigned_coupling_tail,
        assigned_level3,
        assigned_dipole13,
    };
    Ok((model, report))
}

/// Shipped default inputs for the estimate (two-site blocks, inter-block
/// couplings, and site dipoles of a chlorophyll-like dimer pair).
pub fn default_block_a() -> FrenkelBlock {
    FrenkelBlock {
        site_energies: [16050.0, 15808.0],
        coupling: -87.0,
    }
}

pub fn default_block_b() -> FrenkelBlock {
    FrenkelBlock {
        site_energies: [16373.0, 15889.0],
        coupling: 86.0,
    }
}

pub fn default_v() -> [[f64; 4]; 4] {
    [
        [0.0, 0.0, 4.0, -3.0],
        [0.0, 0.0, 3.0, 8.0],
        [4.0, 3.0, 0.0, 0.0],
        [-3.0, 8.0, 0.0, 0.0],
    ]
}

pub fn default_site_dipoles() -> SiteDipoles {
    SiteDipoles {
        a1: [-1.42, 4.54, -13.70],
        a2: [13.58, 3.53, 1.78],
        b1: [1.50, 2.60, -14.20],
        b2: [4.98, -12.51, -3.81],
    }
}

pub fn default_pulse() -> PulseSpec {
    PulseSpec::from_lab_units(5.0, 10.0, 2500.0 * std::f64::consts::PI, 5.0)
}
