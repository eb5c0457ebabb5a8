//! Simulation of excitation transfer and entanglement generation between two
//! coupled four-level chromophores ("qudits").
//!
//! The crate is organized bottom-up:
//!
//! - [`linalg`]: dense complex matrices, Hermitian eigendecomposition, unitary
//!   propagators, singular values — everything downstream is built on these.
//! - [`model`]: the dimensionless qudit model (level spacings, transition
//!   dipoles, inter-qudit couplings) and its truncations.
//! - [`excitation`]: preparation of a single qudit by a short resonant pulse.
//! - [`dynamics`]: joint evolution of an excited qudit coupled to a ground-state
//!   partner.
//! - [`entanglement`]: Schmidt spectra and entropy of entanglement.
//! - [`estimation`]: chromophore parameter estimation from site-basis
//!   Hamiltonians, plus pulse-strength conversion.
//! - [`experiments`]: the sweep/trace drivers used by the CLI.
//!
//! All evolutions are generated spectrally from a single Hermitian
//! eigendecomposition, so grids of any density cost one diagonalization.

pub mod config;
pub mod dynamics;
pub mod entanglement;
pub mod estimation;
pub mod excitation;
pub mod experiments;
pub mod linalg;
pub mod model;
pub mod output;
pub mod state;
pub mod svg;
