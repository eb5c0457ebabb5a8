//! The runnable numerical experiments: entanglement traces, argmax searches
//! over γ₂, the excitation sweep, the (γ, γ₂) surface, and the truncation
//! comparison.
//!
//! One spectral decomposition of the joint generator is shared per model —
//! the generator does not depend on γ, so sweeps reuse it across the whole
//! excitation axis. Grids are evaluated in parallel but collected in index
//! order, so results are identical bytes regardless of thread count.

use rayon::prelude::*;
use thiserror::Error;

use crate::dynamics::{
    build_joint_generator, DynamicsError, EvolutionGrid, JointEvolution, PairEvolver,
};
use crate::entanglement::{
    entropy_of_entanglement, schmidt_values, EntanglementError, EntanglementTrace,
};
use crate::excitation::{populations, prepare_initial_state, ExcitationError};
use crate::model::{truncate, DimensionlessParams, ModelError, QuditModel, TruncationMode};

/// Headroom on the entropy bound checks; E may undershoot 0 or overshoot
/// log₂ d by rounding noise only.
pub const ENTROPY_SLACK: f64 = 1e-9;
/// Each refinement pass samples the two coarse cells around the argmax at
/// this multiple of the coarse density.
pub const REFINEMENT_FACTOR: usize = 10;
/// Target coarse-grid resolution: neighboring entropy samples around the
/// argmax should differ by less than this, else an extra pass runs.
pub const NEIGHBOR_DELTA_LIMIT: f64 = 0.01;

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Excitation(#[from] ExcitationError),
    #[error(transparent)]
    Dynamics(#[from] DynamicsError),
    #[error(transparent)]
    Entanglement(#[from] EntanglementError),
    #[error("invariant '{name}' violated at gamma = {gamma}, gamma2 = {gamma2}: {detail}")]
    InvariantViolation {
        name: &'static str,
        gamma: f64,
        gamma2: f64,
        detail: String,
    },
}

/// A diagonalized joint system plus the bookkeeping for per-sample checks.
pub struct PairEngine {
    evolution: JointEvolution,
    qudit_dim: usize,
    entropy_cap: f64,
}

impl PairEngine {
    pub fn new(m: &QuditModel, p: &DimensionlessParams) -> Result<Self, ExperimentError> {
        m.validate()?;
        p.validate()?;
        let gen = build_joint_generator(m, p)?;
        let qudit_dim = gen.qudit_dim();
        Ok(Self {
            evolution: JointEvolution::new(&gen, p)?,
            qudit_dim,
            entropy_cap: (qudit_dim as f64).log2(),
        })
    }

    pub fn evolution(&self) -> &JointEvolution {
        &self.evolution
    }

    /// One sample: evolve, check norm, take the Schmidt entropy, check
    /// bounds. Every grid in this module funnels through here.
    fn entropy_at(
        &self,
        ev: &PairEvolver<'_>,
        gamma: f64,
        gamma2: f64,
    ) -> Result<f64, ExperimentError> {
        let psi = ev.state_at(gamma2);
        let s = schmidt_values(&psi, (self.qudit_dim, self.qudit_dim)).map_err(|e| {
            ExperimentError::InvariantViolation {
                name: "state norm",
                gamma,
                gamma2,
                detail: e.to_string(),
            }
        })?;
        let e = entropy_of_entanglement(&s);
        if !e.is_finite() || e < -ENTROPY_SLACK || e > self.entropy_cap + ENTROPY_SLACK {
            return Err(ExperimentError::InvariantViolation {
                name: "entropy bounds",
                gamma,
                gamma2,
                detail: format!("E = {e}, allowed [0, {}]", self.entropy_cap),
            });
        }
        Ok(e)
    }

    fn trace(
        &self,
        ev: &PairEvolver<'_>,
        gamma: f64,
        grid: &EvolutionGrid,
        truncation: TruncationMode,
    ) -> Result<EntanglementTrace, ExperimentError> {
        let entropies: Vec<f64> = grid
            .values()
            .par_iter()
            .map(|&g2| self.entropy_at(ev, gamma, g2))
            .collect::<Result<_, _>>()?;
        Ok(EntanglementTrace {
            gamma,
            truncation,
            samples: grid.values().iter().copied().zip(entropies).collect(),
        })
    }

    /// Evaluate one refinement window [lo, hi] at 2·REFINEMENT_FACTOR + 1
    /// points, updating the best (γ₂, E) in place. Returns the window around
    /// the new argmax for a possible further pass.
    fn refine_window(
        &self,
        ev: &PairEvolver<'_>,
        gamma: f64,
        lo: f64,
        hi: f64,
        best: &mut (f64, f64),
    ) -> Result<(f64, f64), ExperimentError> {
        let n = 2 * REFINEMENT_FACTOR;
        let step = (hi - lo) / n as f64;
        let mut points = Vec::with_capacity(n + 1);
        let mut best_i = None;
        for i in 0..=n {
            let g2 = if i == n { hi } else { lo + step * i as f64 };
            let e = self.entropy_at(ev, gamma, g2)?;
            points.push(g2);
            if e > best.1 {
                *best = (g2, e);
                best_i = Some(i);
            }
        }
        Ok(match best_i {
            Some(i) => (points[i.saturating_sub(1)], points[(i + 1).min(n)]),
            None => (lo, hi),
        })
    }

    fn max_search(
        &self,
        ev: &PairEvolver<'_>,
        gamma: f64,
        grid: &EvolutionGrid,
    ) -> Result<MaxSearch, ExperimentError> {
        let values = grid.values();
        let entropies: Vec<f64> = values
            .par_iter()
            .map(|&g2| self.entropy_at(ev, gamma, g2))
            .collect::<Result<_, _>>()?;
        let mut ci = 0;
        for (i, &e) in entropies.iter().enumerate() {
            if e > entropies[ci] {
                ci = i;
            }
        }
        let coarse = (values[ci], entropies[ci]);
        let mut neighbor_delta = 0.0_f64;
        if ci > 0 {
            neighbor_delta = neighbor_delta.max((entropies[ci] - entropies[ci - 1]).abs());
        }
        if ci + 1 < values.len() {
            neighbor_delta = neighbor_delta.max((entropies[ci + 1] - entropies[ci]).abs());
        }
        let mut best = coarse;
        let mut window = (values[ci.saturating_sub(1)], values[(ci + 1).min(values.len() - 1)]);
        let passes = if neighbor_delta > NEIGHBOR_DELTA_LIMIT { 2 } else { 1 };
        let mut refined = false;
        for _ in 0..passes {
            if window.1 <= window.0 {
                break; // degenerate window (single-point grid): keep coarse
            }
            window = self.refine_window(ev, gamma, window.0, window.1, &mut best)?;
            refined = true;
        }
        Ok(MaxSearch {
            e_max: best.1,
            gamma2_at_max: best.0,
            coarse_e_max: coarse.1,
            coarse_gamma2: coarse.0,
            neighbor_delta,
            refined,
        })
    }
}

/// Result of the refined argmax search over a γ₂ grid.
#[derive(Clone, Copy, Debug)]
pub struct MaxSearch {
    pub e_max: f64,
    pub gamma2_at_max: f64,
    /// Grid-level maximum before refinement; e_max ≥ coarse_e_max always.
    pub coarse_e_max: f64,
    pub coarse_gamma2: f64,
    /// Largest |ΔE| between the coarse argmax and its neighbors — a grid
    /// resolution diagnostic.
    pub neighbor_delta: f64,
    /// False only when the grid was too degenerate to refine.
    pub refined: bool,
}

/// E(γ₂) over `grid` for the excitation fixed by `p`.
pub fn entanglement_trace(
    m: &QuditModel,
    p: &DimensionlessParams,
    grid: &EvolutionGrid,
) -> Result<EntanglementTrace, ExperimentError> {
    let engine = PairEngine::new(m, p)?;
    let psi_a = prepare_initial_state(m, p)?;
    let ev = engine.evolution.evolver(&psi_a)?;
    engine.trace(&ev, p.gamma, grid, m.truncation)
}

/// Coarse grid argmax of E(γ₂) plus local refinement.
pub fn max_entanglement(
    m: &QuditModel,
    p: &DimensionlessParams,
    grid: &EvolutionGrid,
) -> Result<MaxSearch, ExperimentError> {
    let engine = PairEngine::new(m, p)?;
    let psi_a = prepare_initial_state(m, p)?;
    let ev = engine.evolution.evolver(&psi_a)?;
    engine.max_search(&ev, p.gamma, grid)
}

#[derive(Clone, Copy, Debug)]
pub struct GammaSweepRow {
    pub gamma: f64,
    /// Post-pulse qudit-A populations, padded with zeros past the model
    /// dimension.
    pub populations: [f64; 4],
    pub e_max: f64,
    pub e_max_gamma2: f64,
}

#[derive(Clone, Debug)]
pub struct GammaSweep {
    pub rows: Vec<GammaSweepRow>,
    /// Largest decrease of e_max between consecutive rows (input order);
    /// 0 when e_max is non-decreasing.
    pub largest_emax_drop: f64,
}

/// For each γ in `gammas`: pulse populations and the refined e_max over
/// `grid`. The joint diagonalization is shared across all rows.
pub fn sweep_gamma(
    m: &QuditModel,
    p: &DimensionlessParams,
    gammas: &[f64],
    grid: &EvolutionGrid,
) -> Result<GammaSweep, ExperimentError> {
    let engine = PairEngine::new(m, p)?;
    let rows: Vec<GammaSweepRow> = gammas
        .par_iter()
        .map(|&gamma| {
            let pi = DimensionlessParams { gamma, ..*p };
            pi.validate()?;
            let psi_a = prepare_initial_state(m, &pi)?;
            let mut pops = [0.0; 4];
            for (slot, v) in pops.iter_mut().zip(populations(&psi_a)) {
                *slot = v;
            }
            let ev = engine.evolution.evolver(&psi_a)?;
            let ms = engine.max_search(&ev, gamma, grid)?;
            Ok(GammaSweepRow {
                gamma,
                populations: pops,
                e_max: ms.e_max,
                e_max_gamma2: ms.gamma2_at_max,
            })
        })
        .collect::<Result<_, ExperimentError>>()?;
    let mut largest_drop = 0.0_f64;
    for w in rows.windows(2) {
        largest_drop = largest_drop.max(w[0].e_max - w[1].e_max);
    }
    Ok(GammaSweep {
        rows,
        largest_emax_drop: largest_drop,
    })
}

#[derive(Clone, Copy, Debug)]
pub struct SurfaceCell {
    pub gamma: f64,
    pub gamma2: f64,
    pub entropy: f64,
}

/// E over the full (γ, γ₂) rectangle, row-major with γ outermost. Each γ row
/// goes through exactly the trace code path, so a row equals the standalone
/// trace at that γ bit for bit.
pub fn sweep_surface(
    m: &QuditModel,
    p: &DimensionlessParams,
    gammas: &[f64],
    grid: &EvolutionGrid,
) -> Result<Vec<SurfaceCell>, ExperimentError> {
    let engine = PairEngine::new(m, p)?;
    let rows: Vec<Vec<SurfaceCell>> = gammas
        .par_iter()
        .map(|&gamma| {
            let pi = DimensionlessParams { gamma, ..*p };
            pi.validate()?;
            let psi_a = prepare_initial_state(m, &pi)?;
            let ev = engine.evolution.evolver(&psi_a)?;
            let trace = engine.trace(&ev, gamma, grid, m.truncation)?;
            Ok(trace
                .samples
                .into_iter()
                .map(|(gamma2, entropy)| SurfaceCell {
                    gamma,
                    gamma2,
                    entropy,
                })
                .collect())
        })
        .collect::<Result<_, ExperimentError>>()?;
    Ok(rows.into_iter().flatten().collect())
}

#[derive(Clone, Debug)]
pub struct TruncationComparison {
    pub gamma: f64,
    /// One trace per mode, in [`TruncationMode::ALL`] order.
    pub traces: Vec<EntanglementTrace>,
    pub maxima: Vec<(TruncationMode, MaxSearch)>,
    /// Max pointwise |ΔE| for every unordered mode pair.
    pub pairwise_deviation: Vec<(TruncationMode, TruncationMode, f64)>,
}

/// Run the same excitation + evolution with the model cut to every
/// truncation, on a shared grid.
pub fn compare_truncations(
    base: &QuditModel,
    p: &DimensionlessParams,
    gamma: f64,
    grid: &EvolutionGrid,
) -> Result<TruncationComparison, ExperimentError> {
    let pi = DimensionlessParams { gamma, ..*p };
    let mut traces = Vec::with_capacity(TruncationMode::ALL.len());
    let mut maxima = Vec::with_capacity(TruncationMode::ALL.len());
    for mode in TruncationMode::ALL {
        let mt = truncate(base, mode)?;
        let engine = PairEngine::new(&mt, &pi)?;
        let psi_a = prepare_initial_state(&mt, &pi)?;
        let ev = engine.evolution.evolver(&psi_a)?;
        traces.push(engine.trace(&ev, gamma, grid, mode)?);
        maxima.push((mode, engine.max_search(&ev, gamma, grid)?));
    }
    let mut pairwise_deviation = Vec::new();
    for i in 0..traces.len() {
        for j in i + 1..traces.len() {
            let dev = traces[i]
                .samples
                .iter()
                .zip(&traces[j].samples)
                .map(|(&(_, a), &(_, b))| (a - b).abs())
                .fold(0.0_f64, f64::max);
            pairwise_deviation.push((TruncationMode::ALL[i], TruncationMode::ALL[j], dev));
        }
    }
    Ok(TruncationComparison {
        gamma,
        traces,
        maxima,
        pairwise_deviation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{default_model, default_params};
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    fn sem_model() -> QuditModel {
        truncate(&default_model(), TruncationMode::SingleExcitonManifold).unwrap()
    }

    #[test]
    fn zero_excitation_stays_product() {
        let m = default_model();
        let p = DimensionlessParams {
            gamma: 0.0,
            ..default_params()
        };
        let grid = EvolutionGrid::linspace(3.0, 301).unwrap();
        let trace = entanglement_trace(&m, &p, &grid).unwrap();
        assert_eq!(trace.samples.len(), 301);
        for &(_, e) in &trace.samples {
            assert!(e.abs() < 1e-9, "E = {e}");
        }
    }

    #[test]
    fn sem_trace_is_binary_entropy() {
        let p = default_params();
        let grid = EvolutionGrid::linspace(FRAC_PI_2, 501).unwrap();
        let trace = entanglement_trace(&sem_model(), &p, &grid).unwrap();
        assert_eq!(trace.truncation, TruncationMode::SingleExcitonManifold);
        for &(g2, e) in &trace.samples {
            let c = g2.cos().powi(2);
            let s = 1.0 - c;
            let expected = if c <= 0.0 || s <= 0.0 {
                0.0
            } else {
                -c * c.log2() - s * s.log2()
            };
            assert!((e - expected).abs() < 1e-9, "γ₂ = {g2}: {e} vs {expected}");
        }
    }

    #[test]
    fn sem_max_is_one_at_quarter_pi() {
        let p = default_params();
        let grid = EvolutionGrid::linspace(FRAC_PI_2, 2001).unwrap();
        let ms = max_entanglement(&sem_model(), &p, &grid).unwrap();
        assert!(ms.refined);
        assert!((ms.e_max - 1.0).abs() < 1e-6, "e_max = {}", ms.e_max);
        assert!((ms.gamma2_at_max - FRAC_PI_4).abs() < 1e-3);
        assert!(ms.e_max >= ms.coarse_e_max);
    }

    #[test]
    fn surface_row_equals_standalone_trace() {
        let m = default_model();
        let p = default_params();
        let grid = EvolutionGrid::linspace(2.0, 101).unwrap();
        let cells = sweep_surface(&m, &p, &[0.2, 0.41], &grid).unwrap();
        assert_eq!(cells.len(), 202);
        let p41 = DimensionlessParams { gamma: 0.41, ..p };
        let trace = entanglement_trace(&m, &p41, &grid).unwrap();
        for (cell, &(g2, e)) in cells[101..].iter().zip(&trace.samples) {
            assert_eq!(cell.gamma, 0.41);
            assert_eq!(cell.gamma2, g2);
            assert_eq!(cell.entropy, e); // bit-exact: same code path
        }
    }

    #[test]
    fn sweep_gamma_rows() {
        let m = default_model();
        let p = default_params();
        let grid = EvolutionGrid::linspace(PI, 401).unwrap();
        let sweep = sweep_gamma(&m, &p, &[0.0, 0.2, 0.41], &grid).unwrap();
        assert_eq!(sweep.rows.len(), 3);
        let r0 = &sweep.rows[0];
        assert!((r0.populations[0] - 1.0).abs() < 1e-12);
        assert!(r0.e_max < 1e-9);
        assert!(sweep.rows[2].e_max > sweep.rows[1].e_max);
        assert_eq!(sweep.largest_emax_drop, 0.0);
        for row in &sweep.rows {
            let total: f64 = row.populations.iter().sum();
            assert!((total - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn truncation_comparison_shape() {
        let base = default_model();
        let p = default_params();
        let grid = EvolutionGrid::linspace(PI, 801).unwrap();
        let cmp = compare_truncations(&base, &p, 0.41, &grid).unwrap();
        assert_eq!(cmp.traces.len(), 4);
        assert_eq!(cmp.maxima.len(), 4);
        assert_eq!(cmp.pairwise_deviation.len(), 6);
        for (trace, mode) in cmp.traces.iter().zip(TruncationMode::ALL) {
            assert_eq!(trace.truncation, mode);
            assert_eq!(trace.samples.len(), 801);
        }
        // SEM ignores the pulse shape entirely and peaks at exactly 1
        let sem = &cmp.maxima[3];
        assert_eq!(sem.0, TruncationMode::SingleExcitonManifold);
        assert!((sem.1.e_max - 1.0).abs() < 1e-5);
        // identical grids: deviation of a trace against itself is 0
        for &(a, b, dev) in &cmp.pairwise_deviation {
            assert!(a != b);
            assert!((0.0..=2.0).contains(&dev));
        }
    }

    #[test]
    fn degenerate_grid_reports_coarse_value() {
        let p = default_params();
        let grid = EvolutionGrid::linspace(0.0, 1).unwrap();
        let ms = max_entanglement(&sem_model(), &p, &grid).unwrap();
        assert!(!ms.refined);
        assert_eq!(ms.e_max, ms.coarse_e_max);
        assert_eq!(ms.gamma2_at_max, 0.0);
    }
}
