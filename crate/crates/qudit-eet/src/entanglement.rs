//! Schmidt decomposition and entropy of entanglement for bipartite pure
//! states, with an independent reduced-density-matrix route used as an
//! internal cross-check.

use num_complex::Complex64 as C64;
use thiserror::Error;

use crate::linalg::{eig_hermitian, singular_values, ComplexMatrix, LinalgError};
use crate::model::TruncationMode;
use crate::state::StateVector;

/// Norm slack accepted on input states.
pub const NORM_TOL: f64 = 1e-10;

/// Schmidt values below this are treated as exact zeros in the entropy
/// (machine-precision noise would otherwise feed the logarithm).
pub const SCHMIDT_CLAMP: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum EntanglementError {
    #[error("state has dimension {dim}, expected {da}×{db} = {}", da * db)]
    DimensionMismatch { dim: usize, da: usize, db: usize },
    #[error("state norm is {norm}, not 1 within {NORM_TOL:.0e}")]
    NotNormalized { norm: f64 },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Singular values sₖ of the bipartite coefficient matrix, descending;
/// squares sum to 1 for a unit state.
#[derive(Debug, Clone)]
pub struct SchmidtSpectrum {
    values: Vec<f64>,
}

impl SchmidtSpectrum {
    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

/// An entropy-of-entanglement series over γ₂ at fixed excitation γ.
#[derive(Debug, Clone)]
pub struct EntanglementTrace {
    pub gamma: f64,
    pub truncation: TruncationMode,
    /// (γ₂, E) pairs, γ₂ ascending.
    pub samples: Vec<(f64, f64)>,
}

impl EntanglementTrace {
    /// Grid maximum: (γ₂ at max, E at max); first index wins exact ties.
    pub fn grid_max(&self) -> (f64, f64) {
        let mut best = (0.0, f64::NEG_INFINITY);
        for &(g2, e) in &self.samples {
            if e > best.1 {
                best = (g2, e);
            }
        }
        best
    }
}

fn coefficient_matrix(
    psi: &StateVector,
    (da, db): (usize, usize),
) -> Result<ComplexMatrix, EntanglementError> {
    if psi.dim() != da * db {
        return Err(EntanglementError::DimensionMismatch {
            dim: psi.dim(),
            da,
            db,
        });
    }
    let norm = psi.norm();
    if (norm - 1.0).abs() > NORM_TOL {
        return Err(EntanglementError::NotNormalized { norm });
    }
    // c[m][n] = ⟨m|⊗⟨n|ψ⟩ under the m·db + n index convention
    Ok(ComplexMatrix::from_fn(da, db, |m, n| psi.amplitude(m * db + n)))
}

/// Schmidt values of ψ as a state of an (da × db)-partite system.
pub fn schmidt_values(
    psi: &StateVector,
    dims: (usize, usize),
) -> Result<SchmidtSpectrum, EntanglementError> {
    let c = coefficient_matrix(psi, dims)?;
    Ok(SchmidtSpectrum {
        values: singular_values(&c),
    })
}

/// E = −Σ sₖ² log₂ sₖ², with sₖ below [`SCHMIDT_CLAMP`] contributing 0.
pub fn entropy_of_entanglement(s: &SchmidtSpectrum) -> f64 {
    s.values
        .iter()
        .filter(|&&v| v >= SCHMIDT_CLAMP)
        .map(|&v| {
            let p = v * v;
            -p * p.log2()
        })
        .sum()
}

/// Eigenvalues of the reduced state Tr_B|ψ⟩⟨ψ|, descending. Independent of
/// the SVD path (Gram matrix + Hermitian eigensolver), so the two can be
/// checked against each other.
pub fn reduced_density_eigenvalues(
    psi: &StateVector,
    dims: (usize, usize),
) -> Result<Vec<f64>, EntanglementError> {
    let c = coefficient_matrix(psi, dims)?;
    let (da, db) = dims;
    // ρ_A = c·c†
    let rho = ComplexMatrix::from_fn(da, da, |m, mp| {
        (0..db).map(|n| c[(m, n)] * c[(mp, n)].conj()).sum::<C64>()
    });
    let mut lambdas = eig_hermitian(&rho)?.eigenvalues;
    lambdas.reverse();
    Ok(lambdas)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn random_state(rng: &mut ChaCha8Rng, dim: usize) -> StateVector {
        let raw: Vec<C64> = (0..dim)
            .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let norm = raw.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        StateVector::from_amplitudes(raw.into_iter().map(|z| z / norm).collect()).unwrap()
    }

    #[test]
    fn product_state_spectrum() {
        let psi = StateVector::basis_state(4, 2).kron(&StateVector::basis_state(4, 0));
        let s = schmidt_values(&psi, (4, 4)).unwrap();
        assert_eq!(s.values().len(), 4);
        assert!((s.values()[0] - 1.0).abs() < 1e-15);
        assert!(s.values()[1..].iter().all(|&v| v < 1e-15));
        assert_eq!(entropy_of_entanglement(&s), 0.0);
        assert_eq!(reduced_density_eigenvalues(&psi, (4, 4)).unwrap()[0], 1.0);
    }

    #[test]
    fn bell_state_spectrum_and_entropy() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let mut amps = vec![c(0.0, 0.0); 4];
        amps[0] = c(h, 0.0);
        amps[3] = c(h, 0.0);
        let psi = StateVector::from_amplitudes(amps).unwrap();
        let s = schmidt_values(&psi, (2, 2)).unwrap();
        assert!((s.values()[0] - h).abs() < 1e-12);
        assert!((s.values()[1] - h).abs() < 1e-12);
        assert!((entropy_of_entanglement(&s) - 1.0).abs() < 1e-12);
        let lam = reduced_density_eigenvalues(&psi, (2, 2)).unwrap();
        assert!((lam[0] - 0.5).abs() < 1e-12 && (lam[1] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn maximally_entangled_four_level_pair() {
        let mut amps = vec![c(0.0, 0.0); 16];
        for k in 0..4 {
            amps[k * 4 + k] = c(0.5, 0.0);
        }
        let psi = StateVector::from_amplitudes(amps).unwrap();
        let s = schmidt_values(&psi, (4, 4)).unwrap();
        assert!((entropy_of_entanglement(&s) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn schmidt_squares_match_reduced_density_eigenvalues() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for _ in 0..200 {
            let psi = random_state(&mut rng, 16);
            let s = schmidt_values(&psi, (4, 4)).unwrap();
            let lam = reduced_density_eigenvalues(&psi, (4, 4)).unwrap();
            for (sv, l) in s.values().iter().zip(&lam) {
                assert!((sv * sv - l).abs() < 1e-10);
            }
            assert!((lam.iter().sum::<f64>() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn tracing_out_either_side_gives_same_spectrum() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let psi = random_state(&mut rng, 16);
        let s_a = schmidt_values(&psi, (4, 4)).unwrap();
        // swap the subsystems: ψ'[n·4 + m] = ψ[m·4 + n]
        let swapped: Vec<C64> = (0..16)
            .map(|idx| psi.amplitude((idx % 4) * 4 + idx / 4))
            .collect();
        let psi_swapped = StateVector::from_amplitudes(swapped).unwrap();
        let s_b = schmidt_values(&psi_swapped, (4, 4)).unwrap();
        for (a, b) in s_a.values().iter().zip(s_b.values()) {
            assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn local_unitaries_leave_entropy_alone() {
        use crate::linalg::propagator;
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        let psi = random_state(&mut rng, 16);
        let herm = |rng: &mut ChaCha8Rng| {
            let raw = ComplexMatrix::from_fn(4, 4, |_, _| {
                c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
            });
            ComplexMatrix::from_fn(4, 4, |i, j| 0.5 * (raw[(i, j)] + raw[(j, i)].conj()))
        };
        let u = propagator(&herm(&mut rng), 1.0).unwrap();
        let v = propagator(&herm(&mut rng), 1.0).unwrap();
        // (U⊗V)ψ
        let mut rotated = vec![c(0.0, 0.0); 16];
        for (m, n) in (0..4).flat_map(|m| (0..4).map(move |n| (m, n))) {
            let mut acc = c(0.0, 0.0);
            for (mp, np) in (0..4).flat_map(|mp| (0..4).map(move |np| (mp, np))) {
                acc += u[(m, mp)] * v[(n, np)] * psi.amplitude(mp * 4 + np);
            }
            rotated[m * 4 + n] = acc;
        }
        let rotated = StateVector::from_amplitudes(rotated).unwrap();
        let e0 = entropy_of_entanglement(&schmidt_values(&psi, (4, 4)).unwrap());
        let e1 = entropy_of_entanglement(&schmidt_values(&rotated, (4, 4)).unwrap());
        assert!((e0 - e1).abs() < 1e-9);
    }

    #[test]
    fn conjugation_invariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let psi = random_state(&mut rng, 16);
        let conj =
            StateVector::from_amplitudes(psi.amplitudes().iter().map(|z| z.conj()).collect())
                .unwrap();
        let e0 = entropy_of_entanglement(&schmidt_values(&psi, (4, 4)).unwrap());
        let e1 = entropy_of_entanglement(&schmidt_values(&conj, (4, 4)).unwrap());
        assert!((e0 - e1).abs() < 1e-12);
    }

    #[test]
    fn entropy_bounds_hold_on_random_states() {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        for _ in 0..500 {
            let psi = random_state(&mut rng, 16);
            let e = entropy_of_entanglement(&schmidt_values(&psi, (4, 4)).unwrap());
            assert!((0.0..=2.0).contains(&e));
        }
    }

    #[test]
    fn clamp_kills_machine_noise_values() {
        let eps = 1e-13_f64;
        let big = (1.0 - eps * eps).sqrt();
        let mut amps = vec![c(0.0, 0.0); 4];
        amps[0] = c(big, 0.0);
        amps[3] = c(eps, 0.0);
        let psi = StateVector::from_amplitudes(amps).unwrap();
        let s = schmidt_values(&psi, (2, 2)).unwrap();
        let e = entropy_of_entanglement(&s);
        assert!(e.abs() < 1e-20, "clamped entropy should vanish, got {e}");
    }

    #[test]
    fn rejects_bad_inputs_naming_the_norm() {
        let psi = StateVector::from_amplitudes(vec![c(0.5, 0.0); 4]).unwrap();
        // norm 1 state, wrong dims
        let unit = StateVector::basis_state(16, 3);
        assert!(matches!(
            schmidt_values(&unit, (3, 4)),
            Err(EntanglementError::DimensionMismatch { dim: 16, da: 3, db: 4 })
        ));
        // wrong norm (0.5² × 4 = 1... use different amplitudes)
        let bad = StateVector::from_amplitudes(vec![c(0.7, 0.0); 4]).unwrap();
        let err = schmidt_values(&bad, (2, 2)).unwrap_err();
        match &err {
            EntanglementError::NotNormalized { norm } => {
                assert!((norm - 1.4).abs() < 1e-12);
                assert!(err.to_string().contains("1.4"));
            }
            other => panic!("wrong error: {other}"),
        }
        // this one is actually unit norm: (0.5)²·4 = 1
        assert!(schmidt_values(&psi, (2, 2)).is_ok());
    }
}
