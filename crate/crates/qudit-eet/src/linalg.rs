//! Dense complex linear algebra for small Hilbert spaces (dimension ≤ 16).
//!
//! Hand-rolled on purpose: the simulator only ever diagonalizes Hermitian
//! matrices up to 16×16 and takes singular values of 4×4 coefficient
//! matrices. A cyclic Jacobi pass is ~100 lines, has no external deps, and
//! gives the same bits for the same input regardless of thread count, which
//! the reproducibility contract of the output files relies on.

use num_complex::Complex64 as C64;
use thiserror::Error;

/// Absolute bound on |H\[i,j\] − conj(H\[j,i\])| accepted by [`eig_hermitian`].
pub const HERMITICITY_TOL: f64 = 1e-12;

/// Jacobi sweeps stop once the off-diagonal Frobenius mass drops below this
/// fraction of the total Frobenius norm.
const JACOBI_OFF_TOL: f64 = 1e-15;

/// Two columns count as orthogonal when |⟨p,q⟩| ≤ tol·‖p‖‖q‖.
const SVD_ORTH_TOL: f64 = 1e-15;

/// Hard cap on sweeps; 16×16 Hermitian Jacobi converges in well under ten.
const MAX_SWEEPS: usize = 64;

#[derive(Debug, Error)]
pub enum LinalgError {
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error(
        "matrix is not Hermitian: |A[{row},{col}] - conj(A[{col},{row}])| = {asymmetry:.3e} \
         exceeds {limit:.1e}"
    )]
    NotHermitian {
        row: usize,
        col: usize,
        asymmetry: f64,
        limit: f64,
    },
    #[error("non-finite entry {value} at ({row}, {col})")]
    NonFinite { row: usize, col: usize, value: C64 },
    #[error("entry count {got} does not match shape {rows}x{cols}")]
    BadEntryCount { rows: usize, cols: usize, got: usize },
    #[error("shape mismatch: ({lhs_rows}x{lhs_cols}) incompatible with ({rhs_rows}x{rhs_cols})")]
    ShapeMismatch {
        lhs_rows: usize,
        lhs_cols: usize,
        rhs_rows: usize,
        rhs_cols: usize,
    },
}

/// Row-major dense complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<C64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![C64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    /// Build from a row-major entry list; rejects shape/entry-count mismatch
    /// and non-finite entries.
    pub fn from_entries(rows: usize, cols: usize, entries: Vec<C64>) -> Result<Self, LinalgError> {
        if entries.len() != rows * cols {
            return Err(LinalgError::BadEntryCount {
                rows,
                cols,
                got: entries.len(),
            });
        }
        let m = Self { rows, cols, entries };
        m.check_finite()?;
        Ok(m)
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[C64] {
        &self.entries
    }

    fn check_finite(&self) -> Result<(), LinalgError> {
        for i in 0..self.rows {
            for j in 0..self.cols {
                let z = self[(i, j)];
                if !z.re.is_finite() || !z.im.is_finite() {
                    return Err(LinalgError::NonFinite {
                        row: i,
                        col: j,
                        value: z,
                    });
                }
            }
        }
        Ok(())
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self, LinalgError> {
        if self.cols != rhs.rows {
            return Err(LinalgError::ShapeMismatch {
                lhs_rows: self.rows,
                lhs_cols: self.cols,
                rhs_rows: rhs.rows,
                rhs_cols: rhs.cols,
            });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn matvec(&self, v: &[C64]) -> Result<Vec<C64>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::ShapeMismatch {
                lhs_rows: self.rows,
                lhs_cols: self.cols,
                rhs_rows: v.len(),
                rhs_cols: 1,
            });
        }
        let mut out = vec![C64::new(0.0, 0.0); self.rows];
        for i in 0..self.rows {
            let mut acc = C64::new(0.0, 0.0);
            for j in 0..self.cols {
                acc += self[(i, j)] * v[j];
            }
            out[i] = acc;
        }
        Ok(out)
    }

    /// Largest |A\[i,j\] − B\[i,j\]| over all entries.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest Hermiticity defect |A\[i,j\] − conj(A\[j,i\])| and where it sits.
    pub fn max_asymmetry(&self) -> (f64, usize, usize) {
        let mut worst = (0.0_f64, 0, 0);
        for i in 0..self.rows {
            for j in i..self.cols {
                let d = (self[(i, j)] - self[(j, i)].conj()).norm();
                if d > worst.0 {
                    worst = (d, i, j);
                }
            }
        }
        worst
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.entries[i * self.cols + j]
    }
}

/// Eigendecomposition of a Hermitian matrix: H = Q Λ Q†.
#[derive(Debug, Clone)]
pub struct HermitianEigenSystem {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// Column k is the eigenvector for `eigenvalues[k]`, with its
    /// largest-magnitude component rotated to the positive real axis.
    pub eigenvectors: ComplexMatrix,
}

impl HermitianEigenSystem {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// Q Λ Q† — used by tests to bound reconstruction error.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.dim();
        let q = &self.eigenvectors;
        ComplexMatrix::from_fn(n, n, |i, j| {
            (0..n)
                .map(|k| q[(i, k)] * self.eigenvalues[k] * q[(j, k)].conj())
                .sum()
        })
    }

    /// exp(−i H τ) assembled from the spectrum.
    pub fn propagator(&self, tau: f64) -> ComplexMatrix {
        let n = self.dim();
        let q = &self.eigenvectors;
        let phases: Vec<C64> = self
            .eigenvalues
            .iter()
            .map(|&lambda| C64::from_polar(1.0, -lambda * tau))
            .collect();
        ComplexMatrix::from_fn(n, n, |i, j| {
            (0..n).map(|k| q[(i, k)] * phases[k] * q[(j, k)].conj()).sum()
        })
    }
}

/// 2×2 unitary similarity that annihilates the (p,q) entry of a Hermitian
/// matrix (equivalently, the off-diagonal of the 2×2 Gram block
/// \[\[app, apq\], \[conj(apq), aqq\]\]). Returns (c, σ) with c real.
fn jacobi_rotation(app: f64, aqq: f64, apq: C64) -> (f64, C64) {
    let g = apq.norm();
    let u = apq / g;
    let tau = (aqq - app) / (2.0 * g);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    (c, u * (t * c))
}

/// Diagonalize a Hermitian matrix by cyclic Jacobi sweeps.
///
/// Eigenvalues come back ascending; eigenvector phases are pinned so results
/// are reproducible. Anything non-square, non-finite, or with a Hermiticity
/// defect above [`HERMITICITY_TOL`] is rejected.
pub fn eig_hermitian(h: &ComplexMatrix) -> Result<HermitianEigenSystem, LinalgError> {
    if h.rows != h.cols {
        return Err(LinalgError::NotSquare {
            rows: h.rows,
            cols: h.cols,
        });
    }
    h.check_finite()?;
    let (asym, i, j) = h.max_asymmetry();
    if asym > HERMITICITY_TOL {
        return Err(LinalgError::NotHermitian {
            row: i,
            col: j,
            asymmetry: asym,
            limit: HERMITICITY_TOL,
        });
    }

    let n = h.rows;
    // Work on the Hermitian average so sub-tolerance asymmetry can't leak in.
    let mut a = ComplexMatrix::from_fn(n, n, |i, j| 0.5 * (h[(i, j)] + h[(j, i)].conj()));
    let mut q = ComplexMatrix::identity(n);
    let total_norm = a.frobenius_norm();

    for _sweep in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= JACOBI_OFF_TOL * total_norm {
            break;
        }
        for p in 0..n - 1 {
            for qq in p + 1..n {
                let apq = a[(p, qq)];
                if apq.norm() == 0.0 {
                    continue;
                }
                let (c, sigma) = jacobi_rotation(a[(p, p)].re, a[(qq, qq)].re, apq);
                let sig_conj = sigma.conj();
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, qq)];
                    a[(k, p)] = c * akp - sig_conj * akq;
                    a[(k, qq)] = sigma * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(qq, k)];
                    a[(p, k)] = c * apk - sigma * aqk;
                    a[(qq, k)] = sig_conj * apk + c * aqk;
                }
                for k in 0..n {
                    let qkp = q[(k, p)];
                    let qkq = q[(k, qq)];
                    q[(k, p)] = c * qkp - sig_conj * qkq;
                    q[(k, qq)] = sigma * qkp + c * qkq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.partial_cmp(&a[(j, j)].re).unwrap());

    let eigenvalues: Vec<f64> = order.iter().map(|&k| a[(k, k)].re).collect();
    let mut eigenvectors = ComplexMatrix::from_fn(n, n, |i, j| q[(i, order[j])]);
    fix_column_phases(&mut eigenvectors);

    Ok(HermitianEigenSystem {
        eigenvalues,
        eigenvectors,
    })
}

/// Rotate each column so its largest-magnitude component is real positive
/// (first such component on exact magnitude ties).
fn fix_column_phases(m: &mut ComplexMatrix) {
    for j in 0..m.cols() {
        let mut best = 0;
        let mut best_mag = 0.0;
        for i in 0..m.rows() {
            let mag = m[(i, j)].norm();
            if mag > best_mag {
                best_mag = mag;
                best = i;
            }
        }
        if best_mag == 0.0 {
            continue;
        }
        let factor = m[(best, j)].conj() / best_mag;
        for i in 0..m.rows() {
            let z = m[(i, j)];
            m[(i, j)] = z * factor;
        }
    }
}

/// Unitary propagator exp(−i H τ) of a Hermitian generator.
pub fn propagator(h: &ComplexMatrix, tau: f64) -> Result<ComplexMatrix, LinalgError> {
    Ok(eig_hermitian(h)?.propagator(tau))
}

/// Singular values, descending, by one-sided Jacobi on the columns.
///
/// Returns min(rows, cols) values. Accurate down to values near machine zero,
/// which matters because entanglement entropies weight the *squares*.
pub fn singular_values(a: &ComplexMatrix) -> Vec<f64> {
    let work = if a.rows() >= a.cols() { a.clone() } else { a.dagger() };
    let (m, n) = (work.rows(), work.cols());
    if m == 0 || n == 0 {
        return Vec::new();
    }
    let mut cols: Vec<Vec<C64>> = (0..n).map(|j| (0..m).map(|i| work[(i, j)]).collect()).collect();

    for _sweep in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n - 1 {
            for q in p + 1..n {
                let app: f64 = cols[p].iter().map(|z| z.norm_sqr()).sum();
                let aqq: f64 = cols[q].iter().map(|z| z.norm_sqr()).sum();
                if app == 0.0 || aqq == 0.0 {
                    continue;
                }
                let apq: C64 = cols[p]
                    .iter()
                    .zip(&cols[q])
                    .map(|(x, y)| x.conj() * y)
                    .sum();
                if apq.norm() <= SVD_ORTH_TOL * (app * aqq).sqrt() {
                    continue;
                }
                rotated = true;
                let (c, sigma) = jacobi_rotation(app, aqq, apq);
                let sig_conj = sigma.conj();
                let (head, tail) = cols.split_at_mut(q);
                for (xp, xq) in head[p].iter_mut().zip(tail[0].iter_mut()) {
                    let (a, b) = (*xp, *xq);
                    *xp = c * a - sig_conj * b;
                    *xq = sigma * a + c * b;
                }
            }
        }
        if !rotated {
            break;
        }
    }

    let mut svals: Vec<f64> = cols
        .iter()
        .map(|col| col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
        .collect();
    svals.sort_by(|a, b| b.partial_cmp(a).unwrap());
    svals
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn random_hermitian(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrix {
        let raw = ComplexMatrix::from_fn(n, n, |_, _| {
            c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        });
        ComplexMatrix::from_fn(n, n, |i, j| 0.5 * (raw[(i, j)] + raw[(j, i)].conj()))
    }

    /// Independent propagator: plain Taylor series for exp(−iHτ). Only valid
    /// for modest ‖Hτ‖ but that is exactly the regime the tests probe.
    fn taylor_propagator(h: &ComplexMatrix, tau: f64, terms: usize) -> ComplexMatrix {
        let n = h.rows();
        let mut sum = ComplexMatrix::identity(n);
        let mut term = ComplexMatrix::identity(n);
        for k in 1..=terms {
            term = term.mul(h).unwrap();
            let scale = c(0.0, -tau) / k as f64;
            term = ComplexMatrix::from_fn(n, n, |i, j| term[(i, j)] * scale);
            for i in 0..n {
                for j in 0..n {
                    let t = term[(i, j)];
                    sum[(i, j)] += t;
                }
            }
        }
        sum
    }

    #[test]
    fn diagonal_matrix_eigensystem_is_sorted_basis() {
        let h = ComplexMatrix::from_entries(
            3,
            3,
            vec![
                c(3.0, 0.0), c(0.0, 0.0), c(0.0, 0.0),
                c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0),
                c(0.0, 0.0), c(0.0, 0.0), c(2.0, 0.0),
            ],
        )
        .unwrap();
        let sys = eig_hermitian(&h).unwrap();
        assert_eq!(sys.eigenvalues, vec![1.0, 2.0, 3.0]);
        // columns are basis vectors e1, e2, e0
        let expect = [(1, 0), (2, 1), (0, 2)];
        for &(i, j) in &expect {
            assert!((sys.eigenvectors[(i, j)] - c(1.0, 0.0)).norm() < 1e-14);
        }
    }

    #[test]
    fn pauli_x_eigensystem() {
        let h =
            ComplexMatrix::from_entries(2, 2, vec![c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)])
                .unwrap();
        let sys = eig_hermitian(&h).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!((sys.eigenvalues[0] + 1.0).abs() < 1e-14);
        assert!((sys.eigenvalues[1] - 1.0).abs() < 1e-14);
        // phase pin: first component real positive on a magnitude tie
        assert!((sys.eigenvectors[(0, 0)] - c(s, 0.0)).norm() < 1e-14);
        assert!((sys.eigenvectors[(1, 0)] - c(-s, 0.0)).norm() < 1e-14);
        assert!((sys.eigenvectors[(0, 1)] - c(s, 0.0)).norm() < 1e-14);
        assert!((sys.eigenvectors[(1, 1)] - c(s, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn two_level_site_block_matches_closed_form() {
        // eigenvalues of [[16050, -87], [-87, 15808]] from tr/2 ± √((Δ/2)² + v²)
        let h = ComplexMatrix::from_entries(
            2,
            2,
            vec![c(16050.0, 0.0), c(-87.0, 0.0), c(-87.0, 0.0), c(15808.0, 0.0)],
        )
        .unwrap();
        let sys = eig_hermitian(&h).unwrap();
        assert!((sys.eigenvalues[0] - 15779.969801717907).abs() < 1e-9);
        assert!((sys.eigenvalues[1] - 16078.030198282093).abs() < 1e-9);
        let v_lo = [0.30666269463623425, 0.9518182556131415];
        let v_hi = [0.9518182556131415, -0.30666269463623425];
        for i in 0..2 {
            assert!((sys.eigenvectors[(i, 0)] - c(v_lo[i], 0.0)).norm() < 1e-9);
            assert!((sys.eigenvectors[(i, 1)] - c(v_hi[i], 0.0)).norm() < 1e-9);
        }
    }

    #[test]
    fn eigensystem_reconstructs_and_is_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for &n in &[2usize, 4, 9, 16] {
            let h = random_hermitian(&mut rng, n);
            let sys = eig_hermitian(&h).unwrap();
            assert!(sys.reconstruct().max_abs_diff(&h) < 1e-12, "n = {n}");
            let q = &sys.eigenvectors;
            let qdq = q.dagger().mul(q).unwrap();
            assert!(qdq.max_abs_diff(&ComplexMatrix::identity(n)) < 1e-13, "n = {n}");
            for k in 1..n {
                assert!(sys.eigenvalues[k] >= sys.eigenvalues[k - 1]);
            }
        }
    }

    #[test]
    fn rejects_non_hermitian_with_located_defect() {
        let h =
            ComplexMatrix::from_entries(2, 2, vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)])
                .unwrap();
        let err = eig_hermitian(&h).unwrap_err();
        match err {
            LinalgError::NotHermitian { row, col, asymmetry, .. } => {
                assert_eq!((row, col), (0, 1));
                assert!((asymmetry - 1.0).abs() < 1e-15);
            }
            other => panic!("wrong error: {other}"),
        }
    }

    #[test]
    fn rejects_non_square() {
        let m = ComplexMatrix::zeros(2, 3);
        assert!(matches!(
            eig_hermitian(&m),
            Err(LinalgError::NotSquare { rows: 2, cols: 3 })
        ));
    }

    #[test]
    fn propagator_at_zero_time_is_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let h = random_hermitian(&mut rng, 4);
        let u = propagator(&h, 0.0).unwrap();
        assert!(u.max_abs_diff(&ComplexMatrix::identity(4)) < 1e-12);
    }

    #[test]
    fn propagator_matches_taylor_series() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..20 {
            let h = random_hermitian(&mut rng, 4);
            let tau = rng.gen_range(0.05..0.8);
            let u = propagator(&h, tau).unwrap();
            let u_ref = taylor_propagator(&h, tau, 40);
            assert!(u.max_abs_diff(&u_ref) < 1e-10);
        }
    }

    #[test]
    fn propagator_composes_and_inverts() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let h = random_hermitian(&mut rng, 5);
        let (a, b) = (0.37, 1.21);
        let u_ab = propagator(&h, a + b).unwrap();
        let composed = propagator(&h, a).unwrap().mul(&propagator(&h, b).unwrap()).unwrap();
        assert!(u_ab.max_abs_diff(&composed) < 1e-9);
        let round_trip = propagator(&h, a).unwrap().mul(&propagator(&h, -a).unwrap()).unwrap();
        assert!(round_trip.max_abs_diff(&ComplexMatrix::identity(5)) < 1e-12);
    }

    #[test]
    fn half_period_exchange_pulse() {
        // exp(−i X π/2) = −i X up to global phase: full population transfer.
        let h =
            ComplexMatrix::from_entries(2, 2, vec![c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)])
                .unwrap();
        let u = propagator(&h, std::f64::consts::FRAC_PI_2).unwrap();
        assert!(u[(0, 0)].norm() < 1e-12);
        assert!((u[(1, 0)].norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn singular_values_of_identity_and_rank_one() {
        assert_eq!(singular_values(&ComplexMatrix::identity(4)), vec![1.0; 4]);
        let mut m = ComplexMatrix::zeros(4, 4);
        m[(2, 1)] = c(0.5, 0.0);
        let s = singular_values(&m);
        assert!((s[0] - 0.5).abs() < 1e-15);
        assert!(s[1..].iter().all(|&v| v == 0.0));
    }

    #[test]
    fn singular_values_match_gram_spectrum() {
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        for _ in 0..20 {
            let a = ComplexMatrix::from_fn(4, 4, |_, _| {
                c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
            });
            let s = singular_values(&a);
            let gram = a.dagger().mul(&a).unwrap();
            let mut lambdas = eig_hermitian(&gram).unwrap().eigenvalues;
            lambdas.reverse();
            for (sv, lam) in s.iter().zip(&lambdas) {
                assert!((sv * sv - lam).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn singular_values_unitarily_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let a = ComplexMatrix::from_fn(4, 4, |_, _| {
            c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        });
        let u = propagator(&random_hermitian(&mut rng, 4), 1.0).unwrap();
        let s0 = singular_values(&a);
        let s1 = singular_values(&u.mul(&a).unwrap());
        for (x, y) in s0.iter().zip(&s1) {
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn singular_values_of_wide_matrix() {
        // 2×4 with rows (1,0,0,0), (0,2,0,0): singular values (2, 1)
        let mut m = ComplexMatrix::zeros(2, 4);
        m[(0, 0)] = c(1.0, 0.0);
        m[(1, 1)] = c(2.0, 0.0);
        let s = singular_values(&m);
        assert_eq!(s.len(), 2);
        assert!((s[0] - 2.0).abs() < 1e-15 && (s[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_non_finite_entries() {
        let m = ComplexMatrix::from_entries(1, 1, vec![c(f64::NAN, 0.0)]);
        assert!(matches!(m, Err(LinalgError::NonFinite { .. })));
    }
}
