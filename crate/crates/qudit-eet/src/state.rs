//! Pure-state amplitude vectors over qudit and qudit-pair bases.

use num_complex::Complex64 as C64;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum StateError {
    #[error("non-finite amplitude {value} at index {index}")]
    NonFinite { index: usize, value: C64 },
    #[error("state vector must have at least one amplitude")]
    Empty,
}

/// Complex amplitude vector. Unit norm is not enforced at construction —
/// consumers that need it (Schmidt analysis, evolution) check and say so.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<C64>,
}

impl StateVector {
    pub fn from_amplitudes(amplitudes: Vec<C64>) -> Result<Self, StateError> {
        if amplitudes.is_empty() {
            return Err(StateError::Empty);
        }
        for (index, &value) in amplitudes.iter().enumerate() {
            if !value.re.is_finite() || !value.im.is_finite() {
                return Err(StateError::NonFinite { index, value });
            }
        }
        Ok(Self { amplitudes })
    }

    /// |level⟩ in a `dim`-dimensional space.
    pub fn basis_state(dim: usize, level: usize) -> Self {
        assert!(level < dim, "basis level {level} out of range for dimension {dim}");
        let mut amplitudes = vec![C64::new(0.0, 0.0); dim];
        amplitudes[level] = C64::new(1.0, 0.0);
        Self { amplitudes }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, k: usize) -> C64 {
        self.amplitudes[k]
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn inner(&self, other: &Self) -> C64 {
        assert_eq!(self.dim(), other.dim());
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Tensor product |self⟩⊗|other⟩ with index convention i·dim(other) + j.
    pub fn kron(&self, other: &Self) -> Self {
        let mut amplitudes = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.amplitudes {
            for b in &other.amplitudes {
                amplitudes.push(a * b);
            }
        }
        Self { amplitudes }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim(), other.dim());
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_state_and_norm() {
        let s = StateVector::basis_state(4, 2);
        assert_eq!(s.dim(), 4);
        assert_eq!(s.amplitude(2), C64::new(1.0, 0.0));
        assert_eq!(s.norm(), 1.0);
    }

    #[test]
    fn kron_index_convention() {
        // |1⟩⊗|0⟩ in 2⊗2 sits at index 1·2 + 0 = 2
        let a = StateVector::basis_state(2, 1);
        let b = StateVector::basis_state(2, 0);
        let joint = a.kron(&b);
        assert_eq!(joint.amplitude(2), C64::new(1.0, 0.0));
        assert_eq!(joint.norm(), 1.0);
    }

    #[test]
    fn rejects_empty_and_non_finite() {
        assert!(matches!(StateVector::from_amplitudes(vec![]), Err(StateError::Empty)));
        let bad = StateVector::from_amplitudes(vec![C64::new(f64::INFINITY, 0.0)]);
        assert!(matches!(bad, Err(StateError::NonFinite { index: 0, .. })));
    }
}
