use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::linalg::{apply_on_qubits, CMatrix};
use crate::pauli::{PauliSum, STATE_QUBIT_CAP};

/// Dense register amplitudes, qubit 0 most significant.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amplitudes: Vec<C64>,
}

impl StateVector {
    /// Computational basis state `|index⟩`.
    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        if n_qubits > STATE_QUBIT_CAP {
            return Err(Error::CapExceeded {
                what: "state vector",
                requested: n_qubits,
                cap: STATE_QUBIT_CAP,
            });
        }
        let dim = 1usize << n_qubits;
        if index >= dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: index + 1,
            });
        }
        let mut amplitudes = vec![C64::new(0.0, 0.0); dim];
        amplitudes[index] = C64::new(1.0, 0.0);
        Ok(StateVector { n_qubits, amplitudes })
    }

    pub fn from_amplitudes(n_qubits: usize, amplitudes: Vec<C64>) -> Result<Self> {
        if amplitudes.len() != 1usize << n_qubits {
            return Err(Error::DimensionMismatch {
                expected: 1usize << n_qubits,
                got: amplitudes.len(),
            });
        }
        Ok(StateVector { n_qubits, amplitudes })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn inner(&self, other: &StateVector) -> C64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// `|⟨self|other⟩|`.
    pub fn fidelity(&self, other: &StateVector) -> f64 {
        self.inner(other).norm()
    }

    pub fn apply_gate(&mut self, qubits: &[usize], gate: &CMatrix) -> Result<()> {
        apply_on_qubits(&mut self.amplitudes, self.n_qubits, qubits, gate)
    }

    pub fn expectation(&self, op: &PauliSum) -> Result<f64> {
        Ok(op.expectation(&self.amplitudes)?.re)
    }
}
