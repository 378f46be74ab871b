//! Small dense complex linear-algebra helpers on top of `nalgebra`.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

pub type CMatrix = DMatrix<C64>;

pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

/// Largest entrywise modulus of `a - b`.
pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape(), "shape mismatch");
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Spectral norm, the square root of the largest eigenvalue of `A†A`.
pub fn operator_norm(a: &CMatrix) -> f64 {
    (a.adjoint() * a)
        .symmetric_eigenvalues()
        .iter()
        .copied()
        .fold(0.0, f64::max)
        .sqrt()
}

/// `exp(-i·h·dt)` for a Hermitian `h`, by Padé scaling and squaring.
pub fn evolution_operator(h: &CMatrix, dt: f64) -> CMatrix {
    (h * C64::new(0.0, -dt)).exp()
}

/// `max |U†U − I|` entrywise.
pub fn unitarity_defect(u: &CMatrix) -> f64 {
    let id = CMatrix::identity(u.nrows(), u.ncols());
    max_abs_diff(&(u.adjoint() * u), &id)
}

/// Apply a `2^k × 2^k` gate to qubits `first..first + k` of an `n`-qubit state
/// vector. Qubit 0 is the most significant bit.
pub fn apply_contiguous(state: &mut [C64], n: usize, first: usize, gate: &CMatrix) -> Result<()> {
    let k = gate_width(gate)?;
    let qubits: Vec<usize> = (first..first + k).collect();
    apply_on_qubits(state, n, &qubits, gate)
}

/// Number of qubits a square `2^k` gate acts on.
pub fn gate_width(gate: &CMatrix) -> Result<usize> {
    let dim = gate.nrows();
    if dim == 0 || !dim.is_power_of_two() || gate.ncols() != dim {
        return Err(Error::Parse(format!(
            "gate of shape {:?} is not 2^k square",
            gate.shape()
        )));
    }
    Ok(dim.trailing_zeros() as usize)
}

/// Apply a gate to an arbitrary list of distinct qubits; `qubits[0]` is the
/// most significant bit of the gate's own index.
pub fn apply_on_qubits(state: &mut [C64], n: usize, qubits: &[usize], gate: &CMatrix) -> Result<()> {
    let k = gate_width(gate)?;
    if qubits.len() != k {
        return Err(Error::QubitMismatch {
            left: k,
            right: qubits.len(),
        });
    }
    for (i, &q) in qubits.iter().enumerate() {
        if q >= n {
            return Err(Error::QubitOutOfRange { index: q, n_qubits: n });
        }
        if qubits[..i].contains(&q) {
            return Err(Error::InvalidLayout(format!("qubit {q} repeated")));
        }
    }
    if state.len() != 1usize << n {
        return Err(Error::DimensionMismatch {
            expected: 1usize << n,
            got: state.len(),
        });
    }
    let dim = 1usize << k;
    // dense bit position of each gate qubit
    let masks: Vec<usize> = qubits.iter().map(|&q| 1usize << (n - 1 - q)).collect();
    let offsets: Vec<usize> = (0..dim)
        .map(|s| {
            (0..k)
                .filter(|&j| s >> (k - 1 - j) & 1 == 1)
                .fold(0, |acc, j| acc | masks[j])
        })
        .collect();
    let all: usize = masks.iter().sum();
    let mut buf = vec![C64::new(0.0, 0.0); dim];
    for base in 0..state.len() {
        if base & all != 0 {
            continue;
        }
        for (s, slot) in buf.iter_mut().enumerate() {
            *slot = state[base | offsets[s]];
        }
        for r in 0..dim {
            let mut acc = C64::new(0.0, 0.0);
            for (s, v) in buf.iter().enumerate() {
                acc += gate[(r, s)] * v;
            }
            state[base | offsets[r]] = acc;
        }
    }
    Ok(())
}

/// 2×2 matrix of a Pauli letter.
pub fn pauli_matrix(p: crate::pauli::Pauli) -> CMatrix {
    use crate::pauli::Pauli;
    let z = C64::new(0.0, 0.0);
    let one = C64::new(1.0, 0.0);
    let i = C64::new(0.0, 1.0);
    let v = match p {
        Pauli::I => [one, z, z, one],
        Pauli::X => [z, one, one, z],
        Pauli::Y => [z, -i, i, z],
        Pauli::Z => [one, z, z, -one],
    };
    CMatrix::from_row_slice(2, 2, &v)
}
