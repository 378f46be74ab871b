//! Binary qubit encoding of truncated bosonic modes, the Yukawa coupling
//! Hamiltonian built from it, real-time simulation on state-vector and MPS
//! backends, and compilation of time steps into CNOT-ladder circuits.

pub mod circuit;
#[cfg(feature = "cli")]
pub mod cli;
pub mod dynamics;
pub mod encodings;
pub mod error;
pub mod golden;
pub mod linalg;
pub mod pauli;
pub mod verify;
pub mod yukawa;

pub use error::{Error, Result};
pub use pauli::{Atom, Pauli, PauliString, PauliSum, Phase};
