//! Ground and excited states of molecular and lattice-field-theory
//! Hamiltonians inside a fixed symmetry sector.
//!
//! The crate implements charge-preserving variational quantum deflation
//! (CPVQD) on a dense statevector simulator, with two routes into a
//! symmetry sector:
//!
//! * **reduction** — enumerate the sector basis, project the Hamiltonian to
//!   a small dense block, and run the deflation loop on `ceil(log2 dim)`
//!   qubits ([`sector`], [`vqd::run_cpvqd_reduced`]);
//! * **penalty** — add `alpha * (target - S)^2` to the Hamiltonian and run
//!   on the full register ([`sector::penalty_hamiltonian`],
//!   [`vqd::run_cpvqd_penalty`]).
//!
//! Model builders cover the second-quantized electronic Hamiltonian loaded
//! from FCIDUMP integrals ([`fermion`]) and staggered-fermion lattice models
//! ([`lattice`]). Everything is validated against the internal exact
//! diagonalization oracle ([`oracle`]).
//!
//! See the `examples/` directory for one runnable walkthrough per
//! capability, and the `cpvqd` binary for the command-line front end.

pub mod error;
pub mod pauli;

pub mod fermion;
pub mod lattice;
pub mod oracle;
pub mod sector;
pub mod sim;

pub mod optim;
pub mod vqd;

pub mod cli;

pub use error::{Error, Result};
pub use pauli::{Pauli, PauliString, PauliSum};

#[cfg(test)]
pub(crate) mod testkit;
