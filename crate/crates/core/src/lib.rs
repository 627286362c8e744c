//! Simulation and analysis of a probabilistic quantum deletion machine.
//!
//! The machine acts on two copies of an unknown qubit `a|0⟩ + b|1⟩` plus a
//! three-level ancilla. With amplitude `p` it performs the Pati-Braunstein
//! deletion (second copy driven to a blank state `|Σ⟩`), with amplitude `q`
//! it leaves the pair untouched. The crate provides
//!
//! * [`linalg`]: dense state vectors, density matrices, partial trace and
//!   pure-state fidelity on small tensor-product spaces,
//! * [`machine`]: the machine itself as an explicit 12×4 isometry,
//! * [`fidelity`]: closed-form retention/deletion fidelities together with a
//!   brute-force simulation oracle,
//! * [`analysis`]: sweeps, optimal parameters, the minimax bound and the
//!   table builders used for the fidelity landscape.

pub mod analysis;
pub mod error;
pub mod fidelity;
pub mod linalg;
pub mod machine;
pub mod sampling;

pub use error::{Error, Result};
pub use fidelity::FidelityPair;
pub use linalg::{Complex, DensityMatrix, PureState, SystemLayout};
pub use machine::{BlankState, DeletionMachine, MachineParams, Mode, QubitState};
