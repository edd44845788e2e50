//! Classical wave-optics simulation of cebit circuits.
//!
//! A register of n cebits is the polarization of light (cebit 0) together
//! with the choice among 2^(n-1) beams (position cebits 1..n). Gates become
//! wave plates, beam splitters and polarizing beam splitters; the whole
//! circuit is linear optics on 2^n complex amplitudes.

pub mod compiler;
pub mod dsl;
pub mod error;
pub mod linalg;
pub mod optics;
pub mod scenarios;
pub mod state;

pub use compiler::{compile_circuit, Gate, GateCircuit, ResourceReport};
pub use error::{CebitError, Result};
pub use linalg::{Matrix, Unitary2, C64};
pub use optics::{Component, ComponentKind, Netlist};
pub use scenarios::{Pauli, PauliBasis};
pub use state::{BasisLabel, CebitRegister, RegisterLimits};
