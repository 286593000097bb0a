//! Design calculations for two-qubit gates between neutral atoms held in
//! optical lattices and coupled by laser-induced dipole-dipole interactions.
//!
//! Quantities are dimensionless throughout: energies in `ħΓ` or recoil
//! energies `E_R`, lengths in `1/k_L`, rates in the natural linewidth `Γ`.

pub mod assay;
pub mod budget;
pub mod cli;
pub mod error;
pub mod fom;
pub mod gates;
pub mod kernel;
pub mod motional;
pub mod optimize;
pub mod quadrature;
pub mod units;

pub use error::{Error, Result};
pub use fom::{FomMethod, FomResult, Protocol};
pub use motional::{OscillatorState, PacketPair};
pub use units::{AtomSpecies, LatticeConfig, TrapModel};
