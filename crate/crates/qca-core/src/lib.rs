//! Simulation and analysis toolkit for a family of (1+1)-dimensional quantum
//! cellular automata with a tunable entangling gate.
//!
//! The lattice is updated row by row with a three-body gate; the reduced row
//! state is evolved either exactly (dense, small systems) or as a truncated
//! tensor train (the boundary matrix product state of the double-layer
//! network). On top of that sit mean-field iteration, entanglement probes,
//! and the curve analysis used to locate the absorbing-state transition.

pub mod analysis;
pub mod error;
pub mod evolve;
pub mod exact;
pub mod gates;
pub mod meanfield;
pub mod sweep;
pub mod tensor;

pub use error::{QcaError, Result};
pub use gates::GateParams;
pub use tensor::{contract, herm_expm, truncated_svd, DenseTensor, SvdResult};
