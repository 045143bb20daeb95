//! Correlation analysis for highly mixed two-qubit NMR states.
//!
//! States are held in the deviation-matrix form `ρ = I/4 + ε Δρ`. The crate
//! computes exact and second-order (in ε) correlation quantifiers, a
//! non-classicality witness together with its magnetization-readout
//! circuit, decoherence under amplitude and phase damping, and a gate-level
//! two-spin Mach-Zehnder interferometer.

pub mod channels;
pub mod correlations;
pub mod error;
pub mod interferometer;
pub mod optimize;
pub mod qlin;
pub mod rng;
pub mod witness;

pub use error::{Error, Result};
pub use qlin::{DeviationState, HermitianMatrix, Party, UnitaryMatrix};
