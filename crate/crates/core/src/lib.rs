//! Alpha-fidelities of quantum states and qubit channels, exactly solvable
//! open-system models, and probing protocols built on the fidelity inequality
//! between environment states and the dynamics they induce.
//!
//! Units follow ħ = k_B = 1; temperatures and frequencies are exchanged as
//! dimensionless ratios.

pub mod channels;
pub mod error;
pub mod fidelity;
pub mod models;
pub mod optimize;
pub mod protocols;
pub mod qmath;
pub mod tol;

pub use channels::{DynamicalMap, QubitChannel};
pub use error::{Error, Result};
pub use fidelity::{Alpha, DivergenceValue};
pub use models::{IsingChain, OscillatorBath, ThermalState};
pub use optimize::{OptimResult, OptimizerConfig, TimeGrid};
pub use protocols::{DimensionBound, ExclusionVerdict, RevivalVerdict, TemperatureBounds};
pub use qmath::{BlochVector, ComplexMatrix, DensityMatrix};

pub use num_complex::Complex64;
