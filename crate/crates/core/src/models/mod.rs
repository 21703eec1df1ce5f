//! Exactly solvable environment models and the qubit dynamics they induce.

mod bath;
mod ising;
mod jc;

pub use bath::{
    dephasing_gamma, dephasing_map, dephasing_pair_alpha_fidelity, log_partition,
    thermal_renyi_divergence, Mode, OscillatorBath, ThermalState,
};
pub use ising::{
    ising_dephasing_map, ising_spectrum, loschmidt_exact_small, loschmidt_ground, EchoState,
    ExactEcho, IsingChain, IsingMode,
};
pub use jc::{jc_coefficients, jc_map, JcCoefficients};
