//! Probing protocols: programming dimension bounds, environmental frequency
//! exclusion, thermometry and Loschmidt-echo bounds.

mod exclusion;
mod loschmidt;
mod programming;
mod thermometry;

pub use exclusion::{
    exclusion_lhs, exclusion_rhs, exclusion_rhs_curve, exclusion_verdict, frequency_crossover,
    ExclusionVerdict,
};
pub use loschmidt::{
    detect_revival, loschmidt_bounds_from_fidelity, loschmidt_panel, LoschmidtPanel,
    RevivalVerdict,
};
pub use programming::{
    dimension_cut, hillery_reference_thresholds, min_processor_dimension, pauli_dimension_bound,
    prog_overlap_bound, reference_min_dimension, DimensionBound,
};
pub use thermometry::{
    limiting_temperature, thermalized_limit_fidelity, thermalized_probe_bounds,
    thermometry_bounds, TemperatureBounds, ThermalizedProbe,
};

use crate::fidelity::Alpha;

/// α ∈ {0.05, 0.10, …, 0.95}.
pub fn default_alpha_grid() -> Vec<Alpha> {
    (1..=19)
        .map(|i| Alpha::new(i as f64 * 0.05).expect("grid inside (0,1)"))
        .collect()
}
