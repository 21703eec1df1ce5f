//! Numerical tolerances shared by the library, its tests and the CLI.

/// Largest matrix dimension handled by the dense routines.
pub const MAX_DIM: usize = 16;
/// Max-entry deviation from Hermiticity accepted for density matrices.
pub const HERMITIAN: f64 = 1e-12;
/// Looser Hermiticity check for general eigendecomposition input.
pub const EIG_HERMITIAN: f64 = 1e-10;
/// Most negative eigenvalue still treated as positive semidefinite.
pub const PSD: f64 = 1e-10;
/// Allowed deviation of a density-matrix trace from one.
pub const TRACE: f64 = 1e-12;
/// Slack on the Bloch-ball radius.
pub const BLOCH_NORM: f64 = 1e-12;
/// Eigenvalues at or below this are set to zero before powering.
pub const EIG_CLIP: f64 = 1e-14;
/// Fidelities below this mark orthogonal supports.
pub const ORTHOGONAL: f64 = 1e-12;
/// KL support test: weight of the first argument that counts as present.
pub const KL_WEIGHT: f64 = 1e-12;
/// Denominator guard for the channel fidelity quotient.
pub const DENOMINATOR: f64 = 1e-10;
/// Choi eigenvalue slack for complete positivity.
pub const CPTP: f64 = 1e-9;
/// Purity above which an optimizer argmin is reported as pure.
pub const PURE_ARGMIN: f64 = 1.0 - 1e-6;
/// Margin by which an inequality must fail to count as a violation.
pub const VIOLATION: f64 = 1e-9;
/// Flatness guard for local-minimum detection on sampled curves.
pub const FLAT: f64 = 1e-12;
/// Default bisection tolerance.
pub const ROOT: f64 = 1e-12;
/// Fidelities within this distance of one are treated as one.
pub const UNIT_FIDELITY: f64 = 1e-12;
