//! Fidelities and divergences of quantum states.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use num_complex::Complex64;

use crate::qmath::{
    hermitian_eig, psd_power_from, singular_values, BlochVector, ComplexMatrix, DensityMatrix,
};
use crate::tol;

/// Order parameter of the sandwiched fidelity, strictly inside (0, 1).
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Alpha(f64);

impl Alpha {
    pub fn new(value: f64) -> Result<Self> {
        if value > 0.0 && value < 1.0 {
            Ok(Self(value))
        } else {
            Err(Error::InvalidParameter(format!(
                "alpha must lie in (0, 1), got {value}"
            )))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// Whether data processing holds for this order (α ≥ ½).
    pub fn dpi_valid(self) -> bool {
        self.0 >= 0.5
    }

    /// 1 − α.
    pub fn complement(self) -> Self {
        Self(1.0 - self.0)
    }
}

impl TryFrom<f64> for Alpha {
    type Error = Error;
    fn try_from(v: f64) -> Result<Self> {
        Self::new(v)
    }
}

impl From<Alpha> for f64 {
    fn from(a: Alpha) -> f64 {
        a.0
    }
}

impl fmt::Display for Alpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Non-negative divergence, infinite exactly for orthogonal supports.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DivergenceValue {
    Finite(f64),
    Infinite,
}

impl DivergenceValue {
    pub fn is_infinite(self) -> bool {
        matches!(self, Self::Infinite)
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            Self::Finite(v) => Some(v),
            Self::Infinite => None,
        }
    }

    /// The value as a float, with +∞ for the infinite case.
    pub fn as_f64(self) -> f64 {
        self.finite().unwrap_or(f64::INFINITY)
    }
}

fn clamp_unit(v: f64) -> f64 {
    v.clamp(0.0, 1.0)
}

fn check_same_dim(a: &DensityMatrix, b: &DensityMatrix) -> Result<()> {
    if a.dim() != b.dim() {
        return Err(Error::Dimension(format!(
            "states of dimension {} and {}",
            a.dim(),
            b.dim()
        )));
    }
    Ok(())
}

/// Sandwiched α-fidelity of two qubits given by Bloch vectors, through the
/// trace and determinant of ρ₂^{(1−α)/α} ρ₁. Nothing is divided by 1 − |r₂|,
/// so pure arguments need no special case. Input eigenvalues below
/// [`tol::EIG_CLIP`] are zeroed as on the spectral path; without this the
/// non-Lipschitz power λ^{(1−α)/α} turns round-off in |r| = 1 into visible
/// errors.
pub fn alpha_fidelity_qubit(r1: BlochVector, r2: BlochVector, alpha: Alpha) -> f64 {
    qubit_closed_form(r1, r2, alpha, tol::EIG_CLIP)
}

/// Same closed form without the eigenvalue clip: continuous in both
/// arguments, which matters when two small fidelities are divided.
pub(crate) fn alpha_fidelity_qubit_unclipped(r1: BlochVector, r2: BlochVector, alpha: Alpha) -> f64 {
    qubit_closed_form(r1, r2, alpha, 0.0)
}

fn qubit_closed_form(r1: BlochVector, r2: BlochVector, alpha: Alpha, eig_clip: f64) -> f64 {
    let a = alpha.value();
    let clip = |l: f64| if l <= eig_clip { 0.0 } else { l };
    let n2 = r2.norm().min(1.0);
    let p = (1.0 - a) / a;
    let up = clip(0.5 * (1.0 + n2)).powf(p);
    let down = clip(0.5 * (1.0 - n2)).powf(p);
    let along = if n2 > 0.0 { r1.dot(r2) / n2 } else { 0.0 };
    let trace = 0.5 * up * (1.0 + along) + 0.5 * down * (1.0 - along);
    let n1 = r1.norm().min(1.0);
    let det = (up * down) * clip(0.5 * (1.0 - n1)) * (0.5 * (1.0 + n1));
    let disc = (trace * trace - 4.0 * det).max(0.0);
    let hi = 0.5 * (trace + disc.sqrt());
    let lo = if hi > 0.0 { det / hi } else { 0.0 };
    clamp_unit(hi.max(0.0).powf(a) + lo.max(0.0).powf(a))
}

/// tr[(ρ₂^{(1−α)/(2α)} ρ₁ ρ₂^{(1−α)/(2α)})^α] for states of any supported dimension.
///
/// The sandwich has the spectrum of G G† with G = √Λ₁ (V₁†V₂) Λ₂^{(1−α)/(2α)},
/// so its eigenvalues are taken as squared singular values of G. Forming the
/// sandwich explicitly would lose its small eigenvalues to cancellation, and
/// for small α those still carry weight λ^α. Input eigenvalues below
/// [`tol::EIG_CLIP`] are zeroed, and the rank of G is capped by the ranks of
/// the inputs so that round-off cannot stand in for a missing eigenvalue.
pub fn alpha_fidelity_general(
    rho1: &DensityMatrix,
    rho2: &DensityMatrix,
    alpha: Alpha,
) -> Result<f64> {
    check_same_dim(rho1, rho2)?;
    let a = alpha.value();
    let e1 = hermitian_eig(rho1.matrix())?;
    let e2 = hermitian_eig(rho2.matrix())?;
    for e in [&e1, &e2] {
        let min = e.values.last().copied().unwrap_or(0.0);
        if min < -tol::PSD {
            return Err(Error::NotPsd(min));
        }
    }
    let clip = |l: f64| if l <= tol::EIG_CLIP { 0.0 } else { l };
    let d1: Vec<f64> = e1.values.iter().map(|&l| clip(l).sqrt()).collect();
    let p = (1.0 - a) / (2.0 * a);
    let d2: Vec<f64> = e2.values.iter().map(|&l| clip(l).powf(p)).collect();
    let n = rho1.dim();
    let g = ComplexMatrix::from_fn(n, |i, j| {
        if d1[i] == 0.0 || d2[j] == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        let overlap: Complex64 = (0..n)
            .map(|k| e1.vectors[(k, i)].conj() * e2.vectors[(k, j)])
            .sum();
        overlap * (d1[i] * d2[j])
    });
    let rank = d1.iter().filter(|&&d| d > 0.0).count().min(d2.iter().filter(|&&d| d > 0.0).count());
    let sv = singular_values(&g);
    let total: f64 = sv
        .iter()
        .take(rank)
        .map(|&s| (s * s).powf(a))
        .sum();
    Ok(clamp_unit(total))
}

/// tr[ρ₁^α ρ₂^{1−α}].
pub fn tilde_fidelity(rho1: &DensityMatrix, rho2: &DensityMatrix, alpha: Alpha) -> Result<f64> {
    check_same_dim(rho1, rho2)?;
    let a = alpha.value();
    let p1 = psd_power_from(&hermitian_eig(rho1.matrix())?, a)?;
    let p2 = psd_power_from(&hermitian_eig(rho2.matrix())?, 1.0 - a)?;
    let tr = (&p1 * &p2).trace();
    if tr.im.abs() > 1e-10 {
        return Err(Error::InvalidState(format!(
            "trace has imaginary part {:e}",
            tr.im
        )));
    }
    Ok(clamp_unit(tr.re))
}

fn divergence_from_fidelity(f: f64, alpha: Alpha) -> DivergenceValue {
    if f < tol::ORTHOGONAL {
        DivergenceValue::Infinite
    } else {
        DivergenceValue::Finite((f.ln() / (alpha.value() - 1.0)).max(0.0))
    }
}

/// Sandwiched Rényi divergence S_α = ln F_α / (α − 1).
pub fn renyi_divergence(
    rho1: &DensityMatrix,
    rho2: &DensityMatrix,
    alpha: Alpha,
) -> Result<DivergenceValue> {
    Ok(divergence_from_fidelity(
        alpha_fidelity_general(rho1, rho2, alpha)?,
        alpha,
    ))
}

/// Qubit Rényi divergence from Bloch vectors.
pub fn renyi_divergence_qubit(r1: BlochVector, r2: BlochVector, alpha: Alpha) -> DivergenceValue {
    divergence_from_fidelity(alpha_fidelity_qubit(r1, r2, alpha), alpha)
}

/// Umegaki relative entropy tr[ρ₁(ln ρ₁ − ln ρ₂)].
pub fn kl_divergence(rho1: &DensityMatrix, rho2: &DensityMatrix) -> Result<DivergenceValue> {
    check_same_dim(rho1, rho2)?;
    let e1 = hermitian_eig(rho1.matrix())?;
    let e2 = hermitian_eig(rho2.matrix())?;
    let entropy_term: f64 = e1
        .values
        .iter()
        .filter(|&&l| l > tol::EIG_CLIP)
        .map(|&l| l * l.ln())
        .sum();
    let n = rho1.dim();
    let mut cross = 0.0;
    for k in 0..n {
        let col: Vec<_> = (0..n).map(|i| e2.vectors[(i, k)]).collect();
        let rv = rho1.matrix().mul_vec(&col);
        let weight: f64 = col.iter().zip(&rv).map(|(a, b)| (a.conj() * b).re).sum();
        let mu = e2.values[k];
        if mu <= tol::EIG_CLIP {
            if weight > tol::KL_WEIGHT {
                return Ok(DivergenceValue::Infinite);
            }
        } else {
            cross += weight * mu.ln();
        }
    }
    Ok(DivergenceValue::Finite((entropy_term - cross).max(0.0)))
}

/// tr(ρ₁ρ₂) + √((1 − tr ρ₁²)(1 − tr ρ₂²)) for qubits.
pub fn super_fidelity(rho1: &DensityMatrix, rho2: &DensityMatrix) -> Result<f64> {
    check_same_dim(rho1, rho2)?;
    if rho1.dim() != 2 {
        return Err(Error::Dimension("superfidelity is defined here for qubits".into()));
    }
    let overlap = (rho1.matrix() * rho2.matrix()).trace().re;
    // 1 − tr ρ² = 2λ₊λ₋; treat round-off purity deficits as pure like the
    // eigenvalue clip elsewhere, since the square root amplifies them.
    let deficit = |rho: &DensityMatrix| {
        let m = 1.0 - rho.purity();
        if m <= 2.0 * tol::EIG_CLIP { 0.0 } else { m }
    };
    let (m1, m2) = (deficit(rho1), deficit(rho2));
    Ok(overlap + (m1 * m2).sqrt())
}
