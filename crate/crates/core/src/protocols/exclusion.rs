use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::channels::{channel_alpha_fidelity, DynamicalMap, QubitChannel};
use crate::error::{Error, Result};
use crate::fidelity::Alpha;
use crate::models::{dephasing_pair_alpha_fidelity, log_partition, OscillatorBath};
use crate::optimize::{find_root, infimum_over_time, OptimizerConfig, TimeGrid};
use crate::tol;

/// Outcome of testing one hypothesized bath against measured dynamics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExclusionVerdict {
    pub omega_hypothesis: f64,
    pub alphas: Vec<f64>,
    pub lhs_curve: Vec<f64>,
    pub rhs_curve: Vec<f64>,
    pub compatible: bool,
    pub violating_alphas: Vec<f64>,
}

/// ln Z(αβ₁+(1−α)β₂) − α ln Z(β₁) − (1−α) ln Z(β₂) for a hypothesized bath.
pub fn exclusion_lhs(bath: &OscillatorBath, beta1: f64, beta2: f64, alpha: Alpha) -> Result<f64> {
    let a = alpha.value();
    if beta1 == beta2 {
        log_partition(bath, beta1)?;
        return Ok(0.0);
    }
    Ok(log_partition(bath, a * beta1 + (1.0 - a) * beta2)?
        - a * log_partition(bath, beta1)?
        - (1.0 - a) * log_partition(bath, beta2)?)
}

/// Channel α-fidelity, in closed form when both channels are dephasing.
fn channel_fidelity(
    e1: &QubitChannel,
    e2: &QubitChannel,
    alpha: Alpha,
    cfg: &OptimizerConfig,
) -> Result<f64> {
    match (e1.dephasing_factor(), e2.dephasing_factor()) {
        (Some(g1), Some(g2)) => dephasing_pair_alpha_fidelity(g1, g2, alpha),
        _ => Ok(channel_alpha_fidelity(e1, e2, alpha, cfg)?.value),
    }
}

/// ln inf_t F(E₁ᵗ, E₂ᵗ) at the order matching the environment side: F_α(E₁,E₂)
/// for α ≥ ½ and F_{1−α}(E₂,E₁) below ½, where commuting thermal states give
/// F_α(ξ₁,ξ₂) = F_{1−α}(ξ₂,ξ₁).
pub fn exclusion_rhs(
    map1: &DynamicalMap,
    map2: &DynamicalMap,
    alpha: Alpha,
    grid: &TimeGrid,
    cfg: &OptimizerConfig,
) -> Result<f64> {
    let (first, second, order) = if alpha.dpi_valid() {
        (map1, map2, alpha)
    } else {
        (map2, map1, alpha.complement())
    };
    let mut failure = None;
    let (_, inf) = infimum_over_time(
        |t| match channel_fidelity(&first.at(t), &second.at(t), order, cfg) {
            Ok(v) => v,
            Err(e) => {
                failure.get_or_insert(e);
                f64::NAN
            }
        },
        grid,
    );
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(inf.ln())
}

/// Right-hand side for each α of a grid.
pub fn exclusion_rhs_curve(
    map1: &DynamicalMap,
    map2: &DynamicalMap,
    alphas: &[Alpha],
    grid: &TimeGrid,
    cfg: &OptimizerConfig,
) -> Result<Vec<f64>> {
    alphas
        .par_iter()
        .map(|&a| exclusion_rhs(map1, map2, a, grid, cfg))
        .collect()
}

/// Compares a single-mode hypothesis ω′ against a precomputed right-hand side.
pub fn exclusion_verdict(
    omega_hypothesis: f64,
    beta1: f64,
    beta2: f64,
    alphas: &[Alpha],
    rhs_curve: &[f64],
) -> Result<ExclusionVerdict> {
    if alphas.len() != rhs_curve.len() {
        return Err(Error::Dimension("α grid and right-hand side differ in length".into()));
    }
    let bath = OscillatorBath::single(omega_hypothesis, 0.0)?;
    let lhs_curve = alphas
        .iter()
        .map(|&a| exclusion_lhs(&bath, beta1, beta2, a))
        .collect::<Result<Vec<_>>>()?;
    let violating_alphas: Vec<f64> = alphas
        .iter()
        .zip(lhs_curve.iter().zip(rhs_curve))
        .filter(|(_, (l, r))| **l > **r + tol::VIOLATION)
        .map(|(a, _)| a.value())
        .collect();
    Ok(ExclusionVerdict {
        omega_hypothesis,
        alphas: alphas.iter().map(|a| a.value()).collect(),
        lhs_curve,
        rhs_curve: rhs_curve.to_vec(),
        compatible: violating_alphas.is_empty(),
        violating_alphas,
    })
}

/// Smallest hypothesized frequency that violates the inequality, refined by
/// bisection between the last compatible and first incompatible scan points.
/// `Ok(None)` when every scanned frequency is compatible.
pub fn frequency_crossover(
    beta1: f64,
    beta2: f64,
    omega_scan: &[f64],
    alphas: &[Alpha],
    rhs_curve: &[f64],
) -> Result<Option<f64>> {
    if omega_scan.is_empty() {
        return Err(Error::InvalidParameter("empty frequency scan".into()));
    }
    let incompatible = |w: f64| -> Result<bool> {
        Ok(!exclusion_verdict(w, beta1, beta2, alphas, rhs_curve)?.compatible)
    };
    let mut last_ok = None;
    for &w in omega_scan {
        if incompatible(w)? {
            let Some(lo) = last_ok else {
                return Err(Error::NotBracketed {
                    lo: omega_scan[0],
                    hi: w,
                });
            };
            let mut failure = None;
            let root = find_root(
                |x| match incompatible(x) {
                    Ok(true) => 1.0,
                    Ok(false) => -1.0,
                    Err(e) => {
                        failure.get_or_insert(e);
                        f64::NAN
                    }
                },
                lo,
                w,
                1e-9,
            )?;
            if let Some(e) = failure {
                return Err(e);
            }
            return Ok(Some(root));
        }
        last_ok = Some(w);
    }
    Ok(None)
}
