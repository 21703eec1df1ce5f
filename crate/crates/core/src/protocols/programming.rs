use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::optimize::find_root;

/// Lower bound on the program-register dimension of an approximate processor.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DimensionBound {
    pub epsilon: f64,
    pub min_dim: usize,
    /// Noise levels at which the bound drops to the paired dimension.
    pub thresholds: Vec<(f64, usize)>,
}

/// Upper bound (2−ε)ε / √(1 − f) on the overlap of two program states, where
/// f is the minimal Uhlmann fidelity between the two target unitaries.
pub fn prog_overlap_bound(eps: f64, inf_unitary_fid: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&eps) {
        return Err(Error::InvalidParameter(format!("noise level {eps} not in [0,1]")));
    }
    if !(0.0..1.0).contains(&inf_unitary_fid) {
        return Err(Error::InvalidParameter(format!(
            "unitary fidelity {inf_unitary_fid} must lie in [0,1); equal unitaries carry no bound"
        )));
    }
    Ok((2.0 - eps) * eps / (1.0 - inf_unitary_fid).sqrt())
}

/// Dimension bound from pairwise overlap bounds g_jk of N programs.
pub fn min_processor_dimension(n: usize, pairwise_g: &[Vec<f64>]) -> Result<usize> {
    if n < 2 {
        return Err(Error::InvalidParameter("need at least two programs".into()));
    }
    if pairwise_g.len() != n || pairwise_g.iter().any(|row| row.len() != n) {
        return Err(Error::Dimension(format!("overlap matrix must be {n}×{n}")));
    }
    let mut bound = 0.0f64;
    for (j, row) in pairwise_g.iter().enumerate() {
        for (k, &g) in row.iter().enumerate() {
            if j == k {
                continue;
            }
            if !(0.0..=1.0).contains(&g) {
                return Err(Error::InvalidParameter(format!("overlap bound {g} not in [0,1]")));
            }
            bound = bound.max(if g == 0.0 { f64::INFINITY } else { 1.0 / g + 1.0 });
        }
    }
    if bound.is_infinite() {
        return Ok(n);
    }
    // largest integer strictly below the bound
    let k = bound.ceil() as usize - 1;
    Ok(if n <= k { n } else { k })
}

/// Noise level where (2−ε)ε reaches 1/(d−1), i.e. where the Pauli bound
/// drops below dimension d.
pub fn dimension_cut(d: usize) -> Result<f64> {
    if d < 3 {
        return Err(Error::InvalidParameter(format!("cut defined for d ≥ 3, got {d}")));
    }
    let target = 1.0 / (d as f64 - 1.0);
    find_root(|e| (2.0 - e) * e - target, 0.0, 1.0, 1e-15)
}

/// Bound for the four Pauli unitaries implemented with depolarizing noise ε.
pub fn pauli_dimension_bound(eps: f64) -> Result<DimensionBound> {
    let g = prog_overlap_bound(eps, 0.0)?;
    let matrix: Vec<Vec<f64>> = (0..4)
        .map(|j| (0..4).map(|k| if j == k { 1.0 } else { g }).collect())
        .collect();
    Ok(DimensionBound {
        epsilon: eps,
        min_dim: min_processor_dimension(4, &matrix)?,
        thresholds: vec![(dimension_cut(4)?, 3), (dimension_cut(3)?, 2)],
    })
}

/// Earlier literature cuts [3(13+2√42)]⁻¹ and [2(9+4√5)]⁻¹ for the same task.
pub fn hillery_reference_thresholds() -> [f64; 2] {
    [
        1.0 / (3.0 * (13.0 + 2.0 * 42f64.sqrt())),
        1.0 / (2.0 * (9.0 + 4.0 * 5f64.sqrt())),
    ]
}

/// Staircase implied by the literature cuts.
pub fn reference_min_dimension(eps: f64) -> usize {
    let [r4, r3] = hillery_reference_thresholds();
    if eps < r4 {
        4
    } else if eps < r3 {
        3
    } else {
        2
    }
}
