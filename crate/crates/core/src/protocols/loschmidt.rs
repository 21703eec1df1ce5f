use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::models::{loschmidt_ground, IsingChain};
use crate::optimize::find_root;
use crate::tol;

/// Range of echoes L compatible with a reference echo `l_ref` and a lower
/// bound `f` on the environment-state fidelity F_{1/2}.
///
/// With x = √L_ref and y = √L the constraint reads
/// f ≤ ½√((1−x)(1−y)) + ½√((1+x)(1+y)); the admissible y form an interval
/// around x whose squared endpoints are returned.
pub fn loschmidt_bounds_from_fidelity(f: f64, l_ref: f64) -> Result<(f64, f64)> {
    if !(0.0..=1.0).contains(&l_ref) {
        return Err(Error::InvalidParameter(format!("reference echo {l_ref} not in [0,1]")));
    }
    if f.is_nan() || f > 1.0 {
        return Err(Error::EmptyInterval);
    }
    if f == 1.0 {
        return Ok((l_ref, l_ref));
    }
    let x = l_ref.sqrt();
    let h = |y: f64| {
        0.5 * ((1.0 - x) * (1.0 - y)).max(0.0).sqrt() + 0.5 * ((1.0 + x) * (1.0 + y)).sqrt()
    };
    let g = |y: f64| h(y) - f;
    let lo = if g(0.0) >= 0.0 { 0.0 } else { find_root(g, 0.0, x, 1e-15)? };
    let hi = if g(1.0) >= 0.0 { 1.0 } else { find_root(g, x, 1.0, 1e-15)? };
    Ok((lo * lo, hi * hi))
}

/// Outcome of scanning a bound pair for a revival.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RevivalVerdict {
    pub revival: bool,
    /// Index of the first strict local minimum of the upper curve.
    pub minimum_index: Option<usize>,
    pub minimum_level: Option<f64>,
    /// First later index where the lower curve exceeds that level.
    pub crossing_index: Option<usize>,
}

/// A revival is certified when the lower bound climbs above the first local
/// minimum of the upper bound: the true echo must then have increased.
pub fn detect_revival(upper: &[f64], lower: &[f64]) -> Result<RevivalVerdict> {
    if upper.len() != lower.len() {
        return Err(Error::Dimension("upper and lower curves differ in length".into()));
    }
    let minimum = (1..upper.len().saturating_sub(1))
        .find(|&i| upper[i] < upper[i - 1] - tol::FLAT && upper[i] < upper[i + 1] - tol::FLAT);
    let Some(i) = minimum else {
        return Ok(RevivalVerdict {
            revival: false,
            minimum_index: None,
            minimum_level: None,
            crossing_index: None,
        });
    };
    let level = upper[i];
    let crossing = (i + 1..lower.len()).find(|&j| lower[j] > level);
    Ok(RevivalVerdict {
        revival: crossing.is_some(),
        minimum_index: Some(i),
        minimum_level: Some(level),
        crossing_index: crossing,
    })
}

/// Echo bounds along a time grid for the chain ground state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LoschmidtPanel {
    pub times: Vec<f64>,
    pub ground: Vec<f64>,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    pub verdict: RevivalVerdict,
}

/// Bounds on the echo of any environment state whose fidelity with the
/// ground state is at least `f`.
pub fn loschmidt_panel(chain: &IsingChain, f: f64, times: &[f64]) -> Result<LoschmidtPanel> {
    if !(f > 0.0 && f <= 1.0) {
        return Err(Error::InvalidParameter(format!("fidelity {f} not in (0,1]")));
    }
    let ground: Vec<f64> = times.iter().map(|&t| loschmidt_ground(chain, t)).collect();
    let (lower, upper): (Vec<f64>, Vec<f64>) = ground
        .iter()
        .map(|&l| loschmidt_bounds_from_fidelity(f, l))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .unzip();
    let verdict = detect_revival(&upper, &lower)?;
    Ok(LoschmidtPanel {
        times: times.to_vec(),
        ground,
        lower,
        upper,
        verdict,
    })
}
