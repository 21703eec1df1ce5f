use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::channels::{DynamicalMap, QubitChannel};
use crate::error::{Error, Result};
use crate::fidelity::Alpha;

/// One bosonic mode with angular frequency ω and coupling g to the qubit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Mode {
    pub omega: f64,
    pub coupling: Complex64,
}

/// Collection of independent harmonic modes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OscillatorBath {
    modes: Vec<Mode>,
}

impl OscillatorBath {
    pub fn new(modes: Vec<Mode>) -> Result<Self> {
        if modes.is_empty() {
            return Err(Error::InvalidParameter("bath needs at least one mode".into()));
        }
        for m in &modes {
            if !(m.omega > 0.0 && m.omega.is_finite()) {
                return Err(Error::InvalidParameter(format!(
                    "mode frequency must be positive, got {}",
                    m.omega
                )));
            }
            if !(m.coupling.re.is_finite() && m.coupling.im.is_finite()) {
                return Err(Error::InvalidParameter("non-finite coupling".into()));
            }
        }
        Ok(Self { modes })
    }

    pub fn single(omega: f64, coupling: f64) -> Result<Self> {
        Self::new(vec![Mode {
            omega,
            coupling: Complex64::new(coupling, 0.0),
        }])
    }

    pub fn modes(&self) -> &[Mode] {
        &self.modes
    }
}

/// Gibbs state of a bath, identified by its inverse temperature; β = +∞ is
/// the ground state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThermalState {
    beta: f64,
}

impl ThermalState {
    pub fn from_beta(beta: f64) -> Result<Self> {
        if beta > 0.0 {
            Ok(Self { beta })
        } else {
            Err(Error::InvalidParameter(format!(
                "inverse temperature must be positive, got {beta}"
            )))
        }
    }

    pub fn ground() -> Self {
        Self {
            beta: f64::INFINITY,
        }
    }

    /// T = 0 maps to the ground state.
    pub fn from_temperature(t: f64) -> Result<Self> {
        if t == 0.0 {
            Ok(Self::ground())
        } else if t > 0.0 && t.is_finite() {
            Ok(Self { beta: 1.0 / t })
        } else {
            Err(Error::InvalidParameter(format!("temperature must be ≥ 0, got {t}")))
        }
    }

    pub fn beta(self) -> f64 {
        self.beta
    }

    pub fn temperature(self) -> f64 {
        1.0 / self.beta
    }

    pub fn is_ground(self) -> bool {
        self.beta.is_infinite()
    }
}

/// ln(1 − e^{−x}) for x > 0.
fn ln_one_minus_exp(x: f64) -> f64 {
    if x > 1.0 {
        (-(-x).exp()).ln_1p()
    } else {
        (-(-x).exp_m1()).ln()
    }
}

fn coth_half(omega: f64, temperature: f64) -> f64 {
    if temperature == 0.0 {
        1.0
    } else {
        1.0 / (omega / (2.0 * temperature)).tanh()
    }
}

/// Coherence factor Γ(t) of the spin-boson dephasing model at temperature T.
pub fn dephasing_gamma(bath: &OscillatorBath, temperature: f64, t: f64) -> f64 {
    let exponent: f64 = bath
        .modes
        .iter()
        .map(|m| {
            4.0 * m.coupling.norm_sqr() / (m.omega * m.omega)
                * coth_half(m.omega, temperature)
                * (1.0 - (m.omega * t).cos())
        })
        .sum();
    (-exponent).exp()
}

/// t ↦ dephasing channel with factor Γ(t).
pub fn dephasing_map(bath: &OscillatorBath, temperature: f64) -> Result<DynamicalMap> {
    if !(temperature >= 0.0 && temperature.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "temperature must be ≥ 0, got {temperature}"
        )));
    }
    let bath = bath.clone();
    Ok(DynamicalMap::new(
        format!("dephasing(T={temperature})"),
        move |t| {
            QubitChannel::dephasing(dephasing_gamma(&bath, temperature, t).clamp(0.0, 1.0))
                .expect("factor clamped to [0,1]")
        },
    ))
}

/// Channel α-fidelity of two dephasing channels, attained at equatorial pure
/// inputs.
pub fn dephasing_pair_alpha_fidelity(gamma1: f64, gamma2: f64, alpha: Alpha) -> Result<f64> {
    for g in [gamma1, gamma2] {
        if !(0.0..=1.0).contains(&g) {
            return Err(Error::InvalidParameter(format!("dephasing factor {g} not in [0,1]")));
        }
    }
    let a = alpha.value();
    let plus = (0.5 * (1.0 + gamma2)).powf(1.0 - a) * (0.5 * (1.0 + gamma1)).powf(a);
    let minus = (0.5 * (1.0 - gamma2)).powf(1.0 - a) * (0.5 * (1.0 - gamma1)).powf(a);
    Ok((plus + minus).min(1.0))
}

/// ln Z(β) including the zero-point energy.
pub fn log_partition(bath: &OscillatorBath, beta: f64) -> Result<f64> {
    if !(beta > 0.0 && beta.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "log partition needs finite β > 0, got {beta}"
        )));
    }
    Ok(bath
        .modes
        .iter()
        .map(|m| -0.5 * beta * m.omega - ln_one_minus_exp(beta * m.omega))
        .sum())
}

/// S_α between two Gibbs states of the bath.
pub fn thermal_renyi_divergence(
    bath: &OscillatorBath,
    s1: ThermalState,
    s2: ThermalState,
    alpha: Alpha,
) -> Result<f64> {
    let a = alpha.value();
    // Σ ln(1 − e^{−βω}) is the log ground-state population.
    let ln_ground = |beta: f64| -> f64 {
        bath.modes
            .iter()
            .map(|m| ln_one_minus_exp(beta * m.omega))
            .sum()
    };
    Ok(match (s1.is_ground(), s2.is_ground()) {
        (true, true) => 0.0,
        (true, false) => -ln_ground(s2.beta),
        (false, true) => a / (a - 1.0) * ln_ground(s1.beta),
        (false, false) => {
            if s1.beta == s2.beta {
                return Ok(0.0);
            }
            let mixed = log_partition(bath, a * s1.beta + (1.0 - a) * s2.beta)?;
            let v = (mixed - a * log_partition(bath, s1.beta)?
                - (1.0 - a) * log_partition(bath, s2.beta)?)
                / (a - 1.0);
            v.max(0.0)
        }
    })
}
