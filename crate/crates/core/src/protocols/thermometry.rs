use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::channels::{channel_alpha_fidelity, DynamicalMap};
use crate::error::{Error, Result};
use crate::fidelity::{alpha_fidelity_qubit, kl_divergence, Alpha};
use crate::optimize::{find_root, infimum_over_time, minimize_ball, OptimizerConfig, TimeGrid};
use crate::qmath::BlochVector;
use crate::tol;

/// Temperature interval in units of ħω/k_B.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TemperatureBounds {
    pub lower: f64,
    pub upper: Option<f64>,
    /// Whether the upper bound's premise T ≤ T* holds.
    pub upper_valid: bool,
    /// Probe state attaining the tightest bound.
    pub probe: BlochVector,
}

/// Probe left to equilibrate with the bath.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThermalizedProbe {
    /// Excited-state population 1/(1 + e^{ω/T}).
    pub excited_population: f64,
    pub bounds: TemperatureBounds,
}

/// 1/β* with β* the positive root of β/2 + ln(1 − e^{−β}); below this
/// temperature the ground population of a mode exceeds e^{−βω/2}.
pub fn limiting_temperature() -> f64 {
    static CACHE: OnceLock<f64> = OnceLock::new();
    *CACHE.get_or_init(|| {
        let beta = find_root(|b: f64| 0.5 * b + (-(-b).exp_m1()).ln(), 0.5, 2.0, 1e-15)
            .expect("root bracketed on [0.5, 2]");
        1.0 / beta
    })
}

/// Lower and upper temperatures implied by a lower estimate d of the excited
/// population e^{−ω/T}, i.e. an upper estimate 1 − d of the ground population.
/// Taking d rather than 1 − d keeps the low-temperature end accurate.
fn bounds_from_deficit(d: f64) -> (f64, Option<f64>) {
    let d = d.clamp(0.0, 1.0);
    if d == 0.0 {
        return (0.0, None);
    }
    if d == 1.0 {
        return (f64::INFINITY, None);
    }
    (-1.0 / d.ln(), Some(-0.5 / (-d).ln_1p()))
}

/// Deficit 1 − F^e of a fidelity raised to `exponent`; values within
/// [`tol::UNIT_FIDELITY`] of zero are numerical noise of identical dynamics.
fn deficit(f: f64, exponent: f64) -> f64 {
    let d = -(exponent * f.ln()).exp_m1();
    if d <= tol::UNIT_FIDELITY {
        0.0
    } else {
        d
    }
}

/// Temperature bounds from the dynamics induced by a ground-state calibration
/// (`map0`) and by the unknown thermal state (`map_t`).
///
/// Each α contributes inf_t F_α(E₀,E_T)^{1/(1−α)} for α ≥ ½ and
/// inf_t F_{1−α}(E₀,E_T)^{1/α} below ½, first with the |+⟩ probe and then with
/// the channel fidelity at the best time. The relative-entropy form enters as
/// e^{−S} with S the largest KL divergence found over probes and times.
/// `reference_temperature` decides `upper_valid`; without it the lower bound
/// is used, which is only a necessary condition.
pub fn thermometry_bounds(
    map0: &DynamicalMap,
    map_t: &DynamicalMap,
    alphas: &[Alpha],
    grid: &TimeGrid,
    cfg: &OptimizerConfig,
    reference_temperature: Option<f64>,
) -> Result<TemperatureBounds> {
    if alphas.is_empty() {
        return Err(Error::InvalidParameter("empty α grid".into()));
    }
    let plus = BlochVector::new(1.0, 0.0, 0.0)?;

    // (excited-population estimate, order, time)
    let mut best: Option<(f64, Alpha, f64)> = None;
    for &alpha in alphas {
        let order = if alpha.dpi_valid() { alpha } else { alpha.complement() };
        let exponent = 1.0 / (1.0 - order.value());
        let (t, f) = infimum_over_time(
            |t| alpha_fidelity_qubit(map0.at(t).apply(plus), map_t.at(t).apply(plus), order),
            grid,
        );
        let d = deficit(f, exponent);
        if best.is_none_or(|(bd, _, _)| d > bd) {
            best = Some((d, order, t));
        }
    }
    let (mut d, order, t_star) = best.expect("α grid is non-empty");
    let mut probe = plus;

    let channel = channel_alpha_fidelity(&map0.at(t_star), &map_t.at(t_star), order, cfg)?;
    let d_channel = deficit(channel.value, 1.0 / (1.0 - order.value()));
    if d_channel > d {
        d = d_channel;
        probe = channel.argmin_1;
    }

    let kl_at = |t: f64, v: BlochVector| -> f64 {
        kl_divergence(&map0.at(t).apply(v).to_density(), &map_t.at(t).apply(v).to_density())
            .map(|d| d.as_f64())
            .unwrap_or(f64::NAN)
    };
    let (t_kl, neg_s) = infimum_over_time(|t| -kl_at(t, plus), grid);
    let mut s = -neg_s;
    let mut kl_probe = plus;
    let refined = minimize_ball(&|v: &[BlochVector]| -kl_at(t_kl, v[0]), 1, cfg)?;
    if -refined.value > s {
        s = -refined.value;
        kl_probe = refined.argmin_1;
    }
    if s.is_finite() && deficit((-s).exp(), 1.0) > d {
        d = deficit((-s).exp(), 1.0);
        probe = kl_probe;
    }

    let (lower, upper) = bounds_from_deficit(d);
    let upper_valid = reference_temperature.unwrap_or(lower) <= limiting_temperature();
    Ok(TemperatureBounds {
        lower,
        upper,
        upper_valid,
        probe,
    })
}

fn excited_population(temperature: f64) -> f64 {
    1.0 / (1.0 + (1.0 / temperature).exp())
}

/// Bounds when the probe has reached the Gibbs state of the bath frequency.
pub fn thermalized_probe_bounds(temperature: f64) -> Result<ThermalizedProbe> {
    if !(temperature > 0.0 && temperature.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "temperature must be positive, got {temperature}"
        )));
    }
    let p = excited_population(temperature);
    let (lower, upper) = bounds_from_deficit(p);
    Ok(ThermalizedProbe {
        excited_population: p,
        bounds: TemperatureBounds {
            lower,
            upper,
            upper_valid: temperature <= limiting_temperature(),
            probe: BlochVector::new(1.0, 0.0, 0.0)?,
        },
    })
}

/// Long-time fidelity (1 − p(T))^{1−α} of the thermalized probe.
pub fn thermalized_limit_fidelity(temperature: f64, alpha: Alpha) -> Result<f64> {
    if !(temperature > 0.0 && temperature.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "temperature must be positive, got {temperature}"
        )));
    }
    Ok((1.0 - excited_population(temperature)).powf(1.0 - alpha.value()))
}
