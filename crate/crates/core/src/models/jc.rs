use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::channels::{DynamicalMap, QubitChannel};
use crate::error::{Error, Result};

/// Thermal averages driving the resonant Jaynes–Cummings qubit channel.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JcCoefficients {
    /// Ground-state survival probability.
    pub a: f64,
    /// Excited-state survival probability.
    pub b: f64,
    /// Coherence factor.
    pub c: Complex64,
    /// Bound on the Boltzmann weight dropped by truncating the photon number.
    pub tail_bound: f64,
}

impl JcCoefficients {
    /// Affine Bloch form, with z = +1 the qubit ground state.
    pub fn channel(&self) -> QubitChannel {
        let c = self.c;
        QubitChannel::from_affine(
            [
                [c.re, -c.im, 0.0],
                [c.im, c.re, 0.0],
                [0.0, 0.0, self.a + self.b - 1.0],
            ],
            [0.0, 0.0, self.a - self.b],
        )
    }
}

fn check(g: f64, omega: f64, temperature: f64, n_trunc: usize) -> Result<()> {
    if !g.is_finite() {
        return Err(Error::InvalidParameter("coupling must be finite".into()));
    }
    if !(omega > 0.0 && omega.is_finite()) {
        return Err(Error::InvalidParameter(format!("ω must be positive, got {omega}")));
    }
    if !(temperature >= 0.0 && temperature.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "temperature must be ≥ 0, got {temperature}"
        )));
    }
    if n_trunc < 1 {
        return Err(Error::InvalidParameter("photon truncation must be ≥ 1".into()));
    }
    Ok(())
}

/// Normalized Boltzmann weights of photon numbers 0..=n_trunc and the tail bound.
fn weights(omega: f64, temperature: f64, n_trunc: usize) -> (Vec<f64>, f64) {
    if temperature == 0.0 {
        return (vec![1.0], 0.0);
    }
    let q = (-omega / temperature).exp();
    let raw: Vec<f64> = (0..=n_trunc).map(|n| q.powi(n as i32)).collect();
    let z: f64 = raw.iter().sum();
    let tail = q.powi(n_trunc as i32 + 1) / (1.0 - q);
    (raw.into_iter().map(|w| w / z).collect(), tail)
}

/// Resonant Jaynes–Cummings coefficients for a thermal field at time t.
pub fn jc_coefficients(
    g: f64,
    omega: f64,
    temperature: f64,
    t: f64,
    n_trunc: usize,
) -> Result<JcCoefficients> {
    check(g, omega, temperature, n_trunc)?;
    let (w, tail_bound) = weights(omega, temperature, n_trunc);
    Ok(coefficients_from(&w, g.abs() * t, tail_bound))
}

fn coefficients_from(w: &[f64], gt: f64, tail_bound: f64) -> JcCoefficients {
    let (mut a, mut b, mut c) = (0.0, 0.0, 0.0);
    for (n, &wn) in w.iter().enumerate() {
        let cn = (gt * (n as f64).sqrt()).cos();
        let cn1 = (gt * (n as f64 + 1.0).sqrt()).cos();
        a += wn * cn * cn;
        b += wn * cn1 * cn1;
        c += wn * cn * cn1;
    }
    JcCoefficients {
        a,
        b,
        c: Complex64::new(c, 0.0),
        tail_bound,
    }
}

/// t ↦ qubit channel of the resonant Jaynes–Cummings model with a thermal field.
pub fn jc_map(g: f64, omega: f64, temperature: f64, n_trunc: usize) -> Result<DynamicalMap> {
    check(g, omega, temperature, n_trunc)?;
    let (w, tail) = weights(omega, temperature, n_trunc);
    let gabs = g.abs();
    Ok(DynamicalMap::new(
        format!("jc(g={g}, omega={omega}, T={temperature}, n_trunc={n_trunc})"),
        move |t| coefficients_from(&w, gabs * t, tail).channel(),
    ))
}
