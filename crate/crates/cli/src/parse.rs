//! Parsers for command-line values: Bloch triples, uniform grids and channel specs.

use alphafid::{BlochVector, QubitChannel};

fn numbers(s: &str, sep: char) -> Result<Vec<f64>, String> {
    s.split(sep)
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| format!("`{p}` is not a number"))
        })
        .collect()
}

fn exactly<const N: usize>(s: &str, sep: char) -> Result<[f64; N], String> {
    let v = numbers(s, sep)?;
    v.try_into()
        .map_err(|v: Vec<f64>| format!("expected {N} values in `{s}`, got {}", v.len()))
}

pub fn bloch(s: &str) -> Result<BlochVector, String> {
    let [x, y, z] = exactly::<3>(s, ',')?;
    BlochVector::new(x, y, z).map_err(|e| e.to_string())
}

/// Inclusive uniform grid `lo:hi:n`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct Grid {
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
}

impl Grid {
    pub fn values(&self) -> Vec<f64> {
        if self.n == 1 {
            return vec![self.lo];
        }
        let m = (self.n - 1) as f64;
        (0..self.n)
            .map(|i| (self.lo * (m - i as f64) + self.hi * i as f64) / m)
            .collect()
    }
}

pub fn grid(s: &str) -> Result<Grid, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [lo, hi, n] = parts[..] else {
        return Err(format!("grid `{s}` must look like lo:hi:n"));
    };
    let parse = |p: &str| p.parse::<f64>().map_err(|_| format!("`{p}` is not a number"));
    let (lo, hi) = (parse(lo)?, parse(hi)?);
    let n: usize = n.parse().map_err(|_| format!("`{n}` is not a point count"))?;
    if n == 0 || !lo.is_finite() || !hi.is_finite() || hi < lo {
        return Err(format!("grid `{s}` needs finite lo ≤ hi and at least one point"));
    }
    Ok(Grid { lo, hi, n })
}

/// Channel constructor grammar: `identity`, `dephasing:Γ`, `pauli:i`,
/// `noisy_unitary:i:ε`, `pauli_mix:p0,p1,p2,p3`, `const:x,y,z`.
pub fn channel(s: &str) -> Result<QubitChannel, String> {
    let (name, args) = s.split_once(':').unwrap_or((s, ""));
    let index = |p: &str| p.parse::<usize>().map_err(|_| format!("`{p}` is not a Pauli index"));
    let built = match (name, args) {
        ("identity", "") => Ok(QubitChannel::identity()),
        ("dephasing", a) => QubitChannel::dephasing(exactly::<1>(a, ',')?[0]),
        ("pauli", a) => QubitChannel::pauli(index(a)?),
        ("noisy_unitary", a) => {
            let (i, eps) = a
                .split_once(':')
                .ok_or_else(|| format!("`{s}` must look like noisy_unitary:i:eps"))?;
            QubitChannel::noisy_unitary(index(i)?, exactly::<1>(eps, ',')?[0])
        }
        ("pauli_mix", a) => QubitChannel::pauli_mix(exactly::<4>(a, ',')?),
        ("const", a) => Ok(QubitChannel::constant(bloch(a)?)),
        _ => return Err(format!("unknown channel spec `{s}`")),
    };
    built.map_err(|e| e.to_string())
}
