use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::channels::{DynamicalMap, QubitChannel};
use crate::error::{Error, Result};

/// Periodic transverse-field Ising chain H = −J Σ (σᶻσᶻ + λσˣ) whose field is
/// shifted by δ when the probe qubit is excited.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IsingChain {
    pub j: f64,
    pub lambda: f64,
    pub delta: f64,
    pub n: usize,
}

impl IsingChain {
    pub fn new(j: f64, lambda: f64, delta: f64, n: usize) -> Result<Self> {
        if n < 4 || !n.is_multiple_of(2) {
            return Err(Error::InvalidParameter(format!(
                "spin count must be even and ≥ 4, got {n}"
            )));
        }
        if !(j > 0.0 && j.is_finite()) {
            return Err(Error::InvalidParameter(format!("J must be positive, got {j}")));
        }
        if !(lambda.is_finite() && delta.is_finite()) {
            return Err(Error::InvalidParameter("field and coupling must be finite".into()));
        }
        Ok(Self { j, lambda, delta, n })
    }
}

/// Single fermionic mode: momentum, quasiparticle energy and Bogoliubov angle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IsingMode {
    pub k: f64,
    pub energy: f64,
    pub angle: f64,
}

/// Modes k = (2n−1)π/N, n = 1..N/2, of the chain at transverse field `field`.
pub fn ising_spectrum(chain: &IsingChain, field: f64) -> Vec<IsingMode> {
    let n = chain.n as f64;
    (1..=chain.n / 2)
        .map(|m| {
            let k = (2.0 * m as f64 - 1.0) * std::f64::consts::PI / n;
            let (sk, ck) = k.sin_cos();
            let energy = 2.0 * chain.j * (field * field - 2.0 * field * ck + 1.0).max(0.0).sqrt();
            let angle = 0.5 * sk.atan2(field - ck);
            IsingMode { k, energy, angle }
        })
        .collect()
}

/// Echo of the chain ground state after the field quench λ → λ + δ, from the
/// free-fermion product formula.
pub fn loschmidt_ground(chain: &IsingChain, t: f64) -> f64 {
    let before = ising_spectrum(chain, chain.lambda);
    let after = ising_spectrum(chain, chain.lambda + chain.delta);
    let mut prod = 1.0;
    for (b, a) in before.iter().zip(&after) {
        let s2 = (2.0 * (a.angle - b.angle)).sin().powi(2);
        let e2 = (a.energy * t).sin().powi(2);
        prod *= 1.0 - s2 * e2;
    }
    prod.clamp(0.0, 1.0)
}

/// Initial environment state for echo evaluation.
#[derive(Debug, Clone, PartialEq)]
pub enum EchoState {
    /// Ground state of the unperturbed chain (even fermion parity).
    Ground,
    /// Arbitrary vector in the 2^N spin basis; normalized on use.
    Vector(Vec<Complex64>),
}

/// Largest chain handled by dense diagonalization.
pub const EXACT_MAX_SPINS: usize = 10;

/// Dense real symmetric matrix in row-major order.
#[derive(Debug, Clone)]
struct Symmetric {
    n: usize,
    a: Vec<f64>,
}

/// Eigenvalues and column eigenvectors (row-major, `vectors[i * n + k]` is
/// component i of vector k).
#[derive(Debug, Clone)]
struct SymmetricEigen {
    values: Vec<f64>,
    vectors: Vec<f64>,
}

/// Cyclic Jacobi diagonalization. Slower than QR-based solvers but accurate
/// to round-off on the clustered spectra of weakly perturbed Ising chains.
fn symmetric_eigen(mut m: Symmetric) -> SymmetricEigen {
    let n = m.n;
    let a = &mut m.a;
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let norm: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    for _ in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|p| (p + 1..n).map(move |q| (p, q)))
            .map(|(p, q)| a[p * n + q] * a[p * n + q])
            .sum::<f64>()
            .sqrt();
        if off <= 1e-16 * norm {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq.abs() <= 1e-300 {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k * n + p], a[k * n + q]);
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p * n + k], a[q * n + k]);
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let (vkp, vkq) = (v[k * n + p], v[k * n + q]);
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    SymmetricEigen {
        values: (0..n).map(|i| a[i * n + i]).collect(),
        vectors: v,
    }
}

fn hamiltonian(n: usize, j: f64, field: f64) -> Symmetric {
    let dim = 1usize << n;
    let mut a = vec![0.0; dim * dim];
    for s in 0..dim {
        let mut zz = 0.0;
        for site in 0..n {
            let x = if s >> site & 1 == 0 { 1.0 } else { -1.0 };
            let y = if s >> ((site + 1) % n) & 1 == 0 { 1.0 } else { -1.0 };
            zz += x * y;
            a[(s ^ (1 << site)) * dim + s] -= j * field;
        }
        a[s * dim + s] -= j * zz;
    }
    Symmetric { n: dim, a }
}

/// Lowest state with Πσˣ = +1, found in the basis (|s⟩ + |s̄⟩)/√2 where s̄
/// flips every spin.
fn even_ground_state(h: &Symmetric) -> (Vec<f64>, f64) {
    let dim = h.n;
    let half = dim / 2;
    let flip = dim - 1;
    let mut a = vec![0.0; half * half];
    for x in 0..half {
        for y in 0..half {
            a[x * half + y] = h.a[x * dim + y] + h.a[x * dim + (y ^ flip)];
        }
    }
    let eig = symmetric_eigen(Symmetric { n: half, a });
    let (k, e) = eig
        .values
        .iter()
        .enumerate()
        .min_by(|x, y| x.1.total_cmp(y.1))
        .expect("non-empty spectrum");
    let mut v = vec![0.0; dim];
    for x in 0..half {
        let c = eig.vectors[x * half + k] * std::f64::consts::FRAC_1_SQRT_2;
        v[x] = c;
        v[x ^ flip] = c;
    }
    (v, *e)
}

/// Dense-diagonalization echo evaluator for chains of at most
/// [`EXACT_MAX_SPINS`] spins.
#[derive(Debug, Clone)]
pub struct ExactEcho {
    before: SymmetricEigen,
    after: SymmetricEigen,
    state: Vec<Complex64>,
    ground_energy: Option<f64>,
}

impl ExactEcho {
    pub fn new(chain: &IsingChain, state: &EchoState) -> Result<Self> {
        if chain.n > EXACT_MAX_SPINS {
            return Err(Error::TooLarge(format!(
                "exact diagonalization limited to {EXACT_MAX_SPINS} spins, got {}",
                chain.n
            )));
        }
        let dim = 1usize << chain.n;
        let h0 = hamiltonian(chain.n, chain.j, chain.lambda);
        let h1 = hamiltonian(chain.n, chain.j, chain.lambda + chain.delta);
        let (vec, ground_energy) = match state {
            EchoState::Ground => {
                let (v, e) = even_ground_state(&h0);
                (v.into_iter().map(|x| Complex64::new(x, 0.0)).collect(), Some(e))
            }
            EchoState::Vector(v) => (normalized_state(v, dim)?, None),
        };
        Ok(Self {
            before: symmetric_eigen(h0),
            after: symmetric_eigen(h1),
            state: vec,
            ground_energy,
        })
    }

    /// Same chain with another initial state, reusing both diagonalizations.
    pub fn with_state(&self, state: &[Complex64]) -> Result<Self> {
        Ok(Self {
            before: self.before.clone(),
            after: self.after.clone(),
            state: normalized_state(state, self.state.len())?,
            ground_energy: None,
        })
    }

    /// Ground-state energy of the unperturbed chain when the ground state was requested.
    pub fn ground_energy(&self) -> Option<f64> {
        self.ground_energy
    }

    pub fn state(&self) -> &[Complex64] {
        &self.state
    }

    fn evolve(&self, eig: &SymmetricEigen, t: f64) -> Vec<Complex64> {
        let dim = self.state.len();
        let v = &eig.vectors;
        let coeffs: Vec<Complex64> = (0..dim)
            .map(|k| {
                let c: Complex64 = (0..dim).map(|i| self.state[i] * v[i * dim + k]).sum();
                c * Complex64::from_polar(1.0, -eig.values[k] * t)
            })
            .collect();
        (0..dim)
            .map(|i| (0..dim).map(|k| coeffs[k] * v[i * dim + k]).sum())
            .collect()
    }

    /// ⟨φ|e^{iH(λ)t} e^{−iH(λ+δ)t}|φ⟩.
    pub fn amplitude(&self, t: f64) -> Complex64 {
        let a = self.evolve(&self.after, t);
        let b = self.evolve(&self.before, t);
        b.iter().zip(&a).map(|(x, y)| x.conj() * y).sum()
    }

    /// |⟨φ|e^{iH(λ)t} e^{−iH(λ+δ)t}|φ⟩|².
    pub fn echo(&self, t: f64) -> f64 {
        self.amplitude(t).norm_sqr().clamp(0.0, 1.0)
    }
}

fn normalized_state(v: &[Complex64], dim: usize) -> Result<Vec<Complex64>> {
    if v.len() != dim {
        return Err(Error::Dimension(format!(
            "state has {} amplitudes, chain needs {dim}",
            v.len()
        )));
    }
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if !(norm > 0.0 && norm.is_finite()) {
        return Err(Error::InvalidState("zero or non-finite state".into()));
    }
    Ok(v.iter().map(|z| z / norm).collect())
}

/// One-shot exact echo; `state = None` selects the ground state.
pub fn loschmidt_exact_small(
    chain: &IsingChain,
    state: Option<&[Complex64]>,
    t: f64,
) -> Result<f64> {
    let spec = match state {
        None => EchoState::Ground,
        Some(v) => EchoState::Vector(v.to_vec()),
    };
    Ok(ExactEcho::new(chain, &spec)?.echo(t))
}

/// Probe-qubit dephasing with coherence factor √L(t).
pub fn ising_dephasing_map(chain: &IsingChain, state: &EchoState) -> Result<DynamicalMap> {
    let chain = *chain;
    let label = format!(
        "ising(J={}, lambda={}, delta={}, N={})",
        chain.j, chain.lambda, chain.delta, chain.n
    );
    let coherence = |l: f64| {
        QubitChannel::dephasing(l.clamp(0.0, 1.0).sqrt()).expect("factor within [0,1]")
    };
    match state {
        EchoState::Ground => Ok(DynamicalMap::new(label, move |t| {
            coherence(loschmidt_ground(&chain, t))
        })),
        other => {
            let exact = ExactEcho::new(&chain, other)?;
            Ok(DynamicalMap::new(label, move |t| coherence(exact.echo(t))))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_validation() {
        assert!(IsingChain::new(1.0, 0.5, 0.1, 7).is_err());
        assert!(IsingChain::new(1.0, 0.5, 0.1, 2).is_err());
        assert!(IsingChain::new(0.0, 0.5, 0.1, 8).is_err());
    }

    #[test]
    fn spectrum_limits() {
        let c = IsingChain::new(1.5, 0.0, 0.1, 8).unwrap();
        for m in ising_spectrum(&c, 0.0) {
            assert!((m.energy - 3.0).abs() < 1e-14);
        }
        for m in ising_spectrum(&c, 1e6) {
            assert!((m.energy / (2.0 * 1.5 * 1e6) - 1.0).abs() < 1e-5);
            assert!(m.angle >= 0.0 && m.angle < 1e-5);
        }
        for m in ising_spectrum(&c, 0.7) {
            assert!((0.0..std::f64::consts::FRAC_PI_2).contains(&m.angle));
        }
    }

    #[test]
    fn echo_trivial_cases() {
        let c = IsingChain::new(1.0, 0.9, 0.1, 40).unwrap();
        assert_eq!(loschmidt_ground(&c, 0.0), 1.0);
        let still = IsingChain::new(1.0, 0.9, 0.0, 40).unwrap();
        for t in [0.5, 3.0, 11.0] {
            assert_eq!(loschmidt_ground(&still, t), 1.0);
        }
        let small = IsingChain::new(1.0, 0.9, 0.1, 6).unwrap();
        assert!((loschmidt_exact_small(&small, None, 0.0).unwrap() - 1.0).abs() < 1e-12);
        let big = IsingChain::new(1.0, 0.9, 0.1, 12).unwrap();
        assert!(matches!(
            loschmidt_exact_small(&big, None, 0.0),
            Err(Error::TooLarge(_))
        ));
    }

    #[test]
    fn ground_energy_matches_free_fermions() {
        for lambda in [0.01, 0.9, 1.8] {
            let c = IsingChain::new(1.0, lambda, 0.1, 8).unwrap();
            let exact = ExactEcho::new(&c, &EchoState::Ground).unwrap();
            let ff: f64 = -ising_spectrum(&c, lambda).iter().map(|m| m.energy).sum::<f64>();
            assert!((exact.ground_energy().unwrap() - ff).abs() < 1e-8);
        }
    }

    #[test]
    fn dephasing_map_uses_root_of_echo() {
        let c = IsingChain::new(1.0, 0.5, 0.2, 20).unwrap();
        let m = ising_dephasing_map(&c, &EchoState::Ground).unwrap();
        assert_eq!(m.at(0.0), QubitChannel::identity());
        let l = loschmidt_ground(&c, 1.7);
        assert_eq!(m.at(1.7).dephasing_factor(), Some(l.sqrt()));
    }
}
