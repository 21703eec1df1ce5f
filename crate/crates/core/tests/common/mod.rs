#![allow(dead_code)]

use alphafid::channels::QubitChannel;
use alphafid::{Alpha, BlochVector, Complex64, ComplexMatrix, DensityMatrix};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn alpha(a: f64) -> Alpha {
    Alpha::new(a).unwrap()
}

pub fn bloch(x: f64, y: f64, z: f64) -> BlochVector {
    BlochVector::new(x, y, z).unwrap()
}

fn direction(rng: &mut impl Rng) -> [f64; 3] {
    let z: f64 = rng.gen_range(-1.0..=1.0);
    let phi: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    let s = (1.0 - z * z).sqrt();
    [s * phi.cos(), s * phi.sin(), z]
}

/// Uniform in the Bloch ball.
pub fn random_bloch(rng: &mut impl Rng) -> BlochVector {
    let r = rng.gen::<f64>().cbrt();
    let d = direction(rng);
    BlochVector::from_array_unchecked([r * d[0], r * d[1], r * d[2]])
}

pub fn random_pure_bloch(rng: &mut impl Rng) -> BlochVector {
    BlochVector::from_array_unchecked(direction(rng))
}

/// Ginibre-distributed density matrix of full rank.
pub fn random_density(dim: usize, rng: &mut impl Rng) -> DensityMatrix {
    let g = ComplexMatrix::from_fn(dim, |_, _| {
        Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    });
    let m = &g * &g.adjoint();
    let tr = m.trace().re;
    DensityMatrix::new(m.scale(Complex64::new(1.0 / tr, 0.0)).hermitian_part()).unwrap()
}

/// exp(−i θ n·σ/2) for a random axis and angle.
pub fn random_unitary(rng: &mut impl Rng) -> ComplexMatrix {
    let n = direction(rng);
    let theta: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    unitary(n, theta)
}

pub fn unitary(n: [f64; 3], theta: f64) -> ComplexMatrix {
    let (s, c) = (0.5 * theta).sin_cos();
    let mut u = ComplexMatrix::identity(2).scale(Complex64::new(c, 0.0));
    for (i, ni) in n.iter().enumerate() {
        u = &u + &ComplexMatrix::pauli(i + 1).scale(Complex64::new(0.0, -s * ni));
    }
    u
}

/// A channel drawn from the constructor families.
pub fn random_channel(rng: &mut impl Rng) -> QubitChannel {
    match rng.gen_range(0..6) {
        0 => QubitChannel::dephasing(rng.gen()).unwrap(),
        1 => {
            let mut p = [rng.gen::<f64>(), rng.gen(), rng.gen(), rng.gen()];
            let s: f64 = p.iter().sum();
            p.iter_mut().for_each(|x| *x /= s);
            QubitChannel::pauli_mix(p).unwrap()
        }
        2 => QubitChannel::noisy_unitary(rng.gen_range(0..4), rng.gen()).unwrap(),
        3 => QubitChannel::from_unitary(&random_unitary(rng)).unwrap(),
        4 => QubitChannel::constant(random_bloch(rng)),
        _ => {
            let inner = QubitChannel::dephasing(rng.gen()).unwrap();
            QubitChannel::from_unitary(&random_unitary(rng)).unwrap().compose(&inner)
        }
    }
}

pub fn bloch_strategy() -> impl Strategy<Value = BlochVector> {
    let dir = (-1.0f64..=1.0, 0.0f64..std::f64::consts::TAU);
    let radius = prop_oneof![3 => 0.0f64..=1.0, 1 => Just(1.0)];
    (dir, radius).prop_map(|((z, phi), r)| {
        let s = (1.0 - z * z).sqrt();
        BlochVector::from_array_unchecked([r * s * phi.cos(), r * s * phi.sin(), r * z])
    })
}

/// Orders at which data processing holds.
pub fn dpi_alpha_strategy() -> impl Strategy<Value = Alpha> {
    (0.5f64..0.99).prop_map(alpha)
}

pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

/// Case count for property suites, without regression files.
pub fn prop_config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

/// exp(iH) for a random Hermitian H on system ⊗ environment.
pub fn random_joint_unitary(dim: usize, rng: &mut impl Rng) -> ComplexMatrix {
    let g = ComplexMatrix::from_fn(dim, |_, _| {
        Complex64::new(rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5))
    });
    let h = (&g + &g.adjoint()).hermitian_part();
    let eig = alphafid::qmath::hermitian_eig(&h).unwrap();
    let c = eig.reconstruct(f64::cos);
    let s = eig.reconstruct(f64::sin);
    &c + &s.scale(Complex64::new(0.0, 1.0))
}

/// tr_E[U(ρ ⊗ ξ)U†] for a qubit system and an environment of any dimension.
pub fn induced_output(u: &ComplexMatrix, rho: &DensityMatrix, xi: &DensityMatrix) -> DensityMatrix {
    let joint = rho.kron(xi).unwrap().conjugate(u).unwrap();
    let de = xi.dim();
    let m = joint.matrix();
    let out = ComplexMatrix::from_fn(2, |a, b| (0..de).map(|k| m[(a * de + k, b * de + k)]).sum());
    DensityMatrix::new(out.hermitian_part()).unwrap()
}
