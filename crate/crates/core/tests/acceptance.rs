//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so every line is printed even when an earlier criterion fails.

mod common;

use std::f64::consts::TAU;
use std::time::{Duration, Instant};

use alphafid::channels::{channel_alpha_fidelity, orthogonalizing_state, QubitChannel};
use alphafid::fidelity::{
    alpha_fidelity_general, alpha_fidelity_qubit, renyi_divergence, tilde_fidelity,
};
use alphafid::models::{
    dephasing_map, dephasing_pair_alpha_fidelity, jc_map, loschmidt_ground,
    thermal_renyi_divergence, EchoState, ExactEcho, Mode,
};
use alphafid::protocols::{
    dimension_cut, exclusion_rhs_curve, exclusion_verdict, frequency_crossover,
    hillery_reference_thresholds, limiting_temperature, loschmidt_panel, pauli_dimension_bound,
    thermalized_probe_bounds, thermometry_bounds,
};
use alphafid::{
    Alpha, BlochVector, Complex64, IsingChain, OptimizerConfig, OscillatorBath,
    ThermalState, TimeGrid,
};
use common::*;
use rand::Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn oracle_equivalence() -> Outcome {
    let mut g = rng(1);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let (r1, r2) = (random_bloch(&mut g), random_bloch(&mut g));
        for a in [0.5, 0.6, 0.75, 0.9] {
            let q = alpha_fidelity_qubit(r1, r2, alpha(a));
            let s = alpha_fidelity_general(&r1.to_density(), &r2.to_density(), alpha(a)).unwrap();
            worst = worst.max((q - s).abs());
        }
    }
    ensure(worst <= 1e-10, || format!("closed form vs spectral differ by {worst:e}"))?;
    let mut worst_pure: f64 = 0.0;
    for _ in 0..1000 {
        let (p1, p2) = (random_pure_bloch(&mut g), random_pure_bloch(&mut g));
        let overlap = (0.5 * (1.0 + p1.dot(p2))).sqrt();
        worst_pure = worst_pure
            .max((alpha_fidelity_qubit(p1, p2, alpha(0.5)) - overlap).abs())
            .max((alpha_fidelity_general(&p1.to_density(), &p2.to_density(), alpha(0.5)).unwrap() - overlap).abs());
    }
    ensure(worst_pure <= 1e-12, || format!("pure-state overlap off by {worst_pure:e}"))?;
    Ok(format!("max deviation {worst:.1e}, pure overlap {worst_pure:.1e}"))
}

fn property_suites() -> Outcome {
    const N: usize = 500;
    const SLACK: f64 = 1e-9;
    let mut g = rng(2);
    let dpi = |g: &mut rand_chacha::ChaCha8Rng| alpha(g.gen_range(0.5..0.99));
    let mut violations: Vec<String> = Vec::new();
    let mut count = |name: &str, bad: usize| {
        if bad > 0 {
            violations.push(format!("{name}: {bad}"));
        }
    };

    // S1: F = 1 exactly on equal states, and near-unit fidelity forces closeness
    let mut bad = 0;
    for _ in 0..N {
        let (r, s) = (random_bloch(&mut g), random_bloch(&mut g));
        let a = dpi(&mut g);
        if (alpha_fidelity_qubit(r, r, a) - 1.0).abs() > SLACK {
            bad += 1;
        }
        if alpha_fidelity_qubit(r, s, a) > 1.0 - 1e-8
            && r.to_density().trace_distance(&s.to_density()).unwrap() >= 1e-4
        {
            bad += 1;
        }
    }
    count("S1", bad);

    // S2: additivity on tensor products
    let mut bad = 0;
    for _ in 0..N {
        let (r1, r2, x1, x2) = (random_density(2, &mut g), random_density(2, &mut g), random_density(2, &mut g), random_density(2, &mut g));
        let a = dpi(&mut g);
        let joint = renyi_divergence(&r1.kron(&x1).unwrap(), &r2.kron(&x2).unwrap(), a).unwrap().as_f64();
        let sum = renyi_divergence(&r1, &r2, a).unwrap().as_f64() + renyi_divergence(&x1, &x2, a).unwrap().as_f64();
        if (joint - sum).abs() > SLACK {
            bad += 1;
        }
    }
    count("S2", bad);

    // S3: unitary invariance
    let mut bad = 0;
    for _ in 0..N {
        let (r, s) = (random_bloch(&mut g), random_bloch(&mut g));
        let a = alpha(g.gen_range(0.05..0.99));
        let u = QubitChannel::from_unitary(&random_unitary(&mut g)).unwrap();
        if (alpha_fidelity_qubit(u.apply(r), u.apply(s), a) - alpha_fidelity_qubit(r, s, a)).abs() > 1e-10 {
            bad += 1;
        }
    }
    count("S3", bad);

    // S4: data processing
    let mut bad = 0;
    for _ in 0..N {
        let (r, s) = (random_bloch(&mut g), random_bloch(&mut g));
        let a = dpi(&mut g);
        let e = random_channel(&mut g);
        if alpha_fidelity_qubit(r, s, a) > alpha_fidelity_qubit(e.apply(r), e.apply(s), a) + SLACK {
            bad += 1;
        }
    }
    count("S4", bad);

    // joint concavity
    let mut bad = 0;
    for _ in 0..N {
        let v: Vec<BlochVector> = (0..4).map(|_| random_bloch(&mut g)).collect();
        let l: f64 = g.gen();
        let a = dpi(&mut g);
        let mix = |x: BlochVector, y: BlochVector| {
            let (x, y) = (x.to_array(), y.to_array());
            BlochVector::from_array_unchecked([0, 1, 2].map(|i| l * x[i] + (1.0 - l) * y[i]))
        };
        let joint = alpha_fidelity_qubit(mix(v[0], v[2]), mix(v[1], v[3]), a);
        let sep = l * alpha_fidelity_qubit(v[0], v[1], a) + (1.0 - l) * alpha_fidelity_qubit(v[2], v[3], a);
        if joint < sep - SLACK {
            bad += 1;
        }
    }
    count("joint concavity", bad);

    // α-monotonicity of F_α^{1/(1−α)} and the Araki–Lieb–Thirring ordering
    let (mut bad_mono, mut bad_alt) = (0, 0);
    for _ in 0..N {
        let (r, s) = (random_bloch(&mut g), random_bloch(&mut g));
        let mut prev = f64::INFINITY;
        for i in 0..10 {
            let a = 0.5 + 0.05 * i as f64;
            let e = 1.0 / (1.0 - a);
            let v = alpha_fidelity_qubit(r, s, alpha(a)).powf(e);
            if v > prev + SLACK {
                bad_mono += 1;
            }
            prev = v;
            if v > alpha_fidelity_qubit(s, r, alpha(1.0 - a)).powf(e) + SLACK {
                bad_alt += 1;
            }
        }
    }
    count("α-monotonicity", bad_mono);
    count("ALT", bad_alt);

    // F̃ ≤ F, with equality for commuting pairs
    let mut bad = 0;
    for _ in 0..N {
        let (r, s) = (random_density(2, &mut g), random_density(2, &mut g));
        let a = alpha(g.gen_range(0.05..0.99));
        if tilde_fidelity(&r, &s, a).unwrap() > alpha_fidelity_general(&r, &s, a).unwrap() + SLACK {
            bad += 1;
        }
        let (z1, z2) = (bloch(0.0, 0.0, g.gen_range(-1.0..1.0)), bloch(0.0, 0.0, g.gen_range(-1.0..1.0)));
        let t = tilde_fidelity(&z1.to_density(), &z2.to_density(), a).unwrap();
        if (t - alpha_fidelity_qubit(z1, z2, a)).abs() > SLACK {
            bad += 1;
        }
    }
    count("tilde ordering", bad);

    if violations.is_empty() {
        Ok(format!("{N} instances per suite, no violations"))
    } else {
        Err(violations.join(", "))
    }
}

fn programming_thresholds() -> Outcome {
    let c4 = dimension_cut(4).unwrap();
    let c3 = dimension_cut(3).unwrap();
    ensure((c4 - (3.0 - 6f64.sqrt()) / 3.0).abs() <= 1e-12, || format!("d=4 cut {c4}"))?;
    ensure((c3 - (2.0 - 2f64.sqrt()) / 2.0).abs() <= 1e-12, || format!("d=3 cut {c3}"))?;
    // ε = 1 is excluded: full depolarization makes every program identical
    for i in 0..1000 {
        let eps = i as f64 / 1000.0;
        let expected = if eps < c4 { 4 } else if eps < c3 { 3 } else { 2 };
        let got = pauli_dimension_bound(eps).unwrap().min_dim;
        ensure(got == expected, || format!("ε={eps}: dimension {got}, expected {expected}"))?;
    }
    let [r4, r3] = hillery_reference_thresholds();
    ensure((r4 - 1.0 / (3.0 * (13.0 + 2.0 * 42f64.sqrt()))).abs() < 1e-15, || "first reference constant".into())?;
    ensure((r3 - 1.0 / (2.0 * (9.0 + 4.0 * 5f64.sqrt()))).abs() < 1e-15, || "second reference constant".into())?;
    ensure(r4 < c4 && r3 < c3, || format!("reference cuts {r4}, {r3} not below {c4}, {c3}"))?;
    Ok(format!("cuts {c4:.12}, {c3:.12}; references {r4:.6}, {r3:.6}"))
}

fn unitary_orthogonality() -> Outcome {
    let r = channel_alpha_fidelity(
        &QubitChannel::identity(),
        &QubitChannel::pauli(1).unwrap(),
        alpha(0.5),
        &OptimizerConfig::default(),
    )
    .unwrap();
    ensure(r.value <= 1e-3, || format!("F(id, σ₁) = {}", r.value))?;
    let mut g = rng(4);
    let inner = |a: &[Complex64], b: &[Complex64]| -> Complex64 { a.iter().zip(b).map(|(x, y)| x.conj() * y).sum() };
    let mut n = 0;
    while n < 100 {
        let u = random_unitary(&mut g);
        let raw: Vec<Complex64> = (0..2).map(|_| Complex64::new(g.gen_range(-1.0..1.0), g.gen_range(-1.0..1.0))).collect();
        let norm = inner(&raw, &raw).re.sqrt();
        let phi: Vec<Complex64> = raw.iter().map(|z| z / norm).collect();
        if inner(&phi, &u.mul_vec(&phi)).norm() >= 1.0 - 1e-6 {
            continue;
        }
        let phi2 = orthogonalizing_state(&u, &phi).map_err(|e| e.to_string())?;
        let orth = inner(&phi, &u.mul_vec(&phi2)).norm();
        ensure(orth <= 1e-10, || format!("⟨φ₁|Uφ₂⟩ = {orth:e}"))?;
        ensure(inner(&phi, &phi2).norm() > 1e-10, || "⟨φ₁|φ₂⟩ vanished".into())?;
        n += 1;
    }
    Ok(format!("F(id, σ₁) = {:.1e}; 100 orthogonalizing states verified", r.value))
}

fn dephasing_closed_form() -> Outcome {
    let cfg = OptimizerConfig::default();
    let mut worst: f64 = 0.0;
    let mut worst_z: f64 = 0.0;
    let mut worst_purity: f64 = 1.0;
    for g1 in [0.05, 0.25, 0.45, 0.65, 0.85] {
        for g2 in [0.15, 0.35, 0.55, 0.75, 0.95] {
            for a in [0.6, 0.7, 0.8, 0.9] {
                let e1 = QubitChannel::dephasing(g1).unwrap();
                let e2 = QubitChannel::dephasing(g2).unwrap();
                let r = channel_alpha_fidelity(&e1, &e2, alpha(a), &cfg).unwrap();
                let exact = dephasing_pair_alpha_fidelity(g1, g2, alpha(a)).unwrap();
                worst = worst.max((r.value - exact).abs());
                let v2 = r.argmin_2.unwrap();
                worst_z = worst_z.max(r.argmin_1.z.abs()).max(v2.z.abs());
                worst_purity = worst_purity.min(r.purity_1()).min(r.purity_2().unwrap());
            }
        }
    }
    ensure(worst <= 2e-3, || format!("optimizer off by {worst:e}"))?;
    ensure(worst_purity > 1.0 - 1e-6, || format!("argmin purity {worst_purity}"))?;
    ensure(worst_z < 1e-3, || format!("argmin |z| = {worst_z:e}"))?;
    Ok(format!("100 grid points: error ≤ {worst:.1e}, purity ≥ {worst_purity:.9}, |z| ≤ {worst_z:.1e}"))
}

fn frequency_exclusion() -> Outcome {
    let bath = OscillatorBath::single(1.0, 1.0).unwrap();
    let (t1, t2) = (0.25, 0.75);
    let m1 = dephasing_map(&bath, t1).unwrap();
    let m2 = dephasing_map(&bath, t2).unwrap();
    let alphas: Vec<Alpha> = (0..16).map(|i| alpha(0.05 + 0.05 * i as f64)).collect();
    let grid = TimeGrid::new(TAU, 401).unwrap();
    let rhs = exclusion_rhs_curve(&m1, &m2, &alphas, &grid, &OptimizerConfig::default()).map_err(|e| e.to_string())?;
    let scan: Vec<f64> = (0..41).map(|i| 1.0 + 0.1 * i as f64).collect();
    let cross = frequency_crossover(1.0 / t1, 1.0 / t2, &scan, &alphas, &rhs)
        .map_err(|e| e.to_string())?
        .ok_or("no crossover in [1, 5]")?;
    ensure((cross - 3.1).abs() <= 0.05, || format!("crossover {cross}"))?;
    let at = |w: f64| exclusion_verdict(w, 1.0 / t1, 1.0 / t2, &alphas, &rhs).unwrap().compatible;
    ensure(at(1.0), || "true frequency excluded".into())?;
    ensure(at(3.0), || "ω′ = 3 excluded".into())?;
    ensure(!at(3.25), || "ω′ = 3.25 compatible".into())?;
    Ok(format!("crossover ω′/ω = {cross:.4}; 3.0 compatible, 3.25 excluded"))
}

fn thermometry() -> Outcome {
    let t_star = limiting_temperature();
    ensure((1.0..=1.1).contains(&t_star), || format!("T* = {t_star}"))?;
    let map0 = jc_map(1.0, 1.0, 0.0, 10).unwrap();
    let alphas: Vec<Alpha> = (1..=19).map(|i| alpha(0.05 * i as f64)).collect();
    let grid = TimeGrid::new(30.0, 601).unwrap();
    let cfg = OptimizerConfig { starts: 8, ..OptimizerConfig::default() };
    let mut checked_upper = 0;
    for i in 1..=20 {
        let temp = 0.075 * i as f64;
        let map_t = jc_map(1.0, 1.0, temp, 10).unwrap();
        let b = thermometry_bounds(&map0, &map_t, &alphas, &grid, &cfg, Some(temp)).map_err(|e| e.to_string())?;
        ensure(b.lower <= temp + 1e-9, || format!("T={temp}: lower {}", b.lower))?;
        if b.upper_valid {
            let up = b.upper.ok_or_else(|| format!("T={temp}: no upper bound"))?;
            ensure(up >= temp - 1e-9, || format!("T={temp}: upper {up}"))?;
            checked_upper += 1;
        }
    }
    let mut k = 1;
    while k as f64 * 1e-3 <= t_star {
        let temp = k as f64 * 1e-3;
        let b = thermalized_probe_bounds(temp).unwrap().bounds;
        ensure(b.lower <= temp + 1e-12, || format!("thermalized T={temp}: lower {}", b.lower))?;
        let up = b.upper.unwrap_or(f64::INFINITY);
        ensure(up >= temp - 1e-12, || format!("thermalized T={temp}: upper {up}"))?;
        k += 1;
    }
    Ok(format!("T* = {t_star:.6}; 20 temperatures, {checked_upper} with valid upper bound; thermalized sandwich on {} points", k - 1))
}

fn loschmidt_oracle() -> Outcome {
    let mut worst: f64 = 0.0;
    for lambda in [0.01, 0.9, 1.8] {
        let c = IsingChain::new(1.0, lambda, 0.1, 8).unwrap();
        let exact = ExactEcho::new(&c, &EchoState::Ground).map_err(|e| e.to_string())?;
        for i in 0..200 {
            let t = 0.05 * i as f64;
            worst = worst.max((exact.echo(t) - loschmidt_ground(&c, t)).abs());
        }
    }
    ensure(worst <= 1e-8, || format!("free-fermion echo off by {worst:e}"))?;
    Ok(format!("N=8, 3 fields × 200 times: max deviation {worst:.1e}"))
}

fn revival_detection() -> Outcome {
    let times: Vec<f64> = (0..501).map(|i| 0.01 * i as f64).collect();
    let panels = [("b", 0.01, 0.98, true), ("c", 0.01, 0.966675, false), ("f", 1.8, 0.999, true), ("g", 1.8, 0.99761, false)];
    let mut report = Vec::new();
    let mut wrong = Vec::new();
    for (name, lambda, f, expected) in panels {
        let c = IsingChain::new(1.0, lambda, 0.1, 4000).unwrap();
        let p = loschmidt_panel(&c, f, &times).map_err(|e| e.to_string())?;
        report.push(format!("({name}) {}", p.verdict.revival));
        if p.verdict.revival != expected {
            wrong.push(format!(
                "panel ({name}) λ={lambda}, F={f}: revival={} (minimum level {:?}, crossing at {:?})",
                p.verdict.revival,
                p.verdict.minimum_level,
                p.verdict.crossing_index.map(|i| times[i])
            ));
        }
    }
    if wrong.is_empty() {
        Ok(report.join(", "))
    } else {
        Err(wrong.join("; "))
    }
}

/// F_α(ρ₁,ρ₂)·F_α(ξ₁,ξ₂) ≤ F_α(E₁ρ₁, E₂ρ₂) on dynamics generated by models.
fn main_inequality() -> Outcome {
    let mut g = rng(10);
    let mut checks = 0usize;
    let mut worst = f64::NEG_INFINITY;
    let mut record = |lhs: f64, rhs: f64| {
        worst = worst.max(lhs - rhs);
        checks += 1;
    };
    let alphas = [0.5, 0.6, 0.7, 0.8, 0.9, 0.97];

    // spin-boson dephasing, two modes, thermal environments
    let bath = OscillatorBath::new(vec![
        Mode { omega: 1.0, coupling: Complex64::new(0.7, 0.0) },
        Mode { omega: 1.7, coupling: Complex64::new(0.3, 0.2) },
    ])
    .unwrap();
    for _ in 0..40 {
        let (t1, t2) = (g.gen_range(0.05..2.0), g.gen_range(0.05..2.0));
        let (m1, m2) = (dephasing_map(&bath, t1).unwrap(), dephasing_map(&bath, t2).unwrap());
        for _ in 0..10 {
            let t = g.gen_range(0.0..15.0);
            let (e1, e2) = (m1.at(t), m2.at(t));
            let (r1, r2) = (random_bloch(&mut g), random_bloch(&mut g));
            for a in alphas {
                let s = thermal_renyi_divergence(&bath, ThermalState::from_temperature(t1).unwrap(), ThermalState::from_temperature(t2).unwrap(), alpha(a)).unwrap();
                let fxi = ((a - 1.0) * s).exp();
                record(alpha_fidelity_qubit(r1, r2, alpha(a)) * fxi, alpha_fidelity_qubit(e1.apply(r1), e2.apply(r2), alpha(a)));
            }
        }
    }

    // Jaynes–Cummings with truncated thermal fields (ground state included)
    let weights = |temp: f64| -> Vec<f64> {
        if temp == 0.0 {
            let mut w = vec![0.0; 11];
            w[0] = 1.0;
            return w;
        }
        let q = (-1.0 / temp).exp();
        let raw: Vec<f64> = (0..=10).map(|n| q.powi(n)).collect();
        let z: f64 = raw.iter().sum();
        raw.iter().map(|w| w / z).collect()
    };
    for _ in 0..60 {
        let t1 = if g.gen_bool(0.2) { 0.0 } else { g.gen_range(0.05..2.0) };
        let t2 = g.gen_range(0.05..2.0);
        let (m1, m2) = (jc_map(1.0, 1.0, t1, 10).unwrap(), jc_map(1.0, 1.0, t2, 10).unwrap());
        let (w1, w2) = (weights(t1), weights(t2));
        for _ in 0..10 {
            let t = g.gen_range(0.0..30.0);
            let (e1, e2) = (m1.at(t), m2.at(t));
            let (r1, r2) = (random_bloch(&mut g), random_bloch(&mut g));
            for a in alphas {
                let fxi: f64 = w1.iter().zip(&w2).map(|(p, q)| p.powf(a) * q.powf(1.0 - a)).sum();
                record(alpha_fidelity_qubit(r1, r2, alpha(a)) * fxi, alpha_fidelity_qubit(e1.apply(r1), e2.apply(r2), alpha(a)));
            }
        }
    }

    // Ising chain, N = 8, pure environment states
    for lambda in [0.3, 1.2] {
        let c = IsingChain::new(1.0, lambda, 0.2, 8).unwrap();
        let ground = ExactEcho::new(&c, &EchoState::Ground).unwrap();
        let mut states = vec![ground.state().to_vec()];
        for _ in 0..4 {
            // ground state plus a random admixture, so overlaps stay sizeable
            let mut v = ground.state().to_vec();
            for z in v.iter_mut() {
                *z += Complex64::new(g.gen_range(-0.08..0.08), g.gen_range(-0.08..0.08));
            }
            let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            states.push(v.iter().map(|z| z / n).collect());
        }
        let echoes: Vec<ExactEcho> = states.iter().map(|s| ground.with_state(s).unwrap()).collect();
        for i in 0..states.len() {
            for j in 0..states.len() {
                if i == j {
                    continue;
                }
                let ov: Complex64 = states[i].iter().zip(&states[j]).map(|(x, y)| x.conj() * y).sum();
                for _ in 0..10 {
                    let t = g.gen_range(0.0..10.0);
                    let e1 = QubitChannel::dephasing_complex(echoes[i].amplitude(t)).unwrap();
                    let e2 = QubitChannel::dephasing_complex(echoes[j].amplitude(t)).unwrap();
                    let (r1, r2) = (random_bloch(&mut g), random_bloch(&mut g));
                    for a in alphas {
                        let fxi = ov.norm_sqr().powf(a);
                        record(alpha_fidelity_qubit(r1, r2, alpha(a)) * fxi, alpha_fidelity_qubit(e1.apply(r1), e2.apply(r2), alpha(a)));
                    }
                }
            }
        }
    }

    // generic processors: random joint unitary on system ⊗ qubit environment
    for _ in 0..80 {
        let u = random_joint_unitary(4, &mut g);
        let (x1, x2) = (random_density(2, &mut g), random_density(2, &mut g));
        for _ in 0..5 {
            let (r1, r2) = (random_density(2, &mut g), random_density(2, &mut g));
            let (o1, o2) = (induced_output(&u, &r1, &x1), induced_output(&u, &r2, &x2));
            for a in alphas {
                let lhs = alpha_fidelity_general(&r1, &r2, alpha(a)).unwrap() * alpha_fidelity_general(&x1, &x2, alpha(a)).unwrap();
                record(lhs, alpha_fidelity_general(&o1, &o2, alpha(a)).unwrap());
            }
        }
    }

    ensure(checks >= 10_000, || format!("only {checks} checks"))?;
    ensure(worst <= 1e-9, || format!("violation of {worst:e} among {checks} checks"))?;
    Ok(format!("{checks} checks, max lhs − rhs = {worst:.2e}"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, Duration); 10] = [
        ("1 oracle equivalence", oracle_equivalence, Duration::from_secs(5)),
        ("2 property suites", property_suites, Duration::from_secs(30)),
        ("3 programming thresholds", programming_thresholds, Duration::from_secs(1)),
        ("4 unitary orthogonality", unitary_orthogonality, Duration::from_secs(10)),
        ("5 dephasing closed form", dephasing_closed_form, Duration::from_secs(120)),
        ("6 frequency exclusion", frequency_exclusion, Duration::from_secs(60)),
        ("7 thermometry", thermometry, Duration::from_secs(300)),
        ("8 Loschmidt oracle", loschmidt_oracle, Duration::from_secs(60)),
        ("9 revival detection", revival_detection, Duration::from_secs(300)),
        ("10 main inequality", main_inequality, Duration::from_secs(120)),
    ];
    let mut failed = 0;
    for (name, run, budget) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(msg) if elapsed > budget => Err(format!("{msg}; took {elapsed:.1?}, budget {budget:?}")),
            other => other,
        };
        match outcome {
            Ok(msg) => println!("PASS  criterion {name}: {msg} [{elapsed:.2?}]"),
            Err(msg) => {
                failed += 1;
                println!("FAIL  criterion {name}: {msg} [{elapsed:.2?}]");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
