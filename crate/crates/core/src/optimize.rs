//! Derivative-free minimization over Bloch balls, time-grid infima and
//! bracketed root finding.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qmath::BlochVector;
use crate::tol;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OptimizerConfig {
    /// Number of quasi-random starts, on top of the canonical ones.
    pub starts: usize,
    pub max_iters: usize,
    pub xtol: f64,
    pub ftol: f64,
    pub seed: u64,
    pub include_canonical_starts: bool,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            starts: 32,
            max_iters: 400,
            xtol: 1e-9,
            ftol: 1e-10,
            seed: 0,
            include_canonical_starts: true,
        }
    }
}

impl OptimizerConfig {
    pub fn validate(&self) -> Result<()> {
        if self.starts == 0 {
            return Err(Error::InvalidParameter("starts must be at least 1".into()));
        }
        if !(self.xtol > 0.0 && self.ftol > 0.0) {
            return Err(Error::InvalidParameter("tolerances must be positive".into()));
        }
        Ok(())
    }
}

/// Uniform sampling of [0, t_max] followed by golden-section refinement.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TimeGrid {
    pub t_max: f64,
    pub points: usize,
    pub refine_iters: usize,
}

impl TimeGrid {
    pub fn new(t_max: f64, points: usize) -> Result<Self> {
        if !(t_max > 0.0 && t_max.is_finite()) {
            return Err(Error::InvalidParameter(format!("t_max must be positive, got {t_max}")));
        }
        if points < 2 {
            return Err(Error::InvalidParameter("a time grid needs at least 2 points".into()));
        }
        Ok(Self {
            t_max,
            points,
            refine_iters: 40,
        })
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        let h = self.t_max / (self.points - 1) as f64;
        (0..self.points).map(move |i| i as f64 * h)
    }
}

/// Best point found by [`minimize_ball`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimResult {
    pub value: f64,
    pub argmin_1: BlochVector,
    /// Second state for two-vector problems.
    pub argmin_2: Option<BlochVector>,
    pub evaluations: usize,
    pub converged: bool,
}

impl OptimResult {
    pub fn purity_1(&self) -> f64 {
        self.argmin_1.purity()
    }

    pub fn purity_2(&self) -> Option<f64> {
        self.argmin_2.map(BlochVector::purity)
    }

    /// Whether every argmin state has purity above [`tol::PURE_ARGMIN`].
    pub fn argmin_is_pure(&self) -> bool {
        self.purity_1() > tol::PURE_ARGMIN && self.purity_2().is_none_or(|p| p > tol::PURE_ARGMIN)
    }
}

const AXES: [[f64; 3]; 6] = [
    [1.0, 0.0, 0.0],
    [-1.0, 0.0, 0.0],
    [0.0, 1.0, 0.0],
    [0.0, -1.0, 0.0],
    [0.0, 0.0, 1.0],
    [0.0, 0.0, -1.0],
];

const HALTON_BASES: [u32; 6] = [2, 3, 5, 7, 11, 13];

fn radical_inverse(mut i: u64, base: u32) -> f64 {
    let b = base as f64;
    let mut inv = 1.0 / b;
    let mut out = 0.0;
    while i > 0 {
        out += (i % base as u64) as f64 * inv;
        i /= base as u64;
        inv /= b;
    }
    out
}

/// Maps a point of the unit cube to the unit ball with uniform density.
fn cube_to_ball(u: [f64; 3]) -> [f64; 3] {
    let r = u[0].cbrt();
    let cos_t = 2.0 * u[1] - 1.0;
    let sin_t = (1.0 - cos_t * cos_t).max(0.0).sqrt();
    let phi = std::f64::consts::TAU * u[2];
    [r * sin_t * phi.cos(), r * sin_t * phi.sin(), r * cos_t]
}

fn canonical_starts(k: usize) -> Vec<Vec<f64>> {
    let mut out = Vec::new();
    if k == 1 {
        out.extend(AXES.iter().map(|a| a.to_vec()));
        out.push(vec![0.0; 3]);
    } else {
        for a in &AXES {
            out.push([a.as_slice(), a.as_slice()].concat());
        }
        for a in &AXES {
            for b in &AXES {
                if a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>() == 0.0 {
                    out.push([a.as_slice(), b.as_slice()].concat());
                }
            }
        }
        out.push(vec![0.0; 6]);
    }
    out
}

fn quasi_random_starts(k: usize, count: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shift: Vec<f64> = (0..3 * k).map(|_| rng.gen::<f64>()).collect();
    (1..=count as u64)
        .map(|i| {
            let mut x = Vec::with_capacity(3 * k);
            for v in 0..k {
                let mut u = [0.0; 3];
                for (d, ud) in u.iter_mut().enumerate() {
                    let dim = 3 * v + d;
                    *ud = (radical_inverse(i, HALTON_BASES[dim]) + shift[dim]).fract();
                }
                x.extend_from_slice(&cube_to_ball(u));
            }
            x
        })
        .collect()
}

/// Radially clips each consecutive triple onto the closed unit ball.
fn project(x: &mut [f64]) {
    for v in x.chunks_mut(3) {
        let mut n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if n > 1.0 {
            for c in v.iter_mut() {
                *c /= n;
            }
            n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
            while n > 1.0 {
                for c in v.iter_mut() {
                    *c *= 1.0 - f64::EPSILON;
                }
                n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
            }
        }
    }
}

fn to_bloch(x: &[f64]) -> Vec<BlochVector> {
    x.chunks(3)
        .map(|v| BlochVector::from_array_unchecked([v[0], v[1], v[2]]))
        .collect()
}

struct LocalRun {
    value: f64,
    x: Vec<f64>,
    evaluations: usize,
    converged: bool,
}

fn nelder_mead(
    f: &(dyn Fn(&[BlochVector]) -> f64 + Sync),
    x0: &[f64],
    cfg: &OptimizerConfig,
) -> LocalRun {
    let n = x0.len();
    let mut evaluations = 0;
    let mut eval = |x: &[f64]| {
        evaluations += 1;
        let v = f(&to_bloch(x));
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };

    let step = 0.15;
    let mut pts: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    let mut start = x0.to_vec();
    project(&mut start);
    pts.push(start.clone());
    for i in 0..n {
        let mut p = start.clone();
        p[i] += if p[i] > 0.0 { -step } else { step };
        project(&mut p);
        pts.push(p);
    }
    let mut vals: Vec<f64> = pts.iter().map(|p| eval(p)).collect();

    let mut converged = false;
    for _ in 0..cfg.max_iters {
        let mut order: Vec<usize> = (0..=n).collect();
        order.sort_by(|&a, &b| vals[a].total_cmp(&vals[b]));
        pts = order.iter().map(|&i| pts[i].clone()).collect();
        vals = order.iter().map(|&i| vals[i]).collect();

        let spread = vals[n] - vals[0];
        let size = pts[1..]
            .iter()
            .map(|p| p.iter().zip(&pts[0]).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
            .fold(0.0, f64::max);
        if vals[0].is_finite() && spread.abs() <= cfg.ftol && size <= cfg.xtol {
            converged = true;
            break;
        }
        if !vals[0].is_finite() {
            break;
        }

        let mut centroid = vec![0.0; n];
        for p in &pts[..n] {
            for (c, v) in centroid.iter_mut().zip(p) {
                *c += v / n as f64;
            }
        }
        let along = |t: f64| {
            let mut p: Vec<f64> = centroid
                .iter()
                .zip(&pts[n])
                .map(|(c, w)| c + t * (c - w))
                .collect();
            project(&mut p);
            p
        };

        let xr = along(1.0);
        let fr = eval(&xr);
        if fr < vals[0] {
            let xe = along(2.0);
            let fe = eval(&xe);
            if fe < fr {
                pts[n] = xe;
                vals[n] = fe;
            } else {
                pts[n] = xr;
                vals[n] = fr;
            }
            continue;
        }
        if fr < vals[n - 1] {
            pts[n] = xr;
            vals[n] = fr;
            continue;
        }
        let (xc, fc_ok) = if fr < vals[n] {
            let xc = along(0.5);
            let fc = eval(&xc);
            (xc.clone(), (fc <= fr).then_some(fc))
        } else {
            let xc = along(-0.5);
            let fc = eval(&xc);
            (xc.clone(), (fc < vals[n]).then_some(fc))
        };
        if let Some(fc) = fc_ok {
            pts[n] = xc;
            vals[n] = fc;
            continue;
        }
        let best = pts[0].clone();
        for i in 1..=n {
            let mut p: Vec<f64> = best
                .iter()
                .zip(&pts[i])
                .map(|(b, x)| b + 0.5 * (x - b))
                .collect();
            project(&mut p);
            vals[i] = eval(&p);
            pts[i] = p;
        }
    }

    let (best, _) = vals
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .expect("simplex is non-empty");
    LocalRun {
        value: vals[best],
        x: pts[best].clone(),
        evaluations,
        converged,
    }
}

/// Multi-start Nelder–Mead over `k` concatenated Bloch vectors, with every
/// iterate radially clipped onto the closed ball. Infeasible points should
/// evaluate to +∞ (NaN is treated the same way).
pub fn minimize_ball(
    f: &(dyn Fn(&[BlochVector]) -> f64 + Sync),
    k: usize,
    cfg: &OptimizerConfig,
) -> Result<OptimResult> {
    if !(k == 1 || k == 2) {
        return Err(Error::InvalidParameter(format!("k must be 1 or 2, got {k}")));
    }
    cfg.validate()?;
    let mut starts = Vec::new();
    if cfg.include_canonical_starts {
        starts.extend(canonical_starts(k));
    }
    starts.extend(quasi_random_starts(k, cfg.starts, cfg.seed));

    let runs: Vec<LocalRun> = starts.par_iter().map(|x0| nelder_mead(f, x0, cfg)).collect();
    let evaluations = runs.iter().map(|r| r.evaluations).sum();
    let mut best: Option<&LocalRun> = None;
    for r in &runs {
        if r.value.is_finite() && best.as_ref().is_none_or(|b| r.value < b.value) {
            best = Some(r);
        }
    }
    let best = best.ok_or(Error::Infeasible)?;
    let states = to_bloch(&best.x);
    Ok(OptimResult {
        value: best.value,
        argmin_1: states[0],
        argmin_2: states.get(1).copied(),
        evaluations,
        converged: best.converged,
    })
}

/// Approximate minimum of `g` on [0, t_max]: coarse scan, then golden-section
/// search between the neighbours of the best sample.
pub fn infimum_over_time(mut g: impl FnMut(f64) -> f64, grid: &TimeGrid) -> (f64, f64) {
    let h = grid.t_max / (grid.points - 1) as f64;
    let mut best_i = 0;
    let mut best_v = f64::INFINITY;
    for i in 0..grid.points {
        let v = g(i as f64 * h);
        if v < best_v {
            best_v = v;
            best_i = i;
        }
    }
    let mut best_t = best_i as f64 * h;
    let mut lo = (best_t - h).max(0.0);
    let mut hi = (best_t + h).min(grid.t_max);
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = hi - inv_phi * (hi - lo);
    let mut d = lo + inv_phi * (hi - lo);
    let mut fc = g(c);
    let mut fd = g(d);
    for _ in 0..grid.refine_iters {
        if fc < fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi * (hi - lo);
            fc = g(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi * (hi - lo);
            fd = g(d);
        }
    }
    for (t, v) in [(c, fc), (d, fd)] {
        if v < best_v {
            best_v = v;
            best_t = t;
        }
    }
    (best_t, best_v)
}

/// Bisection for a sign change of `h` on [lo, hi], to |hi − lo| ≤ tol.
pub fn find_root(mut h: impl FnMut(f64) -> f64, lo: f64, hi: f64, tol: f64) -> Result<f64> {
    let (mut a, mut b) = (lo.min(hi), lo.max(hi));
    let mut fa = h(a);
    let fb = h(b);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa * fb > 0.0 || fa.is_nan() || fb.is_nan() {
        return Err(Error::NotBracketed { lo, hi });
    }
    while b - a > tol {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let fm = h(m);
        if fm == 0.0 {
            return Ok(m);
        }
        if (fm < 0.0) == (fa < 0.0) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    Ok(0.5 * (a + b))
}
