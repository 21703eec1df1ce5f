//! Small dense complex linear algebra and qubit state representations.

use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tol;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Square complex matrix stored row-major, dimension at most [`tol::MAX_DIM`].
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn new(dim: usize, data: Vec<Complex64>) -> Result<Self> {
        check_dim(dim)?;
        if data.len() != dim * dim {
            return Err(Error::Dimension(format!(
                "{} entries for dimension {dim}",
                data.len()
            )));
        }
        Ok(Self { dim, data })
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        assert!((1..=tol::MAX_DIM).contains(&dim), "dimension {dim} out of range");
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        Self { dim, data }
    }

    pub fn zeros(dim: usize) -> Self {
        Self::from_fn(dim, |_, _| ZERO)
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |i, j| if i == j { ONE } else { ZERO })
    }

    pub fn from_real_diag(diag: &[f64]) -> Self {
        Self::from_fn(diag.len(), |i, j| {
            if i == j {
                Complex64::new(diag[i], 0.0)
            } else {
                ZERO
            }
        })
    }

    /// Rank-one projector |v⟩⟨v|, without normalizing `v`.
    pub fn outer(v: &[Complex64]) -> Self {
        Self::from_fn(v.len(), |i, j| v[i] * v[j].conj())
    }

    /// Pauli matrix: 0 is the identity, 1..=3 are σ₁, σ₂, σ₃.
    pub fn pauli(i: usize) -> Self {
        let rows = match i {
            0 => [ONE, ZERO, ZERO, ONE],
            1 => [ZERO, ONE, ONE, ZERO],
            2 => [ZERO, -I, I, ZERO],
            3 => [ONE, ZERO, ZERO, -ONE],
            _ => panic!("Pauli index {i} out of range"),
        };
        Self {
            dim: 2,
            data: rows.to_vec(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|&z| z * s).collect(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entry of |M − M†|.
    pub fn hermiticity_error(&self) -> f64 {
        let mut err: f64 = 0.0;
        for i in 0..self.dim {
            for j in i..self.dim {
                err = err.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        err
    }

    /// Symmetrized copy ½(M + M†) with an exactly real diagonal.
    pub fn hermitian_part(&self) -> Self {
        Self::from_fn(self.dim, |i, j| 0.5 * (self[(i, j)] + self[(j, i)].conj()))
    }

    pub fn kron(&self, other: &Self) -> Self {
        let d = other.dim;
        Self::from_fn(self.dim * d, |i, j| {
            self[(i / d, j / d)] * other[(i % d, j % d)]
        })
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.dim);
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self[(i, j)] * v[j]).sum())
            .collect()
    }

    fn same_dim(&self, other: &Self) {
        assert_eq!(self.dim, other.dim, "matrix dimension mismatch");
    }
}

fn check_dim(dim: usize) -> Result<()> {
    if dim == 0 {
        return Err(Error::Dimension("dimension must be positive".into()));
    }
    if dim > tol::MAX_DIM {
        return Err(Error::TooLarge(format!(
            "dimension {dim} exceeds {}",
            tol::MAX_DIM
        )));
    }
    Ok(())
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.same_dim(rhs);
        let n = self.dim;
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        out
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.same_dim(rhs);
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.same_dim(rhs);
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

/// Eigendecomposition of a Hermitian matrix, eigenvalues in descending order
/// and eigenvectors as the matching columns of `vectors`.
#[derive(Debug, Clone)]
pub struct Eigen {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl Eigen {
    /// V f(Λ) V†.
    pub fn reconstruct(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.vectors.dim;
        let fv: Vec<f64> = self.values.iter().map(|&l| f(l)).collect();
        ComplexMatrix::from_fn(n, |i, j| {
            let mut s = ZERO;
            for k in 0..n {
                if fv[k] != 0.0 {
                    s += self.vectors[(i, k)] * self.vectors[(j, k)].conj() * fv[k];
                }
            }
            s
        })
    }
}

/// Cyclic Jacobi eigendecomposition of a Hermitian matrix.
pub fn hermitian_eig(m: &ComplexMatrix) -> Result<Eigen> {
    let herr = m.hermiticity_error();
    if herr > tol::EIG_HERMITIAN * m.max_abs().max(1.0) {
        return Err(Error::NotHermitian(herr));
    }
    let n = m.dim;
    let mut a = m.hermitian_part();
    let mut v = ComplexMatrix::identity(n);
    let scale = a.max_abs().max(f64::MIN_POSITIVE);

    for _sweep in 0..100 {
        let mut off = 0.0;
        for p in 0..n {
            for q in p + 1..n {
                off += a[(p, q)].norm_sqr();
            }
        }
        if off.sqrt() <= 1e-17 * scale {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    order.sort_by(|&i, &j| diag[j].total_cmp(&diag[i]));
    let values = order.iter().map(|&i| diag[i]).collect();
    let vectors = ComplexMatrix::from_fn(n, |i, j| v[(i, order[j])]);
    Ok(Eigen { values, vectors })
}

/// One Jacobi step annihilating a[p][q]: A ← J†AJ, V ← VJ.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let abs = apq.norm();
    if abs == 0.0 {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let phase = apq / abs;
    let theta = (aqq - app) / (2.0 * abs);
    let t = if theta == 0.0 {
        1.0
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    // J = diag(1, e^{-iφ}) · [[c, s], [−s, c]]
    let jpp = Complex64::new(c, 0.0);
    let jpq = Complex64::new(s, 0.0);
    let jqp = -phase.conj() * s;
    let jqq = phase.conj() * c;
    let n = a.dim;
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * jpp + akq * jqp;
        a[(k, q)] = akp * jpq + akq * jqq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = jpp.conj() * apk + jqp.conj() * aqk;
        a[(q, k)] = jpq.conj() * apk + jqq.conj() * aqk;
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * jpp + vkq * jqp;
        v[(k, q)] = vkp * jpq + vkq * jqq;
    }
}

/// Spectral power of a PSD matrix with 0^p = 0 for every p, so negative
/// powers act as pseudo-inverses on the support.
/// Singular values of a square matrix by one-sided (Hestenes) Jacobi, in
/// descending order. Column rotations keep small singular values accurate
/// relative to their size when the matrix is a scaled unitary, which a
/// Gram-matrix eigensolver cannot do.
pub fn singular_values(m: &ComplexMatrix) -> Vec<f64> {
    let n = m.dim;
    let mut cols: Vec<Vec<Complex64>> = (0..n).map(|j| (0..n).map(|i| m[(i, j)]).collect()).collect();
    for _sweep in 0..60 {
        let mut rotated = false;
        for i in 0..n {
            for j in i + 1..n {
                let a: f64 = cols[i].iter().map(|z| z.norm_sqr()).sum();
                let b: f64 = cols[j].iter().map(|z| z.norm_sqr()).sum();
                let g: Complex64 = cols[i].iter().zip(&cols[j]).map(|(x, y)| x.conj() * y).sum();
                let gabs = g.norm();
                if gabs <= f64::EPSILON * (a * b).sqrt() || gabs == 0.0 {
                    continue;
                }
                rotated = true;
                let phase = (g / gabs).conj();
                let zeta = (b - a) / (2.0 * gabs);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for k in 0..n {
                    let x = cols[i][k];
                    let y = cols[j][k] * phase;
                    cols[i][k] = x * c - y * s;
                    cols[j][k] = x * s + y * c;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut values: Vec<f64> = cols
        .iter()
        .map(|c| c.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
        .collect();
    values.sort_by(|x, y| y.total_cmp(x));
    values
}

pub fn psd_power(m: &ComplexMatrix, p: f64) -> Result<ComplexMatrix> {
    let eig = hermitian_eig(m)?;
    psd_power_from(&eig, p)
}

pub(crate) fn psd_power_from(eig: &Eigen, p: f64) -> Result<ComplexMatrix> {
    let min = eig.values.last().copied().unwrap_or(0.0);
    if min < -tol::PSD {
        return Err(Error::NotPsd(min));
    }
    Ok(eig.reconstruct(|l| if l <= tol::EIG_CLIP { 0.0 } else { l.powf(p) }))
}

/// Point of the closed Bloch ball.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochVector {
    pub const ORIGIN: Self = Self {
        x: 0.0,
        y: 0.0,
        z: 0.0,
    };

    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let v = Self { x, y, z };
        if !(x.is_finite() && y.is_finite() && z.is_finite()) {
            return Err(Error::InvalidState("non-finite Bloch component".into()));
        }
        if v.norm() > 1.0 + tol::BLOCH_NORM {
            return Err(Error::InvalidState(format!(
                "Bloch norm {} exceeds 1",
                v.norm()
            )));
        }
        Ok(v)
    }

    /// Builds a vector without the ball check; used for channel outputs whose
    /// norm may exceed one by round-off, or on purpose for non-CP maps.
    pub fn from_array_unchecked(a: [f64; 3]) -> Self {
        Self {
            x: a[0],
            y: a[1],
            z: a[2],
        }
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn dot(self, o: Self) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    /// tr ρ² = (1 + r²)/2.
    pub fn purity(self) -> f64 {
        0.5 * (1.0 + self.dot(self))
    }

    pub fn to_density(self) -> DensityMatrix {
        bloch_to_density(self)
    }
}

/// ½(I + xσ₁ + yσ₂ + zσ₃).
pub fn bloch_to_density(v: BlochVector) -> DensityMatrix {
    let mat = ComplexMatrix {
        dim: 2,
        data: vec![
            Complex64::new(0.5 * (1.0 + v.z), 0.0),
            Complex64::new(0.5 * v.x, -0.5 * v.y),
            Complex64::new(0.5 * v.x, 0.5 * v.y),
            Complex64::new(0.5 * (1.0 - v.z), 0.0),
        ],
    };
    DensityMatrix { mat }
}

/// vᵢ = tr(ρσᵢ).
pub fn density_to_bloch(rho: &DensityMatrix) -> Result<BlochVector> {
    if rho.dim() != 2 {
        return Err(Error::Dimension(format!(
            "Bloch vector needs a qubit, got dimension {}",
            rho.dim()
        )));
    }
    let m = &rho.mat;
    let off = m[(1, 0)];
    Ok(BlochVector::from_array_unchecked([
        2.0 * off.re,
        2.0 * off.im,
        (m[(0, 0)] - m[(1, 1)]).re,
    ]))
}

/// Hermitian, positive semidefinite, unit-trace matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    mat: ComplexMatrix,
}

impl DensityMatrix {
    pub fn new(mat: ComplexMatrix) -> Result<Self> {
        let herr = mat.hermiticity_error();
        if herr > tol::HERMITIAN {
            return Err(Error::NotHermitian(herr));
        }
        let tr = mat.trace();
        if (tr - ONE).norm() > tol::TRACE {
            return Err(Error::InvalidState(format!("trace {tr} is not 1")));
        }
        let eig = hermitian_eig(&mat)?;
        let min = eig.values.last().copied().unwrap_or(0.0);
        if min < -tol::PSD {
            return Err(Error::NotPsd(min));
        }
        Ok(Self {
            mat: mat.hermitian_part(),
        })
    }

    /// |ψ⟩⟨ψ| for a state vector, normalized here.
    pub fn from_pure(psi: &[Complex64]) -> Result<Self> {
        check_dim(psi.len())?;
        let norm = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::InvalidState("zero or non-finite state vector".into()));
        }
        let unit: Vec<Complex64> = psi.iter().map(|z| z / norm).collect();
        Ok(Self {
            mat: ComplexMatrix::outer(&unit).hermitian_part(),
        })
    }

    pub fn maximally_mixed(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self {
            mat: ComplexMatrix::identity(dim).scale(Complex64::new(1.0 / dim as f64, 0.0)),
        })
    }

    pub fn dim(&self) -> usize {
        self.mat.dim
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn purity(&self) -> f64 {
        (&self.mat * &self.mat).trace().re
    }

    pub fn kron(&self, other: &Self) -> Result<Self> {
        check_dim(self.dim() * other.dim())?;
        Ok(Self {
            mat: self.mat.kron(&other.mat),
        })
    }

    /// λρ + (1−λ)σ for λ ∈ [0,1].
    pub fn mix(&self, other: &Self, lambda: f64) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::Dimension("mixing states of different dimension".into()));
        }
        if !(0.0..=1.0).contains(&lambda) {
            return Err(Error::InvalidParameter(format!("mixing weight {lambda}")));
        }
        let a = self.mat.scale(Complex64::new(lambda, 0.0));
        let b = other.mat.scale(Complex64::new(1.0 - lambda, 0.0));
        Ok(Self { mat: &a + &b })
    }

    /// UρU†.
    pub fn conjugate(&self, u: &ComplexMatrix) -> Result<Self> {
        if u.dim() != self.dim() {
            return Err(Error::Dimension("unitary and state differ in dimension".into()));
        }
        Ok(Self {
            mat: (&(u * &self.mat) * &u.adjoint()).hermitian_part(),
        })
    }

    /// ½ Σ|λᵢ| of ρ − σ.
    pub fn trace_distance(&self, other: &Self) -> Result<f64> {
        if self.dim() != other.dim() {
            return Err(Error::Dimension("trace distance of different dimensions".into()));
        }
        let eig = hermitian_eig(&(&self.mat - &other.mat))?;
        Ok(0.5 * eig.values.iter().map(|l| l.abs()).sum::<f64>())
    }
}
