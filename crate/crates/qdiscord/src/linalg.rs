//! Dense complex matrix kernel: Hermitian eigendecomposition, tensor
//! product, partial trace, and partial transpose for matrices up to a few
//! dozen rows.
//!
//! The composite index convention is fixed project-wide: the bipartite level
//! |s⟩|a⟩ lives at row/column `s * dim_a + a`, i.e. the A index runs fastest.
//! Every module that splits a matrix into subsystems relies on this.

use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Max tolerated entry of |M - M†| for operations that require Hermitian input.
pub const HERMITIAN_TOL: f64 = 1e-10;
/// Reconstruction and orthonormality tolerance for eigendecompositions.
pub const RECON_TOL: f64 = 1e-9;
/// Sweep budget for the Jacobi iteration.
pub const JACOBI_MAX_SWEEPS: usize = 100;
/// The iteration stops once every off-diagonal magnitude is below this.
pub const JACOBI_OFF_TOL: f64 = 1e-13;

/// Dense square complex matrix, row-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries; `entries.len()` must be `dim²`.
    pub fn new(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                actual: entries.len(),
            });
        }
        Ok(Self { dim, entries })
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            entries: vec![Complex64::ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::ONE;
        }
        m
    }

    /// Builds a diagonal matrix from real values.
    pub fn diagonal(values: &[f64]) -> Self {
        let mut m = Self::zeros(values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = Complex64::new(v, 0.0);
        }
        m
    }

    /// Builds a matrix from real row-major entries (imaginary parts zero).
    pub fn from_real(dim: usize, entries: &[f64]) -> Result<Self> {
        let entries = entries
            .iter()
            .map(|&x| Complex64::new(x, 0.0))
            .collect::<Vec<_>>();
        Self::new(dim, entries)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.dim);
        for r in 0..self.dim {
            for c in 0..self.dim {
                out[(c, r)] = self[(r, c)].conj();
            }
        }
        out
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|&e| e * factor).collect(),
        }
    }

    pub fn scaled_re(&self, factor: f64) -> Self {
        self.scaled(Complex64::new(factor, 0.0))
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries
            .iter()
            .map(|e| e.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|e| e.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise difference |self - other|.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// max |M - M†|, the distance from being Hermitian.
    pub fn hermiticity_deviation(&self) -> f64 {
        let mut dev: f64 = 0.0;
        for r in 0..self.dim {
            for c in r..self.dim {
                dev = dev.max((self[(r, c)] - self[(c, r)].conj()).norm());
            }
        }
        dev
    }

    /// (M + M†)/2; removes round-off asymmetry before spectral work.
    pub fn hermitized(&self) -> Self {
        let mut out = Self::zeros(self.dim);
        for r in 0..self.dim {
            for c in 0..self.dim {
                out[(r, c)] = (self[(r, c)] + self[(c, r)].conj()) * 0.5;
            }
        }
        out
    }

    fn max_off_diagonal(&self) -> f64 {
        let mut off: f64 = 0.0;
        for r in 0..self.dim {
            for c in 0..self.dim {
                if r != c {
                    off = off.max(self[(r, c)].norm());
                }
            }
        }
        off
    }

    /// Extracts column `c` as a ket.
    pub fn column(&self, c: usize) -> Vec<Complex64> {
        (0..self.dim).map(|r| self[(r, c)]).collect()
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        &self.entries[r * self.dim + c]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        &mut self.entries[r * self.dim + c]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, other.dim, "matrix dimensions must match");
        ComplexMatrix {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, other.dim, "matrix dimensions must match");
        ComplexMatrix {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, other.dim, "matrix dimensions must match");
        let n = self.dim;
        let mut out = ComplexMatrix::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let a = self[(r, k)];
                if a == Complex64::ZERO {
                    continue;
                }
                for c in 0..n {
                    out[(r, c)] += a * other[(k, c)];
                }
            }
        }
        out
    }
}

/// Squared norm of a ket.
pub fn ket_norm_sqr(v: &[Complex64]) -> f64 {
    v.iter().map(|a| a.norm_sqr()).sum()
}

/// Rank-1 projector |v⟩⟨v|.
pub fn ket_outer(v: &[Complex64]) -> ComplexMatrix {
    let n = v.len();
    let mut m = ComplexMatrix::zeros(n);
    for r in 0..n {
        for c in 0..n {
            m[(r, c)] = v[r] * v[c].conj();
        }
    }
    m
}

/// |a⟩ ⊗ |b⟩ under the project index convention (second factor fastest).
pub fn ket_tensor(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for &x in a {
        for &y in b {
            out.push(x * y);
        }
    }
    out
}

/// Kronecker product a ⊗ b; entry ((i·db+k),(j·db+l)) = a[i,j]·b[k,l].
pub fn tensor(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (da, db) = (a.dim(), b.dim());
    let mut out = ComplexMatrix::zeros(da * db);
    for i in 0..da {
        for j in 0..da {
            let aij = a[(i, j)];
            if aij == Complex64::ZERO {
                continue;
            }
            for k in 0..db {
                for l in 0..db {
                    out[(i * db + k, j * db + l)] = aij * b[(k, l)];
                }
            }
        }
    }
    out
}

/// Which tensor factor a partial trace keeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    S,
    A,
}

/// Traces out one factor of a matrix on H_S ⊗ H_A.
pub fn partial_trace(
    m: &ComplexMatrix,
    dim_s: usize,
    dim_a: usize,
    keep: Subsystem,
) -> Result<ComplexMatrix> {
    if m.dim() != dim_s * dim_a {
        return Err(Error::DimensionMismatch {
            expected: dim_s * dim_a,
            actual: m.dim(),
        });
    }
    match keep {
        Subsystem::S => {
            let mut out = ComplexMatrix::zeros(dim_s);
            for s in 0..dim_s {
                for t in 0..dim_s {
                    let mut sum = Complex64::ZERO;
                    for a in 0..dim_a {
                        sum += m[(s * dim_a + a, t * dim_a + a)];
                    }
                    out[(s, t)] = sum;
                }
            }
            Ok(out)
        }
        Subsystem::A => {
            let mut out = ComplexMatrix::zeros(dim_a);
            for a in 0..dim_a {
                for b in 0..dim_a {
                    let mut sum = Complex64::ZERO;
                    for s in 0..dim_s {
                        sum += m[(s * dim_a + a, s * dim_a + b)];
                    }
                    out[(a, b)] = sum;
                }
            }
            Ok(out)
        }
    }
}

/// Transposes the A indices only; applying it twice restores the input
/// exactly (it is a pure permutation of entries).
pub fn partial_transpose(m: &ComplexMatrix, dim_s: usize, dim_a: usize) -> Result<ComplexMatrix> {
    if m.dim() != dim_s * dim_a {
        return Err(Error::DimensionMismatch {
            expected: dim_s * dim_a,
            actual: m.dim(),
        });
    }
    let mut out = ComplexMatrix::zeros(m.dim());
    for s in 0..dim_s {
        for t in 0..dim_s {
            for a in 0..dim_a {
                for b in 0..dim_a {
                    out[(s * dim_a + a, t * dim_a + b)] = m[(s * dim_a + b, t * dim_a + a)];
                }
            }
        }
    }
    Ok(out)
}

/// Spectral decomposition of a Hermitian matrix.
///
/// Eigenvalues are sorted descending; `vectors` holds the matching
/// orthonormal eigenvectors as columns. Degenerate eigenvalues keep the
/// iteration's order (the sort is stable) and every eigenvector's global
/// phase is fixed by making its first non-negligible component real
/// positive, so the output is deterministic.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    eigenvalues: Vec<f64>,
    vectors: ComplexMatrix,
}

impl EigenDecomposition {
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Eigenvector matrix; column k pairs with `eigenvalues()[k]`.
    pub fn vectors(&self) -> &ComplexMatrix {
        &self.vectors
    }

    pub fn eigenvector(&self, k: usize) -> Vec<Complex64> {
        self.vectors.column(k)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        *self.eigenvalues.last().expect("dimension is at least 1")
    }

    /// Σ_k λ_k v_k v_k†, for residual checks against the decomposed input.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.vectors.dim();
        let mut out = ComplexMatrix::zeros(n);
        for k in 0..n {
            let lambda = self.eigenvalues[k];
            for r in 0..n {
                for c in 0..n {
                    out[(r, c)] += lambda * self.vectors[(r, k)] * self.vectors[(c, k)].conj();
                }
            }
        }
        out
    }
}

/// Diagonalizes a Hermitian matrix with cyclic complex Jacobi rotations.
///
/// The input must pass the Hermitian check at [`HERMITIAN_TOL`]; the
/// iteration then runs on the symmetrized copy until every off-diagonal
/// magnitude drops below [`JACOBI_OFF_TOL`] or the sweep budget runs out.
pub fn hermitian_eigen(m: &ComplexMatrix) -> Result<EigenDecomposition> {
    let deviation = m.hermiticity_deviation();
    if deviation > HERMITIAN_TOL {
        return Err(Error::NotHermitian {
            deviation,
            tol: HERMITIAN_TOL,
        });
    }

    let n = m.dim();
    let mut a = m.hermitized();
    let mut v = ComplexMatrix::identity(n);

    let mut converged = n < 2;
    for _ in 0..JACOBI_MAX_SWEEPS {
        if a.max_off_diagonal() <= JACOBI_OFF_TOL {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }
    if !converged {
        return Err(Error::NoConvergence {
            sweeps: JACOBI_MAX_SWEEPS,
            off_diagonal: a.max_off_diagonal(),
        });
    }

    let raw: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| raw[j].partial_cmp(&raw[i]).expect("eigenvalues are finite"));

    let eigenvalues: Vec<f64> = order.iter().map(|&i| raw[i]).collect();
    let mut vectors = ComplexMatrix::zeros(n);
    for (dst, &src) in order.iter().enumerate() {
        let phase = column_phase(&v, src);
        for r in 0..n {
            vectors[(r, dst)] = v[(r, src)] * phase;
        }
    }

    Ok(EigenDecomposition {
        eigenvalues,
        vectors,
    })
}

/// One complex Givens rotation zeroing a[(p,q)], accumulated into v.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let mag = apq.norm();
    // Elements already at the convergence floor are left alone.
    if mag <= JACOBI_OFF_TOL * 1e-2 {
        return;
    }
    let phase = apq / mag;
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let tau = (aqq - app) / (2.0 * mag);
    // Smaller-magnitude root of t² - 2τt - 1 = 0 for stability.
    let t = if tau >= 0.0 {
        -1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let s_phase = s * phase;

    let n = a.dim();
    // Column update A ← A·G.
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = c * akp + s_phase.conj() * akq;
        a[(k, q)] = -s_phase * akp + c * akq;
    }
    // Row update A ← G†·A.
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = c * apk + s_phase * aqk;
        a[(q, k)] = -s_phase.conj() * apk + c * aqk;
    }
    // The pivot is zero by construction; drop its rounding residue.
    a[(p, q)] = Complex64::ZERO;
    a[(q, p)] = Complex64::ZERO;

    // Accumulate V ← V·G.
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = c * vkp + s_phase.conj() * vkq;
        v[(k, q)] = -s_phase * vkp + c * vkq;
    }
}

/// Phase factor that makes the column's first non-negligible component real
/// positive.
fn column_phase(v: &ComplexMatrix, col: usize) -> Complex64 {
    for r in 0..v.dim() {
        let entry = v[(r, col)];
        let mag = entry.norm();
        if mag > 1e-9 {
            return entry.conj() / mag;
        }
    }
    Complex64::ONE
}
