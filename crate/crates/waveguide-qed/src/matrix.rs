//! Dense square complex matrices and the linear algebra the simulator needs:
//! arithmetic, adjoints, norms, a pivoted linear solve, and Hermitian
//! eigenvalues via Jacobi rotations on the real symmetric embedding.
//!
//! Everything here is sized for Hilbert spaces of a handful of levels
//! (dimensions up to ~20, superoperators up to ~400), so plain dense
//! storage and textbook algorithms are the right tool.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Complex scalar used throughout the crate.
pub type C64 = Complex64;

pub(crate) const C_ZERO: C64 = C64::new(0.0, 0.0);
pub(crate) const C_ONE: C64 = C64::new(1.0, 0.0);
pub(crate) const C_I: C64 = C64::new(0.0, 1.0);

/// Dense square matrix of complex amplitudes, row-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![C_ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = C_ONE;
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m.data[i * dim + j] = f(i, j);
            }
        }
        m
    }

    /// Builds a matrix from rows of real entries (test convenience).
    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let dim = rows.len();
        Self::from_fn(dim, |i, j| C64::new(rows[i][j], 0.0))
    }

    /// Rank-one projector |v⟩⟨v| of a (not necessarily normalised) vector.
    pub fn outer(v: &[C64]) -> Self {
        let dim = v.len();
        Self::from_fn(dim, |i, j| v[i] * v[j].conj())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.data[i * self.dim + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: C64) {
        self.data[i * self.dim + j] = value;
    }

    #[inline]
    pub(crate) fn data(&self) -> &[C64] {
        &self.data
    }

    #[inline]
    pub(crate) fn data_mut(&mut self) -> &mut [C64] {
        &mut self.data
    }

    pub fn is_finite(&self) -> bool {
        self.data
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        let d = self.dim;
        Self::from_fn(d, |i, j| self.data[j * d + i].conj())
    }

    pub fn transpose(&self) -> Self {
        let d = self.dim;
        Self::from_fn(d, |i, j| self.data[j * d + i])
    }

    pub fn conj(&self) -> Self {
        let d = self.dim;
        Self::from_fn(d, |i, j| self.data[i * d + j].conj())
    }

    pub fn scaled(&self, factor: C64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn scale_mut(&mut self, factor: C64) {
        for z in &mut self.data {
            *z *= factor;
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "matrix dimension mismatch");
        Self {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "matrix dimension mismatch");
        Self {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    /// self += factor * other, elementwise.
    pub fn add_scaled_mut(&mut self, factor: f64, other: &Self) {
        debug_assert_eq!(self.dim, other.dim);
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            a.re += factor * b.re;
            a.im += factor * b.im;
        }
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "matrix dimension mismatch");
        let d = self.dim;
        let mut out = Self::zeros(d);
        for i in 0..d {
            for k in 0..d {
                let a = self.data[i * d + k];
                if a == C_ZERO {
                    continue;
                }
                let row = &other.data[k * d..(k + 1) * d];
                let dst = &mut out.data[i * d..(i + 1) * d];
                for (o, b) in dst.iter_mut().zip(row) {
                    *o += a * b;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(self.dim, v.len(), "matrix-vector dimension mismatch");
        let d = self.dim;
        self.data
            .chunks_exact(d)
            .map(|row| row.iter().zip(v).map(|(a, x)| a * x).sum())
            .collect()
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self.data[i * self.dim + i]).sum()
    }

    /// Largest entry magnitude, the max norm used by most tolerances here.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Maximum absolute column sum (induced 1-norm).
    pub fn one_norm(&self) -> f64 {
        let d = self.dim;
        (0..d)
            .map(|j| (0..d).map(|i| self.data[i * d + j].norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// ‖M − M†‖_max, zero for an exactly Hermitian matrix.
    pub fn hermitian_defect(&self) -> f64 {
        let d = self.dim;
        let mut worst = 0.0f64;
        for i in 0..d {
            for j in i..d {
                let delta = (self.data[i * d + j] - self.data[j * d + i].conj()).norm();
                worst = worst.max(delta);
            }
        }
        worst
    }

    /// (M + M†)/2.
    pub fn hermitian_part(&self) -> Self {
        let d = self.dim;
        Self::from_fn(d, |i, j| {
            0.5 * (self.data[i * d + j] + self.data[j * d + i].conj())
        })
    }

    /// Symmetrises in place: M ← (M + M†)/2.
    pub fn hermitize_mut(&mut self) {
        let d = self.dim;
        for i in 0..d {
            for j in i..d {
                let avg = 0.5 * (self.data[i * d + j] + self.data[j * d + i].conj());
                self.data[i * d + j] = avg;
                self.data[j * d + i] = avg.conj();
            }
        }
    }

    /// Eigenvalues of a (near-)Hermitian matrix, ascending.
    ///
    /// The matrix is symmetrised first, embedded as the real symmetric
    /// 2d×2d block matrix [[Re, -Im], [Im, Re]], and diagonalised with
    /// cyclic Jacobi sweeps; each eigenvalue of the Hermitian input appears
    /// twice in the embedding, so every second sorted value is returned.
    pub fn hermitian_eigenvalues(&self) -> Result<Vec<f64>> {
        let d = self.dim;
        let h = self.hermitian_part();
        let n = 2 * d;
        let mut m = vec![0.0f64; n * n];
        for i in 0..d {
            for j in 0..d {
                let z = h.data[i * d + j];
                m[i * n + j] = z.re;
                m[i * n + (d + j)] = -z.im;
                m[(d + i) * n + j] = z.im;
                m[(d + i) * n + (d + j)] = z.re;
            }
        }
        let mut eigs = jacobi_symmetric_eigenvalues(&mut m, n)?;
        eigs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        Ok(eigs.into_iter().step_by(2).collect())
    }

    /// Solves self · X = B by LU decomposition with partial pivoting.
    pub fn solve(&self, rhs: &Self) -> Result<Self> {
        assert_eq!(self.dim, rhs.dim, "matrix dimension mismatch");
        let d = self.dim;
        let mut lu = self.data.clone();
        let mut perm: Vec<usize> = (0..d).collect();
        for col in 0..d {
            let mut pivot = col;
            let mut best = lu[perm[col] * d + col].norm();
            for row in (col + 1)..d {
                let mag = lu[perm[row] * d + col].norm();
                if mag > best {
                    best = mag;
                    pivot = row;
                }
            }
            if best == 0.0 {
                return Err(Error::SingularMatrix {
                    context: "linear solve",
                });
            }
            perm.swap(col, pivot);
            let p = perm[col];
            let diag = lu[p * d + col];
            for &r in &perm[(col + 1)..] {
                let factor = lu[r * d + col] / diag;
                lu[r * d + col] = factor;
                for k in (col + 1)..d {
                    let sub = factor * lu[p * d + k];
                    lu[r * d + k] -= sub;
                }
            }
        }
        let mut x = Self::zeros(d);
        // One forward/backward sweep per right-hand-side column.
        for col in 0..d {
            let mut y = vec![C_ZERO; d];
            for i in 0..d {
                let mut acc = rhs.data[perm[i] * d + col];
                for k in 0..i {
                    acc -= lu[perm[i] * d + k] * y[k];
                }
                y[i] = acc;
            }
            for i in (0..d).rev() {
                let mut acc = y[i];
                for k in (i + 1)..d {
                    acc -= lu[perm[i] * d + k] * x.data[k * d + col];
                }
                x.data[i * d + col] = acc / lu[perm[i] * d + i];
            }
        }
        Ok(x)
    }
}

const JACOBI_MAX_SWEEPS: usize = 60;

/// Cyclic Jacobi diagonalisation of a real symmetric matrix; returns the
/// unsorted diagonal after convergence. Destroys the input buffer.
fn jacobi_symmetric_eigenvalues(a: &mut [f64], n: usize) -> Result<Vec<f64>> {
    if n == 0 {
        return Ok(Vec::new());
    }
    let fro2: f64 = a.iter().map(|x| x * x).sum();
    let target = (1e-14 * fro2.sqrt()).powi(2).max(f64::MIN_POSITIVE);
    for _ in 0..JACOBI_MAX_SWEEPS {
        let mut off2 = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off2 += 2.0 * a[p * n + q] * a[p * n + q];
            }
        }
        if off2 <= target {
            return Ok((0..n).map(|i| a[i * n + i]).collect());
        }
        for p in 0..(n - 1) {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (theta * theta + 1.0).sqrt())
                } else {
                    -1.0 / (-theta + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
            }
        }
    }
    Err(Error::Integration {
        t: 0.0,
        reason: "Jacobi eigenvalue iteration did not converge".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn approx(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol})");
    }

    #[test]
    fn matmul_identity() {
        let m = ComplexMatrix::from_fn(3, |i, j| C64::new((i + 2 * j) as f64, j as f64));
        let id = ComplexMatrix::identity(3);
        assert_eq!(m.matmul(&id), m);
        assert_eq!(id.matmul(&m), m);
    }

    #[test]
    fn dagger_and_trace() {
        let m = ComplexMatrix::from_fn(2, |i, j| C64::new(i as f64, j as f64));
        let d = m.dagger();
        assert_eq!(d.get(0, 1), C64::new(1.0, 0.0));
        assert_eq!(d.get(1, 0), C64::new(0.0, -1.0));
        assert_eq!(m.trace(), C64::new(1.0, 1.0));
    }

    #[test]
    fn hermitian_defect_detects_asymmetry() {
        let mut m = ComplexMatrix::identity(2);
        assert_eq!(m.hermitian_defect(), 0.0);
        m.set(0, 1, C64::new(0.0, 1e-3));
        assert!(m.hermitian_defect() > 5e-4);
        m.hermitize_mut();
        assert!(m.hermitian_defect() < 1e-16);
    }

    #[test]
    fn eigenvalues_of_real_symmetric_2x2() {
        // [[2,1],[1,2]] has eigenvalues 1 and 3.
        let m = ComplexMatrix::from_real_rows(&[&[2.0, 1.0], &[1.0, 2.0]]);
        let eigs = m.hermitian_eigenvalues().unwrap();
        approx(eigs[0], 1.0, 1e-12);
        approx(eigs[1], 3.0, 1e-12);
    }

    #[test]
    fn eigenvalues_of_complex_hermitian() {
        // [[1, i], [-i, 1]] has eigenvalues 0 and 2.
        let mut m = ComplexMatrix::identity(2);
        m.set(0, 1, C_I);
        m.set(1, 0, -C_I);
        let eigs = m.hermitian_eigenvalues().unwrap();
        approx(eigs[0], 0.0, 1e-12);
        approx(eigs[1], 2.0, 1e-12);
    }

    #[test]
    fn eigenvalues_of_diagonal_with_degeneracy() {
        let m = ComplexMatrix::from_fn(4, |i, j| {
            if i == j {
                C64::new([5.0, -1.0, 5.0, 2.0][i], 0.0)
            } else {
                C_ZERO
            }
        });
        let eigs = m.hermitian_eigenvalues().unwrap();
        let expect = [-1.0, 2.0, 5.0, 5.0];
        for (e, x) in eigs.iter().zip(expect) {
            approx(*e, x, 1e-12);
        }
    }

    #[test]
    fn solve_recovers_known_solution() {
        let a = ComplexMatrix::from_fn(3, |i, j| {
            let diag = if i == j { 4.0 } else { 0.0 };
            C64::new((1 + i * j) as f64 + diag, (i as f64) - (j as f64))
        });
        let x_true = ComplexMatrix::from_fn(3, |i, j| C64::new(j as f64 + 0.5, i as f64));
        let b = a.matmul(&x_true);
        let x = a.solve(&b).unwrap();
        assert!(x.sub(&x_true).max_abs() < 1e-12);
    }

    #[test]
    fn solve_rejects_singular() {
        let a = ComplexMatrix::zeros(2);
        assert!(a.solve(&ComplexMatrix::identity(2)).is_err());
    }
}
