//! Dense complex linear algebra sized for vectorized qutrit superoperators
//! (at most a few hundred rows).

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;
#[allow(unused_imports)] // shadowed by std float methods when std is linked
use num_traits::{Float, Zero};

use crate::{Error, Result};

pub type C64 = Complex64;

/// Relative tolerance for Hermiticity checks.
pub const HERM_TOL: f64 = 1e-9;
/// Singular-value cutoff, relative to the largest singular value.
pub const NULL_TOL: f64 = 1e-9;

const JACOBI_MAX_SWEEPS: usize = 100;

#[inline]
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[inline]
pub fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// Dense row-major complex matrix.
#[derive(Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                write!(f, "{:+.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl CMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DataLength { rows, cols, len: data.len() });
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![C64::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { re(1.0) } else { C64::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Square matrix from real row-major entries.
    pub fn from_real(n: usize, entries: &[f64]) -> Self {
        assert_eq!(entries.len(), n * n);
        Self { rows: n, cols: n, data: entries.iter().map(|&x| re(x)).collect() }
    }

    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        let r = rows.len();
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: row.len() });
            }
            data.extend_from_slice(row);
        }
        Self::new(r, cols, data)
    }

    pub fn diag(entries: &[C64]) -> Self {
        let n = entries.len();
        Self::from_fn(n, n, |i, j| if i == j { entries[i] } else { C64::zero() })
    }

    /// Matrix unit |i⟩⟨j| of size n.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(n, n);
        m[(i, j)] = re(1.0);
        m
    }

    /// Outer product |u⟩⟨v|.
    pub fn outer(u: &CVector, v: &CVector) -> Self {
        Self::from_fn(u.dim(), v.dim(), |i, j| u[i] * v[j].conj())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    /// Side length of a square matrix.
    pub fn square_dim(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare { rows: self.rows, cols: self.cols })
        }
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn conj(&self) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|z| z.conj()).collect() }
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn scale(&self, s: C64) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|z| z * s).collect() }
    }

    pub fn scale_re(&self, s: f64) -> Self {
        self.scale(re(s))
    }

    /// Hilbert-Schmidt inner product tr(A†B).
    pub fn hs_inner(&self, other: &Self) -> C64 {
        debug_assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data.iter().zip(&other.data).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Spectral norm (largest singular value).
    pub fn operator_norm(&self) -> f64 {
        if self.data.is_empty() {
            return 0.0;
        }
        let gram = &self.adjoint() * self;
        match hermitian_eig(&gram) {
            Ok(e) => e.values.last().copied().unwrap_or(0.0).max(0.0).sqrt(),
            Err(_) => self.frobenius_norm(),
        }
    }

    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    /// Deviation from Hermiticity, max |A - A†|.
    pub fn hermiticity_error(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut worst = 0.0_f64;
        for i in 0..self.rows {
            for j in i..self.cols {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_error() <= tol * self.max_abs().max(1.0)
    }

    pub fn mul_vec(&self, v: &CVector) -> CVector {
        assert_eq!(self.cols, v.dim());
        let data = (0..self.rows).map(|i| (0..self.cols).map(|j| self[(i, j)] * v[j]).sum()).collect();
        CVector::from_vec(data)
    }

    pub fn column(&self, j: usize) -> CVector {
        CVector::from_vec((0..self.rows).map(|i| self[(i, j)]).collect())
    }

    /// Restriction B† A B onto the span of orthonormal columns `basis`.
    pub fn compress(&self, basis: &[CVector]) -> Self {
        let b = CMatrix::from_columns(basis);
        &(&b.adjoint() * self) * &b
    }

    pub fn from_columns(cols: &[CVector]) -> Self {
        let n = cols.first().map_or(0, CVector::dim);
        Self::from_fn(n, cols.len(), |i, j| cols[j][i])
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut out = Self::identity(self.rows);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Approximate equality in max-abs norm.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.rows == other.rows && self.cols == other.cols && (self - other).max_abs() <= tol
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = C64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;
    fn mul(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = CMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                let row = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                let dst = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
                for (d, b) in dst.iter_mut().zip(row) {
                    *d += a * b;
                }
            }
        }
        out
    }
}

impl Add for &CMatrix {
    type Output = CMatrix;
    fn add(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &CMatrix {
    type Output = CMatrix;
    fn sub(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &CMatrix {
    type Output = CMatrix;
    fn neg(self) -> CMatrix {
        self.scale_re(-1.0)
    }
}

/// Dense complex column vector.
#[derive(Clone, Debug, PartialEq)]
pub struct CVector {
    data: Vec<C64>,
}

impl CVector {
    pub fn from_vec(data: Vec<C64>) -> Self {
        Self { data }
    }

    pub fn zeros(n: usize) -> Self {
        Self { data: vec![C64::zero(); n] }
    }

    pub fn basis(n: usize, k: usize) -> Self {
        let mut v = Self::zeros(n);
        v.data[k] = re(1.0);
        v
    }

    pub fn dim(&self) -> usize {
        self.data.len()
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<C64> {
        self.data
    }

    /// ⟨self|other⟩, conjugate-linear in `self`.
    pub fn inner(&self, other: &Self) -> C64 {
        self.data.iter().zip(&other.data).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn scale(&self, s: C64) -> Self {
        Self { data: self.data.iter().map(|z| z * s).collect() }
    }

    pub fn normalized(&self) -> Self {
        self.scale(re(1.0 / self.norm()))
    }

    pub fn axpy(&mut self, a: C64, x: &Self) {
        for (y, xi) in self.data.iter_mut().zip(&x.data) {
            *y += a * xi;
        }
    }

    /// Multiplies by a global phase so the first entry above `tol` (relative
    /// to the largest entry) is real and positive.
    pub fn fix_phase(&mut self, tol: f64) {
        let scale = self.data.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if scale == 0.0 {
            return;
        }
        if let Some(z) = self.data.iter().find(|z| z.norm() > tol * scale).copied() {
            let phase = z.conj() / z.norm();
            for x in &mut self.data {
                *x *= phase;
            }
        }
    }
}

impl Index<usize> for CVector {
    type Output = C64;
    fn index(&self, i: usize) -> &C64 {
        &self.data[i]
    }
}

impl IndexMut<usize> for CVector {
    fn index_mut(&mut self, i: usize) -> &mut C64 {
        &mut self.data[i]
    }
}

/// |A⟩ with entry (i·d + j) = A[i][j].
pub fn vectorize(a: &CMatrix) -> Result<CVector> {
    a.square_dim()?;
    Ok(CVector::from_vec(a.data.clone()))
}

/// Inverse of [`vectorize`].
pub fn devectorize(v: &CVector, d: usize) -> Result<CMatrix> {
    if v.dim() != d * d {
        return Err(Error::DimensionMismatch { expected: d * d, found: v.dim() });
    }
    Ok(CMatrix { rows: d, cols: d, data: v.data.clone() })
}

/// Kronecker product A ⊗ B.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let rows = a.rows * b.rows;
    let cols = a.cols * b.cols;
    let mut out = CMatrix::zeros(rows, cols);
    for ai in 0..a.rows {
        for aj in 0..a.cols {
            let x = a[(ai, aj)];
            if x.is_zero() {
                continue;
            }
            for bi in 0..b.rows {
                for bj in 0..b.cols {
                    out[(ai * b.rows + bi, aj * b.cols + bj)] = x * b[(bi, bj)];
                }
            }
        }
    }
    out
}

/// Eigen-decomposition of a Hermitian matrix.
#[derive(Clone, Debug)]
pub struct HermitianEig {
    /// Ascending.
    pub values: Vec<f64>,
    /// Orthonormal eigenvectors, `vectors[k]` belongs to `values[k]`.
    pub vectors: Vec<CVector>,
}

impl HermitianEig {
    pub fn min(&self) -> f64 {
        self.values.first().copied().unwrap_or(0.0)
    }

    pub fn max(&self) -> f64 {
        self.values.last().copied().unwrap_or(0.0)
    }

    /// Unitary with the eigenvectors as columns.
    pub fn vector_matrix(&self) -> CMatrix {
        CMatrix::from_columns(&self.vectors)
    }

    /// Σ f(λ_k) |v_k⟩⟨v_k|.
    pub fn map_values(&self, f: impl Fn(f64) -> C64) -> CMatrix {
        let n = self.values.len();
        let mut out = CMatrix::zeros(n, n);
        for (lambda, v) in self.values.iter().zip(&self.vectors) {
            let w = f(*lambda);
            for i in 0..n {
                let vi = v[i] * w;
                for j in 0..n {
                    out[(i, j)] += vi * v[j].conj();
                }
            }
        }
        out
    }
}

/// Cyclic complex Jacobi eigensolver for Hermitian matrices.
pub fn hermitian_eig(a: &CMatrix) -> Result<HermitianEig> {
    let n = a.square_dim()?;
    let herr = a.hermiticity_error();
    if herr > HERM_TOL * a.max_abs().max(1.0) {
        return Err(Error::NotHermitian(herr));
    }
    // Symmetrize to remove the tolerated asymmetry.
    let mut m = CMatrix::from_fn(n, n, |i, j| (a[(i, j)] + a[(j, i)].conj()) * 0.5);
    let mut v = CMatrix::identity(n);

    let total = m.frobenius_norm();
    for _ in 0..JACOBI_MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| m[(i, j)].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= 1e-15 * total || off == 0.0 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[(p, q)];
                let mag = apq.norm();
                if mag <= 1e-300 {
                    continue;
                }
                // Reduce to a real rotation: phase e^{iφ} = apq / |apq|.
                let e_neg = apq.conj() / mag; // e^{-iφ}
                let e_pos = apq / mag; // e^{iφ}
                let app = m[(p, p)].re;
                let aqq = m[(q, q)].re;
                let tau = (aqq - app) / (2.0 * mag);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let cs = 1.0 / (1.0 + t * t).sqrt();
                let sn = t * cs;
                // Columns: A <- A U with U = [[c, s], [-s e^{-iφ}, c e^{-iφ}]].
                for k in 0..n {
                    let akp = m[(k, p)];
                    let akq = m[(k, q)];
                    m[(k, p)] = akp * cs - akq * e_neg * sn;
                    m[(k, q)] = akp * sn + akq * e_neg * cs;
                }
                // Rows: A <- U† A.
                for k in 0..n {
                    let apk = m[(p, k)];
                    let aqk = m[(q, k)];
                    m[(p, k)] = apk * cs - aqk * e_pos * sn;
                    m[(q, k)] = apk * sn + aqk * e_pos * cs;
                }
                m[(p, q)] = C64::zero();
                m[(q, p)] = C64::zero();
                m[(p, p)] = re(m[(p, p)].re);
                m[(q, q)] = re(m[(q, q)].re);
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * cs - vkq * e_neg * sn;
                    v[(k, q)] = vkp * sn + vkq * e_neg * cs;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(i, i)].re.partial_cmp(&m[(j, j)].re).unwrap_or(core::cmp::Ordering::Equal));
    let values = order.iter().map(|&k| m[(k, k)].re).collect();
    let vectors = order
        .iter()
        .map(|&k| {
            let mut col = v.column(k);
            col.fix_phase(1e-8);
            col
        })
        .collect();
    Ok(HermitianEig { values, vectors })
}

/// exp(iθH) for Hermitian H.
pub fn expm_i_hermitian(h: &CMatrix, theta: f64) -> Result<CMatrix> {
    let eig = hermitian_eig(h)?;
    Ok(eig.map_values(|lambda| C64::from_polar(1.0, theta * lambda)))
}

/// Orthonormal basis of {v : ‖Mv‖ ≤ tol·max(‖M‖, 1)}.
///
/// The floor of 1 keeps a matrix that is zero up to rounding from being
/// judged against its own noise.
/// Singular values are read off as ‖M v_k‖ for the eigenvectors v_k of M†M,
/// which keeps them accurate near zero. The returned basis is canonical for
/// the subspace: reduced row-echelon form followed by Gram-Schmidt, so the
/// leading pivot of every vector is real and positive.
pub fn null_space(m: &CMatrix, tol: f64) -> Vec<CVector> {
    let n = m.cols();
    if n == 0 {
        return Vec::new();
    }
    let gram = &m.adjoint() * m;
    let eig = match hermitian_eig(&gram) {
        Ok(e) => e,
        Err(_) => return Vec::new(),
    };
    let sigmas: Vec<f64> = eig.vectors.iter().map(|v| m.mul_vec(v).norm()).collect();
    let cutoff = tol * sigmas.iter().copied().fold(1.0, f64::max);
    let raw: Vec<CVector> =
        eig.vectors.iter().zip(&sigmas).filter(|(_, &s)| s <= cutoff).map(|(v, _)| v.clone()).collect();
    canonical_basis(&raw)
}

/// Canonical orthonormal basis for span(vectors), assumed orthonormal input.
pub fn canonical_basis(vectors: &[CVector]) -> Vec<CVector> {
    let k = vectors.len();
    if k == 0 {
        return Vec::new();
    }
    let n = vectors[0].dim();
    // Rows are the vectors; reduce to row-echelon form with partial pivoting.
    let mut rows: Vec<Vec<C64>> = vectors.iter().map(|v| v.as_slice().to_vec()).collect();
    let mut pivot_row = 0;
    for col in 0..n {
        if pivot_row == k {
            break;
        }
        let (best, best_mag) =
            (pivot_row..k)
                .map(|r| (r, rows[r][col].norm()))
                .fold((pivot_row, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if best_mag <= 1e-7 {
            continue;
        }
        rows.swap(pivot_row, best);
        let inv = re(1.0) / rows[pivot_row][col];
        for x in rows[pivot_row].iter_mut() {
            *x *= inv;
        }
        for r in 0..k {
            if r != pivot_row {
                let f = rows[r][col];
                if f.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let sub = f * rows[pivot_row][j];
                    rows[r][j] -= sub;
                }
            }
        }
        pivot_row += 1;
    }
    let mut out: Vec<CVector> = Vec::with_capacity(k);
    for row in rows.into_iter().take(pivot_row) {
        let mut v = CVector::from_vec(row);
        for q in &out {
            let proj = q.inner(&v);
            v.axpy(-proj, q);
        }
        let nv = v.norm();
        if nv > 1e-12 {
            let mut v = v.scale(re(1.0 / nv));
            v.fix_phase(1e-7);
            out.push(v);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_hermitian, random_matrix, rng};

    fn omega3() -> C64 {
        C64::from_polar(1.0, 2.0 * core::f64::consts::PI / 3.0)
    }

    #[test]
    fn vectorize_identity() {
        let v = vectorize(&CMatrix::identity(2)).unwrap();
        assert_eq!(v.as_slice(), &[re(1.0), re(0.0), re(0.0), re(1.0)]);
        assert!(vectorize(&CMatrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn vectorization_identities() {
        let mut r = rng(7);
        for _ in 0..10 {
            let a = random_matrix(&mut r, 3);
            let b = random_matrix(&mut r, 3);
            let i3 = CMatrix::identity(3);
            let lhs = vectorize(&(&b * &a)).unwrap();
            let rhs = kron(&b, &i3).mul_vec(&vectorize(&a).unwrap());
            assert!(lhs.as_slice().iter().zip(rhs.as_slice()).all(|(x, y)| (x - y).norm() < 1e-12));
            let lhs = vectorize(&(&a * &b)).unwrap();
            let rhs = kron(&i3, &b.transpose()).mul_vec(&vectorize(&a).unwrap());
            assert!(lhs.as_slice().iter().zip(rhs.as_slice()).all(|(x, y)| (x - y).norm() < 1e-12));
        }
    }

    #[test]
    fn kron_examples() {
        assert_eq!(kron(&CMatrix::identity(2), &CMatrix::identity(2)), CMatrix::identity(4));
        let w = omega3();
        let z = CMatrix::diag(&[re(1.0), w, w * w]);
        let k = kron(&z, &CMatrix::identity(3));
        let expected = [re(1.0), re(1.0), re(1.0), w, w, w, w * w, w * w, w * w];
        for (i, e) in expected.iter().enumerate() {
            assert!((k[(i, i)] - e).norm() < 1e-15);
        }
    }

    #[test]
    fn kron_trace_matches_product_of_traces() {
        let mut r = rng(3);
        let a = random_matrix(&mut r, 3);
        let b = random_matrix(&mut r, 3);
        // Direct-multiplication oracle: tr(A⊗B) = Σ_i Σ_k A_ii B_kk.
        let mut oracle = C64::zero();
        for i in 0..3 {
            for k in 0..3 {
                oracle += a[(i, i)] * b[(k, k)];
            }
        }
        assert!((kron(&a, &b).trace() - oracle).norm() < 1e-12);
    }

    #[test]
    fn eig_diagonal() {
        let e = hermitian_eig(&CMatrix::from_real(3, &[3., 0., 0., 0., 1., 0., 0., 0., 2.])).unwrap();
        assert_eq!(e.values.len(), 3);
        for (got, want) in e.values.iter().zip([1.0, 2.0, 3.0]) {
            assert!((got - want).abs() < 1e-14);
        }
    }

    #[test]
    fn eig_reconstructs_random_hermitian() {
        let mut r = rng(11);
        for n in [1, 2, 3, 5, 9, 16] {
            let h = random_hermitian(&mut r, n);
            let e = hermitian_eig(&h).unwrap();
            let rebuilt = e.map_values(re);
            assert!(rebuilt.approx_eq(&h, 1e-10), "n = {n}");
            let u = e.vector_matrix();
            assert!((&u.adjoint() * &u).approx_eq(&CMatrix::identity(n), 1e-10));
            for (lambda, v) in e.values.iter().zip(&e.vectors) {
                let hv = h.mul_vec(v);
                let lv = v.scale(re(*lambda));
                assert!(hv.as_slice().iter().zip(lv.as_slice()).all(|(x, y)| (x - y).norm() < 1e-10));
            }
            assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn eig_rejects_non_hermitian() {
        let a = CMatrix::from_real(2, &[0., 1., 0., 0.]);
        assert!(matches!(hermitian_eig(&a), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn null_space_trivial_cases() {
        assert!(null_space(&CMatrix::identity(3), NULL_TOL).is_empty());
        let ns = null_space(&CMatrix::zeros(3, 3), NULL_TOL);
        assert_eq!(ns.len(), 3);
        // Pure rounding noise is still the zero matrix.
        let noise = CMatrix::from_fn(3, 3, |i, j| c(1e-16 * (i + 2 * j) as f64, -1e-16));
        assert_eq!(null_space(&noise, NULL_TOL).len(), 3);
        for (i, u) in ns.iter().enumerate() {
            for (j, v) in ns.iter().enumerate() {
                let expected = if i == j { 1.0 } else { 0.0 };
                assert!((u.inner(v) - re(expected)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn null_space_of_rank_deficient_matrix() {
        let mut r = rng(5);
        // 6x6 matrix of rank 4 built from a 6x4 times 4x6 product.
        let left = CMatrix::from_fn(6, 4, |_, _| random_matrix(&mut r, 1)[(0, 0)]);
        let right = CMatrix::from_fn(4, 6, |_, _| random_matrix(&mut r, 1)[(0, 0)]);
        let m = &left * &right;
        let ns = null_space(&m, NULL_TOL);
        assert_eq!(ns.len(), 2);
        let norm = m.operator_norm();
        for v in &ns {
            assert!(m.mul_vec(v).norm() <= 10.0 * NULL_TOL * norm);
            assert!((v.norm() - 1.0).abs() < 1e-12);
        }
        assert!(ns[0].inner(&ns[1]).norm() < 1e-10);
    }

    #[test]
    fn expm_of_generator_is_unitary() {
        let mut r = rng(2);
        let h = random_hermitian(&mut r, 3);
        let u = expm_i_hermitian(&h, 0.7).unwrap();
        assert!((&u.adjoint() * &u).approx_eq(&CMatrix::identity(3), 1e-12));
    }
}
