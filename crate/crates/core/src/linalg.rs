//! Dense complex matrices: products, adjoints, norms, tensor products, partial
//! traces and a cyclic Jacobi eigensolver for Hermitian input.
//!
//! Every tolerance check in the crate uses the max-absolute-entry norm.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest row or column count a tensor product may produce.
pub const DEFAULT_DIM_CAP: usize = 4096;

/// Tolerance used for Hermiticity and unitarity preconditions.
pub const STRUCTURE_TOL: f64 = 1e-10;

/// Sweep cap of the cyclic Jacobi iteration.
pub const MAX_JACOBI_SWEEPS: usize = 100;

pub const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
pub const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

#[inline]
pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Row-major dense complex matrix with finite entries.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for col in 0..self.cols {
                let z = self[(r, col)];
                write!(f, "{:+.6}{:+.6}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::DimensionMismatch(format!(
                "matrix dimensions must be positive, got {rows}x{cols}"
            )));
        }
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        if let Some(pos) = data.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite { row: pos / cols, col: pos % cols });
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds a matrix from nested rows; all rows must have equal length.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Self::new(rows.len(), ncols, rows.concat())
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let rows: Vec<Vec<Complex64>> =
            rows.iter().map(|r| r.iter().map(|&x| c(x, 0.0)).collect()).collect();
        Self::from_rows(&rows)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_diag(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = c(d, 0.0);
        }
        m
    }

    /// Outer product |v><v|.
    pub fn projector(v: &[Complex64]) -> Self {
        let n = v.len();
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = v[i] * v[j].conj();
            }
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn diagonal(&self) -> Vec<Complex64> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Complex64>> {
        self.data.chunks(self.cols).map(<[Complex64]>::to_vec).collect()
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        self.diagonal().into_iter().sum()
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|z| z * s).collect() }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(c(s, 0.0))
    }

    /// Max absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Max absolute entrywise difference; panics on shape mismatch.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    /// `max |A - A^dagger|`, infinite for non-square input.
    pub fn hermitian_deviation(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut dev: f64 = 0.0;
        for i in 0..self.rows {
            for j in i..self.cols {
                dev = dev.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        dev
    }

    /// `max |U^dagger U - I|`, infinite for non-square input.
    pub fn unitary_deviation(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        (&self.adjoint() * self).max_abs_diff(&Self::identity(self.rows))
    }

    /// Symmetrized copy `(A + A^dagger) / 2`.
    pub fn hermitian_part(&self) -> Self {
        let adj = self.adjoint();
        let mut out = self + &adj;
        out.data.iter_mut().for_each(|z| *z *= 0.5);
        out
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.cols, v.len(), "shape mismatch");
        self.data
            .chunks(self.cols)
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `U A U^dagger`.
    pub fn conjugate_by(&self, u: &Self) -> Self {
        &(u * self) * &u.adjoint()
    }

    /// Kronecker product `A ⊗ B` with the default size cap.
    pub fn kron(&self, other: &Self) -> Result<Self> {
        tensor_product_with_cap(self, other, DEFAULT_DIM_CAP)
    }

    /// Partial trace over every subsystem not listed in `keep`.
    pub fn partial_trace(&self, dims: &[usize], keep: &[usize]) -> Result<Self> {
        partial_trace(self, dims, keep)
    }

    pub fn eig_hermitian(&self) -> Result<EigenSystem> {
        eig_hermitian(self)
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in matrix product");
        let mut out = ComplexMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == ZERO {
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

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

/// `(A⊗B)[(i·rB + k), (j·cB + l)] = A[i,j]·B[k,l]`.
pub fn tensor_product(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    tensor_product_with_cap(a, b, DEFAULT_DIM_CAP)
}

pub fn tensor_product_with_cap(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    cap: usize,
) -> Result<ComplexMatrix> {
    let rows = a.rows.checked_mul(b.rows);
    let cols = a.cols.checked_mul(b.cols);
    let (rows, cols) = match (rows, cols) {
        (Some(r), Some(c)) if r <= cap && c <= cap => (r, c),
        _ => {
            return Err(Error::Overflow {
                rows: a.rows.saturating_mul(b.rows),
                cols: a.cols.saturating_mul(b.cols),
                cap,
            })
        }
    };
    let mut out = ComplexMatrix::zeros(rows, cols);
    for i in 0..a.rows {
        for j in 0..a.cols {
            let x = a[(i, j)];
            for k in 0..b.rows {
                for l in 0..b.cols {
                    out[(i * b.rows + k, j * b.cols + l)] = x * b[(k, l)];
                }
            }
        }
    }
    Ok(out)
}

/// Tensor product of state vectors.
pub fn kron_vec(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    a.iter().flat_map(|x| b.iter().map(move |y| x * y)).collect()
}

/// For every composite index, the joint index of the `subset` subsystems (in
/// the order given) and the joint index of the remaining subsystems.
pub(crate) fn split_indices(dims: &[usize], subset: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let total: usize = dims.iter().product();
    let rest: Vec<usize> = (0..dims.len()).filter(|k| !subset.contains(k)).collect();
    let mut sel_idx = Vec::with_capacity(total);
    let mut rest_idx = Vec::with_capacity(total);
    let mut digits = vec![0usize; dims.len()];
    for flat in 0..total {
        let mut rem = flat;
        for k in (0..dims.len()).rev() {
            digits[k] = rem % dims[k];
            rem /= dims[k];
        }
        sel_idx.push(subset.iter().fold(0, |acc, &k| acc * dims[k] + digits[k]));
        rest_idx.push(rest.iter().fold(0, |acc, &k| acc * dims[k] + digits[k]));
    }
    (sel_idx, rest_idx)
}

pub(crate) fn check_subsystems(dims: &[usize], subset: &[usize], total: usize) -> Result<()> {
    if dims.iter().product::<usize>() != total {
        return Err(Error::DimensionMismatch(format!(
            "subsystem dimensions {dims:?} do not multiply to {total}"
        )));
    }
    if subset.is_empty() {
        return Err(Error::DimensionMismatch("empty subsystem selection".into()));
    }
    for (n, &k) in subset.iter().enumerate() {
        if k >= dims.len() {
            return Err(Error::DimensionMismatch(format!(
                "subsystem index {k} out of range for {} subsystems",
                dims.len()
            )));
        }
        if subset[..n].contains(&k) {
            return Err(Error::DimensionMismatch(format!("subsystem {k} listed twice")));
        }
    }
    Ok(())
}

/// Traces out every subsystem not in `keep`. Kept subsystems appear in
/// ascending index order in the result.
pub fn partial_trace(rho: &ComplexMatrix, dims: &[usize], keep: &[usize]) -> Result<ComplexMatrix> {
    if !rho.is_square() {
        return Err(Error::DimensionMismatch("partial trace of a non-square matrix".into()));
    }
    check_subsystems(dims, keep, rho.rows)?;
    let mut keep = keep.to_vec();
    keep.sort_unstable();
    let kept_dim: usize = keep.iter().map(|&k| dims[k]).product();
    let (kidx, tidx) = split_indices(dims, &keep);
    let mut out = ComplexMatrix::zeros(kept_dim, kept_dim);
    for r in 0..rho.rows {
        for col in 0..rho.cols {
            if tidx[r] == tidx[col] {
                out[(kidx[r], kidx[col])] += rho[(r, col)];
            }
        }
    }
    Ok(out)
}

/// Eigenvalues (ascending) and unitary eigenvector columns of a Hermitian
/// matrix.
#[derive(Debug, Clone)]
pub struct EigenSystem {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl EigenSystem {
    /// `V diag(λ) V^dagger`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let lambda = ComplexMatrix::from_diag(&self.eigenvalues);
        lambda.conjugate_by(&self.eigenvectors)
    }

    /// `V diag(f(λ)) V^dagger`.
    pub fn map_eigenvalues(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let mapped: Vec<f64> = self.eigenvalues.iter().map(|&x| f(x)).collect();
        ComplexMatrix::from_diag(&mapped).conjugate_by(&self.eigenvectors)
    }
}

/// Cyclic complex Jacobi diagonalization.
///
/// Each rotation first removes the phase of `a_pq` with a diagonal unitary and
/// then applies a real Givens rotation, so `G = D·R` acts on the `(p, q)`
/// plane and `(G^dagger A G)_pq = 0`. Eigenpairs are sorted by ascending
/// eigenvalue and every eigenvector is rephased so its first non-negligible
/// component is real and positive.
pub fn eig_hermitian(a: &ComplexMatrix) -> Result<EigenSystem> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch("eigendecomposition of a non-square matrix".into()));
    }
    let deviation = a.hermitian_deviation();
    if deviation > STRUCTURE_TOL {
        return Err(Error::NotHermitian { deviation });
    }
    let n = a.rows;
    let mut m = a.hermitian_part();
    let mut v = ComplexMatrix::identity(n);

    let frob: f64 = m.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let threshold = 1e-15 * frob.max(f64::MIN_POSITIVE);

    let mut converged = n == 1;
    for _ in 0..MAX_JACOBI_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| m[(i, j)].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= threshold {
            converged = true;
            break;
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                rotate(&mut m, &mut v, p, q);
            }
        }
    }
    if !converged {
        return Err(Error::NoConvergence { sweeps: MAX_JACOBI_SWEEPS });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(i, i)].re.total_cmp(&m[(j, j)].re));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| m[(i, i)].re).collect();
    let mut vectors = ComplexMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        let col = v.column(src);
        let phase = col
            .iter()
            .find(|z| z.norm() > 1e-10)
            .map_or(ONE, |z| z.conj() / z.norm());
        for (i, z) in col.iter().enumerate() {
            vectors[(i, dst)] = z * phase;
        }
    }
    Ok(EigenSystem { eigenvalues, eigenvectors: vectors })
}

fn rotate(m: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = m[(p, q)];
    let mag = apq.norm();
    if mag < f64::MIN_POSITIVE {
        return;
    }
    let app = m[(p, p)].re;
    let aqq = m[(q, q)].re;
    let theta = (aqq - app) / (2.0 * mag);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        let sign = if theta >= 0.0 { 1.0 } else { -1.0 };
        sign / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let cs = 1.0 / (t * t + 1.0).sqrt();
    let sn = t * cs;
    // e^{-i phi} with a_pq = |a_pq| e^{i phi}
    let phase = apq.conj() / mag;

    let g_pp = c(cs, 0.0);
    let g_pq = c(sn, 0.0);
    let g_qp = phase * (-sn);
    let g_qq = phase * cs;

    let n = m.rows;
    for k in 0..n {
        let akp = m[(k, p)];
        let akq = m[(k, q)];
        m[(k, p)] = akp * g_pp + akq * g_qp;
        m[(k, q)] = akp * g_pq + akq * g_qq;
    }
    for k in 0..n {
        let apk = m[(p, k)];
        let aqk = m[(q, k)];
        m[(p, k)] = g_pp.conj() * apk + g_qp.conj() * aqk;
        m[(q, k)] = g_pq.conj() * apk + g_qq.conj() * aqk;
    }
    m[(p, q)] = ZERO;
    m[(q, p)] = ZERO;
    m[(p, p)] = c(m[(p, p)].re, 0.0);
    m[(q, q)] = c(m[(q, q)].re, 0.0);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * g_pp + vkq * g_qp;
        v[(k, q)] = vkp * g_pq + vkq * g_qq;
    }
}
