//! Dense complex Hermitian linear-algebra kernels.
//!
//! Everything statistical in this crate reduces to a handful of operations on
//! small (`N_a <= 32`) complex Hermitian matrices: Cholesky factorization,
//! triangular solves, log-determinants, quadratic forms `x^H A^-1 y`, and
//! rank-one accumulation `A + w x x^H`. Explicit inverses are never formed;
//! every `A^-1` contraction goes through one factorization per distinct
//! matrix. A non-positive-definite input is a hard error rather than being
//! silently regularized, so that rank-deficient scatter matrices surface at
//! the call site instead of distorting false-alarm calibration downstream.

use std::cell::Cell;

use num_complex::Complex64;

use crate::error::{Error, Result};

thread_local! {
    static FACTORIZATION_COUNT: Cell<u64> = const { Cell::new(0) };
}

/// Number of Cholesky factorizations performed on the current thread.
///
/// Used by tests to pin the factorization schedule of the selection rules.
pub fn factorization_count() -> u64 {
    FACTORIZATION_COUNT.with(|c| c.get())
}

/// Dense complex matrix in column-major layout.
///
/// Columns are the natural unit here: each column of a data matrix is one
/// spatial snapshot, and every statistic consumes whole columns.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        // cols may be zero: a training matrix with K = 0 is legal.
        assert!(rows > 0, "matrix must have at least one row");
        ComplexMatrix {
            rows,
            cols,
            data: vec![Complex64::ZERO; rows * cols],
        }
    }

    /// Build from a closure over (row, col).
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for j in 0..cols {
            for i in 0..rows {
                m.data[i + j * rows] = f(i, j);
            }
        }
        m
    }

    pub fn from_columns(cols: &[Vec<Complex64>]) -> Self {
        assert!(!cols.is_empty());
        let rows = cols[0].len();
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "ragged columns");
            m.col_mut(j).copy_from_slice(c);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i + j * self.rows]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i + j * self.rows] = v;
    }

    /// Column `j` as a contiguous slice.
    #[inline]
    pub fn col(&self, j: usize) -> &[Complex64] {
        &self.data[j * self.rows..(j + 1) * self.rows]
    }

    #[inline]
    pub fn col_mut(&mut self, j: usize) -> &mut [Complex64] {
        &mut self.data[j * self.rows..(j + 1) * self.rows]
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * c).collect(),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }
}

/// Dense Hermitian matrix, stored in full (both triangles).
///
/// Invariants: `A = A^H` and real diagonal entries. Constructors either build
/// the matrix Hermitian by construction or validate it to 1e-12 relative
/// tolerance. Sizes are small enough that packed storage buys nothing.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    dim: usize,
    data: Vec<Complex64>, // column-major, full storage
}

impl HermitianMatrix {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim > 0, "dimension must be positive");
        HermitianMatrix {
            dim,
            data: vec![Complex64::ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::scaled_identity(dim, 1.0)
    }

    pub fn scaled_identity(dim: usize, s: f64) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i + i * dim] = Complex64::new(s, 0.0);
        }
        m
    }

    /// Build from the lower triangle of a closure; the upper triangle is
    /// filled with conjugates and the diagonal imaginary part is dropped.
    pub fn from_lower_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(dim);
        for j in 0..dim {
            let d = f(j, j);
            m.data[j + j * dim] = Complex64::new(d.re, 0.0);
            for i in j + 1..dim {
                let v = f(i, j);
                m.data[i + j * dim] = v;
                m.data[j + i * dim] = v.conj();
            }
        }
        m
    }

    /// Validate a general matrix as Hermitian (1e-12 relative tolerance,
    /// real diagonal) and take it as-is.
    pub fn try_from_matrix(m: &ComplexMatrix) -> Result<Self> {
        if m.rows() != m.cols() {
            return Err(Error::dim(format!(
                "hermitian source must be square, got {}x{}",
                m.rows(),
                m.cols()
            )));
        }
        let dim = m.rows();
        let scale = m.frobenius_norm().max(f64::MIN_POSITIVE);
        for j in 0..dim {
            for i in 0..dim {
                let d = m.get(i, j) - m.get(j, i).conj();
                if d.norm() > 1e-12 * scale {
                    return Err(Error::dim(format!(
                        "matrix is not Hermitian at ({i},{j}): asymmetry {:.3e}",
                        d.norm()
                    )));
                }
            }
        }
        Ok(HermitianMatrix {
            dim,
            data: m.data.clone(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i + j * self.dim]
    }

    #[inline]
    pub(crate) fn data(&self) -> &[Complex64] {
        &self.data
    }

    #[inline]
    pub(crate) fn data_mut(&mut self) -> &mut [Complex64] {
        &mut self.data
    }

    pub fn add(&self, other: &HermitianMatrix) -> Result<HermitianMatrix> {
        if self.dim != other.dim {
            return Err(Error::dim(format!(
                "hermitian add: {} vs {}",
                self.dim, other.dim
            )));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        Ok(HermitianMatrix {
            dim: self.dim,
            data,
        })
    }

    pub fn scaled(&self, s: f64) -> HermitianMatrix {
        HermitianMatrix {
            dim: self.dim,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn to_matrix(&self) -> ComplexMatrix {
        ComplexMatrix {
            rows: self.dim,
            cols: self.dim,
            data: self.data.clone(),
        }
    }
}

/// Lower-triangular Cholesky factor `L` with `A = L L^H`.
#[derive(Debug, Clone)]
pub struct Factorization {
    dim: usize,
    lower: Vec<Complex64>, // column-major; strictly-upper entries are zero
}

/// Cholesky-factorize a Hermitian positive-definite matrix.
///
/// Fails with [`Error::NotPositiveDefinite`] when a pivot falls at or below
/// the rank-deficiency threshold `dim * eps * max|a_ii|`, which is what a
/// scatter matrix built from fewer than `N_a` columns produces.
pub fn factorize(a: &HermitianMatrix) -> Result<Factorization> {
    FACTORIZATION_COUNT.with(|c| c.set(c.get() + 1));
    let n = a.dim;
    let mut lower = vec![Complex64::ZERO; n * n];
    let max_diag = (0..n).fold(0.0f64, |m, i| m.max(a.get(i, i).re.abs()));
    let tol = n as f64 * f64::EPSILON * max_diag;

    for j in 0..n {
        let mut d = a.get(j, j).re;
        for k in 0..j {
            d -= lower[j + k * n].norm_sqr();
        }
        if !(d > tol) || !d.is_finite() {
            return Err(Error::NotPositiveDefinite { index: j, value: d });
        }
        let ljj = d.sqrt();
        lower[j + j * n] = Complex64::new(ljj, 0.0);
        for i in j + 1..n {
            let mut s = a.get(i, j);
            for k in 0..j {
                s -= lower[i + k * n] * lower[j + k * n].conj();
            }
            lower[i + j * n] = s / ljj;
        }
    }
    Ok(Factorization { dim: n, lower })
}

impl Factorization {
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn lower(&self, i: usize, j: usize) -> Complex64 {
        self.lower[i + j * self.dim]
    }

    /// `L L^H`, for reconstruction checks.
    pub fn reconstruct(&self) -> HermitianMatrix {
        let n = self.dim;
        HermitianMatrix::from_lower_fn(n, |i, j| {
            let mut s = Complex64::ZERO;
            for k in 0..=j.min(i) {
                s += self.lower[i + k * n] * self.lower[j + k * n].conj();
            }
            s
        })
    }

    /// Forward substitution `L y = b`, in place.
    #[inline]
    pub fn forward(&self, b: &mut [Complex64]) {
        let n = self.dim;
        debug_assert_eq!(b.len(), n);
        for i in 0..n {
            let mut s = b[i];
            for k in 0..i {
                s -= self.lower[i + k * n] * b[k];
            }
            b[i] = s / self.lower[i + i * n].re;
        }
    }

    /// Backward substitution `L^H x = y`, in place.
    #[inline]
    pub fn backward(&self, y: &mut [Complex64]) {
        let n = self.dim;
        debug_assert_eq!(y.len(), n);
        for i in (0..n).rev() {
            let mut s = y[i];
            for k in i + 1..n {
                s -= self.lower[k + i * n].conj() * y[k];
            }
            y[i] = s / self.lower[i + i * n].re;
        }
    }

    /// Solve `A x = b` for a single right-hand-side vector, in place.
    #[inline]
    pub fn solve_in_place(&self, b: &mut [Complex64]) {
        self.forward(b);
        self.backward(b);
    }

    pub fn solve_vector(&self, b: &[Complex64]) -> Result<Vec<Complex64>> {
        if b.len() != self.dim {
            return Err(Error::dim(format!(
                "solve: factor dim {} vs rhs len {}",
                self.dim,
                b.len()
            )));
        }
        let mut x = b.to_vec();
        self.solve_in_place(&mut x);
        Ok(x)
    }
}

/// Solve `A X = B` column by column through the triangular factor.
pub fn solve(f: &Factorization, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    if b.rows() != f.dim {
        return Err(Error::dim(format!(
            "solve: factor dim {} vs rhs rows {}",
            f.dim,
            b.rows()
        )));
    }
    let mut x = b.clone();
    for j in 0..x.cols() {
        f.solve_in_place(x.col_mut(j));
    }
    Ok(x)
}

/// `ln det A` from the factor: `2 * sum(ln L_jj)`.
pub fn log_det(f: &Factorization) -> f64 {
    2.0 * (0..f.dim).map(|j| f.lower[j + j * f.dim].re.ln()).sum::<f64>()
}

/// `x^H A^-1 y` through two forward substitutions: `(L^-1 x)^H (L^-1 y)`.
pub fn quad_form(f: &Factorization, x: &[Complex64], y: &[Complex64]) -> Result<Complex64> {
    if x.len() != f.dim || y.len() != f.dim {
        return Err(Error::dim(format!(
            "quad_form: factor dim {} vs vectors {}/{}",
            f.dim,
            x.len(),
            y.len()
        )));
    }
    let mut lx = x.to_vec();
    f.forward(&mut lx);
    if std::ptr::eq(x, y) {
        return Ok(Complex64::new(lx.iter().map(|z| z.norm_sqr()).sum(), 0.0));
    }
    let mut ly = y.to_vec();
    f.forward(&mut ly);
    Ok(lx.iter().zip(&ly).map(|(a, b)| a.conj() * b).sum())
}

/// `A + w x x^H`, Hermitian by construction (the diagonal stays exactly real).
pub fn rank_one_accumulate(
    a: &HermitianMatrix,
    x: &[Complex64],
    weight: f64,
) -> Result<HermitianMatrix> {
    if x.len() != a.dim {
        return Err(Error::dim(format!(
            "rank_one_accumulate: dim {} vs vector {}",
            a.dim,
            x.len()
        )));
    }
    let mut out = a.clone();
    rank_one_accumulate_in_place(&mut out, x, weight);
    Ok(out)
}

/// In-place variant used by the scatter-assembly hot path.
#[inline]
pub(crate) fn rank_one_accumulate_in_place(a: &mut HermitianMatrix, x: &[Complex64], weight: f64) {
    let n = a.dim;
    let data = &mut a.data;
    for j in 0..n {
        let wxj = weight * x[j].conj();
        let col = &mut data[j * n..(j + 1) * n];
        for (i, ci) in col.iter_mut().enumerate() {
            *ci += x[i] * wxj;
        }
        // x_j * conj(x_j) has an exactly-zero imaginary part in IEEE
        // arithmetic, but keep the diagonal pinned real regardless.
        col[j].im = 0.0;
    }
}

/// Complex dot product `x^H y`.
#[inline]
pub fn dot_conj(x: &[Complex64], y: &[Complex64]) -> Complex64 {
    debug_assert_eq!(x.len(), y.len());
    x.iter().zip(y).map(|(a, b)| a.conj() * b).sum()
}
