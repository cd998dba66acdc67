//! Dense matrices over a [`Scalar`] field.
//!
//! Exact mode pivots on the first nonzero entry; tolerant mode pivots on the
//! largest entry and treats anything below `tau * max|entry|` as zero. Pivot
//! choices are deterministic in both modes because downstream basis
//! selection reads them.

use std::fmt;
use std::ops::{Index, IndexMut};

use nalgebra::{Complex, DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::scalar::{Approx, Scalar};

/// Half-width of the integer range used for random coefficients.
pub const RANDOM_BOUND: i64 = 1 << 16;

#[derive(Clone, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: fmt::Display> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.data[r * self.cols..(r + 1) * self.cols].iter().map(|v| v.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl<F> Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (r, c): (usize, usize)) -> &F {
        &self.data[r * self.cols + c]
    }
}

impl<F> IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut F {
        &mut self.data[r * self.cols + c]
    }
}

/// Result of row reduction.
#[derive(Clone, Debug)]
pub struct Rref<F: fmt::Display> {
    pub matrix: Matrix<F>,
    /// Pivot column of each nonzero row, in row order.
    pub pivots: Vec<usize>,
}

impl<F: fmt::Display> Rref<F> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

impl<F: Scalar> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = F::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Builds an `rows x cols` matrix; handy when `rows` may be empty.
    pub fn from_rows_sized(rows: Vec<Vec<F>>, cols: usize) -> Self {
        let r = rows.len();
        assert!(rows.iter().all(|row| row.len() == cols), "ragged rows");
        Matrix { rows: r, cols, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_columns(cols: &[Vec<F>], nrows: usize) -> Self {
        let mut m = Self::zeros(nrows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), nrows);
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| F::from_i64(v)).collect()).collect())
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

    pub fn row(&self, r: usize) -> &[F] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<F> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn max_magnitude(&self) -> f64 {
        self.data.iter().map(Scalar::magnitude).fold(0.0, f64::max)
    }

    pub fn mul(&self, rhs: &Matrix<F>) -> Result<Matrix<F>> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = out[(i, j)].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(F::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    pub fn add(&self, rhs: &Matrix<F>) -> Matrix<F> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.clone() + b.clone()).collect(),
        }
    }

    pub fn sub(&self, rhs: &Matrix<F>) -> Matrix<F> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.clone() - b.clone()).collect(),
        }
    }

    pub fn scale(&self, c: &F) -> Matrix<F> {
        self.map(|v| v.clone() * c.clone())
    }

    pub fn map<G: Scalar>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix<F> {
        let mut out = Self::zeros(rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                out[(i, j)] = self[(r, c)].clone();
            }
        }
        out
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix<F> {
        let all: Vec<usize> = (0..self.cols).collect();
        self.submatrix(rows, &all)
    }

    pub fn select_cols(&self, cols: &[usize]) -> Matrix<F> {
        let all: Vec<usize> = (0..self.rows).collect();
        self.submatrix(&all, cols)
    }

    /// Reduced row-echelon form with columns visited left to right.
    pub fn rref(&self) -> Rref<F> {
        let order: Vec<usize> = (0..self.cols).collect();
        self.rref_ordered(&order)
    }

    /// Reduced row-echelon form visiting columns in `order`.
    ///
    /// Columns absent from `order` are carried along but never pivoted on.
    pub fn rref_ordered(&self, order: &[usize]) -> Rref<F> {
        let mut m = self.clone();
        let scale = self.max_magnitude();
        let negligible = |v: &F| v.is_negligible(scale);
        let mut pivots = Vec::new();
        let mut row = 0;
        for &c in order {
            if row == m.rows {
                break;
            }
            let candidate = if F::EXACT {
                (row..m.rows).find(|&r| !m[(r, c)].is_zero())
            } else {
                (row..m.rows)
                    .filter(|&r| !negligible(&m[(r, c)]))
                    .max_by(|&a, &b| m[(a, c)].magnitude().total_cmp(&m[(b, c)].magnitude()).then(b.cmp(&a)))
            };
            let Some(p) = candidate else {
                for r in row..m.rows {
                    m[(r, c)] = F::zero();
                }
                continue;
            };
            m.swap_rows(row, p);
            let inv = F::one() / m[(row, c)].clone();
            for j in 0..m.cols {
                m[(row, j)] = m[(row, j)].clone() * inv.clone();
            }
            m[(row, c)] = F::one();
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let factor = m[(r, c)].clone();
                if factor.is_zero() {
                    continue;
                }
                for j in 0..m.cols {
                    let pv = m[(row, j)].clone();
                    if !pv.is_zero() {
                        m[(r, j)] = m[(r, j)].clone() - factor.clone() * pv;
                    }
                }
                m[(r, c)] = F::zero();
            }
            pivots.push(c);
            row += 1;
        }
        Rref { matrix: m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank()
    }

    /// Columns form a basis of the right kernel (free columns in natural order).
    pub fn nullspace(&self) -> Matrix<F> {
        let order: Vec<usize> = (0..self.cols).collect();
        self.nullspace_ordered(&order)
    }

    /// Kernel basis whose free columns are determined by pivoting in `order`.
    ///
    /// Each basis vector has a one at its free column and zeros at the other
    /// free columns.
    pub fn nullspace_ordered(&self, order: &[usize]) -> Matrix<F> {
        let rr = self.rref_ordered(order);
        let is_pivot: Vec<bool> = {
            let mut v = vec![false; self.cols];
            for &p in &rr.pivots {
                v[p] = true;
            }
            v
        };
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut k = Self::zeros(self.cols, free.len());
        for (j, &f) in free.iter().enumerate() {
            k[(f, j)] = F::one();
            for (i, &p) in rr.pivots.iter().enumerate() {
                k[(p, j)] = -rr.matrix[(i, f)].clone();
            }
        }
        k
    }

    /// Row and column indices of a maximal nonsingular square submatrix.
    ///
    /// Columns are the leftmost pivots of the row reduction; rows are the
    /// topmost pivots of the reduction of the transpose.
    pub fn max_nonsingular_submatrix(&self) -> (Vec<usize>, Vec<usize>) {
        let cols = self.rref().pivots;
        let rows = self.select_cols(&cols).transpose().rref().pivots;
        (rows, cols)
    }

    /// Solves `self * X = rhs` for square invertible `self`.
    pub fn solve_right(&self, rhs: &Matrix<F>) -> Result<Matrix<F>> {
        if !self.is_square() || self.rows != rhs.rows {
            return Err(Error::Dimension(format!(
                "solve with {}x{} system and {}x{} right-hand side",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, n + rhs.cols);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..rhs.cols {
                aug[(i, n + j)] = rhs[(i, j)].clone();
            }
        }
        let order: Vec<usize> = (0..n).collect();
        let rr = aug.rref_ordered(&order);
        if rr.rank() < n {
            return Err(Error::Singular(format!("{n}x{n} system has rank {}", rr.rank())));
        }
        let rows: Vec<usize> = (0..n).collect();
        let cols: Vec<usize> = (n..n + rhs.cols).collect();
        Ok(rr.matrix.submatrix(&rows, &cols))
    }

    pub fn inverse(&self) -> Result<Matrix<F>> {
        self.solve_right(&Self::identity(self.rows))
    }

    /// Characteristic polynomial `det(zI - M)`, coefficients low degree first.
    pub fn charpoly(&self) -> Vec<F> {
        assert!(self.is_square());
        let n = self.rows;
        // Faddeev-LeVerrier
        let mut coeffs = vec![F::zero(); n + 1];
        coeffs[n] = F::one();
        let mut mk = Self::zeros(n, n);
        for k in 1..=n {
            let mut next = self.mul(&mk).expect("square");
            for i in 0..n {
                next[(i, i)] = next[(i, i)].clone() + coeffs[n - k + 1].clone();
            }
            mk = next;
            let am = self.mul(&mk).expect("square");
            let tr = (0..n).fold(F::zero(), |acc, i| acc + am[(i, i)].clone());
            coeffs[n - k] = -tr / F::from_i64(k as i64);
        }
        coeffs
    }

    /// Minimal polynomial, monic, coefficients low degree first.
    pub fn minimal_polynomial(&self) -> Vec<F> {
        assert!(self.is_square());
        let n = self.rows;
        let mut powers: Vec<Vec<F>> = vec![Self::identity(n).data];
        let mut cur = Self::identity(n);
        loop {
            cur = cur.mul(self).expect("square");
            powers.push(cur.data.clone());
            let d = powers.len() - 1;
            let a = Matrix::from_columns(&powers, n * n);
            let k = a.nullspace();
            if k.cols() > 0 {
                let mut v = k.column(0);
                let lead = v[d].clone();
                for x in v.iter_mut() {
                    *x = x.clone() / lead.clone();
                }
                return v;
            }
        }
    }
}

/// `K * c` for a seeded coefficient vector `c` with entries in `[-B, B] \ {0}`.
pub fn random_combination<F: Scalar>(k: &Matrix<F>, seed: u64) -> Result<Vec<F>> {
    if k.cols() == 0 {
        return Err(Error::Precondition("empty kernel: the ideal is the whole ring".into()));
    }
    let c = random_coefficients::<F>(k.cols(), seed);
    Ok(k.mul_vec(&c))
}

/// Seeded nonzero integers in `[-RANDOM_BOUND, RANDOM_BOUND]`.
pub fn random_coefficients<F: Scalar>(n: usize, seed: u64) -> Vec<F> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| loop {
            let v: i64 = rng.gen_range(-RANDOM_BOUND..=RANDOM_BOUND);
            if v != 0 {
                break F::from_i64(v);
            }
        })
        .collect()
}

/// An eigenpair of a generalized eigenproblem.
#[derive(Clone, Debug)]
pub struct EigenPair {
    pub value: Complex<f64>,
    pub vector: Vec<Complex<f64>>,
}

/// Solves `(A - zB) w = 0` for invertible `B` over the approximate field.
pub fn eig_generalized(a: &Matrix<Approx>, b: &Matrix<Approx>) -> Result<Vec<EigenPair>> {
    if !a.is_square() || !b.is_square() || a.rows() != b.rows() {
        return Err(Error::Dimension(format!(
            "generalized eigenproblem with {}x{} and {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    let n = a.rows();
    if n == 0 {
        return Ok(Vec::new());
    }
    if b.rank() < n {
        return Err(Error::Singular("right-hand matrix of the eigenproblem".into()));
    }
    let to_na = |m: &Matrix<Approx>| DMatrix::from_fn(n, n, |i, j| m[(i, j)].0);
    let (na, nb) = (to_na(a), to_na(b));
    let c = nb
        .clone()
        .lu()
        .solve(&na)
        .ok_or_else(|| Error::Singular("right-hand matrix of the eigenproblem".into()))?;
    let values = c.complex_eigenvalues();
    let cc: DMatrix<Complex<f64>> = c.map(|v| Complex::new(v, 0.0));
    let scale = c.norm().max(1.0);
    let mut out = Vec::with_capacity(n);
    for (idx, &z) in values.iter().enumerate() {
        let shift = z + Complex::new(scale * 1e-10, scale * 1e-11);
        let shifted = &cc - DMatrix::from_diagonal_element(n, n, shift);
        let lu = shifted.lu();
        let mut w = DVector::from_fn(n, |i, _| {
            Complex::new(if i == idx % n { 1.0 } else { 0.5 / (1.0 + i as f64) }, 0.0)
        });
        for _ in 0..4 {
            match lu.solve(&w) {
                Some(next) => {
                    let norm = next.norm();
                    if norm == 0.0 || !norm.is_finite() {
                        break;
                    }
                    w = next / Complex::new(norm, 0.0);
                }
                None => break,
            }
        }
        out.push(EigenPair { value: z, vector: w.iter().copied().collect() });
    }
    Ok(out)
}
