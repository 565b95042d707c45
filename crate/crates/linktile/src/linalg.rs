//! Dense exact matrices, reduced row-echelon forms and subspaces of a
//! block-decomposed coordinate space `U = ⊕ U_v`.

use std::fmt;
use std::sync::Arc;

use crate::field::Field;
use crate::subset::Subset;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("ragged matrix: row {row} has {found} entries, expected {expected}")]
    Ragged { row: usize, found: usize, expected: usize },
    #[error("column count {found} does not match ambient dimension {expected}")]
    ColumnMismatch { found: usize, expected: usize },
    #[error("block index {0} out of range")]
    UnknownBlock(usize),
    #[error("duplicate block label `{0}`")]
    DuplicateLabel(String),
    #[error("block `{0}` has dimension 0")]
    EmptyBlock(String),
    #[error("scaling has {found} entries for {expected} blocks")]
    ScalingLength { found: usize, expected: usize },
    #[error("subspaces live in different ambients")]
    AmbientMismatch,
}

#[derive(Clone, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = F::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from rows; `cols` fixes the width when `rows` is empty.
    pub fn from_rows(rows: Vec<Vec<F>>, cols: usize) -> Result<Self, LinalgError> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let n = rows.len();
        for (i, r) in rows.into_iter().enumerate() {
            if r.len() != cols {
                return Err(LinalgError::Ragged { row: i, found: r.len(), expected: cols });
            }
            data.extend(r);
        }
        Ok(Matrix { rows: n, cols, data })
    }

    pub fn diagonal(d: &[F]) -> Self {
        let n = d.len();
        Self::from_fn(n, n, |i, j| if i == j { d[i].clone() } else { F::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, o: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, o.rows, "matrix product shape mismatch");
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * o.cols + j;
                    out.data[idx] = out.data[idx].clone() + a.clone() * b.clone();
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, x: &[F]) -> Vec<F> {
        assert_eq!(self.cols, x.len());
        (0..self.rows)
            .map(|i| {
                self.row(i).iter().zip(x).fold(
                    F::zero(),
                    |acc, (a, b)| {
                        if a.is_zero() || b.is_zero() {
                            acc
                        } else {
                            acc + a.clone() * b.clone()
                        }
                    },
                )
            })
            .collect()
    }

    pub fn scaled(&self, c: &F) -> Matrix<F> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x.clone() * c.clone()).collect() }
    }

    pub fn vstack(&self, o: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, o.cols);
        let mut data = self.data.clone();
        data.extend(o.data.iter().cloned());
        Matrix { rows: self.rows + o.rows, cols: self.cols, data }
    }

    pub fn hstack(&self, o: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.rows, o.rows);
        Self::from_fn(
            self.rows,
            self.cols + o.cols,
            |i, j| {
                if j < self.cols {
                    self.get(i, j).clone()
                } else {
                    o.get(i, j - self.cols).clone()
                }
            },
        )
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix<F> {
        Self::from_fn(self.rows, cols.len(), |i, j| self.get(i, cols[j]).clone())
    }

    /// Reduced row-echelon form with unit pivots; zero rows are dropped.
    /// Returns the reduced matrix and its pivot columns.
    pub fn rref(&self) -> (Matrix<F>, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else { continue };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv().expect("nonzero pivot");
            for j in c..m.cols {
                let v = m.get(r, j).clone();
                if !v.is_zero() {
                    m.set(r, j, v * inv.clone());
                }
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let b = m.get(r, j).clone();
                    if b.is_zero() {
                        continue;
                    }
                    let v = m.get(i, j).clone() - f.clone() * b;
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        m.data.truncate(r * m.cols);
        m.rows = r;
        (m, pivots)
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
        self.rref().1.len()
    }

    /// Basis (as rows) of the right kernel `{x : M x = 0}`.
    pub fn kernel(&self) -> Matrix<F> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Matrix::zeros(free.len(), self.cols);
        for (k, &f) in free.iter().enumerate() {
            out.set(k, f, F::one());
            for (i, &p) in pivots.iter().enumerate() {
                let v = r.get(i, f);
                if !v.is_zero() {
                    out.set(k, p, -v.clone());
                }
            }
        }
        out
    }

    /// Basis (as rows, in RREF) of the column space.
    pub fn column_space(&self) -> Matrix<F> {
        self.transpose().rref().0
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Option<Matrix<F>> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let (r, piv) = self.hstack(&Matrix::identity(n)).rref();
        if piv.len() < n || piv[n - 1] != n - 1 {
            return None;
        }
        Some(Matrix::from_fn(n, n, |i, j| r.get(i, n + j).clone()))
    }

    /// `Some(λ)` with `self = λ·other` (λ may be zero only if `self` is zero).
    pub fn proportionality(&self, other: &Matrix<F>) -> Option<F> {
        if self.rows != other.rows || self.cols != other.cols {
            return None;
        }
        let Some(k) = other.data.iter().position(|x| !x.is_zero()) else {
            return self.is_zero().then(F::one);
        };
        let lambda = self.data[k].clone() / other.data[k].clone();
        self.data.iter().zip(&other.data).all(|(a, b)| *a == lambda.clone() * b.clone()).then_some(lambda)
    }
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}

/// Coordinate space `U = ⊕_{v∈H} U_v` with labelled blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ambient {
    labels: Vec<String>,
    dims: Vec<usize>,
    offsets: Vec<usize>,
}

impl Ambient {
    pub fn new(labels: Vec<String>, dims: Vec<usize>) -> Result<Arc<Self>, LinalgError> {
        assert_eq!(labels.len(), dims.len());
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(LinalgError::DuplicateLabel(l.clone()));
            }
            if dims[i] == 0 {
                return Err(LinalgError::EmptyBlock(l.clone()));
            }
        }
        let mut offsets = Vec::with_capacity(dims.len() + 1);
        let mut acc = 0;
        for d in &dims {
            offsets.push(acc);
            acc += d;
        }
        offsets.push(acc);
        Ok(Arc::new(Ambient { labels, dims, offsets }))
    }

    /// `h` blocks of equal dimension `d`, labelled `0..h`.
    pub fn uniform(h: usize, d: usize) -> Arc<Self> {
        Self::new((0..h).map(|i| i.to_string()).collect(), vec![d; h]).expect("valid uniform ambient")
    }

    pub fn blocks(&self) -> usize {
        self.dims.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn block_dim(&self, i: usize) -> usize {
        self.dims[i]
    }

    pub fn total(&self) -> usize {
        self.offsets[self.dims.len()]
    }

    pub fn block_range(&self, i: usize) -> std::ops::Range<usize> {
        self.offsets[i]..self.offsets[i + 1]
    }

    pub fn block_of(&self, col: usize) -> usize {
        self.offsets.partition_point(|&o| o <= col) - 1
    }

    pub fn columns(&self, blocks: Subset) -> Vec<usize> {
        blocks.iter().flat_map(|b| self.block_range(b)).collect()
    }

    fn check(&self, blocks: Subset) -> Result<(), LinalgError> {
        match (blocks - Subset::full(self.blocks())).first() {
            Some(b) => Err(LinalgError::UnknownBlock(b)),
            None => Ok(()),
        }
    }
}

/// A subspace of an [`Ambient`], stored by its canonical RREF basis.
#[derive(Clone)]
pub struct Subspace<F: Field> {
    ambient: Arc<Ambient>,
    basis: Matrix<F>,
    pivots: Vec<usize>,
}

impl<F: Field> PartialEq for Subspace<F> {
    fn eq(&self, o: &Self) -> bool {
        self.ambient == o.ambient && self.basis == o.basis
    }
}

impl<F: Field> fmt::Debug for Subspace<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {}, {:?})", self.dim(), self.basis)
    }
}

impl<F: Field> Subspace<F> {
    /// Row span of `rows`, reduced to canonical form.
    pub fn from_rows(ambient: Arc<Ambient>, rows: &Matrix<F>) -> Result<Self, LinalgError> {
        if rows.cols() != ambient.total() {
            return Err(LinalgError::ColumnMismatch { found: rows.cols(), expected: ambient.total() });
        }
        let (basis, pivots) = rows.rref();
        Ok(Subspace { ambient, basis, pivots })
    }

    pub fn zero(ambient: Arc<Ambient>) -> Self {
        let n = ambient.total();
        Subspace { ambient, basis: Matrix::zeros(0, n), pivots: vec![] }
    }

    pub fn full(ambient: Arc<Ambient>) -> Self {
        let n = ambient.total();
        Subspace { ambient, basis: Matrix::identity(n), pivots: (0..n).collect() }
    }

    /// The coordinate subspace `U_I`.
    pub fn coordinate(ambient: Arc<Ambient>, blocks: Subset) -> Result<Self, LinalgError> {
        ambient.check(blocks)?;
        let cols = ambient.columns(blocks);
        let mut m = Matrix::zeros(cols.len(), ambient.total());
        for (i, &c) in cols.iter().enumerate() {
            m.set(i, c, F::one());
        }
        Ok(Subspace { ambient, basis: m, pivots: cols })
    }

    pub fn ambient(&self) -> &Arc<Ambient> {
        &self.ambient
    }

    pub fn basis(&self) -> &Matrix<F> {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    fn same_ambient(&self, o: &Self) -> Result<(), LinalgError> {
        if self.ambient == o.ambient {
            Ok(())
        } else {
            Err(LinalgError::AmbientMismatch)
        }
    }

    pub fn contains_vector(&self, x: &[F]) -> bool {
        assert_eq!(x.len(), self.ambient.total());
        // reduce x against the RREF basis
        let mut y = x.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            let f = y[p].clone();
            if f.is_zero() {
                continue;
            }
            for (j, b) in self.basis.row(i).iter().enumerate() {
                if !b.is_zero() {
                    y[j] = y[j].clone() - f.clone() * b.clone();
                }
            }
        }
        y.iter().all(|v| v.is_zero())
    }

    /// Whether `other ⊆ self`.
    pub fn contains(&self, other: &Self) -> Result<bool, LinalgError> {
        self.same_ambient(other)?;
        Ok((0..other.dim()).all(|i| self.contains_vector(other.basis.row(i))))
    }

    pub fn sum(&self, other: &Self) -> Result<Self, LinalgError> {
        self.same_ambient(other)?;
        Self::from_rows(self.ambient.clone(), &self.basis.vstack(&other.basis))
    }

    pub fn intersect(&self, other: &Self) -> Result<Self, LinalgError> {
        self.same_ambient(other)?;
        // x·B1 = y·B2  <=>  (x, y)·[B1; -B2] = 0
        let stacked = self.basis.vstack(&other.basis.scaled(&-F::one()));
        let left = stacked.transpose().kernel();
        let d1 = self.dim();
        let xs = Matrix::from_fn(left.rows(), d1, |i, j| left.get(i, j).clone());
        Self::from_rows(self.ambient.clone(), &xs.mul(&self.basis))
    }

    /// `W^I`: vectors of `W` supported on the blocks of `I`.
    pub fn coordinate_section(&self, blocks: Subset) -> Result<Self, LinalgError> {
        self.ambient.check(blocks)?;
        let outside = self.ambient.columns(blocks.complement(self.ambient.blocks()));
        if outside.is_empty() {
            return Ok(self.clone());
        }
        let combos = self.basis.select_columns(&outside).transpose().kernel();
        Self::from_rows(self.ambient.clone(), &combos.mul(&self.basis))
    }

    /// `W_I`: the projection of `W` onto the blocks of `I`, embedded back in `U`.
    pub fn coordinate_image(&self, blocks: Subset) -> Result<Self, LinalgError> {
        self.ambient.check(blocks)?;
        let keep: Vec<bool> = (0..self.ambient.total()).map(|c| blocks.contains(self.ambient.block_of(c))).collect();
        let m = Matrix::from_fn(self.dim(), self.ambient.total(), |i, j| if keep[j] { self.basis.get(i, j).clone() } else { F::zero() });
        Self::from_rows(self.ambient.clone(), &m)
    }

    /// `φW`, scaling block `v` by `φ_v`.
    pub fn scale(&self, phi: &[F]) -> Result<Self, LinalgError> {
        if phi.len() != self.ambient.blocks() {
            return Err(LinalgError::ScalingLength { found: phi.len(), expected: self.ambient.blocks() });
        }
        let m =
            Matrix::from_fn(self.dim(), self.ambient.total(), |i, j| self.basis.get(i, j).clone() * phi[self.ambient.block_of(j)].clone());
        Self::from_rows(self.ambient.clone(), &m)
    }

    /// Columns of the basis restricted to one block, as a matrix `dim × d_v`.
    pub fn block_part(&self, block: usize) -> Matrix<F> {
        let cols: Vec<usize> = self.ambient.block_range(block).collect();
        self.basis.select_columns(&cols)
    }
}
