use std::fmt;

use crate::error::{Error, Result};
use crate::semiring::{sum, Semiring};

/// Dense row-major matrix over a semiring. Row vectors are `1×n`, column
/// vectors `n×1`.
#[derive(Clone)]
pub struct Matrix<S: Semiring> {
    semiring: S,
    rows: usize,
    cols: usize,
    entries: Vec<S::Elem>,
}

impl<S: Semiring> PartialEq for Matrix<S> {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.semiring == other.semiring
            && self.entries == other.entries
    }
}

impl<S: Semiring> Eq for Matrix<S> {}

impl<S: Semiring> fmt::Debug for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix{}x{}[", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str("; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(|e| self.semiring.format_elem(e)).collect();
            f.write_str(&row.join(" "))?;
        }
        f.write_str("]")
    }
}

fn semiring_check<S: Semiring>(a: &S, b: &S) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::SemiringMismatch {
            left: a.id(),
            right: b.id(),
        })
    }
}

impl<S: Semiring> Matrix<S> {
    pub fn new(semiring: S, rows: usize, cols: usize, entries: Vec<S::Elem>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                op: "construct",
                left: (rows, cols),
                right: (entries.len(), 1),
            });
        }
        if !entries.iter().all(|e| semiring.contains(e)) {
            return Err(Error::NotInCarrier(semiring.id()));
        }
        Ok(Matrix {
            semiring,
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(semiring: S, rows: Vec<Vec<S::Elem>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::InvalidAutomaton("ragged matrix rows".into()));
        }
        Self::new(semiring, r, c, rows.into_iter().flatten().collect())
    }

    pub fn row_vector(semiring: S, entries: Vec<S::Elem>) -> Result<Self> {
        let n = entries.len();
        Self::new(semiring, 1, n, entries)
    }

    pub fn column_vector(semiring: S, entries: Vec<S::Elem>) -> Result<Self> {
        let n = entries.len();
        Self::new(semiring, n, 1, entries)
    }

    pub fn zeros(semiring: S, rows: usize, cols: usize) -> Self {
        let entries = vec![semiring.zero(); rows * cols];
        Matrix {
            semiring,
            rows,
            cols,
            entries,
        }
    }

    /// `E_n`: one on the diagonal, zero elsewhere.
    pub fn identity(semiring: S, n: usize) -> Self {
        let mut m = Self::zeros(semiring, n, n);
        for i in 0..n {
            m.entries[i * n + i] = m.semiring.one();
        }
        m
    }

    /// Row vector with a single one at `index`.
    pub fn unit_row(semiring: S, len: usize, index: usize) -> Self {
        let mut m = Self::zeros(semiring, 1, len);
        m.entries[index] = m.semiring.one();
        m
    }

    pub fn semiring(&self) -> &S {
        &self.semiring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn entries(&self) -> &[S::Elem] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &S::Elem {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        &self.entries[i * self.cols + j]
    }

    /// Replaces one entry.
    pub fn set(&mut self, i: usize, j: usize, v: S::Elem) -> Result<()> {
        if !self.semiring.contains(&v) {
            return Err(Error::NotInCarrier(self.semiring.id()));
        }
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        self.entries[i * self.cols + j] = v;
        Ok(())
    }

    pub fn row(&self, i: usize) -> &[S::Elem] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[S::Elem]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn column(&self, j: usize) -> Vec<S::Elem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        Matrix {
            semiring: self.semiring.clone(),
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        semiring_check(&self.semiring, &other.semiring)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                op: "multiply",
                left: self.dims(),
                right: other.dims(),
            });
        }
        let s = &self.semiring;
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = s.zero();
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    if s.is_zero(a) {
                        continue;
                    }
                    acc = s.add(&acc, &s.mul(a, other.get(k, j))?);
                }
                entries.push(acc);
            }
        }
        Ok(Matrix {
            semiring: s.clone(),
            rows: self.rows,
            cols: other.cols,
            entries,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        semiring_check(&self.semiring, &other.semiring)?;
        if self.dims() != other.dims() {
            return Err(Error::DimensionMismatch {
                op: "add",
                left: self.dims(),
                right: other.dims(),
            });
        }
        let s = &self.semiring;
        Ok(Matrix {
            semiring: s.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| s.add(a, b))
                .collect(),
        })
    }

    /// Left scalar action `c·A`.
    pub fn scale(&self, c: &S::Elem) -> Result<Self> {
        let s = &self.semiring;
        Ok(Matrix {
            semiring: s.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| s.mul(c, e)).collect::<Result<_, _>>()?,
        })
    }

    /// Inner product of a row vector and a column vector as a scalar.
    pub fn dot(&self, column: &Self) -> Result<S::Elem> {
        if self.rows != 1 || column.cols != 1 {
            return Err(Error::DimensionMismatch {
                op: "dot",
                left: self.dims(),
                right: column.dims(),
            });
        }
        Ok(self.mul(column)?.entries.pop_single())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| self.semiring.is_zero(e))
    }
}

trait PopSingle<T> {
    fn pop_single(self) -> T;
}

impl<T> PopSingle<T> for Vec<T> {
    fn pop_single(mut self) -> T {
        debug_assert_eq!(self.len(), 1);
        self.pop().expect("1x1 product")
    }
}

/// Row vector times matrix without allocating intermediate matrices.
pub(crate) fn row_times<S: Semiring>(s: &S, row: &[S::Elem], m: &Matrix<S>) -> Result<Vec<S::Elem>> {
    debug_assert_eq!(row.len(), m.rows());
    let mut out = vec![s.zero(); m.cols()];
    for (k, a) in row.iter().enumerate() {
        if s.is_zero(a) {
            continue;
        }
        for (j, o) in out.iter_mut().enumerate() {
            *o = s.add(o, &s.mul(a, m.get(k, j))?);
        }
    }
    Ok(out)
}

/// Inner product of two equally long slices.
pub(crate) fn inner<S: Semiring>(s: &S, u: &[S::Elem], v: &[S::Elem]) -> Result<S::Elem> {
    let prods = u.iter().zip(v).map(|(a, b)| s.mul(a, b)).collect::<Result<Vec<_>, _>>()?;
    Ok(sum(s, &prods))
}

/// True when exactly one entry is nonzero and it equals one.
pub fn is_unit_vector<S: Semiring>(s: &S, v: &[S::Elem]) -> bool {
    let mut nonzero = v.iter().filter(|e| !s.is_zero(e));
    matches!((nonzero.next(), nonzero.next()), (Some(e), None) if *e == s.one())
}

pub fn mat_mul<S: Semiring>(a: &Matrix<S>, b: &Matrix<S>) -> Result<Matrix<S>> {
    a.mul(b)
}

pub fn mat_add<S: Semiring>(a: &Matrix<S>, b: &Matrix<S>) -> Result<Matrix<S>> {
    a.add(b)
}

pub fn mat_identity<S: Semiring>(s: S, n: usize) -> Matrix<S> {
    Matrix::identity(s, n)
}
