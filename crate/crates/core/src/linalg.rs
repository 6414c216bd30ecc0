//! Dense matrices over an exact [`Field`] with the handful of operations the
//! representation layer needs: rank, nullity and a coordinate complement of
//! the column space.

use std::fmt;

use crate::scalar::Field;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    /// Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| F::from_i64(v)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, r: usize, c: usize) -> &F {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F) {
        self.data[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        let v = out.get(r, c).clone() + a.clone() * b.clone();
                        out.set(r, c, v);
                    }
                }
            }
        }
        out
    }

    /// `[[a, 0], [0, b]]`
    pub fn block_diag(a: &Self, b: &Self) -> Self {
        let mut out = Self::zeros(a.rows + b.rows, a.cols + b.cols);
        out.paste(0, 0, a);
        out.paste(a.rows, a.cols, b);
        out
    }

    /// Copies `block` into `self` with its top-left corner at `(r, c)`.
    pub fn paste(&mut self, r: usize, c: usize, block: &Self) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r + i, c + j, block.get(i, j).clone());
            }
        }
    }

    /// Reduces to row echelon form in place and returns the pivot columns.
    pub fn row_reduce(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            if p != row {
                for c in col..self.cols {
                    self.data.swap(p * self.cols + c, row * self.cols + c);
                }
            }
            let pivot = self.get(row, col).clone();
            for r in row + 1..self.rows {
                let lead = self.get(r, col);
                if lead.is_zero() {
                    continue;
                }
                let f = lead.clone() / pivot.clone();
                for c in col..self.cols {
                    let t = self.get(row, c);
                    if t.is_zero() {
                        continue;
                    }
                    let v = self.get(r, c).clone() - f.clone() * t.clone();
                    self.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        // eliminate along the shorter side
        if self.rows < self.cols {
            self.transpose().row_reduce().len()
        } else {
            self.clone().row_reduce().len()
        }
    }

    /// Dimension of the kernel of `x -> self * x`.
    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    /// Row coordinates whose unit vectors span a complement of the column
    /// space.
    pub fn column_space_complement(&self) -> Vec<usize> {
        let pivots = self.transpose().row_reduce();
        let mut is_pivot = vec![false; self.rows];
        for p in pivots {
            is_pivot[p] = true;
        }
        (0..self.rows).filter(|&r| !is_pivot[r]).collect()
    }
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::{BigRational, Ratio};

    type Q = BigRational;

    #[test]
    fn rank_and_nullity() {
        let m = Matrix::<Q>::from_i64_rows(&[vec![1, 2, 3], vec![2, 4, 6], vec![1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        assert_eq!(m.nullity(), 1);
        assert_eq!(Matrix::<Q>::zeros(3, 2).rank(), 0);
        assert_eq!(Matrix::<Q>::identity(4).rank(), 4);
        assert_eq!(Matrix::<Q>::zeros(0, 3).nullity(), 3);
    }

    #[test]
    fn complement_spans_cokernel() {
        let m = Matrix::<Q>::from_i64_rows(&[vec![1, 0], vec![1, 0], vec![0, 0]]);
        let comp = m.column_space_complement();
        assert_eq!(comp.len(), m.rows() - m.rank());
        // image together with the complement spans everything
        let mut full = Matrix::<Q>::zeros(3, 2 + comp.len());
        full.paste(0, 0, &m);
        for (k, &r) in comp.iter().enumerate() {
            full.set(r, 2 + k, Q::from_i64(1));
        }
        assert_eq!(full.rank(), 3);
    }

    #[test]
    fn small_integer_ratios_agree_with_bigrational() {
        let rows = vec![vec![3, -1, 4], vec![1, 5, -9], vec![4, 4, -5]];
        let a = Matrix::<Ratio<i64>>::from_i64_rows(&rows);
        let b = Matrix::<Q>::from_i64_rows(&rows);
        assert_eq!(a.rank(), b.rank());
        assert_eq!(a.rank(), 2);
    }

    #[test]
    fn product_and_block_diag() {
        let a = Matrix::<Q>::from_i64_rows(&[vec![1, 2], vec![0, 1]]);
        let b = Matrix::<Q>::from_i64_rows(&[vec![1, -2], vec![0, 1]]);
        assert_eq!(a.mul(&b), Matrix::identity(2));
        let d = Matrix::block_diag(&a, &Matrix::identity(1));
        assert_eq!(d.shape(), (3, 3));
        assert_eq!(d.rank(), 3);
    }
}
