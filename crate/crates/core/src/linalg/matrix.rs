use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Dense integer matrix with basis labels on rows and columns.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
    row_labels: Vec<String>,
    col_labels: Vec<String>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} cols={:?}", self.rows, self.cols, self.col_labels)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  {:>8}: [{}]", self.row_labels[i], row.join(", "))?;
        }
        Ok(())
    }
}

fn default_labels(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
            row_labels: default_labels("r", rows),
            col_labels: default_labels("c", cols),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, x) in row.iter().enumerate() {
                m.set(i, j, x.clone().into());
            }
        }
        m
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(rows: usize, columns: &[Vec<BigInt>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn with_labels(mut self, row_labels: Vec<String>, col_labels: Vec<String>) -> Self {
        assert_eq!(row_labels.len(), self.rows);
        assert_eq!(col_labels.len(), self.cols);
        self.row_labels = row_labels;
        self.col_labels = col_labels;
        self
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row_labels(&self) -> &[String] {
        &self.row_labels
    }

    pub fn col_labels(&self) -> &[String] {
        &self.col_labels
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: BigInt) {
        self.entries[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entry_by_label(&self, row: &str, col: &str) -> Option<&BigInt> {
        let i = self.row_labels.iter().position(|l| l == row)?;
        let j = self.col_labels.iter().position(|l| l == col)?;
        Some(self.get(i, j))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t.row_labels = self.col_labels.clone();
        t.col_labels = self.row_labels.clone();
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out.row_labels = self.row_labels.clone();
        out.col_labels = other.col_labels.clone();
        out
    }

    pub fn mul_vec(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(x.len(), self.cols, "dimension mismatch in product");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    /// Columns of `self` followed by columns of `other`.
    pub fn hstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows);
        let mut m = Self::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                m.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        m.row_labels = self.row_labels.clone();
        m.col_labels = self.col_labels.iter().chain(&other.col_labels).cloned().collect();
        m
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn vstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.cols);
        let mut m = self.clone();
        m.entries.extend(other.entries.iter().cloned());
        m.rows += other.rows;
        m.row_labels.extend(other.row_labels.iter().cloned());
        m
    }

    pub fn select_columns(&self, cols: &[usize]) -> IntMatrix {
        let mut m = Self::zeros(self.rows, cols.len());
        for i in 0..self.rows {
            for (k, &j) in cols.iter().enumerate() {
                m.set(i, k, self.get(i, j).clone());
            }
        }
        m.row_labels = self.row_labels.clone();
        m.col_labels = cols.iter().map(|&j| self.col_labels[j].clone()).collect();
        m
    }

    pub fn select_rows(&self, keep: &[usize]) -> IntMatrix {
        let mut m = Self::zeros(keep.len(), self.cols);
        for (i, &k) in keep.iter().enumerate() {
            for j in 0..self.cols {
                m.set(i, j, self.get(k, j).clone());
            }
        }
        m
    }

    pub fn permute(&self, row_perm: &[usize], col_perm: &[usize]) -> IntMatrix {
        let mut m = Self::zeros(self.rows, self.cols);
        for (i, &pi) in row_perm.iter().enumerate() {
            for (j, &pj) in col_perm.iter().enumerate() {
                m.set(i, j, self.get(pi, pj).clone());
            }
        }
        m.row_labels = row_perm.iter().map(|&i| self.row_labels[i].clone()).collect();
        m.col_labels = col_perm.iter().map(|&j| self.col_labels[j].clone()).collect();
        m
    }

    /// Rank and, for square input, determinant, by fraction-free elimination.
    fn bareiss(&self) -> (usize, BigInt) {
        let mut a: Vec<Vec<BigInt>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        let mut prev = BigInt::one();
        let mut sign = BigInt::one();
        let mut rank = 0;
        for col in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let Some(piv) = (rank..self.rows).find(|&i| !a[i][col].is_zero()) else {
                continue;
            };
            if piv != rank {
                a.swap(piv, rank);
                sign = -sign;
            }
            for i in rank + 1..self.rows {
                for j in col + 1..self.cols {
                    let v = (&a[rank][col] * &a[i][j] - &a[i][col] * &a[rank][j]) / &prev;
                    a[i][j] = v;
                }
                a[i][col] = BigInt::zero();
            }
            prev = a[rank][col].clone();
            rank += 1;
        }
        let det = if self.rows == self.cols && rank == self.rows {
            if self.rows == 0 {
                BigInt::one()
            } else {
                sign * &a[self.rows - 1][self.cols - 1]
            }
        } else {
            BigInt::zero()
        };
        (rank, det)
    }

    pub fn rank(&self) -> usize {
        self.bareiss().0
    }

    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        self.bareiss().1
    }

    pub fn is_unimodular(&self) -> bool {
        self.rows == self.cols && self.determinant().abs().is_one()
    }

    // elementary operations used by the Smith reduction

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.entries.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.entries.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += q * row[src]
    pub(crate) fn add_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        for j in 0..self.cols {
            let s = &self.entries[src * self.cols + j];
            if !s.is_zero() {
                let v = s * q;
                self.entries[dst * self.cols + j] += v;
            }
        }
    }

    /// col[dst] += q * col[src]
    pub(crate) fn add_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        for i in 0..self.rows {
            let s = &self.entries[i * self.cols + src];
            if !s.is_zero() {
                let v = s * q;
                self.entries[i * self.cols + dst] += v;
            }
        }
    }

    pub(crate) fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let x = std::mem::take(&mut self.entries[i * self.cols + j]);
            self.entries[i * self.cols + j] = -x;
        }
    }
}
