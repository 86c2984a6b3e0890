use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::arith::LocalScalar;

/// Dense row-major matrix over Z_(3).
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<LocalScalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![LocalScalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, LocalScalar::one());
        }
        m
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<LocalScalar>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn from_rows(rows: &[Vec<LocalScalar>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols);
            for (j, x) in r.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let rows: Vec<Vec<LocalScalar>> =
            rows.iter().map(|r| r.iter().map(|&x| LocalScalar::from(x)).collect()).collect();
        Self::from_rows(&rows)
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &LocalScalar {
        &self.data[i * self.cols + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut LocalScalar {
        &mut self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: LocalScalar) {
        self.data[i * self.cols + j] = x;
    }

    pub fn column(&self, j: usize) -> Vec<LocalScalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row(&self, i: usize) -> &[LocalScalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(LocalScalar::is_zero)
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows);
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let prod = a * b;
                    *out.get_mut(i, j) += &prod;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[LocalScalar]) -> Vec<LocalScalar> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = LocalScalar::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    /// Horizontal concatenation `[self | rhs]`.
    pub fn hcat(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.rows, rhs.rows);
        let mut out = Matrix::zeros(self.rows, self.cols + rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..rhs.cols {
                out.set(i, self.cols + j, rhs.get(i, j).clone());
            }
        }
        out
    }

    /// Keeps the listed columns, in order.
    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.rows, cols.len());
        for i in 0..self.rows {
            for (jj, &j) in cols.iter().enumerate() {
                out.set(i, jj, self.get(i, j).clone());
            }
        }
        out
    }

    /// Keeps the first `n` rows.
    pub fn top_rows(&self, n: usize) -> Matrix {
        let mut out = Matrix::zeros(n, self.cols);
        for i in 0..n {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
        }
        out
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[dst] += f · row[src]`.
    pub(crate) fn add_row_multiple(&mut self, dst: usize, src: usize, f: &LocalScalar) {
        for j in 0..self.cols {
            let s = self.get(src, j);
            if s.is_zero() {
                continue;
            }
            let p = f * s;
            *self.get_mut(dst, j) += &p;
        }
    }

    /// `col[dst] += f · col[src]`.
    pub(crate) fn add_col_multiple(&mut self, dst: usize, src: usize, f: &LocalScalar) {
        for i in 0..self.rows {
            let s = self.get(i, src);
            if s.is_zero() {
                continue;
            }
            let p = f * s;
            *self.get_mut(i, dst) += &p;
        }
    }

    pub(crate) fn scale_row(&mut self, i: usize, f: &LocalScalar) {
        for j in 0..self.cols {
            let x = self.get(i, j);
            if !x.is_zero() {
                let y = x * f;
                self.set(i, j, y);
            }
        }
    }

    pub(crate) fn scale_col(&mut self, j: usize, f: &LocalScalar) {
        for i in 0..self.rows {
            let x = self.get(i, j);
            if !x.is_zero() {
                let y = x * f;
                self.set(i, j, y);
            }
        }
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Sparse matrix with labelled rows and columns. Zero entries are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LabeledMatrix {
    pub row_labels: Vec<String>,
    pub col_labels: Vec<String>,
    #[serde(serialize_with = "serialize_entries")]
    entries: BTreeMap<(usize, usize), LocalScalar>,
}

fn serialize_entries<S: serde::Serializer>(
    entries: &BTreeMap<(usize, usize), LocalScalar>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(entries.len()))?;
    for ((i, j), x) in entries {
        seq.serialize_element(&serde_json::json!({
            "row": i, "col": j, "value": x.to_string()
        }))?;
    }
    seq.end()
}

impl LabeledMatrix {
    pub fn new(row_labels: Vec<String>, col_labels: Vec<String>) -> Self {
        LabeledMatrix { row_labels, col_labels, entries: BTreeMap::new() }
    }

    pub fn nrows(&self) -> usize {
        self.row_labels.len()
    }

    pub fn ncols(&self) -> usize {
        self.col_labels.len()
    }

    pub fn set(&mut self, i: usize, j: usize, x: LocalScalar) {
        assert!(i < self.nrows() && j < self.ncols());
        if x.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), x);
        }
    }

    pub fn get(&self, i: usize, j: usize) -> LocalScalar {
        self.entries.get(&(i, j)).cloned().unwrap_or_else(LocalScalar::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &LocalScalar)> {
        self.entries.iter()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn column(&self, j: usize) -> Vec<LocalScalar> {
        (0..self.nrows()).map(|i| self.get(i, j)).collect()
    }

    pub fn to_dense(&self) -> Matrix {
        let mut m = Matrix::zeros(self.nrows(), self.ncols());
        for (&(i, j), x) in &self.entries {
            m.set(i, j, x.clone());
        }
        m
    }

    pub fn from_dense(m: &Matrix, row_labels: Vec<String>, col_labels: Vec<String>) -> Self {
        assert_eq!(m.nrows(), row_labels.len());
        assert_eq!(m.ncols(), col_labels.len());
        let mut out = LabeledMatrix::new(row_labels, col_labels);
        for i in 0..m.nrows() {
            for j in 0..m.ncols() {
                let x = m.get(i, j);
                if !x.is_zero() {
                    out.entries.insert((i, j), x.clone());
                }
            }
        }
        out
    }

    /// Keeps the listed columns.
    pub fn select_columns(&self, cols: &[usize]) -> LabeledMatrix {
        let labels = cols.iter().map(|&j| self.col_labels[j].clone()).collect();
        let mut out = LabeledMatrix::new(self.row_labels.clone(), labels);
        for (jj, &j) in cols.iter().enumerate() {
            for i in 0..self.nrows() {
                if let Some(x) = self.entries.get(&(i, j)) {
                    out.entries.insert((i, jj), x.clone());
                }
            }
        }
        out
    }
}
