//! Dense compute primitives used by filters and measures.
//!
//! [`Backend`] is the contract; [`Native`] is the reference implementation
//! over `f64` slices. Every operation is pure and deterministic.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sparse::CsrMatrix;

/// Row-major dense `rows × cols` block, one row per node.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseBlock {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl DenseBlock {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseBlock {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn from_row_major(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(DenseBlock { rows, cols, data })
    }

    pub fn from_column(column: Vec<f64>) -> Self {
        DenseBlock {
            rows: column.len(),
            cols: 1,
            data: column,
        }
    }

    /// Builds a block from equal-length columns.
    pub fn from_columns(columns: &[Vec<f64>]) -> Result<Self> {
        let cols = columns.len();
        let rows = columns.first().map_or(0, Vec::len);
        let mut block = DenseBlock::zeros(rows, cols);
        for (j, column) in columns.iter().enumerate() {
            if column.len() != rows {
                return Err(Error::DimensionMismatch {
                    expected: rows,
                    found: column.len(),
                });
            }
            for (i, &v) in column.iter().enumerate() {
                block.data[i * cols + j] = v;
            }
        }
        Ok(block)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub fn into_data(self) -> Vec<f64> {
        self.data
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.data[row * self.cols + col]
    }

    pub fn row(&self, row: usize) -> &[f64] {
        &self.data[row * self.cols..(row + 1) * self.cols]
    }

    pub fn column(&self, col: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self.get(i, col)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<f64>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }

    pub fn scaled(&self, factor: f64) -> Self {
        DenseBlock {
            rows: self.rows,
            cols: self.cols,
            data: scale(&self.data, factor),
        }
    }

    /// `self += factor * other`, shapes must agree.
    pub fn add_scaled(&mut self, factor: f64, other: &DenseBlock) {
        debug_assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a += factor * b;
        }
    }

    /// Absolute entrywise differences, grouped by column.
    pub(crate) fn column_abs_diffs(&self, other: &DenseBlock) -> Vec<Vec<f64>> {
        let mut out = vec![Vec::with_capacity(self.rows); self.cols];
        for i in 0..self.rows {
            for (j, column) in out.iter_mut().enumerate() {
                column.push((self.get(i, j) - other.get(i, j)).abs());
            }
        }
        out
    }
}

/// Dense and sparse primitives required by the ranking algorithms.
pub trait Backend: Send + Sync {
    fn name(&self) -> &'static str;
    fn add(&self, a: &[f64], b: &[f64]) -> Result<Vec<f64>>;
    fn sub(&self, a: &[f64], b: &[f64]) -> Result<Vec<f64>>;
    fn mul(&self, a: &[f64], b: &[f64]) -> Result<Vec<f64>>;
    fn scale(&self, a: &[f64], factor: f64) -> Vec<f64>;
    fn dot(&self, a: &[f64], b: &[f64]) -> Result<f64>;
    fn l1(&self, a: &[f64]) -> f64;
    fn sup(&self, a: &[f64]) -> f64;
    fn sum(&self, a: &[f64]) -> f64;
    fn spmv(&self, matrix: &CsrMatrix, x: &[f64]) -> Result<Vec<f64>>;
    fn spmm(&self, matrix: &CsrMatrix, x: &DenseBlock) -> Result<DenseBlock>;
}

/// Reference single-threaded backend.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Native;

impl Backend for Native {
    fn name(&self) -> &'static str {
        "native"
    }
    fn add(&self, a: &[f64], b: &[f64]) -> Result<Vec<f64>> {
        zip(a, b, |x, y| x + y)
    }
    fn sub(&self, a: &[f64], b: &[f64]) -> Result<Vec<f64>> {
        zip(a, b, |x, y| x - y)
    }
    fn mul(&self, a: &[f64], b: &[f64]) -> Result<Vec<f64>> {
        zip(a, b, |x, y| x * y)
    }
    fn scale(&self, a: &[f64], factor: f64) -> Vec<f64> {
        scale(a, factor)
    }
    fn dot(&self, a: &[f64], b: &[f64]) -> Result<f64> {
        check_len(a, b)?;
        Ok(a.iter().zip(b).map(|(x, y)| x * y).sum())
    }
    fn l1(&self, a: &[f64]) -> f64 {
        l1(a)
    }
    fn sup(&self, a: &[f64]) -> f64 {
        sup(a)
    }
    fn sum(&self, a: &[f64]) -> f64 {
        a.iter().sum()
    }
    fn spmv(&self, matrix: &CsrMatrix, x: &[f64]) -> Result<Vec<f64>> {
        matrix.spmv(x)
    }
    fn spmm(&self, matrix: &CsrMatrix, x: &DenseBlock) -> Result<DenseBlock> {
        matrix.spmm(x)
    }
}

/// Selects the backend used for a computation. Only the native reference
/// backend exists, so this is a configuration hook.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BackendKind {
    #[default]
    Native,
}

impl BackendKind {
    pub fn backend(self) -> &'static dyn Backend {
        match self {
            BackendKind::Native => &Native,
        }
    }
}

fn check_len(a: &[f64], b: &[f64]) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch {
            expected: a.len(),
            found: b.len(),
        });
    }
    Ok(())
}

fn zip(a: &[f64], b: &[f64], f: impl Fn(f64, f64) -> f64) -> Result<Vec<f64>> {
    check_len(a, b)?;
    Ok(a.iter().zip(b).map(|(&x, &y)| f(x, y)).collect())
}

pub(crate) fn scale(a: &[f64], factor: f64) -> Vec<f64> {
    a.iter().map(|x| x * factor).collect()
}

pub(crate) fn l1(a: &[f64]) -> f64 {
    a.iter().map(|x| x.abs()).sum()
}

pub(crate) fn sup(a: &[f64]) -> f64 {
    a.iter().fold(0.0, |m, x| m.max(x.abs()))
}
