//! Matrices of series indexed by pairs of subsets.

use std::fmt;
use std::ops::{Add, Mul};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::subset::Subset;

/// Rows indexed by subsets of one generator set, columns by subsets of
/// another, both in increasing bitmask order.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesMatrix<T> {
    rows: Vec<Subset>,
    cols: Vec<Subset>,
    entries: Vec<T>,
}

impl<T: Clone + Zero> SeriesMatrix<T> {
    /// Fill the matrix with rows `Q ⊆ row_set`, columns `J ⊆ col_set`.
    pub fn from_fn(row_set: Subset, col_set: Subset, mut f: impl FnMut(Subset, Subset) -> T) -> Self {
        let rows: Vec<Subset> = row_set.subsets().collect();
        let cols: Vec<Subset> = col_set.subsets().collect();
        let mut entries = Vec::with_capacity(rows.len() * cols.len());
        for &r in &rows {
            for &c in &cols {
                entries.push(f(r, c));
            }
        }
        SeriesMatrix { rows, cols, entries }
    }

    pub fn rows(&self) -> &[Subset] {
        &self.rows
    }

    pub fn cols(&self) -> &[Subset] {
        &self.cols
    }

    pub fn get(&self, row: Subset, col: Subset) -> &T {
        let r = self.rows.binary_search(&row).expect("row subset in range");
        let c = self.cols.binary_search(&col).expect("column subset in range");
        &self.entries[r * self.cols.len() + c]
    }

    pub fn entry(&self, r: usize, c: usize) -> &T {
        &self.entries[r * self.cols.len() + c]
    }

    pub fn row(&self, r: usize) -> &[T] {
        let w = self.cols.len();
        &self.entries[r * w..(r + 1) * w]
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> SeriesMatrix<U> {
        SeriesMatrix {
            rows: self.rows.clone(),
            cols: self.cols.clone(),
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (Subset, Subset, &T)> {
        let w = self.cols.len();
        self.entries
            .iter()
            .enumerate()
            .map(move |(i, e)| (self.rows[i / w], self.cols[i % w], e))
    }
}

impl<T> SeriesMatrix<T>
where
    T: Clone + Zero,
    for<'a> &'a T: Add<&'a T, Output = T> + Mul<&'a T, Output = T>,
{
    /// Matrix product; the column index set of `self` must equal the row
    /// index set of `other`.
    pub fn compose(&self, other: &SeriesMatrix<T>) -> SeriesMatrix<T> {
        assert_eq!(self.cols, other.rows, "inner index sets differ");
        let n = self.rows.len();
        let m = other.cols.len();
        let inner = self.cols.len();
        let mut entries = Vec::with_capacity(n * m);
        for i in 0..n {
            for j in 0..m {
                let mut acc = T::zero();
                for k in 0..inner {
                    let a = self.entry(i, k);
                    let b = other.entry(k, j);
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    acc = &acc + &(a * b);
                }
                entries.push(acc);
            }
        }
        SeriesMatrix {
            rows: self.rows.clone(),
            cols: other.cols.clone(),
            entries,
        }
    }
}

impl<T: fmt::Display> fmt::Display for SeriesMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = self.cols.len();
        for (r, row) in self.rows.iter().enumerate() {
            for (c, col) in self.cols.iter().enumerate() {
                writeln!(f, "[{row}][{col}] {}", self.entries[r * w + c])?;
            }
        }
        Ok(())
    }
}

impl<T: fmt::Debug> fmt::Debug for SeriesMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = self.cols.len().max(1);
        let mut m = f.debug_map();
        for (i, e) in self.entries.iter().enumerate() {
            m.entry(&(self.rows[i / w], self.cols[i % w]), e);
        }
        m.finish()
    }
}
