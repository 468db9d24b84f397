//! Dense matrices over the rationals with exact rank computation.
//!
//! Rank is computed by fraction-free (Bareiss) elimination after clearing
//! denominators row by row, so every intermediate value is an integer minor
//! of the scaled matrix.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinalgError {
    #[error("expected {expected} entries for a {rows}x{cols} matrix, got {found}")]
    EntryCount { rows: usize, cols: usize, expected: usize, found: usize },
    #[error("cannot multiply {left_rows}x{left_cols} by {right_rows}x{right_cols}")]
    DimensionMismatch { left_rows: usize, left_cols: usize, right_rows: usize, right_cols: usize },
}

#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: vec![BigRational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigRational::one());
        }
        m
    }

    /// Builds a matrix from row-major entries.
    pub fn new(rows: usize, cols: usize, entries: Vec<BigRational>) -> Result<Self, LinalgError> {
        if entries.len() != rows * cols {
            return Err(LinalgError::EntryCount { rows, cols, expected: rows * cols, found: entries.len() });
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn from_integers(rows: usize, cols: usize, entries: &[i64]) -> Result<Self, LinalgError> {
        Self::new(rows, cols, entries.iter().map(|&v| BigRational::from_integer(BigInt::from(v))).collect())
    }

    /// Builds a matrix from integer rows. All rows must have the same length;
    /// an empty slice gives a 0x0 matrix.
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self, LinalgError> {
        let cols = rows.first().map_or(0, Vec::len);
        let flat: Vec<i64> = rows.iter().flatten().copied().collect();
        Self::from_integers(rows.len(), cols, &flat)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigRational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: BigRational) {
        self.entries[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[BigRational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch {
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: other.rows,
                right_cols: other.cols,
            });
        }
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
                        let idx = r * out.cols + c;
                        out.entries[idx] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Entries as integers, when every entry is integral.
    pub fn to_integer_rows(&self) -> Option<Vec<Vec<BigInt>>> {
        (0..self.rows).map(|r| self.row(r).iter().map(|v| v.is_integer().then(|| v.to_integer())).collect()).collect()
    }

    /// Each row multiplied by the lcm of its denominators. Row scaling by a
    /// nonzero constant preserves rank.
    fn integer_scaled_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|r| {
                let row = self.row(r);
                let denom = row.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
                row.iter().map(|v| v.numer() * (&denom / v.denom())).collect()
            })
            .collect()
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let cells: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Exact rank over the rationals.
pub fn rank(m: &RationalMatrix) -> usize {
    bareiss_rank(m.integer_scaled_rows(), m.cols)
}

fn bareiss_rank(mut a: Vec<Vec<BigInt>>, cols: usize) -> usize {
    let rows = a.len();
    let mut prev_pivot = BigInt::one();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        // first nonzero in this column at or below the current pivot row
        let Some(pivot_row) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, pivot_row);
        let pivot = a[rank][col].clone();
        let (upper, lower) = a.split_at_mut(rank + 1);
        let pivot_row = &upper[rank];
        for row in lower.iter_mut() {
            let factor = row[col].clone();
            for (entry, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                let num = &pivot * &*entry - &factor * p;
                debug_assert!((&num % &prev_pivot).is_zero(), "Bareiss division must be exact");
                *entry = num / &prev_pivot;
            }
        }
        prev_pivot = pivot.abs();
        rank += 1;
    }
    rank
}

/// Dimension of the right kernel: `cols - rank`.
pub fn kernel_dimension(m: &RationalMatrix) -> usize {
    m.cols - rank(m)
}

/// Whether `a * b` is the zero matrix.
pub fn compose_is_zero(a: &RationalMatrix, b: &RationalMatrix) -> Result<bool, LinalgError> {
    Ok(a.mul(b)?.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn zero_matrix_has_rank_zero() {
        assert_eq!(rank(&RationalMatrix::zeros(3, 5)), 0);
        assert_eq!(rank(&RationalMatrix::zeros(0, 0)), 0);
        assert_eq!(rank(&RationalMatrix::zeros(4, 0)), 0);
    }

    #[test]
    fn kernel_of_identity_and_row_of_ones() {
        assert_eq!(kernel_dimension(&RationalMatrix::identity(3)), 0);
        let ones = RationalMatrix::from_rows(&[vec![1, 1]]).unwrap();
        assert_eq!(kernel_dimension(&ones), 1);
    }

    #[test]
    fn fractional_entries_are_scaled_not_rounded() {
        // rows (1/2, 1/3) and (3, 2) are parallel
        let m = RationalMatrix::new(2, 2, vec![q(1, 2), q(1, 3), q(3, 1), q(2, 1)]).unwrap();
        assert_eq!(rank(&m), 1);
        let m = RationalMatrix::new(2, 2, vec![q(1, 2), q(1, 3), q(3, 1), q(3, 1)]).unwrap();
        assert_eq!(rank(&m), 2);
    }

    #[test]
    fn pivot_skips_zero_columns() {
        let m = RationalMatrix::from_rows(&[vec![0, 1, 2], vec![0, 2, 4], vec![0, 0, 1]]).unwrap();
        assert_eq!(rank(&m), 2);
    }

    #[test]
    fn compose_identity_is_nonzero_and_zero_right_factor_is_zero() {
        let i2 = RationalMatrix::identity(2);
        assert!(!compose_is_zero(&i2, &i2).unwrap());
        let a = RationalMatrix::from_rows(&[vec![3, -1, 4], vec![1, 5, 9]]).unwrap();
        assert!(compose_is_zero(&a, &RationalMatrix::zeros(3, 2)).unwrap());
    }

    #[test]
    fn compose_rejects_mismatched_shapes() {
        let a = RationalMatrix::zeros(2, 3);
        let b = RationalMatrix::zeros(2, 3);
        assert!(matches!(compose_is_zero(&a, &b), Err(LinalgError::DimensionMismatch { .. })));
    }

    #[test]
    fn constructor_checks_entry_count() {
        assert!(matches!(
            RationalMatrix::from_integers(2, 2, &[1, 2, 3]),
            Err(LinalgError::EntryCount { expected: 4, found: 3, .. })
        ));
    }
}
