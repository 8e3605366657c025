//! Exact integer matrices and the Smith normal form.
//!
//! Entries are arbitrary precision; elimination on even modest boundary
//! matrices can push intermediate values past 64 bits.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::ser::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Dense integer matrix stored row-major. Zero rows or columns are allowed
/// and stand for maps to or from the zero group.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries supplied for a {}x{} matrix",
                entries.len(),
                rows,
                cols
            )));
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from small integer rows. All rows must have equal length;
    /// an empty slice gives the 0x0 matrix.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            entries.extend(row.iter().map(|&x| BigInt::from(x)));
        }
        Self::new(rows.len(), cols, entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.entries[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
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
        Ok(out)
    }

    /// Permutes rows and columns: row `i` of the result is row `row_perm[i]`
    /// of `self`, likewise for columns.
    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> Self {
        debug_assert_eq!(row_perm.len(), self.rows);
        debug_assert_eq!(col_perm.len(), self.cols);
        let mut out = Self::zeros(self.rows, self.cols);
        for (i, &pi) in row_perm.iter().enumerate() {
            for (j, &pj) in col_perm.iter().enumerate() {
                out.entries[i * self.cols + j] = self.get(pi, pj).clone();
            }
        }
        out
    }

    /// Determinant by fraction-free (Bareiss) elimination. Independent of the
    /// Smith normal form code path.
    pub fn determinant(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "determinant of a non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a: Vec<Vec<BigInt>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j).clone()).collect())
            .collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(k, i);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        Ok(sign * &a[n - 1][n - 1])
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[target] += factor * row[source]
    fn add_row_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        for j in 0..self.cols {
            let delta = factor * self.get(source, j);
            self.entries[target * self.cols + j] += delta;
        }
    }

    /// col[target] += factor * col[source]
    fn add_col_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        for i in 0..self.rows {
            let delta = factor * self.get(i, source);
            self.entries[i * self.cols + target] += delta;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.get(i, j);
            self.entries[i * self.cols + j] = v;
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
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

#[derive(Serialize, Deserialize)]
struct RawMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<i64>,
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let entries = self
            .entries
            .iter()
            .map(|e| {
                e.to_i64()
                    .ok_or_else(|| S::Error::custom(format!("entry {e} exceeds 64 bits")))
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        RawMatrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = RawMatrix::deserialize(deserializer)?;
        IntMatrix::new(
            raw.rows,
            raw.cols,
            raw.entries.into_iter().map(BigInt::from).collect(),
        )
        .map_err(D::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    /// Diagonal matrix with the same shape as the input.
    pub s: IntMatrix,
    /// Unimodular, rows x rows.
    pub u: IntMatrix,
    /// Unimodular, cols x cols.
    pub v: IntMatrix,
    /// Nonzero diagonal entries of `s`, each positive and dividing the next.
    pub diagonal: Vec<BigInt>,
}

/// Position of the nonzero entry of least absolute value in the trailing
/// block starting at `(t, t)`, first in row-major order on ties.
fn min_abs_nonzero(m: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), BigInt)> = None;
    for i in t..m.rows {
        for j in t..m.cols {
            let v = m.get(i, j);
            if v.is_zero() {
                continue;
            }
            let a = v.abs();
            if best.as_ref().is_none_or(|(_, b)| a < *b) {
                best = Some(((i, j), a));
            }
        }
    }
    best.map(|(pos, _)| pos)
}

/// Computes `U * M * V = S` with `S` diagonal, `U` and `V` unimodular and the
/// nonzero diagonal entries forming a positive divisibility chain.
///
/// Pivoting always picks the smallest nonzero absolute value in the active
/// block, so the output `S` is a deterministic function of `M`.
pub fn smith_normal_form(m: &IntMatrix) -> SnfResult {
    let rows = m.rows;
    let cols = m.cols;
    let mut s = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = min_abs_nonzero(&s, t) else {
            break;
        };
        s.swap_rows(t, pi);
        u.swap_rows(t, pi);
        s.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let mut leftover = false;
            for i in t + 1..rows {
                if s.get(i, t).is_zero() {
                    continue;
                }
                let q = -s.get(i, t).div_floor(s.get(t, t));
                s.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                leftover |= !s.get(i, t).is_zero();
            }
            for j in t + 1..cols {
                if s.get(t, j).is_zero() {
                    continue;
                }
                let q = -s.get(t, j).div_floor(s.get(t, t));
                s.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                leftover |= !s.get(t, j).is_zero();
            }

            if leftover {
                // A remainder smaller than the pivot survived; promote the
                // smallest one and eliminate again.
                let mut best = (t, t, s.get(t, t).abs());
                for i in t + 1..rows {
                    let a = s.get(i, t).abs();
                    if !a.is_zero() && a < best.2 {
                        best = (i, t, a);
                    }
                }
                for j in t + 1..cols {
                    let a = s.get(t, j).abs();
                    if !a.is_zero() && a < best.2 {
                        best = (t, j, a);
                    }
                }
                let (bi, bj, _) = best;
                s.swap_rows(t, bi);
                u.swap_rows(t, bi);
                s.swap_cols(t, bj);
                v.swap_cols(t, bj);
                continue;
            }

            let pivot = s.get(t, t).clone();
            let bad_row =
                (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !s.get(i, j).is_multiple_of(&pivot)));
            match bad_row {
                Some(i) => {
                    let one = BigInt::one();
                    s.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }

        if s.get(t, t).is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }

    let diagonal = (0..t).map(|i| s.get(i, i).clone()).collect();
    SnfResult { s, u, v, diagonal }
}

/// Rank over the rationals, read off the Smith normal form.
pub fn rank(m: &IntMatrix) -> usize {
    smith_normal_form(m).diagonal.len()
}
