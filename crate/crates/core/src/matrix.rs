//! Upper unitriangular matrices with exact rational entries.
//!
//! Every Parikh matrix, linear or circular, lives here. Indices in this API
//! are zero-based: `get(0, dim - 1)` is the top-right entry.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UnitriangularMatrix {
    dim: usize,
    // row-major, dim * dim
    entries: Vec<Rational>,
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    dim: usize,
    entries: Vec<Vec<Rational>>,
}

impl UnitriangularMatrix {
    pub fn identity(dim: usize) -> Self {
        assert!(dim >= 1, "matrix dimension must be positive");
        let mut entries = vec![Rational::zero(); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = Rational::one();
        }
        UnitriangularMatrix { dim, entries }
    }

    /// Validates unit diagonal and zeros below it.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::NotUnitriangular("empty matrix".into()));
        }
        let mut entries = Vec::with_capacity(dim * dim);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != dim {
                return Err(Error::DimensionMismatch(dim, row.len()));
            }
            for (j, x) in row.into_iter().enumerate() {
                if i == j && !x.is_one() {
                    return Err(Error::NotUnitriangular(format!("diagonal entry ({i},{j}) is {x}")));
                }
                if j < i && !x.is_zero() {
                    return Err(Error::NotUnitriangular(format!("entry ({i},{j}) below diagonal is {x}")));
                }
                entries.push(x);
            }
        }
        Ok(UnitriangularMatrix { dim, entries })
    }

    /// Builds a matrix from its strictly-upper entries listed row-major.
    pub fn from_upper(dim: usize, upper: impl IntoIterator<Item = Rational>) -> Result<Self> {
        let mut m = UnitriangularMatrix::identity(dim);
        let mut it = upper.into_iter();
        for i in 0..dim {
            for j in i + 1..dim {
                m.entries[i * dim + j] = it
                    .next()
                    .ok_or_else(|| Error::NotUnitriangular("too few upper entries".into()))?;
            }
        }
        if it.next().is_some() {
            return Err(Error::NotUnitriangular("too many upper entries".into()));
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> &Rational {
        &self.entries[row * self.dim + col]
    }

    pub(crate) fn set(&mut self, row: usize, col: usize, value: Rational) {
        debug_assert!(col > row);
        self.entries[row * self.dim + col] = value;
    }

    pub fn rows(&self) -> Vec<Vec<Rational>> {
        self.entries.chunks(self.dim).map(|r| r.to_vec()).collect()
    }

    /// Strictly-upper entries, row-major.
    pub fn upper_entries(&self) -> impl Iterator<Item = &Rational> + '_ {
        (0..self.dim).flat_map(move |i| (i + 1..self.dim).map(move |j| self.get(i, j)))
    }

    pub fn is_identity(&self) -> bool {
        self.upper_entries().all(Rational::is_zero)
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        let n = self.dim;
        let mut out = UnitriangularMatrix::identity(n);
        for i in 0..n {
            for j in i + 1..n {
                let mut acc = Rational::zero();
                for k in i..=j {
                    let a = self.get(i, k);
                    let b = other.get(k, j);
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    /// `self^p` by square-and-multiply; `p = 0` gives the identity.
    pub fn power(&self, mut p: u64) -> Self {
        let mut result = UnitriangularMatrix::identity(self.dim);
        let mut base = self.clone();
        while p > 0 {
            if p & 1 == 1 {
                result = result.multiply(&base).expect("same dimension");
            }
            p >>= 1;
            if p > 0 {
                base = base.multiply(&base).expect("same dimension");
            }
        }
        result
    }

    /// Exact inverse by back substitution. Always exists since det = 1.
    pub fn inverse(&self) -> Self {
        let n = self.dim;
        let mut inv = UnitriangularMatrix::identity(n);
        // Solve self * X = I column by column, bottom-up.
        for j in 0..n {
            for i in (0..j).rev() {
                let mut acc = Rational::zero();
                for k in i + 1..=j {
                    let a = self.get(i, k);
                    if !a.is_zero() {
                        acc += &(a * inv.get(k, j));
                    }
                }
                inv.set(i, j, -acc);
            }
        }
        inv
    }

    /// Entry `(i, j)` becomes `(-1)^(i+j) * A(i, j)`.
    pub fn alternate(&self) -> Self {
        let mut out = self.clone();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                if (i + j) % 2 == 1 {
                    out.set(i, j, -self.get(i, j));
                }
            }
        }
        out
    }

    /// Comma-joined strictly-upper entries, row-major. Injective on matrices
    /// of a fixed dimension.
    pub fn key(&self) -> String {
        let parts: Vec<String> = self.upper_entries().map(Rational::to_string).collect();
        parts.join(",")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&MatrixJson { dim: self.dim, entries: self.rows() })
            .expect("matrix serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let parsed: MatrixJson = serde_json::from_str(s).map_err(|e| Error::InvalidJson(e.to_string()))?;
        if parsed.entries.len() != parsed.dim {
            return Err(Error::DimensionMismatch(parsed.dim, parsed.entries.len()));
        }
        Self::from_rows(parsed.entries)
    }

    /// First entry (row-major, zero-based) where the two matrices differ.
    pub fn first_difference(&self, other: &Self) -> Option<(usize, usize)> {
        if self.dim != other.dim {
            return Some((0, 0));
        }
        (0..self.dim)
            .flat_map(|i| (i + 1..self.dim).map(move |j| (i, j)))
            .find(|&(i, j)| self.get(i, j) != other.get(i, j))
    }

    /// Determinant of the square submatrix selected by `rows` and `cols`.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Rational {
        assert_eq!(rows.len(), cols.len(), "minor needs a square selection");
        let k = rows.len();
        let mut m: Vec<Vec<Rational>> =
            rows.iter().map(|&r| cols.iter().map(|&c| self.get(r, c).clone()).collect()).collect();
        determinant(&mut m, k)
    }
}

/// Gaussian elimination over the rationals; destroys `m`.
fn determinant(m: &mut [Vec<Rational>], k: usize) -> Rational {
    let mut det = Rational::one();
    for col in 0..k {
        let Some(pivot) = (col..k).find(|&r| !m[r][col].is_zero()) else {
            return Rational::zero();
        };
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det = det * &p;
        for r in col + 1..k {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] / &p;
            for c in col..k {
                let delta = &factor * &m[col][c];
                m[r][c] = &m[r][c] - &delta;
            }
        }
    }
    det
}

impl fmt::Display for UnitriangularMatrix {
    /// One row per line, entries separated by spaces and right-aligned.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.entries.iter().map(Rational::to_string).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(1);
        for (i, row) in cells.chunks(self.dim).enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            write!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for UnitriangularMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .entries
            .chunks(self.dim)
            .map(|r| format!("({})", r.iter().map(Rational::to_string).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

#[cfg(test)]
pub(crate) fn m(rows: &[&[&str]]) -> UnitriangularMatrix {
    UnitriangularMatrix::from_rows(
        rows.iter().map(|r| r.iter().map(|s| s.parse().unwrap()).collect()).collect(),
    )
    .unwrap()
}
