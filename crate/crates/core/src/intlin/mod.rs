//! Exact integer linear algebra: Smith normal form, kernels, integer solving
//! and the structure of finitely generated quotients.

mod lattice;
mod snf;
mod sparse;

pub(crate) use lattice::order_modulo;
pub use lattice::{class_order, kernel_basis, quotient_structure, solve_integer_system, ClassOrder};
pub use snf::{smith_normal_form, SmithForm};
pub use sparse::{invariant_factors, rank, rank_mod_p};

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(IntMatrix { rows: r, cols: c, data: rows.iter().flatten().map(|&v| BigInt::from(v)).collect() })
    }

    /// Matrix whose columns are the given vectors of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<BigInt>]) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::DimensionMismatch(format!(
                    "column {} has length {}, expected {rows}",
                    j + 1,
                    col.len()
                )));
            }
            for (i, v) in col.iter().enumerate() {
                m.data[i * m.cols + j] = v.clone();
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j) * &v[j]).sum()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn to_sparse(&self) -> SparseIntMatrix {
        let mut s = SparseIntMatrix::new(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if !self.get(i, j).is_zero() {
                    s.entries.insert((i, j), self.get(i, j).clone());
                }
            }
        }
        s
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `row[dst] += k * row[src]`
    pub(crate) fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = &self.data[src * self.cols + j];
            if !v.is_zero() {
                let add = k * v;
                self.data[dst * self.cols + j] += add;
            }
        }
    }

    /// `col[dst] += k * col[src]`
    pub(crate) fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = &self.data[i * self.cols + src];
            if !v.is_zero() {
                let add = k * v;
                self.data[i * self.cols + dst] += add;
            }
        }
    }

    pub(crate) fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = std::mem::take(&mut self.data[r * self.cols + j]);
            self.data[r * self.cols + j] = -v;
        }
    }
}

/// Sparse integer matrix with nonzero entries keyed by `(row, col)`, 0-based.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct SparseIntMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), BigInt>,
}

impl SparseIntMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        SparseIntMatrix { rows, cols, entries: BTreeMap::new() }
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Result<Self> {
        Ok(IntMatrix::from_rows(rows)?.to_sparse())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> BigInt {
        self.entries.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        assert!(i < self.rows && j < self.cols, "entry ({i},{j}) outside {}x{}", self.rows, self.cols);
        if v.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), v);
        }
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: &BigInt) {
        let cur = self.get(i, j);
        self.set(i, j, cur + v);
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> {
        self.entries.iter().map(|(&(i, j), v)| (i, j, v))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Columns as sorted sparse vectors.
    pub fn columns(&self) -> Vec<Vec<(usize, BigInt)>> {
        let mut cols = vec![Vec::new(); self.cols];
        for (&(i, j), v) in &self.entries {
            cols[j].push((i, v.clone()));
        }
        for c in &mut cols {
            c.sort_by_key(|&(i, _)| i);
        }
        cols
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.rows];
        for (&(i, jj), v) in &self.entries {
            if jj == j {
                out[i] = v.clone();
            }
        }
        out
    }

    pub fn transpose(&self) -> SparseIntMatrix {
        SparseIntMatrix {
            rows: self.cols,
            cols: self.rows,
            entries: self.entries.iter().map(|(&(i, j), v)| ((j, i), v.clone())).collect(),
        }
    }

    pub fn to_dense(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.rows, self.cols);
        for (&(i, j), v) in &self.entries {
            m.set(i, j, v.clone());
        }
        m
    }

    pub fn mul(&self, other: &SparseIntMatrix) -> Result<SparseIntMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut by_row: Vec<Vec<(usize, &BigInt)>> = vec![Vec::new(); other.rows];
        for (&(k, j), v) in &other.entries {
            by_row[k].push((j, v));
        }
        let mut out = SparseIntMatrix::new(self.rows, other.cols);
        for (&(i, k), a) in &self.entries {
            for &(j, b) in &by_row[k] {
                out.add_to(i, j, &(a * b));
            }
        }
        Ok(out)
    }

    /// Appends the given vectors as extra columns.
    pub fn with_columns(&self, extra: &[Vec<BigInt>]) -> Result<SparseIntMatrix> {
        let mut out = self.clone();
        out.cols += extra.len();
        for (k, v) in extra.iter().enumerate() {
            if v.len() != self.rows {
                return Err(Error::DimensionMismatch("appended column has the wrong length".into()));
            }
            for (i, x) in v.iter().enumerate() {
                out.set(i, self.cols + k, x.clone());
            }
        }
        Ok(out)
    }

    /// Parses the debug text form written by `Display`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (ln, header) = lines.next().ok_or_else(|| Error::parse(1, "missing header"))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::parse(ln, "bad dimension")))
            .collect::<Result<_>>()?;
        let [rows, cols] = dims[..] else {
            return Err(Error::parse(ln, "header must be `rows cols`"));
        };
        let mut m = SparseIntMatrix::new(rows, cols);
        for (ln, line) in lines {
            let parts: Vec<&str> = line.split_whitespace().collect();
            let [i, j, v] = parts[..] else {
                return Err(Error::parse(ln, "entry must be `i j v`"));
            };
            let i: usize = i.parse().map_err(|_| Error::parse(ln, "bad row"))?;
            let j: usize = j.parse().map_err(|_| Error::parse(ln, "bad column"))?;
            let v: BigInt = v.parse().map_err(|_| Error::parse(ln, "bad value"))?;
            if i == 0 || i > rows || j == 0 || j > cols {
                return Err(Error::parse(ln, "entry outside the matrix"));
            }
            m.set(i - 1, j - 1, v);
        }
        Ok(m)
    }
}

impl fmt::Display for SparseIntMatrix {
    /// `rows cols` header, then `i j v` per nonzero entry with 1-based indices.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.rows, self.cols)?;
        for (&(i, j), v) in &self.entries {
            writeln!(f, "{} {} {}", i + 1, j + 1, v)?;
        }
        Ok(())
    }
}

/// A finitely generated abelian group `Z^betti + Z_{d1} + Z_{d2} + ...`.
#[derive(Clone, PartialEq, Eq, Debug, Default, serde::Serialize)]
pub struct HomologyResult {
    pub betti: usize,
    /// Invariant factors greater than one, each dividing the next.
    #[serde(serialize_with = "serialize_bigints")]
    pub torsion: Vec<BigInt>,
}

fn serialize_bigints<S: serde::Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

impl HomologyResult {
    pub fn free(betti: usize) -> Self {
        HomologyResult { betti, torsion: Vec::new() }
    }

    /// Builds the group from invariant factors, dropping units.
    pub fn from_factors(betti: usize, factors: impl IntoIterator<Item = BigInt>) -> Self {
        let mut torsion: Vec<BigInt> = factors.into_iter().map(|d| d.abs()).filter(|d| d > &BigInt::one()).collect();
        torsion.sort();
        HomologyResult { betti, torsion }
    }

    pub fn is_trivial(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for HomologyResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.betti {
            0 => {}
            1 => parts.push("Z".to_string()),
            b => parts.push(format!("Z^{b}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z_{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" (+) "))
        }
    }
}

#[cfg(test)]
pub(crate) fn big_vec(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}
