//! Exponent matrices of torus monomials.
//!
//! Row `i` is the weight `α_i ∈ (½ℤ)^N` carried by the eigenvalue variables
//! `x_{i1}, ..., x_{iN}`. Entries are stored doubled so that half-integer
//! weights stay integral.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{structural, Result};
use crate::group::{Family, GroupSpec};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentMatrix {
    rows: usize,
    cols: usize,
    doubled: Vec<i64>,
}

impl ExponentMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExponentMatrix { rows, cols, doubled: vec![0; rows * cols] }
    }

    /// From integer exponents, one inner vector per row.
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(structural!("ragged exponent rows"));
        }
        let doubled = rows.iter().flatten().map(|&e| 2 * e).collect();
        Ok(ExponentMatrix { rows: rows.len(), cols, doubled })
    }

    /// From doubled exponents in row-major order.
    pub fn from_doubled(rows: usize, cols: usize, doubled: Vec<i64>) -> Result<Self> {
        if doubled.len() != rows * cols {
            return Err(structural!("expected {} entries, got {}", rows * cols, doubled.len()));
        }
        Ok(ExponentMatrix { rows, cols, doubled })
    }

    /// The monomial `x_i^α` with every other row zero.
    pub fn single_row(rows: usize, i: usize, alpha: &[i64]) -> Self {
        let mut m = Self::zeros(rows, alpha.len());
        for (j, &a) in alpha.iter().enumerate() {
            m.doubled[i * alpha.len() + j] = 2 * a;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn doubled(&self) -> &[i64] {
        &self.doubled
    }

    pub fn get_doubled(&self, i: usize, j: usize) -> i64 {
        self.doubled[i * self.cols + j]
    }

    pub fn row_doubled(&self, i: usize) -> &[i64] {
        &self.doubled[i * self.cols..(i + 1) * self.cols]
    }

    /// Integer exponents of row `i`; `None` if the row carries half-integers.
    pub fn row_int(&self, i: usize) -> Option<Vec<i64>> {
        self.row_doubled(i).iter().map(|&d| (d % 2 == 0).then_some(d / 2)).collect()
    }

    pub fn has_half(&self) -> bool {
        self.doubled.iter().any(|d| d % 2 != 0)
    }

    pub fn is_zero(&self) -> bool {
        self.doubled.iter().all(|&d| d == 0)
    }

    pub fn row_is_zero(&self, i: usize) -> bool {
        self.row_doubled(i).iter().all(|&d| d == 0)
    }

    pub fn nonzero_rows(&self) -> usize {
        (0..self.rows).filter(|&i| !self.row_is_zero(i)).count()
    }

    pub fn same_shape(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert!(self.same_shape(other));
        let doubled = self.doubled.iter().zip(&other.doubled).map(|(a, b)| a + b).collect();
        ExponentMatrix { rows: self.rows, cols: self.cols, doubled }
    }

    pub fn neg(&self) -> Self {
        ExponentMatrix { rows: self.rows, cols: self.cols, doubled: self.doubled.iter().map(|d| -d).collect() }
    }

    /// Replace row `i` by the given doubled entries.
    pub fn with_row_doubled(&self, i: usize, row: &[i64]) -> Self {
        let mut out = self.clone();
        out.doubled[i * self.cols..(i + 1) * self.cols].copy_from_slice(row);
        out
    }

    /// Add the doubled vector `shift` to every row.
    pub fn shift_rows(&self, shift: &[i64]) -> Self {
        let mut out = self.clone();
        for i in 0..self.rows {
            for (j, s) in shift.iter().enumerate() {
                out.doubled[i * self.cols + j] += s;
            }
        }
        out
    }

    /// Check shape and half-integer admissibility for `g`.
    pub fn validate_for(&self, g: &GroupSpec) -> Result<()> {
        if self.rows != g.rank || self.cols != g.factors {
            return Err(structural!(
                "exponent matrix is {}x{}, group {} needs {}x{}",
                self.rows,
                self.cols,
                g,
                g.rank,
                g.factors
            ));
        }
        if !self.has_half() {
            return Ok(());
        }
        if g.family != Family::SOeven {
            return Err(structural!("half-integer exponents are only allowed for SO(2n)"));
        }
        // Spin weights: within a column, all entries are integers or all are half-integers.
        for j in 0..self.cols {
            let parity = self.get_doubled(0, j).rem_euclid(2);
            if (1..self.rows).any(|i| self.get_doubled(i, j).rem_euclid(2) != parity) {
                return Err(structural!("column {j} mixes integer and half-integer exponents"));
            }
        }
        Ok(())
    }

    /// Most frequent row (lexicographically smallest among ties) and its multiplicity.
    pub fn dominant_row(&self) -> (Vec<i64>, usize) {
        let mut counts: BTreeMap<&[i64], usize> = BTreeMap::new();
        for i in 0..self.rows {
            *counts.entry(self.row_doubled(i)).or_default() += 1;
        }
        // BTreeMap iterates in increasing order, so the first maximum is the lexicographic minimum.
        let (row, count) = counts
            .iter()
            .fold((None, 0), |(best, bc), (r, &c)| if c > bc { (Some(*r), c) } else { (best, bc) });
        (row.map(<[i64]>::to_vec).unwrap_or_default(), count)
    }

    /// Representative modulo the relations `∏_i x_{ij} = 1` of SL(n): shift the
    /// dominant row to zero. Identity for every other family.
    pub fn canonical_mod_relations(&self, g: &GroupSpec) -> Self {
        if g.family != Family::SL {
            return self.clone();
        }
        let (row, _) = self.dominant_row();
        let neg: Vec<i64> = row.iter().map(|d| -d).collect();
        self.shift_rows(&neg)
    }

    /// True (undoubled) exponent at `(i, j)` as `f64`, for display.
    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.get_doubled(i, j) as f64 / 2.0
    }
}

impl fmt::Debug for ExponentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for ExponentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ",")?;
                }
                let d = self.get_doubled(i, j);
                if d % 2 == 0 {
                    write!(f, "{}", d / 2)?;
                } else {
                    write!(f, "{}/2", d)?;
                }
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}
