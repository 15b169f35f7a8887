//! Exact rational scalars, sparse-row matrices and row reduction.
//!
//! Every structure constant this crate deals with is an integer, so all the
//! linear systems that arise have rational coefficients. Gaussian elimination
//! over a field commutes with field extension, which means the rank and the
//! nullspace dimension computed over `Q` are the same as over `C`. Nothing in
//! here uses floating point; equality is always exact.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("entry ({row}, {col}) is outside a {rows}x{cols} matrix")]
    OutOfRange {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is singular")]
    Singular,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid scalar literal {0:?}; expected \"p\" or \"p/q\"")]
pub struct ParseScalarError(String);

/// An exact rational number, always kept in lowest terms with a positive
/// denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Scalar(BigRational);

impl Scalar {
    pub fn zero() -> Self {
        Scalar(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar(BigRational::one())
    }

    pub fn from_int(value: i64) -> Self {
        Scalar(BigRational::from_integer(BigInt::from(value)))
    }

    /// `numer / denom`. Panics if `denom` is zero.
    pub fn ratio(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Scalar(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn from_bigints(numer: BigInt, denom: BigInt) -> Option<Self> {
        if denom.is_zero() {
            None
        } else {
            Some(Scalar(BigRational::new(numer, denom)))
        }
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Scalar(self.0.abs())
    }

    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Scalar(self.0.recip()))
        }
    }

    /// `(-1)^exp`.
    pub fn sign_power(exp: u32) -> Self {
        if exp.is_multiple_of(2) {
            Scalar::one()
        } else {
            -Scalar::one()
        }
    }

    /// The non-negative rational square root, when one exists.
    pub fn rational_sqrt(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let n = self.numer();
        let d = self.denom();
        let rn = n.sqrt();
        let rd = d.sqrt();
        if &(&rn * &rn) == n && &(&rd * &rd) == d {
            Some(Scalar(BigRational::new(rn, rd)))
        } else {
            None
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Scalar {
    type Err = ParseScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseScalarError(s.to_owned());
        let t = s.trim();
        let (n, d) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| err())?;
        let d: BigInt = d.parse().map_err(|_| err())?;
        Scalar::from_bigints(n, d).ok_or_else(err)
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl From<i64> for Scalar {
    fn from(value: i64) -> Self {
        Scalar::from_int(value)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $assign_trait:ident, $assign_method:ident) => {
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar((self.0).$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                Scalar((self.0).$method(&rhs.0))
            }
        }
        impl<'a> $trait<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar((&self.0).$method(rhs.0))
            }
        }
        impl<'a, 'b> $trait<&'b Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'b Scalar) -> Scalar {
                Scalar((&self.0).$method(&rhs.0))
            }
        }
        impl $assign_trait<Scalar> for Scalar {
            fn $assign_method(&mut self, rhs: Scalar) {
                (self.0).$assign_method(rhs.0);
            }
        }
        impl<'a> $assign_trait<&'a Scalar> for Scalar {
            fn $assign_method(&mut self, rhs: &'a Scalar) {
                (self.0).$assign_method(&rhs.0);
            }
        }
    };
}

forward_binop!(Add, add, AddAssign, add_assign);
forward_binop!(Sub, sub, SubAssign, sub_assign);
forward_binop!(Mul, mul, MulAssign, mul_assign);

impl Div<Scalar> for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        Scalar(self.0 / rhs.0)
    }
}

impl Div<&Scalar> for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        Scalar(&self.0 / &rhs.0)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-&self.0)
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

/// A sparse vector: column index to nonzero coefficient.
pub type SparseVec = BTreeMap<usize, Scalar>;

/// Adds `factor * src` into `dst`, dropping entries that cancel.
pub fn axpy(dst: &mut SparseVec, factor: &Scalar, src: &SparseVec) {
    if factor.is_zero() {
        return;
    }
    for (&c, v) in src {
        let delta = factor * v;
        match dst.entry(c) {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += delta;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(delta);
            }
        }
    }
}

/// Matrix with immutable dimensions and sparse rows.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![SparseVec::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.data[i].insert(i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self, LinalgError> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Matrix::zeros(rows.len(), cols);
        for (r, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(LinalgError::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            for (c, v) in row.into_iter().enumerate() {
                if !v.is_zero() {
                    m.data[r].insert(c, v);
                }
            }
        }
        Ok(m)
    }

    /// Convenience for tests and tables written with small integers.
    pub fn from_int_rows(rows: &[&[i64]]) -> Result<Self, LinalgError> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Scalar::from_int(v)).collect())
                .collect(),
        )
    }

    pub fn from_sparse_rows(cols: usize, rows: Vec<SparseVec>) -> Result<Self, LinalgError> {
        for row in &rows {
            if let Some((&c, _)) = row.iter().next_back() {
                if c >= cols {
                    return Err(LinalgError::DimensionMismatch {
                        expected: cols,
                        found: c + 1,
                    });
                }
            }
        }
        let mut data = rows;
        for row in &mut data {
            row.retain(|_, v| !v.is_zero());
        }
        Ok(Matrix {
            rows: data.len(),
            cols,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    fn check(&self, row: usize, col: usize) -> Result<(), LinalgError> {
        if row >= self.rows || col >= self.cols {
            Err(LinalgError::OutOfRange {
                row,
                col,
                rows: self.rows,
                cols: self.cols,
            })
        } else {
            Ok(())
        }
    }

    pub fn get(&self, row: usize, col: usize) -> Result<Scalar, LinalgError> {
        self.check(row, col)?;
        Ok(self.data[row].get(&col).cloned().unwrap_or_default())
    }

    pub fn set(&mut self, row: usize, col: usize, value: Scalar) -> Result<(), LinalgError> {
        self.check(row, col)?;
        if value.is_zero() {
            self.data[row].remove(&col);
        } else {
            self.data[row].insert(col, value);
        }
        Ok(())
    }

    pub fn row(&self, row: usize) -> &SparseVec {
        &self.data[row]
    }

    pub fn sparse_rows(&self) -> &[SparseVec] {
        &self.data
    }

    /// Nonzero entries of column `col`, as (row, value).
    pub fn column(&self, col: usize) -> impl Iterator<Item = (usize, &Scalar)> + '_ {
        self.data
            .iter()
            .enumerate()
            .filter_map(move |(r, row)| row.get(&col).map(|v| (r, v)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(BTreeMap::is_empty)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok(self
            .data
            .iter()
            .map(|row| row.iter().map(|(&c, a)| a * &v[c]).sum())
            .collect())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for (r, row) in self.data.iter().enumerate() {
            let mut acc = SparseVec::new();
            for (&k, a) in row {
                axpy(&mut acc, a, &other.data[k]);
            }
            out.data[r] = acc;
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for (r, row) in self.data.iter().enumerate() {
            for (&c, v) in row {
                out.data[c].insert(r, v.clone());
            }
        }
        out
    }

    pub fn inverse(&self) -> Result<Matrix, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::DimensionMismatch {
                expected: self.rows,
                found: self.cols,
            });
        }
        let n = self.rows;
        let mut space = RowSpace::new(2 * n);
        for (r, row) in self.data.iter().enumerate() {
            let mut aug = row.clone();
            aug.insert(n + r, Scalar::one());
            space.insert(aug);
        }
        let pivots = space.pivots();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return Err(LinalgError::Singular);
        }
        let rows = space
            .into_rows()
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .filter(|(c, _)| *c >= n)
                    .map(|(c, v)| (c - n, v))
                    .collect()
            })
            .collect();
        Matrix::from_sparse_rows(n, rows)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for row in &self.data {
            let dense: Vec<String> = (0..self.cols)
                .map(|c| row.get(&c).map_or_else(|| "0".to_owned(), Scalar::to_string))
                .collect();
            writeln!(f, "  [{}]", dense.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Incrementally maintained reduced row-echelon basis of a row space.
///
/// Invariant: every stored row has leading coefficient 1 at its pivot
/// column, and every pivot column is zero in all other stored rows.
#[derive(Clone, Debug)]
pub struct RowSpace {
    cols: usize,
    // pivot column -> row
    rows: BTreeMap<usize, SparseVec>,
}

impl RowSpace {
    pub fn new(cols: usize) -> Self {
        RowSpace {
            cols,
            rows: BTreeMap::new(),
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.keys().copied().collect()
    }

    fn reduce(&self, mut row: SparseVec) -> SparseVec {
        row.retain(|_, v| !v.is_zero());
        // Pivot rows only carry entries at or after their pivot, so a single
        // left-to-right sweep over the pivots clears every pivot column.
        let pivots: Vec<usize> = row
            .keys()
            .filter(|c| self.rows.contains_key(c))
            .copied()
            .collect();
        if pivots.is_empty() {
            return row;
        }
        let mut cursor = pivots[0];
        loop {
            let next = row
                .range(cursor..)
                .map(|(&c, _)| c)
                .find(|c| self.rows.contains_key(c));
            let Some(p) = next else { break };
            let factor = -row[&p].clone();
            axpy(&mut row, &factor, &self.rows[&p]);
            cursor = p + 1;
        }
        row
    }

    /// Adds a row; returns `true` when the rank grew.
    pub fn insert(&mut self, row: SparseVec) -> bool {
        debug_assert!(row.keys().all(|&c| c < self.cols));
        let mut row = self.reduce(row);
        let Some((&pivot, lead)) = row.iter().next() else {
            return false;
        };
        let inv = lead.recip().expect("nonzero lead");
        for v in row.values_mut() {
            *v *= &inv;
        }
        for other in self.rows.values_mut() {
            if let Some(coef) = other.get(&pivot).cloned() {
                axpy(other, &-coef, &row);
            }
        }
        self.rows.insert(pivot, row);
        true
    }

    pub fn contains(&self, row: &SparseVec) -> bool {
        self.reduce(row.clone()).is_empty()
    }

    pub fn into_rows(self) -> Vec<SparseVec> {
        self.rows.into_values().collect()
    }

    pub fn to_matrix(&self) -> Matrix {
        Matrix {
            rows: self.rows.len(),
            cols: self.cols,
            data: self.rows.values().cloned().collect(),
        }
    }

    /// Canonical nullspace basis: one vector per free column (ascending),
    /// with that free variable set to 1 and the other free variables 0.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let free: Vec<usize> = (0..self.cols).filter(|c| !self.rows.contains_key(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Scalar::zero(); self.cols];
                v[f] = Scalar::one();
                for (&p, row) in &self.rows {
                    if let Some(a) = row.get(&f) {
                        v[p] = -a;
                    }
                }
                v
            })
            .collect()
    }
}

/// Reduced row-echelon form and the pivot columns in increasing order.
pub fn rref(m: &Matrix) -> (Matrix, Vec<usize>) {
    let mut space = RowSpace::new(m.cols);
    for row in &m.data {
        space.insert(row.clone());
    }
    let pivots = space.pivots();
    let mut out = Matrix::zeros(m.rows, m.cols);
    for (r, row) in space.into_rows().into_iter().enumerate() {
        out.data[r] = row;
    }
    (out, pivots)
}

pub fn nullspace(m: &Matrix) -> Vec<Vec<Scalar>> {
    let mut space = RowSpace::new(m.cols);
    for row in &m.data {
        space.insert(row.clone());
    }
    space.nullspace()
}

pub fn rank(m: &Matrix) -> usize {
    rref(m).1.len()
}

pub fn dense_to_sparse(v: &[Scalar]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

/// Scales a vector to the primitive integer vector on the same ray:
/// integer entries with gcd 1 and a positive first nonzero entry.
pub fn primitive_integer(v: &[Scalar]) -> Vec<Scalar> {
    use num_integer::Integer;
    let Some(first) = v.iter().find(|x| !x.is_zero()) else {
        return v.to_vec();
    };
    let lcm = v
        .iter()
        .filter(|x| !x.is_zero())
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let scaled: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let gcd = scaled.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let sign = if first.is_negative() {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    scaled
        .into_iter()
        .map(|x| Scalar(BigRational::from_integer(x * &sign / &gcd)))
        .collect()
}
