use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{IntVector, LatticeError};

/// Dense row-major integer matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: alloc::vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Builds a matrix from row-major entries. Panics if the length is wrong.
    pub fn from_entries(rows: usize, cols: usize, entries: Vec<BigInt>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must be rows·cols");
        IntMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            entries.extend(row.iter().map(|&x| BigInt::from(x)));
        }
        IntMatrix {
            rows: r,
            cols: c,
            entries,
        }
    }

    /// Stacks vectors as rows. All vectors must share `cols` entries.
    pub fn from_row_vectors(cols: usize, rows: &[IntVector]) -> Self {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            assert_eq!(row.dim(), cols, "row length mismatch");
            entries.extend(row.entries().iter().cloned());
        }
        IntMatrix {
            rows: rows.len(),
            cols,
            entries,
        }
    }

    /// Uses the vectors as columns.
    pub fn from_column_vectors(rows: usize, cols: &[IntVector]) -> Self {
        Self::from_row_vectors(rows, cols).transpose()
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

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: BigInt) {
        self.entries[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> IntVector {
        IntVector::new(self.entries[r * self.cols..(r + 1) * self.cols].to_vec())
    }

    pub fn column(&self, c: usize) -> IntVector {
        IntVector::new((0..self.rows).map(|r| self.get(r, c).clone()).collect())
    }

    pub fn row_vectors(&self) -> Vec<IntVector> {
        (0..self.rows).map(|r| self.row(r)).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        out.entries[r * other.cols + c] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &IntVector) -> IntVector {
        assert_eq!(self.cols, v.dim(), "vector length differs from column count");
        IntVector::new((0..self.rows).map(|r| self.row(r).dot(v)).collect())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let x = self.get(r, c);
                    if r == c {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a.get(k, k).is_zero() {
                match (k + 1..n).find(|&r| !a.get(r, k).is_zero()) {
                    Some(r) => {
                        a.swap_rows(k, r);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                    a.set(i, j, v);
                }
            }
            prev = a.get(k, k).clone();
        }
        sign * a.get(n - 1, n - 1)
    }

    /// Rank over ℚ, computed fraction-free.
    pub fn rank(&self) -> usize {
        let mut a = self.clone();
        let mut rank = 0;
        for c in 0..a.cols {
            if rank == a.rows {
                break;
            }
            let Some(p) = (rank..a.rows).find(|&r| !a.get(r, c).is_zero()) else {
                continue;
            };
            a.swap_rows(rank, p);
            let pivot = a.get(rank, c).clone();
            for r in rank + 1..a.rows {
                let f = a.get(r, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..a.cols {
                    let v = a.get(r, j) * &pivot - a.get(rank, j) * &f;
                    a.set(r, j, v);
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn max_abs(&self) -> BigInt {
        self.entries
            .iter()
            .map(Signed::abs)
            .max()
            .unwrap_or_else(BigInt::zero)
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub(crate) fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let i = r * self.cols + c;
            self.entries[i] = -&self.entries[i];
        }
    }

    pub(crate) fn negate_col(&mut self, c: usize) {
        for r in 0..self.rows {
            let i = r * self.cols + c;
            self.entries[i] = -&self.entries[i];
        }
    }

    /// Rows `i, j` become `p·row_i + q·row_j` and `r·row_i + s·row_j`.
    pub(crate) fn row_op(&mut self, i: usize, j: usize, b: &Block) {
        for c in 0..self.cols {
            let x = self.get(i, c).clone();
            let y = self.get(j, c).clone();
            self.set(i, c, &b.p * &x + &b.q * &y);
            self.set(j, c, &b.r * &x + &b.s * &y);
        }
    }

    /// Columns `i, j` become `p·col_i + q·col_j` and `r·col_i + s·col_j`.
    pub(crate) fn col_op(&mut self, i: usize, j: usize, b: &Block) {
        for r in 0..self.rows {
            let x = self.get(r, i).clone();
            let y = self.get(r, j).clone();
            self.set(r, i, &b.p * &x + &b.q * &y);
            self.set(r, j, &b.r * &x + &b.s * &y);
        }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for r in 0..self.rows {
            if r > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", self.row(r))?;
        }
        f.write_str("]")
    }
}

/// A 2×2 integer block `[[p, q], [r, s]]` with determinant ±1.
#[derive(Clone, Debug)]
pub(crate) struct Block {
    pub p: BigInt,
    pub q: BigInt,
    pub r: BigInt,
    pub s: BigInt,
}

impl Block {
    pub fn new(p: BigInt, q: BigInt, r: BigInt, s: BigInt) -> Self {
        let b = Block { p, q, r, s };
        debug_assert!(b.det().abs().is_one(), "block must be unimodular");
        b
    }

    pub fn swap() -> Self {
        Block::new(BigInt::zero(), BigInt::one(), BigInt::one(), BigInt::zero())
    }

    /// `row_i += f·row_j` (or the column analogue).
    pub fn add_multiple(f: BigInt) -> Self {
        Block::new(BigInt::one(), f, BigInt::zero(), BigInt::one())
    }

    pub fn det(&self) -> BigInt {
        &self.p * &self.s - &self.q * &self.r
    }

    pub fn inverse(&self) -> Block {
        let d = self.det();
        Block {
            p: &d * &self.s,
            q: -(&d * &self.q),
            r: -(&d * &self.r),
            s: &d * &self.p,
        }
    }

    pub fn transpose(&self) -> Block {
        Block {
            p: self.p.clone(),
            q: self.r.clone(),
            r: self.q.clone(),
            s: self.s.clone(),
        }
    }
}

/// A square integer matrix with determinant ±1 together with its inverse.
///
/// Operations that promise an `SL(d,ℤ)` element ([`gcd_reduce`],
/// [`complete_to_basis`], cone normalization) always return determinant +1;
/// normal-form witnesses may carry −1.
///
/// [`gcd_reduce`]: super::gcd_reduce
/// [`complete_to_basis`]: super::complete_to_basis
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UnimodularWitness {
    matrix: IntMatrix,
    inverse: IntMatrix,
}

impl UnimodularWitness {
    pub fn identity(n: usize) -> Self {
        UnimodularWitness {
            matrix: IntMatrix::identity(n),
            inverse: IntMatrix::identity(n),
        }
    }

    /// Checks `matrix · inverse = I` before accepting the pair.
    pub fn new(matrix: IntMatrix, inverse: IntMatrix) -> Result<Self, LatticeError> {
        if !matrix.is_square() || matrix.rows() != inverse.rows() || !inverse.is_square() {
            return Err(LatticeError::NotUnimodular);
        }
        if !matrix.mul(&inverse).is_identity() {
            return Err(LatticeError::NotUnimodular);
        }
        Ok(UnimodularWitness { matrix, inverse })
    }

    /// Inverts a matrix with determinant ±1 via its adjugate.
    pub fn from_matrix(matrix: IntMatrix) -> Result<Self, LatticeError> {
        if !matrix.is_square() {
            return Err(LatticeError::NotUnimodular);
        }
        let det = matrix.det();
        if !det.abs().is_one() {
            return Err(LatticeError::NotUnimodular);
        }
        let n = matrix.rows();
        let mut inverse = IntMatrix::zero(n, n);
        for r in 0..n {
            for c in 0..n {
                let minor = minor(&matrix, c, r);
                let cof = if (r + c) % 2 == 0 { minor } else { -minor };
                inverse.set(r, c, cof * &det);
            }
        }
        Ok(UnimodularWitness { matrix, inverse })
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn inverse(&self) -> &IntMatrix {
        &self.inverse
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn det(&self) -> BigInt {
        self.matrix.det()
    }

    pub fn inverted(&self) -> UnimodularWitness {
        UnimodularWitness {
            matrix: self.inverse.clone(),
            inverse: self.matrix.clone(),
        }
    }

    /// `self · other`.
    pub fn compose(&self, other: &UnimodularWitness) -> UnimodularWitness {
        UnimodularWitness {
            matrix: self.matrix.mul(&other.matrix),
            inverse: other.inverse.mul(&self.inverse),
        }
    }

    pub fn apply(&self, v: &IntVector) -> IntVector {
        self.matrix.mul_vec(v)
    }

    /// Image of a covector (inward normal) under the same change of
    /// coordinates: `n ↦ U^{-T} n`, so `⟨n, x⟩ = ⟨U^{-T} n, U x⟩`.
    pub fn apply_dual(&self, n: &IntVector) -> IntVector {
        self.inverse.transpose().mul_vec(n)
    }

    pub(crate) fn from_parts_unchecked(matrix: IntMatrix, inverse: IntMatrix) -> Self {
        debug_assert!(matrix.mul(&inverse).is_identity());
        UnimodularWitness { matrix, inverse }
    }
}

fn minor(m: &IntMatrix, skip_r: usize, skip_c: usize) -> BigInt {
    let n = m.rows();
    let mut entries = Vec::with_capacity((n - 1) * (n - 1));
    for r in (0..n).filter(|&r| r != skip_r) {
        for c in (0..n).filter(|&c| c != skip_c) {
            entries.push(m.get(r, c).clone());
        }
    }
    IntMatrix::from_entries(n - 1, n - 1, entries).det()
}

/// A unimodular transformation under construction, kept together with its
/// inverse.
///
/// A `Left` tracker records `U` for products `U·M` (row operations on `M`);
/// a `Right` tracker records `V` for `M·V` (column operations on `M`).
#[derive(Clone, Debug)]
pub(crate) struct Tracker {
    m: IntMatrix,
    inv: IntMatrix,
}

impl Tracker {
    pub fn new(n: usize) -> Self {
        Tracker {
            m: IntMatrix::identity(n),
            inv: IntMatrix::identity(n),
        }
    }

    /// Records the row operation `b` on rows `i, j` of the left factor.
    pub fn row_op(&mut self, i: usize, j: usize, b: &Block) {
        self.m.row_op(i, j, b);
        self.inv.col_op(i, j, &b.inverse().transpose());
    }

    /// Records the column operation `b` on columns `i, j` of the right factor.
    pub fn col_op(&mut self, i: usize, j: usize, b: &Block) {
        self.m.col_op(i, j, b);
        self.inv.row_op(i, j, &b.inverse().transpose());
    }

    pub fn negate_row(&mut self, i: usize) {
        self.m.negate_row(i);
        self.inv.negate_col(i);
    }

    pub fn finish(self) -> UnimodularWitness {
        UnimodularWitness::from_parts_unchecked(self.m, self.inv)
    }
}
