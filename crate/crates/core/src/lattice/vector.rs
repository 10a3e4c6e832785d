use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::Rational;

/// An integer vector. Ordering is lexicographic on the entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntVector(Vec<BigInt>);

impl IntVector {
    pub fn new(entries: Vec<BigInt>) -> Self {
        IntVector(entries)
    }

    pub fn from_i64s(entries: &[i64]) -> Self {
        IntVector(entries.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero(dim: usize) -> Self {
        IntVector(alloc::vec![BigInt::zero(); dim])
    }

    /// The `i`-th standard basis vector of `ℤ^dim`.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zero(dim);
        v.0[i] = BigInt::from(1);
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<BigInt> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Gcd of the absolute values of the entries; zero for the zero vector.
    pub fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
    }

    pub fn is_primitive(&self) -> bool {
        self.content() == BigInt::from(1)
    }

    /// Divides out the content. Returns `None` for the zero vector.
    pub fn primitive(&self) -> Option<IntVector> {
        let g = self.content();
        if g.is_zero() {
            return None;
        }
        Some(IntVector(self.0.iter().map(|x| x / &g).collect()))
    }

    pub fn dot(&self, other: &IntVector) -> BigInt {
        debug_assert_eq!(self.dim(), other.dim());
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn neg(&self) -> IntVector {
        IntVector(self.0.iter().map(|x| -x).collect())
    }

    pub fn add(&self, other: &IntVector) -> IntVector {
        IntVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, c: &BigInt) -> IntVector {
        IntVector(self.0.iter().map(|x| x * c).collect())
    }

    /// `a·self + b·other`.
    pub fn combine(&self, a: &BigInt, other: &IntVector, b: &BigInt) -> IntVector {
        IntVector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(x, y)| a * x + b * y)
                .collect(),
        )
    }

    pub fn to_rationals(&self) -> Vec<Rational> {
        self.0.iter().cloned().map(Rational::from_integer).collect()
    }

    /// Scales a rational vector to the primitive integer vector on the same
    /// ray. Returns `None` for the zero vector.
    pub fn primitive_from_rationals(entries: &[Rational]) -> Option<IntVector> {
        let lcm = entries
            .iter()
            .fold(BigInt::from(1), |l, q| l.lcm(q.denom()));
        let scaled: Vec<BigInt> = entries
            .iter()
            .map(|q| q.numer() * (&lcm / q.denom()))
            .collect();
        IntVector(scaled).primitive()
    }

    pub fn max_abs(&self) -> BigInt {
        self.0
            .iter()
            .map(Signed::abs)
            .max()
            .unwrap_or_else(BigInt::zero)
    }
}

impl From<Vec<BigInt>> for IntVector {
    fn from(v: Vec<BigInt>) -> Self {
        IntVector(v)
    }
}

impl core::ops::Index<usize> for IntVector {
    type Output = BigInt;
    fn index(&self, i: usize) -> &BigInt {
        &self.0[i]
    }
}

impl fmt::Display for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}
