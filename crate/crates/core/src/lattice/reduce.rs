use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::{Block, Tracker};
use super::{IntVector, LatticeError, UnimodularWitness};

/// Returns `(g, x, y)` with `x·a + y·b = g = gcd(|a|, |b|) ≥ 0`.
///
/// When `a` divides `b` (and `a ≠ 0`) the coefficients are `(sign a, 0)`.
pub fn extended_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    if !a.is_zero() && b.is_multiple_of(a) {
        return (a.abs(), a.signum(), BigInt::zero());
    }
    let (mut old_r, mut r) = (a.clone(), b.clone());
    let (mut old_s, mut s) = (BigInt::one(), BigInt::zero());
    let (mut old_t, mut t) = (BigInt::zero(), BigInt::one());
    while !r.is_zero() {
        let (q, rem) = old_r.div_rem(&r);
        old_r = core::mem::replace(&mut r, rem);
        let ns = &old_s - &q * &s;
        old_s = core::mem::replace(&mut s, ns);
        let nt = &old_t - &q * &t;
        old_t = core::mem::replace(&mut t, nt);
    }
    if old_r.is_negative() {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// The determinant-one block `[[x, y], [−b/g, a/g]]` sending `(a, b)` to
/// `(g, 0)`.
fn euclid_block(a: &BigInt, b: &BigInt) -> Block {
    let (g, x, y) = extended_gcd(a, b);
    Block::new(x, y, -(b / &g), a / &g)
}

/// Finds `U ∈ SL(d,ℤ)` with `U·v = (g, 0, …, 0)`, `g = gcd(v)`.
///
/// Elimination runs pairwise against the first entry, each step a
/// determinant-one block, so the witness is always in `SL(d,ℤ)`. A negative
/// leading entry is fixed by negating the first two rows together.
pub fn gcd_reduce(v: &IntVector) -> Result<(BigInt, UnimodularWitness), LatticeError> {
    let n = v.dim();
    if n < 2 {
        return Err(LatticeError::DimensionTooSmall { got: n, min: 2 });
    }
    if v.is_zero() {
        return Err(LatticeError::ZeroVector);
    }
    let mut w: alloc::vec::Vec<BigInt> = v.entries().to_vec();
    let mut u = Tracker::new(n);
    for i in 1..n {
        if w[i].is_zero() {
            continue;
        }
        let block = euclid_block(&w[0], &w[i]);
        let (x, y) = (w[0].clone(), w[i].clone());
        w[0] = &block.p * &x + &block.q * &y;
        w[i] = &block.r * &x + &block.s * &y;
        u.row_op(0, i, &block);
    }
    if w[0].is_negative() {
        w[0] = -&w[0];
        u.negate_row(0);
        u.negate_row(1);
    }
    Ok((w.swap_remove(0), u.finish()))
}

/// Completes a primitive vector to a basis of `ℤ^d`: the returned matrix has
/// `v` as its first column and determinant 1.
pub fn complete_to_basis(v: &IntVector) -> Result<UnimodularWitness, LatticeError> {
    if v.is_zero() {
        return Err(LatticeError::ZeroVector);
    }
    let g = v.content();
    if !g.is_one() {
        return Err(LatticeError::NotPrimitive(g));
    }
    let (_, u) = gcd_reduce(v)?;
    // U·v = e₁, so U⁻¹ has v as its first column.
    Ok(u.inverted())
}
