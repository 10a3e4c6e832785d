//! Helpers shared by the integration tests: random unimodular matrices and
//! small independent oracles.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::Rng;
use torcone_core::{IntMatrix, IntVector, Rational, UnimodularWitness};

/// A random element of `SL(d,ℤ)` as a product of elementary row operations
/// with small multipliers.
pub fn random_sl<R: Rng>(rng: &mut R, d: usize) -> UnimodularWitness {
    let mut m = IntMatrix::identity(d);
    if d < 2 {
        return UnimodularWitness::from_matrix(m).unwrap();
    }
    for _ in 0..3 * d {
        let i = rng.random_range(0..d);
        let mut j = rng.random_range(0..d - 1);
        if j >= i {
            j += 1;
        }
        if rng.random_bool(0.2) {
            // (row_i, row_j) ↦ (row_j, −row_i)
            for c in 0..d {
                let a = m.get(i, c).clone();
                let b = m.get(j, c).clone();
                m.set(i, c, b);
                m.set(j, c, -a);
            }
        } else {
            let f = BigInt::from(rng.random_range(-2i64..=2));
            for c in 0..d {
                let v = m.get(i, c) + &f * m.get(j, c);
                m.set(i, c, v);
            }
        }
    }
    UnimodularWitness::from_matrix(m).unwrap()
}

pub fn random_vector<R: Rng>(rng: &mut R, d: usize, bound: i64) -> IntVector {
    IntVector::from_i64s(&(0..d).map(|_| rng.random_range(-bound..=bound)).collect::<Vec<_>>())
}

pub fn random_nonzero_vector<R: Rng>(rng: &mut R, d: usize, bound: i64) -> IntVector {
    loop {
        let v = random_vector(rng, d, bound);
        if !v.is_zero() {
            return v;
        }
    }
}

/// Plain Euclid on absolute values.
pub fn euclid(values: &[i64]) -> i64 {
    let mut g = 0i64;
    for &x in values {
        let mut a = g;
        let mut b = x.abs();
        while b != 0 {
            let r = a % b;
            a = b;
            b = r;
        }
        g = a;
    }
    g
}

/// Solves `A λ = x` for a matrix with independent columns, or `None` if the
/// columns are dependent or the system is inconsistent.
fn solve_independent(cols: &[&IntVector], x: &IntVector) -> Option<Vec<Rational>> {
    let d = x.dim();
    let n = cols.len();
    let mut rows: Vec<Vec<Rational>> = (0..d)
        .map(|r| {
            let mut row: Vec<Rational> = cols
                .iter()
                .map(|c| Rational::from_integer(c.entries()[r].clone()))
                .collect();
            row.push(Rational::from_integer(x.entries()[r].clone()));
            row
        })
        .collect();
    let mut pivot_row = 0;
    for c in 0..n {
        let p = (pivot_row..d).find(|&r| !rows[r][c].is_zero())?;
        rows.swap(pivot_row, p);
        let inv = Rational::from_integer(1.into()) / &rows[pivot_row][c];
        for v in rows[pivot_row].iter_mut() {
            *v *= &inv;
        }
        for r in 0..d {
            if r != pivot_row && !rows[r][c].is_zero() {
                let f = rows[r][c].clone();
                let pivot = rows[pivot_row].clone();
                for (x, y) in rows[r].iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
        pivot_row += 1;
    }
    if rows[pivot_row..].iter().any(|r| !r[n].is_zero()) {
        return None;
    }
    Some((0..n).map(|c| rows[c][n].clone()).collect())
}

/// Brute-force LP oracle for `x ∈ cone(gens)`: by Carathéodory it suffices
/// to try every linearly independent subset of generators and look for a
/// nonnegative exact solution.
pub fn in_cone_oracle(gens: &[IntVector], x: &IntVector) -> bool {
    if x.is_zero() {
        return true;
    }
    let n = gens.len();
    for mask in 1u32..(1 << n) {
        let cols: Vec<&IntVector> = (0..n).filter(|i| mask & (1 << i) != 0).map(|i| &gens[i]).collect();
        if cols.len() > x.dim() {
            continue;
        }
        if let Some(sol) = solve_independent(&cols, x) {
            if sol.iter().all(|v| !v.is_negative()) {
                return true;
            }
        }
    }
    false
}

/// Lineality dimension from the oracle: the rank of the generators whose
/// negatives lie in the cone.
pub fn lineality_oracle(gens: &[IntVector]) -> usize {
    let d = gens.first().map_or(0, IntVector::dim);
    let inside: Vec<IntVector> = gens
        .iter()
        .filter(|v| in_cone_oracle(gens, &v.neg()))
        .cloned()
        .collect();
    IntMatrix::from_row_vectors(d, &inside).rank()
}

/// Exhaustive sign check of a generator/facet pair of descriptions.
pub fn descriptions_agree(gens: &[IntVector], normals: &[IntVector]) -> bool {
    gens.iter().all(|g| normals.iter().all(|n| !n.dot(g).is_negative()))
}
