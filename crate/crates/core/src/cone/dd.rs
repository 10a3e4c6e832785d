//! Incremental double description (Motzkin–Burger) over the integers.
//!
//! Given constraint rows `a₁, …, a_m`, computes a lineality basis and the
//! extreme rays of `P = {x : ⟨aᵢ, x⟩ ≥ 0}`. Intermediate vectors are kept
//! primitive, so no rational arithmetic is needed.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::lattice::{IntMatrix, IntVector};

/// `P = span(lineality) + cone(rays)`; rays are extreme modulo lineality.
#[derive(Clone, Debug, Default)]
pub(crate) struct Generators {
    pub lineality: Vec<IntVector>,
    pub rays: Vec<IntVector>,
}

fn primitive(v: IntVector) -> IntVector {
    v.primitive().unwrap_or(v)
}

pub(crate) fn generators_of(dim: usize, constraints: &[IntVector]) -> Generators {
    let mut lineality: Vec<IntVector> = (0..dim).map(|i| IntVector::unit(dim, i)).collect();
    let mut rays: Vec<IntVector> = Vec::new();
    let mut processed: Vec<&IntVector> = Vec::new();

    for a in constraints {
        if a.is_zero() {
            continue;
        }
        let hit = lineality.iter().position(|b| !a.dot(b).is_zero());
        if let Some(idx) = hit {
            let mut b = lineality.remove(idx);
            if a.dot(&b).is_negative() {
                b = b.neg();
            }
            let ab = a.dot(&b);
            // Project everything else into the hyperplane ⟨a, ·⟩ = 0 along b.
            for l in lineality.iter_mut() {
                let al = a.dot(l);
                if !al.is_zero() {
                    *l = primitive(l.combine(&ab, &b, &(-al)));
                }
            }
            for r in rays.iter_mut() {
                let ar = a.dot(r);
                if !ar.is_zero() {
                    *r = primitive(r.combine(&ab, &b, &(-ar)));
                }
            }
            rays.push(b);
            processed.push(a);
            continue;
        }

        let values: Vec<BigInt> = rays.iter().map(|r| a.dot(r)).collect();
        let mut next: Vec<IntVector> = Vec::new();
        for (r, v) in rays.iter().zip(&values) {
            if !v.is_negative() {
                next.push(r.clone());
            }
        }
        // A pointed part of dimension < 2 has no adjacent pairs.
        let target_rank = dim.checked_sub(lineality.len() + 2);
        for (i, (p, vp)) in rays.iter().zip(&values).enumerate() {
            let Some(target_rank) = target_rank else {
                break;
            };
            if !vp.is_positive() {
                continue;
            }
            for (j, (n, vn)) in rays.iter().zip(&values).enumerate() {
                if !vn.is_negative() || i == j {
                    continue;
                }
                if !adjacent(dim, &processed, p, n, target_rank) {
                    continue;
                }
                // ⟨a, vp·n − vn·p⟩ = 0 with positive coefficients on both.
                let r = primitive(n.combine(vp, p, &(-vn)));
                if !r.is_zero() {
                    next.push(r);
                }
            }
        }
        rays = next;
        processed.push(a);
    }

    rays.sort();
    rays.dedup();
    Generators { lineality, rays }
}

/// Algebraic adjacency test: `p` and `n` span a 2-face (modulo lineality)
/// iff the constraints tight on both have rank `d − ℓ − 2`.
fn adjacent(
    dim: usize,
    processed: &[&IntVector],
    p: &IntVector,
    n: &IntVector,
    target_rank: usize,
) -> bool {
    let tight: Vec<IntVector> = processed
        .iter()
        .filter(|a| a.dot(p).is_zero() && a.dot(n).is_zero())
        .map(|a| (*a).clone())
        .collect();
    if tight.len() < target_rank {
        return false;
    }
    IntMatrix::from_row_vectors(dim, &tight).rank() == target_rank
}
