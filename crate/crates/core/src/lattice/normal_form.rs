use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::{Block, Tracker};
use super::reduce::extended_gcd;
use super::{IntMatrix, IntVector, UnimodularWitness};

fn euclid_block(a: &BigInt, b: &BigInt) -> Block {
    let (g, x, y) = extended_gcd(a, b);
    Block::new(x, y, -(b / &g), a / &g)
}

/// Hermite normal form under row operations: returns `(H, U)` with
/// `U·M = H`.
///
/// `H` is in row echelon form, every pivot is positive and the entries above
/// a pivot lie in `[0, pivot)`. Within a column the pivot row is the smallest
/// row index holding a nonzero entry. `U` has determinant ±1.
pub fn hermite_normal_form(m: &IntMatrix) -> (IntMatrix, UnimodularWitness) {
    let mut h = m.clone();
    let mut u = Tracker::new(m.rows());
    let mut pivot_row = 0;
    for col in 0..h.cols() {
        if pivot_row == h.rows() {
            break;
        }
        let Some(first) = (pivot_row..h.rows()).find(|&r| !h.get(r, col).is_zero()) else {
            continue;
        };
        if first != pivot_row {
            h.row_op(pivot_row, first, &Block::swap());
            u.row_op(pivot_row, first, &Block::swap());
        }
        for r in pivot_row + 1..h.rows() {
            if h.get(r, col).is_zero() {
                continue;
            }
            let block = euclid_block(h.get(pivot_row, col), h.get(r, col));
            h.row_op(pivot_row, r, &block);
            u.row_op(pivot_row, r, &block);
        }
        if h.get(pivot_row, col).is_negative() {
            h.negate_row(pivot_row);
            u.negate_row(pivot_row);
        }
        let pivot = h.get(pivot_row, col).clone();
        for r in 0..pivot_row {
            let q = h.get(r, col).div_floor(&pivot);
            if q.is_zero() {
                continue;
            }
            let block = Block::add_multiple(-q);
            h.row_op(r, pivot_row, &block);
            u.row_op(r, pivot_row, &block);
        }
        pivot_row += 1;
    }
    (h, u.finish())
}

/// Smith normal form `U·M·V = S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub diagonal: IntMatrix,
    pub left: UnimodularWitness,
    pub right: UnimodularWitness,
}

impl SmithForm {
    /// The invariant factors `d₁ | d₂ | …`, zeros included.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let n = self.diagonal.rows().min(self.diagonal.cols());
        (0..n).map(|i| self.diagonal.get(i, i).clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors()
            .iter()
            .filter(|d| !d.is_zero())
            .count()
    }
}

/// Smith normal form: diagonal `S = U·M·V` with nonnegative entries
/// `d₁ | d₂ | …`.
///
/// At each stage the pivot is the entry of smallest absolute value in the
/// remaining block (ties to the smallest row, then column), so inputs already
/// in Smith form come back with identity witnesses.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let mut s = m.clone();
    let mut u = Tracker::new(m.rows());
    let mut v = Tracker::new(m.cols());
    let n = s.rows().min(s.cols());
    for t in 0..n {
        let Some((pr, pc)) = smallest_entry(&s, t) else {
            break;
        };
        if pr != t {
            s.row_op(t, pr, &Block::swap());
            u.row_op(t, pr, &Block::swap());
        }
        if pc != t {
            s.col_op(t, pc, &Block::swap());
            v.col_op(t, pc, &Block::swap());
        }
        loop {
            for r in t + 1..s.rows() {
                if s.get(r, t).is_zero() {
                    continue;
                }
                let block = euclid_block(s.get(t, t), s.get(r, t));
                s.row_op(t, r, &block);
                u.row_op(t, r, &block);
            }
            for c in t + 1..s.cols() {
                if s.get(t, c).is_zero() {
                    continue;
                }
                let block = euclid_block(s.get(t, t), s.get(t, c));
                s.col_op(t, c, &block);
                v.col_op(t, c, &block);
            }
            let column_clear = (t + 1..s.rows()).all(|r| s.get(r, t).is_zero());
            if !column_clear {
                continue;
            }
            // Divisibility: fold any offending row into the pivot row and redo.
            let pivot = s.get(t, t).clone();
            let offender = (t + 1..s.rows())
                .find(|&r| (t + 1..s.cols()).any(|c| !s.get(r, c).is_multiple_of(&pivot)));
            match offender {
                Some(r) => {
                    let block = Block::add_multiple(BigInt::from(1));
                    s.row_op(t, r, &block);
                    u.row_op(t, r, &block);
                }
                None => break,
            }
        }
        if s.get(t, t).is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }
    SmithForm {
        diagonal: s,
        left: u.finish(),
        right: v.finish(),
    }
}

fn smallest_entry(s: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(BigInt, usize, usize)> = None;
    for r in t..s.rows() {
        for c in t..s.cols() {
            let x = s.get(r, c);
            if x.is_zero() {
                continue;
            }
            let a = x.abs();
            if best.as_ref().is_none_or(|(b, _, _)| a < *b) {
                best = Some((a, r, c));
            }
        }
    }
    best.map(|(_, r, c)| (r, c))
}

/// A saturated basis of `{x ∈ ℤ^n : M·x = 0}`, read off the right Smith
/// witness and canonicalized by a Hermite normal form of the basis rows.
pub fn integer_kernel(m: &IntMatrix) -> Vec<IntVector> {
    let snf = smith_normal_form(m);
    let rank = snf.rank();
    let n = m.cols();
    if rank == n {
        return Vec::new();
    }
    let basis: Vec<IntVector> = (rank..n).map(|c| snf.right.matrix().column(c)).collect();
    let (h, _) = hermite_normal_form(&IntMatrix::from_row_vectors(n, &basis));
    h.row_vectors().into_iter().filter(|r| !r.is_zero()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn assert_hnf_shape(h: &IntMatrix) {
        let mut last_pivot_col: Option<usize> = None;
        for r in 0..h.rows() {
            let Some(c) = (0..h.cols()).find(|&c| !h.get(r, c).is_zero()) else {
                // zero rows only at the bottom
                assert!((r..h.rows()).all(|rr| h.row(rr).is_zero()));
                return;
            };
            assert!(last_pivot_col.is_none_or(|p| c > p), "pivots not staircase");
            let p = h.get(r, c);
            assert!(p.is_positive());
            for rr in 0..r {
                let x = h.get(rr, c);
                assert!(!x.is_negative() && x < p, "entry above pivot not reduced");
            }
            for rr in r + 1..h.rows() {
                assert!(h.get(rr, c).is_zero());
            }
            last_pivot_col = Some(c);
        }
    }

    #[test]
    fn hnf_of_identity_is_identity() {
        let (h, u) = hermite_normal_form(&IntMatrix::identity(3));
        assert!(h.is_identity());
        assert!(u.matrix().is_identity());
    }

    #[test]
    fn hnf_small_example() {
        let m = IntMatrix::from_i64_rows(&[&[2, 4], &[1, 3]]);
        let (h, u) = hermite_normal_form(&m);
        assert_eq!(u.matrix().mul(&m), h);
        assert!(u.det().abs().is_one());
        assert_hnf_shape(&h);
        // |det| is preserved: 2·3 − 4·1 = 2.
        assert_eq!(h, IntMatrix::from_i64_rows(&[&[1, 1], &[0, 2]]));
    }

    #[test]
    fn hnf_of_zero_matrix() {
        let z = IntMatrix::zero(2, 2);
        let (h, u) = hermite_normal_form(&z);
        assert!(h.is_zero());
        assert!(u.matrix().is_identity());
    }

    #[test]
    fn hnf_rectangular() {
        let m = IntMatrix::from_i64_rows(&[&[0, 3, 6, 1], &[0, 2, 4, 5], &[0, -1, 7, 0]]);
        let (h, u) = hermite_normal_form(&m);
        assert_eq!(u.matrix().mul(&m), h);
        assert_hnf_shape(&h);
    }

    #[test]
    fn snf_diag_2_3() {
        let m = IntMatrix::from_i64_rows(&[&[2, 0], &[0, 3]]);
        let snf = smith_normal_form(&m);
        assert_eq!(
            snf.diagonal,
            IntMatrix::from_i64_rows(&[&[1, 0], &[0, 6]])
        );
        assert_eq!(
            snf.left.matrix().mul(&m).mul(snf.right.matrix()),
            snf.diagonal
        );
    }

    #[test]
    fn snf_trivial_cases() {
        let z = smith_normal_form(&IntMatrix::zero(2, 3));
        assert!(z.diagonal.is_zero());
        assert!(z.left.matrix().is_identity() && z.right.matrix().is_identity());
        let id = smith_normal_form(&IntMatrix::identity(2));
        assert!(id.diagonal.is_identity());
        assert!(id.left.matrix().is_identity() && id.right.matrix().is_identity());
    }

    #[test]
    fn kernel_is_saturated() {
        // x + 2y + 3z = 0 has kernel lattice of rank 2 and index 1.
        let m = IntMatrix::from_i64_rows(&[&[1, 2, 3]]);
        let ker = integer_kernel(&m);
        assert_eq!(ker.len(), 2);
        for b in &ker {
            assert!(m.mul_vec(b).is_zero());
        }
        // Saturated: the 2×2 minors of the basis have gcd 1.
        let b = IntMatrix::from_row_vectors(3, &ker);
        let snf = smith_normal_form(&b);
        assert!(snf.invariant_factors().iter().all(|d| d.is_one()));
    }
}
