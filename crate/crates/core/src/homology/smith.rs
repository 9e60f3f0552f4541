//! Smith normal form over the integers with recorded unimodular transforms.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::homology::matrix::IntMat;

/// `u * m * v = d` with `u`, `v` unimodular and `d` diagonal, the diagonal
/// entries nonnegative with each dividing the next.
pub struct Smith {
    pub d: IntMat,
    pub u: IntMat,
    pub v: IntMat,
    pub rank: usize,
    /// Nonzero diagonal entries in order.
    pub factors: Vec<BigInt>,
}

/// Position of the entry of smallest nonzero absolute value in the submatrix
/// starting at (k, k).
fn pivot(m: &IntMat, k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in k..m.rows {
        for j in k..m.cols {
            let v = m.get(i, j);
            if v.is_zero() {
                continue;
            }
            let a = v.abs();
            match &best {
                Some((_, _, cur)) if *cur <= a => {}
                _ => best = Some((i, j, a)),
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

pub fn smith(m: &IntMat) -> Smith {
    let mut d = m.clone();
    let mut u = IntMat::identity(m.rows);
    let mut v = IntMat::identity(m.cols);
    let steps = m.rows.min(m.cols);
    let mut k = 0;
    while k < steps {
        let Some((pi, pj)) = pivot(&d, k) else { break };
        d.swap_rows(k, pi);
        u.swap_rows(k, pi);
        d.swap_cols(k, pj);
        v.swap_cols(k, pj);
        if d.get(k, k).is_negative() {
            d.negate_row(k);
            u.negate_row(k);
        }
        // Clear the pivot row and column; smaller remainders re-enter as new
        // pivots until everything below/right of (k,k) in its cross is zero.
        let mut dirty = false;
        for i in k + 1..d.rows {
            let q = -(d.get(i, k) / d.get(k, k));
            if !q.is_zero() {
                d.row_axpy(i, k, &q);
                u.row_axpy(i, k, &q);
            }
            if !d.get(i, k).is_zero() {
                dirty = true;
            }
        }
        for j in k + 1..d.cols {
            let q = -(d.get(k, j) / d.get(k, k));
            if !q.is_zero() {
                d.col_axpy(j, k, &q);
                v.col_axpy(j, k, &q);
            }
            if !d.get(k, j).is_zero() {
                dirty = true;
            }
        }
        if dirty {
            continue; // pick a smaller pivot in the same corner
        }
        // Divisibility fix-up: fold any entry the pivot misses into row k.
        let mut fixed = true;
        'scan: for i in k + 1..d.rows {
            for j in k + 1..d.cols {
                if !(d.get(i, j) % d.get(k, k)).is_zero() {
                    let one = BigInt::from(1);
                    d.row_axpy(k, i, &one);
                    u.row_axpy(k, i, &one);
                    fixed = false;
                    break 'scan;
                }
            }
        }
        if fixed {
            k += 1;
        }
    }
    let mut factors = Vec::new();
    for i in 0..steps {
        let x = d.get(i, i);
        if x.is_zero() {
            break;
        }
        factors.push(x.clone());
    }
    let rank = factors.len();
    Smith { d, u, v, rank, factors }
}

/// Rank alone (same elimination, no transform bookkeeping needed).
pub fn rank(m: &IntMat) -> usize {
    smith(m).rank
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(m: IntMat, want: Vec<i64>) {
        let s = smith(&m);
        assert!(s.u.is_unimodular(), "u not unimodular");
        assert!(s.v.is_unimodular(), "v not unimodular");
        assert_eq!(s.u.mul(&m).mul(&s.v), s.d, "transforms do not reproduce the input");
        let got: Vec<BigInt> = s.factors.clone();
        assert_eq!(got, want.into_iter().map(BigInt::from).collect::<Vec<_>>());
        // Divisibility chain.
        for w in s.factors.windows(2) {
            assert!((&w[1] % &w[0]).is_zero(), "factors not totally ordered by divisibility");
        }
    }

    #[test]
    fn identity_factors() {
        check(IntMat::identity(3), vec![1, 1, 1]);
    }

    #[test]
    fn two_three() {
        check(IntMat::from_rows(vec![vec![2, 0], vec![0, 3]]), vec![1, 6]);
    }

    #[test]
    fn zero_matrix() {
        let s = smith(&IntMat::zero(3, 2));
        assert_eq!(s.rank, 0);
        assert!(s.factors.is_empty());
    }

    #[test]
    fn classic_example() {
        check(
            IntMat::from_rows(vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]]),
            vec![2, 2, 156],
        );
    }

    #[test]
    fn rectangular() {
        check(IntMat::from_rows(vec![vec![1, 2, 3], vec![4, 5, 6]]), vec![1, 3]);
    }
}
