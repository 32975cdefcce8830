//! Smith normal form over the integers with a verifiable witness: the two
//! unimodular transformations whose product with the input gives the
//! diagonal form.

use crate::matrix::IntegerMatrix;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// D = left * A * right with D diagonal, d1 | d2 | ... and left, right
/// unimodular.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub d: IntegerMatrix,
    pub left: IntegerMatrix,
    pub right: IntegerMatrix,
}

impl SmithDecomposition {
    /// Exact check of the witness identity left * A * right == D.
    pub fn verify(&self, a: &IntegerMatrix) -> bool {
        self.left.mul(a).mul(&self.right) == self.d
    }

    /// Diagonal entries, including zeros.
    pub fn diagonal(&self) -> Vec<BigInt> {
        let n = self.d.rows().min(self.d.cols());
        (0..n).map(|i| self.d.get(i, i).clone()).collect()
    }

    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|v| !v.is_zero()).count()
    }

    /// Nontrivial torsion coefficients (diagonal entries >= 2) in
    /// divisibility order.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.diagonal()
            .into_iter()
            .filter(|v| v.abs() > BigInt::from(1))
            .map(|v| v.abs())
            .collect()
    }
}

/// Position of the entry of smallest nonzero absolute value in the trailing
/// submatrix starting at (k, k). Pivoting on it limits coefficient growth;
/// correctness is independent of the choice.
fn smallest_pivot(a: &IntegerMatrix, k: usize) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), BigInt)> = None;
    for i in k..a.rows() {
        for j in k..a.cols() {
            let v = a.get(i, j);
            if v.is_zero() {
                continue;
            }
            let mag = v.abs();
            match &best {
                Some((_, m)) if *m <= mag => {}
                _ => best = Some(((i, j), mag)),
            }
        }
    }
    best.map(|(pos, _)| pos)
}

pub fn smith_normal_form(a: &IntegerMatrix) -> SmithDecomposition {
    let mut d = a.clone();
    let mut left = IntegerMatrix::identity(a.rows());
    let mut right = IntegerMatrix::identity(a.cols());
    let n = a.rows().min(a.cols());

    let mut k = 0;
    while k < n {
        let Some((pi, pj)) = smallest_pivot(&d, k) else {
            break;
        };
        d.swap_rows(k, pi);
        left.swap_rows(k, pi);
        d.swap_cols(k, pj);
        right.swap_cols(k, pj);

        // Clear row and column k; restart whenever a remainder changes the
        // pivot, which terminates because the pivot magnitude decreases.
        loop {
            let mut dirty = false;
            for i in (k + 1)..d.rows() {
                if d.get(i, k).is_zero() {
                    continue;
                }
                let q = -(d.get(i, k) / d.get(k, k));
                d.add_row_multiple(i, k, &q);
                left.add_row_multiple(i, k, &q);
                if !d.get(i, k).is_zero() {
                    d.swap_rows(k, i);
                    left.swap_rows(k, i);
                    dirty = true;
                }
            }
            for j in (k + 1)..d.cols() {
                if d.get(k, j).is_zero() {
                    continue;
                }
                let q = -(d.get(k, j) / d.get(k, k));
                d.add_col_multiple(j, k, &q);
                right.add_col_multiple(j, k, &q);
                if !d.get(k, j).is_zero() {
                    d.swap_cols(k, j);
                    right.swap_cols(k, j);
                    dirty = true;
                }
            }
            if !dirty {
                break;
            }
        }

        // Divisibility fix: if some trailing entry is not divisible by the
        // pivot, fold its row in and redo this position.
        let pivot = d.get(k, k).clone();
        let mut fixed = true;
        'outer: for i in (k + 1)..d.rows() {
            for j in (k + 1)..d.cols() {
                if !(d.get(i, j) % &pivot).is_zero() {
                    let one = BigInt::from(1);
                    d.add_row_multiple(k, i, &one);
                    left.add_row_multiple(k, i, &one);
                    fixed = false;
                    break 'outer;
                }
            }
        }
        if !fixed {
            continue;
        }

        if d.get(k, k).is_negative() {
            d.negate_row(k);
            left.negate_row(k);
        }
        k += 1;
    }

    SmithDecomposition { d, left, right }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag_of(rows: &[Vec<i64>]) -> Vec<i64> {
        use num_traits::ToPrimitive;
        let a = IntegerMatrix::from_rows_i64(rows);
        let s = smith_normal_form(&a);
        assert!(s.verify(&a), "witness identity failed");
        s.diagonal().iter().map(|v| v.to_i64().unwrap()).collect()
    }

    #[test]
    fn one_by_one() {
        assert_eq!(diag_of(&[vec![2]]), vec![2]);
    }

    #[test]
    fn already_diagonal() {
        assert_eq!(diag_of(&[vec![1, 0], vec![0, 0]]), vec![1, 0]);
    }

    #[test]
    fn two_by_two_with_torsion() {
        // Hand row-reduction gives diag(2, 4); d1*d2 = |det| = 8.
        assert_eq!(diag_of(&[vec![2, 4], vec![6, 8]]), vec![2, 4]);
    }

    #[test]
    fn divisibility_chain_and_witness() {
        let rows = vec![
            vec![-6, 111, -36, 6],
            vec![5, -672, 210, 74],
            vec![0, -255, 81, 24],
            vec![-7, 255, -81, -10],
        ];
        let a = IntegerMatrix::from_rows_i64(&rows);
        let s = smith_normal_form(&a);
        assert!(s.verify(&a));
        let d = s.diagonal();
        for w in d.windows(2) {
            if !w[0].is_zero() && !w[1].is_zero() {
                assert!((&w[1] % &w[0]).is_zero(), "divisibility broken: {d:?}");
            }
        }
    }
}
