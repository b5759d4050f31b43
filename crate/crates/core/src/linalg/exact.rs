//! Fraction-free (Bareiss) elimination over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{IntMatrix, RationalVector};

/// Row echelon form of an integer matrix by fraction-free elimination.
/// Every entry stays an integer minor of the input, so the divisions are
/// exact.
struct Echelon {
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
    swaps: usize,
}

fn echelon(mut rows: Vec<Vec<BigInt>>) -> Echelon {
    let cols = rows.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut swaps = 0;
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            rows.swap(p, r);
            swaps += 1;
        }
        let (top, rest) = rows.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let pivot = &pivot_row[c];
        for row in rest.iter_mut() {
            let factor = std::mem::take(&mut row[c]);
            for j in c + 1..cols {
                let updated = pivot * &row[j] - &factor * &pivot_row[j];
                row[j] = if prev.is_one() { updated } else { updated / &prev };
            }
        }
        prev = rows[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    Echelon {
        rows,
        pivots,
        swaps,
    }
}

fn matrix_rows(a: &IntMatrix) -> Vec<Vec<BigInt>> {
    (0..a.dim()).map(|i| a.row(i).to_vec()).collect()
}

/// Exact determinant.
pub fn det(a: &IntMatrix) -> BigInt {
    let n = a.dim();
    if n == 0 {
        return BigInt::one();
    }
    let e = echelon(matrix_rows(a));
    if e.pivots.len() < n {
        return BigInt::zero();
    }
    let d = e.rows[n - 1][n - 1].clone();
    if e.swaps % 2 == 1 {
        -d
    } else {
        d
    }
}

/// Exact rank.
pub fn rank(a: &IntMatrix) -> usize {
    echelon(matrix_rows(a)).pivots.len()
}

/// Exact rank of the span of a family of rational vectors of equal length.
pub fn rank_of_vectors(vectors: &[RationalVector]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let rows = vectors
        .iter()
        .map(|v| v.to_common_denominator().0)
        .collect();
    echelon(rows).pivots.len()
}

/// Basis of `ker(a - lambda I)`, one vector per free column of the echelon
/// form. Each vector is scaled to a primitive integer vector whose first
/// nonzero entry is positive. Empty iff `lambda` is not an eigenvalue.
pub fn rational_kernel(a: &IntMatrix, lambda: &BigInt) -> Vec<RationalVector> {
    let n = a.dim();
    let e = echelon(matrix_rows(&a.shift(lambda)));
    let is_pivot = {
        let mut flags = vec![false; n];
        for &c in &e.pivots {
            flags[c] = true;
        }
        flags
    };
    (0..n)
        .filter(|&f| !is_pivot[f])
        .map(|free| {
            let mut x = vec![BigRational::zero(); n];
            x[free] = BigRational::one();
            for (r, &c) in e.pivots.iter().enumerate().rev() {
                let row = &e.rows[r];
                let s: BigRational = (c + 1..n)
                    .filter(|&j| !row[j].is_zero() && !x[j].is_zero())
                    .map(|j| &x[j] * &row[j])
                    .sum();
                x[c] = -s / &row[c];
            }
            primitive(x)
        })
        .collect()
}

fn primitive(x: Vec<BigRational>) -> RationalVector {
    let (numers, _) = RationalVector::new(x).to_common_denominator();
    let g = numers.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    let sign_flip = numers
        .iter()
        .find(|v| !v.is_zero())
        .is_some_and(Signed::is_negative);
    let divisor = if sign_flip { -g } else { g };
    RationalVector::from_ints(numers.into_iter().map(|v| v / &divisor))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_of_all_ones() {
        let j2 = IntMatrix::ones(2);
        assert_eq!(
            rational_kernel(&j2, &BigInt::zero()),
            vec![RationalVector::from_ints([1, -1])]
        );
        assert_eq!(
            rational_kernel(&IntMatrix::ones(3), &BigInt::from(3)),
            vec![RationalVector::from_ints([1, 1, 1])]
        );
        assert!(rational_kernel(&j2, &BigInt::from(5)).is_empty());
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let a = IntMatrix::from_rows(&[
            vec![0, 1, 1, 0],
            vec![1, 0, 0, 1],
            vec![1, 0, 0, 1],
            vec![0, 1, 1, 0],
        ])
        .unwrap();
        let basis = rational_kernel(&a, &BigInt::zero());
        assert_eq!(basis.len(), 2);
        for v in &basis {
            assert!(v.mul_by(&a).unwrap().is_zero());
        }
        assert_eq!(rank_of_vectors(&basis), 2);
    }

    #[test]
    fn ranks() {
        assert_eq!(rank(&IntMatrix::ones(3)), 1);
        assert_eq!(rank(&IntMatrix::identity(4)), 4);
        assert_eq!(rank(&IntMatrix::zeros(3)), 0);
        assert_eq!(rank_of_vectors(&[]), 0);
    }

    #[test]
    fn determinants() {
        let a = IntMatrix::from_rows(&[vec![0, 2, 1], vec![3, 1, 0], vec![1, 1, 1]]).unwrap();
        // 0*(1-0) - 2*(3-0) + 1*(3-1) = -4
        assert_eq!(det(&a), BigInt::from(-4));
        assert_eq!(det(&IntMatrix::ones(3)), BigInt::zero());
        assert_eq!(det(&IntMatrix::identity(5).scale(&BigInt::from(2))), BigInt::from(32));
    }
}
