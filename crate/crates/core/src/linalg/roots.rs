use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntPolynomial;

/// Integer roots with multiplicities, ascending, and the cofactor that has no
/// integer roots left.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerRoots {
    pub roots: Vec<(BigInt, usize)>,
    pub residual: IntPolynomial,
}

impl IntegerRoots {
    /// Rebuilds `prod (x - r)^mult * residual`.
    pub fn reconstruct(&self) -> IntPolynomial {
        self.roots.iter().fold(self.residual.clone(), |acc, (r, mult)| {
            &acc * &IntPolynomial::linear_factor(r).pow(*mult)
        })
    }

    pub fn root_count(&self) -> usize {
        self.roots.iter().map(|(_, m)| m).sum()
    }
}

/// Fujiwara-type bound on the modulus of every root:
/// `2 * max_i |a_{d-i}|^{1/i}`, rounded up, with the constant term halved.
/// Dividing by the leading coefficient is skipped, which only loosens it.
pub fn root_bound(p: &IntPolynomial) -> BigInt {
    let d = p.degree();
    if d == 0 {
        return BigInt::zero();
    }
    let mut best = BigInt::zero();
    for i in 1..=d {
        let mut c = p.coeff(d - i).abs();
        if i == d {
            c = (c + 1u32) / 2u32;
        }
        if c.is_zero() {
            continue;
        }
        let root = c.nth_root(i as u32);
        let ceil = if root.pow(i as u32) == c { root } else { root + 1u32 };
        best = best.max(ceil);
    }
    best * 2u32
}

/// All integer roots of `p`.
pub fn integer_roots(p: &IntPolynomial) -> IntegerRoots {
    integer_roots_within(p, &root_bound(p))
}

/// Integer roots of `p` with absolute value at most `bound`, found by trial
/// division over divisors of the constant term. If `bound` is below the true
/// root bound, larger roots stay in the residual.
pub fn integer_roots_within(p: &IntPolynomial, bound: &BigInt) -> IntegerRoots {
    let bound = bound.clone().min(root_bound(p));
    let mut roots = Vec::new();
    let zeros = p.zero_root_multiplicity();
    if p.is_zero() {
        return IntegerRoots {
            roots,
            residual: p.clone(),
        };
    }
    if zeros > 0 {
        roots.push((BigInt::zero(), zeros));
    }
    let mut rest = p.shift_down(zeros);

    let mut r = -bound.clone();
    while r <= bound && !rest.is_constant() {
        if !r.is_zero() && rest.coeff(0).is_multiple_of(&r) {
            let mut mult = 0;
            loop {
                let (quotient, remainder) = rest.div_linear(&r);
                if !remainder.is_zero() {
                    break;
                }
                rest = quotient;
                mult += 1;
            }
            if mult > 0 {
                roots.push((r.clone(), mult));
            }
        }
        r += BigInt::one();
    }
    roots.sort();
    IntegerRoots {
        roots,
        residual: rest,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn roots_of(c: &[i64]) -> (Vec<(i64, usize)>, IntPolynomial) {
        let out = integer_roots(&IntPolynomial::from_i64(c));
        let roots = out
            .roots
            .iter()
            .map(|(r, m)| (i64::try_from(r).unwrap(), *m))
            .collect();
        (roots, out.residual)
    }

    #[test]
    fn splits_completely() {
        assert_eq!(roots_of(&[-1, 0, 1]), (vec![(-1, 1), (1, 1)], IntPolynomial::one()));
        assert_eq!(roots_of(&[0, 0, -3, 1]), (vec![(0, 2), (3, 1)], IntPolynomial::one()));
    }

    #[test]
    fn irrational_roots_stay_in_residual() {
        let p = IntPolynomial::from_i64(&[-2, 0, 1]);
        assert_eq!(roots_of(&[-2, 0, 1]), (vec![], p));
    }

    #[test]
    fn mixed_factorization_reconstructs() {
        // (x + 2)^3 (x^2 - 2) x
        let p = &(&IntPolynomial::linear_factor(&BigInt::from(-2)).pow(3)
            * &IntPolynomial::from_i64(&[-2, 0, 1]))
            * &IntPolynomial::monomial(1);
        let out = integer_roots(&p);
        assert_eq!(out.roots, vec![(BigInt::from(-2), 3), (BigInt::zero(), 1)]);
        assert_eq!(out.residual, IntPolynomial::from_i64(&[-2, 0, 1]));
        assert_eq!(out.reconstruct(), p);
    }

    #[test]
    fn bound_covers_roots() {
        // Roots 12 and -12: bound must reach 12.
        let p = IntPolynomial::from_i64(&[-144, 0, 1]);
        assert!(root_bound(&p) >= BigInt::from(12));
        assert_eq!(integer_roots(&p).root_count(), 2);
        // An explicit tighter bound keeps large roots in the residual.
        let out = integer_roots_within(&p, &BigInt::from(5));
        assert_eq!(out.root_count(), 0);
        assert_eq!(out.residual, p);
    }
}
