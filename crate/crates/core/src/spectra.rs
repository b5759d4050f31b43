//! Exact spectra and integrality.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::linalg::{char_poly, integer_roots_within, IntMatrix, IntPolynomial, IntegerRoots};

/// Exact spectrum of an integer matrix: the integer eigenvalues with
/// multiplicities, and the factor of the characteristic polynomial that
/// carries the remaining (non-integer) eigenvalues.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spectrum {
    /// Ascending by eigenvalue; multiplicities are positive.
    pub integer_part: Vec<(BigInt, usize)>,
    /// Monic, no integer roots; the constant 1 when the spectrum is integral.
    pub residual: IntPolynomial,
}

impl Spectrum {
    /// Builds a spectrum from `(value, multiplicity)` pairs, merging repeated
    /// values and dropping zero multiplicities.
    pub fn from_integers(pairs: impl IntoIterator<Item = (BigInt, usize)>) -> Self {
        let mut sorted: Vec<(BigInt, usize)> = pairs.into_iter().filter(|(_, m)| *m > 0).collect();
        sorted.sort();
        let mut integer_part: Vec<(BigInt, usize)> = Vec::with_capacity(sorted.len());
        for (value, mult) in sorted {
            match integer_part.last_mut() {
                Some((last, m)) if *last == value => *m += mult,
                _ => integer_part.push((value, mult)),
            }
        }
        Self {
            integer_part,
            residual: IntPolynomial::one(),
        }
    }

    pub fn is_integral(&self) -> bool {
        self.residual.is_constant()
    }

    pub fn residual_degree(&self) -> usize {
        self.residual.degree()
    }

    /// Number of eigenvalues, counted with multiplicity.
    pub fn dim(&self) -> usize {
        self.integer_eigenvalue_count() + self.residual_degree()
    }

    pub fn integer_eigenvalue_count(&self) -> usize {
        self.integer_part.iter().map(|(_, m)| m).sum()
    }

    pub fn multiplicity(&self, value: &BigInt) -> usize {
        self.integer_part
            .iter()
            .find(|(v, _)| v == value)
            .map_or(0, |(_, m)| *m)
    }

    /// Integer eigenvalues repeated by multiplicity, ascending.
    pub fn integer_eigenvalues(&self) -> Vec<BigInt> {
        self.integer_part
            .iter()
            .flat_map(|(v, m)| std::iter::repeat_n(v.clone(), *m))
            .collect()
    }

    /// Sum of all eigenvalues: the integer ones plus the root sum of the
    /// residual, read off its second-highest coefficient.
    pub fn eigenvalue_sum(&self) -> BigInt {
        let integer: BigInt = self.integer_part.iter().map(|(v, m)| v * BigInt::from(*m)).sum();
        let d = self.residual.degree();
        if d == 0 {
            integer
        } else {
            integer - self.residual.coeff(d - 1)
        }
    }

    /// The characteristic polynomial this spectrum describes.
    pub fn char_poly(&self) -> IntPolynomial {
        IntegerRoots {
            roots: self.integer_part.clone(),
            residual: self.residual.clone(),
        }
        .reconstruct()
    }
}

impl fmt::Display for Spectrum {
    /// `{-3^(1), 0^(4), 3^(1)}`, followed by the residual when nonconstant.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .integer_part
            .iter()
            .map(|(v, m)| format!("{v}^({m})"))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))?;
        if !self.is_integral() {
            write!(f, " + roots of {}", self.residual)?;
        }
        Ok(())
    }
}

/// Exact spectrum of a symmetric integer matrix.
pub fn exact_spectrum(a: &IntMatrix) -> Spectrum {
    let p = char_poly(a);
    // Every eigenvalue of a symmetric matrix is bounded by the largest
    // absolute row sum.
    let roots = integer_roots_within(&p, &a.max_abs_row_sum());
    Spectrum {
        integer_part: roots.roots,
        residual: roots.residual,
    }
}

pub fn is_integral(a: &IntMatrix) -> bool {
    exact_spectrum(a).is_integral()
}

/// Characteristic polynomial of the complete multipartite graph with the
/// given part sizes:
/// `x^(n-k) * (x^k - sum_{j=2..k} (j-1) e_j x^(k-j))`, where `e_j` is the
/// elementary symmetric polynomial of degree `j` in the part sizes.
pub fn multipartite_charpoly(parts: &[usize]) -> IntPolynomial {
    assert!(!parts.is_empty(), "need at least one part");
    let k = parts.len();
    let n: usize = parts.iter().sum();

    // e[j] after processing every part.
    let mut e = vec![BigInt::zero(); k + 1];
    e[0] = BigInt::from(1);
    for (seen, &p) in parts.iter().enumerate() {
        let p = BigInt::from(p);
        for j in (1..=seen + 1).rev() {
            let term = &e[j - 1] * &p;
            e[j] += term;
        }
    }

    // Ascending coefficients of the degree-k factor.
    let mut inner = vec![BigInt::zero(); k + 1];
    inner[k] = BigInt::from(1);
    for (j, ej) in e.iter().enumerate().skip(2) {
        inner[k - j] = -(BigInt::from(j - 1) * ej);
    }
    let mut coeffs = vec![BigInt::zero(); n - k];
    coeffs.extend(inner);
    IntPolynomial::new(coeffs)
}

/// Spectrum of `K_{q,...,q}` with `k` parts:
/// `0` with multiplicity `kq - k`, `(k-1)q` once and `-q` with multiplicity
/// `k - 1`.
pub fn multipartite_spectrum(q: usize, k: usize) -> Spectrum {
    assert!(q >= 1 && k >= 1, "part size and part count must be positive");
    let q_big = BigInt::from(q);
    let s = Spectrum::from_integers([
        (BigInt::zero(), k * q - k),
        (BigInt::from(k - 1) * &q_big, 1),
        (-q_big, k - 1),
    ]);
    debug_assert_eq!(s.char_poly(), multipartite_charpoly(&vec![q; k]));
    s
}

/// Adjacency matrix of the complete multipartite graph with the given part
/// sizes, parts laid out consecutively.
pub fn complete_multipartite(parts: &[usize]) -> IntMatrix {
    let part_of: Vec<usize> = parts
        .iter()
        .enumerate()
        .flat_map(|(i, &p)| std::iter::repeat_n(i, p))
        .collect();
    IntMatrix::from_fn(part_of.len(), |i, j| i64::from(part_of[i] != part_of[j]))
}

/// Largest integer eigenvalue, if any.
pub fn max_integer_eigenvalue(s: &Spectrum) -> Option<&BigInt> {
    s.integer_part.last().map(|(v, _)| v)
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::adjacency;
    use crate::tiling::classical_tiling;

    fn pairs(s: &Spectrum) -> Vec<(i64, usize)> {
        s.integer_part
            .iter()
            .map(|(v, m)| (i64::try_from(v).unwrap(), *m))
            .collect()
    }

    #[test]
    fn all_ones() {
        let s = exact_spectrum(&IntMatrix::ones(4));
        assert_eq!(pairs(&s), vec![(0, 3), (4, 1)]);
        assert!(s.is_integral());
        assert_eq!(s.dim(), 4);
    }

    #[test]
    fn path_is_not_integral() {
        let p3 = IntMatrix::from_rows(&[vec![0, 1, 0], vec![1, 0, 1], vec![0, 1, 0]]).unwrap();
        let s = exact_spectrum(&p3);
        assert!(!is_integral(&p3));
        assert_eq!(pairs(&s), vec![(0, 1)]);
        assert_eq!(s.residual, IntPolynomial::from_i64(&[-2, 0, 1]));
        assert_eq!(s.eigenvalue_sum(), BigInt::zero());
        assert_eq!(s.to_string(), "{0^(1)} + roots of x^2 - 2");
    }

    #[test]
    fn complete_graph() {
        for k in 1..=6 {
            let a = &IntMatrix::ones(k) - &IntMatrix::identity(k);
            assert!(is_integral(&a));
            assert_eq!(exact_spectrum(&a), multipartite_spectrum(1, k));
        }
    }

    #[test]
    fn classical_shidoku() {
        // Cross-checked against the float oracle before pinning.
        let s = exact_spectrum(&adjacency(&classical_tiling(2)));
        assert_eq!(pairs(&s), vec![(-3, 4), (-1, 5), (1, 4), (3, 2), (7, 1)]);
        assert!(s.is_integral());
        assert_eq!(s.eigenvalue_sum(), BigInt::zero());
    }

    #[test]
    fn multipartite_charpoly_examples() {
        assert_eq!(multipartite_charpoly(&[1, 1]), IntPolynomial::from_i64(&[-1, 0, 1]));
        assert_eq!(multipartite_charpoly(&[1, 2]), IntPolynomial::from_i64(&[0, -2, 0, 1]));
        assert_eq!(multipartite_charpoly(&[3]), IntPolynomial::monomial(3));
    }

    #[test]
    fn multipartite_spectra() {
        assert_eq!(pairs(&multipartite_spectrum(3, 2)), vec![(-3, 1), (0, 4), (3, 1)]);
        assert_eq!(pairs(&multipartite_spectrum(2, 3)), vec![(-2, 2), (0, 3), (4, 1)]);
        assert_eq!(pairs(&multipartite_spectrum(4, 1)), vec![(0, 4)]);
        assert_eq!(
            exact_spectrum(&complete_multipartite(&[2, 2, 2])),
            multipartite_spectrum(2, 3)
        );
    }

    #[test]
    fn display_of_integral_spectrum() {
        assert_eq!(multipartite_spectrum(3, 2).to_string(), "{-3^(1), 0^(4), 3^(1)}");
    }
}
