//! Dense exact linear algebra over arbitrary-precision integers and
//! rationals, plus a floating-point symmetric eigensolver used as an
//! independent oracle.

mod charpoly;
mod exact;
mod jacobi;
mod poly;
mod roots;

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub use charpoly::char_poly;
pub use exact::{det, rank, rational_kernel, rank_of_vectors};
pub use jacobi::{float_eigen, symmetric_eigen, SymmetricEigen, EIGEN_RESIDUAL_TOL};
pub use poly::IntPolynomial;
pub use roots::{integer_roots, integer_roots_within, root_bound, IntegerRoots};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("eigensolver did not converge: residual {residual:e} exceeds {target:e} after {sweeps} sweeps")]
    Convergence {
        residual: f64,
        target: f64,
        sweeps: usize,
    },

    #[error("matrix is not symmetric")]
    NotSymmetric,
}

/// Square matrix of arbitrary-precision integers, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    n: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            entries: vec![BigInt::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    /// The all-ones matrix `J_n`.
    pub fn ones(n: usize) -> Self {
        Self {
            n,
            entries: vec![BigInt::one(); n * n],
        }
    }

    /// Builds an `n x n` matrix from a function of `(row, col)`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> i64) -> Self {
        let entries = (0..n * n).map(|idx| BigInt::from(f(idx / n, idx % n))).collect();
        Self { n, entries }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self, LinalgError> {
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(LinalgError::DimensionMismatch {
                left: n,
                right: bad.len(),
            });
        }
        Ok(Self::from_fn(n, |i, j| rows[i][j]))
    }

    pub fn from_entries(n: usize, entries: Vec<BigInt>) -> Result<Self, LinalgError> {
        if entries.len() != n * n {
            return Err(LinalgError::DimensionMismatch {
                left: n * n,
                right: entries.len(),
            });
        }
        Ok(Self { n, entries })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: impl Into<BigInt>) {
        self.entries[i * self.n + j] = value.into();
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (i + 1..self.n).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// Symmetric, zero diagonal and 0/1 entries.
    pub fn is_simple_adjacency(&self) -> bool {
        self.is_symmetric()
            && (0..self.n).all(|i| self.get(i, i).is_zero())
            && self.entries.iter().all(|e| e.is_zero() || e.is_one())
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let entries = (0..n * n)
            .map(|idx| self.entries[(idx % n) * n + idx / n].clone())
            .collect();
        Self { n, entries }
    }

    pub fn trace(&self) -> BigInt {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn row_sums(&self) -> Vec<BigInt> {
        (0..self.n).map(|i| self.row(i).iter().sum()).collect()
    }

    /// Largest absolute row sum, an upper bound on every eigenvalue's modulus.
    pub fn max_abs_row_sum(&self) -> BigInt {
        (0..self.n)
            .map(|i| self.row(i).iter().map(|e| e.abs()).sum::<BigInt>())
            .max()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries
            .iter()
            .map(|e| {
                let v = e.to_f64().unwrap_or(f64::INFINITY);
                v * v
            })
            .sum::<f64>()
            .sqrt()
    }

    pub fn scale(&self, factor: &BigInt) -> Self {
        Self {
            n: self.n,
            entries: self.entries.iter().map(|e| e * factor).collect(),
        }
    }

    /// `self - lambda * I`.
    pub fn shift(&self, lambda: &BigInt) -> Self {
        let mut out = self.clone();
        for i in 0..self.n {
            out.entries[i * self.n + i] -= lambda;
        }
        out
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_dim(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self { n: self.n, entries })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_dim(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Self { n: self.n, entries })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_dim(other)?;
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for l in 0..n {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(l, j);
                    if !b.is_zero() {
                        out.entries[i * n + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Entrywise (Hadamard) product.
    pub fn try_hadamard(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_dim(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a * b)
            .collect();
        Ok(Self { n: self.n, entries })
    }

    /// Kronecker product: the block matrix `(a_ij * other)`.
    pub fn kron(&self, other: &Self) -> Self {
        let (p, r) = (self.n, other.n);
        let n = p * r;
        let mut entries = vec![BigInt::zero(); n * n];
        for i in 0..p {
            for j in 0..p {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for u in 0..r {
                    for v in 0..r {
                        let b = other.get(u, v);
                        if !b.is_zero() {
                            entries[(i * r + u) * n + j * r + v] = a * b;
                        }
                    }
                }
            }
        }
        Self { n, entries }
    }

    /// `P^T * self * P` for the permutation matrix with `P[perm[s]][s] = 1`,
    /// i.e. entry `(s, t)` of the result is `self[perm[s]][perm[t]]`.
    pub fn conjugate_by(&self, perm: &[usize]) -> Result<Self, LinalgError> {
        if perm.len() != self.n {
            return Err(LinalgError::DimensionMismatch {
                left: self.n,
                right: perm.len(),
            });
        }
        let n = self.n;
        let entries = (0..n * n)
            .map(|idx| self.get(perm[idx / n], perm[idx % n]).clone())
            .collect();
        Ok(Self { n, entries })
    }

    pub fn mul_int_vector(&self, v: &[BigInt]) -> Result<Vec<BigInt>, LinalgError> {
        if v.len() != self.n {
            return Err(LinalgError::DimensionMismatch {
                left: self.n,
                right: v.len(),
            });
        }
        Ok((0..self.n)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect())
    }

    pub fn mul_f64_vector(&self, v: &[f64]) -> Result<Vec<f64>, LinalgError> {
        if v.len() != self.n {
            return Err(LinalgError::DimensionMismatch {
                left: self.n,
                right: v.len(),
            });
        }
        let dense = self.to_f64();
        Ok(dense
            .chunks(self.n)
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// Row-major copy as floats.
    pub fn to_f64(&self) -> Vec<f64> {
        self.entries
            .iter()
            .map(|e| e.to_f64().unwrap_or(f64::NAN))
            .collect()
    }

    /// Rows of decimal strings, safe for values beyond 64 bits.
    pub fn to_decimal_rows(&self) -> Vec<Vec<String>> {
        (0..self.n)
            .map(|i| self.row(i).iter().map(|e| e.to_string()).collect())
            .collect()
    }

    fn check_dim(&self, other: &Self) -> Result<(), LinalgError> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(LinalgError::DimensionMismatch {
                left: self.n,
                right: other.n,
            })
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix({}x{})", self.n, self.n)?;
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = self.row(i).iter().map(|e| e.to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

impl Add for &IntMatrix {
    type Output = IntMatrix;

    fn add(self, rhs: Self) -> IntMatrix {
        self.try_add(rhs).expect("matrix dimensions differ")
    }
}

impl Sub for &IntMatrix {
    type Output = IntMatrix;

    fn sub(self, rhs: Self) -> IntMatrix {
        self.try_sub(rhs).expect("matrix dimensions differ")
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;

    fn mul(self, rhs: Self) -> IntMatrix {
        self.try_mul(rhs).expect("matrix dimensions differ")
    }
}

/// Column vector of exact rationals.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalVector(Vec<BigRational>);

impl RationalVector {
    pub fn new(components: Vec<BigRational>) -> Self {
        Self(components)
    }

    pub fn from_ints<I: Into<BigInt>>(components: impl IntoIterator<Item = I>) -> Self {
        Self(
            components
                .into_iter()
                .map(|c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn zeros(n: usize) -> Self {
        Self(vec![BigRational::zero(); n])
    }

    /// The all-ones vector.
    pub fn ones(n: usize) -> Self {
        Self(vec![BigRational::one(); n])
    }

    /// The `i`-th standard unit vector (0-based).
    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = Self::zeros(n);
        v.0[i] = BigRational::one();
        v
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn components(&self) -> &[BigRational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn kron(&self, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.len() * other.len());
        for a in &self.0 {
            for b in &other.0 {
                out.push(a * b);
            }
        }
        Self(out)
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        Self(self.0.iter().map(|c| c * factor).collect())
    }

    /// Writes the vector as `numerators / denominator` with an integer
    /// numerator vector and a positive common denominator.
    pub fn to_common_denominator(&self) -> (Vec<BigInt>, BigInt) {
        let denom = self
            .0
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let numers = self
            .0
            .iter()
            .map(|c| c.numer() * (&denom / c.denom()))
            .collect();
        (numers, denom)
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect()
    }

    /// `a * self` for an integer matrix `a`.
    pub fn mul_by(&self, a: &IntMatrix) -> Result<Self, LinalgError> {
        let (numers, denom) = self.to_common_denominator();
        let product = a.mul_int_vector(&numers)?;
        Ok(Self(
            product
                .into_iter()
                .map(|p| BigRational::new(p, denom.clone()))
                .collect(),
        ))
    }
}

impl fmt::Display for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Kronecker product of two float vectors.
pub fn kron_f64(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().flat_map(|x| b.iter().map(move |y| x * y)).collect()
}

pub fn norm2(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}
