use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Univariate polynomial with arbitrary-precision integer coefficients,
/// stored lowest degree first with no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `x^d`.
    pub fn monomial(d: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); d + 1];
        coeffs[d] = BigInt::one();
        Self { coeffs }
    }

    /// `x - r`.
    pub fn linear_factor(r: &BigInt) -> Self {
        Self::new(vec![-r, BigInt::one()])
    }

    /// Coefficients, lowest degree first.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        use num_traits::ToPrimitive;
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    /// Synthetic division by `x - r`: returns the quotient and `p(r)`.
    pub fn div_linear(&self, r: &BigInt) -> (Self, BigInt) {
        if self.coeffs.is_empty() {
            return (Self::zero(), BigInt::zero());
        }
        let d = self.coeffs.len() - 1;
        let mut quotient = vec![BigInt::zero(); d];
        let mut carry = BigInt::zero();
        for i in (0..=d).rev() {
            let value = &self.coeffs[i] + &carry * r;
            if i == 0 {
                return (Self::new(quotient), value);
            }
            quotient[i - 1] = value.clone();
            carry = value;
        }
        unreachable!()
    }

    /// Multiplicity of the root `x = 0`.
    pub fn zero_root_multiplicity(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Drops the factor `x^j`.
    pub fn shift_down(&self, j: usize) -> Self {
        Self::new(self.coeffs.iter().skip(j).cloned().collect())
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: Self) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let magnitude = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            let show_coeff = i == 0 || !magnitude.is_one();
            if show_coeff {
                write!(f, "{magnitude}")?;
            }
            match i {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes_trailing_zeros() {
        let p = IntPolynomial::from_i64(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), 1);
        assert!(IntPolynomial::from_i64(&[0, 0]).is_zero());
    }

    #[test]
    fn display() {
        assert_eq!(IntPolynomial::from_i64(&[-1, 0, 1]).to_string(), "x^2 - 1");
        assert_eq!(IntPolynomial::from_i64(&[0, 0, -3, 1]).to_string(), "x^3 - 3x^2");
        assert_eq!(IntPolynomial::from_i64(&[5]).to_string(), "5");
        assert_eq!(IntPolynomial::from_i64(&[1, -1]).to_string(), "-x + 1");
    }

    #[test]
    fn synthetic_division() {
        // x^3 - 3x^2 = (x - 3) x^2
        let p = IntPolynomial::from_i64(&[0, 0, -3, 1]);
        let (q, r) = p.div_linear(&BigInt::from(3));
        assert_eq!(r, BigInt::zero());
        assert_eq!(q, IntPolynomial::from_i64(&[0, 0, 1]));
        let (_, r) = p.div_linear(&BigInt::from(1));
        assert_eq!(r, p.eval(&BigInt::from(1)));
    }

    #[test]
    fn product_and_power() {
        let a = IntPolynomial::linear_factor(&BigInt::from(2));
        let sq = a.pow(2);
        assert_eq!(sq, IntPolynomial::from_i64(&[4, -4, 1]));
        assert_eq!(&sq * &IntPolynomial::zero(), IntPolynomial::zero());
    }
}
