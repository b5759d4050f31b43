//! Exact characteristic polynomials.
//!
//! `det(xI - A)` is computed modulo a sequence of 31-bit primes by Hessenberg
//! reduction and recombined with the Chinese remainder theorem until the
//! modulus exceeds twice a rigorous bound on the coefficients. The result is
//! exact, not probabilistic.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{IntMatrix, IntPolynomial};

pub fn char_poly(a: &IntMatrix) -> IntPolynomial {
    let n = a.dim();
    let bound = coefficient_bound(a);
    let target = &bound * 2u32;

    let mut modulus = BigInt::one();
    let mut residues = vec![BigInt::zero(); n + 1];
    for p in Primes::below_2_31() {
        let poly_mod_p = char_poly_mod(a, p);
        crt_accumulate(&mut residues, &modulus, &poly_mod_p, p);
        modulus *= p;
        if modulus > target {
            break;
        }
    }
    let half = &modulus >> 1u32;
    let coeffs = residues
        .into_iter()
        .map(|r| if r > half { r - &modulus } else { r })
        .collect();
    let poly = IntPolynomial::new(coeffs);
    debug_assert!(poly.is_monic() && poly.degree() == n);
    poly
}

/// Bound on every coefficient of `det(xI - A)`.
///
/// The coefficient of `x^(n-k)` is a signed sum of the `k x k` principal
/// minors. By Hadamard each minor is at most the product of the Euclidean
/// norms of its rows, which are no larger than the full rows, so the sum is
/// at most `e_k(|a_1|, ..., |a_n|) <= prod_i (1 + |a_i|)`.
fn coefficient_bound(a: &IntMatrix) -> BigInt {
    (0..a.dim())
        .map(|i| {
            let sq: BigInt = a.row(i).iter().map(|e| e * e).sum();
            let root = sq.sqrt();
            let ceil = if &root * &root == sq { root } else { root + 1 };
            ceil + 1
        })
        .product()
}

fn crt_accumulate(residues: &mut [BigInt], modulus: &BigInt, new: &[u64], p: u64) {
    let m_mod_p = (modulus % p).to_u64().expect("residue fits in u64");
    let inv = mod_inverse(m_mod_p, p);
    for (acc, &r) in residues.iter_mut().zip(new) {
        let a_mod_p = (&*acc % p).to_u64().expect("residue fits in u64");
        let diff = (r + p - a_mod_p) % p;
        let t = diff * inv % p;
        if t != 0 {
            *acc += modulus * t;
        }
    }
}

/// Characteristic polynomial modulo the prime `p`, lowest degree first.
fn char_poly_mod(a: &IntMatrix, p: u64) -> Vec<u64> {
    let n = a.dim();
    let pi = BigInt::from(p);
    let mut h: Vec<u64> = a
        .entries()
        .iter()
        .map(|e| {
            let r = e % &pi;
            let r = if r.is_negative() { r + &pi } else { r };
            r.to_u64().expect("residue fits in u64")
        })
        .collect();

    // Reduce to upper Hessenberg form by similarity transforms.
    for j in 0..n.saturating_sub(2) {
        let Some(piv) = (j + 1..n).find(|&i| h[i * n + j] != 0) else {
            continue;
        };
        if piv != j + 1 {
            for c in 0..n {
                h.swap(piv * n + c, (j + 1) * n + c);
            }
            for r in 0..n {
                h.swap(r * n + piv, r * n + j + 1);
            }
        }
        let inv = mod_inverse(h[(j + 1) * n + j], p);
        for r in j + 2..n {
            let u = h[r * n + j] * inv % p;
            if u == 0 {
                continue;
            }
            // row_r -= u * row_{j+1}
            for c in 0..n {
                let sub = u * h[(j + 1) * n + c] % p;
                h[r * n + c] = (h[r * n + c] + p - sub) % p;
            }
            // col_{j+1} += u * col_r
            for row in 0..n {
                h[row * n + j + 1] = (h[row * n + j + 1] + u * h[row * n + r]) % p;
            }
        }
    }

    // Leading-principal recurrence for Hessenberg matrices.
    let mut polys: Vec<Vec<u64>> = Vec::with_capacity(n + 1);
    polys.push(vec![1]);
    for mm in 0..n {
        let prev = &polys[mm];
        let mut next = vec![0u64; mm + 2];
        let diag = h[mm * n + mm];
        for (d, &c) in prev.iter().enumerate() {
            next[d + 1] = (next[d + 1] + c) % p;
            next[d] = (next[d] + p - diag * c % p) % p;
        }
        let mut t = 1u64;
        for i in 1..=mm {
            t = t * h[(mm - i + 1) * n + mm - i] % p;
            if t == 0 {
                break;
            }
            let factor = t * h[(mm - i) * n + mm] % p;
            if factor == 0 {
                continue;
            }
            for (d, &c) in polys[mm - i].iter().enumerate() {
                next[d] = (next[d] + p - factor * c % p) % p;
            }
        }
        polys.push(next);
    }
    polys.pop().expect("recurrence starts from the constant 1")
}

fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    mod_pow(a, p - 2, p)
}

/// Primes below `2^31` in descending order, found by trial division.
struct Primes {
    next: u64,
}

impl Primes {
    fn below_2_31() -> Self {
        Self { next: (1 << 31) - 1 }
    }
}

impl Iterator for Primes {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        while self.next > 2 {
            let candidate = self.next;
            self.next -= 1;
            if is_prime(candidate) {
                return Some(candidate);
            }
        }
        None
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}
