//! Helpers shared by the integration test targets.

#![allow(dead_code)]

use std::path::PathBuf;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sudoku_spectra::linalg::IntPolynomial;
use sudoku_spectra::{IntMatrix, Tiling};

pub fn fixture(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

/// Whitespace-separated integer rows.
pub fn fixture_matrix(name: &str) -> IntMatrix {
    let rows: Vec<Vec<i64>> = fixture(name)
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| l.split_whitespace().map(|t| t.parse().unwrap()).collect())
        .collect();
    IntMatrix::from_rows(&rows).unwrap()
}

/// Whitespace-separated symbol rows.
pub fn fixture_rows(name: &str) -> Vec<String> {
    fixture(name)
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(str::to_owned)
        .collect()
}

/// The free-form Shidoku with blocks {1,2,3,4}, {5,9,13,14}, {6,8,12,16},
/// {7,10,11,15}.
pub fn free_shidoku() -> Tiling {
    Tiling::from_cell_sets(4, &[&[1, 2, 3, 4], &[5, 9, 13, 14], &[6, 8, 12, 16], &[7, 10, 11, 15]]).unwrap()
}

/// Constant row sums in both layers, yet `L_H` and `L_V` do not commute.
pub fn non_commuting_tiling() -> Tiling {
    Tiling::from_cell_sets(4, &[&[1, 8, 9, 16], &[3, 6, 10, 15], &[2, 7, 11, 14], &[4, 5, 12, 13]]).unwrap()
}

/// Random symmetric 0/1 matrix with zero diagonal.
pub fn random_adjacency(rng: &mut ChaCha8Rng, n: usize) -> IntMatrix {
    let mut a = IntMatrix::zeros(n);
    for i in 0..n {
        for j in i + 1..n {
            if rng.next_u32() & 1 == 1 {
                a.set(i, j, 1);
                a.set(j, i, 1);
            }
        }
    }
    a
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Pairs two sorted lists and returns the largest gap.
pub fn max_gap(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len(), "multisets differ in size");
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

// Exact real-root isolation for integer polynomials, kept independent of the
// library: Yun square-free decomposition and Sturm sequences, both over
// primitive integer polynomials, then bisection on dyadic points `a / 2^e`.

type ZPoly = Vec<BigInt>;

fn trim(mut p: ZPoly) -> ZPoly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn degree(p: &ZPoly) -> usize {
    p.len().saturating_sub(1)
}

fn derivative(p: &ZPoly) -> ZPoly {
    trim(p.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect())
}

fn sub(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let zero = BigInt::zero();
    trim(
        (0..a.len().max(b.len()))
            .map(|i| a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero))
            .collect(),
    )
}

/// Divides out the content and makes the leading coefficient positive.
fn primitive(p: ZPoly) -> ZPoly {
    let p = trim(p);
    let mut g = p.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() {
        return p;
    }
    if p.last().unwrap().is_negative() {
        g = -g;
    }
    p.into_iter().map(|c| c / &g).collect()
}

/// `lc(b)^(deg a - deg b + 1) a mod b`.
fn prem(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let lead = b.last().expect("nonzero divisor");
    let mut r = a.clone();
    for _ in 0..=(degree(a) - degree(b)) {
        let top = r.last().cloned().unwrap_or_default();
        let shift = r.len() - b.len();
        for c in r.iter_mut() {
            *c *= lead;
        }
        for (i, c) in b.iter().enumerate() {
            r[i + shift] -= &top * c;
        }
        r.pop();
    }
    trim(r)
}

fn gcd(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let (mut a, mut b) = (primitive(a.clone()), primitive(b.clone()));
    if degree(&a) < degree(&b) {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let r = primitive(prem(&a, &b));
        a = b;
        b = r;
    }
    a
}

/// Exact quotient; `b` must divide `a` over the integers.
fn exact_div(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let mut r = a.clone();
    if r.len() < b.len() {
        assert!(r.is_empty(), "not divisible");
        return Vec::new();
    }
    let lead = b.last().unwrap();
    let mut q = vec![BigInt::zero(); r.len() - b.len() + 1];
    for shift in (0..q.len()).rev() {
        let (factor, rem) = r[shift + b.len() - 1].div_rem(lead);
        assert!(rem.is_zero(), "not divisible");
        for (i, c) in b.iter().enumerate() {
            r[i + shift] -= &factor * c;
        }
        q[shift] = factor;
    }
    assert!(r.iter().all(Zero::is_zero), "not divisible");
    trim(q)
}

/// Square-free factors `f_i` with multiplicity `i`, `p = c prod f_i^i`.
fn yun(p: &ZPoly) -> Vec<(ZPoly, usize)> {
    let dp = derivative(p);
    let a0 = gcd(p, &dp);
    let mut b = exact_div(p, &a0);
    let c = exact_div(&dp, &a0);
    let mut d = sub(&c, &derivative(&b));
    let mut out = Vec::new();
    let mut i = 1;
    while degree(&b) > 0 {
        let a = if d.is_empty() { primitive(b.clone()) } else { gcd(&b, &d) };
        let b_next = exact_div(&b, &a);
        let c_next = exact_div(&d, &a);
        d = sub(&c_next, &derivative(&b_next));
        if degree(&a) > 0 {
            out.push((a, i));
        }
        b = b_next;
        i += 1;
    }
    out
}

/// Sturm sequence up to positive factors.
fn sturm_chain(p: &ZPoly) -> Vec<ZPoly> {
    let mut chain = vec![p.clone(), primitive(derivative(p))];
    while degree(chain.last().unwrap()) > 0 {
        let n = chain.len();
        let (a, b) = (&chain[n - 2], &chain[n - 1]);
        let mut r = prem(a, b);
        // prem carries lc(b)^delta; undo its sign, then negate.
        let delta = degree(a) - degree(b) + 1;
        if !(b.last().unwrap().is_negative() && delta % 2 == 1) {
            r = r.into_iter().map(|c| -c).collect();
        }
        if r.is_empty() {
            break;
        }
        // Divide by the positive content only.
        let g = r.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        chain.push(r.into_iter().map(|c| c / &g).collect());
    }
    chain
}

/// Sign of `p(a / 2^e)`.
fn sign_at(p: &ZPoly, a: &BigInt, e: u32) -> i8 {
    // 2^(e deg) p(a / 2^e) = sum c_i a^i 2^(e (deg - i)).
    let scale = BigInt::one() << e;
    let mut acc = BigInt::zero();
    let mut pow = BigInt::one();
    for c in p.iter().rev() {
        acc = acc * a + c * &pow;
        pow *= &scale;
    }
    match acc.sign() {
        num_bigint::Sign::Plus => 1,
        num_bigint::Sign::Minus => -1,
        num_bigint::Sign::NoSign => 0,
    }
}

fn sign_changes(chain: &[ZPoly], a: &BigInt, e: u32) -> usize {
    let signs: Vec<i8> = chain.iter().map(|p| sign_at(p, a, e)).filter(|&s| s != 0).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

const PRECISION_BITS: u32 = 40;

fn dyadic_f64(a: &BigInt, e: u32) -> f64 {
    a.to_string().parse::<f64>().expect("decimal") / 2f64.powi(e as i32)
}

/// Pushes the roots in `(lo, hi]`, endpoints `lo / 2^e` and `hi / 2^e`.
fn isolate(p: &ZPoly, chain: &[ZPoly], lo: BigInt, hi: BigInt, e: u32, out: &mut Vec<f64>) {
    let count = sign_changes(chain, &lo, e) - sign_changes(chain, &hi, e);
    match count {
        0 => {}
        1 => out.push(refine(p, lo, hi, e)),
        _ => {
            let (lo, hi, mid) = (&lo << 1, &hi << 1, &lo + &hi);
            isolate(p, chain, lo, mid.clone(), e + 1, out);
            isolate(p, chain, mid, hi, e + 1, out);
        }
    }
}

/// Bisects a single simple root in `(lo, hi]` down to `2^-PRECISION_BITS`.
fn refine(p: &ZPoly, mut lo: BigInt, mut hi: BigInt, mut e: u32) -> f64 {
    if sign_at(p, &hi, e) == 0 {
        return dyadic_f64(&hi, e);
    }
    let s_hi = sign_at(p, &hi, e);
    // Width is (hi - lo) / 2^e.
    while (&hi - &lo).bits() as i64 - e as i64 > -(PRECISION_BITS as i64) {
        lo <<= 1;
        hi <<= 1;
        e += 1;
        let mid = (&lo + &hi) >> 1;
        match sign_at(p, &mid, e) {
            0 => return dyadic_f64(&mid, e),
            s if s == s_hi => hi = mid,
            _ => lo = mid,
        }
    }
    dyadic_f64(&hi, e)
}

/// All real roots of an integer polynomial with multiplicity, ascending,
/// accurate to about `1e-12`.
pub fn real_roots(p: &IntPolynomial) -> Vec<f64> {
    let p: ZPoly = trim(p.coeffs().to_vec());
    if degree(&p) == 0 {
        return Vec::new();
    }
    let mut roots = Vec::new();
    for (factor, mult) in yun(&p) {
        // Power of two above the Cauchy bound.
        let lead = factor.last().unwrap().abs();
        let max = factor[..factor.len() - 1].iter().map(|c| c.abs()).max().unwrap_or_default();
        let bound = (max / lead) + 2u32;
        let bits = bound.bits() as usize;
        let hi = BigInt::one() << bits;
        let chain = sturm_chain(&factor);
        let mut found = Vec::new();
        isolate(&factor, &chain, -hi.clone(), hi, 0, &mut found);
        for r in found {
            roots.extend(std::iter::repeat_n(r, mult));
        }
    }
    roots.sort_by(f64::total_cmp);
    roots
}

