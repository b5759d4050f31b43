//! Explicit eigenvector basis of a `k`-fold blow-up.
//!
//! Let `K` be the basis of `ker(J_k)` returned by [`kj_basis`] and `1_k` the
//! all-ones vector. In subsquare order, with `n2 = m^2` original cells:
//!
//! | family | vectors                                | eigenvalue    | count          |
//! |--------|----------------------------------------|---------------|----------------|
//! | `X_V`  | `x (x) 1_k (x) y`, `L_V x = l x`, `y` in `K` | `l k - 1`     | `(k-1) n2`     |
//! | `X_H`  | `x (x) y (x) 1_k`, `L_H x = l x`, `y` in `K` | `l k - 1`     | `(k-1) n2`     |
//! | `X_E`  | `e_i (x) y (x) z`, `y`, `z` in `K`         | `-1`          | `(k-1)^2 n2`   |
//! | `X_M`  | `x (x) 1_{k^2}`, `M x = l x`             | `l + k^2 - 1` | `n2`           |
//!
//! where `M = k^2 L_B + k L_H + k L_V`. Together these are `k^2 n2` linearly
//! independent eigenvectors, and the largest eigenvalue comes from `X_M`.
//!
//! Eigenvectors of `L_V`, `L_H` and `M` for integer eigenvalues are exact
//! rational kernel vectors. Non-integer eigenpairs come from the Jacobi
//! oracle and are flagged approximate; everything built from them is checked
//! to a tolerance instead of exactly.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::blowup::blown_adjacency;
use crate::graph::layers;
use crate::linalg::{
    float_eigen, norm2, rank_of_vectors, rational_kernel, symmetric_eigen, IntMatrix, LinalgError, RationalVector,
};
use crate::spectra::exact_spectrum;
use crate::tiling::Tiling;

/// Relative residual allowed for eigenpairs built from approximate input.
pub const APPROX_RESIDUAL_TOL: f64 = 1e-8;

/// Pivot threshold of the numerical rank, on unit vectors.
pub const RANK_TOL: f64 = 1e-8;

/// Allowed gap between predicted and oracle eigenvalues after sorting.
pub const SPECTRUM_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub enum Eigenvalue {
    Exact(BigInt),
    Approx(f64),
}

impl Eigenvalue {
    pub fn to_f64(&self) -> f64 {
        match self {
            Eigenvalue::Exact(v) => v.to_f64().unwrap_or(f64::NAN),
            Eigenvalue::Approx(v) => *v,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Eigenvalue::Exact(_))
    }

    /// `self * scale + shift`.
    pub fn affine(&self, scale: i64, shift: i64) -> Self {
        match self {
            Eigenvalue::Exact(v) => Eigenvalue::Exact(v * scale + shift),
            Eigenvalue::Approx(v) => Eigenvalue::Approx(v * scale as f64 + shift as f64),
        }
    }

    fn total_cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Eigenvalue::Exact(a), Eigenvalue::Exact(b)) => a.cmp(b),
            _ => self.to_f64().total_cmp(&other.to_f64()),
        }
    }
}

impl fmt::Display for Eigenvalue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Eigenvalue::Exact(v) => write!(f, "{v}"),
            Eigenvalue::Approx(v) => write!(f, "~{v:.9}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum EigenVector {
    Exact(RationalVector),
    Approx(Vec<f64>),
}

impl EigenVector {
    pub fn len(&self) -> usize {
        match self {
            EigenVector::Exact(v) => v.len(),
            EigenVector::Approx(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, EigenVector::Exact(_))
    }

    pub fn to_f64(&self) -> Vec<f64> {
        match self {
            EigenVector::Exact(v) => v.to_f64(),
            EigenVector::Approx(v) => v.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            EigenVector::Exact(v) => v.is_zero(),
            EigenVector::Approx(v) => v.iter().all(|x| *x == 0.0),
        }
    }

    /// Kronecker product with an exact vector.
    pub fn kron(&self, other: &RationalVector) -> Self {
        match self {
            EigenVector::Exact(v) => EigenVector::Exact(v.kron(other)),
            EigenVector::Approx(v) => EigenVector::Approx(crate::linalg::kron_f64(v, &other.to_f64())),
        }
    }
}

/// One eigenvalue with a basis of its eigenspace (or, for approximate
/// values, the oracle vectors assigned to it).
#[derive(Debug, Clone, PartialEq)]
pub struct EigenSpace {
    pub value: Eigenvalue,
    pub vectors: Vec<EigenVector>,
}

/// The `k - 1` vectors `e_1 - e_j`, `j = 2..k`, spanning `ker(J_k)`.
pub fn kj_basis(k: usize) -> Vec<RationalVector> {
    (1..k)
        .map(|j| {
            RationalVector::from_ints((0..k).map(|i| match i {
                0 => 1i64,
                _ if i == j => -1,
                _ => 0,
            }))
        })
        .collect()
}

type Eigenpairs = (Vec<(BigInt, usize)>, Vec<(f64, Vec<f64>)>);

/// Integer eigenvalues (exact) and the remaining oracle eigenpairs of a
/// symmetric matrix. The oracle values closest to each integer eigenvalue
/// are consumed by it, as many as its multiplicity.
fn split_eigenpairs(a: &IntMatrix) -> Result<Eigenpairs, LinalgError> {
    let spectrum = exact_spectrum(a);
    if spectrum.is_integral() {
        return Ok((spectrum.integer_part, Vec::new()));
    }
    let oracle = symmetric_eigen(a)?;
    let mut rest: Vec<(f64, Vec<f64>)> = oracle.values.into_iter().zip(oracle.vectors).collect();
    for (r, mult) in &spectrum.integer_part {
        let target = r.to_f64().unwrap_or(f64::NAN);
        for _ in 0..*mult {
            let nearest = rest
                .iter()
                .enumerate()
                .min_by(|(_, a), (_, b)| (a.0 - target).abs().total_cmp(&(b.0 - target).abs()))
                .map(|(i, _)| i);
            if let Some(i) = nearest {
                rest.remove(i);
            }
        }
    }
    Ok((spectrum.integer_part, rest))
}

/// Eigenspaces of a symmetric integer matrix, ascending by eigenvalue.
/// Integer eigenvalues get exact primitive kernel vectors in lexicographic
/// order; every other eigenpair is an approximate singleton.
pub fn eigenvector_basis(a: &IntMatrix) -> Result<Vec<EigenSpace>, LinalgError> {
    let (integer, approx) = split_eigenpairs(a)?;
    let mut spaces: Vec<EigenSpace> = integer
        .into_iter()
        .map(|(lambda, _)| {
            let mut kernel = rational_kernel(a, &lambda);
            kernel.sort_by(|x, y| x.components().cmp(y.components()));
            EigenSpace {
                value: Eigenvalue::Exact(lambda),
                vectors: kernel.into_iter().map(EigenVector::Exact).collect(),
            }
        })
        .collect();
    spaces.extend(approx.into_iter().map(|(value, vector)| EigenSpace {
        value: Eigenvalue::Approx(value),
        vectors: vec![EigenVector::Approx(vector)],
    }));
    spaces.sort_by(|x, y| x.value.total_cmp(&y.value));
    Ok(spaces)
}

/// All eigenvalues with multiplicity, ascending: exact where integer.
pub fn eigenvalues(a: &IntMatrix) -> Result<Vec<Eigenvalue>, LinalgError> {
    let (integer, approx) = split_eigenpairs(a)?;
    let mut out: Vec<Eigenvalue> = integer
        .into_iter()
        .flat_map(|(v, m)| std::iter::repeat_n(Eigenvalue::Exact(v), m))
        .chain(approx.into_iter().map(|(v, _)| Eigenvalue::Approx(v)))
        .collect();
    out.sort_by(Eigenvalue::total_cmp);
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyKind {
    XV,
    XH,
    XE,
    XM,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 4] = [FamilyKind::XV, FamilyKind::XH, FamilyKind::XE, FamilyKind::XM];
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyKind::XV => "X_V",
            FamilyKind::XH => "X_H",
            FamilyKind::XE => "X_E",
            FamilyKind::XM => "X_M",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EigenFamily {
    pub kind: FamilyKind,
    pub vectors: Vec<EigenVector>,
    /// Parallel to `vectors`.
    pub predicted: Vec<Eigenvalue>,
}

impl EigenFamily {
    fn new(kind: FamilyKind) -> Self {
        Self {
            kind,
            vectors: Vec::new(),
            predicted: Vec::new(),
        }
    }

    fn push(&mut self, vector: EigenVector, value: Eigenvalue) {
        self.vectors.push(vector);
        self.predicted.push(value);
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }
}

/// `k^2 L_B + k L_H + k L_V`.
pub fn blowup_m_matrix(t: &Tiling, k: usize) -> IntMatrix {
    let d = layers(t);
    let k_big = BigInt::from(k);
    let kk = BigInt::from(k * k);
    &(&d.l_b.scale(&kk) + &d.l_h.scale(&k_big)) + &d.l_v.scale(&k_big)
}

fn k_i64(k: usize) -> i64 {
    i64::try_from(k).expect("blow-up factor fits in i64")
}

/// The four families, in the order `X_V`, `X_H`, `X_E`, `X_M`. For `k = 1`
/// only `X_M` is nonempty, and it is an eigenbasis of the adjacency itself.
pub fn build_families(t: &Tiling, k: usize) -> Result<[EigenFamily; 4], LinalgError> {
    assert!(k >= 1, "blow-up factor must be positive");
    let n2 = t.cell_count();
    let kj = kj_basis(k);
    let ones_k = RationalVector::ones(k);
    let ones_kk = RationalVector::ones(k * k);
    let ki = k_i64(k);
    let d = layers(t);

    let mut xv = EigenFamily::new(FamilyKind::XV);
    let mut xh = EigenFamily::new(FamilyKind::XH);
    if k > 1 {
        for space in eigenvector_basis(&d.l_v)? {
            let mu = space.value.affine(ki, -1);
            for x in &space.vectors {
                for y in &kj {
                    xv.push(x.kron(&ones_k.kron(y)), mu.clone());
                }
            }
        }
        for space in eigenvector_basis(&d.l_h)? {
            let mu = space.value.affine(ki, -1);
            for x in &space.vectors {
                for y in &kj {
                    xh.push(x.kron(&y.kron(&ones_k)), mu.clone());
                }
            }
        }
    }

    let mut xe = EigenFamily::new(FamilyKind::XE);
    for i in 0..n2 {
        let e = EigenVector::Exact(RationalVector::unit(n2, i));
        for y in &kj {
            for z in &kj {
                xe.push(e.kron(&y.kron(z)), Eigenvalue::Exact(BigInt::from(-1)));
            }
        }
    }

    let mut xm = EigenFamily::new(FamilyKind::XM);
    for space in eigenvector_basis(&blowup_m_matrix(t, k))? {
        let mu = space.value.affine(1, ki * ki - 1);
        for x in &space.vectors {
            xm.push(x.kron(&ones_kk), mu.clone());
        }
    }
    Ok([xv, xh, xe, xm])
}

#[derive(Debug, Clone, PartialEq)]
pub struct PredictedEigenvalue {
    pub value: Eigenvalue,
    pub family: FamilyKind,
}

fn sort_predicted(values: &mut [PredictedEigenvalue]) {
    values.sort_by(|a, b| a.value.total_cmp(&b.value).then(a.family.cmp(&b.family)));
}

/// Spectrum of the blow-up predicted from the spectra of `L_V`, `L_H` and
/// `M` alone, ascending, each value tagged with the family it comes from.
pub fn predicted_spectrum(t: &Tiling, k: usize) -> Result<Vec<PredictedEigenvalue>, LinalgError> {
    assert!(k >= 1, "blow-up factor must be positive");
    let n2 = t.cell_count();
    let ki = k_i64(k);
    let d = layers(t);
    let mut out = Vec::with_capacity(k * k * n2);
    let mut add = |family: FamilyKind, values: Vec<Eigenvalue>, times: usize| {
        for v in values {
            for _ in 0..times {
                out.push(PredictedEigenvalue { value: v.clone(), family });
            }
        }
    };
    let lifted = |a: &IntMatrix| -> Result<Vec<Eigenvalue>, LinalgError> {
        Ok(eigenvalues(a)?.iter().map(|v| v.affine(ki, -1)).collect())
    };
    if k > 1 {
        add(FamilyKind::XV, lifted(&d.l_v)?, k - 1);
        add(FamilyKind::XH, lifted(&d.l_h)?, k - 1);
        add(FamilyKind::XE, vec![Eigenvalue::Exact(BigInt::from(-1))], (k - 1) * (k - 1) * n2);
    }
    let m_values = eigenvalues(&blowup_m_matrix(t, k))?
        .iter()
        .map(|v| v.affine(1, ki * ki - 1))
        .collect();
    add(FamilyKind::XM, m_values, 1);
    sort_predicted(&mut out);
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RankMethod {
    /// Fraction-free elimination over the rationals.
    Exact,
    /// Pivoted Gram-Schmidt on unit vectors with threshold [`RANK_TOL`].
    Numerical,
}

/// Rank of a family of vectors: exact when all are rational.
pub fn family_rank<'a>(vectors: impl IntoIterator<Item = &'a EigenVector>) -> (usize, RankMethod) {
    let vectors: Vec<&EigenVector> = vectors.into_iter().collect();
    if vectors.iter().all(|v| v.is_exact()) {
        let exact: Vec<RationalVector> = vectors
            .iter()
            .map(|v| match v {
                EigenVector::Exact(x) => x.clone(),
                EigenVector::Approx(_) => unreachable!(),
            })
            .collect();
        (rank_of_vectors(&exact), RankMethod::Exact)
    } else {
        let floats: Vec<Vec<f64>> = vectors.iter().map(|v| v.to_f64()).collect();
        (numerical_rank(&floats), RankMethod::Numerical)
    }
}

/// Greedy pivoted Gram-Schmidt with reorthogonalization: repeatedly takes
/// the remaining vector with the largest component orthogonal to those
/// already taken, until that component drops to [`RANK_TOL`].
pub fn numerical_rank(vectors: &[Vec<f64>]) -> usize {
    let mut rest: Vec<Vec<f64>> = vectors
        .iter()
        .filter_map(|v| {
            let n = norm2(v);
            (n > 0.0).then(|| v.iter().map(|x| x / n).collect())
        })
        .collect();
    let mut rank = 0;
    while !rest.is_empty() {
        let (best, norm) = rest
            .iter()
            .enumerate()
            .map(|(i, v)| (i, norm2(v)))
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .expect("nonempty");
        if norm <= RANK_TOL {
            break;
        }
        let q: Vec<f64> = rest.swap_remove(best).iter().map(|x| x / norm).collect();
        rank += 1;
        for v in &mut rest {
            for _ in 0..2 {
                let dot: f64 = v.iter().zip(&q).map(|(a, b)| a * b).sum();
                for (x, qi) in v.iter_mut().zip(&q) {
                    *x -= dot * qi;
                }
            }
        }
    }
    rank
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VerificationFailure {
    #[error("oracle failed: {0}")]
    Oracle(#[from] LinalgError),

    #[error("{kind} has {found} vectors, expected {expected}")]
    Count { kind: FamilyKind, found: usize, expected: usize },

    #[error("{kind} vector {index} is zero")]
    ZeroVector { kind: FamilyKind, index: usize },

    #[error("{kind} vector {index} is not an exact eigenvector for {value}")]
    ExactResidual {
        kind: FamilyKind,
        index: usize,
        value: String,
    },

    #[error("{kind} vector {index} has relative residual {residual:e}, above {tolerance:e}")]
    ApproxResidual {
        kind: FamilyKind,
        index: usize,
        residual: f64,
        tolerance: f64,
    },

    #[error("stacked families have rank {found}, expected {expected}")]
    Rank { found: usize, expected: usize },

    #[error("largest predicted eigenvalue {value} comes from {family}, not X_M")]
    LargestNotFromM { family: FamilyKind, value: f64 },

    #[error("largest predicted eigenvalue {value} is below the bound {bound}")]
    LargestBelowBound { value: f64, bound: i64 },

    #[error("predicted spectrum has {predicted} values, oracle {oracle}")]
    SpectrumLength { predicted: usize, oracle: usize },

    #[error("eigenvalue {index} differs: predicted {predicted}, oracle {oracle}")]
    SpectrumMismatch {
        index: usize,
        predicted: f64,
        oracle: f64,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct EigenBasisReport {
    pub k: usize,
    /// Vertices of the blow-up, `k^2 m^2`.
    pub dimension: usize,
    pub families: [EigenFamily; 4],
    pub total_rank: usize,
    pub rank_method: RankMethod,
    /// Largest relative residual among approximate eigenpairs; 0 when all
    /// vectors are exact.
    pub max_residual: f64,
    pub predicted_spectrum: Vec<PredictedEigenvalue>,
    pub oracle_spectrum: Vec<f64>,
    /// Largest gap between sorted predicted and oracle eigenvalues.
    pub max_spectrum_gap: f64,
    pub largest: PredictedEigenvalue,
    /// Largest eigenvalue of `M`.
    pub lambda_max_m: f64,
    /// `m k^2 - 1`.
    pub largest_bound: i64,
}

impl EigenBasisReport {
    pub fn family_sizes(&self) -> [usize; 4] {
        [0, 1, 2, 3].map(|i| self.families[i].len())
    }
}

fn residual_check(a: &IntMatrix, family: &EigenFamily, frob: f64) -> Result<f64, VerificationFailure> {
    let mut worst = 0.0f64;
    for (index, (v, mu)) in family.vectors.iter().zip(&family.predicted).enumerate() {
        if v.is_zero() {
            return Err(VerificationFailure::ZeroVector {
                kind: family.kind,
                index,
            });
        }
        match (v, mu) {
            (EigenVector::Exact(x), Eigenvalue::Exact(mu)) => {
                let (nums, _) = x.to_common_denominator();
                let ax = a.mul_int_vector(&nums)?;
                if ax.iter().zip(&nums).any(|(l, r)| *l != mu * r) {
                    return Err(VerificationFailure::ExactResidual {
                        kind: family.kind,
                        index,
                        value: mu.to_string(),
                    });
                }
            }
            _ => {
                let x = v.to_f64();
                let mu = mu.to_f64();
                let ax = a.mul_f64_vector(&x)?;
                let r: Vec<f64> = ax.iter().zip(&x).map(|(l, r)| l - mu * r).collect();
                let rel = norm2(&r) / (norm2(&x) * frob.max(1.0));
                if rel > APPROX_RESIDUAL_TOL {
                    return Err(VerificationFailure::ApproxResidual {
                        kind: family.kind,
                        index,
                        residual: rel,
                        tolerance: APPROX_RESIDUAL_TOL,
                    });
                }
                worst = worst.max(rel);
            }
        }
    }
    Ok(worst)
}

/// Builds the four families for `(t, k)` and checks them against the
/// blown-up adjacency:
///
/// - family sizes;
/// - every vector is an eigenvector for its predicted value, exactly when
///   rational, else to [`APPROX_RESIDUAL_TOL`] relative to `|Up(A)|_F`;
/// - the stacked families have full rank `k^2 m^2`;
/// - the largest predicted eigenvalue comes from `X_M` and is at least
///   `m k^2 - 1`;
/// - the predicted spectrum matches the oracle to [`SPECTRUM_TOL`].
pub fn verify(t: &Tiling, k: usize) -> Result<EigenBasisReport, VerificationFailure> {
    let n2 = t.cell_count();
    let dimension = k * k * n2;
    let a = blown_adjacency(t, k);
    let families = build_families(t, k)?;

    let expected = [(k - 1) * n2, (k - 1) * n2, (k - 1) * (k - 1) * n2, n2];
    for (family, want) in families.iter().zip(expected) {
        if family.len() != want {
            return Err(VerificationFailure::Count {
                kind: family.kind,
                found: family.len(),
                expected: want,
            });
        }
    }

    let frob = a.frobenius_norm();
    let mut max_residual = 0.0f64;
    for family in &families {
        max_residual = max_residual.max(residual_check(&a, family, frob)?);
    }

    let (total_rank, rank_method) = family_rank(families.iter().flat_map(|f| &f.vectors));
    if total_rank != dimension {
        return Err(VerificationFailure::Rank {
            found: total_rank,
            expected: dimension,
        });
    }

    let mut predicted: Vec<PredictedEigenvalue> = families
        .iter()
        .flat_map(|f| {
            f.predicted.iter().map(|v| PredictedEigenvalue {
                value: v.clone(),
                family: f.kind,
            })
        })
        .collect();
    sort_predicted(&mut predicted);

    let top = predicted.last().expect("at least one cell").value.to_f64();
    let largest = predicted
        .iter()
        .rev()
        .take_while(|p| p.value.to_f64() >= top - SPECTRUM_TOL)
        .find(|p| p.family == FamilyKind::XM)
        .cloned()
        .ok_or_else(|| VerificationFailure::LargestNotFromM {
            family: predicted.last().expect("nonempty").family,
            value: top,
        })?;
    let largest_bound = k_i64(t.m()) * k_i64(k) * k_i64(k) - 1;
    if largest.value.to_f64() < largest_bound as f64 - SPECTRUM_TOL {
        return Err(VerificationFailure::LargestBelowBound {
            value: largest.value.to_f64(),
            bound: largest_bound,
        });
    }
    let lambda_max_m = eigenvalues(&blowup_m_matrix(t, k))?
        .last()
        .map_or(f64::NAN, Eigenvalue::to_f64);

    let oracle_spectrum = float_eigen(&a)?;
    if oracle_spectrum.len() != predicted.len() {
        return Err(VerificationFailure::SpectrumLength {
            predicted: predicted.len(),
            oracle: oracle_spectrum.len(),
        });
    }
    let mut max_spectrum_gap = 0.0f64;
    for (index, (p, o)) in predicted.iter().zip(&oracle_spectrum).enumerate() {
        let gap = (p.value.to_f64() - o).abs();
        if gap.is_nan() || gap > SPECTRUM_TOL {
            return Err(VerificationFailure::SpectrumMismatch {
                index,
                predicted: p.value.to_f64(),
                oracle: *o,
            });
        }
        max_spectrum_gap = max_spectrum_gap.max(gap);
    }

    Ok(EigenBasisReport {
        k,
        dimension,
        families,
        total_rank,
        rank_method,
        max_residual,
        predicted_spectrum: predicted,
        oracle_spectrum,
        max_spectrum_gap,
        largest,
        lambda_max_m,
        largest_bound,
    })
}
