//! The `k`-fold blow-up, built from Kronecker products.
//!
//! Every cell becomes a `k x k` subsquare. Two new cells are adjacent when
//! their original cells share a block, when they lie in the same row of
//! the blown-up grid, or when they lie in the same column. In terms of the
//! original layers:
//!
//! ```text
//! Up(A) = L_B (x) B + L_H (x) H + L_V (x) V + I (x) D
//! ```
//!
//! with `H = I_k (x) J_k`, `V = J_k (x) I_k`, `B = J_{k^2}` and
//! `D = J_{k^2} - I`. Vertices are in subsquare order: all `k^2` cells of the
//! first original cell (row-major inside the subsquare), then the second
//! cell, and so on.

use crate::graph::{adjacency, layers, template, Symbol, TemplateMatrix};
use crate::linalg::IntMatrix;
use crate::tiling::{blow_up_tiling, Tiling};

/// The `k^2 x k^2` blocks substituted for template symbols.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubstitutionSet {
    pub k: usize,
    pub h: IntMatrix,
    pub v: IntMatrix,
    pub b: IntMatrix,
    pub d: IntMatrix,
    pub n: IntMatrix,
}

impl SubstitutionSet {
    pub fn block(&self, symbol: Symbol) -> &IntMatrix {
        match symbol {
            Symbol::D => &self.d,
            Symbol::B => &self.b,
            Symbol::H => &self.h,
            Symbol::V => &self.v,
            Symbol::N => &self.n,
        }
    }
}

pub fn substitution_set(k: usize) -> SubstitutionSet {
    assert!(k >= 1, "blow-up factor must be positive");
    let (i_k, j_k) = (IntMatrix::identity(k), IntMatrix::ones(k));
    let kk = k * k;
    SubstitutionSet {
        k,
        h: i_k.kron(&j_k),
        v: j_k.kron(&i_k),
        b: IntMatrix::ones(kk),
        d: &IntMatrix::ones(kk) - &IntMatrix::identity(kk),
        n: IntMatrix::zeros(kk),
    }
}

/// Adjacency of the `k`-fold blow-up, in subsquare order.
pub fn blown_adjacency(t: &Tiling, k: usize) -> IntMatrix {
    let s = substitution_set(k);
    let d = layers(t);
    let diag = IntMatrix::identity(t.cell_count()).kron(&s.d);
    let sum = &(&d.l_b.kron(&s.b) + &d.l_h.kron(&s.h)) + &d.l_v.kron(&s.v);
    &sum + &diag
}

/// Replaces every template entry by the matching substitution block.
pub fn expand_template(template: &TemplateMatrix, s: &SubstitutionSet) -> IntMatrix {
    let kk = s.k * s.k;
    let n = template.dim() * kk;
    let mut out = IntMatrix::zeros(n);
    for i in 0..template.dim() {
        for j in 0..template.dim() {
            let block = s.block(template.get(i, j));
            if block.is_zero() {
                continue;
            }
            for u in 0..kk {
                for v in 0..kk {
                    out.set(i * kk + u, j * kk + v, block.get(u, v).clone());
                }
            }
        }
    }
    out
}

/// `perm[s]` is the row-major index, on the `km x km` grid, of the vertex
/// with subsquare index `s`. All indices are 0-based: subsquare index
/// `c k^2 + a k + b` is inner cell `(a, b)` of original cell `c = r m + c0`,
/// which sits at big-grid row `k r + a` and column `k c0 + b`.
pub fn subsquare_permutation(m: usize, k: usize) -> Vec<usize> {
    let big = k * m;
    let kk = k * k;
    (0..kk * m * m)
        .map(|s| {
            let (cell, inner) = (s / kk, s % kk);
            let (r, c0) = (cell / m, cell % m);
            let (a, b) = (inner / k, inner % k);
            (k * r + a) * big + k * c0 + b
        })
        .collect()
}

pub fn inverse_permutation(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; perm.len()];
    for (s, &p) in perm.iter().enumerate() {
        inv[p] = s;
    }
    inv
}

/// Adjacency of the directly scaled grid, reordered into subsquare order.
pub fn direct_adjacency_in_subsquare_order(t: &Tiling, k: usize) -> IntMatrix {
    let big = adjacency(&blow_up_tiling(t, k));
    big.conjugate_by(&subsquare_permutation(t.m(), k))
        .expect("permutation matches the blown-up dimension")
}

/// Whether the scaled-grid construction and the Kronecker construction give
/// the same graph.
pub fn reconcile(t: &Tiling, k: usize) -> bool {
    direct_adjacency_in_subsquare_order(t, k) == blown_adjacency(t, k)
}

/// Template expansion, the second route to [`blown_adjacency`].
pub fn blown_adjacency_from_template(t: &Tiling, k: usize) -> IntMatrix {
    expand_template(&template(t), &substitution_set(k))
}
