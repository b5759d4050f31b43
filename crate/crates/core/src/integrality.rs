//! Sufficient conditions on a tiling for its graph to be integral.
//!
//! The conditions:
//!
//! - (i) every cell shares its row and block with the same number `q` of
//!   cells, itself included;
//! - (ii) likewise for columns;
//! - (iii) `L_H` and `L_V` commute, checked both through a cell-level rule
//!   and through the matrix product.
//!
//! When all three hold, `L_B`, `L_H` and `L_V` are integral and pairwise
//! commuting, so their sum is integral. The converse does not hold: an
//! [`Verdict::Inconclusive`] tiling may still be integral.

use std::fmt;

use thiserror::Error;

use crate::graph::{block_row_profile, layers, LayerDecomposition};
use crate::linalg::IntMatrix;
use crate::tiling::{Axis, Tiling};

/// The two formulations of condition (iii) disagree. Signals a bug.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cell rule says {direct}, commutator test says {commuting}")]
pub struct EquivalenceViolation {
    pub direct: bool,
    pub commuting: bool,
}

/// Returns `q` if every cell has exactly `q` cells (itself included) in its
/// row (or column) and block.
pub fn check_condition_q(t: &Tiling, axis: Axis) -> Option<usize> {
    let profile = block_row_profile(t, axis);
    let mut nonzero = profile.p.iter().flatten().copied().filter(|&c| c > 0);
    let q = nonzero.next()?;
    nonzero.all(|c| c == q).then_some(q)
}

/// Cell rule: for cells `c1`, `c2` in different rows and columns, let
/// `s1` sit in the row of `c1` and the column of `c2`, and `s2` in the row of
/// `c2` and the column of `c1`. Then `s1` shares a block with `c1` or `c2`
/// exactly when `s2` does.
///
/// `(L_H L_V)[c1][c2]` is 1 iff `s1` shares a block with neither cell, and
/// `(L_V L_H)[c1][c2]` likewise for `s2`; every other entry of both products
/// is 0. So this rule holds iff the two layers commute.
pub fn condition_iii_direct(t: &Tiling) -> bool {
    let m = t.m();
    let n = t.cell_count();
    let touches = |s: usize, c1: usize, c2: usize| t.block(s) == t.block(c1) || t.block(s) == t.block(c2);
    (0..n).all(|c1| {
        (0..n).all(|c2| {
            let (r1, k1, r2, k2) = (t.row(c1), t.col(c1), t.row(c2), t.col(c2));
            if r1 == r2 || k1 == k2 {
                return true;
            }
            let s1 = r1 * m + k2;
            let s2 = r2 * m + k1;
            touches(s1, c1, c2) == touches(s2, c1, c2)
        })
    })
}

pub fn layers_commute(d: &LayerDecomposition) -> bool {
    &d.l_h * &d.l_v == &d.l_v * &d.l_h
}

/// Condition (iii), evaluated by the cell rule and by the commutator, which
/// must agree.
pub fn check_condition_iii(t: &Tiling) -> Result<bool, EquivalenceViolation> {
    let direct = condition_iii_direct(t);
    let commuting = layers_commute(&layers(t));
    if direct == commuting {
        Ok(direct)
    } else {
        Err(EquivalenceViolation { direct, commuting })
    }
}

/// Three properties of `L_H` (or `L_V`), each computed on its own.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RegCommute {
    /// Every cell has the same number of row (column) neighbours outside its
    /// block, counted on the grid.
    pub regular: bool,
    /// The layer matrix has constant row sum.
    pub const_row_sum: bool,
    /// The layer matrix commutes with `L_B`.
    pub commutes_with_lb: bool,
}

impl RegCommute {
    pub fn all_agree(&self) -> bool {
        self.regular == self.const_row_sum && self.const_row_sum == self.commutes_with_lb
    }
}

pub fn check_regcommute(t: &Tiling, axis: Axis) -> RegCommute {
    let n = t.cell_count();
    let degree = |c: usize| {
        (0..n)
            .filter(|&o| o != c && t.line(o, axis) == t.line(c, axis) && t.block(o) != t.block(c))
            .count()
    };
    let regular = (1..n).all(|c| degree(c) == degree(0));

    let d = layers(t);
    let layer = d.line_layer(axis);
    let sums = layer.row_sums();
    let const_row_sum = sums.windows(2).all(|w| w[0] == w[1]);
    let commutes_with_lb = &d.l_b * layer == layer * &d.l_b;

    RegCommute {
        regular,
        const_row_sum,
        commutes_with_lb,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    GuaranteedIntegral,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::GuaranteedIntegral => "guaranteed integral",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionReport {
    pub cond_i: Option<usize>,
    pub cond_ii: Option<usize>,
    pub cond_iii: bool,
    pub regcommute_h: RegCommute,
    pub regcommute_v: RegCommute,
    pub verdict: Verdict,
}

/// Evaluates every condition on `t`.
///
/// # Panics
///
/// If the two formulations of condition (iii) disagree.
pub fn theorem_verdict(t: &Tiling) -> ConditionReport {
    let cond_i = check_condition_q(t, Axis::Row);
    let cond_ii = check_condition_q(t, Axis::Column);
    let cond_iii = check_condition_iii(t).expect("condition (iii) formulations must agree");
    let verdict = if cond_i.is_some() && cond_ii.is_some() && cond_iii {
        Verdict::GuaranteedIntegral
    } else {
        Verdict::Inconclusive
    };
    debug_assert!(
        verdict == Verdict::Inconclusive || crate::spectra::is_integral(&crate::graph::adjacency(t)),
        "guaranteed tiling is not integral:\n{t}"
    );
    ConditionReport {
        cond_i,
        cond_ii,
        cond_iii,
        regcommute_h: check_regcommute(t, Axis::Row),
        regcommute_v: check_regcommute(t, Axis::Column),
        verdict,
    }
}

/// Whether `L_B`, `L_H` and `L_V` pairwise commute.
pub fn layers_pairwise_commute(d: &LayerDecomposition) -> bool {
    let commute = |a: &IntMatrix, b: &IntMatrix| (&(a * b) - &(b * a)).is_zero();
    commute(&d.l_b, &d.l_h) && commute(&d.l_b, &d.l_v) && commute(&d.l_h, &d.l_v)
}
