//! The free-form Sudoku graph and its edge layers.
//!
//! Two distinct cells are adjacent for exactly one of three reasons:
//! they share a block (`L_B`), they share a row but not a block (`L_H`), or
//! they share a column but not a block (`L_V`). So `A = L_B + L_H + L_V`.

use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::linalg::IntMatrix;
use crate::tiling::{Axis, Tiling};

/// The three edge layers of a free-form Sudoku graph, in row-major vertex
/// order. The diagonal layer `L_D` of a blow-up is the identity and is not
/// stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerDecomposition {
    pub m: usize,
    /// Number of blocks; `m` for a free-form Sudoku.
    pub blocks: usize,
    pub l_b: IntMatrix,
    pub l_h: IntMatrix,
    pub l_v: IntMatrix,
}

impl LayerDecomposition {
    pub fn adjacency(&self) -> IntMatrix {
        &(&self.l_b + &self.l_h) + &self.l_v
    }

    pub fn layer(&self, layer: Layer) -> &IntMatrix {
        match layer {
            Layer::Block => &self.l_b,
            Layer::Row => &self.l_h,
            Layer::Column => &self.l_v,
        }
    }

    /// The row (`L_H`) or column (`L_V`) layer.
    pub fn line_layer(&self, axis: Axis) -> &IntMatrix {
        match axis {
            Axis::Row => &self.l_h,
            Axis::Column => &self.l_v,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Layer {
    Block,
    Row,
    Column,
}

impl fmt::Display for Layer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Layer::Block => "L_B",
            Layer::Row => "L_H",
            Layer::Column => "L_V",
        })
    }
}

pub fn layers(t: &Tiling) -> LayerDecomposition {
    let n = t.cell_count();
    let mut l_b = IntMatrix::zeros(n);
    let mut l_h = IntMatrix::zeros(n);
    let mut l_v = IntMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            if t.block(i) == t.block(j) {
                l_b.set(i, j, 1);
            } else if t.row(i) == t.row(j) {
                l_h.set(i, j, 1);
            } else if t.col(i) == t.col(j) {
                l_v.set(i, j, 1);
            }
        }
    }
    LayerDecomposition {
        m: t.m(),
        blocks: t.block_count(),
        l_b,
        l_h,
        l_v,
    }
}

pub fn adjacency(t: &Tiling) -> IntMatrix {
    layers(t).adjacency()
}

/// Entry of the symbolic template matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Symbol {
    /// Diagonal.
    D,
    /// Same block.
    B,
    /// Same row, different block.
    H,
    /// Same column, different block.
    V,
    /// Not adjacent.
    N,
}

impl Symbol {
    pub fn letter(self) -> char {
        match self {
            Symbol::D => 'D',
            Symbol::B => 'B',
            Symbol::H => 'H',
            Symbol::V => 'V',
            Symbol::N => 'N',
        }
    }

    pub fn from_letter(c: char) -> Option<Self> {
        Some(match c {
            'D' => Symbol::D,
            'B' => Symbol::B,
            'H' => Symbol::H,
            'V' => Symbol::V,
            'N' => Symbol::N,
            _ => return None,
        })
    }
}

/// Symbolic `m^2 x m^2` template: each entry names the relation between two
/// cells of the original puzzle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TemplateMatrix {
    n: usize,
    symbols: Vec<Symbol>,
}

impl TemplateMatrix {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Symbol {
        self.symbols[i * self.n + j]
    }

    pub fn from_rows(rows: &[&str]) -> Option<Self> {
        let n = rows.len();
        let mut symbols = Vec::with_capacity(n * n);
        for row in rows {
            let parsed: Option<Vec<Symbol>> = row
                .split_whitespace()
                .map(|tok| {
                    let mut chars = tok.chars();
                    let c = chars.next()?;
                    chars.next().is_none().then_some(())?;
                    Symbol::from_letter(c)
                })
                .collect();
            let parsed = parsed?;
            if parsed.len() != n {
                return None;
            }
            symbols.extend(parsed);
        }
        Some(Self { n, symbols })
    }

    /// Maps every symbol to an integer.
    pub fn evaluate(&self, mut value: impl FnMut(Symbol) -> i64) -> IntMatrix {
        IntMatrix::from_fn(self.n, |i, j| value(self.get(i, j)))
    }
}

impl fmt::Display for TemplateMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.symbols.chunks(self.n) {
            let line: Vec<String> = row.iter().map(|s| s.letter().to_string()).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

pub fn template(t: &Tiling) -> TemplateMatrix {
    let n = t.cell_count();
    let symbols = (0..n * n)
        .map(|idx| {
            let (i, j) = (idx / n, idx % n);
            if i == j {
                Symbol::D
            } else if t.block(i) == t.block(j) {
                Symbol::B
            } else if t.row(i) == t.row(j) {
                Symbol::H
            } else if t.col(i) == t.col(j) {
                Symbol::V
            } else {
                Symbol::N
            }
        })
        .collect();
    TemplateMatrix { n, symbols }
}

/// `p[i][j]`: cells of row (or column) `i` lying in block `j`. Each row of
/// `p` sums to `m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockRowProfile {
    pub axis: Axis,
    pub p: Vec<Vec<usize>>,
}

impl BlockRowProfile {
    /// Nonzero counts of line `i`, in block order.
    pub fn parts(&self, i: usize) -> Vec<usize> {
        self.p[i].iter().copied().filter(|&c| c > 0).collect()
    }
}

pub fn block_row_profile(t: &Tiling, axis: Axis) -> BlockRowProfile {
    let m = t.m();
    let mut p = vec![vec![0; t.block_count()]; m];
    for cell in 0..t.cell_count() {
        p[t.line(cell, axis)][t.block(cell)] += 1;
    }
    BlockRowProfile { axis, p }
}

/// Part sizes found in a layer decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureReport {
    /// Size of each clique of `L_B`, one entry per block.
    pub block_cliques: Vec<usize>,
    /// Per row: part sizes of the complete multipartite graph `L_H` induces
    /// on that row, descending.
    pub row_parts: Vec<Vec<usize>>,
    /// Per column, likewise for `L_V`.
    pub column_parts: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureViolation {
    #[error("{layer} is not a symmetric 0/1 matrix with zero diagonal")]
    NotAdjacency { layer: Layer },

    #[error("layers overlap at vertices ({i}, {j})")]
    Overlap { i: usize, j: usize },

    #[error("L_B component containing vertex {vertex} is not a clique of size {expected}")]
    BlockNotClique { vertex: usize, expected: usize },

    #[error("L_B has {found} cliques, expected {expected}")]
    BlockCount { found: usize, expected: usize },

    #[error("{layer} has an edge ({i}, {j}) leaving its {axis}")]
    EdgeLeavesLine { layer: Layer, axis: Axis, i: usize, j: usize },

    #[error("{axis} {line}: {layer} is not complete multipartite over the blocks of L_B (vertices {i}, {j})")]
    NotMultipartite {
        layer: Layer,
        axis: Axis,
        line: usize,
        i: usize,
        j: usize,
    },
}

/// Checks that `l_b` is `blocks` disjoint equal cliques (`m` copies of `K_m`
/// for a free-form Sudoku) and that, inside every
/// row (column), `l_h` (`l_v`) is complete multipartite with parts given by
/// the blocks of `l_b`.
pub fn verify_layer_structure(d: &LayerDecomposition) -> Result<StructureReport, StructureViolation> {
    let m = d.m;
    let n = m * m;
    let size = n.checked_div(d.blocks).unwrap_or(0);
    for layer in [Layer::Block, Layer::Row, Layer::Column] {
        let mat = d.layer(layer);
        if mat.dim() != n || !mat.is_simple_adjacency() {
            return Err(StructureViolation::NotAdjacency { layer });
        }
    }
    for i in 0..n {
        for j in 0..n {
            let total = d.l_b.get(i, j) + d.l_h.get(i, j) + d.l_v.get(i, j);
            if total > One::one() {
                return Err(StructureViolation::Overlap { i, j });
            }
        }
    }

    // Blocks: the closed neighbourhoods must partition the vertices into
    // equal cliques.
    let mut block_id = vec![usize::MAX; n];
    let mut block_cliques = Vec::new();
    for v in 0..n {
        if block_id[v] != usize::MAX {
            continue;
        }
        let members: Vec<usize> = (0..n).filter(|&u| u == v || !d.l_b.get(v, u).is_zero()).collect();
        let clique = members.len() == size
            && members.iter().all(|&a| {
                block_id[a] == usize::MAX
                    && members.iter().all(|&b| a == b || !d.l_b.get(a, b).is_zero())
            });
        if !clique {
            return Err(StructureViolation::BlockNotClique { vertex: v, expected: size });
        }
        for &a in &members {
            block_id[a] = block_cliques.len();
        }
        block_cliques.push(members.len());
    }
    if block_cliques.len() != d.blocks {
        return Err(StructureViolation::BlockCount {
            found: block_cliques.len(),
            expected: d.blocks,
        });
    }

    let blocks = block_cliques.len();
    let line_parts = |axis: Axis| -> Result<Vec<Vec<usize>>, StructureViolation> {
        let (layer, mat) = match axis {
            Axis::Row => (Layer::Row, &d.l_h),
            Axis::Column => (Layer::Column, &d.l_v),
        };
        let line_of = |v: usize| match axis {
            Axis::Row => v / m,
            Axis::Column => v % m,
        };
        for i in 0..n {
            for j in 0..n {
                if !mat.get(i, j).is_zero() && line_of(i) != line_of(j) {
                    return Err(StructureViolation::EdgeLeavesLine { layer, axis, i, j });
                }
            }
        }
        let mut all = Vec::with_capacity(m);
        for line in 0..m {
            let cells: Vec<usize> = (0..n).filter(|&v| line_of(v) == line).collect();
            for &i in &cells {
                for &j in &cells {
                    let adjacent = !mat.get(i, j).is_zero();
                    let expected = i != j && block_id[i] != block_id[j];
                    if adjacent != expected {
                        return Err(StructureViolation::NotMultipartite { layer, axis, line, i, j });
                    }
                }
            }
            let mut sizes = vec![0usize; blocks];
            for &v in &cells {
                sizes[block_id[v]] += 1;
            }
            let mut parts: Vec<usize> = sizes.into_iter().filter(|&s| s > 0).collect();
            parts.sort_unstable_by(|a, b| b.cmp(a));
            all.push(parts);
        }
        Ok(all)
    };

    Ok(StructureReport {
        block_cliques,
        row_parts: line_parts(Axis::Row)?,
        column_parts: line_parts(Axis::Column)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tiling::{classical_tiling, row_tiling};

    fn free_shidoku() -> Tiling {
        Tiling::from_cell_sets(4, &[&[1, 2, 3, 4], &[5, 9, 13, 14], &[6, 8, 12, 16], &[7, 10, 11, 15]]).unwrap()
    }

    #[test]
    fn row_tiling_has_no_row_layer() {
        for m in 1..=4 {
            let d = layers(&row_tiling(m));
            assert!(d.l_h.is_zero());
            let report = verify_layer_structure(&d).unwrap();
            assert_eq!(report.block_cliques, vec![m; m]);
        }
    }

    #[test]
    fn single_cell() {
        let d = layers(&row_tiling(1));
        assert!(d.l_b.is_zero() && d.l_h.is_zero() && d.l_v.is_zero());
        assert_eq!(adjacency(&row_tiling(1)), IntMatrix::zeros(1));
        assert_eq!(template(&row_tiling(1)).to_string(), "D\n");
    }

    #[test]
    fn free_shidoku_entries() {
        let a = adjacency(&free_shidoku());
        // 1-based (1,2), (1,5), (1,6), (5,8)
        assert!(a.get(0, 1).is_one());
        assert!(a.get(0, 4).is_one());
        assert!(a.get(0, 5).is_zero());
        assert!(a.get(4, 7).is_one());
        let t = template(&free_shidoku());
        assert_eq!(t.get(0, 0), Symbol::D);
        assert_eq!(t.get(0, 1), Symbol::B);
        assert_eq!(t.get(0, 4), Symbol::V);
        assert_eq!(t.get(4, 5), Symbol::H);
        assert_eq!(t.get(0, 5), Symbol::N);
    }

    #[test]
    fn shidoku_is_seven_regular() {
        let a = adjacency(&classical_tiling(2));
        assert!(a.row_sums().iter().all(|s| *s == 7.into()));
    }

    #[test]
    fn profiles() {
        let p = block_row_profile(&classical_tiling(3), Axis::Row);
        for i in 0..9 {
            assert_eq!(p.parts(i), vec![3, 3, 3]);
        }
        let p = block_row_profile(&row_tiling(3), Axis::Row);
        assert_eq!(p.p, vec![vec![3, 0, 0], vec![0, 3, 0], vec![0, 0, 3]]);
        let p = block_row_profile(&free_shidoku(), Axis::Row);
        assert_eq!(p.p[0], vec![4, 0, 0, 0]);
        assert_eq!(p.p[1], vec![0, 1, 2, 1]);
    }

    #[test]
    fn structure_of_classical_three() {
        let report = verify_layer_structure(&layers(&classical_tiling(3))).unwrap();
        assert!(report.row_parts.iter().all(|p| p == &vec![3, 3, 3]));
        assert!(report.column_parts.iter().all(|p| p == &vec![3, 3, 3]));
    }

    #[test]
    fn structure_of_free_shidoku_matches_profiles() {
        let t = free_shidoku();
        let report = verify_layer_structure(&layers(&t)).unwrap();
        for axis in Axis::BOTH {
            let profile = block_row_profile(&t, axis);
            let parts = match axis {
                Axis::Row => &report.row_parts,
                Axis::Column => &report.column_parts,
            };
            for (i, got) in parts.iter().enumerate() {
                let mut want = profile.parts(i);
                want.sort_unstable_by(|a, b| b.cmp(a));
                assert_eq!(got, &want, "{axis} {i}");
            }
        }
    }

    #[test]
    fn structure_of_blown_up_grid() {
        let big = crate::tiling::blow_up_tiling(&classical_tiling(2), 2);
        let report = verify_layer_structure(&layers(&big)).unwrap();
        assert_eq!(report.block_cliques, vec![16; 4]);
        assert!(report.row_parts.iter().all(|p| p == &vec![4, 4]));
    }

    #[test]
    fn missing_clique_edge_is_rejected() {
        let mut d = layers(&classical_tiling(2));
        d.l_b.set(0, 1, 0);
        d.l_b.set(1, 0, 0);
        assert!(matches!(
            verify_layer_structure(&d),
            Err(StructureViolation::BlockNotClique { .. })
        ));
    }

    #[test]
    fn misplaced_row_edge_is_rejected() {
        let mut d = layers(&classical_tiling(2));
        // Vertices 0 and 2 share row 0 but lie in different blocks.
        d.l_h.set(0, 2, 0);
        d.l_h.set(2, 0, 0);
        assert!(matches!(
            verify_layer_structure(&d),
            Err(StructureViolation::NotMultipartite { layer: Layer::Row, .. })
        ));
    }

    #[test]
    fn template_substitution_gives_adjacency() {
        let t = free_shidoku();
        let from_template = template(&t).evaluate(|s| match s {
            Symbol::B | Symbol::H | Symbol::V => 1,
            Symbol::D | Symbol::N => 0,
        });
        assert_eq!(from_template, adjacency(&t));
    }
}
