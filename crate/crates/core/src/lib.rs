//! Spectra of free-form Sudoku graphs.
//!
//! A free-form Sudoku of size `m` is an `m x m` grid whose cells are split
//! into `m` blocks of `m` cells each. Its graph has one vertex per cell and an
//! edge between two cells whenever they share a row, a column or a block.
//!
//! The crate covers:
//!
//! - [`tiling`]: block partitions, the text format and generators.
//! - [`graph`]: the adjacency matrix split into block, row and column layers,
//!   and the symbolic template used by blow-ups.
//! - [`linalg`]: exact integer/rational kernels, exact characteristic
//!   polynomials and a Jacobi eigensolver used as a float oracle.
//! - [`spectra`]: exact spectra and integrality, and the closed form for
//!   complete multipartite graphs.
//! - [`integrality`]: sufficient tiling conditions for integrality.
//! - [`blowup`]: the `k`-fold blow-up built by Kronecker products and
//!   checked against the directly scaled tiling.
//! - [`eigenbasis`]: the explicit Kronecker-structured eigenvector basis of a
//!   blow-up and its verification.
//!
//! Vertices are always ordered row-major over the grid, except for the
//! Kronecker form of a blow-up, which orders them subsquare by subsquare
//! (see [`blowup::subsquare_permutation`]).

pub mod blowup;
pub mod eigenbasis;
pub mod graph;
pub mod integrality;
pub mod linalg;
pub mod spectra;
pub mod tiling;

pub use blowup::{blown_adjacency, reconcile, substitution_set, subsquare_permutation, SubstitutionSet};
pub use eigenbasis::{build_families, predicted_spectrum, verify, EigenBasisReport, FamilyKind};
pub use graph::{adjacency, block_row_profile, layers, template, LayerDecomposition, Symbol, TemplateMatrix};
pub use integrality::{theorem_verdict, ConditionReport, Verdict};
pub use linalg::{IntMatrix, IntPolynomial, RationalVector};
pub use spectra::{exact_spectrum, is_integral, Spectrum};
pub use tiling::{classical_tiling, parse_tiling, random_tiling, row_tiling, Axis, Tiling, TilingError};
