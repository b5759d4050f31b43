//! Serializable reports. Integers that may not fit in 64 bits are decimal
//! strings.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use sudoku_spectra::eigenbasis::{EigenBasisReport, PredictedEigenvalue};
use sudoku_spectra::integrality::RegCommute;
use sudoku_spectra::{ConditionReport, Spectrum, Tiling, Verdict};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: Vec<String>,
    pub tiling: TilingSummary,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spectrum: Option<SpectrumSummary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conditions: Option<Conditions>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub blowup: Option<BlowupSummary>,
    /// Filled only on request, so that reports are reproducible by default.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub timings_ms: BTreeMap<String, f64>,
}

impl Report {
    pub fn new(command: Vec<String>, t: &Tiling) -> Self {
        Self {
            command,
            tiling: TilingSummary::from(t),
            spectrum: None,
            conditions: None,
            blowup: None,
            timings_ms: BTreeMap::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TilingSummary {
    pub m: usize,
    pub blocks: usize,
    /// Block labels, one row per grid row.
    pub rows: Vec<Vec<usize>>,
}

impl From<&Tiling> for TilingSummary {
    fn from(t: &Tiling) -> Self {
        Self {
            m: t.m(),
            blocks: t.block_count(),
            rows: t.block_of().chunks(t.m()).map(<[usize]>::to_vec).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Multiplicity {
    pub value: String,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactSpectrum {
    pub integral: bool,
    pub integer_eigenvalues: Vec<Multiplicity>,
    pub residual_degree: usize,
    /// Coefficients of the residual factor, constant term first.
    pub residual: Vec<String>,
}

impl From<&Spectrum> for ExactSpectrum {
    fn from(s: &Spectrum) -> Self {
        Self {
            integral: s.is_integral(),
            integer_eigenvalues: s
                .integer_part
                .iter()
                .map(|(v, m)| Multiplicity {
                    value: v.to_string(),
                    multiplicity: *m,
                })
                .collect(),
            residual_degree: s.residual_degree(),
            residual: s.residual.coeffs().iter().map(ToString::to_string).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumSummary {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact: Option<ExactSpectrum>,
    /// Ascending.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub float: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegCommuteSummary {
    pub regular: bool,
    pub const_row_sum: bool,
    pub commutes_with_lb: bool,
}

impl From<RegCommute> for RegCommuteSummary {
    fn from(r: RegCommute) -> Self {
        Self {
            regular: r.regular,
            const_row_sum: r.const_row_sum,
            commutes_with_lb: r.commutes_with_lb,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictTag {
    GuaranteedIntegral,
    Inconclusive,
}

impl From<Verdict> for VerdictTag {
    fn from(v: Verdict) -> Self {
        match v {
            Verdict::GuaranteedIntegral => VerdictTag::GuaranteedIntegral,
            Verdict::Inconclusive => VerdictTag::Inconclusive,
        }
    }
}

impl fmt::Display for VerdictTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VerdictTag::GuaranteedIntegral => "guaranteed integral",
            VerdictTag::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conditions {
    /// Common row-and-block overlap, if every cell has the same one.
    pub cond_i: Option<usize>,
    pub cond_ii: Option<usize>,
    pub cond_iii: bool,
    pub rows: RegCommuteSummary,
    pub columns: RegCommuteSummary,
    pub verdict: VerdictTag,
}

impl From<&ConditionReport> for Conditions {
    fn from(r: &ConditionReport) -> Self {
        Self {
            cond_i: r.cond_i,
            cond_ii: r.cond_ii,
            cond_iii: r.cond_iii,
            rows: r.regcommute_h.into(),
            columns: r.regcommute_v.into(),
            verdict: r.verdict.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Predicted {
    pub family: String,
    /// Exact integer, or `~` followed by an approximation.
    pub value: String,
    pub approx: f64,
}

impl From<&PredictedEigenvalue> for Predicted {
    fn from(p: &PredictedEigenvalue) -> Self {
        Self {
            family: p.family.to_string(),
            value: p.value.to_string(),
            approx: p.value.to_f64(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilySize {
    pub family: String,
    pub size: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenbasisSummary {
    pub family_sizes: Vec<FamilySize>,
    pub total_rank: usize,
    pub rank_method: String,
    pub max_residual: f64,
    pub max_spectrum_gap: f64,
    pub largest: Predicted,
    pub lambda_max_m: f64,
    pub largest_bound: i64,
    /// Ascending, paired with `oracle`.
    pub predicted: Vec<Predicted>,
    pub oracle: Vec<f64>,
}

impl From<&EigenBasisReport> for EigenbasisSummary {
    fn from(r: &EigenBasisReport) -> Self {
        Self {
            family_sizes: r
                .families
                .iter()
                .map(|f| FamilySize {
                    family: f.kind.to_string(),
                    size: f.len(),
                })
                .collect(),
            total_rank: r.total_rank,
            rank_method: format!("{:?}", r.rank_method).to_lowercase(),
            max_residual: r.max_residual,
            max_spectrum_gap: r.max_spectrum_gap,
            largest: (&r.largest).into(),
            lambda_max_m: r.lambda_max_m,
            largest_bound: r.largest_bound,
            predicted: r.predicted_spectrum.iter().map(Predicted::from).collect(),
            oracle: r.oracle_spectrum.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verification {
    pub passed: bool,
    pub reconcile: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eigenbasis: Option<EigenbasisSummary>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlowupSummary {
    pub k: usize,
    pub side: usize,
    pub vertices: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tiling_out: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix_out: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verification: Option<Verification>,
}

fn write_flag(f: &mut fmt::Formatter<'_>, name: &str, value: bool) -> fmt::Result {
    writeln!(f, "  {name}: {}", if value { "yes" } else { "no" })
}

fn write_optional(f: &mut fmt::Formatter<'_>, name: &str, value: Option<usize>) -> fmt::Result {
    match value {
        Some(q) => writeln!(f, "  {name}: holds with q = {q}"),
        None => writeln!(f, "  {name}: fails"),
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = &self.tiling;
        writeln!(f, "tiling: m = {}, {} blocks", t.m, t.blocks)?;
        for row in &t.rows {
            let labels: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "  {}", labels.join(" "))?;
        }

        if let Some(s) = &self.spectrum {
            if let Some(e) = &s.exact {
                let values: Vec<String> = e
                    .integer_eigenvalues
                    .iter()
                    .map(|m| format!("{}^({})", m.value, m.multiplicity))
                    .collect();
                writeln!(f, "exact spectrum:")?;
                writeln!(f, "  integer eigenvalues: {{{}}}", values.join(", "))?;
                writeln!(f, "  residual degree: {}", e.residual_degree)?;
                writeln!(f, "  integral: {}", if e.integral { "yes" } else { "no" })?;
            }
            if let Some(values) = &s.float {
                let values: Vec<String> = values.iter().map(|v| format!("{v:.9}")).collect();
                writeln!(f, "float eigenvalues:")?;
                for chunk in values.chunks(6) {
                    writeln!(f, "  {}", chunk.join(" "))?;
                }
            }
        }

        if let Some(c) = &self.conditions {
            writeln!(f, "conditions:")?;
            write_optional(f, "(i) rows", c.cond_i)?;
            write_optional(f, "(ii) columns", c.cond_ii)?;
            write_flag(f, "(iii) L_H L_V = L_V L_H", c.cond_iii)?;
            for (name, r) in [("L_H", c.rows), ("L_V", c.columns)] {
                writeln!(
                    f,
                    "  {name}: regular {}, constant row sum {}, commutes with L_B {}",
                    r.regular, r.const_row_sum, r.commutes_with_lb
                )?;
            }
            writeln!(f, "verdict: {}", c.verdict)?;
        }

        if let Some(b) = &self.blowup {
            writeln!(f, "blow-up: k = {}, side {}, {} vertices", b.k, b.side, b.vertices)?;
            if let Some(path) = &b.tiling_out {
                writeln!(f, "  tiling written to {path}")?;
            }
            if let Some(path) = &b.matrix_out {
                writeln!(f, "  matrix written to {path}")?;
            }
            if let Some(v) = &b.verification {
                write_flag(f, "reconcile", v.reconcile)?;
                if let Some(e) = &v.eigenbasis {
                    let sizes: Vec<String> = e.family_sizes.iter().map(|s| format!("{} {}", s.family, s.size)).collect();
                    writeln!(f, "  families: {}", sizes.join(", "))?;
                    writeln!(f, "  rank: {} ({})", e.total_rank, e.rank_method)?;
                    writeln!(f, "  max residual: {:.1e}", e.max_residual)?;
                    writeln!(f, "  max gap to oracle: {:.1e}", e.max_spectrum_gap)?;
                    writeln!(
                        f,
                        "  largest: {} from {}, lambda_max(M) = {:.9}, bound {}",
                        e.largest.value, e.largest.family, e.lambda_max_m, e.largest_bound
                    )?;
                    writeln!(f, "  predicted vs oracle:")?;
                    for (p, o) in e.predicted.iter().zip(&e.oracle) {
                        writeln!(f, "    {:>4} {:>16} {o:>16.9}", p.family, p.value)?;
                    }
                }
                if let Some(msg) = &v.failure {
                    writeln!(f, "  failure: {msg}")?;
                }
                writeln!(f, "verification: {}", if v.passed { "pass" } else { "FAIL" })?;
            }
        }

        for (name, ms) in &self.timings_ms {
            writeln!(f, "time {name}: {ms:.1} ms")?;
        }
        Ok(())
    }
}
