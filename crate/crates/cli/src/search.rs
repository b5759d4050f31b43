//! Random-tiling search: integrality of sampled tilings and of their
//! blow-ups.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use sudoku_spectra::{adjacency, blown_adjacency, exact_spectrum, random_tiling, theorem_verdict, Spectrum};

use crate::error::CliError;
use crate::report::VerdictTag;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlowupIntegrality {
    pub k: usize,
    pub integral: bool,
}

/// One sampled tiling; reproducible from `(m, seed)` alone.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchRecord {
    pub seed: u64,
    pub m: usize,
    pub integral: bool,
    pub verdict: VerdictTag,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub blowups: Vec<BlowupIntegrality>,
    /// SHA-256 of the rendered exact spectrum.
    pub digest: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchSummary {
    pub total: usize,
    pub integral: usize,
    pub integral_guaranteed: usize,
    pub integral_inconclusive: usize,
    /// Not integral, but some tested blow-up is.
    pub blowup_only_integral: usize,
    /// Guaranteed by the conditions yet not integral; nonzero means a bug.
    pub guaranteed_not_integral: usize,
}

impl SearchSummary {
    pub fn tally(records: &[SearchRecord]) -> Self {
        let mut s = SearchSummary {
            total: records.len(),
            ..Default::default()
        };
        for r in records {
            let guaranteed = r.verdict == VerdictTag::GuaranteedIntegral;
            match (r.integral, guaranteed) {
                (true, true) => s.integral_guaranteed += 1,
                (true, false) => s.integral_inconclusive += 1,
                (false, true) => s.guaranteed_not_integral += 1,
                (false, false) => {}
            }
            s.integral += usize::from(r.integral);
            if !r.integral && r.blowups.iter().any(|b| b.integral) {
                s.blowup_only_integral += 1;
            }
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub m: usize,
    pub count: usize,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub blowup_k: Vec<usize>,
    pub records: Vec<SearchRecord>,
    pub summary: SearchSummary,
}

pub fn digest(s: &Spectrum) -> String {
    Sha256::digest(s.to_string().as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

pub fn examine(m: usize, seed: u64, blowup_k: &[usize]) -> SearchRecord {
    let t = random_tiling(m, seed);
    let spectrum = exact_spectrum(&adjacency(&t));
    let blowups = blowup_k
        .iter()
        .map(|&k| BlowupIntegrality {
            k,
            integral: exact_spectrum(&blown_adjacency(&t, k)).is_integral(),
        })
        .collect();
    SearchRecord {
        seed,
        m,
        integral: spectrum.is_integral(),
        verdict: theorem_verdict(&t).verdict.into(),
        blowups,
        digest: digest(&spectrum),
    }
}

/// Tests `count` tilings with seeds `seed, seed + 1, ...`. Records come back
/// in seed order whatever the number of jobs.
pub fn run(m: usize, count: usize, seed: u64, blowup_k: &[usize], jobs: usize) -> Result<SearchReport, CliError> {
    if m < 2 {
        return Err(CliError::Input("--m must be at least 2".into()));
    }
    if blowup_k.contains(&0) {
        return Err(CliError::Input("--blowup-k must be at least 1".into()));
    }
    let seeds: Vec<u64> = (0..count as u64).map(|i| seed.wrapping_add(i)).collect();
    let records: Vec<SearchRecord> = if jobs <= 1 {
        seeds.iter().map(|&s| examine(m, s, blowup_k)).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| CliError::Compute(e.to_string()))?;
        pool.install(|| seeds.par_iter().map(|&s| examine(m, s, blowup_k)).collect())
    };
    let summary = SearchSummary::tally(&records);
    Ok(SearchReport {
        m,
        count,
        seed,
        blowup_k: blowup_k.to_vec(),
        records,
        summary,
    })
}

impl fmt::Display for SearchRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "seed {} m {} integral {} verdict {}",
            self.seed,
            self.m,
            self.integral,
            serde_json::to_value(self.verdict).expect("tag").as_str().unwrap_or_default()
        )?;
        for b in &self.blowups {
            write!(f, " k{} {}", b.k, b.integral)?;
        }
        write!(f, " {}", &self.digest[..16])
    }
}

impl fmt::Display for SearchSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "tilings: {}", self.total)?;
        writeln!(f, "integral: {}", self.integral)?;
        writeln!(f, "  guaranteed: {}", self.integral_guaranteed)?;
        writeln!(f, "  inconclusive: {}", self.integral_inconclusive)?;
        writeln!(f, "not integral, blow-up integral: {}", self.blowup_only_integral)?;
        write!(f, "guaranteed but not integral: {}", self.guaranteed_not_integral)
    }
}
