use std::fs;
use std::io::Read;
use std::path::Path;
use std::time::Instant;

use sudoku_spectra::blowup::{inverse_permutation, reconcile, subsquare_permutation};
use sudoku_spectra::eigenbasis::VerificationFailure;
use sudoku_spectra::linalg::float_eigen;
use sudoku_spectra::tiling::blow_up_tiling;
use sudoku_spectra::{blown_adjacency, exact_spectrum, adjacency, parse_tiling, theorem_verdict, verify, IntMatrix, Tiling};

use crate::error::CliError;
use crate::report::{BlowupSummary, Conditions, EigenbasisSummary, ExactSpectrum, Report, SpectrumSummary, Verification};

/// Reads a tiling file; `-` is standard input.
pub fn read_tiling(path: &Path) -> Result<Tiling, CliError> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::Input(format!("stdin: {e}")))?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?
    };
    Ok(parse_tiling(&text)?)
}

pub fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// Runs `f`, recording its wall time in `report` when `timed`.
fn timed<T>(report: &mut Report, timed: bool, name: &str, f: impl FnOnce() -> T) -> T {
    let start = Instant::now();
    let out = f();
    if timed {
        report
            .timings_ms
            .insert(name.to_owned(), start.elapsed().as_secs_f64() * 1e3);
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpectrumMode {
    pub exact: bool,
    pub float: bool,
}

pub fn spectrum(report: &mut Report, t: &Tiling, mode: SpectrumMode, timings: bool) -> Result<(), CliError> {
    let a = adjacency(t);
    let exact = mode
        .exact
        .then(|| timed(report, timings, "exact", || ExactSpectrum::from(&exact_spectrum(&a))));
    let float = if mode.float {
        Some(timed(report, timings, "float", || float_eigen(&a))?)
    } else {
        None
    };
    report.spectrum = Some(SpectrumSummary { exact, float });
    Ok(())
}

pub fn check(report: &mut Report, t: &Tiling, timings: bool) {
    let c = timed(report, timings, "check", || theorem_verdict(t));
    report.conditions = Some(Conditions::from(&c));
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixOrder {
    /// Row-major on the blown-up grid, matching the written tiling.
    Grid,
    /// All cells of each original cell's subsquare together.
    Subsquare,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixFormat {
    Text,
    Json,
}

pub struct BlowupOptions<'a> {
    pub k: usize,
    pub tiling_out: Option<&'a Path>,
    pub matrix_out: Option<&'a Path>,
    pub order: MatrixOrder,
    pub format: MatrixFormat,
    pub verify: bool,
    pub timings: bool,
}

pub fn render_matrix(a: &IntMatrix, format: MatrixFormat) -> String {
    match format {
        MatrixFormat::Text => {
            let mut out = String::new();
            for row in a.to_decimal_rows() {
                out.push_str(&row.join(" "));
                out.push('\n');
            }
            out
        }
        MatrixFormat::Json => {
            let mut out = serde_json::to_string(&a.to_decimal_rows()).expect("strings serialize");
            out.push('\n');
            out
        }
    }
}

/// Writes the requested artifacts and, with `verify`, fills in the checks.
/// Returns whether verification passed (always true without it).
pub fn blowup(report: &mut Report, t: &Tiling, opts: &BlowupOptions<'_>) -> Result<bool, CliError> {
    if opts.k == 0 {
        return Err(CliError::Input("--k must be at least 1".into()));
    }
    let big = blow_up_tiling(t, opts.k);
    let mut summary = BlowupSummary {
        k: opts.k,
        side: big.m(),
        vertices: big.cell_count(),
        tiling_out: None,
        matrix_out: None,
        verification: None,
    };
    if let Some(path) = opts.tiling_out {
        write_file(path, &big.render())?;
        summary.tiling_out = Some(path.display().to_string());
    }
    if let Some(path) = opts.matrix_out {
        let a = blown_adjacency(t, opts.k);
        let a = match opts.order {
            MatrixOrder::Subsquare => a,
            MatrixOrder::Grid => a.conjugate_by(&inverse_permutation(&subsquare_permutation(t.m(), opts.k)))?,
        };
        write_file(path, &render_matrix(&a, opts.format))?;
        summary.matrix_out = Some(path.display().to_string());
    }

    let mut passed = true;
    if opts.verify {
        let reconciled = timed(report, opts.timings, "reconcile", || reconcile(t, opts.k));
        let outcome = timed(report, opts.timings, "eigenbasis", || verify(t, opts.k));
        let (eigenbasis, failure) = match outcome {
            Ok(r) => (Some(EigenbasisSummary::from(&r)), None),
            Err(VerificationFailure::Oracle(e)) => return Err(e.into()),
            Err(e) => (None, Some(e.to_string())),
        };
        let failure = match (reconciled, failure) {
            (false, None) => Some("blown-up grid and Kronecker form differ".to_owned()),
            (_, f) => f,
        };
        passed = failure.is_none();
        summary.verification = Some(Verification {
            passed,
            reconcile: reconciled,
            failure,
            eigenbasis,
        });
    }
    report.blowup = Some(summary);
    Ok(passed)
}
