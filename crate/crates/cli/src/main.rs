use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use sudoku_spectra::{classical_tiling, random_tiling, row_tiling, Tiling};
use sudoku_spectra_cli::commands::{self, BlowupOptions, MatrixFormat, MatrixOrder, SpectrumMode};
use sudoku_spectra_cli::report::Report;
use sudoku_spectra_cli::{search, CliError};

/// Spectra, integrality and blow-ups of free-form Sudoku graphs.
#[derive(Parser)]
#[command(name = "sudoku-spectra", version)]
struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Include wall-clock timings in reports.
    #[arg(long, global = true)]
    timings: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact and/or floating-point spectrum of a tiling's graph.
    Spectrum {
        /// Tiling file, or `-` for standard input.
        file: PathBuf,
        #[command(flatten)]
        mode: ModeFlags,
    },
    /// Evaluate the sufficient conditions for integrality.
    Check { file: PathBuf },
    /// Blow every cell up into a k x k subsquare.
    Blowup(BlowupArgs),
    /// Test random tilings for integrality.
    Search(SearchArgs),
    /// Write a tiling file.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
        /// Output file; standard output if absent.
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
#[group(multiple = false)]
struct ModeFlags {
    /// Exact spectrum only (default).
    #[arg(long)]
    exact: bool,
    /// Floating-point eigenvalues only.
    #[arg(long)]
    float: bool,
    /// Both.
    #[arg(long)]
    both: bool,
}

impl ModeFlags {
    fn mode(&self) -> SpectrumMode {
        SpectrumMode {
            exact: !self.float || self.both,
            float: self.float || self.both,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderArg {
    Grid,
    Subsquare,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

#[derive(Args)]
struct BlowupArgs {
    file: PathBuf,
    #[arg(long)]
    k: usize,
    /// Write the blown-up tiling here.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write the blown-up adjacency matrix here.
    #[arg(long)]
    matrix_out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    matrix_format: FormatArg,
    /// Vertex order of the written matrix.
    #[arg(long, value_enum, default_value = "grid")]
    order: OrderArg,
    /// Reconcile both constructions and verify the eigenvector basis.
    #[arg(long)]
    verify: bool,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    m: usize,
    #[arg(long, default_value_t = 100)]
    count: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Also test the k-fold blow-up; may be repeated.
    #[arg(long = "blowup-k")]
    blowup_k: Vec<usize>,
    /// Write records here as JSON lines.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Subcommand)]
enum GenKind {
    /// Classical Sudoku with n x n blocks on an n^2 x n^2 grid.
    Classical {
        #[arg(long)]
        n: usize,
    },
    /// Every row is a block.
    Row {
        #[arg(long)]
        m: usize,
    },
    /// Uniform random equal-size partition.
    Random {
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn print_report(report: &Report, json: bool) -> Result<(), CliError> {
    if json {
        println!("{}", serde_json::to_string_pretty(report).map_err(|e| CliError::Compute(e.to_string()))?);
    } else {
        print!("{report}");
    }
    Ok(())
}

fn generate(kind: &GenKind) -> Result<Tiling, CliError> {
    Ok(match *kind {
        GenKind::Classical { n } if n >= 1 => classical_tiling(n),
        GenKind::Row { m } if m >= 1 => row_tiling(m),
        GenKind::Random { m, seed } if m >= 1 => random_tiling(m, seed),
        _ => return Err(CliError::Input("size must be positive".into())),
    })
}

fn run(cli: Cli) -> Result<(), CliError> {
    let echo: Vec<String> = std::env::args().skip(1).collect();
    match &cli.command {
        Command::Spectrum { file, mode } => {
            let t = commands::read_tiling(file)?;
            let mut report = Report::new(echo, &t);
            commands::spectrum(&mut report, &t, mode.mode(), cli.timings)?;
            print_report(&report, cli.json)
        }
        Command::Check { file } => {
            let t = commands::read_tiling(file)?;
            let mut report = Report::new(echo, &t);
            commands::check(&mut report, &t, cli.timings);
            print_report(&report, cli.json)
        }
        Command::Blowup(args) => {
            let t = commands::read_tiling(&args.file)?;
            let mut report = Report::new(echo, &t);
            let opts = BlowupOptions {
                k: args.k,
                tiling_out: args.out.as_deref(),
                matrix_out: args.matrix_out.as_deref(),
                order: match args.order {
                    OrderArg::Grid => MatrixOrder::Grid,
                    OrderArg::Subsquare => MatrixOrder::Subsquare,
                },
                format: match args.matrix_format {
                    FormatArg::Text => MatrixFormat::Text,
                    FormatArg::Json => MatrixFormat::Json,
                },
                verify: args.verify,
                timings: cli.timings,
            };
            let passed = commands::blowup(&mut report, &t, &opts)?;
            print_report(&report, cli.json)?;
            if passed {
                Ok(())
            } else {
                let msg = report
                    .blowup
                    .and_then(|b| b.verification)
                    .and_then(|v| v.failure)
                    .unwrap_or_default();
                Err(CliError::Verification(msg))
            }
        }
        Command::Search(args) => {
            let report = search::run(args.m, args.count, args.seed, &args.blowup_k, args.jobs)?;
            if let Some(path) = &args.out {
                let mut lines = String::new();
                for r in &report.records {
                    lines.push_str(&serde_json::to_string(r).map_err(|e| CliError::Compute(e.to_string()))?);
                    lines.push('\n');
                }
                commands::write_file(path, &lines)?;
            }
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&report).map_err(|e| CliError::Compute(e.to_string()))?);
            } else {
                let mut out = std::io::stdout().lock();
                if args.out.is_none() {
                    for r in &report.records {
                        let _ = writeln!(out, "{r}");
                    }
                }
                let _ = writeln!(out, "{}", report.summary);
            }
            Ok(())
        }
        Command::Gen { kind, out } => {
            let text = generate(kind)?.render();
            match out {
                Some(path) => commands::write_file(path, &text),
                None => {
                    print!("{text}");
                    Ok(())
                }
            }
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
