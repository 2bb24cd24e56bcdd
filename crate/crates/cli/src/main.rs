//! `witt`: check presentable structures and hyperfields, decide isometry of
//! forms and compute Witt rings from the command line.
//!
//! Exit status 0 means every check passed (a decided query counts as a
//! pass), 1 a verified mathematical failure, 2 a usage or format error.

mod commands;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use report::RunReport;

#[derive(Parser)]
#[command(name = "witt", version, about = "Quadratically presentable fields and their Witt rings")]
struct Cli {
    /// Write the machine-readable report (JSON) to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Seed for randomly generated structures.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

/// Where the structure under test comes from.
#[derive(Args, Clone, Debug, Default)]
pub struct Source {
    /// Text document holding a poset, hyperfield or presentable ring.
    #[arg(long)]
    input: Option<PathBuf>,

    /// Shipped structure: euclidean3, walking-supremum or example-sq-7.
    #[arg(long)]
    builtin: Option<String>,

    /// Finite field size, `p^n` or `q`; hyperfield commands use Q(GF(q)).
    #[arg(long)]
    field: Option<String>,

    /// Irreducible modulus for the extension, coefficients constant term
    /// first, e.g. `1,1,1`.
    #[arg(long)]
    modulus: Option<String>,

    /// Use GF(q) itself as a hyperfield instead of Q(GF(q)).
    #[arg(long)]
    plain: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Presentability of a pointed poset.
    CheckPoset {
        #[command(flatten)]
        source: Source,
        /// Check a random poset with at most this many elements (uses --seed).
        #[arg(long)]
        random: Option<usize>,
    },
    /// Hypermonoid, hypergroup, hyperring and hyperfield axioms.
    CheckHyperfield {
        #[command(flatten)]
        source: Source,
    },
    /// Presentable monoid, group, ring and field axioms; a hyperfield source
    /// is checked through its powerset structure.
    CheckPresentable {
        #[command(flatten)]
        source: Source,
    },
    /// The quadratic hyperfield Q(k) of a finite field.
    Qhf {
        #[command(flatten)]
        source: Source,
    },
    /// The prime addition applied to a hyperfield.
    Prime {
        #[command(flatten)]
        source: Source,
    },
    /// Quotient by a multiplicative set listed element by element.
    Quotient {
        #[command(flatten)]
        source: Source,
        /// Comma-separated element names.
        #[arg(long)]
        subset: String,
    },
    /// Squares quotient of the prime hyperfield of GF(q), compared with Q(GF(q)).
    Pipeline {
        #[command(flatten)]
        source: Source,
        /// Take every nonzero element as a square (literal reading).
        #[arg(long)]
        literal_squares: bool,
    },
    /// Isometry and Witt equivalence of two forms.
    Isom {
        #[command(flatten)]
        source: Source,
        /// A form as comma-separated element names; give exactly two.
        #[arg(long = "form", num_args = 1, required = true, allow_hyphen_values = true)]
        forms: Vec<String>,
    },
    /// Witt ring of a pre-quadratic hyperfield, compared with the classical
    /// Witt ring when the source is a small field.
    Witt {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 4)]
        max_dim: usize,
    },
    /// Classical Witt ring, congruence classes and isometry over GF(q).
    Oracle {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 4)]
        max_dim: usize,
        /// Count congruence classes of Gram matrices of this size.
        #[arg(long)]
        congruence_dim: Option<usize>,
        /// Diagonal forms by field element names; give zero or two.
        #[arg(long = "form", num_args = 1, allow_hyphen_values = true)]
        forms: Vec<String>,
    },
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = Cli::parse();
    let start = Instant::now();
    let result = commands::run(&cli.command, cli.seed);
    let elapsed_ms = start.elapsed().as_millis() as u64;
    let report = match result {
        Ok(outcome) => {
            let code = i32::from(outcome.failed);
            let status = if outcome.failed { "fail" } else { "pass" };
            let mut stdout = std::io::stdout().lock();
            for l in &outcome.lines {
                let _ = writeln!(stdout, "{l}");
            }
            let _ = writeln!(stdout, "result: {status}");
            RunReport {
                command: argv,
                status: status.into(),
                exit_code: code,
                lines: outcome.lines,
                checks: outcome.checks,
                documents: outcome.documents,
                error: None,
                elapsed_ms,
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            let code = if e.is_mathematical() { 1 } else { 2 };
            RunReport {
                command: argv,
                status: if code == 1 { "fail" } else { "error" }.into(),
                exit_code: code,
                lines: Vec::new(),
                checks: Vec::new(),
                documents: Vec::new(),
                error: Some(e.to_string()),
                elapsed_ms,
            }
        }
    };
    if let Some(path) = &cli.out {
        let text = serde_json::to_string_pretty(&report).expect("report serializes");
        if let Err(e) = std::fs::write(path, text + "\n") {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    ExitCode::from(report.exit_code as u8)
}
