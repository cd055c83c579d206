//! `flagcert`: enumeration, flag bases, certificate checking and the
//! extremal oracles from one binary.
//!
//! Exit status: 0 on success, 1 when a certificate (or rounding, or a
//! duality check) fails, 2 on usage, input or capacity errors.

mod cache;
mod commands;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use flagcert::certificate::Problem;
use flagcert::graph::Family;

#[derive(Parser, Debug)]
#[command(name = "flagcert", version, about = "Exact flag-algebra certificates and extremal oracles for odd-cycle edge problems")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Print a JSON document instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads (default: all cores). Output does not depend on it.
    #[arg(long, global = true, value_name = "N")]
    pub threads: Option<usize>,
    /// Add a decimal approximation next to exact Q[√2] values.
    #[arg(long, global = true)]
    pub approx: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Colored graphs on n vertices avoiding a family, one per isomorphism class.
    Enumerate {
        #[arg(short = 'n', value_name = "N")]
        n: usize,
        #[arg(long, default_value = "NONE")]
        family: Family,
        /// Print only the number of classes.
        #[arg(long)]
        count_only: bool,
    },
    /// Flag basis for a type, in certificate index order.
    Flags {
        /// lambda, beta, rho, or a graph encoding such as `1:`.
        #[arg(long = "type", default_value = "lambda")]
        sigma: String,
        #[arg(long, default_value_t = 4)]
        size: usize,
        #[arg(long, default_value = "FC5")]
        family: Family,
        #[arg(long)]
        count_only: bool,
    },
    /// The level-6 target expression of a problem.
    Target {
        #[arg(long)]
        problem: Problem,
    },
    /// Check a certificate file.
    Verify { file: PathBuf },
    /// Write the feasibility SDP in SDPA sparse format.
    ExportSdpa {
        #[arg(long)]
        problem: Problem,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// Round a floating solution to an exact certificate.
    Round {
        /// Raw solution text (`problem`, `block`, `slack` lines).
        #[arg(required_unless_present = "sdpa_solution", conflicts_with = "sdpa_solution")]
        raw: Option<PathBuf>,
        /// Solver output in SDPA solution layout (needs --problem).
        #[arg(long, requires = "problem")]
        sdpa_solution: Option<PathBuf>,
        #[arg(long)]
        problem: Option<Problem>,
        /// Largest denominator allowed in rounded entries.
        #[arg(long, default_value = "1000000")]
        bound: String,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// Exhaustive minimum number of edges on L-cycles over graphs with floor(n^2/4)+1 edges.
    Oracle {
        #[arg(short = 'n', value_name = "N")]
        n: usize,
        #[arg(short = 'L', value_name = "L")]
        len: usize,
        /// Also run the two-pass duality check (exit 1 if it fails).
        #[arg(long)]
        duality: bool,
    },
    /// Build one of the extremal constructions.
    Construct {
        #[arg(long, value_enum)]
        kind: commands::Kind,
        #[arg(short = 'n', value_name = "N")]
        n: usize,
        /// Part sizes a,b,c,d for the path blow-up (default: integer program optimum).
        #[arg(long, value_name = "A,B,C,D")]
        quadruple: Option<String>,
        /// Count edges on cycles of this length.
        #[arg(short = 'L', value_name = "L")]
        len: Option<usize>,
    },
    /// Maximizers of ab subject to ab + bc + cd + C(d,2) > n^2/4.
    Qp {
        #[arg(short = 'n', value_name = "N")]
        n: usize,
    },
    /// F(n) for cycles of length at least seven, cross-checked three ways.
    Formulas {
        #[arg(long, default_value_t = 1)]
        n_min: u64,
        #[arg(long)]
        n_max: u64,
    },
    /// Exact optima of the two stability programs and the grid sweep.
    Stability {
        #[arg(long, default_value_t = 200)]
        steps: u32,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Some(t) = cli.global.threads {
        if t == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(2);
        }
        // Only fails if a pool already exists, which cannot happen here.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    match commands::execute(&cli.command, &cli.global) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            // A closed pipe (e.g. `| head`) is not an error worth reporting.
            let _ = if cli.global.json {
                writeln!(stdout, "{}", serde_json::to_string_pretty(&out.json).expect("serializable"))
            } else {
                out.lines.iter().try_for_each(|line| writeln!(stdout, "{line}"))
            };
            ExitCode::from(if out.ok { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.status())
        }
    }
}
