use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde::Serialize;
use wdeg_cli::report::{render_analysis, render_realize, render_table};
use wdeg_cli::{cmd_analyze, cmd_polytope, cmd_realize, cmd_wdeg_table, AnalyzeOptions, CliError};

/// Squared Wasserstein distance between root measures and its algebraic degree.
#[derive(Parser)]
#[command(name = "wdeg", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// Print JSON instead of text.
    #[arg(long)]
    json: bool,
    /// Print indented JSON.
    #[arg(long)]
    pretty: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full pipeline on two polynomials in z of the same degree.
    Analyze {
        /// First polynomial, e.g. "2z^3 + z^2 - 3z - 7".
        p: String,
        /// Second polynomial.
        q: String,
        /// Initial root precision in bits.
        #[arg(long, default_value_t = 128)]
        precision: u32,
        /// Precision cap for every escalation.
        #[arg(long, default_value_t = 4096)]
        max_precision: u32,
        /// Denominator bound for rational reconstruction (default 2^(precision/3)).
        #[arg(long)]
        denominator_bound: Option<BigInt>,
        /// Largest factor degree tried by the subset search.
        #[arg(long, default_value_t = 6)]
        max_factor_degree: usize,
        /// Decimals shown for W2^2.
        #[arg(long, default_value_t = 10)]
        digits: usize,
        /// Include wall-clock timings in the output.
        #[arg(long)]
        timings: bool,
        #[command(flatten)]
        out: Output,
    },
    /// List the vertices of the invariant Birkhoff polytope.
    Polytope {
        d: usize,
        /// Signature of p as "real,pairs".
        #[arg(value_parser = parse_sig)]
        p_sig: (usize, usize),
        /// Signature of q as "real,pairs".
        #[arg(value_parser = parse_sig)]
        q_sig: (usize, usize),
        #[command(flatten)]
        out: Output,
    },
    /// Build polynomials whose unique optimum is a chosen vertex.
    Realize {
        d: usize,
        #[arg(value_parser = parse_sig)]
        p_sig: (usize, usize),
        #[arg(value_parser = parse_sig)]
        q_sig: (usize, usize),
        /// Index into the sorted vertex list.
        index: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Degree bounds over all vertices, per signature pair.
    WdegTable {
        d: usize,
        #[command(flatten)]
        out: Output,
    },
}

fn parse_sig(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected \"real,pairs\", got {s:?}"))?;
    let n = |x: &str| x.trim().parse::<usize>().map_err(|e| format!("{x:?}: {e}"));
    Ok((n(a)?, n(b)?))
}

fn emit<T: Serialize>(value: &T, out: &Output, text: impl FnOnce(&T) -> String) {
    if out.pretty {
        println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
    } else if out.json {
        println!("{}", serde_json::to_string(value).expect("serializable"));
    } else {
        print!("{}", text(value));
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Analyze {
            p,
            q,
            precision,
            max_precision,
            denominator_bound,
            max_factor_degree,
            digits,
            timings,
            out,
        } => {
            let opts =
                AnalyzeOptions { precision, max_precision, denominator_bound, max_factor_degree, digits, timings };
            let r = cmd_analyze(&p, &q, &opts)?;
            emit(&r, &out, render_analysis);
        }
        Command::Polytope { d, p_sig, q_sig, out } => {
            let r = cmd_polytope(d, p_sig, q_sig)?;
            emit(&r, &out, |r| serde_json::to_string_pretty(r).expect("serializable") + "\n");
        }
        Command::Realize { d, p_sig, q_sig, index, out } => {
            let r = cmd_realize(d, p_sig, q_sig, index)?;
            emit(&r, &out, render_realize);
            if !r.self_check.passed() {
                return Err(CliError::Usage("self-check failed".into()));
            }
        }
        Command::WdegTable { d, out } => {
            let r = cmd_wdeg_table(d)?;
            emit(&r, &out, render_table);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    if let Some(n) = std::env::var("WDEG_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("warning: WDEG_THREADS ignored: {e}");
        }
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
