use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use radtrace::cli::{run, Command, Pipeline, RunOptions, SystemFile};
use radtrace::macaulay::BoundOverrides;
use radtrace::Error;

/// Radicals, traces and roots of zero-dimensional polynomial systems.
#[derive(Parser, Debug)]
#[command(name = "radtrace", version)]
struct Args {
    #[arg(value_enum)]
    command: Command,
    /// JSON system file, or `-` for standard input.
    input: PathBuf,
    /// Seed for the random linear combinations.
    #[arg(long, env = "RADICAL_SEED", default_value_t = 1)]
    seed: u64,
    #[arg(long)]
    k: Option<u32>,
    #[arg(long)]
    delta: Option<u32>,
    /// Column degree of the Macaulay matrix.
    #[arg(long = "bigdelta")]
    big_delta: Option<u32>,
    /// Zero threshold for the approximate field.
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, value_enum, default_value_t = Pipeline::Macaulay)]
    pipeline: Pipeline,
    /// Use the Jacobian shortcut for square systems.
    #[arg(long)]
    shortcut: bool,
    /// Moment draws attempted after the first.
    #[arg(long, default_value_t = 5)]
    retries: usize,
    /// Always use the reduced basis for the dual basis.
    #[arg(long)]
    force_alpha: bool,
    /// Restrict the Bezout kernel to the row space of the first Bezout matrix.
    #[arg(long)]
    restrict_kernel: bool,
}

fn read_input(path: &PathBuf) -> Result<String, Error> {
    let mut text = String::new();
    let res = if path.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    res.map_err(|e| Error::Parse { line: 0, column: 0, message: format!("{}: {e}", path.display()) })?;
    Ok(text)
}

fn main() -> ExitCode {
    let args = Args::parse();
    let opts = RunOptions {
        seed: args.seed,
        overrides: BoundOverrides { k: args.k, delta: args.delta, big_delta: args.big_delta },
        tolerance: args.tol,
        pipeline: args.pipeline,
        shortcut: args.shortcut,
        retries: args.retries,
        force_alpha: args.force_alpha,
        restrict_kernel: args.restrict_kernel,
    };
    let result = read_input(&args.input)
        .and_then(|text| SystemFile::from_json(&text))
        .and_then(|file| run(args.command, &file, &opts));
    match result {
        Ok(doc) => {
            println!("{}", doc.to_json());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
