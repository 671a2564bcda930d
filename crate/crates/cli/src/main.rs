use std::fs;
use std::io::{self, Read};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use necklace_core::bench::{run_bench, to_csv, BenchConfig};
use necklace_core::oracle::{lower_binding_gate, verify, VerificationReport, VerifyOptions};
use necklace_core::random::random_corpus;
use necklace_core::{
    compile, export_dot_highlighted, parse_necklace, render_realization, Degree, PearlNecklace,
};

const EXIT_INVALID: u8 = 1;
const EXIT_UNVERIFIED: u8 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "necklace",
    version,
    about = "Minimal-memory convolutional realization of pearl-necklace encoders"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute frame indices and memory for an encoder.
    Compile(CompileArgs),
    /// Print the non-commutativity graph as DOT.
    Graph(GraphArgs),
    /// Check a realization against the exhaustive, ordering and tableau oracles.
    Verify(VerifyArgs),
    /// Time graph construction and the longest-path pass on random encoders.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Args, Debug)]
struct CompileArgs {
    /// Encoder description file, or `-` for standard input.
    #[arg(long)]
    input: String,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args, Debug)]
struct GraphArgs {
    #[arg(long)]
    input: String,
    #[arg(long, value_enum, default_value = "dot")]
    format: Format,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Encoder description file, or `-`. Without it a seeded random corpus is checked.
    #[arg(long, required_unless_present = "seed")]
    input: Option<String>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Window size in frames (default: memory + 4).
    #[arg(long)]
    window: Option<usize>,
    /// Exhaustive-search bound on target frames (default: memory + 2).
    #[arg(long)]
    bound: Option<Degree>,
    /// Seed for the random corpus.
    #[arg(long)]
    seed: Option<u64>,
    /// Number of random encoders in the corpus.
    #[arg(long, default_value_t = 20)]
    count: usize,
    /// Largest |degree| in the random corpus.
    #[arg(long, default_value_t = 2)]
    degree_max: Degree,
    /// Lower one binding gate a frame before verifying (debugging aid).
    #[arg(long, hide = true)]
    corrupt: bool,
}

#[derive(Args, Debug)]
struct BenchArgs {
    /// Comma-separated numbers of gate strings.
    #[arg(long, value_delimiter = ',', default_value = "500,1000,2000")]
    sizes: Vec<usize>,
    #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u64).range(1..))]
    trials: u64,
    #[arg(long, default_value_t = 3)]
    degree_max: Degree,
    #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u64).range(1..))]
    frame_size: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn read_input(path: &str) -> Result<String, String> {
    if path == "-" {
        let mut text = String::new();
        io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| format!("reading standard input: {e}"))?;
        Ok(text)
    } else {
        fs::read_to_string(path).map_err(|e| format!("reading {path}: {e}"))
    }
}

fn load(path: &str) -> Result<PearlNecklace, String> {
    let text = read_input(path)?;
    parse_necklace(&text).map_err(|e| format!("{path}: {e}"))
}

fn fail(message: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(EXIT_INVALID)
}

fn cmd_compile(args: &CompileArgs) -> ExitCode {
    let necklace = match load(&args.input) {
        Ok(n) => n,
        Err(e) => return fail(e),
    };
    let realization = compile(&necklace).realization;
    match args.format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&realization).expect("realization serializes")
        ),
        Format::Text => print!("{}", render_realization(&realization)),
        Format::Dot => return fail("--format dot is only available for `graph`"),
    }
    ExitCode::SUCCESS
}

fn cmd_graph(args: &GraphArgs) -> ExitCode {
    if args.format != Format::Dot {
        return fail("`graph` only supports --format dot");
    }
    let necklace = match load(&args.input) {
        Ok(n) => n,
        Err(e) => return fail(e),
    };
    let compiled = compile(&necklace);
    print!(
        "{}",
        export_dot_highlighted(&compiled.graph, compiled.paths.witness())
    );
    ExitCode::SUCCESS
}

fn verify_one(necklace: &PearlNecklace, args: &VerifyArgs) -> Result<VerificationReport, String> {
    let compiled = compile(necklace);
    let realization = if args.corrupt {
        match lower_binding_gate(&compiled) {
            Some((j, bad)) => {
                eprintln!("warning: gate {j} lowered one frame below its binding constraint");
                bad
            }
            None => {
                eprintln!("warning: no gate is bound by another; nothing to corrupt");
                compiled.realization
            }
        }
    } else {
        compiled.realization
    };
    if necklace.len() > necklace_core::oracle::BRUTE_FORCE_CAP {
        eprintln!(
            "warning: {} gate strings exceed the exhaustive-search cap of {}; skipping it",
            necklace.len(),
            necklace_core::oracle::BRUTE_FORCE_CAP
        );
    }
    let options = VerifyOptions {
        frames: args.window,
        bound: args.bound,
        cap: None,
    };
    verify(necklace, &realization, options).map_err(|e| e.to_string())
}

fn cmd_verify(args: &VerifyArgs) -> ExitCode {
    if args.format != Format::Json {
        return fail("`verify` only supports --format json");
    }
    if args.window == Some(0) {
        return fail("--window must be at least 1");
    }
    if args.bound.is_some_and(|b| b < 0) {
        return fail("--bound must be non-negative");
    }
    let necklaces = match (&args.input, args.seed) {
        (Some(path), _) => match load(path) {
            Ok(n) => vec![n],
            Err(e) => return fail(e),
        },
        (None, Some(seed)) => random_corpus(seed, args.count, 6, 4, args.degree_max),
        (None, None) => unreachable!("clap requires --input or --seed"),
    };

    let mut reports = Vec::with_capacity(necklaces.len());
    for necklace in &necklaces {
        match verify_one(necklace, args) {
            Ok(r) => reports.push(r),
            Err(e) => return fail(e),
        }
    }
    let passed = reports.iter().all(VerificationReport::passed);
    let json = if args.input.is_some() {
        serde_json::to_string_pretty(&reports[0])
    } else {
        serde_json::to_string_pretty(&reports)
    };
    println!("{}", json.expect("report serializes"));
    if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_UNVERIFIED)
    }
}

fn cmd_bench(args: &BenchArgs) -> ExitCode {
    if args.sizes.is_empty() || args.sizes.contains(&0) {
        return fail("--sizes needs positive numbers of gate strings");
    }
    let config = BenchConfig {
        sizes: args.sizes.clone(),
        trials: args.trials as usize,
        frame_size: args.frame_size as usize,
        degree_max: args.degree_max,
        seed: args.seed,
    };
    print!("{}", to_csv(&run_bench(&config)));
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let _ = e.print();
            return ExitCode::from(EXIT_INVALID);
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
    };
    match &cli.command {
        Command::Compile(args) => cmd_compile(args),
        Command::Graph(args) => cmd_graph(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Bench(args) => cmd_bench(args),
    }
}
