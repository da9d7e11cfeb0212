use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use fmb::bench::{index_stats, run_bench, write_csv, BenchConfig};
use fmb::format;
use fmb::linear::{build_linear, MinimizerParams};
use fmb::store::StoreConfig;
use fmb::superlinear::{build_superlinear, Scheme, SchemeKind};
use fmb::text::{Pattern, Text};
use fmb::{Error, Index};

#[derive(Parser)]
#[command(name = "fmb", about = "q-gram FM index: build, count, bench, stats")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build an index from a raw byte file and serialize it.
    Build(BuildArgs),
    /// Count pattern occurrences using a serialized index.
    Count(CountArgs),
    /// Benchmark count queries extracted from the indexed text.
    Bench(BenchArgs),
    /// Print index statistics.
    Stats(StatsArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Superlinear,
    Linear,
}

#[derive(Clone, Copy, ValueEnum)]
enum SchemeArg {
    Pow2,
    Fib,
}

#[derive(Args)]
struct BuildArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum)]
    variant: VariantArg,
    /// q-gram length scheme (superlinear variant).
    #[arg(long, value_enum, default_value = "pow2")]
    scheme: SchemeArg,
    /// Largest stored q-gram length (superlinear variant).
    #[arg(long)]
    max_len: Option<u16>,
    /// Minimizer window length (linear variant).
    #[arg(long)]
    q: Option<u16>,
    /// Minimizer length (linear variant).
    #[arg(long)]
    p: Option<u16>,
    #[arg(long)]
    output: PathBuf,
    #[arg(long, default_value_t = 16)]
    qa_len: usize,
    #[arg(long, default_value_t = 16)]
    bs_threshold: usize,
}

#[derive(Args)]
struct CountArgs {
    #[arg(long)]
    index: PathBuf,
    #[arg(long, conflicts_with = "pattern_file")]
    pattern: Option<String>,
    /// File with one pattern per line (raw bytes, newline-delimited).
    #[arg(long)]
    pattern_file: Option<PathBuf>,
    /// Also print steps and the final [sp, ep] range.
    #[arg(long)]
    verbose: bool,
    #[arg(long, default_value_t = 16)]
    qa_len: usize,
    #[arg(long, default_value_t = 16)]
    bs_threshold: usize,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long)]
    index: PathBuf,
    /// Pattern lengths: "10..128" (inclusive) or a comma list like "63,64".
    #[arg(long)]
    lengths: String,
    #[arg(long, default_value_t = 1_000_000)]
    queries: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// CSV output path; standard output when omitted.
    #[arg(long)]
    csv: Option<PathBuf>,
    #[arg(long, default_value_t = 16)]
    qa_len: usize,
    #[arg(long, default_value_t = 16)]
    bs_threshold: usize,
}

#[derive(Args)]
struct StatsArgs {
    #[arg(long)]
    index: PathBuf,
    #[arg(long, default_value_t = 16)]
    qa_len: usize,
    #[arg(long, default_value_t = 16)]
    bs_threshold: usize,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are not usage errors.
            use clap::error::ErrorKind::*;
            let _ = e.print();
            return match e.kind() {
                DisplayHelp | DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

/// 1 = usage, 2 = I/O, 3 = format.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::InvalidInput(_) | Error::DuplicateKey | Error::TextTooLarge => 1,
        Error::Io(_) => 2,
        Error::BadMagic | Error::UnsupportedVersion(_) | Error::Truncated | Error::Corrupt(_) => 3,
    }
}

fn store_config(qa_len: usize, bs_threshold: usize) -> StoreConfig {
    StoreConfig {
        qa_len,
        bs_threshold,
        ..StoreConfig::default()
    }
}

fn load_index(path: &PathBuf, qa_len: usize, bs_threshold: usize) -> Result<Index, Error> {
    let mut reader = BufReader::new(File::open(path)?);
    format::deserialize(&mut reader, store_config(qa_len, bs_threshold))
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Build(args) => cmd_build(args),
        Command::Count(args) => cmd_count(args),
        Command::Bench(args) => cmd_bench(args),
        Command::Stats(args) => cmd_stats(args),
    }
}

fn cmd_build(args: BuildArgs) -> Result<(), Error> {
    let text = Text::from_file(&args.input)?;
    let config = store_config(args.qa_len, args.bs_threshold);
    let index = match args.variant {
        VariantArg::Superlinear => {
            let kind = match args.scheme {
                SchemeArg::Pow2 => SchemeKind::Pow2,
                SchemeArg::Fib => SchemeKind::Fibonacci,
            };
            let default_max = match kind {
                SchemeKind::Pow2 => 128,
                SchemeKind::Fibonacci => 89,
            };
            let scheme = Scheme::new(kind, args.max_len.unwrap_or(default_max))?;
            Index::Superlinear(build_superlinear(text, scheme, config)?)
        }
        VariantArg::Linear => {
            let (Some(q), Some(p)) = (args.q, args.p) else {
                return Err(Error::InvalidInput(
                    "linear variant requires --q and --p".into(),
                ));
            };
            Index::Linear(build_linear(text, MinimizerParams::new(q, p)?, config)?)
        }
    };

    let mut writer = BufWriter::new(File::create(&args.output)?);
    format::serialize(&index, &mut writer)?;
    writer.flush()?;
    print!("{}", index_stats(&index));
    Ok(())
}

fn cmd_count(args: CountArgs) -> Result<(), Error> {
    let index = load_index(&args.index, args.qa_len, args.bs_threshold)?;
    let patterns: Vec<Pattern> = match (&args.pattern, &args.pattern_file) {
        (Some(s), None) => vec![Pattern::new(s.as_bytes().to_vec())?],
        (None, Some(path)) => {
            let raw = std::fs::read(path)?;
            let mut out = Vec::new();
            for line in raw.split(|&b| b == b'\n') {
                if !line.is_empty() {
                    out.push(Pattern::new(line.to_vec())?);
                }
            }
            out
        }
        _ => {
            return Err(Error::InvalidInput(
                "provide exactly one of --pattern or --pattern-file".into(),
            ))
        }
    };

    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    for p in &patterns {
        let r = index.count(p);
        if args.verbose {
            writeln!(out, "{} steps={} range=[{},{}]", r.count, r.steps, r.sp, r.ep)?;
        } else {
            writeln!(out, "{}", r.count)?;
        }
    }
    Ok(())
}

fn parse_lengths(spec: &str) -> Result<Vec<usize>, Error> {
    let invalid = || Error::InvalidInput(format!("cannot parse lengths '{spec}'"));
    if let Some((a, b)) = spec.split_once("..") {
        let lo: usize = a.trim().parse().map_err(|_| invalid())?;
        let hi: usize = b.trim().parse().map_err(|_| invalid())?;
        if lo == 0 || hi < lo {
            return Err(invalid());
        }
        return Ok((lo..=hi).collect());
    }
    let lengths = spec
        .split(',')
        .map(|s| s.trim().parse::<usize>().map_err(|_| invalid()))
        .collect::<Result<Vec<_>, _>>()?;
    if lengths.is_empty() || lengths.contains(&0) {
        return Err(invalid());
    }
    Ok(lengths)
}

fn cmd_bench(args: BenchArgs) -> Result<(), Error> {
    let index = load_index(&args.index, args.qa_len, args.bs_threshold)?;
    let config = BenchConfig {
        pattern_lengths: parse_lengths(&args.lengths)?,
        queries_per_length: args.queries.max(1),
        seed: args.seed,
    };
    let (rows, skipped) = run_bench(&index, &config);
    for m in skipped {
        eprintln!("warning: skipping m={m}: longer than the indexed text");
    }
    match &args.csv {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            write_csv(&index, &rows, &mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = std::io::stdout();
            write_csv(&index, &rows, &mut stdout.lock())?;
        }
    }
    Ok(())
}

fn cmd_stats(args: StatsArgs) -> Result<(), Error> {
    let index = load_index(&args.index, args.qa_len, args.bs_threshold)?;
    print!("{}", index_stats(&index));
    Ok(())
}
