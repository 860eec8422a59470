use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use lzend::calibrated::{corpus_file_name, gen_corpus, CalibratedSpec, XI_GRID};
use lzend::eval::{self, corpus, EvalConfig};
use lzend::{deserialize, modify, parse, serialize, EditRequest, Execution};

/// LZ-End compression with random access and in-place editing.
#[derive(Parser, Debug)]
#[command(name = "lzend", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse a file and write its archive.
    Compress { input: PathBuf, output: PathBuf },
    /// Decode an archive back to the original bytes.
    Decompress { input: PathBuf, output: PathBuf },
    /// Decode `len` bytes starting at `start` without decoding the rest.
    Extract {
        input: PathBuf,
        #[arg(long)]
        start: usize,
        #[arg(long)]
        len: usize,
        /// Write here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Replace bytes [at, end) of an archive in place.
    Edit(EditArgs),
    /// Write calibrated-entropy strings.
    Gen {
        #[arg(long)]
        bytes: usize,
        #[arg(long)]
        count: usize,
        #[arg(long)]
        xi: f64,
        #[arg(long, default_value_t = 0.5)]
        c: f64,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        fir: bool,
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Measure modification ratios and write them as CSV.
    Eval(EvalArgs),
}

#[derive(Args, Debug)]
#[command(group(clap::ArgGroup::new("payload").required(true).args(["insert_file", "insert_hex", "empty"])))]
struct EditArgs {
    input: PathBuf,
    #[arg(long)]
    at: usize,
    #[arg(long)]
    end: usize,
    /// Insert the contents of this file.
    #[arg(long)]
    insert_file: Option<PathBuf>,
    /// Insert these hex-encoded bytes.
    #[arg(long)]
    insert_hex: Option<String>,
    /// Insert nothing (pure deletion).
    #[arg(long)]
    empty: bool,
}

#[derive(Args, Debug)]
#[command(group(clap::ArgGroup::new("source").required(true).args(["corpus", "calibrated"])))]
struct EvalArgs {
    experiment: Experiment,
    /// Directory whose regular files form the corpus.
    #[arg(long)]
    corpus: Option<PathBuf>,
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
    /// Generate the calibrated-entropy grid instead of reading a directory.
    #[arg(long)]
    calibrated: bool,
    /// String length for --calibrated.
    #[arg(long, default_value_t = 50_000, requires = "calibrated")]
    bytes: usize,
    /// Strings per noise level for --calibrated.
    #[arg(long, default_value_t = 10, requires = "calibrated")]
    count: usize,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Experiment {
    Incremental,
    Sizes,
    Positions,
}

/// Exit status plus message for anything that stops a command.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn argument(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }

    fn io(path: &Path, err: io::Error) -> Self {
        Failure::argument(format!("{}: {err}", path.display()))
    }
}

impl From<lzend::Error> for Failure {
    fn from(err: lzend::Error) -> Self {
        use lzend::Error as E;
        let code = match err {
            E::Format(_) | E::Corruption { .. } | E::Consistency(_) => 3,
            E::Range { .. } | E::Argument(_) | E::Configuration(_) | E::Io(_) => 2,
        };
        Failure {
            code,
            message: err.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("lzend: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Compress { input, output } => {
            let text = read(&input)?;
            write(&output, &serialize(&parse(&text)))
        }
        Command::Decompress { input, output } => {
            let archive = deserialize(&read(&input)?)?;
            write(&output, &archive.decompress())
        }
        Command::Extract {
            input,
            start,
            len,
            out,
        } => {
            let bytes = deserialize(&read(&input)?)?.extract(start, len)?;
            match out {
                Some(path) => write(&path, &bytes),
                None => io::stdout()
                    .lock()
                    .write_all(&bytes)
                    .map_err(|e| Failure::argument(format!("stdout: {e}"))),
            }
        }
        Command::Edit(args) => edit(args),
        Command::Gen {
            bytes,
            count,
            xi,
            c,
            seed,
            fir,
            out_dir,
        } => {
            let spec = CalibratedSpec::new(bytes, xi, seed).with_threshold(c).with_fir(fir);
            let strings = gen_corpus(&spec, count, Execution::Parallel)?;
            fs::create_dir_all(&out_dir).map_err(|e| Failure::io(&out_dir, e))?;
            for (i, s) in strings.iter().enumerate() {
                write(&out_dir.join(corpus_file_name(xi, i)), s)?;
            }
            Ok(())
        }
        Command::Eval(args) => run_eval(args),
    }
}

fn edit(args: EditArgs) -> Result<(), Failure> {
    let payload = if let Some(path) = &args.insert_file {
        read(path)?
    } else if let Some(h) = &args.insert_hex {
        hex::decode(h).map_err(|e| Failure::argument(format!("--insert-hex: {e}")))?
    } else {
        Vec::new()
    };
    let archive = deserialize(&read(&args.input)?)?;
    let edited = modify(&archive, &EditRequest::new(args.at, args.end, payload))?;
    write(&args.input, &serialize(&edited))
}

fn run_eval(args: EvalArgs) -> Result<(), Failure> {
    let files = match &args.corpus {
        Some(dir) => corpus::load_dir(dir)?,
        None => corpus::calibrated(&XI_GRID, args.bytes, args.count, args.seed, false, Execution::Parallel)?,
    };
    if files.is_empty() {
        return Err(Failure::argument("corpus has no files"));
    }
    let cfg = EvalConfig::default();
    let records = match args.experiment {
        Experiment::Incremental => eval::run_incremental(&files, args.seed, &cfg)?,
        Experiment::Sizes => eval::run_sizes(&files, args.seed, &cfg)?,
        Experiment::Positions => eval::run_positions(&files, args.seed, &cfg)?,
    };
    write(&args.out, eval::emit_report(&records).as_bytes())
}

fn read(path: &Path) -> Result<Vec<u8>, Failure> {
    fs::read(path).map_err(|e| Failure::io(path, e))
}

/// Writes through a temporary sibling so a failed run never leaves a
/// truncated output (this matters for `edit`, which rewrites its input).
fn write(path: &Path, bytes: &[u8]) -> Result<(), Failure> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| Failure::io(path, e))?;
    tmp.write_all(bytes).map_err(|e| Failure::io(path, e))?;
    tmp.persist(path).map_err(|e| Failure::io(path, e.error))?;
    Ok(())
}
