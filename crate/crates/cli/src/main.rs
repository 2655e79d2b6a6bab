use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use cpfact::copositivity::{is_copositive, is_strictly_copositive};
use cpfact::format::{parse_certificate, parse_matrix, write_certificate, write_trace, CertificateFile, Metadata};
use cpfact::linalg::int;
use cpfact::walk::{factorize_with_restarts, verify_factorization, verify_witness};
use cpfact::{Certificate, Error, PivotRule, SymMatrix, WalkConfig};

const EXIT_FACTORIZATION: u8 = 0;
const EXIT_WITNESS: u8 = 10;
const EXIT_ITERATION_LIMIT: u8 = 20;
const EXIT_NO: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_FAILURE: u8 = 3;

#[derive(Parser)]
#[command(name = "cpfact", version, about = "Exact cp-factorizations and copositive witnesses")]
struct Cli {
    /// Worker threads for the parallel parts (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Rule {
    Greedy,
    Random,
    First,
}

impl From<Rule> for PivotRule {
    fn from(r: Rule) -> Self {
        match r {
            Rule::Greedy => PivotRule::NormalizedGreedy,
            Rule::Random => PivotRule::Random,
            Rule::First => PivotRule::FirstIndex,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Frame {
    /// Vertices scaled to copositive minimum 1.
    Unit,
    /// Vertices scaled to copositive minimum 2 (integral for Q_{A_n}).
    Doubled,
}

#[derive(Subcommand)]
enum Command {
    /// Find a cp-factorization of the input or a copositive witness against it.
    Factorize {
        input: PathBuf,
        /// Certificate output path (stdout when omitted).
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "greedy")]
        pivot_rule: Rule,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long = "max-iter", default_value_t = 10_000)]
        max_iter: usize,
        /// Runs with seeds seed, seed+1, .. until one ends with a certificate.
        #[arg(long, default_value_t = 1)]
        restarts: usize,
        /// Write one JSON line per iteration to this path.
        #[arg(long)]
        trace: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "unit")]
        frame: Frame,
    },
    /// Check a certificate against a matrix.
    Verify { input: PathBuf, certificate: PathBuf },
    /// Decide (strict) copositivity.
    CheckCopositive {
        input: PathBuf,
        #[arg(long)]
        strict: bool,
    },
}

/// An error with the exit status it maps to.
struct Failure(u8, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_)
            | Error::NotSymmetric { .. }
            | Error::NotSquare { .. }
            | Error::EmptyDimension
            | Error::DimensionMismatch { .. }
            | Error::NegativeCoordinate(_)
            | Error::NegativeCoefficient(_) => EXIT_INPUT,
            _ => EXIT_FAILURE,
        };
        Failure(code, e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure(EXIT_INPUT, format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure(EXIT_FAILURE, format!("{}: {e}", path.display())))
}

fn load_matrix(path: &Path) -> Result<SymMatrix, Failure> {
    parse_matrix(&read(path)?).map_err(|e| {
        let f = Failure::from(e);
        Failure(f.0, format!("{}: {}", path.display(), f.1))
    })
}

#[allow(clippy::too_many_arguments)]
fn cmd_factorize(
    input: &Path,
    output: Option<&Path>,
    rule: PivotRule,
    seed: u64,
    max_iter: usize,
    restarts: usize,
    trace: Option<&Path>,
    frame: Frame,
) -> Result<u8, Failure> {
    let a = load_matrix(input)?;
    let cfg = WalkConfig {
        pivot_rule: rule,
        rng_seed: seed,
        max_iterations: max_iter,
        emit_trace: trace.is_some(),
    };
    let start = Instant::now();
    let report = factorize_with_restarts(&a, &cfg, restarts)?;
    let elapsed = start.elapsed().as_millis() as u64;
    if let Some(path) = trace {
        let scale = match frame {
            Frame::Unit => int(1),
            Frame::Doubled => int(2),
        };
        write(path, &write_trace(&report.trace, &scale))?;
    }
    let (code, summary) = match &report.certificate {
        Certificate::Factorization(f) => (EXIT_FACTORIZATION, format!("factorization with {} terms", f.len())),
        Certificate::Witness(_) => (EXIT_WITNESS, "copositive witness, the matrix is not completely positive".into()),
        Certificate::IterationLimit => (EXIT_ITERATION_LIMIT, "iteration limit reached, no certificate".into()),
    };
    let text = write_certificate(&CertificateFile {
        dimension: a.dim(),
        certificate: report.certificate,
        metadata: Metadata {
            iterations: report.iterations,
            pivot_rule: rule,
            seed: report.seed,
            wall_time_ms: elapsed,
        },
    });
    match output {
        Some(path) => write(path, &text)?,
        None => print!("{text}"),
    }
    eprintln!("{summary} after {} iterations ({elapsed} ms)", report.iterations);
    Ok(code)
}

fn cmd_verify(input: &Path, certificate: &Path) -> Result<u8, Failure> {
    let a = load_matrix(input)?;
    let cert = parse_certificate(&read(certificate)?).map_err(Failure::from)?;
    if cert.dimension != a.dim() {
        return Err(Failure(
            EXIT_INPUT,
            format!("certificate has dimension {}, matrix has {}", cert.dimension, a.dim()),
        ));
    }
    let (ok, what) = match &cert.certificate {
        Certificate::Factorization(f) => (verify_factorization(&a, f), "factorization"),
        Certificate::Witness(w) => (verify_witness(&a, w), "witness"),
        Certificate::IterationLimit => (false, "iteration-limit certificate (nothing to verify)"),
    };
    if ok {
        println!("valid {what}");
        Ok(0)
    } else {
        println!("invalid {what}");
        Ok(EXIT_NO)
    }
}

fn cmd_check_copositive(input: &Path, strict: bool) -> Result<u8, Failure> {
    let b = load_matrix(input)?;
    let yes = if strict {
        is_strictly_copositive(&b)
    } else {
        is_copositive(&b)
    };
    let word = if strict { "strictly copositive" } else { "copositive" };
    if yes {
        println!("{word}");
        Ok(0)
    } else {
        println!("not {word}");
        Ok(EXIT_NO)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_FAILURE);
        }
    }
    let result = match &cli.command {
        Command::Factorize {
            input,
            output,
            pivot_rule,
            seed,
            max_iter,
            restarts,
            trace,
            frame,
        } => cmd_factorize(
            input,
            output.as_deref(),
            (*pivot_rule).into(),
            *seed,
            *max_iter,
            *restarts,
            trace.as_deref(),
            *frame,
        ),
        Command::Verify { input, certificate } => cmd_verify(input, certificate),
        Command::CheckCopositive { input, strict } => cmd_check_copositive(input, *strict),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
