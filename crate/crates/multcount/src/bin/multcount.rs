//! Command-line surface for the multiple-counting sequence toolkit.
//!
//! Exit codes: 0 success/match, 2 recurrence witness or b-file
//! divergence, 64 usage or parameter error, 65 malformed input file.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use multcount::bfile::{self, BFile, CompareOutcome};
use multcount::pseudoprime::{self, Classification};
use multcount::recurrences::{self, VerificationReport};
use multcount::sequences;
use multcount::spectral::{self, MatrixKind};
use multcount::{Error, SequenceParams};

const SCHEMA: &str = "multcount/report-v1";

const EXIT_WITNESS: u8 = 2;
const EXIT_USAGE: u8 = 64;
const EXIT_BADFILE: u8 = 65;

#[derive(Parser)]
#[command(name = "multcount", version, about = "Multiple-counting sequences between exponents: generation, verification, spectral computation and pseudoprime scanning", disable_help_subcommand = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate J or S terms
    Gen(GenArgs),
    /// Check a recurrence against the floor formula
    Verify(VerifyArgs),
    /// Print the summation-recurrence constant π
    Pi(PiArgs),
    /// Scan moduli for Fermat pseudoprimes
    Scan(ScanArgs),
    /// Compare a b-file against generated terms
    Compare(CompareArgs),
    /// Time the four computation strategies against each other
    Bench(BenchArgs),
    /// Dump the eigensystem of a key matrix
    Eig(EigArgs),
    /// Dump a key matrix
    Matrix(MatrixArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Which {
    J,
    S,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GenFormat {
    Bfile,
    Plain,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Form {
    K,
    L,
}

#[derive(Args)]
struct ParamArgs {
    /// Base x (>= 2)
    #[arg(long)]
    x: u64,
    /// Modulus rho (>= 2)
    #[arg(long)]
    rho: u64,
}

impl ParamArgs {
    fn build(&self) -> Result<SequenceParams, Error> {
        SequenceParams::new(self.x, self.rho)
    }
}

#[derive(Args)]
struct GenArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long)]
    count: usize,
    #[arg(long, value_enum, default_value = "j")]
    which: Which,
    #[arg(long, value_enum, default_value = "bfile")]
    format: GenFormat,
    /// Starting index label for b-file output
    #[arg(long, default_value_t = 0)]
    offset: i64,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long)]
    n_max: u64,
    #[arg(long, value_enum, default_value = "j")]
    which: Which,
    #[arg(long, value_enum, default_value = "text")]
    format: OutputFormat,
}

#[derive(Args)]
struct PiArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long, value_enum, default_value = "text")]
    format: OutputFormat,
}

#[derive(Args)]
struct ScanArgs {
    /// Base x (>= 2)
    #[arg(long)]
    x: u64,
    #[arg(long)]
    lo: u64,
    #[arg(long)]
    hi: u64,
    /// Worker threads for the scan; output is identical for any value
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long, value_enum, default_value = "text")]
    format: OutputFormat,
}

#[derive(Args)]
struct CompareArgs {
    /// b-file to check
    #[arg(long)]
    file: PathBuf,
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long, value_enum, default_value = "j")]
    which: Which,
    /// Added to the file's record position before indexing generated terms
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    offset_shift: i64,
    #[arg(long, value_enum, default_value = "text")]
    format: OutputFormat,
}

#[derive(Args)]
struct BenchArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long)]
    n: u64,
    /// Comma-separated subset of floor,recurrence,matrix-power,binet
    #[arg(long, value_delimiter = ',', default_values_t = vec![Strategy::Floor, Strategy::Recurrence, Strategy::MatrixPower])]
    strategies: Vec<Strategy>,
    #[arg(long, default_value_t = 3)]
    repetitions: usize,
    /// Omit timing fields so identical invocations are byte-identical
    #[arg(long)]
    no_timing: bool,
    /// Print the computed term (large values are suppressed by default)
    #[arg(long)]
    print_value: bool,
    #[arg(long, value_enum, default_value = "text")]
    format: OutputFormat,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Strategy {
    Floor,
    Recurrence,
    MatrixPower,
    Binet,
}

impl std::fmt::Display for Strategy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Strategy::Floor => "floor",
            Strategy::Recurrence => "recurrence",
            Strategy::MatrixPower => "matrix-power",
            Strategy::Binet => "binet",
        })
    }
}

#[derive(Args)]
struct EigArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long, value_enum, default_value = "k")]
    form: Form,
    #[arg(long, value_enum, default_value = "text")]
    format: OutputFormat,
}

#[derive(Args)]
struct MatrixArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long, value_enum, default_value = "k")]
    form: Form,
    #[arg(long, value_enum, default_value = "text")]
    format: OutputFormat,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("multcount: error: {err}");
            ExitCode::from(match err {
                Error::MalformedBFile { .. } | Error::Io { .. } => EXIT_BADFILE,
                _ => EXIT_USAGE,
            })
        }
    }
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Gen(args) => cmd_gen(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Pi(args) => cmd_pi(args),
        Command::Scan(args) => cmd_scan(args),
        Command::Compare(args) => cmd_compare(args),
        Command::Bench(args) => cmd_bench(args),
        Command::Eig(args) => cmd_eig(args),
        Command::Matrix(args) => cmd_matrix(args),
    }
}

fn generate(params: SequenceParams, which: Which, count: usize) -> Vec<BigInt> {
    let terms = match which {
        Which::J => sequences::generate_j(params, count),
        Which::S => sequences::generate_s(params, count),
    };
    terms.into_iter().map(BigInt::from).collect()
}

fn which_name(which: Which) -> &'static str {
    match which {
        Which::J => "J",
        Which::S => "S",
    }
}

fn cmd_gen(args: GenArgs) -> Result<u8, Error> {
    let params = args.params.build()?;
    let values = generate(params, args.which, args.count);
    match args.format {
        GenFormat::Bfile => {
            let file = BFile {
                offset: args.offset,
                values,
            };
            print!("{}", file.to_text());
        }
        GenFormat::Plain => {
            for v in &values {
                println!("{v}");
            }
        }
        GenFormat::Json => {
            let report = json!({
                "schema": SCHEMA,
                "command": "gen",
                "params": {"x": params.x(), "rho": params.rho()},
                "which": which_name(args.which),
                "offset": args.offset,
                "values": values.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
            });
            println!("{report}");
        }
    }
    Ok(0)
}

fn report_json(report: &VerificationReport) -> Value {
    json!({
        "checked_from": report.checked_from,
        "checked_to": report.checked_to,
        "holds": report.holds,
        "witness": report.witness.as_ref().map(|w| json!({
            "index": w.index,
            "expected": w.expected.to_string(),
            "actual": w.actual.to_string(),
        })),
    })
}

fn cmd_verify(args: VerifyArgs) -> Result<u8, Error> {
    let params = args.params.build()?;
    let (report, pi) = match args.which {
        Which::J => (recurrences::verify_recurrence(params, args.n_max), None),
        Which::S => {
            let pi = recurrences::pi_constant(params)?;
            (
                recurrences::verify_summation_with_pi(params, &pi, args.n_max),
                Some(pi),
            )
        }
    };
    match args.format {
        OutputFormat::Json => {
            let mut body = json!({
                "schema": SCHEMA,
                "command": "verify",
                "params": {"x": params.x(), "rho": params.rho()},
                "which": which_name(args.which),
                "outcome": if report.holds { "pass" } else { "witness" },
                "report": report_json(&report),
            });
            if let Some(pi) = &pi {
                body["pi"] = Value::String(pi.to_string());
            }
            println!("{body}");
        }
        OutputFormat::Text => {
            if let Some(pi) = &pi {
                println!("pi = {pi}");
            }
            if report.holds {
                println!(
                    "{} recurrence holds for (x={}, rho={}) on n in [{}, {}]",
                    which_name(args.which),
                    params.x(),
                    params.rho(),
                    report.checked_from,
                    report.checked_to
                );
            } else {
                let w = report.witness.as_ref().expect("failing report has witness");
                println!(
                    "{} recurrence FAILS for (x={}, rho={}) at n={}: floor={}, recurrence={}",
                    which_name(args.which),
                    params.x(),
                    params.rho(),
                    w.index,
                    w.expected,
                    w.actual
                );
            }
        }
    }
    Ok(if report.holds { 0 } else { EXIT_WITNESS })
}

fn cmd_pi(args: PiArgs) -> Result<u8, Error> {
    let params = args.params.build()?;
    let pi = recurrences::pi_constant(params)?;
    let closed = recurrences::pi_closed_form(params);
    match args.format {
        OutputFormat::Json => {
            println!(
                "{}",
                json!({
                    "schema": SCHEMA,
                    "command": "pi",
                    "params": {"x": params.x(), "rho": params.rho()},
                    "pi": pi.to_string(),
                    "closed_form": closed.to_string(),
                    "agree": pi == closed,
                })
            );
        }
        OutputFormat::Text => {
            println!("pi = {pi} (closed form: {closed})");
        }
    }
    Ok(0)
}

fn cmd_scan(args: ScanArgs) -> Result<u8, Error> {
    let results = match args.jobs {
        Some(jobs) => rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .expect("thread pool")
            .install(|| pseudoprime::scan(args.x, args.lo, args.hi)),
        None => pseudoprime::scan(args.x, args.lo, args.hi),
    }?;
    let mut counts = [0usize; 4];
    let mut pseudoprimes = Vec::new();
    for r in &results {
        match r.classification {
            Classification::Prime => counts[0] += 1,
            Classification::Pseudoprime => {
                counts[1] += 1;
                pseudoprimes.push(r.rho);
            }
            Classification::OrdinaryComposite => counts[2] += 1,
            Classification::NonCoprime => counts[3] += 1,
        }
    }
    match args.format {
        OutputFormat::Json => {
            println!(
                "{}",
                json!({
                    "schema": SCHEMA,
                    "command": "scan",
                    "x": args.x,
                    "lo": args.lo,
                    "hi": args.hi,
                    "counts": {
                        "prime": counts[0],
                        "pseudoprime": counts[1],
                        "ordinary-composite": counts[2],
                        "non-coprime": counts[3],
                    },
                    "pseudoprimes": pseudoprimes,
                })
            );
        }
        OutputFormat::Text => {
            println!(
                "scan x={} over [{}, {}]: {} primes, {} pseudoprimes, {} ordinary composites, {} non-coprime",
                args.x, args.lo, args.hi, counts[0], counts[1], counts[2], counts[3]
            );
            for rho in &pseudoprimes {
                println!("pseudoprime {rho}");
            }
        }
    }
    Ok(0)
}

fn cmd_compare(args: CompareArgs) -> Result<u8, Error> {
    let params = args.params.build()?;
    let file = BFile::read(&args.file)?;
    let needed = file.values.len() as i64 + args.offset_shift.max(0);
    let generated = generate(params, args.which, needed.max(0) as usize);
    let outcome = bfile::compare(&file, &generated, args.offset_shift);
    let (code, outcome_json, text) = match &outcome {
        CompareOutcome::Match { compared } => (
            0,
            json!({"outcome": "match", "compared": compared}),
            format!("match: {compared} records agree"),
        ),
        CompareOutcome::Divergence {
            index,
            file_value,
            generated,
        } => (
            EXIT_WITNESS,
            json!({
                "outcome": "divergence",
                "index": index,
                "file_value": file_value.to_string(),
                "generated": generated.to_string(),
            }),
            format!("divergence at index {index}: file has {file_value}, generated {generated}"),
        ),
    };
    match args.format {
        OutputFormat::Json => {
            println!(
                "{}",
                json!({
                    "schema": SCHEMA,
                    "command": "compare",
                    "file": args.file.display().to_string(),
                    "params": {"x": params.x(), "rho": params.rho()},
                    "which": which_name(args.which),
                    "offset_shift": args.offset_shift,
                    "result": outcome_json,
                })
            );
        }
        OutputFormat::Text => println!("{text}"),
    }
    Ok(code)
}

/// Median wall time of `reps` runs of `f`, plus the value of the last run.
fn time_median<T>(reps: usize, mut f: impl FnMut() -> T) -> (Duration, T) {
    let mut times = Vec::with_capacity(reps);
    let mut value = None;
    for _ in 0..reps.max(1) {
        let start = Instant::now();
        value = Some(f());
        times.push(start.elapsed());
    }
    times.sort();
    (times[times.len() / 2], value.expect("ran at least once"))
}

fn cmd_bench(args: BenchArgs) -> Result<u8, Error> {
    let params = args.params.build()?;
    let n = args.n;
    let binet_certified = params.rho() <= 9 && n <= 64;

    struct Row {
        strategy: Strategy,
        median: Duration,
        value: Option<BigInt>,
        note: Option<&'static str>,
    }

    let mut rows = Vec::new();
    for &strategy in &args.strategies {
        let row = match strategy {
            Strategy::Floor => {
                let (t, v) = time_median(args.repetitions, || sequences::count_term(params, n));
                Row {
                    strategy,
                    median: t,
                    value: Some(BigInt::from(v)),
                    note: None,
                }
            }
            Strategy::Recurrence => {
                let (t, v) =
                    time_median(args.repetitions, || recurrences::term_by_recurrence(params, n));
                Row {
                    strategy,
                    median: t,
                    value: Some(BigInt::from(v)),
                    note: None,
                }
            }
            Strategy::MatrixPower => {
                let (t, v) =
                    time_median(args.repetitions, || spectral::term_by_matrix_power(params, n));
                Row {
                    strategy,
                    median: t,
                    value: Some(BigInt::from(v?)),
                    note: None,
                }
            }
            Strategy::Binet => {
                let (t, v) = time_median(args.repetitions, || spectral::binet_j(params, n));
                Row {
                    strategy,
                    median: t,
                    value: Some(v?.rounded),
                    note: (!binet_certified).then_some("uncertified"),
                }
            }
        };
        rows.push(row);
    }

    // every exact strategy must agree before anything is reported
    let exact: Vec<&Row> = rows
        .iter()
        .filter(|r| !matches!(r.strategy, Strategy::Binet))
        .collect();
    let agree = exact
        .windows(2)
        .all(|w| w[0].value == w[1].value);
    let outcome = if agree { "pass" } else { "fail" };

    match args.format {
        OutputFormat::Json => {
            let strategies: Vec<Value> = rows
                .iter()
                .map(|r| {
                    let mut entry = json!({"strategy": r.strategy.to_string()});
                    if !args.no_timing {
                        entry["median_ns"] = json!(r.median.as_nanos() as u64);
                    }
                    if let Some(note) = r.note {
                        entry["note"] = json!(note);
                    }
                    if args.print_value {
                        entry["value"] = json!(r.value.as_ref().map(|v| v.to_string()));
                    }
                    entry
                })
                .collect();
            println!(
                "{}",
                json!({
                    "schema": SCHEMA,
                    "command": "bench",
                    "params": {"x": params.x(), "rho": params.rho()},
                    "n": n,
                    "repetitions": args.repetitions,
                    "outcome": outcome,
                    "strategies": strategies,
                })
            );
        }
        OutputFormat::Text => {
            println!(
                "bench (x={}, rho={}) n={}: exact strategies {}",
                params.x(),
                params.rho(),
                n,
                if agree { "agree" } else { "DISAGREE" }
            );
            for r in &rows {
                let mut line = format!("  {:<13}", r.strategy.to_string());
                if !args.no_timing {
                    line.push_str(&format!(" median {:?}", r.median));
                }
                if let Some(note) = r.note {
                    line.push_str(&format!(" [{note}]"));
                }
                if args.print_value {
                    if let Some(v) = &r.value {
                        line.push_str(&format!(" value {v}"));
                    }
                }
                println!("{line}");
            }
        }
    }
    Ok(if agree { 0 } else { EXIT_WITNESS })
}

fn build_matrix(params: SequenceParams, form: Form) -> Result<spectral::KeyMatrix, Error> {
    Ok(match form {
        Form::K => spectral::build_k(params),
        Form::L => spectral::build_l(params, recurrences::pi_constant(params)?),
    })
}

fn cmd_eig(args: EigArgs) -> Result<u8, Error> {
    let params = args.params.build()?;
    let matrix = build_matrix(params, args.form)?;
    let eig = spectral::eigensystem(&matrix)?;
    match args.format {
        OutputFormat::Json => {
            let complex = |z: &num_complex::Complex64| json!([z.re, z.im]);
            println!(
                "{}",
                json!({
                    "schema": SCHEMA,
                    "command": "eig",
                    "params": {"x": params.x(), "rho": params.rho()},
                    "form": if matrix.kind == MatrixKind::K { "K" } else { "L" },
                    "eigenvalues": eig.eigenvalues.iter().map(complex).collect::<Vec<_>>(),
                    "vectors": eig.vectors.iter()
                        .map(|row| row.iter().map(complex).collect::<Vec<_>>())
                        .collect::<Vec<_>>(),
                    "inverse": eig.inverse.iter()
                        .map(|row| row.iter().map(complex).collect::<Vec<_>>())
                        .collect::<Vec<_>>(),
                    "condition_estimate": eig.condition_estimate,
                })
            );
        }
        OutputFormat::Text => {
            println!(
                "eigenvalues of {} (x={}, rho={}):",
                if matrix.kind == MatrixKind::K { "K" } else { "L" },
                params.x(),
                params.rho()
            );
            for z in &eig.eigenvalues {
                println!("  {:+.12} {:+.12}i", z.re, z.im);
            }
            println!("condition estimate: {:.3e}", eig.condition_estimate);
        }
    }
    Ok(0)
}

fn cmd_matrix(args: MatrixArgs) -> Result<u8, Error> {
    let params = args.params.build()?;
    let matrix = build_matrix(params, args.form)?;
    match args.format {
        OutputFormat::Json => {
            println!(
                "{}",
                json!({
                    "schema": SCHEMA,
                    "command": "matrix",
                    "params": {"x": params.x(), "rho": params.rho()},
                    "form": if matrix.kind == MatrixKind::K { "K" } else { "L" },
                    "pi": matrix.embedded_pi.as_ref().map(|p| p.to_string()),
                    "entries": matrix.entries.iter()
                        .map(|row| row.iter().map(|v| v.to_string()).collect::<Vec<_>>())
                        .collect::<Vec<_>>(),
                })
            );
        }
        OutputFormat::Text => {
            for row in &matrix.entries {
                let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
                println!("{}", cells.join(" "));
            }
        }
    }
    Ok(0)
}
