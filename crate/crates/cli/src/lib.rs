//! Command-line front end for the `ordproof` decision procedure.

mod parse;
pub mod suite;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use ordproof::certs::{parse_cert, serialize_cert};
use ordproof::replay::{check_refutation, export, parse_gprf, serialize_gprf, Sigma};
use ordproof::{decide_with, refutes, Algorithm, DecideOptions, Model, SymbolTable, Theory, Verdict};
use serde_json::json;

pub use parse::{parse_input, ParseError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_REJECTED: i32 = 3;
pub const EXIT_INVARIANT: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "ordproof", version, about = "Decide order formulas with checkable certificates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide formula files; prints "sat" or "unsat".
    Solve {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long, value_enum, default_value_t = TheoryArg::Partial)]
        theory: TheoryArg,
        /// Write the certificate here on unsat.
        #[arg(long)]
        cert: Option<PathBuf>,
        /// Write the model here on sat.
        #[arg(long)]
        model: Option<PathBuf>,
        /// Write the exported proof term here on unsat.
        #[arg(long)]
        proof_term: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = AlgorithmArg::Naive)]
        algorithm: AlgorithmArg,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Check a certificate or proof term against a goal formula.
    Check {
        file: PathBuf,
        #[arg(long)]
        goal: PathBuf,
        #[arg(long, value_enum, default_value_t = Kernel::Structured)]
        kernel: Kernel,
        #[arg(long, value_enum, default_value_t = TheoryArg::Partial)]
        theory: TheoryArg,
    },
    /// Compare every verdict on small conjunctions against brute force.
    Selftest {
        #[arg(long, default_value_t = 3)]
        vars: u32,
        #[arg(long, default_value_t = 4)]
        max_len: usize,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TheoryArg {
    Partial,
    Linear,
}

impl From<TheoryArg> for Theory {
    fn from(t: TheoryArg) -> Self {
        match t {
            TheoryArg::Partial => Theory::Partial,
            TheoryArg::Linear => Theory::Linear,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum AlgorithmArg {
    Naive,
    Fw,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kernel {
    Structured,
    Replay,
}

/// Outcome of a failed command, carrying its exit status.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Rejected(String),
    Invariant(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Rejected(_) => EXIT_REJECTED,
            Failure::Invariant(_) => EXIT_INVARIANT,
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

/// Runs the command line `args` (including the program name). Returns the
/// exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    let result = match cli.command {
        Command::Solve {
            files,
            theory,
            cert,
            model,
            proof_term,
            algorithm,
            format,
        } => {
            let opts = SolveOpts {
                theory: theory.into(),
                algorithm: match algorithm {
                    AlgorithmArg::Naive => Algorithm::Naive,
                    AlgorithmArg::Fw => Algorithm::FloydWarshall,
                },
                format,
                cert,
                model,
                proof_term,
            };
            solve(&files, &opts, out)
        }
        Command::Check {
            file,
            goal,
            kernel,
            theory,
        } => check(&file, &goal, kernel, theory.into(), out),
        Command::Selftest { vars, max_len } => selftest(vars, max_len, out),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(f) => {
            match &f {
                Failure::Rejected(m) => {
                    let _ = writeln!(out, "rejected: {m}");
                }
                Failure::Usage(m) => {
                    let _ = writeln!(err, "error: {m}");
                }
                Failure::Invariant(m) => {
                    let _ = writeln!(err, "internal error: {m}");
                }
            }
            f.code()
        }
    }
}

struct SolveOpts {
    theory: Theory,
    algorithm: Algorithm,
    format: Format,
    cert: Option<PathBuf>,
    model: Option<PathBuf>,
    proof_term: Option<PathBuf>,
}

fn solve(files: &[PathBuf], opts: &SolveOpts, out: &mut dyn Write) -> Result<(), Failure> {
    if files.len() > 1 && (opts.cert.is_some() || opts.model.is_some() || opts.proof_term.is_some()) {
        return Err(Failure::Usage(
            "--cert, --model and --proof-term need a single input file".into(),
        ));
    }
    for file in files {
        let (phi, symbols) =
            parse_input(&read(file)?).map_err(|e| Failure::Usage(format!("{}:{e}", file.display())))?;
        let start = Instant::now();
        let verdict = decide_with(&phi, opts.theory, DecideOptions { algorithm: opts.algorithm })
            .map_err(|e| Failure::Invariant(e.to_string()))?;
        let elapsed = start.elapsed().as_secs_f64();

        let mut certificate_size = None;
        match &verdict {
            Verdict::Unsat { certificate } => {
                certificate_size = Some(certificate.size());
                if let Some(path) = &opts.cert {
                    write(path, &(serialize_cert(certificate) + "\n"))?;
                }
                if let Some(path) = &opts.proof_term {
                    write(path, &(serialize_gprf(&export(certificate, &phi)) + "\n"))?;
                }
            }
            Verdict::Sat { model, .. } => {
                if let Some(path) = &opts.model {
                    write(path, &render_model(model, &symbols))?;
                }
            }
        }
        let word = if verdict.is_unsat() { "unsat" } else { "sat" };
        let line = match opts.format {
            Format::Json => json!({
                "file": file.display().to_string(),
                "verdict": word,
                "theory": opts.theory.to_string(),
                "literals": phi.atoms().len(),
                "variables": phi.vars().len(),
                "certificate_size": certificate_size,
                "wall_time": elapsed,
            })
            .to_string(),
            Format::Text if files.len() > 1 => format!("{}: {word}", file.display()),
            Format::Text => word.to_owned(),
        };
        writeln!(out, "{line}").map_err(|e| Failure::Usage(e.to_string()))?;
    }
    Ok(())
}

/// Carrier, assignment and relation, each in sorted order.
pub fn render_model(m: &Model, symbols: &SymbolTable) -> String {
    let carrier: Vec<String> = m.relation.carrier().iter().map(u32::to_string).collect();
    let mut assignment: Vec<(String, u32)> = m
        .assignment
        .iter()
        .map(|(v, e)| (symbols.name(v).map_or_else(|| v.to_string(), str::to_owned), e))
        .collect();
    assignment.sort();
    let assignment: Vec<String> = assignment.iter().map(|(n, e)| format!("{n}={e}")).collect();
    let relation: Vec<String> = m.relation.pairs().iter().map(|(a, b)| format!("{a}<={b}")).collect();
    format!(
        "theory: {}\ncarrier: {}\nassignment: {}\nrelation: {}\n",
        m.theory,
        carrier.join(" "),
        assignment.join(" "),
        relation.join(" ")
    )
}

fn check(file: &Path, goal: &Path, kernel: Kernel, theory: Theory, out: &mut dyn Write) -> Result<(), Failure> {
    let (phi, _) =
        parse_input(&read(goal)?).map_err(|e| Failure::Usage(format!("{}:{e}", goal.display())))?;
    let text = read(file)?;
    let located = |e: &dyn std::fmt::Display| format!("{}: {e}", file.display());
    match kernel {
        Kernel::Structured => {
            let p = parse_cert(&text).map_err(|e| Failure::Usage(located(&e)))?;
            refutes(&phi, &p, theory).map_err(|e| Failure::Rejected(located(&e)))?;
        }
        Kernel::Replay => {
            // accepts proof terms directly, or certificates to be exported
            let g = match parse_gprf(&text) {
                Ok(g) => g,
                Err(gerr) => match parse_cert(&text) {
                    Ok(p) => export(&p, &phi),
                    Err(_) => return Err(Failure::Usage(located(&gerr))),
                },
            };
            check_refutation(&Sigma::new(theory), &phi, &g)
                .map_err(|e| Failure::Rejected(located(&e)))?;
        }
    }
    writeln!(out, "ok").map_err(|e| Failure::Usage(e.to_string()))
}

fn selftest(vars: u32, max_len: usize, out: &mut dyn Write) -> Result<(), Failure> {
    if !(1..=3).contains(&vars) || !(1..=4).contains(&max_len) {
        return Err(Failure::Usage("selftest supports --vars 1..=3 and --max-len 1..=4".into()));
    }
    let mut clean = true;
    for theory in [Theory::Partial, Theory::Linear] {
        let start = Instant::now();
        let s = suite::exhaustive(&suite::Checker::new(theory, Algorithm::Naive), vars, max_len);
        let _ = writeln!(out, "{theory}: {s} ({:.1}s)", start.elapsed().as_secs_f64());
        for sample in &s.samples {
            let _ = writeln!(out, "  {sample}");
        }
        clean &= s.is_clean();
    }
    if clean {
        let _ = writeln!(out, "selftest passed");
        Ok(())
    } else {
        Err(Failure::Invariant("selftest found disagreements".into()))
    }
}
