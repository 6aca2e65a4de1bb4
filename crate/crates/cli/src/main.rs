mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::json;

use fibrep_core::fibrep::{
    binomial_plan, construct, construct_alternating, containment_check, injectivity_check,
    norm_bound_check_with, range_check, verify,
};
use fibrep_core::frames::{
    analyze, analyze_float, check_bessel_transfer, check_union_frame, find_breakpoint,
};
use fibrep_core::sequences::{load_window, write_window, CANONICAL_NAMES};
use fibrep_core::suite::{mutation_suite, run_all, Mutation, SuiteConfig, SuiteSummary};
use fibrep_core::{
    ConstructOutcome, DerivedSpec, Error, ExtensionPolicy, FloatWindow, LoadedWindow, RandomKind,
    SequenceWindow, TailPolicy, Witness,
};

use report::Report;

#[derive(Parser, Debug)]
#[command(
    name = "fibrep",
    version,
    about = "Fibonacci representations of finite sequence windows"
)]
struct Cli {
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    format: Format,
    /// Slack for floating-point inequalities.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tolerance: f64,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the output here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Record wall-clock time in `timing_ms`; otherwise it is 0 and reports are reproducible.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    Independent,
    Dependent,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Tail {
    Zero,
    Unknown,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Policy {
    Zero,
    HalfF3,
    Alternating,
    Pinned,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a named or seeded random window as a sequence file.
    Generate {
        /// A canonical window name, or `random`.
        name: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        dim: usize,
        #[arg(long, value_enum, default_value_t = Kind::Independent)]
        kind: Kind,
        /// Random windows get complex entries.
        #[arg(long)]
        complex: bool,
        #[arg(long, value_enum, default_value_t = Tail::Zero)]
        tail: Tail,
    },
    /// Frame report of a window and of its sums and differences.
    Analyze { input: PathBuf },
    /// Build and check a representation of a window.
    Fibrep {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Policy::Zero)]
        policy: Policy,
        /// Sequence file whose first vector is the pinned value of Tf_1.
        #[arg(long, required_if_eq("policy", "pinned"))]
        pin_file: Option<PathBuf>,
    },
    /// Run the randomized identity suites.
    VerifySuite {
        #[arg(long, default_value_t = 200)]
        seeds: u64,
        #[arg(long, default_value_t = 10)]
        max_n: usize,
        #[arg(long, default_value_t = 10)]
        max_dim: usize,
        /// Negate the first nonzero coefficient of the closed form for f_n.
        #[arg(long, hide = true)]
        flip_rep_sign: Option<usize>,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Io(_) => 3,
            Error::Parse(_) => 4,
            _ => 5,
        };
        Failure::new(code, e.to_string())
    }
}

/// What a command produces: a report (with its exit code), or a raw document
/// for standard output.
enum Output {
    Report(Report, u8),
    Document(String),
}

type CmdResult = Result<Output, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let outcome = match &cli.command {
        Command::Generate {
            name,
            n,
            dim,
            kind,
            complex,
            tail,
        } => generate(&cli, name, *n, *dim, *kind, *complex, *tail),
        Command::Analyze { input } => cmd_analyze(input),
        Command::Fibrep {
            input,
            policy,
            pin_file,
        } => cmd_fibrep(&cli, input, *policy, pin_file.as_deref()),
        Command::VerifySuite {
            seeds,
            max_n,
            max_dim,
            flip_rep_sign,
        } => verify_suite(&cli, *seeds, *max_n, *max_dim, *flip_rep_sign),
    };
    let result = outcome.and_then(|out| match out {
        Output::Report(mut report, code) => {
            if cli.timing {
                report.timing_ms = start.elapsed().as_millis().max(1) as u64;
            }
            let text = match cli.format {
                Format::Json => report.to_json(),
                Format::Text => report.to_text(),
            };
            // generate uses --out for the sequence file itself.
            let out = if matches!(cli.command, Command::Generate { .. }) {
                None
            } else {
                cli.out.as_deref()
            };
            emit(out, &text)?;
            Ok(code)
        }
        Output::Document(text) => {
            emit(None, &text)?;
            Ok(0)
        }
    });
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::new(3, format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn generate(
    cli: &Cli,
    name: &str,
    n: usize,
    dim: usize,
    kind: Kind,
    complex: bool,
    tail: Tail,
) -> CmdResult {
    let w = if name == "random" {
        let kind = match kind {
            Kind::Independent => RandomKind::Independent,
            Kind::Dependent => RandomKind::Dependent,
        };
        if complex {
            SequenceWindow::random_complex(n, dim, cli.seed, kind)
        } else {
            SequenceWindow::random(n, dim, cli.seed, kind)
        }
    } else if CANONICAL_NAMES.contains(&name) {
        SequenceWindow::canonical(name, n, dim)
    } else {
        return Err(Failure::new(
            2,
            format!("unknown window {name:?}; expected random or one of {CANONICAL_NAMES:?}"),
        ));
    };
    let w = w.map_err(|e| Failure::new(2, e.to_string()))?;
    let w = w.with_tail(match tail {
        Tail::Zero => TailPolicy::Zero,
        Tail::Unknown => TailPolicy::Unknown,
    });
    let file = write_window(&LoadedWindow::Exact(w.clone()));
    let inputs =
        json!({ "name": name, "n": n, "dim": dim, "seed": cli.seed, "tail": w.tail.to_string() });
    let mut report = Report::new("generate", inputs);
    report.push("label", &w.label);
    match &cli.out {
        Some(path) => {
            emit(Some(path), &file)?;
            Ok(Output::Report(report, 0))
        }
        None => Ok(Output::Document(file)),
    }
}

fn load(input: &Path) -> Result<LoadedWindow, Failure> {
    load_window(input).map_err(|e| match e {
        Error::Io(io) => Failure::new(3, format!("cannot read {}: {io}", input.display())),
        other => Failure::from(other),
    })
}

/// `{f_n +- f_{n+1}}` for a float window, following the same tail rule as exact windows.
fn float_derived(w: &FloatWindow, sign: f64) -> FloatWindow {
    let n = w.len();
    let count = match w.tail {
        TailPolicy::Zero => n,
        TailPolicy::Unknown => n - 1,
    };
    let vectors = (0..count)
        .map(|i| {
            let next = w.vectors.get(i + 1);
            (0..w.dim)
                .map(|k| w.vectors[i][k] + next.map_or(Complex64::new(0.0, 0.0), |v| v[k] * sign))
                .collect()
        })
        .collect();
    FloatWindow {
        dim: w.dim,
        vectors,
        tail: w.tail,
        label: w.label.clone(),
    }
}

fn cmd_analyze(input: &Path) -> CmdResult {
    let loaded = load(input)?;
    let inputs = json!({ "input": input.display().to_string() });
    let mut report = Report::new("analyze", inputs);
    let window: serde_json::Value =
        serde_json::from_str(&write_window(&loaded)).expect("window file is JSON");
    report.push("window", &window);
    match &loaded {
        LoadedWindow::Exact(w) => {
            report.push("frame", &analyze(w));
            if w.len() >= 2 || w.tail == TailPolicy::Zero {
                report.push("sums", &analyze(&w.derive(&DerivedSpec::sum())?));
                report.push(
                    "differences",
                    &analyze(&w.derive(&DerivedSpec::difference())?),
                );
            }
            if w.tail == TailPolicy::Zero {
                report.push(
                    "bessel_transfer",
                    &check_bessel_transfer(w, &DerivedSpec::sum())?,
                );
                report.push("union_frame", &check_union_frame(w, &DerivedSpec::sum())?);
            }
        }
        LoadedWindow::Float(w) => {
            report.push("frame", &analyze_float(w));
            if w.len() >= 2 || w.tail == TailPolicy::Zero {
                report.push("sums", &analyze_float(&float_derived(w, 1.0)));
                report.push("differences", &analyze_float(&float_derived(w, -1.0)));
            }
        }
    }
    Ok(Output::Report(report, 0))
}

fn cmd_fibrep(cli: &Cli, input: &Path, policy: Policy, pin_file: Option<&Path>) -> CmdResult {
    let LoadedWindow::Exact(w) = load(input)? else {
        return Err(Error::ExactOnly.into());
    };
    let policy_name = format!("{policy:?}").to_lowercase();
    let inputs = json!({
        "input": input.display().to_string(),
        "policy": policy_name,
        "pin_file": pin_file.map(|p| p.display().to_string()),
        "tolerance": cli.tolerance,
    });
    let mut report = Report::new("fibrep", inputs);
    let outcome = match policy {
        Policy::Zero => construct(&w, &ExtensionPolicy::Zero)?,
        Policy::HalfF3 => construct(&w, &ExtensionPolicy::HalfF3)?,
        Policy::Alternating => ConstructOutcome::Operator(construct_alternating(&w)?),
        Policy::Pinned => {
            let path =
                pin_file.ok_or_else(|| Failure::new(2, "--policy pinned needs --pin-file"))?;
            let LoadedWindow::Exact(pin) = load(path)? else {
                return Err(Error::ExactOnly.into());
            };
            if pin.is_empty() {
                return Err(Error::EmptyWindow.into());
            }
            if pin.dim != w.dim {
                return Err(Error::DimMismatch {
                    expected: w.dim,
                    found: pin.dim,
                }
                .into());
            }
            construct(&w, &ExtensionPolicy::Pinned(pin.f(1).clone()))?
        }
    };
    report.push("construct", &outcome);
    let ConstructOutcome::Operator(t) = outcome else {
        return Ok(Output::Report(report, 0));
    };
    report.push("verify", &verify(&w, &t)?);
    match range_check(&w, &t) {
        Ok(r) => report.push("range", &r),
        Err(e) => report.push_error("range", e),
    }
    if !w.f(1).is_zero() && w.len() >= 3 {
        if let Some(m) = find_breakpoint(&w)? {
            match containment_check(&w, &t, m) {
                Ok(r) => report.push("containment", &r),
                Err(e) => report.push_error("containment", e),
            }
        }
    }
    if w.tail == TailPolicy::Zero {
        match norm_bound_check_with(&w, &t, cli.tolerance) {
            Ok(r) => report.push("norm_bound", &r),
            Err(e) => report.push_error("norm_bound", e),
        }
    }
    match injectivity_check(&w, &t) {
        Ok(r) => report.push("injectivity", &r),
        Err(e) => report.push_error("injectivity", e),
    }
    Ok(Output::Report(report, 0))
}

fn first_failing_n(summaries: &[SuiteSummary]) -> Option<usize> {
    summaries
        .iter()
        .flat_map(|s| &s.failures)
        .find_map(|f| match f.check.witness {
            Some(Witness::Index(n)) if f.check.name == "closed_form" => Some(n),
            _ => None,
        })
}

fn verify_suite(
    cli: &Cli,
    seeds: u64,
    max_n: usize,
    max_dim: usize,
    flip: Option<usize>,
) -> CmdResult {
    let mutation = match flip {
        Some(n) => {
            let plan = binomial_plan(n).map_err(|e| Failure::new(2, e.to_string()))?;
            let &(term, part) = plan
                .nonzero_coefficients()
                .first()
                .expect("every plan has a nonzero term");
            Some(Mutation { n, term, part })
        }
        None => None,
    };
    let cfg = SuiteConfig {
        seeds,
        base_seed: cli.seed,
        max_n,
        max_dim,
        tolerance: cli.tolerance,
        mutation,
    };
    let mut summaries = run_all(&cfg)?;
    summaries.push(mutation_suite(&cfg)?);
    let ok = summaries.iter().all(SuiteSummary::ok);
    let mut report = Report::new(
        "verify-suite",
        serde_json::to_value(&cfg).expect("config serializes"),
    );
    for s in &summaries {
        report.push(s.name.clone(), s);
    }
    if !ok {
        report.push("first_failing_n", &first_failing_n(&summaries));
    }
    Ok(Output::Report(report, if ok { 0 } else { 1 }))
}
