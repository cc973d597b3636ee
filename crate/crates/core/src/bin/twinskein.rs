use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use twinskein::alexander::{alexander_symmetrized, conway};
use twinskein::constructions::{
    artin_spin, connect_sum_twin, table_knot, twin_closure, ClassicalKnotCode,
};
use twinskein::corpus::{render_table, run_acceptance, SuiteOptions};
use twinskein::diagram::{parse, parse_lenient, serialize, validate};
use twinskein::skein::{
    evaluate, export_trace, Outcome, SkeinConfig, Stats, Strategy, TraceFormat,
};
use twinskein::LaurentPoly;

#[derive(Parser)]
#[command(
    name = "twinskein",
    version,
    about = "Twin invariant and Giller polynomial of welded Gauss codes"
)]
struct Cli {
    /// Print a JSON run report to stderr when done.
    #[arg(long, global = true)]
    report: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a diagram file against the crossing and component invariants.
    Validate { path: PathBuf },
    /// Evaluate the twin invariant (or Giller polynomial of a 2-knot).
    Invariant {
        path: PathBuf,
        #[arg(long, default_value = "t - t^-1")]
        multiplier: String,
        #[arg(long, default_value_t = 64)]
        depth: usize,
        #[arg(long, default_value = "descending")]
        strategy: String,
        /// Print the resolution tree after the value.
        #[arg(long, value_name = "FORMAT")]
        trace: Option<String>,
        /// Write the tree to a file instead of stdout.
        #[arg(long, requires = "trace")]
        trace_out: Option<PathBuf>,
        #[arg(long)]
        no_memo: bool,
        #[arg(long)]
        parallel: bool,
    },
    /// Conway polynomial in z and symmetrized Alexander polynomial in u = t^1/2.
    Conway {
        path: Option<PathBuf>,
        #[arg(long, conflicts_with = "path")]
        knot: Option<String>,
    },
    /// Build a twin from a table knot or a 2-knot file.
    Spin {
        path: Option<PathBuf>,
        #[arg(long, conflicts_with = "path")]
        knot: Option<String>,
        #[arg(long, value_enum, default_value_t = Construction::Artin)]
        construction: Construction,
        /// Passage at which the knot is cut open (artin only).
        #[arg(long, default_value_t = 0)]
        cut: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the bundled acceptance suite.
    Corpus {
        #[arg(long, default_value = "acceptance")]
        suite: String,
        #[arg(long, default_value = "t - t^-1")]
        multiplier: String,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        cases: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Construction {
    Artin,
    Closure,
    Connsum,
}

#[derive(Serialize)]
struct RunReport {
    command: &'static str,
    input: Option<String>,
    outcome: String,
    stats: Option<Stats>,
    elapsed_ms: f64,
}

/// Failure classes: 1 for domain failures, 2 for I/O and parse errors.
enum Failure {
    Domain(String),
    Input(String),
}

type Run = Result<(String, Option<Stats>), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("io: {}: {e}", path.display())))
}

fn write_or_print(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => {
            std::fs::write(p, text).map_err(|e| Failure::Input(format!("io: {}: {e}", p.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn poly(s: &str) -> Result<LaurentPoly, Failure> {
    s.parse()
        .map_err(|e| Failure::Input(format!("parse: multiplier: {e}")))
}

fn classical(path: Option<&Path>, knot: Option<&str>) -> Result<ClassicalKnotCode, Failure> {
    if let Some(name) = knot {
        return table_knot(name).map_err(|e| Failure::Domain(format!("unknown-knot: {e}")));
    }
    let path = path.ok_or_else(|| Failure::Input("usage: give a path or --knot".into()))?;
    let text = read(path)?;
    let stripped: String = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .collect();
    if let Ok(k) = stripped.parse::<ClassicalKnotCode>() {
        return Ok(k);
    }
    let d = parse(&text).map_err(|e| Failure::Input(format!("parse: {e}")))?;
    ClassicalKnotCode::from_diagram(&d).map_err(|e| Failure::Input(format!("parse: {e}")))
}

fn cmd_validate(path: &Path) -> Run {
    let text = read(path)?;
    let (d, mut violations) =
        parse_lenient(&text).map_err(|e| Failure::Input(format!("parse: {e}")))?;
    violations.extend(validate(&d).violations);
    if violations.is_empty() {
        println!("valid");
        return Ok(("valid".into(), None));
    }
    for v in &violations {
        println!("{v}");
    }
    Err(Failure::Domain(format!(
        "{} violation(s)",
        violations.len()
    )))
}

#[allow(clippy::too_many_arguments)]
fn cmd_invariant(
    path: &Path,
    multiplier: &str,
    depth: usize,
    strategy: &str,
    trace: Option<&str>,
    trace_out: Option<&Path>,
    no_memo: bool,
    parallel: bool,
) -> Run {
    let strategy: Strategy = strategy
        .parse()
        .map_err(|e| Failure::Input(format!("parse: {e}")))?;
    let format: Option<TraceFormat> = trace
        .map(|f| f.parse().map_err(|e| Failure::Input(format!("parse: {e}"))))
        .transpose()?;
    let cfg = SkeinConfig {
        multiplier: poly(multiplier)?,
        depth_budget: depth,
        strategy,
        emit_trace: format.is_some(),
        memo: !no_memo,
        parallel,
    };
    let d = parse(&read(path)?).map_err(|e| Failure::Input(format!("parse: {e}")))?;
    let r = evaluate(&d, &cfg).map_err(|e| Failure::Domain(format!("{}: {e}", error_code(&e))))?;
    let outcome = match &r.outcome {
        Outcome::Value(v) => {
            println!("{v}");
            v.to_string()
        }
        Outcome::Unresolved(reason) => {
            println!("unresolved: {reason}");
            format!("unresolved: {reason}")
        }
    };
    if let Some(f) = format {
        let text = export_trace(&r, f).map_err(|e| Failure::Domain(e.to_string()))?;
        write_or_print(trace_out, &(text.trim_end().to_string() + "\n"))?;
    }
    match r.outcome {
        Outcome::Value(_) => Ok((outcome, Some(r.stats))),
        Outcome::Unresolved(_) => Err(Failure::Domain(outcome)),
    }
}

fn error_code(e: &twinskein::skein::SkeinError) -> &'static str {
    use twinskein::skein::SkeinError::*;
    match e {
        Invalid(_) | Diagram(_) => "invalid",
        NonDefaultSurgery(_) => "non-default-surgery",
        Config(_) => "config",
        _ => "unresolved",
    }
}

fn cmd_conway(path: Option<&Path>, knot: Option<&str>) -> Run {
    let k = classical(path, knot)?;
    let link = k.to_link();
    let z = conway(&link).map_err(|e| Failure::Input(format!("parse: {e}")))?;
    let delta = alexander_symmetrized(&link).map_err(|e| Failure::Input(format!("parse: {e}")))?;
    println!("{}", z.display_in("z"));
    println!("{}  (u = t^1/2)", delta.display_in("u"));
    Ok((z.display_in("z"), None))
}

fn cmd_spin(
    path: Option<&Path>,
    knot: Option<&str>,
    construction: Construction,
    cut: usize,
    out: Option<&Path>,
) -> Run {
    let twin = match construction {
        Construction::Artin => artin_spin(&classical(path, knot)?, cut),
        Construction::Closure | Construction::Connsum => {
            let path = path.ok_or_else(|| {
                Failure::Input("usage: this construction reads a 2-knot file".into())
            })?;
            let d = parse(&read(path)?).map_err(|e| Failure::Input(format!("parse: {e}")))?;
            let built = match construction {
                Construction::Closure => twin_closure(&d),
                _ => connect_sum_twin(&d),
            };
            built.map_err(|e| Failure::Domain(format!("construction: {e}")))?
        }
    };
    let text = serialize(&twin) + "\n";
    write_or_print(out, &text)?;
    Ok((text.trim_end().to_string(), None))
}

fn cmd_corpus(suite: &str, multiplier: &str, seed: Option<u64>, cases: Option<usize>) -> Run {
    if suite != "acceptance" {
        return Err(Failure::Input(format!("parse: unknown suite {suite:?}")));
    }
    let defaults = SuiteOptions::default();
    let opts = SuiteOptions {
        multiplier: poly(multiplier)?,
        seed: seed.unwrap_or(defaults.seed),
        cases: cases.unwrap_or(defaults.cases),
    };
    let reports = run_acceptance(&opts);
    print!("{}", render_table(&reports));
    let failed: Vec<String> = reports
        .iter()
        .filter(|r| !r.passed)
        .map(|r| r.id.to_string())
        .collect();
    if failed.is_empty() {
        Ok(("all criteria passed".into(), None))
    } else {
        Err(Failure::Domain(format!(
            "failed criteria: {}",
            failed.join(" ")
        )))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let (name, input, result) = match &cli.command {
        Command::Validate { path } => ("validate", Some(path.clone()), cmd_validate(path)),
        Command::Invariant {
            path,
            multiplier,
            depth,
            strategy,
            trace,
            trace_out,
            no_memo,
            parallel,
        } => (
            "invariant",
            Some(path.clone()),
            cmd_invariant(
                path,
                multiplier,
                *depth,
                strategy,
                trace.as_deref(),
                trace_out.as_deref(),
                *no_memo,
                *parallel,
            ),
        ),
        Command::Conway { path, knot } => (
            "conway",
            path.clone(),
            cmd_conway(path.as_deref(), knot.as_deref()),
        ),
        Command::Spin {
            path,
            knot,
            construction,
            cut,
            out,
        } => (
            "spin",
            path.clone(),
            cmd_spin(
                path.as_deref(),
                knot.as_deref(),
                *construction,
                *cut,
                out.as_deref(),
            ),
        ),
        Command::Corpus {
            suite,
            multiplier,
            seed,
            cases,
        } => ("corpus", None, cmd_corpus(suite, multiplier, *seed, *cases)),
    };
    let (outcome, stats, code) = match result {
        Ok((o, s)) => (o, s, 0),
        Err(Failure::Domain(m)) => {
            eprintln!("{m}");
            (m, None, 1)
        }
        Err(Failure::Input(m)) => {
            eprintln!("{m}");
            (m, None, 2)
        }
    };
    if cli.report {
        let report = RunReport {
            command: name,
            input: input.map(|p| p.display().to_string()),
            outcome,
            stats,
            elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
        };
        eprintln!(
            "{}",
            serde_json::to_string(&report).expect("report serializes")
        );
    }
    ExitCode::from(code)
}
