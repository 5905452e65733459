//! Command-line front end. Every subcommand prints one JSON document to
//! stdout (or `--out`) and a one-line summary to stderr. Exit status: 0 on
//! success, 1 when a check fails, 2 on usage or input errors.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::{BufRead, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::bridge::ExternalInvariant;
use crate::diagram::{CrossingId, Diagram};
use crate::error::{Error, Result};
use crate::integrability::{self, Condition, Corpus, CorpusKind, NamedDiagram};
use crate::integrator::{self, HomotopyPath};
use crate::invariants::{self, kauffman_bracket, link_invariant, singular_invariant, LinkInvariant, SingularInvariant};
use crate::moves::{resolve, ResolutionSign};
use crate::ring::RingElem;
use crate::tables;

pub const BUDGET_ENV: &str = "SKEIN_BUDGET_DEFAULT";
const DEFAULT_BUDGET: &str = "20000";

#[derive(Parser, Debug)]
#[command(name = "skein", version, about = "Singular-link calculus: resolve, derive, check and integrate invariants")]
pub struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Args, Debug)]
struct Output {
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
struct Budget {
    /// Node budget for simplification and skein searches.
    #[arg(long, env = BUDGET_ENV, default_value = DEFAULT_BUDGET)]
    budget: usize,
}

#[derive(Args, Debug, Clone)]
struct SingularSource {
    /// Built-in singular invariant: jones, v2, const (derived), one, jonesplus.
    #[arg(long, conflicts_with = "external_cmd", required_unless_present = "external_cmd")]
    invariant: Option<String>,
    /// Shell command speaking the line protocol (diagram JSON in, RingElem JSON out).
    #[arg(long)]
    external_cmd: Option<String>,
    /// Per-answer timeout for --external-cmd, in milliseconds.
    #[arg(long, default_value_t = 30_000)]
    timeout_ms: u64,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum SignArg {
    Plus,
    Minus,
    Zero,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum ConditionArg {
    Kink,
    Commutation,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum KindArg {
    Kink,
    Order2,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum LoopArg {
    Kink,
    Commutator,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Check a diagram file and report each structural check.
    Validate {
        #[arg(long = "in", value_name = "FILE")]
        input: Option<PathBuf>,
        #[arg(value_name = "FILE", conflicts_with = "input")]
        file: Option<PathBuf>,
        #[command(flatten)]
        output: Output,
    },
    /// Replace a double point by a positive/negative crossing or a smoothing.
    Resolve {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        #[arg(long)]
        crossing: CrossingId,
        #[arg(long, value_enum)]
        sign: SignArg,
        #[command(flatten)]
        output: Output,
    },
    /// Evaluate a link invariant: jones, bracket, v2, v2-skein, const.
    Invariant {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        #[arg(long)]
        invariant: String,
        #[command(flatten)]
        budget: Budget,
        #[command(flatten)]
        output: Output,
    },
    /// Evaluate a singular invariant on an order-1 diagram.
    Derive {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        #[command(flatten)]
        source: SingularSource,
        #[command(flatten)]
        output: Output,
    },
    /// Check a local integrability condition over a corpus.
    CheckLocal {
        #[arg(long, value_enum)]
        condition: ConditionArg,
        #[arg(long, value_name = "FILE")]
        corpus: PathBuf,
        #[command(flatten)]
        source: SingularSource,
        #[command(flatten)]
        output: Output,
    },
    /// Integrate a singular invariant from the unlink along the descending path.
    Integrate {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        #[command(flatten)]
        source: SingularSource,
        /// JSON object mapping component counts to unlink values.
        #[arg(long, value_name = "FILE")]
        base: Option<PathBuf>,
        #[command(flatten)]
        budget: Budget,
        #[command(flatten)]
        output: Output,
    },
    /// Compute the signed sum of a singular invariant around a closed path.
    AuditLoop {
        #[arg(long = "loop", alias = "in", value_name = "FILE")]
        path: PathBuf,
        #[command(flatten)]
        source: SingularSource,
        #[command(flatten)]
        output: Output,
    },
    /// Generate a kink loop or a commutator loop at a diagram.
    GenLoop {
        #[arg(value_enum)]
        kind: LoopArg,
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        /// Required for kink loops.
        #[arg(long)]
        seed: Option<u64>,
        /// Two crossing ids for commutator loops.
        #[arg(long, value_delimiter = ',')]
        crossings: Vec<CrossingId>,
        #[command(flatten)]
        output: Output,
    },
    /// Integrate along several randomized paths and compare the values.
    PathIndependence {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        #[command(flatten)]
        source: SingularSource,
        #[arg(long, value_name = "FILE")]
        base: Option<PathBuf>,
        #[arg(long = "paths", value_name = "K", default_value_t = 5)]
        paths: usize,
        #[arg(long)]
        seed: u64,
        #[command(flatten)]
        budget: Budget,
        #[command(flatten)]
        output: Output,
    },
    /// Generate a kink or order-2 corpus by random walks from seed diagrams.
    GenCorpus {
        #[arg(long, value_enum)]
        kind: KindArg,
        /// Seed diagrams: table names (trefoil, hopf, 5_2, ...) or diagram files.
        #[arg(long, value_delimiter = ',', required = true)]
        seeds: Vec<String>,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 5)]
        walk: usize,
        #[arg(long, default_value_t = 10)]
        cap: usize,
        #[arg(long)]
        seed: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Answer the line protocol with a built-in singular invariant.
    #[command(hide = true)]
    Serve {
        #[arg(long)]
        invariant: String,
        /// Exit after answering this many lines.
        #[arg(long)]
        limit: Option<usize>,
    },
}

struct Outcome {
    report: Value,
    passed: bool,
    summary: String,
}

impl Outcome {
    fn ok(report: impl Serialize, summary: String) -> Result<Self> {
        Ok(Outcome {
            report: to_value(report),
            passed: true,
            summary,
        })
    }
}

fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn read_diagram(path: &Path) -> Result<Diagram> {
    Diagram::parse(&read(path)?)
}

fn singular_from(source: &SingularSource) -> Result<(Arc<dyn SingularInvariant>, bool)> {
    if let Some(cmd) = &source.external_cmd {
        let f = ExternalInvariant::spawn(cmd, Duration::from_millis(source.timeout_ms))?;
        return Ok((Arc::new(f), true));
    }
    let name = source.invariant.as_deref().unwrap_or_default();
    singular_invariant(name).map(|f| (f, false)).ok_or_else(|| {
        Error::Usage(format!(
            "unknown singular invariant {name:?}; expected one of {}",
            invariants::SINGULAR_NAMES.join(", ")
        ))
    })
}

/// Runs `job` on one worker so a child process is fed in item order.
fn sequential<T: Send>(external: bool, job: impl FnOnce() -> T + Send) -> T {
    if !external {
        return job();
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .expect("single-thread pool")
        .install(job)
}

/// Base values: from `--base`, or the unlink values of the link invariant a
/// built-in singular invariant is derived from.
fn base_values(source: &SingularSource, base: Option<&Path>, m: u32) -> Result<BTreeMap<u32, RingElem>> {
    if let Some(p) = base {
        return serde_json::from_str(&read(p)?).map_err(|e| Error::Json(e.to_string()));
    }
    let derived_from = source
        .invariant
        .as_deref()
        .filter(|n| matches!(*n, "jones" | "v2" | "const"))
        .and_then(link_invariant)
        .ok_or(Error::MissingBase(m))?;
    let v = derived_from.eval(&Diagram::unlink(m))?;
    Ok(BTreeMap::from([(m, v)]))
}

fn run_cmd(cmd: Cmd) -> Result<Outcome> {
    match cmd {
        Cmd::Validate { input, file, .. } => {
            let path = input.or(file).ok_or_else(|| Error::Usage("validate needs a diagram file".into()))?;
            let d = read_diagram(&path)?;
            let report = d.validate();
            let passed = report.ok;
            let genus = passed.then(|| d.planarity_genus());
            let summary = if passed {
                format!("ok: {} crossing(s), {} component(s), order {}", d.crossing_count(), d.components(), d.order())
            } else {
                format!("invalid: {}", report.failed().join(", "))
            };
            Ok(Outcome {
                report: json!({
                    "ok": passed,
                    "checks": report.checks,
                    "crossings": d.crossing_count(),
                    "components": passed.then(|| d.components()),
                    "order": d.order(),
                    "genus": genus,
                }),
                passed,
                summary,
            })
        }
        Cmd::Resolve {
            input, crossing, sign, ..
        } => {
            let d = read_diagram(&input)?;
            let s = match sign {
                SignArg::Plus => ResolutionSign::Plus,
                SignArg::Minus => ResolutionSign::Minus,
                SignArg::Zero => ResolutionSign::Zero,
            };
            let r = resolve(&d, crossing, s)?;
            let summary = format!("resolved {crossing}: order {}", r.order());
            Outcome::ok(r, summary)
        }
        Cmd::Invariant {
            input,
            invariant,
            budget,
            ..
        } => {
            let d = read_diagram(&input)?;
            let value = match invariant.as_str() {
                "bracket" => kauffman_bracket(&d)?,
                "v2-skein" => invariants::V2Skein { budget: budget.budget }.eval(&d)?,
                name => link_invariant(name)
                    .ok_or_else(|| {
                        Error::Usage(format!(
                            "unknown link invariant {name:?}; expected jones, bracket, v2, v2-skein or const"
                        ))
                    })?
                    .eval(&d)?,
            };
            let summary = format!("{invariant} = {value}");
            Outcome::ok(json!({"invariant": invariant, "value": value}), summary)
        }
        Cmd::Derive { input, source, .. } => {
            let d = read_diagram(&input)?;
            let (f, _) = singular_from(&source)?;
            let value = f.eval(&d)?;
            let summary = format!("{} = {value}", f.name());
            Outcome::ok(json!({"value": value}), summary)
        }
        Cmd::CheckLocal {
            condition,
            corpus,
            source,
            ..
        } => {
            let corpus: Corpus = serde_json::from_str(&read(&corpus)?).map_err(|e| Error::Json(e.to_string()))?;
            let (f, external) = singular_from(&source)?;
            let condition = match condition {
                ConditionArg::Kink => Condition::Kink,
                ConditionArg::Commutation => Condition::Commutation,
            };
            let report = sequential(external, || integrability::check(f.as_ref(), &corpus, condition));
            let summary = format!(
                "{:?}: {} item(s), {} failure(s)",
                report.condition,
                report.items_tested,
                report.failures.len()
            );
            Ok(Outcome {
                passed: report.passed,
                report: to_value(report),
                summary,
            })
        }
        Cmd::Integrate {
            input,
            source,
            base,
            budget,
            ..
        } => {
            let d = read_diagram(&input)?;
            let (f, external) = singular_from(&source)?;
            let base = base_values(&source, base.as_deref(), d.components())?;
            let report = sequential(external, || integrator::integrate(f.as_ref(), &d, &base, budget.budget))?;
            let summary = format!("integrated over {} change(s): {}", report.changes, report.value);
            Outcome::ok(report, summary)
        }
        Cmd::AuditLoop { path, source, .. } => {
            let path = HomotopyPath::parse(&read(&path)?)?;
            let (f, external) = singular_from(&source)?;
            let report = sequential(external, || integrator::audit_loop(f.as_ref(), &path))?;
            let summary = format!("defect {} over {} change(s)", report.defect, report.terms.len());
            Ok(Outcome {
                passed: report.passed,
                report: to_value(report),
                summary,
            })
        }
        Cmd::GenLoop {
            kind,
            input,
            seed,
            crossings,
            ..
        } => {
            let d = read_diagram(&input)?;
            let path = match kind {
                LoopArg::Kink => {
                    let seed = seed.ok_or_else(|| Error::Usage("kink loops need --seed".into()))?;
                    integrator::gen_loop_kink(&d, &mut ChaCha8Rng::seed_from_u64(seed))?
                }
                LoopArg::Commutator => match crossings.as_slice() {
                    [c1, c2] => integrator::gen_loop_commutator(&d, *c1, *c2)?,
                    _ => return Err(Error::Usage("commutator loops need --crossings C1,C2".into())),
                },
            };
            let summary = format!("loop with {} event(s)", path.events.len());
            Outcome::ok(path, summary)
        }
        Cmd::PathIndependence {
            input,
            source,
            base,
            paths,
            seed,
            budget,
            ..
        } => {
            let d = read_diagram(&input)?;
            let (f, external) = singular_from(&source)?;
            let base = base_values(&source, base.as_deref(), d.components())?;
            let report = sequential(external, || {
                integrator::path_independence_report(f.as_ref(), &d, &base, paths, seed, budget.budget)
            })?;
            let summary = if report.all_equal {
                format!("{} path(s) agree", report.paths.len())
            } else {
                "paths disagree".to_string()
            };
            Ok(Outcome {
                passed: report.all_equal,
                report: to_value(report),
                summary,
            })
        }
        Cmd::GenCorpus {
            kind,
            seeds,
            count,
            walk,
            cap,
            seed,
            ..
        } => {
            let named = seeds
                .iter()
                .map(|s| {
                    let diagram = match tables::by_name(s) {
                        Some(d) => d,
                        None if Path::new(s).exists() => read_diagram(Path::new(s))?,
                        None => return Err(Error::Usage(format!("unknown seed {s:?}: not a table name or file"))),
                    };
                    Ok(NamedDiagram {
                        name: s.clone(),
                        diagram,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let corpus = match kind {
                KindArg::Kink => integrability::gen_kink_corpus(named, count, walk, cap, seed)?,
                KindArg::Order2 => integrability::gen_order2_corpus(named, count, walk, cap, seed)?,
            };
            let summary = format!(
                "{} {} item(s)",
                corpus.items.len(),
                match corpus.params.kind {
                    CorpusKind::Kink => "kink",
                    CorpusKind::Order2 => "order-2",
                }
            );
            Outcome::ok(corpus, summary)
        }
        Cmd::Serve { .. } => unreachable!("handled before dispatch"),
    }
}

/// Line protocol server: each input line is a diagram, each output line the
/// invariant's value or `{"error": ...}`.
fn serve(name: &str, limit: usize) -> i32 {
    let Some(f) = singular_invariant(name) else {
        eprintln!("unknown singular invariant {name:?}");
        return 2;
    };
    let stdin = std::io::stdin();
    let mut stdout = std::io::stdout().lock();
    for line in stdin.lock().lines().take(limit) {
        let Ok(line) = line else { return 2 };
        let reply = match Diagram::parse(&line).and_then(|d| f.eval(&d)) {
            Ok(v) => serde_json::to_string(&v).expect("values serialize"),
            Err(e) => json!({"error": e.to_string()}).to_string(),
        };
        if writeln!(stdout, "{reply}").and_then(|_| stdout.flush()).is_err() {
            return 2;
        }
    }
    0
}

fn emit(out: Option<&Path>, doc: &Value) -> Result<()> {
    let text = format!("{doc}\n");
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| Error::Io(format!("{}: {e}", p.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| Error::Io(e.to_string()))
        }
    }
}

fn error_doc(e: &Error, subcommand: &str) -> Value {
    let mut context = json!({"subcommand": subcommand});
    if let Error::Path { index, .. } = e {
        context["event"] = json!(index);
    }
    json!({"error": {"code": e.code(), "message": e.to_string(), "context": context}})
}

fn out_of(cmd: &Cmd) -> Option<PathBuf> {
    match cmd {
        Cmd::Validate { output, .. }
        | Cmd::Resolve { output, .. }
        | Cmd::Invariant { output, .. }
        | Cmd::Derive { output, .. }
        | Cmd::CheckLocal { output, .. }
        | Cmd::Integrate { output, .. }
        | Cmd::AuditLoop { output, .. }
        | Cmd::GenLoop { output, .. }
        | Cmd::PathIndependence { output, .. }
        | Cmd::GenCorpus { output, .. } => output.out.clone(),
        Cmd::Serve { .. } => None,
    }
}

fn subcommand_name(cmd: &Cmd) -> &'static str {
    match cmd {
        Cmd::Validate { .. } => "validate",
        Cmd::Resolve { .. } => "resolve",
        Cmd::Invariant { .. } => "invariant",
        Cmd::Derive { .. } => "derive",
        Cmd::CheckLocal { .. } => "check-local",
        Cmd::Integrate { .. } => "integrate",
        Cmd::AuditLoop { .. } => "audit-loop",
        Cmd::GenLoop { .. } => "gen-loop",
        Cmd::PathIndependence { .. } => "path-independence",
        Cmd::GenCorpus { .. } => "gen-corpus",
        Cmd::Serve { .. } => "serve",
    }
}

/// Parses `args` (including the program name) and runs; returns the exit
/// status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return 0;
        }
        Err(e) => {
            let doc = json!({"error": {"code": "usage", "message": e.to_string().trim_end(), "context": {}}});
            println!("{doc}");
            return 2;
        }
    };
    if let Cmd::Serve { invariant, limit } = &cli.command {
        return serve(invariant, limit.unwrap_or(usize::MAX));
    }
    let name = subcommand_name(&cli.command);
    let out = out_of(&cli.command);
    match run_cmd(cli.command) {
        Ok(o) => {
            if let Err(e) = emit(out.as_deref(), &o.report) {
                println!("{}", error_doc(&e, name));
                return 2;
            }
            eprintln!("{name}: {}", o.summary);
            if o.passed {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let doc = error_doc(&e, name);
            println!("{doc}");
            eprintln!("{name}: {e}");
            2
        }
    }
}
