use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use pgdeg::action::{self, CharacteristicAction};
use pgdeg::corpus::{self, Presentation};
use pgdeg::degree::{self, DegreeOptions, SphereOptions};
use pgdeg::io::{self, Loaded};
use pgdeg::registry;
use pgdeg::roots::{self, RootKind, RootSystem, Table, TableOptions};
use pgdeg::segal::SegalVariant;
use pgdeg::symcore;
use pgdeg::{Error, Result};

/// Worker threads for the parallel searches; defaults to the available parallelism.
const THREADS_VAR: &str = "PGDEG_THREADS";

#[derive(Parser)]
#[command(name = "pgdeg", version, about = "Degrees of finite partial groupoids and punctured Weyl groups")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Check a document against the axioms of its kind.
    Validate { file: PathBuf },
    /// Degree of a document or corpus example (`na`, `corpus:bcom:S3`, …).
    Degree {
        input: String,
        #[arg(long, default_value = "both")]
        method: String,
        #[arg(long = "nmax")]
        n_max: Option<usize>,
        #[arg(long = "kmax")]
        k_max: Option<usize>,
        #[arg(long)]
        checker: Option<String>,
        #[arg(long, default_value = "auto")]
        helly_strategy: String,
        #[arg(long, default_value_t = 1_000_000)]
        budget: usize,
    },
    /// Helly number of a closure space, or of the closure space of an action.
    Helly {
        file: PathBuf,
        #[arg(long, default_value = "auto")]
        strategy: String,
    },
    /// Decide one higher Segal condition up to a dimension.
    Segal {
        input: String,
        #[arg(long, default_value = "lower-odd")]
        variant: String,
        #[arg(long)]
        k: usize,
        #[arg(long = "nmax")]
        n_max: usize,
        #[arg(long, default_value = "generic")]
        checker: String,
    },
    /// Inspect a characteristic action or partial group action.
    Action {
        file: PathBuf,
        #[command(flatten)]
        mode: ActionMode,
        /// Random words per length when not exhaustive.
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long)]
        exhaustive: bool,
    },
    /// Root system tables and worked examples; `all` lists every tabulated system.
    Roots {
        system: String,
        #[arg(long)]
        table: Option<String>,
        #[arg(long)]
        verify: Option<String>,
        #[arg(long, default_value_t = 20_000_000)]
        budget: usize,
    },
    /// Write the document of a corpus example (`-` for stdout).
    Corpus {
        spec: String,
        #[arg(long)]
        emit: PathBuf,
        #[arg(long, default_value_t = 1_000_000)]
        budget: usize,
    },
    /// Symmetric sphere of dimension `n`: explicit witness or full degree check.
    Sphere {
        n: usize,
        #[command(flatten)]
        mode: SphereMode,
        #[arg(long = "nmax")]
        n_max: Option<usize>,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct ActionMode {
    #[arg(long)]
    validate: bool,
    #[arg(long)]
    domains: bool,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct SphereMode {
    #[arg(long)]
    witness: bool,
    #[arg(long)]
    check: bool,
}

/// A report plus whether it records a mathematical failure.
struct Outcome {
    report: Value,
    text: Option<String>,
    code: u8,
}

impl Outcome {
    fn ok(report: Value) -> Self {
        Self { report, text: None, code: 0 }
    }

    fn verdict(report: Value, good: bool) -> Self {
        Self { report, text: None, code: if good { 0 } else { 1 } }
    }
}

fn to_value<T: serde::Serialize>(x: &T) -> Result<Value> {
    Ok(serde_json::to_value(x)?)
}

/// A path that exists is read as a document; anything else is a corpus spec.
fn presentation(input: &str) -> Result<Presentation> {
    let path = Path::new(input);
    if !input.starts_with("corpus:") && path.exists() {
        io::load(path)?.presentation()
    } else {
        corpus::make(input)
    }
}

fn action_of(loaded: Loaded) -> Result<CharacteristicAction> {
    match loaded {
        Loaded::Groupoid { action: Some(a), .. } => Ok((*a).clone()),
        Loaded::PartialAction(pa) => action::transporter(&pa),
        _ => Err(Error::Format("the document carries no action".into())),
    }
}

fn validate(file: &Path) -> Result<Outcome> {
    let loaded = io::load(file)?;
    let (kind, violations) = match &loaded {
        Loaded::Groupoid { pg, action } => {
            let mut v = symcore::validate(pg);
            if let Some(a) = action {
                v.extend(action::validate_action(a, 200, false));
            }
            ("partial-groupoid", v)
        }
        Loaded::PartialAction(pa) => ("partial-group-action", pa.validate()),
        Loaded::Closure { .. } => ("closure-space", Vec::new()),
    };
    let valid = violations.is_empty();
    Ok(Outcome::verdict(json!({ "kind": kind, "valid": valid, "violations": to_value(&violations)? }), valid))
}

fn helly(file: &Path, strategy: &str) -> Result<Outcome> {
    let (space, labels) = match io::load(file)? {
        Loaded::Closure { space, ground } => (space, ground),
        other => {
            let a = action_of(other)?;
            (a.closure_space(), a.points.clone())
        }
    };
    let strategies = registry::helly_strategies();
    let h = strategies.get(strategy)?.helly(&space)?;
    let independent: Vec<&str> = h.independent.iter().map(|&x| labels[x].as_str()).collect();
    Ok(Outcome::ok(json!({
        "helly_number": h.helly_number,
        "independent": independent,
        "strategy": h.strategy,
        "points": space.ground_size(),
    })))
}

fn action_cmd(file: &Path, mode: &ActionMode, samples: usize, exhaustive: bool) -> Result<Outcome> {
    let loaded = io::load(file)?;
    let partial = match &loaded {
        Loaded::PartialAction(pa) => pa.validate(),
        _ => Vec::new(),
    };
    let a = action_of(loaded)?;
    if mode.validate {
        let mut v = partial;
        v.extend(action::validate_action(&a, samples, exhaustive));
        let valid = v.is_empty();
        return Ok(Outcome::verdict(json!({ "valid": valid, "violations": to_value(&v)? }), valid));
    }
    let pg = &a.base;
    let domains: serde_json::Map<String, Value> = (0..pg.edge_count())
        .map(|e| {
            let d: Vec<&str> = a.domain_of_edge(e).into_iter().map(|x| a.points[x].as_str()).collect();
            (pg.edge_name(e).to_string(), json!(d))
        })
        .collect();
    Ok(Outcome::ok(json!({ "carrier": a.points, "domains": domains })))
}

fn table_text(rows: &[roots::TableRow], table: Table) -> String {
    let mut out = format!("{:<8} {:>6} {:>7} {:>7}  {}\n", "system", "roots", "value", "formula", "provenance");
    for r in rows {
        let formula = r.formula.map_or("-".to_string(), |f| f.to_string());
        let value = if r.exact { r.value.to_string() } else { format!("{}..{}", r.lower, r.upper) };
        out.push_str(&format!("{:<8} {:>6} {:>7} {:>7}  {}\n", r.system, r.positive_roots, value, formula, r.provenance));
    }
    if rows.len() > 1 {
        out.push_str(&format!("({table:?})\n"));
    }
    out
}

fn roots_cmd(system: &str, table: Option<&str>, verify: Option<&str>, budget: usize) -> Result<Outcome> {
    let opts = TableOptions { budget, ..Default::default() };
    if let Some(check) = verify {
        let (kind, rank) = RootKind::parse(system)?;
        let rs = RootSystem::build(kind, rank)?;
        return match check {
            "c3" => {
                let r = roots::verify_c3_word(&rs)?;
                let good = r.word_domain.is_empty() && r.faces.iter().all(|f| !f.1.is_empty());
                Ok(Outcome::verdict(to_value(&r)?, good))
            }
            "a2" => {
                let r = roots::verify_a2(&rs)?;
                let good = r.punctured_size == 5 && !r.pair_is_simplex && r.first_domain.len() == 1;
                Ok(Outcome::verdict(to_value(&r)?, good))
            }
            "gamma" => {
                let variants: &[Option<&str>] = if (kind, rank) == (RootKind::E, 7) { &[Some("c7"), Some("c1")] } else { &[None] };
                let sets = variants.iter().filter_map(|v| roots::named_free_set(&rs, *v)).collect::<Vec<_>>();
                if sets.is_empty() {
                    return Err(Error::Unsupported(format!("no named free set for {}", rs.name())));
                }
                let good = sets[0].free;
                Ok(Outcome::verdict(to_value(&sets)?, good))
            }
            other => Err(Error::Format(format!("unknown check {other:?}; known: c3, gamma, a2"))),
        };
    }
    if let Some(t) = table {
        let t = Table::parse(t)?;
        let rows = if system == "all" {
            roots::standard_systems()
                .into_iter()
                .map(|(k, n)| roots::table_row(t, k, n, &opts))
                .collect::<Result<Vec<_>>>()?
        } else {
            roots::table(t, system, &opts)?.rows
        };
        let exact = rows.iter().all(|r| r.exact);
        let value: usize = rows.iter().map(|r| r.value).sum();
        let report = if system == "all" {
            json!({ "table": t, "rows": to_value(&rows)? })
        } else {
            json!({ "table": t, "system": system, "value": value, "exact": exact, "rows": to_value(&rows)? })
        };
        // inconclusive rows are still printed, with their bounds
        return Ok(Outcome { report, text: Some(table_text(&rows, t)), code: if exact { 0 } else { 3 } });
    }
    let mut reports = Vec::new();
    for (kind, rank) in RootKind::parse_product(system)? {
        let rs = RootSystem::build(kind, rank)?;
        let z = roots::table_row(Table::Abelian, kind, rank, &opts)?;
        let r = roots::table_row(Table::ReallyAbelian, kind, rank, &opts)?;
        reports.push(json!({
            "system": rs.name(),
            "positive_root_count": rs.positive_count(),
            "h_Z": z.value,
            "h_R": r.value,
            "degree": r.value,
            "exact": z.exact && r.exact,
            "abelian_witness": z.witness,
            "free_witness": r.witness,
        }));
    }
    Ok(Outcome::ok(if reports.len() == 1 { reports.remove(0) } else { json!(reports) }))
}

fn corpus_cmd(spec: &str, emit: &Path, budget: usize) -> Result<Outcome> {
    let p = corpus::make(spec)?;
    let doc = io::presentation_document(&p, budget)?;
    let text = io::to_json(&doc)?;
    if emit == Path::new("-") {
        let _ = writeln!(std::io::stdout().lock(), "{text}");
        return Ok(Outcome { report: Value::Null, text: None, code: 0 });
    }
    std::fs::write(emit, format!("{text}\n"))?;
    Ok(Outcome::ok(json!({ "spec": spec, "emitted": emit.display().to_string(), "bytes": text.len() + 1 })))
}

fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Validate { file } => validate(file),
        Command::Degree { input, method, n_max, k_max, checker, helly_strategy, budget } => {
            let opts = DegreeOptions {
                method: method.clone(),
                checker: checker.clone(),
                helly_strategy: helly_strategy.clone(),
                n_max: *n_max,
                k_max: *k_max,
                budget: *budget,
            };
            let report = degree::degree(&presentation(input)?, &opts)?;
            Ok(Outcome::ok(to_value(&report)?))
        }
        Command::Helly { file, strategy } => helly(file, strategy),
        Command::Segal { input, variant, k, n_max, checker } => {
            let v = SegalVariant::parse(variant, *k)?;
            let checkers = registry::segal_checkers();
            let outcome = checkers.get(checker)?.check(&presentation(input)?, v, *n_max)?;
            let mut report = to_value(&outcome)?;
            report["condition"] = json!(v.to_string());
            Ok(Outcome::ok(report))
        }
        Command::Action { file, mode, samples, exhaustive } => action_cmd(file, mode, *samples, *exhaustive),
        Command::Roots { system, table, verify, budget } => roots_cmd(system, table.as_deref(), verify.as_deref(), *budget),
        Command::Corpus { spec, emit, budget } => corpus_cmd(spec, emit, *budget),
        Command::Sphere { n, mode, n_max } => {
            if mode.witness {
                let w = degree::symmetric_sphere_witness(*n)?;
                let good = w.replayed;
                Ok(Outcome::verdict(to_value(&w)?, good || *n == 1))
            } else {
                let r = degree::sphere_degree_check(*n, &SphereOptions { n_max: *n_max, ..Default::default() })?;
                Ok(Outcome::verdict(to_value(&r)?, r.holds))
            }
        }
    }
}

fn configure_threads() -> std::result::Result<(), String> {
    let Ok(v) = std::env::var(THREADS_VAR) else { return Ok(()) };
    let n: usize = v.parse().map_err(|_| format!("{THREADS_VAR} must be a positive integer, got {v:?}"))?;
    if n == 0 {
        return Err(format!("{THREADS_VAR} must be positive"));
    }
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    match run(&cli) {
        Ok(out) => {
            let text = match (cli.format, out.text) {
                (Format::Text, Some(t)) => t,
                _ if out.report.is_null() => String::new(),
                _ => format!("{}\n", serde_json::to_string_pretty(&out.report).expect("serializable report")),
            };
            // a closed pipe downstream is not an error of ours
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
