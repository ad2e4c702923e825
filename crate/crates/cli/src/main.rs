mod expr;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use spexlab::canon::canonical_form;
use spexlab::enumerate::CACHE_ENV;
use spexlab::graph::GraphError;
use spexlab::harness::{self, PropertyReport};
use spexlab::spectral::{self, SpectralError};
use spexlab::subgraph::FamilyError;
use spexlab::theorems::{self, Check};
use spexlab::{ex_search, graph6, spex_search, Catalog, ForbiddenFamily, SearchError, SearchReport};

const EXIT_FAILED: u8 = 1;
const EXIT_BUDGET: u8 = 2;
const EXIT_USAGE: u8 = 3;

#[derive(Parser)]
#[command(name = "spexlab", version, about = "Spectral Turán problems on small graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Enumeration cache directory (default: $SPEXLAB_CACHE_DIR, then a temp dir).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,

    /// Write the JSON report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Allow exhaustive enumeration at order 10.
    #[arg(long = "allow-n10", global = true)]
    allow_n10: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Build a graph from an expression and print its canonical graph6.
    Construct { expr: String },
    /// Run one of the verification harnesses.
    Verify(VerifyArgs),
    /// Largest edge count of an n-vertex graph avoiding every forbidden graph.
    Ex(SearchArgs),
    /// Largest spectral radius of an n-vertex graph avoiding every forbidden graph.
    Spex(SearchArgs),
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Target {
    Thm16,
    Thm17,
    Lemma22,
    Lemma23,
    Lemma26,
    Lemma27,
    Observation,
}

#[derive(clap::Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    target: Target,
    #[arg(long)]
    s: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    /// Single value or inclusive range `a..b`.
    #[arg(long)]
    k: Option<String>,
    /// Single value or inclusive range `a..b`.
    #[arg(long)]
    n: Option<String>,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    #[arg(long, default_value_t = 1000)]
    trials: usize,
}

#[derive(clap::Args)]
struct SearchArgs {
    #[arg(long)]
    n: usize,
    /// graph6 of a forbidden graph; repeat for a family.
    #[arg(long, required = true, num_args = 1..)]
    forbid: Vec<String>,
    #[arg(long, default_value_t = spectral::DEFAULT_TOL)]
    tol: f64,
}

#[derive(Serialize)]
struct Report {
    command: String,
    params: Value,
    paper_anchor: String,
    checks: Vec<Check>,
    witnesses: Vec<String>,
    values: Value,
    runtime_ms: u128,
    cache_hits: usize,
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Failure {
        Failure { code: EXIT_USAGE, message: message.into() }
    }
}

impl From<SearchError> for Failure {
    fn from(e: SearchError) -> Failure {
        let code = match &e {
            SearchError::Budget { .. } => EXIT_BUDGET,
            SearchError::InvalidParameter(_)
            | SearchError::Graph(GraphError::InvalidParameter(_))
            | SearchError::Family(FamilyError::Empty | FamilyError::NullMember(_)) => EXIT_USAGE,
            SearchError::Graph(GraphError::OrderTooLarge(_)) => EXIT_BUDGET,
            _ => EXIT_FAILED,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<SpectralError> for Failure {
    fn from(e: SpectralError) -> Failure {
        SearchError::from(e).into()
    }
}

fn parse_range(text: &str, name: &str) -> Result<(usize, usize), Failure> {
    let bad = || Failure::usage(format!("--{name} expects an integer or a range a..b, got {text:?}"));
    let (lo, hi) = match text.split_once("..") {
        Some((a, b)) => (a, b.strip_prefix('=').unwrap_or(b)),
        None => (text, text),
    };
    let lo: usize = lo.trim().parse().map_err(|_| bad())?;
    let hi: usize = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

fn single(text: &Option<String>, name: &str) -> Result<Option<usize>, Failure> {
    match text {
        None => Ok(None),
        Some(t) => match parse_range(t, name)? {
            (a, b) if a == b => Ok(Some(a)),
            _ => Err(Failure::usage(format!("--{name} takes a single value here"))),
        },
    }
}

fn property_check(rep: &PropertyReport) -> Check {
    let margin = rep.min_margin.map_or("none".to_string(), |m| format!("{m:.3e}"));
    let mut details = format!("{}/{} passed, {} generated, min margin {margin}", rep.passed, rep.trials, rep.generated);
    if let Some(v) = rep.violations.first() {
        details.push_str(&format!(", first violation: {v}"));
    }
    Check::new(rep.name.clone(), rep.holds(), details)
}

/// Command output before timing and cache statistics are attached.
struct Outcome {
    params: Value,
    paper_anchor: &'static str,
    checks: Vec<Check>,
    witnesses: Vec<String>,
    values: Value,
}

fn catalog(cli: &Cli) -> Catalog {
    let dir = cli
        .cache_dir
        .clone()
        .or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from))
        .unwrap_or_else(|| std::env::temp_dir().join("spexlab-cache"));
    let cat = Catalog::new().with_cache_dir(dir);
    if cli.allow_n10 {
        cat.allow_order_ten()
    } else {
        cat
    }
}

fn run_verify(cat: &Catalog, args: &VerifyArgs) -> Result<Outcome, Failure> {
    let seeded = |rep: PropertyReport, anchor| Outcome {
        params: json!({ "seed": args.seed, "trials": args.trials }),
        paper_anchor: anchor,
        checks: vec![property_check(&rep)],
        witnesses: vec![],
        values: serde_json::to_value(&rep).expect("serializable"),
    };
    Ok(match args.target {
        Target::Thm16 => {
            let (s, m, r) = (args.s.unwrap_or(1), args.m.unwrap_or(2), args.r.unwrap_or(2));
            let (lo, hi) = match &args.n {
                Some(t) => parse_range(t, "n")?,
                None => ((s + r - 1).max(2), 8),
            };
            let rep = theorems::verify_theorem16(cat, s, m, r, lo..=hi)?;
            let onset = rep.onset.unwrap_or(usize::MAX);
            let tail_connected = rep.rows.iter().filter(|row| row.n >= onset).all(|row| row.connected);
            let table: Vec<Value> = rep
                .rows
                .iter()
                .map(|row| {
                    json!({
                        "n": row.n,
                        "predicted": row.predicted,
                        "predicted_rho": row.predicted_rho,
                        "spex_rho": row.spex.extremal_value.as_f64(),
                        "spex_agrees": row.agrees,
                        "ex": row.ex.extremal_value.as_f64(),
                        "ex_agrees": row.ex_agrees,
                        "witnesses": row.spex.witnesses.len(),
                        "connected": row.connected,
                        "min_degree_ratio": row.min_degree_ratio,
                    })
                })
                .collect();
            Outcome {
                params: json!({ "s": s, "m": m, "r": r, "n": [lo, hi] }),
                paper_anchor: "spectral extremal graphs for matching-type families",
                checks: vec![
                    Check::new(
                        "spex agrees with the prediction from some order through the top of the range",
                        rep.onset.is_some(),
                        format!("onset {:?}, q = {}", rep.onset, rep.q),
                    ),
                    Check::new(
                        "spex witnesses are connected from the onset",
                        rep.onset.is_some() && tail_connected,
                        format!("all orders connected: {}", rep.all_connected),
                    ),
                    Check::new(
                        "predicted radius strictly increases with n",
                        rep.predicted_rho_increasing,
                        format!("{} orders", rep.rows.len()),
                    ),
                ],
                witnesses: rep
                    .rows
                    .iter()
                    .flat_map(|row| row.spex.witnesses.iter().map(|w| w.graph6.clone()))
                    .collect(),
                values: json!({ "q": rep.q, "onset": rep.onset, "ex_onset": rep.ex_onset, "rows": table }),
            }
        }
        Target::Thm17 => {
            let m = args.m.ok_or_else(|| Failure::usage("thm17 needs --m"))?;
            let k = single(&args.k, "k")?.ok_or_else(|| Failure::usage("thm17 needs --k"))?;
            let rep = theorems::verify_theorem17_combinatorics(m, k)?;
            Outcome {
                params: json!({ "m": m, "k": k }),
                paper_anchor: "spectral extremal graphs for powers of cycles",
                checks: rep.checks.clone(),
                witnesses: vec![graph6::encode(&canonical_form(&theorems::cycle_power(m, k)?))],
                values: serde_json::to_value(&rep).expect("serializable"),
            }
        }
        Target::Lemma22 => {
            seeded(harness::lemma22_rotation(args.seed, args.trials)?, "edge rotation raises the spectral radius")
        }
        Target::Lemma23 => {
            seeded(harness::lemma23_swap(args.seed, args.trials)?, "neighbourhood swap raises the spectral radius")
        }
        Target::Lemma26 => {
            seeded(harness::lemma26_sets(args.seed, args.trials), "lower bound on the common intersection of sets")
        }
        Target::Observation => {
            seeded(harness::observation_extension(args.seed, args.trials), "extension by a symmetric copy")
        }
        Target::Lemma27 => {
            let n_max = match &args.n {
                Some(t) => parse_range(t, "n")?.1,
                None => 8,
            };
            let (klo, khi) = match &args.k {
                Some(t) => parse_range(t, "k")?,
                None => (3, n_max.min(6)),
            };
            let ks: Vec<usize> = (klo..=khi).collect();
            let rep = theorems::lemma27_check(cat, n_max, &ks)?;
            let tight = rep.rows.iter().filter(|row| 2 * row.ex == row.bound_doubled).count();
            Outcome {
                params: json!({ "n_max": n_max, "k": [klo, khi] }),
                paper_anchor: "edge bound for path-free graphs",
                checks: vec![Check::new(
                    "2 ex(n, P_k) <= (k - 2) n",
                    rep.holds,
                    format!("{} (n, k) pairs, {tight} tight", rep.rows.len()),
                )],
                witnesses: vec![],
                values: serde_json::to_value(&rep).expect("serializable"),
            }
        }
    })
}

fn run_search(cat: &Catalog, args: &SearchArgs, spectral_mode: bool) -> Result<Outcome, Failure> {
    if args.tol.is_nan() || args.tol <= 0.0 {
        return Err(Failure::usage(format!("--tol must be positive, got {}", args.tol)));
    }
    let members = args
        .forbid
        .iter()
        .map(|s| graph6::decode(s).map_err(|e| Failure::usage(format!("--forbid {s:?}: {e}"))))
        .collect::<Result<Vec<_>, _>>()?;
    let fam = ForbiddenFamily::new(members).map_err(|e| Failure::usage(e.to_string()))?;
    let rep: SearchReport =
        if spectral_mode { spex_search(cat, args.n, &fam, args.tol)? } else { ex_search(cat, args.n, &fam)? };
    // independent of the search's own re-verification
    let bad: Vec<&str> = rep
        .witnesses
        .iter()
        .filter(|w| {
            let g = w.graph();
            !fam.is_free(&g) || canonical_form(&g) != g || g.order() != args.n
        })
        .map(|w| w.graph6.as_str())
        .collect();
    let params = if spectral_mode {
        json!({ "n": args.n, "forbid": args.forbid, "tol": args.tol })
    } else {
        json!({ "n": args.n, "forbid": args.forbid })
    };
    Ok(Outcome {
        params,
        paper_anchor: if spectral_mode {
            "spectral Turán number by exhaustive search"
        } else {
            "Turán number by exhaustive search"
        },
        checks: vec![Check::new(
            "witnesses are canonical, of order n and family-free",
            bad.is_empty(),
            format!("{} witnesses, rejected: {bad:?}", rep.witnesses.len()),
        )],
        witnesses: rep.witnesses.iter().map(|w| w.graph6.clone()).collect(),
        values: serde_json::to_value(&rep).expect("serializable"),
    })
}

fn emit(cli: &Cli, text: &str) -> Result<(), Failure> {
    match &cli.out {
        Some(path) => std::fs::write(path, format!("{text}\n"))
            .map_err(|e| Failure { code: EXIT_FAILED, message: format!("writing {}: {e}", path.display()) }),
        None => match writeln!(std::io::stdout().lock(), "{text}") {
            Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
                Err(Failure { code: EXIT_FAILED, message: format!("writing standard output: {e}") })
            }
            _ => Ok(()),
        },
    }
}

fn run(cli: &Cli) -> Result<bool, Failure> {
    let start = Instant::now();
    let (name, cat, outcome) = match &cli.command {
        Command::Construct { expr } => {
            let g = expr::parse(expr).map_err(|e| match e {
                expr::ExprError::Graph(GraphError::OrderTooLarge(_)) => {
                    Failure { code: EXIT_BUDGET, message: e.to_string() }
                }
                other => Failure::usage(other.to_string()),
            })?;
            let stats = g.basic_stats();
            let text = format!(
                "{}\nn={} e={}\nmin_degree={} max_degree={} connected={}",
                graph6::encode(&canonical_form(&g)),
                g.order(),
                stats.edges,
                stats.min_degree,
                stats.max_degree,
                stats.connected
            );
            emit(cli, &text)?;
            return Ok(true);
        }
        Command::Verify(args) => {
            let cat = catalog(cli);
            let out = run_verify(&cat, args)?;
            let name = serde_json::to_value(args.target).expect("serializable");
            (format!("verify {}", name.as_str().expect("string")), cat, out)
        }
        Command::Ex(args) => {
            let cat = catalog(cli);
            let out = run_search(&cat, args, false)?;
            ("ex".to_string(), cat, out)
        }
        Command::Spex(args) => {
            let cat = catalog(cli);
            let out = run_search(&cat, args, true)?;
            ("spex".to_string(), cat, out)
        }
    };
    let ok = outcome.checks.iter().all(|c| c.pass);
    let report = Report {
        command: name,
        params: outcome.params,
        paper_anchor: outcome.paper_anchor.to_string(),
        checks: outcome.checks,
        witnesses: outcome.witnesses,
        values: outcome.values,
        runtime_ms: start.elapsed().as_millis(),
        cache_hits: cat.cache_hits(),
    };
    emit(cli, &serde_json::to_string_pretty(&report).expect("serializable"))?;
    Ok(ok)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            eprintln!("error: --jobs must be at least 1");
            return ExitCode::from(EXIT_USAGE);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_FAILED);
        }
    }
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_FAILED),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
