//! Command-line front end: parse, execute, render.
//!
//! Exit status is 0 on success, 1 when any verdict fails, and 2 on usage or
//! library errors.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::automorphisms::{automorphism_group, characteristic_subgroups_with};
use crate::catalog::{build, census};
use crate::error::{HgError, Result};
use crate::group::GroupTable;
use crate::holomorph::build_hol;
use crate::regular::{classify_regulars, count_e, regular_subgroups_iso, SearchConfig};
use crate::verify::{cfsg_desk_checks, run_scenarios, Scenario, SimpleLabel, Status, VerifyContext, SMALL_MULTIPLIERS};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Parser, Debug)]
#[command(name = "hg", version, about = "Count Hopf-Galois structures through regular subgroups of holomorphs")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads (default: available cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Search node budget; accepts forms like 5e8.
    #[arg(long, global = true, value_parser = parse_budget)]
    budget: Option<u64>,
    /// Directory with extra census groups.
    #[arg(long, global = true, env = "HG_CENSUS_DIR")]
    census_dir: Option<PathBuf>,
    /// Include wall-clock time in the report.
    #[arg(long, global = true)]
    timing: bool,
}

/// A verb with its required arguments. Group arguments use the group-spec
/// grammar, e.g. `sl2(7)` or `direct(alt(5),cyclic(2))`.
#[derive(Subcommand, Debug, Clone, PartialEq, Eq)]
pub enum Verb {
    /// Automorphism group summary.
    Aut {
        #[arg(long)]
        g: String,
    },
    /// Build Hol(N) and check its laws.
    Hol {
        #[arg(long)]
        n: String,
    },
    /// Regular subgroups of Hol(N) isomorphic to G.
    Regulars {
        #[arg(long)]
        g: String,
        #[arg(long)]
        n: String,
    },
    /// The count e(G, N).
    E {
        #[arg(long)]
        g: String,
        #[arg(long)]
        n: String,
    },
    /// Regular subgroups of Hol(N) by isomorphism type over the census.
    Classify {
        #[arg(long)]
        n: String,
    },
    /// Run verification scenarios: 15, 60, 120, 336, crossed, oracle or all.
    Verify {
        #[arg(long, default_value = "all")]
        scenario: String,
    },
    /// Desk checks on a small simple group (default: alt(5) and psl2(7)).
    Cfsg {
        #[arg(long)]
        g: Option<String>,
    },
    /// Schur multiplier order of a simple group label such as A6 or PSL3(4).
    Schur {
        #[arg(long)]
        label: String,
    },
}

/// A validated command line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Command {
    pub verb: Verb,
    pub format: Format,
    pub jobs: Option<usize>,
    pub budget: Option<u64>,
    pub census_dir: Option<PathBuf>,
    pub timing: bool,
}

impl Command {
    fn config(&self) -> SearchConfig {
        let mut cfg = SearchConfig::default();
        if let Some(b) = self.budget {
            cfg.budget = b;
        }
        cfg.jobs = self.jobs;
        cfg
    }

    /// Canonical echo of the verb and its arguments.
    pub fn echo(&self) -> String {
        let mut s = match &self.verb {
            Verb::Aut { g } => format!("aut --g {g}"),
            Verb::Hol { n } => format!("hol --n {n}"),
            Verb::Regulars { g, n } => format!("regulars --g {g} --n {n}"),
            Verb::E { g, n } => format!("e --g {g} --n {n}"),
            Verb::Classify { n } => format!("classify --n {n}"),
            Verb::Verify { scenario } => format!("verify --scenario {scenario}"),
            Verb::Cfsg { g: Some(g) } => format!("cfsg --g {g}"),
            Verb::Cfsg { g: None } => "cfsg".to_string(),
            Verb::Schur { label } => format!("schur --label {label}"),
        };
        if let Some(b) = self.budget {
            let _ = write!(s, " --budget {b}");
        }
        s
    }
}

fn parse_budget(s: &str) -> std::result::Result<u64, String> {
    if let Ok(v) = s.parse::<u64>() {
        return Ok(v);
    }
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() && v >= 1.0 && v.fract() == 0.0 && v <= u64::MAX as f64 => Ok(v as u64),
        _ => Err(format!("budget must be a positive integer, got {s:?}")),
    }
}

fn from_cli(cli: Cli) -> Result<Command> {
    if cli.jobs == Some(0) {
        return Err(HgError::UsageError("--jobs must be at least 1".into()));
    }
    if let Verb::Verify { scenario } = &cli.verb {
        Scenario::parse_list(scenario)?;
    }
    Ok(Command {
        verb: cli.verb,
        format: cli.format,
        jobs: cli.jobs,
        budget: cli.budget,
        census_dir: cli.census_dir,
        timing: cli.timing,
    })
}

/// Parses `argv` (program name first).
pub fn parse<I, T>(argv: I) -> Result<Command>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(|e| HgError::UsageError(e.to_string().trim().to_string()))?;
    from_cli(cli)
}

/// Result of executing a command.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub version: String,
    pub results: Vec<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<u64>,
}

impl Report {
    /// 1 when any result carries a failing verdict, else 0.
    pub fn exit_code(&self) -> i32 {
        let failed = self
            .results
            .iter()
            .any(|r| r.get("verdict").and_then(Value::as_str) == Some(Status::Fail.as_str()));
        i32::from(failed)
    }
}

fn group(spec: &str) -> Result<GroupTable> {
    build(spec)
}

fn pair(g: &str, n: &str) -> Value {
    json!([g, n])
}

/// Runs the command against the library.
pub fn execute(cmd: &Command) -> Result<Report> {
    let start = Instant::now();
    let cfg = cmd.config();
    let results = match &cmd.verb {
        Verb::Aut { g } => {
            let t = group(g)?;
            let aut = automorphism_group(&t)?;
            let chars = characteristic_subgroups_with(&aut);
            vec![json!({
                "group": t.label(),
                "order": t.order(),
                "aut": aut.len(),
                "inner": aut.inner().len(),
                "out": aut.out_order(),
                "generators": aut.generators().len(),
                "characteristic_orders": chars.iter().map(|c| c.subgroup.len()).collect::<Vec<_>>(),
            })]
        }
        Verb::Hol { n } => {
            let t = group(n)?;
            let hol = build_hol(&t)?;
            vec![json!({
                "n": t.label(),
                "order": hol.order(),
                "aut": hol.aut().len(),
                "laws": "ok",
            })]
        }
        Verb::Regulars { g, n } => {
            let (gt, nt) = (group(g)?, group(n)?);
            let en = regular_subgroups_iso(&gt, &nt, &cfg)?;
            let subs: Vec<Value> = en
                .subgroups
                .iter()
                .map(|s| Value::from(s.elements.iter().map(|h| json!([h.eta, h.alpha])).collect::<Vec<_>>()))
                .collect();
            vec![json!({
                "pair": pair(gt.label(), nt.label()),
                "raw_count": en.raw_count(),
                "bijective_count": en.bijective_count,
                "lambda_rho": en.is_lambda_rho(),
                "homs": en.stats.homs,
                "nodes": en.stats.nodes,
                "subgroups": subs,
            })]
        }
        Verb::E { g, n } => {
            let (gt, nt) = (group(g)?, group(n)?);
            let r = count_e(&gt, &nt, &cfg)?;
            vec![json!({
                "pair": pair(&r.g, &r.n),
                "e": r.e,
                "raw_count": r.raw_count,
                "aut_g": r.aut_g,
                "aut_n": r.aut_n,
                "bijective_count": r.bijective_count,
                "homs": r.stats.homs,
                "nodes": r.stats.nodes,
            })]
        }
        Verb::Classify { n } => {
            let nt = group(n)?;
            let tier = census(nt.order(), cmd.census_dir.as_deref())?;
            let c = cfg.install(|| classify_regulars(&nt, &tier, &cfg))?;
            vec![serde_json::to_value(&c).map_err(json_err)?]
        }
        Verb::Verify { scenario } => {
            let ctx = VerifyContext {
                cfg,
                census_dir: cmd.census_dir.clone(),
            };
            let verdicts = run_scenarios(&Scenario::parse_list(scenario)?, &ctx)?;
            verdicts
                .iter()
                .map(|v| serde_json::to_value(v).map_err(json_err))
                .collect::<Result<_>>()?
        }
        Verb::Cfsg { g } => {
            let specs: Vec<(String, String)> = match g {
                Some(s) => vec![(s.clone(), s.clone())],
                None => vec![("A5".into(), "alt(5)".into()), ("PSL2(7)".into(), "psl2(7)".into())],
            };
            let mut out = Vec::new();
            for (label, spec) in specs {
                for v in cfsg_desk_checks(&group(&spec)?, &label)? {
                    out.push(serde_json::to_value(&v).map_err(json_err)?);
                }
            }
            out
        }
        Verb::Schur { label } => {
            let l = SimpleLabel::parse(label)?;
            let m = l.multiplier();
            vec![json!({
                "label": label,
                "multiplier": m,
                "non_exceptional": l.non_exceptional(),
                "in_small_set": SMALL_MULTIPLIERS.contains(&m),
            })]
        }
    };
    Ok(Report {
        command: cmd.echo(),
        version: VERSION.to_string(),
        results,
        wall_ms: cmd.timing.then(|| start.elapsed().as_millis() as u64),
    })
}

fn json_err(e: serde_json::Error) -> HgError {
    HgError::UsageError(format!("serialization failed: {e}"))
}

/// Text or JSON rendering; both are deterministic for fixed inputs.
pub fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Text => render_text(report),
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn render_text(report: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "hg {} | {}", report.version, report.command);
    if report.results.is_empty() {
        let _ = writeln!(out, "(no results)");
    }
    for r in &report.results {
        let Some(obj) = r.as_object() else {
            let _ = writeln!(out, "{}", compact(r));
            continue;
        };
        if let Some(scenario) = obj.get("scenario") {
            let verdict = obj.get("verdict").map(compact).unwrap_or_default();
            let _ = writeln!(out, "{:<8} {}", verdict.to_uppercase(), compact(scenario));
            let mut rows: Vec<(&str, &Value)> = ["expected", "observed", "witness"]
                .into_iter()
                .filter_map(|k| obj.get(k).map(|v| (k, v)))
                .collect();
            if let Some(Value::Object(meta)) = obj.get("metadata") {
                rows.extend(meta.iter().map(|(k, v)| (k.as_str(), v)));
            }
            let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
            for (k, v) in rows {
                let _ = writeln!(out, "    {k:<width$} {}", compact(v));
            }
            continue;
        }
        for (k, v) in obj {
            match (k.as_str(), v) {
                ("counts", Value::Object(m)) => {
                    let _ = writeln!(out, "{k}:");
                    for (label, c) in m {
                        let _ = writeln!(out, "    {label:<16} {}", compact(c));
                    }
                }
                ("subgroups", Value::Array(a)) => {
                    let _ = writeln!(out, "{k:<16} {} listed (JSON output has elements)", a.len());
                }
                _ => {
                    let _ = writeln!(out, "{k:<16} {}", compact(v));
                }
            }
        }
    }
    if let Some(ms) = report.wall_ms {
        let _ = writeln!(out, "wall_ms {ms}");
    }
    out
}

/// Full CLI run; returns the process exit status.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let format = cli.format;
    let outcome = from_cli(cli).and_then(|cmd| execute(&cmd));
    match outcome {
        Ok(report) => {
            print!("{}", render(&report, format));
            report.exit_code()
        }
        Err(e) => {
            eprintln!("hg: {e}");
            2
        }
    }
}
