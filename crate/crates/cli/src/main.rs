mod report;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use ramsey_core::arrowing::{
    arrows, critical_number, export_dimacs, ramsey_number, DeletionFamily, SearchOptions, Verdict, DEFAULT_BUDGET,
    DEFAULT_COPY_CAP,
};
use ramsey_core::constructions::path_critical_witness;
use ramsey_core::error::SearchError;
use ramsey_core::formulas::closed_form_path_critical;
use ramsey_core::verify::{self, Level};
use ramsey_core::{graph6, Graph, GraphSpec, Side, TargetKind};

use report::{Provenance, RunReport, Status, USAGE_EXIT};

#[derive(Parser)]
#[command(name = "ramsey", version, about = "Ramsey arrowing search and verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct SearchFlags {
    /// Decision budget per arrowing query.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Single worker, canonical branch order, reproducible counterexamples.
    #[arg(long)]
    deterministic: bool,
    /// Worker threads for one query (ignored with --deterministic).
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

impl SearchFlags {
    fn options(&self) -> SearchOptions {
        let parallel = !self.deterministic && self.jobs > 1;
        SearchOptions {
            budget: self.budget,
            copy_cap: DEFAULT_COPY_CAP,
            deterministic: !parallel,
            jobs: if parallel { self.jobs } else { 1 },
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether every red/blue coloring of HOST has a red RED or a blue BLUE.
    Arrows {
        #[arg(long)]
        host: String,
        #[arg(long)]
        red: String,
        #[arg(long)]
        blue: String,
        #[command(flatten)]
        search: SearchFlags,
        /// Write the counterexample coloring (JSON) here when one is found.
        #[arg(long)]
        emit_witness: Option<PathBuf>,
        /// Write the instance as DIMACS CNF here.
        #[arg(long)]
        dimacs: Option<PathBuf>,
    },
    /// Ramsey number and a critical number, by search and from the catalog.
    Numbers {
        #[arg(long)]
        red: String,
        #[arg(long)]
        blue: String,
        /// Largest host order tried.
        #[arg(long, default_value_t = 20)]
        max_r: usize,
        #[arg(long, value_enum, default_value_t = FamilyArg::Path)]
        family: FamilyArg,
        #[command(flatten)]
        search: SearchFlags,
    },
    /// Run the reproduction table.
    Verify {
        #[arg(long, value_enum, default_value_t = LevelArg::Quick)]
        level: LevelArg,
        /// Run only these check ids (comma separated).
        #[arg(long, value_delimiter = ',')]
        only: Vec<u32>,
        /// Worker threads for the long searches.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Path,
    Matching,
    Clique,
}

impl From<FamilyArg> for DeletionFamily {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Path => DeletionFamily::Path,
            FamilyArg::Matching => DeletionFamily::Matching,
            FamilyArg::Clique => DeletionFamily::Clique,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum LevelArg {
    Quick,
    Full,
}

/// Bad input rather than a failed computation.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn parse_spec(flag: &str, text: &str) -> Result<GraphSpec> {
    GraphSpec::parse(text).map_err(|e| Usage(format!("--{flag} {text:?}: {e}")).into())
}

fn parse_target(flag: &str, text: &str) -> Result<TargetKind> {
    let spec = parse_spec(flag, text)?;
    spec.realize().map_err(|e| Usage(format!("--{flag} {text:?}: {e}")))?;
    Ok(TargetKind::from_spec(&spec))
}

fn parse_host(text: &str) -> Result<Graph> {
    parse_spec("host", text)?
        .realize()
        .map_err(|e| Usage(format!("--host {text:?}: {e}")).into())
}

fn witness_json(host_spec: &str, c: &ramsey_core::Coloring) -> String {
    let doc = json!({
        "host": host_spec,
        "host_graph6": graph6::encode(c.host()),
        "red_graph6": graph6::encode(&c.monochromatic_subgraph(Side::Red)),
        "blue_graph6": graph6::encode(&c.monochromatic_subgraph(Side::Blue)),
        "coloring": c.to_triples(),
    });
    let mut s = serde_json::to_string_pretty(&doc).expect("witness serializes");
    s.push('\n');
    s
}

fn cmd_arrows(
    host_text: &str,
    red_text: &str,
    blue_text: &str,
    search: &SearchFlags,
    emit_witness: Option<&PathBuf>,
    dimacs: Option<&PathBuf>,
) -> Result<RunReport> {
    let host = parse_host(host_text)?;
    let red = parse_target("red", red_text)?;
    let blue = parse_target("blue", blue_text)?;
    let opts = search.options();
    let mut report = RunReport::new(
        "arrows",
        &[("host", host_text.to_string()), ("red", red_text.to_string()), ("blue", blue_text.to_string())],
    );

    if let Some(path) = dimacs {
        match export_dimacs(&host, &red, &blue, opts.copy_cap) {
            Ok(cnf) => {
                fs::write(path, cnf.to_dimacs()).with_context(|| format!("writing {}", path.display()))?;
                report.files.push(path.display().to_string());
            }
            Err(e) => return Ok(report.fail(e)),
        }
    }

    let res = arrows(&host, &red, &blue, &opts);
    report.stats = serde_json::to_value(&res.stats)?;
    let (status, verdict) = match &res.verdict {
        Verdict::Arrows => (Status::Arrows, "arrows"),
        Verdict::Counterexample(_) => (Status::Counterexample, "counterexample"),
        Verdict::Indeterminate => (Status::Indeterminate, "indeterminate"),
    };
    report.push("verdict", verdict, Provenance::Search, None);
    if let Some(c) = res.counterexample() {
        report.push("counterexample", c.to_triples(), Provenance::Search, None);
        if let Some(path) = emit_witness {
            fs::write(path, witness_json(host_text, c)).with_context(|| format!("writing {}", path.display()))?;
            report.files.push(path.display().to_string());
        }
    }
    Ok(report.finish(status))
}

fn search_failure(report: RunReport, e: SearchError) -> RunReport {
    if matches!(e, SearchError::Indeterminate { .. }) {
        let mut r = report;
        r.error = Some(e.to_string());
        r.finish(Status::Indeterminate)
    } else {
        report.fail(e)
    }
}

fn cmd_numbers(
    red_text: &str,
    blue_text: &str,
    max_r: usize,
    family: DeletionFamily,
    search: &SearchFlags,
) -> Result<RunReport> {
    let red = parse_target("red", red_text)?;
    let blue = parse_target("blue", blue_text)?;
    if max_r > ramsey_core::graph::MAX_ORDER {
        bail!(Usage(format!("--max-r {max_r} exceeds the {}-vertex limit", ramsey_core::graph::MAX_ORDER)));
    }
    let opts = search.options();
    let mut report = RunReport::new(
        "numbers",
        &[
            ("red", red_text.to_string()),
            ("blue", blue_text.to_string()),
            ("family", family.name().to_string()),
            ("max_r", max_r.to_string()),
        ],
    );

    let r = match ramsey_number(&red, &blue, max_r, &opts) {
        Ok(r) => r,
        Err(e) => return Ok(search_failure(report, e)),
    };
    report.push("ramsey_number", r.value, Provenance::Search, None);
    if let Some(kv) = &r.catalog {
        report.push("ramsey_number", kv.value, Provenance::Catalog, Some(kv.source));
    }

    let c = match critical_number(&red, &blue, family, r.value as usize, &opts) {
        Ok(c) => c,
        Err(e) => return Ok(search_failure(report, e)),
    };
    let name = format!("{}_critical_number", family.name());
    report.push(name.clone(), c.value, Provenance::Search, None);
    report.stats = json!({ "nodes": r.nodes + c.nodes, "search_start": r.start, "convention": c.convention });

    if family == DeletionFamily::Path {
        if let Some(kv) = closed_form_path_critical(&red, &blue) {
            report.push(name.clone(), kv.value, Provenance::Catalog, Some(kv.source));
            if kv.value != c.value {
                let msg = format!(
                    "search gives {} = {} but the catalog ({}) states {}",
                    name, c.value, kv.source, kv.value
                );
                return Ok(report.fail(msg));
            }
        }
        if let Ok(w) = path_critical_witness(&red, &blue, r.value) {
            report.push(format!("{name}_upper_bound"), w.certified_bound(), Provenance::Construction, Some(&w.host_spec.to_string()));
            if c.value > w.certified_bound() {
                let msg = format!("search gives {} but the witness on {} bounds it by {}", c.value, w.host_spec, w.certified_bound());
                return Ok(report.fail(msg));
            }
        }
    }
    Ok(report.finish(Status::Pass))
}

fn cmd_verify(level: Level, only: &[u32], jobs: usize) -> RunReport {
    let table = verify::checks();
    let skip = if only.is_empty() {
        Vec::new()
    } else {
        table.iter().map(|c| c.id).filter(|id| !only.contains(id)).collect()
    };
    let opts = verify::VerifyOptions { level, jobs, skip };
    let level_name = match level {
        Level::Quick => "quick",
        Level::Full => "full",
    };
    let mut report = RunReport::new("verify", &[("level", level_name.to_string())]);
    let summary = verify::run_all(&table, &opts, |c| {
        eprintln!("check {:>2} {:?} ({} ms): {}", c.id, c.status, c.runtime_ms, c.name);
    });
    for c in &summary.checks {
        report.push(format!("check {}", c.id), c, Provenance::Search, None);
    }
    report.stats = json!({
        "runtime_ms": summary.checks.iter().map(|c| c.runtime_ms).sum::<u64>(),
        "notes": summary.notes,
    });
    report.finish(if summary.passed { Status::Pass } else { Status::Fail })
}

fn run(cli: Cli) -> Result<RunReport> {
    match cli.command {
        Command::Arrows { host, red, blue, search, emit_witness, dimacs } => {
            cmd_arrows(&host, &red, &blue, &search, emit_witness.as_ref(), dimacs.as_ref())
        }
        Command::Numbers { red, blue, max_r, family, search } => cmd_numbers(&red, &blue, max_r, family.into(), &search),
        Command::Verify { level, only, jobs } => {
            let level = match level {
                LevelArg::Quick => Level::Quick,
                LevelArg::Full => Level::Full,
            };
            Ok(cmd_verify(level, &only, jobs))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { USAGE_EXIT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(report) => {
            print!("{}", report.to_json());
            if let Some(err) = &report.error {
                eprintln!("error: {err}");
            }
            ExitCode::from(report.exit_code)
        }
        Err(e) if e.is::<Usage>() => {
            eprintln!("error: {e}");
            ExitCode::from(USAGE_EXIT)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
