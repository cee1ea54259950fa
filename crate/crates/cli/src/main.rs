//! `sigma-lab`: validate algebra files, run scenarios and property suites.
//!
//! Exit status is 0 when everything checked passes, 1 when an assertion
//! fails and 2 on usage, I/O or parse errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand};
use serde_json::Value;
use sigma_lab::format::{parse_algebra, parse_scenario};
use sigma_lab::report::{validate_algebra_file, ValidationReport};
use sigma_lab::scenario::{self, ScenarioReport, SCENARIOS};
use sigma_lab::suite::{run_suite, SuiteReport, DEFAULT_MAX_ATOMS};
use sigma_lab::DEFAULT_SEED;

const SEED_ENV: &str = "SIGMA_LAB_SEED";

#[derive(Parser, Debug)]
#[command(
    name = "sigma-lab",
    version,
    about = "Exact experiments on lattices of σ-fields of finite probability spaces"
)]
struct Cli {
    /// Seed for randomized work [default: $SIGMA_LAB_SEED, else 42]
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Print the JSON report instead of the table
    #[arg(long, global = true)]
    json: bool,
    /// Also write the JSON report to this file
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Print less
    #[arg(short, long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check that an algebra file describes a noise-type Boolean algebra
    Validate { file: PathBuf },
    /// Run a scenario file
    Run { file: PathBuf },
    /// Run the property suite
    Suite {
        /// Largest atom count visited
        #[arg(long, default_value_t = DEFAULT_MAX_ATOMS)]
        max_atoms: usize,
    },
    /// List known scenarios
    List,
}

enum Outcome {
    Pass,
    Fail,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn env_seed() -> anyhow::Result<Option<u64>> {
    match std::env::var(SEED_ENV) {
        Ok(v) => v.trim().parse().map(Some).map_err(|_| anyhow!("{SEED_ENV} must be a nonnegative integer, got `{v}`")),
        Err(std::env::VarError::NotPresent) => Ok(None),
        Err(e) => Err(anyhow!("{SEED_ENV}: {e}")),
    }
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn execute(cli: &Cli) -> anyhow::Result<Outcome> {
    let fallback_seed = env_seed()?.unwrap_or(DEFAULT_SEED);
    let (json, pass, table) = match &cli.command {
        Command::Validate { file } => {
            let parsed = parse_algebra(&read(file)?).with_context(|| format!("in {}", file.display()))?;
            let report = validate_algebra_file(&parsed);
            (serde_json::to_value(&report)?, report.valid, validation_table(&report))
        }
        Command::Run { file } => {
            let mut config = parse_scenario(&read(file)?).with_context(|| format!("in {}", file.display()))?;
            if cli.seed.is_some() {
                config.seed = cli.seed;
            }
            let report = scenario::run(&config, fallback_seed)?;
            (serde_json::to_value(&report)?, report.passed(), scenario_table(&report))
        }
        Command::Suite { max_atoms } => {
            let seed = cli.seed.unwrap_or(fallback_seed);
            let report = run_suite(seed, *max_atoms);
            (serde_json::to_value(&report)?, report.passed(), suite_table(&report))
        }
        Command::List => {
            let list: Vec<Value> =
                SCENARIOS.iter().map(|(n, d)| serde_json::json!({ "name": n, "description": d })).collect();
            let width = SCENARIOS.iter().map(|(n, _)| n.len()).max().unwrap_or(0);
            let table = SCENARIOS.iter().map(|(n, d)| format!("{n:width$}  {d}\n")).collect();
            (Value::Array(list), true, table)
        }
    };
    let text = serde_json::to_string_pretty(&json)? + "\n";
    if let Some(path) = &cli.out {
        fs::write(path, &text).with_context(|| format!("cannot write {}", path.display()))?;
    }
    if cli.json {
        print!("{text}");
    } else if !cli.quiet || !pass {
        print!("{table}");
    }
    Ok(if pass { Outcome::Pass } else { Outcome::Fail })
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn validation_table(r: &ValidationReport) -> String {
    let mut out = format!("space      [{}]\n", r.space.join(", "));
    out += &format!("algebra    {{{}}}\n", r.elements.join(", "));
    match r.axiom {
        Some(axiom) => {
            out += &format!("noise-type FAIL  {axiom}\n");
            out += &format!("witness    {}\n", r.witness.join(", "));
        }
        None => {
            out += "noise-type PASS\n";
            let pairs: Vec<String> = r.complements.iter().map(|(x, y)| format!("{x}' = {y}")).collect();
            out += &format!("complements {}\n", pairs.join(", "));
        }
    }
    if let Some(ok) = r.projection_products {
        out += &format!("Q_x Q_y = Q_(x∧y)  {}\n", mark(ok));
    }
    if let Some(ok) = r.completion_equals_algebra {
        out += &format!("completion = algebra  {}", mark(ok));
        if r.closure_collapsed == Some(true) {
            out += "  (finite closure adds nothing)";
        }
        out += "\n";
    }
    if let Some(e) = &r.error {
        out += &format!("error      {e}\n");
    }
    out += &format!("result     {}\n", if r.valid { "VALID" } else { "INVALID" });
    out
}

fn scenario_table(r: &ScenarioReport) -> String {
    let mut out = format!("scenario {}\n", r.scenario);
    for (k, v) in &r.params {
        out += &format!("  {k} = {v}\n");
    }
    let width = r.assertions.iter().map(|a| a.name.len()).max().unwrap_or(0);
    for a in &r.assertions {
        out += &format!("{}  {:width$}", mark(a.pass), a.name);
        if let Some(w) = &a.witness {
            out += &format!("  {w}");
        }
        out += "\n";
    }
    for t in &r.trajectories {
        let values: Vec<String> = t.values.iter().map(|v| format!("{v:.12}")).collect();
        out += &format!("trajectory {}: {}\n", t.name, values.join(" "));
    }
    if r.assertions.is_empty() {
        out += "no assertions; trajectories only\n";
    } else {
        let failed = r.failures().count();
        out += &format!("{} of {} assertions passed\n", r.assertions.len() - failed, r.assertions.len());
    }
    trim_lines(&out)
}

fn trim_lines(text: &str) -> String {
    text.lines().map(|l| l.trim_end().to_string() + "\n").collect()
}

fn suite_table(r: &SuiteReport) -> String {
    let mut out = format!("suite seed={} max_atoms={}\n", r.seed, r.max_atoms);
    let width = r.properties.iter().map(|p| p.name.len()).max().unwrap_or(0);
    for p in &r.properties {
        out += &format!(
            "{}  {:width$}  {:>7} checked  {:>3} failed",
            mark(p.failures == 0),
            p.name,
            p.checked,
            p.failures
        );
        if let Some(w) = &p.first_failure {
            out += &format!("  first: {w}");
        }
        out += "\n";
    }
    let passed = r.properties.iter().filter(|p| p.failures == 0).count();
    out += &format!(
        "{passed} of {} properties passed ({} checks, {} failures)\n",
        r.properties.len(),
        r.checked(),
        r.failures()
    );
    out
}
