//! Experiment harness behind the `learnability` binary.
//!
//! Every subcommand produces a [`RunReport`]: a list of verdicts, each an
//! observed quantity checked against a bound, plus the full result document.
//! Reports go to `<dir>/<stem>.json` with a `<stem>.csv` verdict sidecar,
//! where `<dir>` is `--report-dir`, else `$LEARNABILITY_REPORT_DIR`, else
//! `./reports`.

pub mod commands;

use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};

pub use commands::{
    AdversaryArgs, CheckArgs, Command, DimArgs, DimKind, DpLearnArgs, ExperimentArgs, GenerateArgs,
    GeneratorKind, GsArgs, SoaArgs, ThresholdsArgs,
};

pub const REPORT_DIR_ENV: &str = "LEARNABILITY_REPORT_DIR";
pub const DEFAULT_REPORT_DIR: &str = "reports";
pub const CONFIG_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub name: String,
    /// `None` for plain yes/no checks.
    pub bound: Option<f64>,
    pub observed: f64,
    pub pass: bool,
}

impl Verdict {
    pub fn at_most(name: impl Into<String>, observed: f64, bound: f64) -> Self {
        Verdict {
            name: name.into(),
            bound: Some(bound),
            observed,
            pass: observed <= bound,
        }
    }

    pub fn at_least(name: impl Into<String>, observed: f64, bound: f64) -> Self {
        Verdict {
            name: name.into(),
            bound: Some(bound),
            observed,
            pass: observed >= bound,
        }
    }

    pub fn holds(name: impl Into<String>, ok: bool) -> Self {
        Verdict {
            name: name.into(),
            bound: None,
            observed: f64::from(u8::from(ok)),
            pass: ok,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub stem: String,
    pub verdicts: Vec<Verdict>,
    pub wall_clock_secs: f64,
    pub result: serde_json::Value,
}

impl RunReport {
    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }

    pub fn csv(&self) -> String {
        let mut out = String::from("name,bound,observed,pass\n");
        for v in &self.verdicts {
            let bound = v.bound.map(|b| b.to_string()).unwrap_or_default();
            out.push_str(&format!("{},{bound},{},{}\n", v.name, v.observed, v.pass));
        }
        out
    }

    /// Writes the report and its CSV sidecar; returns the JSON path.
    pub fn write(&self, dir: &Path) -> Result<PathBuf> {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        let json = dir.join(format!("{}.json", self.stem));
        let mut text = serde_json::to_string_pretty(self)?;
        text.push('\n');
        std::fs::write(&json, text).with_context(|| format!("writing {}", json.display()))?;
        std::fs::write(dir.join(format!("{}.csv", self.stem)), self.csv())?;
        Ok(json)
    }

    /// One line per verdict.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        for v in &self.verdicts {
            let bound = match v.bound {
                Some(b) => format!(" (bound {b})"),
                None => String::new(),
            };
            out.push_str(&format!(
                "{} {}: {}{bound}\n",
                if v.pass { "PASS" } else { "FAIL" },
                v.name,
                v.observed
            ));
        }
        out
    }
}

pub fn report_dir(flag: Option<&Path>) -> PathBuf {
    if let Some(p) = flag {
        return p.to_path_buf();
    }
    match std::env::var_os(REPORT_DIR_ENV) {
        Some(p) if !p.is_empty() => PathBuf::from(p),
        _ => PathBuf::from(DEFAULT_REPORT_DIR),
    }
}

/// A sequence of commands run in order. Relative paths resolve against the
/// directory holding the config file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub version: u32,
    pub name: String,
    pub steps: Vec<Command>,
}

pub fn read_config(path: &Path) -> Result<ExperimentConfig> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut cfg: ExperimentConfig =
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    if cfg.version != CONFIG_VERSION {
        bail!("unsupported config version {}, expected {CONFIG_VERSION}", cfg.version);
    }
    let base = path.parent().unwrap_or(Path::new("."));
    for step in &mut cfg.steps {
        if matches!(step, Command::Experiment(_)) {
            bail!("experiments cannot nest");
        }
        step.resolve_paths(base);
    }
    Ok(cfg)
}

pub fn run_experiment(cfg: &ExperimentConfig) -> Result<RunReport> {
    let start = Instant::now();
    let mut verdicts = Vec::new();
    let mut steps = Vec::new();
    for (i, step) in cfg.steps.iter().enumerate() {
        let report = run_command(step)?;
        for v in &report.verdicts {
            let mut v = v.clone();
            v.name = format!("step{i}.{}.{}", report.command, v.name);
            verdicts.push(v);
        }
        steps.push(serde_json::to_value(&report)?);
    }
    Ok(RunReport {
        command: "experiment".into(),
        stem: format!("experiment-{}", cfg.name),
        verdicts,
        wall_clock_secs: start.elapsed().as_secs_f64(),
        result: serde_json::Value::Array(steps),
    })
}

pub fn run_command(cmd: &Command) -> Result<RunReport> {
    let start = Instant::now();
    let mut report = match cmd {
        Command::Experiment(args) => run_experiment(&read_config(&args.config)?)?,
        other => other.execute()?,
    };
    report.wall_clock_secs = start.elapsed().as_secs_f64();
    Ok(report)
}
