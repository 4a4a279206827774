//! Subcommands. Each argument struct doubles as an experiment step.

use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use learnability::dimensions::{fat_gamma, ldim_tau, ldim_value, pdim, Certificate, DimensionReport};
use learnability::format::{read_class, read_sequence, write_class, write_json, AnyClass};
use learnability::generators::ClassSpec;
use learnability::online::{adversary_force, run_online, LearnerSpec};
use learnability::privacy::{check_conditions, private_learn_mc, private_learn_reg, PrivacyParams};
use learnability::sample::uniform_weights;
use learnability::stability::estimate_stability;
use learnability::thresholds::{extract_thresholds_mc, extract_thresholds_reg, verify_thresholds};
use learnability::tree::{check_fat_tree, check_mistake_tree, check_sign_tree};
use learnability::{FiniteDistribution, HypothesisClass, RealFunctionClass};

use crate::{RunReport, Verdict};

#[derive(Debug, Clone, PartialEq, Subcommand, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    /// Ldim_τ, fat_γ or Pdim of a class, with a checked certificate.
    Dim(DimArgs),
    /// Replay a sequence against SOA_τ.
    Soa(SoaArgs),
    /// Force mistakes on a built-in learner.
    Adversary(AdversaryArgs),
    /// Extract and verify a threshold family.
    Thresholds(ThresholdsArgs),
    /// Estimate the output distribution of the globally stable learner.
    Gs(GsArgs),
    /// Run the private learner.
    DpLearn(DpLearnArgs),
    /// Evaluate the sufficient conditions for private learnability.
    Check(CheckArgs),
    /// Write a generated class file.
    Generate(GenerateArgs),
    /// Run the steps listed in a config file.
    Experiment(ExperimentArgs),
}

fn resolve(base: &Path, p: &mut PathBuf) {
    if p.is_relative() {
        *p = base.join(&*p);
    }
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Dim(_) => "dim",
            Command::Soa(_) => "soa",
            Command::Adversary(_) => "adversary",
            Command::Thresholds(_) => "thresholds",
            Command::Gs(_) => "gs",
            Command::DpLearn(_) => "dp-learn",
            Command::Check(_) => "check",
            Command::Generate(_) => "generate",
            Command::Experiment(_) => "experiment",
        }
    }

    pub fn resolve_paths(&mut self, base: &Path) {
        match self {
            Command::Dim(a) => {
                resolve(base, &mut a.input);
                if let Some(o) = &mut a.certificate {
                    resolve(base, o);
                }
            }
            Command::Soa(a) => {
                resolve(base, &mut a.input);
                resolve(base, &mut a.sequence);
            }
            Command::Adversary(a) => resolve(base, &mut a.input),
            Command::Thresholds(a) => resolve(base, &mut a.input),
            Command::Gs(a) => resolve(base, &mut a.input),
            Command::DpLearn(a) => resolve(base, &mut a.input),
            Command::Check(a) => resolve(base, &mut a.input),
            Command::Generate(a) => resolve(base, &mut a.output),
            Command::Experiment(a) => resolve(base, &mut a.config),
        }
    }

    /// Runs everything but `experiment`, which needs the config loader.
    pub fn execute(&self) -> Result<RunReport> {
        match self {
            Command::Dim(a) => a.run(),
            Command::Soa(a) => a.run(),
            Command::Adversary(a) => a.run(),
            Command::Thresholds(a) => a.run(),
            Command::Gs(a) => a.run(),
            Command::DpLearn(a) => a.run(),
            Command::Check(a) => a.run(),
            Command::Generate(a) => a.run(),
            Command::Experiment(_) => bail!("run experiments through run_command"),
        }
    }
}

fn report(command: &str, stem: String, verdicts: Vec<Verdict>, result: impl Serialize) -> Result<RunReport> {
    Ok(RunReport {
        command: command.into(),
        stem,
        verdicts,
        wall_clock_secs: 0.0,
        result: serde_json::to_value(result)?,
    })
}

fn stem_of(command: &str, input: &Path) -> String {
    let base = input.file_stem().and_then(|s| s.to_str()).unwrap_or("class");
    format!("{command}-{base}")
}

fn load(path: &Path) -> Result<AnyClass> {
    read_class(path).with_context(|| format!("loading class {}", path.display()))
}

fn multiclass(path: &Path) -> Result<HypothesisClass> {
    match load(path)? {
        AnyClass::Multiclass(c) => Ok(c),
        AnyClass::Real(_) => bail!("{} holds a real-valued class; a multi-class one is needed", path.display()),
    }
}

fn real(path: &Path) -> Result<RealFunctionClass> {
    match load(path)? {
        AnyClass::Real(c) => Ok(c),
        AnyClass::Multiclass(_) => bail!("{} holds a multi-class class; a real-valued one is needed", path.display()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DimKind {
    Ldim,
    Fat,
    Pdim,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct DimArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "ldim")]
    pub kind: DimKind,
    #[arg(long, default_value_t = 0)]
    #[serde(default)]
    pub tolerance: u32,
    /// Required for `--kind fat`.
    #[arg(long)]
    pub gamma: Option<f64>,
    /// Also write the certificate tree here.
    #[arg(long)]
    pub certificate: Option<PathBuf>,
}

impl DimArgs {
    fn run(&self) -> Result<RunReport> {
        let (dim, checked): (DimensionReport, bool) = match self.kind {
            DimKind::Ldim => {
                let c = multiclass(&self.input)?;
                let r = ldim_tau(&c, self.tolerance)?;
                let ok = match &r.certificate {
                    Certificate::Labels(t) => check_mistake_tree(&c, t, self.tolerance).is_ok(),
                    Certificate::Witnesses(_) => false,
                };
                (r, ok)
            }
            DimKind::Fat => {
                let gamma = self.gamma.ok_or_else(|| anyhow!("--kind fat needs --gamma"))?;
                let f = real(&self.input)?;
                let r = fat_gamma(&f, gamma)?;
                let ok = match &r.certificate {
                    Certificate::Witnesses(t) => check_fat_tree(&f, t, gamma).is_ok(),
                    Certificate::Labels(_) => false,
                };
                (r, ok)
            }
            DimKind::Pdim => {
                let f = real(&self.input)?;
                let r = pdim(&f)?;
                let ok = match &r.certificate {
                    Certificate::Witnesses(t) => check_sign_tree(&f, t).is_ok(),
                    Certificate::Labels(_) => false,
                };
                (r, ok)
            }
        };
        if let Some(path) = &self.certificate {
            write_json(path, &dim.certificate)?;
        }
        let verdicts = vec![
            Verdict::holds("certificate_shattered", checked),
            Verdict::at_least("certificate_height", f64::from(dim.certificate.height()), f64::from(dim.value)),
        ];
        let kind = match self.kind {
            DimKind::Ldim => "ldim",
            DimKind::Fat => "fat",
            DimKind::Pdim => "pdim",
        };
        report("dim", stem_of(&format!("dim-{kind}"), &self.input), verdicts, &dim)
    }
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct SoaArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub sequence: PathBuf,
    #[arg(long, default_value_t = 0)]
    #[serde(default)]
    pub tolerance: u32,
}

impl SoaArgs {
    fn run(&self) -> Result<RunReport> {
        let class = multiclass(&self.input)?;
        let seq = read_sequence(&self.sequence)
            .with_context(|| format!("loading sequence {}", self.sequence.display()))?;
        let mut learner = LearnerSpec::Soa.build(&class, self.tolerance)?;
        let t = run_online(&class, learner.as_mut(), &seq, self.tolerance)?;
        let mut verdicts = Vec::new();
        // The mistake bound covers realizable sequences only.
        if t.realizable_until.is_none() {
            let bound = ldim_value(&class, self.tolerance)?;
            verdicts.push(Verdict::at_most("mistakes", t.mistakes() as f64, f64::from(bound)));
        }
        report("soa", stem_of("soa", &self.input), verdicts, &t)
    }
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct AdversaryArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, default_value_t = 0)]
    #[serde(default)]
    pub tolerance: u32,
    /// `soa`, `majority` or `const:k`.
    #[arg(long, default_value = "soa")]
    #[serde(default = "default_learner")]
    pub learner: String,
}

fn default_learner() -> String {
    "soa".into()
}

impl AdversaryArgs {
    fn run(&self) -> Result<RunReport> {
        let class = multiclass(&self.input)?;
        let spec: LearnerSpec = self.learner.parse()?;
        let mut learner = spec.build(&class, self.tolerance)?;
        let t = adversary_force(&class, self.tolerance, learner.as_mut())?;
        let need = ldim_value(&class, 2 * self.tolerance)?;
        let verdicts = vec![Verdict::at_least("mistakes", t.mistakes() as f64, f64::from(need))];
        report("adversary", stem_of("adversary", &self.input), verdicts, &t)
    }
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct ThresholdsArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Gap for multi-class inputs.
    #[arg(long, default_value_t = 0)]
    #[serde(default)]
    pub tolerance: u32,
    /// Scale for real-valued inputs.
    #[arg(long)]
    pub gamma: Option<f64>,
}

impl ThresholdsArgs {
    fn run(&self) -> Result<RunReport> {
        let ex = match load(&self.input)? {
            AnyClass::Multiclass(c) => extract_thresholds_mc(&c, self.tolerance, None)?,
            AnyClass::Real(f) => {
                let gamma = self.gamma.ok_or_else(|| anyhow!("real-valued inputs need --gamma"))?;
                extract_thresholds_reg(&f, gamma)?
            }
        };
        let verdict = verify_thresholds(&ex.family);
        let verdicts = vec![
            Verdict::holds("family_verified", verdict.is_accept()),
            Verdict::at_least("family_length", ex.family.len() as f64, f64::from(ex.guaranteed_count)),
        ];
        report(
            "thresholds",
            stem_of("thresholds", &self.input),
            verdicts,
            serde_json::json!({ "extraction": ex, "verdict": verdict }),
        )
    }
}

fn target_distribution(class: &HypothesisClass, target: usize) -> Result<FiniteDistribution<learnability::Label>> {
    Ok(FiniteDistribution::from_class_row(class, target, uniform_weights(class.domain_size()))?)
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct GsArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Row labelling the uniform distribution over the domain.
    #[arg(long, default_value_t = 0)]
    #[serde(default)]
    pub target: usize,
    #[arg(long, default_value_t = 0.1)]
    pub alpha: f64,
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    #[serde(default)]
    pub seed: u64,
}

impl GsArgs {
    fn run(&self) -> Result<RunReport> {
        let class = multiclass(&self.input)?;
        let dist = target_distribution(&class, self.target)?;
        let est = estimate_stability(&class, &dist, self.alpha, self.trials, self.seed)?;
        // Three binomial standard deviations below the stability bound.
        let slack = 3.0 * (est.bound * (1.0 - est.bound) / self.trials as f64).sqrt();
        let verdicts = vec![
            Verdict::at_least("modal_frequency", est.modal_frequency, est.bound - slack),
            Verdict::at_most(
                "modal_population_loss",
                est.modal_population_loss.unwrap_or(f64::INFINITY),
                self.alpha,
            ),
        ];
        report("gs", format!("{}-{}", stem_of("gs", &self.input), self.seed), verdicts, &est)
    }
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct DpLearnArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, default_value_t = 0)]
    #[serde(default)]
    pub target: usize,
    #[arg(long)]
    pub epsilon: f64,
    #[arg(long)]
    pub delta: f64,
    #[arg(long)]
    pub alpha: f64,
    #[arg(long)]
    pub beta: f64,
    #[arg(long, default_value_t = 0)]
    #[serde(default)]
    pub seed: u64,
    /// Discretization scale, required for real-valued inputs.
    #[arg(long)]
    pub gamma: Option<f64>,
}

impl DpLearnArgs {
    fn run(&self) -> Result<RunReport> {
        let privacy = PrivacyParams::approximate(self.epsilon, self.delta)?;
        let stem = format!("{}-{}", stem_of("dp-learn", &self.input), self.seed);
        match load(&self.input)? {
            AnyClass::Multiclass(c) => {
                let dist = target_distribution(&c, self.target)?;
                let r = private_learn_mc(&c, &dist, privacy, self.alpha, self.beta, self.seed)?;
                let verdicts = vec![
                    Verdict::holds("ledger_balances", r.ledger.balances()),
                    Verdict::at_most("pruned_list", r.pruned as f64, 2.0 / r.eta),
                    Verdict::at_most("population_loss", r.population_loss.unwrap_or(f64::INFINITY), self.alpha),
                ];
                report("dp-learn", stem, verdicts, &r)
            }
            AnyClass::Real(f) => {
                let gamma = self.gamma.ok_or_else(|| anyhow!("real-valued inputs need --gamma"))?;
                let dist = FiniteDistribution::from_real_row(&f, self.target, uniform_weights(f.domain_size()))?;
                let r = private_learn_reg(&f, &dist, gamma, privacy, self.alpha, self.beta, self.seed)?;
                let verdicts = vec![
                    Verdict::holds("ledger_balances", r.inner.ledger.balances()),
                    Verdict::at_most("pruned_list", r.inner.pruned as f64, 2.0 / r.inner.eta),
                    Verdict::at_most("absolute_loss", r.absolute_loss.unwrap_or(f64::INFINITY), r.loss_bound),
                ];
                report("dp-learn", stem, verdicts, &r)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct CheckArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_delimiter = ',', default_value = "0.1,0.25,0.5")]
    #[serde(default = "default_scales")]
    pub scales: Vec<f64>,
}

fn default_scales() -> Vec<f64> {
    vec![0.1, 0.25, 0.5]
}

impl CheckArgs {
    fn run(&self) -> Result<RunReport> {
        let f = real(&self.input)?;
        let r = check_conditions(&f, &self.scales)?;
        // Covers that fail are findings, not errors; they stay in the result.
        let verdicts = vec![Verdict::holds("some_condition_holds", r.privately_learnable)];
        report("check", stem_of("check", &self.input), verdicts, &r)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GeneratorKind {
    Complete,
    Threshold,
    Constants,
    Random,
    RealConstants,
    Point,
    RandomReal,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct GenerateArgs {
    #[arg(long, value_enum)]
    pub kind: GeneratorKind,
    #[arg(long)]
    pub output: PathBuf,
    /// Points for complete, threshold and point classes.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub rows: Option<usize>,
    #[arg(long)]
    pub domain: Option<usize>,
    /// Label count K.
    #[arg(long)]
    pub labels: Option<u32>,
    /// Constant labels or constant values, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    #[serde(default)]
    pub values: Vec<f64>,
    /// Grid resolution for random real classes.
    #[arg(long)]
    pub q: Option<u32>,
    #[arg(long, default_value_t = 0)]
    #[serde(default)]
    pub seed: u64,
}

impl GenerateArgs {
    pub fn spec(&self) -> Result<ClassSpec> {
        let need = |v: Option<usize>, name: &str| v.ok_or_else(|| anyhow!("--kind {:?} needs --{name}", self.kind));
        Ok(match self.kind {
            GeneratorKind::Complete => ClassSpec::Complete { n: need(self.n, "n")? },
            GeneratorKind::Threshold => ClassSpec::Threshold { n: need(self.n, "n")? },
            GeneratorKind::Point => ClassSpec::Point { n: need(self.n, "n")? },
            GeneratorKind::Constants => {
                let labels = self
                    .values
                    .iter()
                    .map(|&v| {
                        if v >= 1.0 && v.fract() == 0.0 {
                            Ok(v as u32)
                        } else {
                            Err(anyhow!("constant labels must be positive integers, got {v}"))
                        }
                    })
                    .collect::<Result<Vec<u32>>>()?;
                let max = labels.iter().copied().max().unwrap_or(1);
                ClassSpec::Constants {
                    labels,
                    num_labels: self.labels.unwrap_or(max),
                    domain: need(self.domain, "domain")?,
                }
            }
            GeneratorKind::Random => ClassSpec::Random {
                rows: need(self.rows, "rows")?,
                domain: need(self.domain, "domain")?,
                num_labels: self.labels.ok_or_else(|| anyhow!("--kind random needs --labels"))?,
                seed: self.seed,
            },
            GeneratorKind::RealConstants => ClassSpec::RealConstants {
                values: self.values.clone(),
                domain: need(self.domain, "domain")?,
            },
            GeneratorKind::RandomReal => ClassSpec::RandomReal {
                rows: need(self.rows, "rows")?,
                domain: need(self.domain, "domain")?,
                q: self.q.ok_or_else(|| anyhow!("--kind random-real needs --q"))?,
                seed: self.seed,
            },
        })
    }

    fn run(&self) -> Result<RunReport> {
        let spec = self.spec()?;
        let class = spec.build()?;
        if let Some(dir) = self.output.parent().filter(|d| !d.as_os_str().is_empty()) {
            std::fs::create_dir_all(dir)?;
        }
        write_class(&self.output, &class)?;
        let again = read_class(&self.output)?;
        let verdicts = vec![Verdict::holds("round_trip", again == class)];
        report(
            "generate",
            stem_of("generate", &self.output),
            verdicts,
            serde_json::json!({
                "spec": spec,
                "path": self.output,
                "rows": class.len(),
                "domain_size": class.domain_size(),
            }),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct ExperimentArgs {
    #[arg(long)]
    pub config: PathBuf,
}
