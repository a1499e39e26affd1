//! `adr-sim` command-line driver.
//!
//! Subcommands: `ingest`, `flux`, `campaign`, `token`, `synth`. Settings
//! resolve as built-in defaults, then a `--config-file` of `key = value`
//! lines, then `--config key=value` pairs, then dedicated flags.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 parse or usage error,
//! 3 propagation failure, 4 more iterations than objects, 5 ledger error.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use sha2::{Digest, Sha256};

use crate::campaign::{run_campaign, CampaignError, DEFAULT_ITERATIONS};
use crate::catalogue::{parse_catalogue_csv_labeled, parse_tle, Catalogue};
use crate::flux::{accumulate_flux, flux_histogram, histogram_to_csv, FluxConfig, FluxError};
use crate::ledger::{DisposalProof, Ledger, LedgerError, ValueSchedule};
use crate::pricing::{BudgetState, Cents, PricingPolicy, ScheduleStep, TokenQuote};
use crate::propagation::PerturbationMode;
use crate::synth::{synthetic_catalogue, SynthConfig};
use crate::time::{DEFAULT_HORIZON_DAYS, DEFAULT_TOKEN_LIFETIME, QUOTE_VALIDITY, SECONDS_PER_DAY};

pub const EXIT_IO: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_PROPAGATION: i32 = 3;
pub const EXIT_ITERATIONS: i32 = 4;
pub const EXIT_LEDGER: i32 = 5;

const VERSION: &str = env!("CARGO_PKG_VERSION");

/// A failure with the exit code it maps to.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }

    fn io(path: &Path, e: std::io::Error) -> Self {
        Self::new(EXIT_IO, format!("{}: {e}", path.display()))
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<LedgerError> for CliError {
    fn from(e: LedgerError) -> Self {
        Self::new(EXIT_LEDGER, format!("{}: {e}", e.name()))
    }
}

impl From<FluxError> for CliError {
    fn from(e: FluxError) -> Self {
        let code = match e {
            FluxError::Propagation { .. } => EXIT_PROPAGATION,
            _ => EXIT_PARSE,
        };
        Self::new(code, e.to_string())
    }
}

impl From<CampaignError> for CliError {
    fn from(e: CampaignError) -> Self {
        match e {
            CampaignError::Flux(f) => f.into(),
            CampaignError::TooManyIterations { .. } => Self::new(EXIT_ITERATIONS, e.to_string()),
            other => Self::new(EXIT_PARSE, other.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "adr-sim", version, about = "Collision-flux simulation and POD token ledger")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate a TLE or CSV catalogue and write canonical CSV.
    Ingest(IngestArgs),
    /// Accumulate collision flux and write flux.csv and hist.csv.
    Flux(FluxArgs),
    /// Run a greedy removal campaign and write campaign.csv and quotes.jsonl.
    Campaign(CampaignArgs),
    /// Issue, transfer, value or verify POD tokens.
    Token(TokenArgs),
    /// Generate a seeded synthetic catalogue.
    Synth(SynthArgs),
}

#[derive(Debug, Args)]
pub struct IngestArgs {
    #[arg(long, conflicts_with = "csv", required_unless_present = "csv")]
    pub tle: Option<PathBuf>,
    #[arg(long)]
    pub csv: Option<PathBuf>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct ConfigArgs {
    /// File of `key = value` lines.
    #[arg(long)]
    pub config_file: Option<PathBuf>,
    /// `key=value` override; repeatable.
    #[arg(long = "config", value_name = "KEY=VALUE")]
    pub config: Vec<String>,
    #[arg(long)]
    pub cell_size_km: Option<f64>,
    #[arg(long)]
    pub horizon_days: Option<f64>,
    #[arg(long)]
    pub step_seconds: Option<f64>,
    #[arg(long)]
    pub perturbation: Option<PerturbationMode>,
    #[arg(long)]
    pub weight_by_cross_section: bool,
    /// Worker-count hint; never changes results.
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Debug, Args)]
pub struct FluxArgs {
    #[arg(long)]
    pub catalogue: PathBuf,
    #[command(flatten)]
    pub config: ConfigArgs,
    #[arg(long, default_value_t = 20)]
    pub bins: usize,
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
}

#[derive(Debug, Args)]
pub struct CampaignArgs {
    #[arg(long)]
    pub catalogue: PathBuf,
    #[command(flatten)]
    pub config: ConfigArgs,
    #[arg(long)]
    pub iterations: Option<usize>,
    #[arg(long)]
    pub policy: Option<PricingPolicy>,
    #[arg(long)]
    pub budget_usd: Option<f64>,
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    #[arg(long)]
    pub objects: usize,
    #[arg(long, default_value_t = 3)]
    pub clusters: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct TokenArgs {
    #[command(subcommand)]
    pub action: TokenAction,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum KindArg {
    Rot,
    Mot,
    MotThenRot,
}

#[derive(Debug, Subcommand)]
pub enum TokenAction {
    /// Issue a token against a disposal proof. Prints the token id.
    Issue(IssueArgs),
    /// Transfer a token. Prints the new entry's sequence number.
    Transfer {
        #[arg(long)]
        ledger: PathBuf,
        #[arg(long)]
        token: String,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        /// Unix seconds.
        #[arg(long)]
        at: i64,
    },
    /// Print a token's value in USD at a time.
    Value {
        #[arg(long)]
        ledger: PathBuf,
        #[arg(long)]
        token: String,
        #[arg(long)]
        at: i64,
    },
    /// Replay the log and check the digest chain.
    Verify {
        #[arg(long)]
        ledger: PathBuf,
    },
}

#[derive(Debug, Args)]
pub struct IssueArgs {
    #[arg(long)]
    pub ledger: PathBuf,
    /// Quote JSON (one object, or JSON lines as written by `campaign`).
    #[arg(long)]
    pub quote: Option<PathBuf>,
    #[arg(long)]
    pub object: Option<String>,
    /// Quoted value when no quote file is given.
    #[arg(long)]
    pub value_usd: Option<f64>,
    #[arg(long)]
    pub quoted_at: Option<i64>,
    #[arg(long)]
    pub remover: String,
    #[arg(long)]
    pub disposed_at: i64,
    #[arg(long)]
    pub evidence: Option<String>,
    #[arg(long, value_enum, default_value = "rot")]
    pub kind: KindArg,
    #[arg(long)]
    pub schedule_step: Option<ScheduleStep>,
    #[arg(long, default_value_t = 0.0)]
    pub growth_rate: f64,
    /// Days after disposal at which MOT_THEN_ROT starts declining.
    #[arg(long)]
    pub milestone_days: Option<i64>,
    #[arg(long)]
    pub config_file: Option<PathBuf>,
}

/// Every tunable, after precedence has been applied.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub cell_size_km: f64,
    pub horizon_days: f64,
    pub step_seconds: f64,
    pub perturbation: PerturbationMode,
    pub weight_by_cross_section: bool,
    pub iterations: usize,
    pub policy: PricingPolicy,
    pub budget_usd: f64,
    pub schedule_step: ScheduleStep,
    pub seed: u64,
    pub threads: Option<usize>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            cell_size_km: 10.0 / 3.0,
            horizon_days: DEFAULT_HORIZON_DAYS as f64,
            step_seconds: SECONDS_PER_DAY as f64,
            perturbation: PerturbationMode::J2Secular,
            weight_by_cross_section: false,
            iterations: DEFAULT_ITERATIONS,
            policy: PricingPolicy::Division,
            budget_usd: 3.2e12,
            schedule_step: ScheduleStep::Yearly,
            seed: 0,
            threads: None,
        }
    }
}

impl RunConfig {
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        fn num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T, String> {
            v.parse().map_err(|_| format!("`{key}`: cannot parse `{v}`"))
        }
        match key {
            "cell_size_km" => self.cell_size_km = num(key, value)?,
            "horizon_days" => self.horizon_days = num(key, value)?,
            "step_seconds" => self.step_seconds = num(key, value)?,
            "perturbation" | "perturbation_mode" => self.perturbation = value.parse()?,
            "weight_by_cross_section" => self.weight_by_cross_section = num(key, value)?,
            "iterations" => self.iterations = num(key, value)?,
            "policy" => self.policy = value.parse()?,
            "budget_usd" => self.budget_usd = num(key, value)?,
            "schedule_step" => self.schedule_step = value.parse()?,
            "seed" => self.seed = num(key, value)?,
            "threads" => self.threads = Some(num(key, value)?),
            other => return Err(format!("unknown config key `{other}`")),
        }
        Ok(())
    }

    /// Applies `key = value` lines; `#` starts a comment.
    pub fn apply_file_text(&mut self, text: &str) -> Result<(), String> {
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| format!("line {}: expected `key = value`", n + 1))?;
            self.set(k.trim(), v.trim())
                .map_err(|e| format!("line {}: {e}", n + 1))?;
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), String> {
        let positive = [
            ("cell_size_km", self.cell_size_km),
            ("horizon_days", self.horizon_days),
            ("step_seconds", self.step_seconds),
            ("budget_usd", self.budget_usd),
        ];
        for (name, v) in positive {
            if !(v.is_finite() && v > 0.0) {
                return Err(format!("`{name}` must be positive"));
            }
        }
        if self.iterations == 0 {
            return Err("`iterations` must be positive".into());
        }
        if self.threads == Some(0) {
            return Err("`threads` must be positive".into());
        }
        Ok(())
    }

    pub fn flux_config(&self) -> FluxConfig {
        FluxConfig {
            cell_size: self.cell_size_km,
            horizon: self.horizon_days * SECONDS_PER_DAY as f64,
            step: self.step_seconds,
            perturbation_mode: self.perturbation,
            weight_by_cross_section: self.weight_by_cross_section,
            start_epoch: None,
        }
    }

    /// Result-affecting settings as sorted `key=value` lines. `threads` is
    /// excluded because it never changes outputs.
    pub fn canonical(&self) -> String {
        let mut m = BTreeMap::new();
        m.insert("budget_usd", self.budget_usd.to_string());
        m.insert("cell_size_km", self.cell_size_km.to_string());
        m.insert("horizon_days", self.horizon_days.to_string());
        m.insert("iterations", self.iterations.to_string());
        m.insert("perturbation", self.perturbation.to_string());
        m.insert("policy", self.policy.to_string());
        m.insert("schedule_step", self.schedule_step.to_string());
        m.insert("seed", self.seed.to_string());
        m.insert("step_seconds", self.step_seconds.to_string());
        m.insert("weight_by_cross_section", self.weight_by_cross_section.to_string());
        m.into_iter().map(|(k, v)| format!("{k}={v}\n")).collect()
    }

    pub fn digest(&self) -> String {
        hex::encode(Sha256::digest(self.canonical().as_bytes()))
    }
}

fn resolve(args: &ConfigArgs) -> Result<RunConfig, CliError> {
    let mut cfg = RunConfig::default();
    if let Some(path) = &args.config_file {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        cfg.apply_file_text(&text)
            .map_err(|e| CliError::new(EXIT_PARSE, format!("{}: {e}", path.display())))?;
    }
    for pair in &args.config {
        let (k, v) = pair
            .split_once('=')
            .ok_or_else(|| CliError::new(EXIT_PARSE, format!("--config `{pair}`: expected key=value")))?;
        cfg.set(k.trim(), v.trim())
            .map_err(|e| CliError::new(EXIT_PARSE, e))?;
    }
    if let Some(v) = args.cell_size_km {
        cfg.cell_size_km = v;
    }
    if let Some(v) = args.horizon_days {
        cfg.horizon_days = v;
    }
    if let Some(v) = args.step_seconds {
        cfg.step_seconds = v;
    }
    if let Some(v) = args.perturbation {
        cfg.perturbation = v;
    }
    if args.weight_by_cross_section {
        cfg.weight_by_cross_section = true;
    }
    if let Some(v) = args.threads {
        cfg.threads = Some(v);
    }
    Ok(cfg)
}

fn provenance(cfg: &RunConfig) -> String {
    format!("# adr-sim {VERSION} config={}\n", &cfg.digest()[..16])
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    }
    std::fs::write(path, contents).map_err(|e| CliError::io(path, e))
}

fn load_catalogue(path: &Path) -> Result<Catalogue, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_catalogue_csv_labeled(&text, &path.display().to_string())
        .map_err(|e| CliError::new(EXIT_PARSE, format!("{}: {e}", path.display())))
}

fn with_threads<T: Send>(
    threads: Option<usize>,
    f: impl FnOnce() -> T + Send,
) -> Result<T, CliError> {
    match threads {
        None => Ok(f()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| CliError::new(EXIT_IO, e.to_string()))?;
            Ok(pool.install(f))
        }
    }
}

pub fn command_ingest(args: &IngestArgs) -> Result<(), CliError> {
    let (path, is_tle) = match (&args.tle, &args.csv) {
        (Some(p), _) => (p, true),
        (None, Some(p)) => (p, false),
        (None, None) => return Err(CliError::new(EXIT_PARSE, "one of --tle or --csv is required")),
    };
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let label = path.display().to_string();
    let parsed = if is_tle {
        parse_tle(&text)
    } else {
        parse_catalogue_csv_labeled(&text, &label)
    };
    let catalogue =
        parsed.map_err(|e| CliError::new(EXIT_PARSE, format!("{}: {e}", path.display())))?;
    let header = provenance(&RunConfig::default());
    write_file(&args.out, &(header + &catalogue.to_csv()))
}

pub fn command_flux(args: &FluxArgs) -> Result<(), CliError> {
    let cfg = resolve(&args.config)?;
    cfg.validate().map_err(|e| CliError::new(EXIT_PARSE, e))?;
    let catalogue = load_catalogue(&args.catalogue)?;
    let flux_cfg = cfg.flux_config();
    let table = with_threads(cfg.threads, || accumulate_flux(&catalogue, &flux_cfg))??;
    let hist = flux_histogram(&table, args.bins)?;
    let header = provenance(&cfg);
    write_file(&args.out_dir.join("flux.csv"), &(header.clone() + &table.to_csv()))?;
    write_file(&args.out_dir.join("hist.csv"), &(header + &histogram_to_csv(&hist)))
}

pub fn command_campaign(args: &CampaignArgs) -> Result<(), CliError> {
    let mut cfg = resolve(&args.config)?;
    if let Some(n) = args.iterations {
        cfg.iterations = n;
    }
    if let Some(p) = args.policy {
        cfg.policy = p;
    }
    if let Some(b) = args.budget_usd {
        cfg.budget_usd = b;
    }
    cfg.validate().map_err(|e| CliError::new(EXIT_PARSE, e))?;
    let catalogue = load_catalogue(&args.catalogue)?;
    let budget = Cents::from_usd(cfg.budget_usd)
        .and_then(|c| BudgetState::new(c).ok())
        .ok_or_else(|| CliError::new(EXIT_PARSE, "invalid budget"))?;
    let flux_cfg = cfg.flux_config();
    let report = with_threads(cfg.threads, || {
        run_campaign(&catalogue, cfg.iterations, cfg.policy, &flux_cfg, budget)
    })??;
    let header = provenance(&cfg);
    write_file(&args.out_dir.join("campaign.csv"), &(header + &report.to_csv()))?;
    write_file(&args.out_dir.join("quotes.jsonl"), &report.quotes_jsonl())
}

pub fn command_synth(args: &SynthArgs) -> Result<(), CliError> {
    if args.clusters == 0 {
        return Err(CliError::new(EXIT_PARSE, "--clusters must be positive"));
    }
    let catalogue = synthetic_catalogue(&SynthConfig::new(args.objects, args.clusters, args.seed))
        .map_err(|e| CliError::new(EXIT_PARSE, e.to_string()))?;
    let cfg = RunConfig {
        seed: args.seed,
        ..RunConfig::default()
    };
    write_file(&args.out, &(provenance(&cfg) + &catalogue.to_csv()))
}

fn read_quote(path: &Path, object: Option<&str>) -> Result<TokenQuote, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let mut quotes = Vec::new();
    for (n, line) in text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
        let q = TokenQuote::from_json(line).map_err(|e| {
            CliError::new(EXIT_PARSE, format!("{}:{}: {e}", path.display(), n + 1))
        })?;
        quotes.push(q);
    }
    let mut matching = quotes
        .into_iter()
        .filter(|q| object.is_none_or(|o| q.object_id == o));
    match (matching.next(), matching.next()) {
        (Some(q), None) => Ok(q),
        (None, _) => Err(CliError::new(EXIT_PARSE, "no matching quote")),
        (Some(_), Some(_)) => Err(CliError::new(EXIT_PARSE, "several quotes match; pass --object")),
    }
}

fn command_issue(args: &IssueArgs) -> Result<String, CliError> {
    let mut cfg = RunConfig::default();
    if let Some(path) = &args.config_file {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        cfg.apply_file_text(&text)
            .map_err(|e| CliError::new(EXIT_PARSE, format!("{}: {e}", path.display())))?;
    }
    let step = args.schedule_step.unwrap_or(cfg.schedule_step).seconds();
    let quote = match (&args.quote, &args.value_usd, &args.object) {
        (Some(path), _, object) => read_quote(path, object.as_deref())?,
        (None, Some(usd), Some(object)) => {
            let quoted_at = args.quoted_at.unwrap_or(args.disposed_at);
            TokenQuote {
                object_id: object.clone(),
                initial_value: Cents::from_usd(*usd)
                    .filter(|c| c.0 >= 0)
                    .ok_or_else(|| CliError::new(EXIT_PARSE, "invalid --value-usd"))?,
                lifetime: DEFAULT_TOKEN_LIFETIME,
                quoted_at,
                valid_until: quoted_at + QUOTE_VALIDITY,
                policy: cfg.policy,
            }
        }
        _ => {
            return Err(CliError::new(
                EXIT_PARSE,
                "pass --quote FILE, or --object with --value-usd",
            ))
        }
    };
    let initial = quote.initial_value;
    let schedule = match args.kind {
        KindArg::Rot => ValueSchedule::rot(initial, quote.lifetime, step),
        KindArg::Mot => ValueSchedule::mot(initial, args.growth_rate, step),
        KindArg::MotThenRot => {
            let milestone = args
                .milestone_days
                .ok_or_else(|| CliError::new(EXIT_PARSE, "--milestone-days is required"))?;
            ValueSchedule::mot_then_rot(
                initial,
                args.growth_rate,
                step,
                milestone * SECONDS_PER_DAY,
                quote.lifetime,
            )
        }
    }
    .map_err(LedgerError::from)?;
    let evidence = args.evidence.clone().unwrap_or_else(|| {
        let text = format!("{}|{}|{}", quote.object_id, args.remover, args.disposed_at);
        hex::encode(Sha256::digest(text.as_bytes()))
    });
    let proof = DisposalProof {
        object_id: quote.object_id.clone(),
        remover_id: args.remover.clone(),
        disposed_at: args.disposed_at,
        evidence_digest: evidence,
    };
    let mut ledger = Ledger::open(&args.ledger)?;
    Ok(ledger.issue(proof, quote, schedule)?)
}

/// Runs a token action and returns what it prints on stdout.
pub fn command_token(args: &TokenArgs) -> Result<String, CliError> {
    match &args.action {
        TokenAction::Issue(a) => command_issue(a),
        TokenAction::Transfer {
            ledger,
            token,
            from,
            to,
            at,
        } => {
            let mut l = Ledger::open(ledger)?;
            Ok(l.transfer(token, from, to, *at)?.to_string())
        }
        TokenAction::Value { ledger, token, at } => {
            let mut l = Ledger::open(ledger)?;
            Ok(l.value(token, *at)?.to_string())
        }
        TokenAction::Verify { ledger } => {
            let bytes = std::fs::read(ledger).map_err(|e| CliError::io(ledger, e))?;
            let l = Ledger::from_log(&bytes)?;
            Ok(format!("ok {} entries head {}", l.entries().len(), l.head_digest()))
        }
    }
}

pub fn execute(cli: &Cli) -> Result<Option<String>, CliError> {
    match &cli.command {
        Command::Ingest(a) => command_ingest(a).map(|_| None),
        Command::Flux(a) => command_flux(a).map(|_| None),
        Command::Campaign(a) => command_campaign(a).map(|_| None),
        Command::Token(a) => command_token(a).map(Some),
        Command::Synth(a) => command_synth(a).map(|_| None),
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code. Diagnostics go to stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_PARSE } else { 0 };
        }
    };
    match execute(&cli) {
        Ok(Some(out)) => {
            println!("{out}");
            0
        }
        Ok(None) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_precedence_and_parsing() {
        let mut cfg = RunConfig::default();
        cfg.apply_file_text("# comment\ncell_size_km = 5 # inline\n\npolicy = coefficient\n")
            .unwrap();
        assert_eq!(cfg.cell_size_km, 5.0);
        assert_eq!(cfg.policy, PricingPolicy::Coefficient);
        assert!(cfg.apply_file_text("bogus = 1").is_err());
        assert!(cfg.apply_file_text("novalue").is_err());
        assert!(cfg.set("horizon_days", "abc").is_err());
    }

    #[test]
    fn defaults_match_simulation_constants() {
        let cfg = RunConfig::default();
        assert_eq!(cfg.flux_config(), FluxConfig::default());
        assert_eq!(cfg.iterations, 50);
        assert_eq!(Cents::from_usd(cfg.budget_usd), Some(crate::pricing::DEFAULT_BUDGET));
    }

    #[test]
    fn threads_do_not_affect_digest() {
        let a = RunConfig::default();
        let b = RunConfig {
            threads: Some(8),
            ..RunConfig::default()
        };
        assert_eq!(a.digest(), b.digest());
        let c = RunConfig {
            seed: 9,
            ..RunConfig::default()
        };
        assert_ne!(a.digest(), c.digest());
    }

    #[test]
    fn validation() {
        let cfg = RunConfig {
            step_seconds: 0.0,
            ..RunConfig::default()
        };
        assert!(cfg.validate().is_err());
        let cfg = RunConfig {
            threads: Some(0),
            ..RunConfig::default()
        };
        assert!(cfg.validate().is_err());
    }
}
