//! Command-line driver for the twistvo checks.

pub mod config;
pub mod output;
pub mod run;

use std::path::PathBuf;

use clap::Parser;

use config::{ConfigError, ConfigFile, Format, RunConfig};

/// Exit code when every requested suite passes or is skipped.
pub const EXIT_PASS: i32 = 0;
/// Exit code when some check fails or a suite cannot run.
pub const EXIT_FAIL: i32 = 1;
/// Exit code for unreadable or invalid configuration.
pub const EXIT_CONFIG: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "verify",
    about = "Exact verification of twisted vertex operator identities"
)]
pub struct Cli {
    /// JSON config file; flags override its fields.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Suite to run (repeatable): delta, thm215, rho, clifford, hermitian, lemma41, thm44.
    #[arg(long = "suite", value_name = "NAME")]
    pub suites: Vec<String>,
    #[arg(long)]
    pub nu: Option<u32>,
    #[arg(long)]
    pub depth: Option<u32>,
    #[arg(long)]
    pub window: Option<u32>,
    /// Finite abelian group, e.g. `Z/3`, `Z/2,Z/3`, `Z`, `trivial`.
    #[arg(long)]
    pub group: Option<String>,
    /// Character values per factor: `k` (ζ_n^k), `k/m` (ζ_m^k), a parameter name, or `faithful`.
    #[arg(long)]
    pub sigma: Option<String>,
    /// Formal parameter name (repeatable).
    #[arg(long = "param", value_name = "NAME")]
    pub params: Vec<String>,
    /// Write the JSON report here as well.
    #[arg(long)]
    pub report: Option<PathBuf>,
    #[arg(long, value_name = "json|table")]
    pub format: Option<String>,
    /// Corrupt one ingredient to confirm the checks can fail.
    #[arg(long)]
    pub mutation: Option<String>,
    /// Scalar regime for the commutator formula (repeatable): unit, zeta3, zeta4, formal.
    #[arg(long = "regime", value_name = "NAME")]
    pub regimes: Vec<String>,
    /// Omit wall-clock times so reports are byte-for-byte reproducible.
    #[arg(long)]
    pub no_timing: bool,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Random triples for the bracket identities.
    #[arg(long)]
    pub triples: Option<usize>,
}

impl Cli {
    pub fn overrides(&self) -> ConfigFile {
        let list = |v: &Vec<String>| if v.is_empty() { None } else { Some(v.clone()) };
        ConfigFile {
            suites: list(&self.suites),
            nu: self.nu,
            depth: self.depth,
            window: self.window,
            group: self.group.clone(),
            sigma: self.sigma.clone(),
            params: list(&self.params),
            report: self.report.clone(),
            format: self.format.clone(),
            mutation: self.mutation.clone(),
            regimes: list(&self.regimes),
            timing: if self.no_timing { Some(false) } else { None },
            seed: self.seed,
            triples: self.triples,
        }
    }

    pub fn resolve(&self) -> Result<RunConfig, ConfigError> {
        let base = match &self.config {
            Some(path) => ConfigFile::load(path)?,
            None => ConfigFile::default(),
        };
        RunConfig::from_file(base.merge(self.overrides()))
    }
}

/// Runs the CLI to completion and returns the exit code.
pub fn main_with(cli: &Cli) -> i32 {
    let cfg = match cli.resolve() {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("verify: {}", e);
            return EXIT_CONFIG;
        }
    };
    let outcome = run::run(&cfg);
    let json = output::render_json(&cfg, &outcome);
    if let Some(path) = &cfg.report {
        if let Err(e) = std::fs::write(path, &json) {
            eprintln!("verify: cannot write report {}: {}", path.display(), e);
            return EXIT_CONFIG;
        }
    }
    match cfg.format {
        Format::Json => print!("{}", json),
        Format::Table => print!("{}", output::render_table(&cfg, &outcome)),
    }
    if outcome.passed() {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}
