//! Run configuration: a JSON file, command-line overrides, and validation.

use std::fmt;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;
use twistvo::unitary::CharacterSpec;
use twistvo::{Mutation, Scalar};

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot parse config {path}: {source}")]
    Parse {
        path: PathBuf,
        source: serde_json::Error,
    },
    #[error("{0}")]
    Invalid(String),
}

fn invalid(msg: impl Into<String>) -> ConfigError {
    ConfigError::Invalid(msg.into())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Delta,
    Thm215,
    Rho,
    Clifford,
    Hermitian,
    Lemma41,
    Thm44,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Delta,
        Suite::Thm215,
        Suite::Rho,
        Suite::Clifford,
        Suite::Hermitian,
        Suite::Lemma41,
        Suite::Thm44,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Delta => "delta",
            Suite::Thm215 => "thm215",
            Suite::Rho => "rho",
            Suite::Clifford => "clifford",
            Suite::Hermitian => "hermitian",
            Suite::Lemma41 => "lemma41",
            Suite::Thm44 => "thm44",
        }
    }

    pub fn parse(s: &str) -> Result<Suite, ConfigError> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Suite::ALL.iter().map(|x| x.name()).collect();
                invalid(format!(
                    "unknown suite `{}` (expected one of {})",
                    s,
                    names.join(", ")
                ))
            })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Scalar regimes for the commutator formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    /// `a = b = 1`.
    Unit,
    /// `a = ζ_3`, `b = ζ_3²`.
    Zeta3,
    /// `a = b = ζ_4`.
    Zeta4,
    /// `a`, `b` the first two declared parameters.
    Formal,
}

impl Regime {
    pub const ALL: [Regime; 4] = [Regime::Unit, Regime::Zeta3, Regime::Zeta4, Regime::Formal];

    pub fn name(self) -> &'static str {
        match self {
            Regime::Unit => "unit",
            Regime::Zeta3 => "zeta3",
            Regime::Zeta4 => "zeta4",
            Regime::Formal => "formal",
        }
    }

    pub fn parse(s: &str) -> Result<Regime, ConfigError> {
        Regime::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| invalid(format!("unknown regime `{}`", s)))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Table,
}

impl Format {
    pub fn parse(s: &str) -> Result<Format, ConfigError> {
        match s {
            "json" => Ok(Format::Json),
            "table" => Ok(Format::Table),
            _ => Err(invalid(format!(
                "unknown format `{}` (expected json or table)",
                s
            ))),
        }
    }
}

/// The on-disk configuration. Every field is optional; see [`RunConfig`] for defaults.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub suites: Option<Vec<String>>,
    pub nu: Option<u32>,
    pub depth: Option<u32>,
    pub window: Option<u32>,
    pub group: Option<String>,
    pub sigma: Option<String>,
    pub params: Option<Vec<String>>,
    pub report: Option<PathBuf>,
    pub format: Option<String>,
    pub mutation: Option<String>,
    pub regimes: Option<Vec<String>>,
    pub timing: Option<bool>,
    pub seed: Option<u64>,
    pub triples: Option<usize>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<ConfigFile, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Read {
            path: path.into(),
            source,
        })?;
        serde_json::from_str(&text).map_err(|source| ConfigError::Parse {
            path: path.into(),
            source,
        })
    }

    /// Fields set in `over` replace those in `self`; repeated flags replace lists.
    pub fn merge(self, over: ConfigFile) -> ConfigFile {
        ConfigFile {
            suites: over.suites.or(self.suites),
            nu: over.nu.or(self.nu),
            depth: over.depth.or(self.depth),
            window: over.window.or(self.window),
            group: over.group.or(self.group),
            sigma: over.sigma.or(self.sigma),
            params: over.params.or(self.params),
            report: over.report.or(self.report),
            format: over.format.or(self.format),
            mutation: over.mutation.or(self.mutation),
            regimes: over.regimes.or(self.regimes),
            timing: over.timing.or(self.timing),
            seed: over.seed.or(self.seed),
            triples: over.triples.or(self.triples),
        }
    }
}

/// A validated run configuration.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub suites: Vec<Suite>,
    pub nu: usize,
    pub depth: u32,
    pub window: u32,
    pub group: Vec<u32>,
    pub sigma: Vec<SigmaValue>,
    pub params: Vec<String>,
    pub report: Option<PathBuf>,
    pub format: Format,
    pub mutation: Option<Mutation>,
    pub regimes: Vec<Regime>,
    pub timing: bool,
    pub seed: u64,
    pub triples: usize,
    pub chi: CharacterSpec,
}

/// A character value on one cyclic factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SigmaValue {
    /// `ζ_n^k`.
    Root {
        k: i64,
        n: u32,
    },
    Param(String),
}

impl SigmaValue {
    pub fn to_scalar(&self) -> Scalar {
        match self {
            SigmaValue::Root { n: 1, .. } => Scalar::one(),
            SigmaValue::Root { k, n } => Scalar::zeta(*n, *k),
            SigmaValue::Param(p) => Scalar::param(p),
        }
    }
}

impl fmt::Display for SigmaValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SigmaValue::Root { k, n } => write!(f, "{}/{}", k, n),
            SigmaValue::Param(p) => f.write_str(p),
        }
    }
}

pub const MAX_NU: u32 = 8;
pub const MAX_DEPTH: u32 = 12;

/// Parses `trivial`, `Z`, `Z/3`, `3`, `0`, or a comma-separated list of these.
pub fn parse_group(spec: &str) -> Result<Vec<u32>, ConfigError> {
    let spec = spec.trim();
    if spec.is_empty() || spec == "trivial" {
        return Ok(Vec::new());
    }
    spec.split(',')
        .map(|f| {
            let f = f.trim();
            let body = f.strip_prefix("Z/").unwrap_or(f);
            if body == "Z" {
                return Ok(0);
            }
            body.parse::<u32>()
                .map_err(|_| invalid(format!("bad group factor `{}`", f)))
        })
        .collect()
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Parses one value per factor: `k` for `ζ_n^k` on `Z/n`, `k/m` for `ζ_m^k`,
/// or a declared parameter name. `faithful` picks `ζ_n` on `Z/n` and a fresh
/// parameter on `Z`.
pub fn parse_sigma(
    spec: Option<&str>,
    group: &[u32],
    params: &mut Vec<String>,
) -> Result<Vec<SigmaValue>, ConfigError> {
    let spec = spec.map(str::trim).unwrap_or("faithful");
    if spec == "faithful" {
        let mut out = Vec::new();
        for (g, &n) in group.iter().enumerate() {
            if n == 0 {
                let name = if group.iter().filter(|&&x| x == 0).count() == 1 {
                    "s".to_string()
                } else {
                    format!("s{}", g + 1)
                };
                if !params.contains(&name) {
                    params.push(name.clone());
                }
                out.push(SigmaValue::Param(name));
            } else {
                out.push(SigmaValue::Root { k: 1, n });
            }
        }
        return Ok(out);
    }
    let parts: Vec<&str> = if spec.is_empty() {
        Vec::new()
    } else {
        spec.split(',').map(str::trim).collect()
    };
    if parts.len() != group.len() {
        return Err(invalid(format!(
            "sigma has {} values but the group has {} factors",
            parts.len(),
            group.len()
        )));
    }
    parts
        .iter()
        .zip(group)
        .map(|(p, &n)| {
            if let Some((k, m)) = p.split_once('/') {
                let k = k
                    .trim()
                    .parse::<i64>()
                    .map_err(|_| invalid(format!("bad sigma value `{}`", p)))?;
                let m = m
                    .trim()
                    .parse::<u32>()
                    .map_err(|_| invalid(format!("bad sigma value `{}`", p)))?;
                if m == 0 {
                    return Err(invalid(format!("bad sigma value `{}`", p)));
                }
                Ok(SigmaValue::Root { k, n: m })
            } else if let Ok(k) = p.parse::<i64>() {
                if n == 0 {
                    return Err(invalid(format!(
                        "sigma value `{}` on a Z factor needs the form k/m or a parameter",
                        p
                    )));
                }
                Ok(SigmaValue::Root { k, n })
            } else if is_identifier(p) {
                if !params.iter().any(|q| q == p) {
                    return Err(invalid(format!(
                        "parameter `{}` is not declared with --param",
                        p
                    )));
                }
                Ok(SigmaValue::Param(p.to_string()))
            } else {
                Err(invalid(format!("bad sigma value `{}`", p)))
            }
        })
        .collect()
}

impl RunConfig {
    pub fn from_file(file: ConfigFile) -> Result<RunConfig, ConfigError> {
        let suites = match &file.suites {
            Some(names) => {
                let mut out = Vec::new();
                for s in names {
                    let s = Suite::parse(s)?;
                    if !out.contains(&s) {
                        out.push(s);
                    }
                }
                out
            }
            None => Suite::ALL.to_vec(),
        };
        let nu = file.nu.unwrap_or(3);
        let depth = file.depth.unwrap_or(5);
        let window = file.window.unwrap_or(2);
        if !(2..=MAX_NU).contains(&nu) {
            return Err(invalid(format!("nu = {} is outside 2..={}", nu, MAX_NU)));
        }
        if window > depth || depth > MAX_DEPTH {
            return Err(invalid(format!(
                "need 0 <= window <= depth <= {}, got window = {} and depth = {}",
                MAX_DEPTH, window, depth
            )));
        }
        let group = parse_group(file.group.as_deref().unwrap_or("Z/3"))?;
        let mut params = file
            .params
            .clone()
            .unwrap_or_else(|| vec!["a".into(), "b".into()]);
        for p in &params {
            if !is_identifier(p) {
                return Err(invalid(format!("bad parameter name `{}`", p)));
            }
        }
        let sigma = parse_sigma(file.sigma.as_deref(), &group, &mut params)?;
        if params.len() > 24 {
            return Err(invalid("at most 24 formal parameters are supported"));
        }
        let chi = CharacterSpec::new(
            group.clone(),
            sigma.iter().map(SigmaValue::to_scalar).collect(),
        )
        .map_err(|e| invalid(format!("sigma: {}", e)))?;
        let format = match &file.format {
            Some(f) => Format::parse(f)?,
            None => Format::Json,
        };
        let mutation = match &file.mutation {
            Some(m) => Some(Mutation::from_name(m).ok_or_else(|| {
                let names: Vec<&str> = Mutation::ALL.iter().map(|m| m.name()).collect();
                invalid(format!(
                    "unknown mutation `{}` (expected one of {})",
                    m,
                    names.join(", ")
                ))
            })?),
            None => None,
        };
        let regimes = match &file.regimes {
            Some(rs) => rs
                .iter()
                .map(|r| Regime::parse(r))
                .collect::<Result<Vec<_>, _>>()?,
            None => Regime::ALL.to_vec(),
        };
        if regimes.contains(&Regime::Formal) && suites.contains(&Suite::Thm215) && params.len() < 2
        {
            return Err(invalid("the formal regime needs two declared parameters"));
        }
        Ok(RunConfig {
            suites,
            nu: nu as usize,
            depth,
            window,
            group,
            sigma,
            params,
            report: file.report.clone(),
            format,
            mutation,
            regimes,
            timing: file.timing.unwrap_or(true),
            seed: file.seed.unwrap_or(1),
            triples: file.triples.unwrap_or(1000),
            chi,
        })
    }

    /// The configuration as echoed in reports.
    pub fn echo(&self) -> serde_json::Value {
        let group: Vec<String> = self
            .group
            .iter()
            .map(|n| {
                if *n == 0 {
                    "Z".into()
                } else {
                    format!("Z/{}", n)
                }
            })
            .collect();
        serde_json::json!({
            "suites": self.suites.iter().map(|s| s.name()).collect::<Vec<_>>(),
            "nu": self.nu,
            "depth": self.depth,
            "window": self.window,
            "group": group,
            "sigma": self.sigma.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
            "sigma_values": self.chi.values().iter().map(|s| s.to_string()).collect::<Vec<_>>(),
            "params": self.params,
            "mutation": self.mutation.map(|m| m.name()),
            "regimes": self.regimes.iter().map(|r| r.name()).collect::<Vec<_>>(),
            "seed": self.seed,
            "triples": self.triples,
        })
    }
}
