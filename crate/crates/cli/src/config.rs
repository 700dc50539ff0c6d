//! TOML run configuration.
//!
//! ```toml
//! order = 16
//! digits = 12
//! fetch = false
//! cache_dir = "/tmp/fibprod-cache"
//! default_profile = "pell"
//!
//! [profiles.mine]
//! a = "3/2"
//! b = -1
//! ```

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use fibprod_core::{Rational, SequenceParams};
use serde::Deserialize;

use crate::error::CliError;

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum Number {
    Int(i64),
    Text(String),
}

impl Number {
    fn to_rational(&self) -> Result<Rational, String> {
        match self {
            Number::Int(n) => Ok(Rational::from_integer((*n).into())),
            Number::Text(s) => parse_rational(s),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProfileFile {
    a: Number,
    b: Number,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    order: Option<usize>,
    digits: Option<u32>,
    fetch: Option<bool>,
    cache_dir: Option<PathBuf>,
    default_profile: Option<String>,
    #[serde(default)]
    profiles: BTreeMap<String, ProfileFile>,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub profiles: BTreeMap<String, SequenceParams>,
    pub default_profile: String,
    pub order: usize,
    pub digits: u32,
    pub fetch: bool,
    pub cache_dir: PathBuf,
}

/// `p`, `-p`, `p/q`.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let t = s.trim();
    t.parse::<Rational>().map_err(|_| format!("`{s}` is not a rational number"))
}

fn builtin_profiles() -> BTreeMap<String, SequenceParams> {
    [("fibonacci", 1, 1), ("pell", 2, 1), ("jacobsthal", 1, 2)]
        .into_iter()
        .map(|(n, a, b)| (n.to_string(), SequenceParams::from_ints(a, b).expect("valid built-in")))
        .collect()
}

fn default_cache_dir() -> PathBuf {
    if let Some(p) = std::env::var_os("FIBPROD_CACHE_DIR") {
        return PathBuf::from(p);
    }
    if let Some(p) = std::env::var_os("XDG_CACHE_HOME") {
        return PathBuf::from(p).join("fibprod");
    }
    match std::env::var_os("HOME") {
        Some(h) => PathBuf::from(h).join(".cache").join("fibprod"),
        None => std::env::temp_dir().join("fibprod-cache"),
    }
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            profiles: builtin_profiles(),
            default_profile: "fibonacci".into(),
            order: 16,
            digits: 12,
            fetch: false,
            cache_dir: default_cache_dir(),
        }
    }
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        let file: ConfigFile = toml::from_str(text).map_err(|e| CliError::Usage(format!("config: {e}")))?;
        let mut cfg = RunConfig::default();
        for (name, p) in file.profiles {
            let bad = |m: String| CliError::Usage(format!("config: profile `{name}`: {m}"));
            let a = p.a.to_rational().map_err(bad)?;
            let b = p.b.to_rational().map_err(bad)?;
            let params = SequenceParams::new(a, b).map_err(|e| bad(e.to_string()))?;
            cfg.profiles.insert(name, params);
        }
        if let Some(o) = file.order {
            cfg.order = o;
        }
        if let Some(d) = file.digits {
            if d == 0 {
                return Err(CliError::Usage("config: digits must be positive".into()));
            }
            cfg.digits = d;
        }
        if let Some(f) = file.fetch {
            cfg.fetch = f;
        }
        if let Some(c) = file.cache_dir {
            cfg.cache_dir = c;
        }
        if let Some(p) = file.default_profile {
            if !cfg.profiles.contains_key(&p) {
                return Err(CliError::Usage(format!("config: default_profile `{p}` is not defined")));
            }
            cfg.default_profile = p;
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Environment(format!("cannot read config {}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    pub fn profile(&self, name: &str) -> Result<&SequenceParams, CliError> {
        self.profiles.get(name).ok_or_else(|| {
            let known: Vec<&str> = self.profiles.keys().map(String::as_str).collect();
            CliError::Usage(format!("unknown profile `{name}` (known: {})", known.join(", ")))
        })
    }
}
