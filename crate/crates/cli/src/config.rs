//! Run configuration, read from flags and from TOML or JSON files.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use vuf_algebra::DEFAULT_BUDGET;
use vuf_core::{Exponent, LeviSubset, Root, RootSystem, Validation, WenzelDatum, WeylGroup};

use crate::error::{CliError, Result};

/// A root written by name (`"-a-b"`) or by simple-root coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RootSpec {
    Coeffs(Vec<i32>),
    Name(String),
}

impl RootSpec {
    pub fn resolve(&self, sys: &RootSystem) -> Result<Root> {
        let text = match self {
            RootSpec::Coeffs(c) => format!("[{}]", c.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")),
            RootSpec::Name(s) => s.clone(),
        };
        Ok(sys.parse_root(&text)?)
    }
}

/// A profile exponent: a positive integer or `"inf"`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ProfileValue {
    Finite(u32),
    Word(String),
}

impl ProfileValue {
    pub fn exponent(&self) -> Result<Exponent> {
        match self {
            ProfileValue::Finite(n) => Ok(Some(*n)),
            ProfileValue::Word(w) => match w.trim() {
                "inf" | "infinity" | "∞" => Ok(None),
                other => other.parse().map(Some).map_err(|_| CliError::Config(format!("bad exponent `{other}`"))),
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Table,
}

/// Every field is optional so that a file can override any subset of the
/// command-line flags.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub system: Option<String>,
    /// Simple roots of the Levi, by name.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub levi: Option<Vec<String>>,
    /// Exponents of the negative simple roots, e.g. `{"-b" = 1}`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub profile: Option<BTreeMap<String, ProfileValue>>,
    #[serde(rename = "J", skip_serializing_if = "Option::is_none")]
    pub j: Option<Vec<RootSpec>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub validation: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub word: Option<String>,
    /// Fixed point `v`, or `all`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub at: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub element: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub levi_q: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub variety: Option<String>,
    /// `n` of the ambient `P^n × P̌^n`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ambient_dim: Option<usize>,
    /// `(i, j)` of a Schubert presentation.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub indices: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub untwisted: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certify_normality: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chart: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub count_points: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub variables: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub equations: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub projective: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub budget: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
}

macro_rules! overlay_fields {
    ($base:ident, $top:ident; $($field:ident),*) => {
        $(if $top.$field.is_some() { $base.$field = $top.$field; })*
    };
}

impl RunConfig {
    /// Fields set in `top` replace those of `self`.
    pub fn overlay(mut self, top: RunConfig) -> RunConfig {
        overlay_fields!(self, top; system, levi, profile, j, n, p, validation, word, at, element, levi_q, theta,
            variety, ambient_dim, indices, untwisted, certify_normality, chart, count_points, variables, equations,
            projective, budget, format, output);
        self
    }

    /// Reads `.json` files as JSON and everything else as TOML.
    pub fn load(path: &Path) -> Result<RunConfig> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
        if path.extension().is_some_and(|e| e == "json") {
            Self::from_json(&text)
        } else {
            Self::from_toml(&text)
        }
    }

    pub fn from_toml(text: &str) -> Result<RunConfig> {
        toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn from_json(text: &str) -> Result<RunConfig> {
        serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn group(&self) -> Result<WeylGroup> {
        let name = self.system.as_deref().ok_or_else(|| CliError::Usage("no root system given (--system)".into()))?;
        Ok(WeylGroup::from_name(name)?)
    }

    pub fn characteristic(&self) -> u64 {
        self.p.unwrap_or(2)
    }

    pub fn budget(&self) -> u128 {
        self.budget.map_or(DEFAULT_BUDGET, u128::from)
    }

    pub fn validation(&self) -> Result<Validation> {
        Ok(self.validation.as_deref().map(str::parse).transpose()?.unwrap_or_default())
    }

    pub fn levi(&self, sys: &RootSystem) -> Result<LeviSubset> {
        levi_from_names(sys, self.levi.as_deref().unwrap_or(&[]))
    }

    pub fn levi_q(&self, sys: &RootSystem) -> Result<LeviSubset> {
        let names = self.levi_q.as_deref().ok_or_else(|| CliError::Usage("no Levi of Q given (--levi-q)".into()))?;
        levi_from_names(sys, names)
    }

    /// Explicit `J` wins over a profile; with neither the datum is reduced.
    pub fn datum(&self, group: &WeylGroup) -> Result<WenzelDatum> {
        let sys = group.system();
        let p = self.characteristic();
        let levi = self.levi(sys)?;
        if let Some(j) = &self.j {
            let n = match &self.n {
                Some(n) if n.len() == j.len() => n.clone(),
                Some(n) => {
                    return Err(CliError::Config(format!("J has {} roots but n has {} exponents", j.len(), n.len())))
                }
                None => vec![1; j.len()],
            };
            let pairs = j.iter().zip(n).map(|(r, n)| Ok((r.resolve(sys)?, n))).collect::<Result<Vec<_>>>()?;
            return Ok(WenzelDatum::from_explicit(group, levi, &pairs, p, self.validation()?)?);
        }
        if let Some(profile) = &self.profile {
            if !levi.is_borel() {
                return Err(CliError::Usage("a profile describes data with P_red = B; use J with a Levi".into()));
            }
            let mut simple = BTreeMap::new();
            for (name, value) in profile {
                simple.insert(negative_simple_index(sys, name)?, value.exponent()?);
            }
            return Ok(WenzelDatum::from_profile(group, &simple, p)?);
        }
        Ok(WenzelDatum::reduced(group, levi, p)?)
    }
}

fn levi_from_names(sys: &RootSystem, names: &[String]) -> Result<LeviSubset> {
    let members = names
        .iter()
        .map(|name| {
            let r = sys.parse_root(name)?;
            (0..sys.rank())
                .find(|&i| sys.simple_root(i).ok() == Some(r))
                .ok_or_else(|| CliError::Usage(format!("`{name}` is not a simple root")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LeviSubset::new(sys.rank(), members)?)
}

fn negative_simple_index(sys: &RootSystem, name: &str) -> Result<usize> {
    let r = sys.parse_root(name)?;
    (0..sys.rank())
        .find(|&i| sys.simple_root(i).map(|s| sys.negate(s)).ok() == Some(r))
        .ok_or_else(|| CliError::Usage(format!("profile key `{name}` is not a negative simple root")))
}

/// Splits at commas outside brackets and parentheses.
pub fn split_top_level(text: &str) -> Vec<String> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut current = String::new();
    for ch in text.chars() {
        match ch {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(current.trim().to_string());
                current.clear();
                continue;
            }
            _ => {}
        }
        current.push(ch);
    }
    if !current.trim().is_empty() {
        parts.push(current.trim().to_string());
    }
    parts
}

/// `"-b:1,-a-b:2"` as roots and exponents; a missing exponent means 1.
pub fn parse_j_flag(text: &str) -> Result<(Vec<RootSpec>, Vec<u32>)> {
    let mut roots = Vec::new();
    let mut exps = Vec::new();
    for part in split_top_level(text) {
        let (root, n) = match part.rsplit_once(':') {
            Some((r, n)) => (r.trim(), n.trim().parse().map_err(|_| CliError::Usage(format!("bad exponent in `{part}`")))?),
            None => (part.as_str(), 1),
        };
        roots.push(RootSpec::Name(root.to_string()));
        exps.push(n);
    }
    Ok((roots, exps))
}

/// `"-b:1,-a:inf"`.
pub fn parse_profile_flag(text: &str) -> Result<BTreeMap<String, ProfileValue>> {
    let mut out = BTreeMap::new();
    for part in split_top_level(text) {
        let (root, value) =
            part.rsplit_once(':').ok_or_else(|| CliError::Usage(format!("profile entry `{part}` needs `root:exponent`")))?;
        let value = match value.trim().parse::<u32>() {
            Ok(n) => ProfileValue::Finite(n),
            Err(_) => ProfileValue::Word(value.trim().to_string()),
        };
        value.exponent()?;
        out.insert(root.trim().to_string(), value);
    }
    Ok(out)
}

/// Comma-separated list; `q=2,4` is accepted for point counts.
pub fn parse_list<T: std::str::FromStr>(text: &str) -> Result<Vec<T>> {
    let text = text.trim();
    let text = text.strip_prefix("q=").unwrap_or(text);
    split_top_level(text)
        .iter()
        .map(|s| s.parse().map_err(|_| CliError::Usage(format!("cannot parse `{s}` in `{text}`"))))
        .collect()
}
