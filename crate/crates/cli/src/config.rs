use std::path::{Path, PathBuf};
use std::str::FromStr;

use nearweight::{ChainMode, ChainRule, DivisorVector};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("{path}: cannot read config: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("line {line}: expected `key = value`, got `{text}`")]
    Syntax { line: usize, text: String },
    #[error("line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: key `{key}` given twice")]
    Duplicate { line: usize, key: String },
    #[error("line {line}: bad value for `{key}`: {reason}")]
    BadValue { line: usize, key: String, reason: String },
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum OutputFormat {
    #[default]
    Csv,
    Markdown,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "markdown" | "md" => Ok(OutputFormat::Markdown),
            _ => Err(format!("expected csv or markdown, got `{s}`")),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PathKind {
    #[default]
    Default,
    Search,
}

impl FromStr for PathKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "default" => Ok(PathKind::Default),
            "search" => Ok(PathKind::Search),
            _ => Err(format!("expected default or search, got `{s}`")),
        }
    }
}

pub fn parse_mode(s: &str) -> Result<ChainMode, String> {
    match s {
        "semigroup" => Ok(ChainMode::Semigroup),
        "exact" => Ok(ChainMode::Exact),
        _ => Err(format!("expected semigroup or exact, got `{s}`")),
    }
}

pub fn parse_rule(s: &str) -> Result<ChainRule, String> {
    match s {
        "strict" => Ok(ChainRule::Strict),
        "literal" => Ok(ChainRule::Literal),
        _ => Err(format!("expected strict or literal, got `{s}`")),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EvalSelection {
    All,
    List(Vec<usize>),
}

impl FromStr for EvalSelection {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s.trim() == "all" {
            Ok(EvalSelection::All)
        } else {
            parse_list(s).map(EvalSelection::List)
        }
    }
}

pub fn parse_list<T: FromStr>(s: &str) -> Result<Vec<T>, String> {
    s.split(',')
        .map(|t| t.trim().parse::<T>().map_err(|_| format!("`{}` is not a valid entry", t.trim())))
        .collect()
}

/// Settings shared by every command. Command-line flags override file values.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct RunConfig {
    pub field_p: Option<u32>,
    pub field_e: Option<u32>,
    /// Little-endian coefficients of a monic modulus.
    pub field_modulus: Option<Vec<u32>>,
    pub curve_q: Option<u32>,
    /// Indices into the list of places on `x = 0`.
    pub points_q: Option<Vec<usize>>,
    pub points_eval: Option<EvalSelection>,
    pub seed: Option<u64>,
    pub bound_mode: Option<ChainMode>,
    pub bound_rule: Option<ChainRule>,
    pub bound_path: Option<PathKind>,
    pub bound_box: Option<DivisorVector>,
    pub output_format: Option<OutputFormat>,
    pub output_path: Option<PathBuf>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| ConfigError::Read { path: path.to_path_buf(), source })?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut cfg = RunConfig::default();
        let mut seen: Vec<String> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let Some((key, value)) = content.split_once('=') else {
                return Err(ConfigError::Syntax { line, text: content.to_string() });
            };
            let (key, value) = (key.trim(), value.trim());
            if seen.iter().any(|k| k == key) {
                return Err(ConfigError::Duplicate { line, key: key.to_string() });
            }
            let bad = |reason: String| ConfigError::BadValue { line, key: key.to_string(), reason };
            fn num<T: FromStr>(v: &str) -> Result<T, String> {
                v.parse().map_err(|_| format!("`{v}` is not a number"))
            }
            match key {
                "field.p" => cfg.field_p = Some(num(value).map_err(bad)?),
                "field.e" => cfg.field_e = Some(num(value).map_err(bad)?),
                "field.modulus" => cfg.field_modulus = Some(parse_list(value).map_err(bad)?),
                "curve.q" => cfg.curve_q = Some(num(value).map_err(bad)?),
                "points.Q" => cfg.points_q = Some(parse_list(value).map_err(bad)?),
                "points.eval" => cfg.points_eval = Some(value.parse().map_err(bad)?),
                "seed" => cfg.seed = Some(num(value).map_err(bad)?),
                "bound.mode" => cfg.bound_mode = Some(parse_mode(value).map_err(bad)?),
                "bound.rule" => cfg.bound_rule = Some(parse_rule(value).map_err(bad)?),
                "bound.path" => cfg.bound_path = Some(value.parse().map_err(bad)?),
                "bound.box" => cfg.bound_box = Some(value.parse().map_err(|e: nearweight::Error| bad(e.to_string()))?),
                "output.format" => cfg.output_format = Some(value.parse().map_err(bad)?),
                "output.path" => cfg.output_path = Some(PathBuf::from(value)),
                _ => return Err(ConfigError::UnknownKey { line, key: key.to_string() }),
            }
            seen.push(key.to_string());
        }
        Ok(cfg)
    }
}
