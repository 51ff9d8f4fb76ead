//! Key-value run configuration.
//!
//! ```text
//! # comment
//! checks = ybe, braid, re, mixture
//! max_dim = 6
//! families = gl osp-odd
//! seeds = 3
//! parallelism = 4
//! output = reports.jsonl
//! golden = golden/suite.jsonl
//!
//! [k osp12]
//! algebra = osp(1|2)
//! kind = A
//! block = 1
//! lambda = 1
//! y1 = 1
//! y3 = -q
//! ```
//!
//! Off-diagonal parameters are any of `y`, `z`, `x`, `p` followed by the
//! 1-based index; values are ScalarQ text.

use std::fmt;
use std::path::PathBuf;

use qsym::kmat::{violations, KKind, KParams};
use qsym::rootdata::{Family, RootSystem};
use qsym::ScalarQ;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError {
    pub line: usize,
    pub field: String,
    pub msg: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, field `{}`: {}", self.line, self.field, self.msg)
    }
}

impl std::error::Error for ConfigError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Check {
    Ybe,
    Braid,
    Relations,
    Re,
    Conjectures,
    Satake,
    Spherical,
    Mixture,
}

impl Check {
    pub const ALL: [Check; 8] = [
        Check::Ybe,
        Check::Braid,
        Check::Relations,
        Check::Re,
        Check::Conjectures,
        Check::Satake,
        Check::Spherical,
        Check::Mixture,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Ybe => "ybe",
            Check::Braid => "braid",
            Check::Relations => "relations",
            Check::Re => "re",
            Check::Conjectures => "conjectures",
            Check::Satake => "satake",
            Check::Spherical => "spherical",
            Check::Mixture => "mixture",
        }
    }

    pub fn parse(s: &str) -> Option<Check> {
        Check::ALL.into_iter().find(|c| c.name() == s)
    }
}

/// A K-matrix given explicitly in the config.
#[derive(Debug, Clone, PartialEq)]
pub struct ExplicitK {
    pub name: String,
    pub rs: RootSystem,
    pub params: KParams,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub checks: Vec<Check>,
    pub max_dim: usize,
    pub families: Option<Vec<Family>>,
    pub seeds: usize,
    pub parallelism: usize,
    pub output: Option<PathBuf>,
    pub golden: Option<PathBuf>,
    pub explicit: Vec<ExplicitK>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            checks: Check::ALL.to_vec(),
            max_dim: 6,
            families: None,
            seeds: 3,
            parallelism: 1,
            output: None,
            golden: None,
            explicit: Vec::new(),
        }
    }
}

impl RunConfig {
    pub fn instances(&self) -> Vec<RootSystem> {
        RootSystem::instances(self.max_dim)
            .into_iter()
            .filter(|rs| self.families.as_ref().is_none_or(|f| f.contains(&rs.family())))
            .collect()
    }
}

/// A `[k name]` section being read.
struct Section {
    line: usize,
    name: String,
    algebra: Option<RootSystem>,
    kind: Option<KKind>,
    block: Option<usize>,
    lambda: Option<ScalarQ>,
    mu: Option<ScalarQ>,
    offdiag: Vec<(usize, ScalarQ)>,
}

impl Section {
    fn finish(self) -> Result<ExplicitK, ConfigError> {
        let err = |field: &str, msg: String| ConfigError {
            line: self.line,
            field: field.to_string(),
            msg,
        };
        let rs = self.algebra.clone().ok_or_else(|| err("algebra", "missing".into()))?;
        let kind = self.kind.ok_or_else(|| err("kind", "missing".into()))?;
        let lambda = self.lambda.clone().ok_or_else(|| err("lambda", "missing".into()))?;
        let mut p = KParams::new(kind, self.block, lambda);
        p.mu = self.mu.clone();
        p.offdiag.extend(self.offdiag.iter().cloned());
        let head = format!("k {}", self.name);
        match violations(&rs, &p) {
            Err(e) => Err(err(&head, e.to_string())),
            Ok(v) if !v.is_empty() => Err(err(&head, format!("constraint violated: {}", v.join("; ")))),
            Ok(_) => Ok(ExplicitK {
                name: self.name,
                rs,
                params: p,
            }),
        }
    }
}

fn list(v: &str) -> impl Iterator<Item = &str> {
    v.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
}

/// Parses the config text; every error names its line and field.
pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    let mut cfg = RunConfig::default();
    let mut section: Option<Section> = None;
    for (no, raw) in text.lines().enumerate() {
        let line = no + 1;
        let s = raw.split('#').next().unwrap_or("").trim();
        if s.is_empty() {
            continue;
        }
        if let Some(head) = s.strip_prefix('[').and_then(|h| h.strip_suffix(']')) {
            if let Some(done) = section.take() {
                cfg.explicit.push(done.finish()?);
            }
            let name = head.trim().strip_prefix("k ").map(str::trim).filter(|n| !n.is_empty());
            let name = name.ok_or_else(|| ConfigError {
                line,
                field: head.to_string(),
                msg: "expected a section header `[k <name>]`".into(),
            })?;
            section = Some(Section {
                line,
                name: name.to_string(),
                algebra: None,
                kind: None,
                block: None,
                lambda: None,
                mu: None,
                offdiag: Vec::new(),
            });
            continue;
        }
        let (key, value) = s.split_once('=').ok_or_else(|| ConfigError {
            line,
            field: s.to_string(),
            msg: "expected `key = value`".into(),
        })?;
        let (key, value) = (key.trim(), value.trim());
        let err = |msg: String| ConfigError {
            line,
            field: key.to_string(),
            msg,
        };
        let num = |v: &str| v.parse::<usize>().map_err(|e| err(format!("{v:?}: {e}")));
        let scalar = |v: &str| ScalarQ::parse(v).map_err(|e| err(format!("{v:?}: {e}")));
        match &mut section {
            Some(sec) => match key {
                "algebra" => sec.algebra = Some(RootSystem::from_name(value).map_err(|e| err(e.to_string()))?),
                "kind" => sec.kind = Some(KKind::parse(value).ok_or_else(|| err(format!("unknown kind {value:?}")))?),
                "block" => sec.block = Some(num(value)?),
                "lambda" => sec.lambda = Some(scalar(value)?),
                "mu" => sec.mu = Some(scalar(value)?),
                _ => {
                    let idx = key
                        .strip_prefix(['y', 'z', 'x', 'p'])
                        .and_then(|i| i.parse::<usize>().ok())
                        .filter(|&i| i >= 1)
                        .ok_or_else(|| err("unknown key".into()))?;
                    sec.offdiag.push((idx, scalar(value)?));
                }
            },
            None => match key {
                "checks" => {
                    cfg.checks = list(value)
                        .map(|c| Check::parse(c).ok_or_else(|| err(format!("unknown check {c:?}"))))
                        .collect::<Result<_, _>>()?;
                }
                "max_dim" => cfg.max_dim = num(value)?,
                "families" => {
                    let fams = list(value)
                        .map(|f| Family::parse(f).ok_or_else(|| err(format!("unknown family {f:?}"))))
                        .collect::<Result<_, _>>()?;
                    cfg.families = Some(fams);
                }
                "seeds" => cfg.seeds = num(value)?,
                "parallelism" => {
                    cfg.parallelism = num(value)?;
                    if cfg.parallelism == 0 {
                        return Err(err("must be at least 1".into()));
                    }
                }
                "output" => cfg.output = Some(PathBuf::from(value)),
                "golden" => cfg.golden = Some(PathBuf::from(value)),
                _ => return Err(err("unknown key".into())),
            },
        }
    }
    if let Some(done) = section.take() {
        cfg.explicit.push(done.finish()?);
    }
    Ok(cfg)
}
