//! Suite orchestration, configuration and golden files for the `qsym` binary.

pub mod config;
pub mod suite;

use std::collections::BTreeMap;
use std::fs;
use std::io;
use std::path::Path;

use serde::Deserialize;

use qsym::kmat::{KKind, KParams, Reading};
use qsym::ScalarQ;

pub use config::{parse_config, Check, ConfigError, RunConfig};
pub use suite::{exit_code, render_jsonl, run_suite};

/// Compares `text` with the golden file byte for byte.
///
/// Returns a pointer to the first drifted line, or `None` when identical.
pub fn diff_golden(text: &str, path: &Path) -> io::Result<Option<String>> {
    let golden = fs::read_to_string(path)?;
    if golden == text {
        return Ok(None);
    }
    let (mut a, mut b) = (golden.lines(), text.lines());
    let mut line = 1;
    loop {
        match (a.next(), b.next()) {
            (Some(x), Some(y)) if x == y => line += 1,
            (x, y) => {
                return Ok(Some(format!(
                    "{}:{line}: drift\n  golden:  {}\n  current: {}",
                    path.display(),
                    x.unwrap_or("<end of file>"),
                    y.unwrap_or("<end of output>")
                )))
            }
        }
    }
}

pub fn bless(text: &str, path: &Path) -> io::Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    fs::write(path, text)
}

/// JSON parameter file: `{"lambda": "1", "mu": "q", "offdiag": {"1": "1", "3": "-q"}}`.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ParamsFile {
    lambda: String,
    #[serde(default)]
    mu: Option<String>,
    #[serde(default)]
    offdiag: BTreeMap<usize, String>,
    #[serde(default)]
    reading: Option<Reading>,
}

pub fn parse_params(text: &str, kind: KKind, block: Option<usize>) -> Result<KParams, String> {
    let f: ParamsFile = serde_json::from_str(text).map_err(|e| e.to_string())?;
    let scalar = |field: &str, v: &str| ScalarQ::parse(v).map_err(|e| format!("field `{field}`: {e}"));
    let mut p = KParams::new(kind, block, scalar("lambda", &f.lambda)?);
    if let Some(mu) = &f.mu {
        p.mu = Some(scalar("mu", mu)?);
    }
    for (i, v) in &f.offdiag {
        p.offdiag.insert(*i, scalar(&format!("offdiag.{i}"), v)?);
    }
    p.reading = f.reading.unwrap_or_default();
    Ok(p)
}
