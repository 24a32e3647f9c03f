//! `key = value` configuration files.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};

/// Defaults that a config file may preset. Command-line flags win.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FileConfig {
    pub cache_dir: Option<PathBuf>,
    pub seed: Option<u64>,
    pub threads: Option<usize>,
    pub count: Option<usize>,
    pub band: Option<i64>,
    pub max_len: Option<usize>,
    pub format: Option<String>,
}

pub const KEYS: &[&str] = &["cache_dir", "seed", "threads", "count", "band", "max_len", "format"];

pub fn parse(text: &str) -> anyhow::Result<FileConfig> {
    let mut raw = BTreeMap::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            bail!("config line {}: expected `key = value`", n + 1);
        };
        let (k, v) = (k.trim(), v.trim());
        if !KEYS.contains(&k) {
            bail!("config line {}: unknown key `{k}`", n + 1);
        }
        raw.insert(k.to_string(), v.to_string());
    }
    let num = |k: &str| -> anyhow::Result<Option<u64>> {
        raw.get(k).map(|v| v.parse::<u64>().with_context(|| format!("config key `{k}`: bad number `{v}`"))).transpose()
    };
    Ok(FileConfig {
        cache_dir: raw.get("cache_dir").map(PathBuf::from),
        seed: num("seed")?,
        threads: num("threads")?.map(|x| x as usize),
        count: num("count")?.map(|x| x as usize),
        band: num("band")?.map(|x| x as i64),
        max_len: num("max_len")?.map(|x| x as usize),
        format: raw.get("format").cloned(),
    })
}

pub fn load(path: &Path) -> anyhow::Result<FileConfig> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
    parse(&text)
}
