//! `alcove`: enumerate admissible and permissible sets, and run the theorem
//! checks.

mod cache;
mod config;
mod output;
mod verify;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand};

use alcove::permissibility::{enumerate_admissible, enumerate_permissible, EnumerationResult};
use alcove::{BruhatCache, CosetMode, DominantCochar, GroupContext, LevelStructure, PermKind};

use cache::{DiskCache, Lookup};
use config::FileConfig;
use output::Format;

#[derive(Parser, Debug)]
#[command(name = "alcove", version, about = "Admissible, permissible and spin-permissible alcove sets")]
struct Cli {
    /// `key = value` file presetting cache_dir, seed, threads, count, band, max_len, format.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Directory for cached enumeration results.
    #[arg(long, global = true, env = "ALCOVE_CACHE_DIR")]
    cache_dir: Option<PathBuf>,

    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Enumerate one admissible or permissible set.
    Enumerate(EnumerateArgs),
    /// Check one claim over a parameter range.
    Verify(VerifyArgs),
    /// Re-import saved enumeration JSON and write it in another format.
    Export(ExportArgs),
    /// Delete all cached results.
    CacheClear,
}

#[derive(Args, Debug, Clone)]
pub struct EnumerateArgs {
    /// GL, GSP or GU.
    #[arg(long)]
    group: String,
    /// Rank: `m` for GSP and GU, `N` for GL.
    #[arg(long, visible_alias = "n")]
    m: usize,
    #[arg(long)]
    s: Option<usize>,
    /// Level, e.g. `0,1` (default: Iwahori).
    #[arg(long = "I", value_name = "I")]
    level: Option<String>,
    /// Explicit dominant cocharacter, e.g. `2,1,0`.
    #[arg(long, allow_hyphen_values = true)]
    mu: Option<String>,
    /// adm, naive, wedge, spin or perm-kr.
    #[arg(long)]
    set: String,
    #[arg(long, value_enum, default_value = "left")]
    cosets: CosetArg,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(clap::ValueEnum, Clone, Copy, Debug)]
enum CosetArg {
    Left,
    Double,
}

impl From<CosetArg> for CosetMode {
    fn from(c: CosetArg) -> Self {
        match c {
            CosetArg::Left => CosetMode::Left,
            CosetArg::Double => CosetMode::Double,
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct VerifyArgs {
    /// adm-iff-perm, adm-intersect, perm-adm, steinberg, basic-lemmas,
    /// kr-containment or all.
    #[arg(long)]
    claim: String,
    #[arg(long, default_value_t = 1)]
    m: usize,
    /// Restrict to one `s` (default: all `0..=m`).
    #[arg(long)]
    s: Option<usize>,
    /// Restrict to one level (default: all nonempty levels).
    #[arg(long = "I", value_name = "I")]
    level: Option<String>,
    /// Explicit cocharacter for adm-intersect and kr-containment.
    #[arg(long, allow_hyphen_values = true)]
    mu: Option<String>,
    /// Context for kr-containment with `--mu`.
    #[arg(long)]
    group: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    /// Number of random cocharacters.
    #[arg(long)]
    count: Option<usize>,
    /// Entries of random cocharacters lie in `[0, band]`.
    #[arg(long)]
    band: Option<i64>,
    /// Length cutoff for the Steinberg check.
    #[arg(long)]
    max_len: Option<usize>,
    /// Inject a broken face into basic-lemmas as a negative control.
    #[arg(long)]
    corrupt: bool,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long)]
    output: Option<PathBuf>,
    /// Omit `elapsed_ms` so reports are byte-reproducible.
    #[arg(long)]
    no_timing: bool,
}

#[derive(Args, Debug, Clone)]
struct ExportArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long)]
    output: Option<PathBuf>,
}

/// An error with its exit status.
pub struct Failure {
    code: u8,
    err: anyhow::Error,
}

impl Failure {
    pub fn usage(err: impl Into<anyhow::Error>) -> Self {
        Failure { code: 2, err: err.into() }
    }

    pub fn io(err: impl Into<anyhow::Error>) -> Self {
        Failure { code: 3, err: err.into() }
    }
}

impl From<alcove::Error> for Failure {
    fn from(e: alcove::Error) -> Self {
        Failure::usage(e)
    }
}

pub type Outcome = Result<ExitCode, Failure>;

pub fn parse_list<T: std::str::FromStr>(text: &str, what: &str) -> Result<Vec<T>, Failure> {
    text.split(',')
        .map(|t| t.trim().parse::<T>().map_err(|_| Failure::usage(anyhow!("bad {what} entry `{t}` in `{text}`"))))
        .collect()
}

pub fn parse_level(ctx: GroupContext, text: Option<&str>) -> Result<Option<LevelStructure>, Failure> {
    match text {
        None => Ok(None),
        Some(t) => Ok(Some(LevelStructure::new(ctx, &parse_list::<usize>(t, "level")?)?)),
    }
}

fn write_out(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())).map_err(Failure::io),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).and_then(|_| out.flush()).map_err(Failure::io)
        }
    }
}

struct Settings {
    file: FileConfig,
    cache: Option<DiskCache>,
}

impl Settings {
    fn format(&self, flag: Option<Format>, default: Format) -> Result<Format, Failure> {
        if let Some(f) = flag {
            return Ok(f);
        }
        match &self.file.format {
            Some(t) => t.parse().map_err(|e: String| Failure::usage(anyhow!("config format: {e}"))),
            None => Ok(default),
        }
    }
}

fn run_enumerate(a: &EnumerateArgs, st: &Settings) -> Outcome {
    let ctx = GroupContext::from_parts(&a.group, a.m)?;
    let level = parse_level(ctx, a.level.as_deref())?.unwrap_or_else(|| LevelStructure::iwahori(ctx));
    let mode: CosetMode = a.cosets.into();
    let mu = a.mu.as_deref().map(|t| parse_list::<i64>(t, "mu")).transpose()?;
    let needs_s = matches!(a.set.as_str(), "wedge" | "spin");
    match a.set.as_str() {
        "adm" | "perm-kr" => {
            if mu.is_some() == a.s.is_some() {
                return Err(Failure::usage(anyhow!("--set {} takes exactly one of --mu and --s", a.set)));
            }
            if a.s.is_some() && !ctx.is_symmetric() {
                return Err(Failure::usage(anyhow!("--s needs a GSP or GU context")));
            }
        }
        "wedge" | "spin" | "naive" => {
            if mu.is_some() {
                return Err(Failure::usage(anyhow!("--mu is only valid with --set adm or perm-kr")));
            }
            if needs_s != a.s.is_some() {
                return Err(Failure::usage(anyhow!(
                    "--set {} {} --s",
                    a.set,
                    if needs_s { "requires" } else { "does not take" }
                )));
            }
        }
        other => {
            return Err(Failure::usage(anyhow!("unknown set `{other}`; expected adm, naive, wedge, spin or perm-kr")))
        }
    }
    let cochar = match (&mu, a.s) {
        (Some(v), _) => Some(DominantCochar::new(ctx, v)?),
        (None, Some(s)) if !needs_s => Some(DominantCochar::mu_rs(ctx, s)?),
        _ => None,
    };
    let key = format!(
        "v1|{}|{}|{}|{:?}|{:?}|{}|{:?}",
        ctx.group_name(),
        ctx.rank(),
        a.set,
        cochar.as_ref().map(|c| c.entries().to_vec()),
        a.s,
        level,
        mode
    );
    let cached = match &st.cache {
        Some(c) => match c.get(&key) {
            Lookup::Hit(r) => Some(r),
            Lookup::Corrupt => {
                eprintln!("warning: cache entry in {} failed its checksum; recomputing", c.dir().display());
                None
            }
            Lookup::Miss => None,
        },
        None => None,
    };
    let result = match cached {
        Some(r) => r,
        None => {
            let elements = match a.set.as_str() {
                "adm" => enumerate_admissible(cochar.as_ref().expect("validated"), &level, mode, &BruhatCache::new())?,
                set => {
                    let kind = match set {
                        "naive" => PermKind::Naive,
                        "wedge" => PermKind::Wedge { s: a.s.expect("validated") },
                        "spin" => PermKind::Spin { s: a.s.expect("validated") },
                        _ => PermKind::Kr { mu: cochar.clone().expect("validated") },
                    };
                    enumerate_permissible(ctx, &kind, &level, mode)?
                }
            };
            let r = EnumerationResult::new(ctx, cochar.as_ref(), a.s, &level, &a.set, mode, &elements);
            if let Some(c) = &st.cache {
                c.put(&key, &r)
                    .with_context(|| format!("writing cache in {}", c.dir().display()))
                    .map_err(Failure::io)?;
            }
            r
        }
    };
    let text = output::enumeration(&[result], st.format(a.format, Format::Json)?).map_err(Failure::io)?;
    write_out(a.output.as_deref(), &text)?;
    Ok(ExitCode::SUCCESS)
}

fn run_export(a: &ExportArgs, st: &Settings) -> Outcome {
    let text = std::fs::read_to_string(&a.input)
        .with_context(|| format!("reading {}", a.input.display()))
        .map_err(Failure::io)?;
    let value: serde_json::Value = serde_json::from_str(&text)
        .with_context(|| format!("parsing {}", a.input.display()))
        .map_err(Failure::usage)?;
    let mut results: Vec<EnumerationResult> = match value {
        serde_json::Value::Array(_) => serde_json::from_value(value),
        _ => serde_json::from_value(value).map(|r| vec![r]),
    }
    .context("not an enumeration result")
    .map_err(Failure::usage)?;
    for r in &mut results {
        let mut elems = r.parse_elements()?;
        alcove::bruhat::canonical_sort(&mut elems);
        elems.dedup();
        r.elements = elems.iter().map(|w| w.canonical_text()).collect();
        r.cardinality = elems.len();
    }
    let out = output::enumeration(&results, st.format(a.format, Format::Json)?).map_err(Failure::io)?;
    write_out(a.output.as_deref(), &out)?;
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> Outcome {
    let file = match &cli.config {
        Some(p) => config::load(p).map_err(Failure::usage)?,
        None => FileConfig::default(),
    };
    let cache_dir = cli.cache_dir.clone().or_else(|| file.cache_dir.clone());
    let threads = cli.threads.or(file.threads);
    if let Some(t) = threads {
        rayon::ThreadPoolBuilder::new().num_threads(t).build_global().map_err(Failure::usage)?;
    }
    let st = Settings { file, cache: cache_dir.map(DiskCache::new) };
    match &cli.command {
        Command::Enumerate(a) => run_enumerate(a, &st),
        Command::Verify(a) => verify::run(a, &st.file, st.format(a.format, Format::Table)?),
        Command::Export(a) => run_export(a, &st),
        Command::CacheClear => {
            let Some(c) = &st.cache else {
                return Err(Failure::usage(anyhow!("no cache directory given (--cache-dir or ALCOVE_CACHE_DIR)")));
            };
            let n = c.clear().with_context(|| format!("clearing {}", c.dir().display())).map_err(Failure::io)?;
            eprintln!("removed {n} cache entries from {}", c.dir().display());
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {:#}", f.err);
            ExitCode::from(f.code)
        }
    }
}
