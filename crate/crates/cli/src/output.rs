//! JSON, CSV and table rendering.

use alcove::harness::{render_table, VerificationReport};
use alcove::permissibility::EnumerationResult;
use clap::ValueEnum;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        <Format as ValueEnum>::from_str(s, true)
    }
}

fn join(level: &[usize]) -> String {
    level.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
}

pub fn enumeration_json(results: &[EnumerationResult]) -> anyhow::Result<String> {
    let mut s = match results {
        [one] => serde_json::to_string_pretty(one)?,
        many => serde_json::to_string_pretty(many)?,
    };
    s.push('\n');
    Ok(s)
}

/// Columns: group, rank, s, I, set, cardinality, element.
pub fn enumeration_csv(results: &[EnumerationResult]) -> anyhow::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["group", "rank", "s", "I", "set", "cardinality", "element"])?;
    for r in results {
        let s = r.s.map(|s| s.to_string()).unwrap_or_default();
        let set = match r.cosets {
            alcove::CosetMode::Left => r.set.clone(),
            alcove::CosetMode::Double => format!("{}-double", r.set),
        };
        for e in &r.elements {
            w.write_record([
                r.group.as_str(),
                &r.m_or_n.to_string(),
                &s,
                &join(&r.level),
                &set,
                &r.cardinality.to_string(),
                e,
            ])?;
        }
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

pub fn enumeration_table(results: &[EnumerationResult]) -> String {
    let mut out = String::new();
    for r in results {
        let mut head = format!("{}({}) {}", r.group, r.m_or_n, r.set);
        if let Some(s) = r.s {
            head += &format!(" s={s}");
        }
        if let Some(mu) = &r.mu {
            head += &format!(" mu={mu:?}");
        }
        head += &format!(
            " I={} cosets={} cardinality={}\n",
            join(&r.level),
            serde_json::to_value(r.cosets).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default(),
            r.cardinality
        );
        out += &head;
        for e in &r.elements {
            out += "  ";
            out += e;
            out.push('\n');
        }
    }
    out
}

pub fn enumeration(results: &[EnumerationResult], format: Format) -> anyhow::Result<String> {
    match format {
        Format::Json => enumeration_json(results),
        Format::Csv => enumeration_csv(results),
        Format::Table => Ok(enumeration_table(results)),
    }
}

/// Columns: claim, parameters, set, cardinality, verdict.
fn reports_csv(reports: &[VerificationReport]) -> anyhow::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["claim", "parameters", "set", "cardinality", "verdict"])?;
    for r in reports {
        let verdict = if r.passed() { "PASS" } else { "FAIL" };
        if r.sets.is_empty() {
            w.write_record([r.claim.as_str(), &r.params.summary(), "", "", verdict])?;
        }
        for s in &r.sets {
            w.write_record([r.claim.as_str(), &r.params.summary(), &s.name, &s.cardinality.to_string(), verdict])?;
        }
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

pub fn reports(reports: &[VerificationReport], format: Format) -> anyhow::Result<String> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(reports)?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => reports_csv(reports),
        Format::Table => Ok(render_table(reports)),
    }
}
