//! The `verify` subcommand: plan tasks, run them on the worker pool, collect.

use std::process::ExitCode;

use anyhow::anyhow;
use rayon::prelude::*;

use alcove::harness::{
    random_battery, random_battery_gu, theta_stable_subsets, verify_adm_perm_intersect, verify_basic_lemmas,
    verify_containment, verify_equivalence_gu, verify_perm_eq_adm, verify_steinberg_lemma, BasicLemmaOptions,
    VerificationReport, CLAIM_BASIC, CLAIM_CONTAINMENT, CLAIM_EQUIVALENCE, CLAIM_INTERSECT, CLAIM_PERM_ADM,
    CLAIM_STEINBERG,
};
use alcove::{BruhatCache, DominantCochar, GroupContext, LevelStructure};

use crate::config::FileConfig;
use crate::output::{self, Format};
use crate::{parse_level, parse_list, Failure, Outcome, VerifyArgs};

/// Canonical claim name for a user-supplied identifier.
pub fn resolve_claim(name: &str) -> Option<&'static str> {
    let n = name.to_ascii_lowercase();
    Some(match n.as_str() {
        "adm-iff-perm" | "equivalence" | "thm-5-equivalence" => CLAIM_EQUIVALENCE,
        "adm-intersect" | "intersect" | "thm-6-intersect" => CLAIM_INTERSECT,
        "perm-adm" | "prop-6-perm-adm" => CLAIM_PERM_ADM,
        "steinberg" | "lemma-6-steinberg" => CLAIM_STEINBERG,
        "basic-lemmas" => CLAIM_BASIC,
        "kr-containment" => CLAIM_CONTAINMENT,
        "all" => "all",
        _ => return None,
    })
}

#[derive(Clone, Debug)]
enum Task {
    Equivalence { m: usize, s: usize, level: LevelStructure },
    Intersect { m: usize, mu: DominantCochar, level: LevelStructure },
    PermAdm { m: usize, s: usize, level: LevelStructure },
    Containment { mu: DominantCochar, level: LevelStructure },
    Steinberg { m: usize, j: Vec<usize>, jp: Vec<usize>, max_len: usize },
    Basic { m: usize, opts: BasicLemmaOptions },
}

impl Task {
    fn run(&self, cache: &BruhatCache) -> alcove::Result<VerificationReport> {
        match self {
            Task::Equivalence { m, s, level } => verify_equivalence_gu(*m, *s, level, cache),
            Task::Intersect { m, mu, level } => verify_adm_perm_intersect(*m, mu, level, cache),
            Task::PermAdm { m, s, level } => verify_perm_eq_adm(*m, *s, level, cache),
            Task::Containment { mu, level } => verify_containment(mu, level, cache),
            Task::Steinberg { m, j, jp, max_len } => verify_steinberg_lemma(*m, j, jp, *max_len),
            Task::Basic { m, opts } => verify_basic_lemmas(*m, opts),
        }
    }
}

struct Plan<'a> {
    a: &'a VerifyArgs,
    seed: u64,
    count: usize,
    band: i64,
    max_len: usize,
}

impl Plan<'_> {
    fn levels(&self, ctx: GroupContext) -> Result<Vec<LevelStructure>, Failure> {
        Ok(match parse_level(ctx, self.a.level.as_deref())? {
            Some(l) => vec![l],
            None => LevelStructure::all(ctx),
        })
    }

    fn s_values(&self) -> Result<Vec<usize>, Failure> {
        match self.a.s {
            Some(s) if s > self.a.m => Err(Failure::usage(anyhow!("--s {s} exceeds --m {}", self.a.m))),
            Some(s) => Ok(vec![s]),
            None => Ok((0..=self.a.m).collect()),
        }
    }

    fn explicit_mu(&self, ctx: GroupContext) -> Result<Option<DominantCochar>, Failure> {
        match &self.a.mu {
            None => Ok(None),
            Some(t) => Ok(Some(DominantCochar::new(ctx, &parse_list::<i64>(t, "mu")?)?)),
        }
    }

    /// The `μ_{r,s}` family followed by the seeded random battery.
    fn gsp_battery(&self, m: usize) -> Result<Vec<DominantCochar>, Failure> {
        let gsp = GroupContext::gsp(m)?;
        if let Some(mu) = self.explicit_mu(gsp)? {
            return Ok(vec![mu]);
        }
        let mut v: Vec<DominantCochar> =
            self.s_values()?.into_iter().map(|s| DominantCochar::mu_rs(gsp, s)).collect::<Result<_, _>>()?;
        v.extend(random_battery(m, self.count, self.seed, self.band));
        Ok(v)
    }

    fn tasks(&self, claim: &str) -> Result<Vec<Task>, Failure> {
        let m = self.a.m;
        let mut out = Vec::new();
        match claim {
            CLAIM_EQUIVALENCE => {
                let ctx = GroupContext::gu(m)?;
                for s in self.s_values()? {
                    for level in self.levels(ctx)? {
                        out.push(Task::Equivalence { m, s, level });
                    }
                }
            }
            CLAIM_INTERSECT => {
                let ctx = GroupContext::gsp(m)?;
                for mu in self.gsp_battery(m)? {
                    for level in self.levels(ctx)? {
                        out.push(Task::Intersect { m, mu: mu.clone(), level });
                    }
                }
            }
            CLAIM_PERM_ADM => {
                let ctx = GroupContext::gsp(m)?;
                for s in self.s_values()? {
                    for level in self.levels(ctx)? {
                        out.push(Task::PermAdm { m, s, level });
                    }
                }
            }
            CLAIM_CONTAINMENT => {
                let mus: Vec<DominantCochar> = match (&self.a.group, &self.a.mu) {
                    (Some(g), Some(_)) => {
                        let ctx = GroupContext::from_parts(g, m)?;
                        self.explicit_mu(ctx)?.into_iter().collect()
                    }
                    (None, None) => {
                        let gsp = random_battery(m, self.count, self.seed, self.band);
                        let gl =
                            gsp.iter().map(|mu| mu.recast(GroupContext::gl(2 * m)?)).collect::<Result<Vec<_>, _>>()?;
                        let gu = random_battery_gu(m, self.count, self.seed, self.band);
                        gl.into_iter().chain(gsp).chain(gu).collect()
                    }
                    _ => return Err(Failure::usage(anyhow!("kr-containment takes --group and --mu together"))),
                };
                for mu in mus {
                    for level in self.levels(mu.context())? {
                        out.push(Task::Containment { mu: mu.clone(), level });
                    }
                }
            }
            CLAIM_STEINBERG => {
                let subs = theta_stable_subsets(m);
                for j in &subs {
                    for jp in &subs {
                        out.push(Task::Steinberg { m, j: j.clone(), jp: jp.clone(), max_len: self.max_len });
                    }
                }
            }
            CLAIM_BASIC => {
                let opts = BasicLemmaOptions { seed: self.seed, corrupt: self.a.corrupt, ..Default::default() };
                out.push(Task::Basic { m, opts });
            }
            "all" => {
                for c in [
                    CLAIM_EQUIVALENCE,
                    CLAIM_INTERSECT,
                    CLAIM_PERM_ADM,
                    CLAIM_CONTAINMENT,
                    CLAIM_STEINBERG,
                    CLAIM_BASIC,
                ] {
                    out.extend(self.tasks(c)?);
                }
            }
            _ => unreachable!("resolved claim"),
        }
        Ok(out)
    }
}

pub fn run(a: &VerifyArgs, file: &FileConfig, format: Format) -> Outcome {
    let claim = resolve_claim(&a.claim).ok_or_else(|| {
        Failure::usage(anyhow!(
            "unknown claim `{}`; expected adm-iff-perm, adm-intersect, perm-adm, steinberg, basic-lemmas, kr-containment or all",
            a.claim
        ))
    })?;
    let plan = Plan {
        a,
        seed: a.seed.or(file.seed).unwrap_or(0),
        count: a.count.or(file.count).unwrap_or(20),
        band: a.band.or(file.band).unwrap_or(3),
        max_len: a.max_len.or(file.max_len).unwrap_or(6),
    };
    if plan.band < 0 {
        return Err(Failure::usage(anyhow!("--band must be nonnegative")));
    }
    let tasks = plan.tasks(claim)?;
    let cache = BruhatCache::new();
    let reports: Vec<VerificationReport> = tasks
        .par_iter()
        .map(|t| t.run(&cache))
        .collect::<alcove::Result<Vec<_>>>()?
        .into_iter()
        .map(|mut r| {
            r.seed = Some(plan.seed);
            if a.no_timing {
                r = r.without_timing();
            }
            r
        })
        .collect();
    let text = output::reports(&reports, format).map_err(Failure::io)?;
    crate::write_out(a.output.as_deref(), &text)?;
    Ok(if reports.iter().all(|r| r.passed()) { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn claim_aliases() {
        assert_eq!(resolve_claim("thm-5-equivalence"), Some(CLAIM_EQUIVALENCE));
        assert_eq!(resolve_claim("Prop-6-perm-adm"), Some(CLAIM_PERM_ADM));
        assert_eq!(resolve_claim("steinberg"), Some(CLAIM_STEINBERG));
        assert_eq!(resolve_claim("nope"), None);
    }
}
