//! Executable checks of the equivalence and intersection theorems, producing
//! [`VerificationReport`]s.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt::Write as _;
use std::time::Instant;

use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bruhat::{
    canonical_sort, length, min_length_rep, omega_element, random_element, simple_reflections, ClosureProvider,
    Parahoric,
};
use crate::error::{Error, Result};
use crate::faces::{
    a_set, b_set, check_basic_inequalities, face_of, is_self_dual, mu_family_unchecked, pair_sums_equal,
};
use crate::permissibility::{
    conv_hull_member_gl, conv_hull_member_gl_suffix, conv_hull_member_gsp, enumerate_admissible, enumerate_permissible,
    intersect_gl_with_gsp, CosetMode, DominantCochar, PermKind,
};
use crate::spin::{perp, sigma_prime_sign, sigma_sign};
use crate::weyl::{GroupContext, LevelStructure, WeylElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
}

/// Parameters of one check.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportParams {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub group: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub m: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub s: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub mu: Option<Vec<i64>>,
    #[serde(rename = "I", skip_serializing_if = "Option::is_none", default)]
    pub level: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub extra: Option<String>,
}

impl ReportParams {
    pub fn summary(&self) -> String {
        let mut parts = Vec::new();
        if let Some(g) = &self.group {
            parts.push(g.clone());
        }
        if let Some(m) = self.m {
            parts.push(format!("m={m}"));
        }
        if let Some(s) = self.s {
            parts.push(format!("s={s}"));
        }
        if let Some(mu) = &self.mu {
            parts.push(format!("mu={mu:?}"));
        }
        if let Some(l) = &self.level {
            parts.push(format!("I={l:?}"));
        }
        if let Some(e) = &self.extra {
            parts.push(e.clone());
        }
        parts.join(" ")
    }
}

/// A named set in a report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedSet {
    pub name: String,
    pub cardinality: usize,
    pub elements: Vec<String>,
}

impl NamedSet {
    pub fn new(name: &str, elements: &[WeylElement]) -> Self {
        NamedSet {
            name: name.to_string(),
            cardinality: elements.len(),
            elements: elements.iter().map(|w| w.canonical_text()).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub claim: String,
    pub params: ReportParams,
    pub sets: Vec<NamedSet>,
    pub checks: usize,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub counterexample: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub elapsed_ms: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    /// Drop the wall-clock field, leaving a reproducible report.
    pub fn without_timing(mut self) -> Self {
        self.elapsed_ms = None;
        self
    }
}

/// Builder that tracks the first failure and the elapsed time.
struct Recorder {
    claim: &'static str,
    params: ReportParams,
    sets: Vec<NamedSet>,
    checks: usize,
    counterexample: Option<String>,
    seed: Option<u64>,
    start: Instant,
}

impl Recorder {
    fn new(claim: &'static str, params: ReportParams) -> Self {
        Recorder { claim, params, sets: Vec::new(), checks: 0, counterexample: None, seed: None, start: Instant::now() }
    }

    fn check(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok && self.counterexample.is_none() {
            self.counterexample = Some(detail());
        }
    }

    fn compare(&mut self, lhs_name: &str, lhs: &[WeylElement], rhs_name: &str, rhs: &[WeylElement]) {
        let l: BTreeSet<&WeylElement> = lhs.iter().collect();
        let r: BTreeSet<&WeylElement> = rhs.iter().collect();
        let mut diff: Vec<WeylElement> = l.symmetric_difference(&r).map(|w| (*w).clone()).collect();
        canonical_sort(&mut diff);
        self.check(diff.is_empty(), || {
            let w = &diff[0];
            let side = if l.contains(w) { lhs_name } else { rhs_name };
            format!("{w} lies only in {side} ({lhs_name} vs {rhs_name})")
        });
    }

    fn finish(self) -> VerificationReport {
        VerificationReport {
            claim: self.claim.to_string(),
            params: self.params,
            sets: self.sets,
            checks: self.checks,
            verdict: if self.counterexample.is_none() { Verdict::Pass } else { Verdict::Fail },
            counterexample: self.counterexample,
            elapsed_ms: Some(self.start.elapsed().as_millis() as u64),
            seed: self.seed,
        }
    }
}

pub const CLAIM_EQUIVALENCE: &str = "adm-iff-perm";
pub const CLAIM_INTERSECT: &str = "adm-intersect";
pub const CLAIM_PERM_ADM: &str = "perm-adm";
pub const CLAIM_STEINBERG: &str = "steinberg";
pub const CLAIM_BASIC: &str = "basic-lemmas";
pub const CLAIM_CONTAINMENT: &str = "kr-containment";

/// Wedge-, spin- and μ_{r,s}-admissible sets in `W̃/W_I` and in
/// `W_I\W̃/W_I` coincide for `GU(m)`.
pub fn verify_equivalence_gu(
    m: usize,
    s: usize,
    level: &LevelStructure,
    provider: &dyn ClosureProvider,
) -> Result<VerificationReport> {
    let ctx = GroupContext::gu(m)?;
    if s > m {
        return Err(Error::Precondition(format!("s = {s} > m = {m}")));
    }
    LevelStructure::new(ctx, level.indices())?;
    let mu = DominantCochar::mu_rs(ctx, s)?;
    let mut rec = Recorder::new(
        CLAIM_EQUIVALENCE,
        ReportParams {
            group: Some("GU".into()),
            m: Some(m),
            s: Some(s),
            mu: Some(mu.entries().to_vec()),
            level: Some(level.indices().to_vec()),
            extra: None,
        },
    );
    for (mode, suffix) in [(CosetMode::Left, ""), (CosetMode::Double, "-double")] {
        let wedge = enumerate_permissible(ctx, &PermKind::Wedge { s }, level, mode)?;
        let spin = enumerate_permissible(ctx, &PermKind::Spin { s }, level, mode)?;
        let adm = enumerate_admissible(&mu, level, mode, provider)?;
        rec.compare(&format!("wedge{suffix}"), &wedge, &format!("spin{suffix}"), &spin);
        rec.compare(&format!("wedge{suffix}"), &wedge, &format!("adm{suffix}"), &adm);
        rec.sets.push(NamedSet::new(&format!("wedge{suffix}"), &wedge));
        rec.sets.push(NamedSet::new(&format!("spin{suffix}"), &spin));
        rec.sets.push(NamedSet::new(&format!("adm{suffix}"), &adm));
    }
    Ok(rec.finish())
}

/// `Adm_{GSp,I}(μ) = Adm_{GL,±I}(μ) ∩ W̃/W_I = Perm_{GL,±I}(μ) ∩ W̃/W_I`,
/// and the same equalities for double cosets.
pub fn verify_adm_perm_intersect(
    m: usize,
    mu: &DominantCochar,
    level: &LevelStructure,
    provider: &dyn ClosureProvider,
) -> Result<VerificationReport> {
    let gsp = GroupContext::gsp(m)?;
    let gl = GroupContext::gl(2 * m)?;
    if mu.context() != gsp {
        return Err(Error::ContextMismatch(gsp, mu.context()));
    }
    LevelStructure::new(gsp, level.indices())?;
    let pm = LevelStructure::new(gl, level.pm_residues(m).indices())?;
    let mu_gl = mu.recast(gl)?;
    let mut rec = Recorder::new(
        CLAIM_INTERSECT,
        ReportParams {
            group: Some("GSP".into()),
            m: Some(m),
            s: None,
            mu: Some(mu.entries().to_vec()),
            level: Some(level.indices().to_vec()),
            extra: None,
        },
    );
    for (mode, suffix) in [(CosetMode::Left, ""), (CosetMode::Double, "-double")] {
        let adm = enumerate_admissible(mu, level, mode, provider)?;
        let adm_gl = enumerate_admissible(&mu_gl, &pm, mode, provider)?;
        let perm_gl = enumerate_permissible(gl, &PermKind::Kr { mu: mu_gl.clone() }, &pm, mode)?;
        let adm_cap = intersect_gl_with_gsp(&adm_gl, m, level, mode)?;
        let perm_cap = intersect_gl_with_gsp(&perm_gl, m, level, mode)?;
        rec.compare(&format!("adm-gsp{suffix}"), &adm, &format!("adm-gl-cap{suffix}"), &adm_cap);
        rec.compare(&format!("adm-gsp{suffix}"), &adm, &format!("perm-gl-cap{suffix}"), &perm_cap);
        rec.sets.push(NamedSet::new(&format!("adm-gsp{suffix}"), &adm));
        rec.sets.push(NamedSet::new(&format!("adm-gl-cap{suffix}"), &adm_cap));
        rec.sets.push(NamedSet::new(&format!("perm-gl-cap{suffix}"), &perm_cap));
    }
    Ok(rec.finish())
}

/// `Adm_I(μ) = Perm_I(μ)` in `GSp(m)` for `μ = (2^(s), 1^(2m-2s), 0^(s))`.
pub fn verify_perm_eq_adm(
    m: usize,
    s: usize,
    level: &LevelStructure,
    provider: &dyn ClosureProvider,
) -> Result<VerificationReport> {
    let gsp = GroupContext::gsp(m)?;
    if s > m {
        return Err(Error::Precondition(format!("s = {s} > m = {m}")));
    }
    LevelStructure::new(gsp, level.indices())?;
    let mu = DominantCochar::mu_rs(gsp, s)?;
    let mut rec = Recorder::new(
        CLAIM_PERM_ADM,
        ReportParams {
            group: Some("GSP".into()),
            m: Some(m),
            s: Some(s),
            mu: Some(mu.entries().to_vec()),
            level: Some(level.indices().to_vec()),
            extra: None,
        },
    );
    for (mode, suffix) in [(CosetMode::Left, ""), (CosetMode::Double, "-double")] {
        let adm = enumerate_admissible(&mu, level, mode, provider)?;
        let perm = enumerate_permissible(gsp, &PermKind::Kr { mu: mu.clone() }, level, mode)?;
        rec.compare(&format!("adm{suffix}"), &adm, &format!("perm-kr{suffix}"), &perm);
        rec.sets.push(NamedSet::new(&format!("adm{suffix}"), &adm));
        rec.sets.push(NamedSet::new(&format!("perm-kr{suffix}"), &perm));
    }
    Ok(rec.finish())
}

/// `Adm(μ) ⊆ Perm(μ)` in one context.
pub fn verify_containment(
    mu: &DominantCochar,
    level: &LevelStructure,
    provider: &dyn ClosureProvider,
) -> Result<VerificationReport> {
    let ctx = mu.context();
    LevelStructure::new(ctx, level.indices())?;
    let mut rec = Recorder::new(
        CLAIM_CONTAINMENT,
        ReportParams {
            group: Some(ctx.group_name().into()),
            m: Some(ctx.rank()),
            s: None,
            mu: Some(mu.entries().to_vec()),
            level: Some(level.indices().to_vec()),
            extra: None,
        },
    );
    let adm = enumerate_admissible(mu, level, CosetMode::Left, provider)?;
    let perm = enumerate_permissible(ctx, &PermKind::Kr { mu: mu.clone() }, level, CosetMode::Left)?;
    let perm_set: HashSet<&WeylElement> = perm.iter().collect();
    for w in &adm {
        rec.check(perm_set.contains(w), || format!("{w} is admissible but not permissible"));
    }
    rec.sets.push(NamedSet::new("adm", &adm));
    rec.sets.push(NamedSet::new("perm-kr", &perm));
    Ok(rec.finish())
}

/// `j ↦ 2m - j` on the simple labels of `GL(2m)`.
pub fn theta(m: usize, label: usize) -> usize {
    (2 * m - label) % (2 * m)
}

/// Proper subsets of the `GL(2m)` simple labels that are stable under
/// [`theta`], in lexicographic order.
pub fn theta_stable_subsets(m: usize) -> Vec<Vec<usize>> {
    let k = 2 * m;
    let mut out: Vec<Vec<usize>> = (0u32..(1 << k) - 1)
        .map(|mask| (0..k).filter(|&j| mask >> j & 1 == 1).collect::<Vec<_>>())
        .filter(|s: &Vec<usize>| s.iter().all(|&j| s.contains(&theta(m, j))))
        .collect();
    out.sort();
    out
}

/// Every element of length at most `max_len` whose Kottwitz invariant lies in
/// `kappas`, found by walking up from the length-zero elements.
pub fn elements_up_to_length(
    ctx: GroupContext,
    max_len: usize,
    kappas: impl IntoIterator<Item = i64>,
) -> Vec<WeylElement> {
    let simples = simple_reflections(ctx);
    let mut all: Vec<WeylElement> = Vec::new();
    for k in kappas {
        let mut layer: BTreeSet<WeylElement> = BTreeSet::from([omega_element(ctx, k)]);
        for l in 0..=max_len {
            all.extend(layer.iter().cloned());
            if l == max_len {
                break;
            }
            let mut next = BTreeSet::new();
            for w in &layer {
                for (_, s) in &simples {
                    let x = s.mul(w);
                    if length(&x) == l + 1 {
                        next.insert(x);
                    }
                }
            }
            layer = next;
        }
    }
    all
}

/// For Θ-stable `J`, `J'`: whenever `W_J w W_J'` meets `GSp(m)`, its minimal
/// representative lies in `GSp(m)`. Checked over all `w` of length at most
/// `max_len` with Kottwitz invariant in `[-2m, 2m]`.
pub fn verify_steinberg_lemma(m: usize, j: &[usize], j_prime: &[usize], max_len: usize) -> Result<VerificationReport> {
    let gl = GroupContext::gl(2 * m)?;
    for set in [j, j_prime] {
        if set.iter().any(|&x| !set.contains(&theta(m, x))) {
            return Err(Error::Precondition(format!("{set:?} is not stable under j -> 2m - j")));
        }
    }
    let left = Parahoric::from_labels(gl, j)?;
    let right = Parahoric::from_labels(gl, j_prime)?;
    let mut rec = Recorder::new(
        CLAIM_STEINBERG,
        ReportParams {
            group: Some("GL".into()),
            m: Some(m),
            extra: Some(format!("J={j:?} J'={j_prime:?} L={max_len}")),
            ..Default::default()
        },
    );
    let (lu, ru) = (left.elements(), right.elements());
    let span = 2 * m as i64;
    let mut reps: BTreeSet<WeylElement> = BTreeSet::new();
    for w in elements_up_to_length(gl, max_len, -span..=span) {
        reps.insert(min_length_rep(&w, &left, &right)?);
    }
    let mut meeting = Vec::new();
    for x in &reps {
        let meets = lu.iter().any(|u| ru.iter().any(|v| u.mul(x).mul(v).restrict_gl_to_gsp(m).is_some()));
        if meets {
            rec.check(x.restrict_gl_to_gsp(m).is_some(), || format!("minimal representative {x} is not in GSp({m})"));
            meeting.push(x.clone());
        }
    }
    canonical_sort(&mut meeting);
    rec.sets.push(NamedSet::new("double-cosets-meeting-gsp", &meeting));
    Ok(rec.finish())
}

/// Options for [`verify_basic_lemmas`].
#[derive(Clone, Debug)]
pub struct BasicLemmaOptions {
    pub seed: u64,
    /// Random elements per level on top of the exhaustive short elements.
    pub samples: usize,
    /// Exhaustive over elements up to this length.
    pub exhaustive_len: usize,
    /// Random rational points for the hull comparisons.
    pub hull_points: usize,
    /// Inject a broken μ-family as a negative control.
    pub corrupt: bool,
}

impl Default for BasicLemmaOptions {
    fn default() -> Self {
        BasicLemmaOptions { seed: 0, samples: 200, exhaustive_len: 4, hull_points: 500, corrupt: false }
    }
}

fn random_rational<R: Rng + ?Sized>(rng: &mut R, lo: i64, hi: i64) -> Rational64 {
    let den = rng.random_range(1..=4);
    Rational64::new(rng.random_range(lo * den..=hi * den), den)
}

/// Basic inequalities, `μ(m+1) = d/2`, self-duality, face axioms, the hull
/// identities, and the σ'_E sign relation.
pub fn verify_basic_lemmas(m: usize, opts: &BasicLemmaOptions) -> Result<VerificationReport> {
    let gu = GroupContext::gu(m)?;
    let gsp = GroupContext::gsp(m)?;
    let mut rec = Recorder::new(
        CLAIM_BASIC,
        ReportParams {
            group: Some("GU".into()),
            m: Some(m),
            extra: opts.corrupt.then(|| "corrupted".into()),
            ..Default::default()
        },
    );
    rec.seed = Some(opts.seed);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);

    for ctx in [gu, gsp] {
        let mut pool = elements_up_to_length(ctx, opts.exhaustive_len, -2..=2);
        for _ in 0..opts.samples {
            let steps = rng.random_range(0..=12);
            pool.push(random_element(ctx, &mut rng, steps, 3));
        }
        for level in LevelStructure::all(ctx) {
            for w in &pool {
                let face = face_of(w, &level)?;
                let bad = face.violations();
                rec.check(bad.is_empty(), || format!("{ctx} I={level} w={w}: face axioms fail {bad:?}"));
                let mut fam = mu_family_unchecked(&face);
                if opts.corrupt && ctx == gu && w.is_identity() {
                    // push one pair sum past its band
                    let i = level.indices()[0];
                    let mut stored = fam.stored().clone();
                    stored.get_mut(&i).expect("stored residue")[0] += 2;
                    fam = crate::faces::MuFamily::from_parts(ctx, stored, fam.d());
                }
                let v = check_basic_inequalities(&fam, &level);
                rec.check(v.is_empty(), || format!("{ctx} I={level} w={w}: basic inequality fails {:?}", v[0]));
                let d = fam.d();
                if let Some(mid) = ctx.middle() {
                    for (k, mu) in fam.stored() {
                        rec.check(2 * mu[mid - 1] == d, || format!("{ctx} I={level} w={w}: mu_{k}(m+1) != d/2"));
                    }
                }
                for &i in level.indices() {
                    for idx in [i as i64, -(i as i64)] {
                        let mu = fam.get(idx);
                        let premise = pair_sums_equal(mu, &a_set(ctx, i), d) || pair_sums_equal(mu, &b_set(ctx, i), d);
                        if premise {
                            rec.check(is_self_dual(mu, d), || format!("{ctx} I={level} w={w}: mu_{idx} not self-dual"));
                        }
                    }
                }
            }
        }
    }

    // hull identities on random rational points
    for _ in 0..opts.hull_points.min(50) {
        let mu = random_dominant_gsp(m, &mut rng, 3);
        let mu_gl = mu.recast(GroupContext::Gl(2 * m))?;
        for _ in 0..(opts.hull_points / 50).max(1) {
            let x: Vec<Rational64> = if rng.random_bool(0.5) {
                // a point on V
                let c = random_rational(&mut rng, 0, 6);
                let half: Vec<Rational64> = (0..m).map(|_| random_rational(&mut rng, -1, 4)).collect();
                let mut v = half.clone();
                v.extend(half.iter().rev().map(|h| c - h));
                v
            } else {
                (0..2 * m).map(|_| random_rational(&mut rng, -1, 4)).collect()
            };
            let gl_in = conv_hull_member_gl(&mu_gl, &x);
            rec.check(gl_in == conv_hull_member_gl_suffix(&mu_gl, &x), || {
                format!("prefix/suffix forms disagree at {x:?}")
            });
            let in_v = gsp.in_apartment(&x);
            rec.check(conv_hull_member_gsp(&mu, &x) == (gl_in && in_v), || {
                format!("GSp hull disagrees with GL hull on V at mu={:?} x={x:?}", mu.entries())
            });
        }
    }

    // sign relation for n = 2m + 1
    let n = 2 * m + 1;
    if n <= 7 {
        for mask in 0u32..(1 << (2 * n)) {
            if mask.count_ones() as usize != n {
                continue;
            }
            let e: Vec<usize> = (1..=2 * n).filter(|&k| mask >> (k - 1) & 1 == 1).collect();
            let s = sigma_sign(&e, n)?;
            let sp = sigma_prime_sign(&e, n)?;
            let factor = if (m + 1).is_multiple_of(2) { 1 } else { -1 };
            rec.check(sp == factor * s, || format!("sign relation fails at E={e:?}"));
            rec.check(sigma_sign(&perp(&e, n)?, n)? == s, || format!("sgn(E) != sgn(E^perp) at E={e:?}"));
        }
    }
    Ok(rec.finish())
}

/// A seeded dominant `μ ∈ X_*` for `GSp(m)` with entries in `[0, band]`: the
/// top half is drawn and sorted, then the pairing constant `c` is drawn from
/// `[n_1, 2 n_m]` (redrawing when that range is empty).
pub fn random_dominant_gsp<R: Rng + ?Sized>(m: usize, rng: &mut R, band: i64) -> DominantCochar {
    loop {
        let mut top: Vec<i64> = (0..m).map(|_| rng.random_range(0..=band)).collect();
        top.sort_by(|a, b| b.cmp(a));
        let (hi, lo) = (top[0], 2 * top[m - 1]);
        if hi > lo {
            continue;
        }
        let c = rng.random_range(hi..=lo);
        let mut v = top.clone();
        v.extend(top.iter().rev().map(|x| c - x));
        return DominantCochar::new(GroupContext::Gsp(m), &v).expect("dominant by construction");
    }
}

/// The unitary analogue: the middle entry `y` is drawn with `2y ∈ [n_1, 2 n_m]`.
pub fn random_dominant_gu<R: Rng + ?Sized>(m: usize, rng: &mut R, band: i64) -> DominantCochar {
    loop {
        let mut top: Vec<i64> = (0..m).map(|_| rng.random_range(0..=band)).collect();
        top.sort_by(|a, b| b.cmp(a));
        let lo_y = (top[0] + 1) / 2;
        let hi_y = top[m - 1];
        if lo_y > hi_y {
            continue;
        }
        let y = rng.random_range(lo_y..=hi_y);
        let mut v = top.clone();
        v.push(y);
        v.extend(top.iter().rev().map(|x| 2 * y - x));
        return DominantCochar::new(GroupContext::Gu(m), &v).expect("dominant by construction");
    }
}

/// `count` seeded draws, deduplicated in draw order.
pub fn random_battery(m: usize, count: usize, seed: u64, band: i64) -> Vec<DominantCochar> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_dominant_gsp(m, &mut rng, band)).collect()
}

pub fn random_battery_gu(m: usize, count: usize, seed: u64, band: i64) -> Vec<DominantCochar> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_dominant_gu(m, &mut rng, band)).collect()
}

/// One table row per report.
pub fn render_table(reports: &[VerificationReport]) -> String {
    let rows: Vec<[String; 5]> = reports
        .iter()
        .map(|r| {
            let sets: Vec<String> = r.sets.iter().map(|s| format!("{}={}", s.name, s.cardinality)).collect();
            [
                r.claim.clone(),
                r.params.summary(),
                sets.join(" "),
                format!("{:?}", r.verdict).to_uppercase(),
                r.elapsed_ms.map(|t| format!("{t}ms")).unwrap_or_default(),
            ]
        })
        .collect();
    let header = ["claim", "parameters", "sets", "verdict", "time"];
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in &rows {
        for (k, cell) in row.iter().enumerate() {
            widths[k] = widths[k].max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let line = |cells: Vec<&str>, out: &mut String| {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        let _ = writeln!(out, "{}", padded.join(" | ").trim_end());
    };
    line(header.to_vec(), &mut out);
    let _ = writeln!(out, "{}", widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().join("-+-"));
    for row in &rows {
        line(row.iter().map(|s| s.as_str()).collect(), &mut out);
        if let Some(c) = reports
            .iter()
            .find(|r| r.claim == row[0] && r.params.summary() == row[1])
            .and_then(|r| r.counterexample.as_ref())
        {
            let _ = writeln!(out, "  counterexample: {c}");
        }
    }
    out
}

/// Group reports by claim and count passes.
pub fn summarize(reports: &[VerificationReport]) -> HashMap<String, (usize, usize)> {
    let mut out: HashMap<String, (usize, usize)> = HashMap::new();
    for r in reports {
        let e = out.entry(r.claim.clone()).or_default();
        e.1 += 1;
        if r.passed() {
            e.0 += 1;
        }
    }
    out
}
