//! Naive, wedge and Kottwitz–Rapoport permissibility, μ-admissibility, and
//! the convex hull tests they rely on.

use std::collections::BTreeSet;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::bruhat::{bruhat_leq, canonical_sort, coset_rep, double_coset_rep, parahoric, ClosureProvider, Parahoric};
use crate::error::{Error, Result};
use crate::faces::displacement;
use crate::spin::is_spin_permissible;
use crate::weyl::{kottwitz_of_vector, omega_vertex, weyl_orbit, GroupContext, LevelStructure, WeylElement};

/// A dominant cocharacter `n_1 ≥ … ≥ n_N` in the context's lattice.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DominantCochar {
    ctx: GroupContext,
    entries: Vec<i64>,
}

impl DominantCochar {
    pub fn new(ctx: GroupContext, entries: &[i64]) -> Result<Self> {
        let n = ctx.ambient_dim();
        if entries.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: entries.len() });
        }
        if entries.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotDominant(entries.to_vec()));
        }
        if !ctx.in_lattice(entries) {
            return Err(Error::LatticeViolation { ctx, vector: entries.to_vec() });
        }
        Ok(DominantCochar { ctx, entries: entries.to_vec() })
    }

    /// `(2^(s), 1^(N-2s), 0^(s))`.
    pub fn mu_rs(ctx: GroupContext, s: usize) -> Result<Self> {
        let n = ctx.ambient_dim();
        if 2 * s > n {
            return Err(Error::Precondition(format!("s = {s} exceeds the rank of {ctx}")));
        }
        let v: Vec<i64> = (0..n)
            .map(|k| {
                if k < s {
                    2
                } else if k >= n - s {
                    0
                } else {
                    1
                }
            })
            .collect();
        Self::new(ctx, &v)
    }

    pub fn context(&self) -> GroupContext {
        self.ctx
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn kottwitz(&self) -> i64 {
        kottwitz_of_vector(self.ctx, &self.entries)
    }

    /// The same entries viewed in another context of equal dimension.
    pub fn recast(&self, ctx: GroupContext) -> Result<Self> {
        Self::new(ctx, &self.entries)
    }

    /// Drop the middle coordinate of a unitary cocharacter.
    pub fn embed_gu_to_gsp(&self) -> Result<Self> {
        let GroupContext::Gu(m) = self.ctx else {
            return Err(Error::Unsupported { ctx: self.ctx, what: "needs a GU cocharacter" });
        };
        let v: Vec<i64> = self.entries.iter().enumerate().filter(|&(k, _)| k != m).map(|(_, &x)| x).collect();
        Self::new(GroupContext::Gsp(m), &v)
    }
}

/// Prefix and suffix sums of a dominant cocharacter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HullDescriptor {
    pub mu: Vec<i64>,
    /// `prefix[i] = n_1 + … + n_i`, `prefix[0] = 0`.
    pub prefix: Vec<i64>,
    /// `suffix[i] = n_{N+1-i} + … + n_N`, `suffix[0] = 0`.
    pub suffix: Vec<i64>,
}

impl HullDescriptor {
    pub fn new(mu: &DominantCochar) -> Self {
        let e = mu.entries();
        let mut prefix = vec![0];
        let mut suffix = vec![0];
        for k in 0..e.len() {
            prefix.push(prefix[k] + e[k]);
            suffix.push(suffix[k] + e[e.len() - 1 - k]);
        }
        HullDescriptor { mu: e.to_vec(), prefix, suffix }
    }

    pub fn total(&self) -> i64 {
        *self.prefix.last().unwrap_or(&0)
    }
}

fn sorted_desc(x: &[Rational64]) -> Vec<Rational64> {
    let mut v = x.to_vec();
    v.sort_by(|a, b| b.cmp(a));
    v
}

/// `x ∈ Conv(S_N μ)`: the sum of the `i` largest coordinates of `x` is at most
/// `n_1 + … + n_i`, with equality at `i = N`.
pub fn conv_hull_member_gl(mu: &DominantCochar, x: &[Rational64]) -> bool {
    let h = HullDescriptor::new(mu);
    if x.len() != h.mu.len() {
        return false;
    }
    let mut acc = Rational64::from_integer(0);
    for (i, xi) in sorted_desc(x).into_iter().enumerate() {
        acc += xi;
        let bound = Rational64::from_integer(h.prefix[i + 1]);
        if acc > bound {
            return false;
        }
    }
    acc == Rational64::from_integer(h.total())
}

/// The lower-bound form: the sum of the `i` smallest coordinates of `x` is at
/// least `n_{N+1-i} + … + n_N`, with equality at `i = N`.
pub fn conv_hull_member_gl_suffix(mu: &DominantCochar, x: &[Rational64]) -> bool {
    let h = HullDescriptor::new(mu);
    if x.len() != h.mu.len() {
        return false;
    }
    let mut asc = x.to_vec();
    asc.sort();
    let mut acc = Rational64::from_integer(0);
    for (i, xi) in asc.into_iter().enumerate() {
        acc += xi;
        if acc < Rational64::from_integer(h.suffix[i + 1]) {
            return false;
        }
    }
    acc == Rational64::from_integer(h.total())
}

/// `x ∈ Conv(S*_{2m} μ)`: `x ∈ V`, `c(x) = c(μ)`, and the top-`i` bounds for
/// `i ≤ m` only.
pub fn conv_hull_member_gsp(mu: &DominantCochar, x: &[Rational64]) -> bool {
    let GroupContext::Gsp(m) = mu.context() else {
        return false;
    };
    let ctx = mu.context();
    if !ctx.in_apartment(x) {
        return false;
    }
    let e = mu.entries();
    if x[0] + x[2 * m - 1] != Rational64::from_integer(e[0] + e[2 * m - 1]) {
        return false;
    }
    let h = HullDescriptor::new(mu);
    let mut acc = Rational64::from_integer(0);
    for (i, xi) in sorted_desc(x).into_iter().take(m).enumerate() {
        acc += xi;
        if acc > Rational64::from_integer(h.prefix[i + 1]) {
            return false;
        }
    }
    true
}

fn require_symmetric(ctx: GroupContext) -> Result<()> {
    if !ctx.is_symmetric() {
        return Err(Error::Unsupported { ctx, what: "needs a GSp or GU context" });
    }
    Ok(())
}

/// P1 and P2 at every representative index: `0 ≤ μ_i ≤ 2` and `Σμ_i = N`.
pub fn is_naively_permissible(w: &WeylElement, level: &LevelStructure) -> Result<bool> {
    let ctx = w.context();
    require_symmetric(ctx)?;
    let n = ctx.ambient_dim() as i64;
    Ok(level.representatives(ctx).into_iter().all(|i| {
        let mu = displacement(w, i as i64);
        mu.iter().all(|&x| (0..=2).contains(&x)) && mu.iter().sum::<i64>() == n
    }))
}

/// Naive permissibility plus P3: at most `s` zero entries in every `μ_i`.
pub fn is_wedge_permissible(w: &WeylElement, level: &LevelStructure, s: usize) -> Result<bool> {
    if !is_naively_permissible(w, level)? {
        return Ok(false);
    }
    let ctx = w.context();
    Ok(level
        .representatives(ctx)
        .into_iter()
        .all(|i| displacement(w, i as i64).iter().filter(|&&x| x == 0).count() <= s))
}

/// `η_i = ((-1/2)^(i), 0^(2m-2i), (1/2)^(i))`.
pub fn eta_vertex(m: usize, i: usize) -> Vec<Rational64> {
    let half = Rational64::new(1, 2);
    (1..=2 * m)
        .map(|j| {
            if j <= i {
                -half
            } else if j > 2 * m - i {
                half
            } else {
                Rational64::from_integer(0)
            }
        })
        .collect()
}

fn displacement_rational(w: &WeylElement, a: &[Rational64]) -> Vec<Rational64> {
    let wa = w.affine_action(a).expect("dimension matches context");
    wa.iter().zip(a).map(|(x, y)| x - y).collect()
}

fn ints(v: &[i64]) -> Vec<Rational64> {
    v.iter().map(|&x| Rational64::from_integer(x)).collect()
}

/// Kottwitz–Rapoport μ-permissibility.
///
/// GSp tests the vertices `η_i`, `i ∈ I`; GL tests `ω_i` at the given
/// residues; GU is tested through the embedding into GSp.
pub fn is_mu_permissible(w: &WeylElement, mu: &DominantCochar, level: &LevelStructure) -> Result<bool> {
    let ctx = w.context();
    if mu.context() != ctx {
        return Err(Error::ContextMismatch(ctx, mu.context()));
    }
    if w.kottwitz_invariant() != mu.kottwitz() {
        return Ok(false);
    }
    match ctx {
        GroupContext::Gsp(m) => {
            Ok(level.indices().iter().all(|&i| conv_hull_member_gsp(mu, &displacement_rational(w, &eta_vertex(m, i)))))
        }
        GroupContext::Gl(_) => Ok(level
            .indices()
            .iter()
            .all(|&i| conv_hull_member_gl(mu, &displacement_rational(w, &ints(&omega_vertex(ctx, i as i64)))))),
        GroupContext::Gu(_) => is_mu_permissible(&w.embed_gu_to_gsp()?, &mu.embed_gu_to_gsp()?, level),
    }
}

/// Which quotient a set lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CosetMode {
    /// `W̃ / W_I`
    Left,
    /// `W_I \ W̃ / W_I`
    Double,
}

impl CosetMode {
    pub fn rep(self, w: &WeylElement, p: &Parahoric) -> WeylElement {
        match self {
            CosetMode::Left => coset_rep(w, p),
            CosetMode::Double => double_coset_rep(w, p),
        }
    }
}

fn translations(mu: &DominantCochar) -> Result<Vec<WeylElement>> {
    weyl_orbit(mu.context(), mu.entries())?.into_iter().map(|nu| WeylElement::translation(mu.context(), &nu)).collect()
}

/// Direct test: the coset of `w` lies below the coset of some `t_{σμ}`.
pub fn is_mu_admissible(w: &WeylElement, mu: &DominantCochar, level: &LevelStructure, mode: CosetMode) -> Result<bool> {
    let ctx = w.context();
    if mu.context() != ctx {
        return Err(Error::ContextMismatch(ctx, mu.context()));
    }
    if w.kottwitz_invariant() != mu.kottwitz() {
        return Ok(false);
    }
    let p = parahoric(ctx, level)?;
    let w0 = mode.rep(w, &p);
    for t in translations(mu)? {
        if bruhat_leq(&w0, &mode.rep(&t, &p))? {
            return Ok(true);
        }
    }
    Ok(false)
}

fn project(elements: impl IntoIterator<Item = WeylElement>, p: &Parahoric, mode: CosetMode) -> Vec<WeylElement> {
    let set: BTreeSet<WeylElement> = elements.into_iter().map(|w| mode.rep(&w, p)).collect();
    let mut v: Vec<WeylElement> = set.into_iter().collect();
    canonical_sort(&mut v);
    v
}

/// The Iwahori-level admissible set: the downward closure of the
/// translations `t_{σμ}`, sorted canonically.
pub fn admissible_closure(mu: &DominantCochar, provider: &dyn ClosureProvider) -> Result<Vec<WeylElement>> {
    let closure = provider.closure(&translations(mu)?)?;
    let mut v: Vec<WeylElement> = closure.iter().cloned().collect();
    canonical_sort(&mut v);
    Ok(v)
}

/// `Adm_I(μ)` as minimal coset representatives.
pub fn enumerate_admissible(
    mu: &DominantCochar,
    level: &LevelStructure,
    mode: CosetMode,
    provider: &dyn ClosureProvider,
) -> Result<Vec<WeylElement>> {
    let p = parahoric(mu.context(), level)?;
    let closure = provider.closure(&translations(mu)?)?;
    Ok(project(closure.iter().cloned(), &p, mode))
}

/// Which permissibility notion to enumerate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PermKind {
    Naive,
    Wedge { s: usize },
    Spin { s: usize },
    Kr { mu: DominantCochar },
}

impl PermKind {
    pub fn set_name(&self) -> &'static str {
        match self {
            PermKind::Naive => "naive",
            PermKind::Wedge { .. } => "wedge",
            PermKind::Spin { .. } => "spin",
            PermKind::Kr { .. } => "perm-kr",
        }
    }

    pub fn test(&self, w: &WeylElement, level: &LevelStructure) -> Result<bool> {
        match self {
            PermKind::Naive => is_naively_permissible(w, level),
            PermKind::Wedge { s } => is_wedge_permissible(w, level, *s),
            PermKind::Spin { s } => is_spin_permissible(w, level, *s),
            PermKind::Kr { mu } => is_mu_permissible(w, mu, level),
        }
    }
}

/// Coordinate box and optional fixed Kottwitz invariant covering every
/// element that can pass the test.
fn search_box(ctx: GroupContext, kind: &PermKind) -> (i64, i64, Option<i64>) {
    match kind {
        PermKind::Kr { mu } => {
            let e = mu.entries();
            let lo = e.iter().copied().min().unwrap_or(0) - 1;
            let hi = e.iter().copied().max().unwrap_or(0) + 1;
            (lo, hi, Some(kottwitz_of_vector(ctx, e)))
        }
        _ => (-1, 3, None),
    }
}

/// All lattice vectors with coordinates in `[lo, hi]` and, when given, the
/// prescribed Kottwitz invariant.
pub fn lattice_box(ctx: GroupContext, lo: i64, hi: i64, kappa: Option<i64>) -> Vec<Vec<i64>> {
    let n = ctx.ambient_dim();
    let in_range = |x: i64| (lo..=hi).contains(&x);
    let mut out = Vec::new();
    match ctx {
        GroupContext::Gl(_) => {
            let mut cur = vec![lo; n];
            loop {
                if kappa.is_none_or(|k| cur.iter().sum::<i64>() == k) {
                    out.push(cur.clone());
                }
                let mut k = 0;
                while k < n && cur[k] == hi {
                    cur[k] = lo;
                    k += 1;
                }
                if k == n {
                    break;
                }
                cur[k] += 1;
            }
        }
        GroupContext::Gsp(m) | GroupContext::Gu(m) => {
            let unitary = matches!(ctx, GroupContext::Gu(_));
            // pair sum c: GSp takes c = Kottwitz; GU takes c = 2·(middle)
            let centers: Vec<i64> = match (kappa, unitary) {
                (Some(k), false) => vec![k],
                (Some(k), true) => vec![k],
                (None, false) => (2 * lo..=2 * hi).collect(),
                (None, true) => (lo..=hi).collect(),
            };
            for center in centers {
                let c = if unitary { 2 * center } else { center };
                if unitary && !in_range(center) {
                    continue;
                }
                let mut cur = vec![lo; m];
                loop {
                    if cur.iter().all(|&x| in_range(c - x)) {
                        let mut v = vec![0; n];
                        for j in 0..m {
                            v[j] = cur[j];
                            v[n - 1 - j] = c - cur[j];
                        }
                        if unitary {
                            v[m] = center;
                        }
                        out.push(v);
                    }
                    let mut k = 0;
                    while k < m && cur[k] == hi {
                        cur[k] = lo;
                        k += 1;
                    }
                    if k == m {
                        break;
                    }
                    cur[k] += 1;
                }
            }
        }
    }
    out
}

/// Every element `t_λ σ` with `λ` in the search box for `kind`.
pub fn candidate_elements(ctx: GroupContext, kind: &PermKind) -> Vec<WeylElement> {
    let (lo, hi, kappa) = search_box(ctx, kind);
    let perms = ctx.finite_weyl_group();
    let lams = lattice_box(ctx, lo, hi, kappa);
    let mut out = Vec::with_capacity(perms.len() * lams.len());
    for lam in &lams {
        for p in &perms {
            out.push(WeylElement::from_parts_unchecked(ctx, p.clone(), lam.clone()));
        }
    }
    out
}

/// Exhaustive enumeration of a permissible set by box search.
pub fn enumerate_permissible(
    ctx: GroupContext,
    kind: &PermKind,
    level: &LevelStructure,
    mode: CosetMode,
) -> Result<Vec<WeylElement>> {
    if let PermKind::Kr { mu } = kind {
        if mu.context() != ctx {
            return Err(Error::ContextMismatch(ctx, mu.context()));
        }
    } else {
        require_symmetric(ctx)?;
    }
    let p = parahoric(ctx, level)?;
    let mut hits = Vec::new();
    for w in candidate_elements(ctx, kind) {
        if kind.test(&w, level)? {
            hits.push(w);
        }
    }
    Ok(project(hits, &p, mode))
}

/// Project a set of GL(2m) coset representatives (for `W_{GL,±I}`) to the
/// GSp(m) cosets they meet, by scanning each coset for GSp elements.
pub fn intersect_gl_with_gsp(
    gl_reps: &[WeylElement],
    m: usize,
    level: &LevelStructure,
    mode: CosetMode,
) -> Result<Vec<WeylElement>> {
    let gsp = GroupContext::Gsp(m);
    let gl = GroupContext::Gl(2 * m);
    let p_gsp = parahoric(gsp, level)?;
    let p_gl = parahoric(gl, &level.pm_residues(m))?;
    let units = p_gl.elements();
    let mut found = BTreeSet::new();
    for x in gl_reps {
        if x.context() != gl {
            return Err(Error::ContextMismatch(gl, x.context()));
        }
        let hit = match mode {
            CosetMode::Left => units.iter().find_map(|u| x.mul(u).restrict_gl_to_gsp(m)),
            CosetMode::Double => {
                units.iter().find_map(|u| units.iter().find_map(|v| u.mul(x).mul(v).restrict_gl_to_gsp(m)))
            }
        };
        if let Some(y) = hit {
            found.insert(mode.rep(&y, &p_gsp));
        }
    }
    let mut v: Vec<WeylElement> = found.into_iter().collect();
    canonical_sort(&mut v);
    Ok(v)
}

/// Result schema shared with the command line front end.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationResult {
    pub group: String,
    #[serde(rename = "m_or_N")]
    pub m_or_n: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub mu: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub s: Option<usize>,
    #[serde(rename = "I")]
    pub level: Vec<usize>,
    pub set: String,
    pub cosets: CosetMode,
    pub cardinality: usize,
    pub elements: Vec<String>,
}

impl EnumerationResult {
    pub fn new(
        ctx: GroupContext,
        mu: Option<&DominantCochar>,
        s: Option<usize>,
        level: &LevelStructure,
        set: &str,
        mode: CosetMode,
        elements: &[WeylElement],
    ) -> Self {
        EnumerationResult {
            group: ctx.group_name().to_string(),
            m_or_n: ctx.rank(),
            mu: mu.map(|m| m.entries().to_vec()),
            s,
            level: level.indices().to_vec(),
            set: set.to_string(),
            cosets: mode,
            cardinality: elements.len(),
            elements: elements.iter().map(|w| w.canonical_text()).collect(),
        }
    }

    /// Parse the element list back in its context.
    pub fn parse_elements(&self) -> Result<Vec<WeylElement>> {
        let ctx = GroupContext::from_parts(&self.group, self.m_or_n)?;
        self.elements.iter().map(|t| WeylElement::parse(ctx, t)).collect()
    }
}
