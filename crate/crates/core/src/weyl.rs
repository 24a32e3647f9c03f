//! Extended affine Weyl groups of `GL_N`, `GSp_2m` and the ramified odd
//! unitary group `GU_{2m+1}`.
//!
//! Elements are stored as `t_λ σ`: a translation vector together with a
//! finite permutation in one-line notation (1-indexed). The affine action is
//! `x ↦ λ + σx` with `(σx)(σ(j)) = x(j)`, so that
//! `(t_λ σ)(t_μ τ) = t_{λ + σμ} στ`.
//!
//! For the unitary group the translation lattice is the coinvariant lattice
//! `{x ∈ Z^n : x_1 + x_n = … = x_m + x_{m+2} = 2 x_{m+1}}`; its sublattice
//! `X_*(S)` is `2·X_*(T)_Γ` and is not modelled separately.

use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;

use crate::error::{Error, Result};

/// Which group, with its rank parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupContext {
    /// `GL_N`, ambient dimension `N`.
    Gl(usize),
    /// `GSp_{2m}`, ambient dimension `2m`.
    Gsp(usize),
    /// Ramified `GU_{2m+1}`, ambient dimension `2m + 1`.
    Gu(usize),
}

impl GroupContext {
    pub fn gl(n: usize) -> Result<Self> {
        if n == 0 || n > 64 {
            return Err(Error::InvalidContext(format!("GL({n}) needs 1 <= N <= 64")));
        }
        Ok(GroupContext::Gl(n))
    }

    pub fn gsp(m: usize) -> Result<Self> {
        if m == 0 || m > 32 {
            return Err(Error::InvalidContext(format!("GSp({m}) needs 1 <= m <= 32")));
        }
        Ok(GroupContext::Gsp(m))
    }

    /// `GU(m)` acts on `n = 2m + 1 >= 3` coordinates.
    pub fn gu(m: usize) -> Result<Self> {
        if m == 0 || m > 31 {
            return Err(Error::InvalidContext(format!("GU({m}) needs n = 2m+1 >= 3, i.e. 1 <= m <= 31")));
        }
        Ok(GroupContext::Gu(m))
    }

    pub fn from_parts(group: &str, rank: usize) -> Result<Self> {
        match group.to_ascii_uppercase().as_str() {
            "GL" => Self::gl(rank),
            "GSP" => Self::gsp(rank),
            "GU" => Self::gu(rank),
            other => Err(Error::InvalidContext(format!("unknown group {other:?}"))),
        }
    }

    pub fn ambient_dim(self) -> usize {
        match self {
            GroupContext::Gl(n) => n,
            GroupContext::Gsp(m) => 2 * m,
            GroupContext::Gu(m) => 2 * m + 1,
        }
    }

    /// `N` for GL, `m` for GSp and GU.
    pub fn rank(self) -> usize {
        match self {
            GroupContext::Gl(n) => n,
            GroupContext::Gsp(m) | GroupContext::Gu(m) => m,
        }
    }

    pub fn group_name(self) -> &'static str {
        match self {
            GroupContext::Gl(_) => "GL",
            GroupContext::Gsp(_) => "GSP",
            GroupContext::Gu(_) => "GU",
        }
    }

    /// The index `m + 1` of the coordinate fixed by the unitary Weyl group.
    pub fn middle(self) -> Option<usize> {
        match self {
            GroupContext::Gu(m) => Some(m + 1),
            _ => None,
        }
    }

    pub fn is_symmetric(self) -> bool {
        !matches!(self, GroupContext::Gl(_))
    }

    /// `j* = N + 1 - j`.
    #[inline]
    pub fn star(self, j: usize) -> usize {
        self.ambient_dim() + 1 - j
    }

    fn check_dim(self, len: usize) -> Result<()> {
        let n = self.ambient_dim();
        if len != n {
            return Err(Error::DimensionMismatch { expected: n, got: len });
        }
        Ok(())
    }

    pub fn is_valid_perm(self, perm: &[u8]) -> bool {
        let n = self.ambient_dim();
        if perm.len() != n {
            return false;
        }
        let mut seen = vec![false; n + 1];
        for &p in perm {
            let p = p as usize;
            if p == 0 || p > n || seen[p] {
                return false;
            }
            seen[p] = true;
        }
        if self.is_symmetric() {
            for j in 1..=n {
                if perm[self.star(j) - 1] as usize != self.star(perm[j - 1] as usize) {
                    return false;
                }
            }
        }
        true
    }

    /// Membership in the translation lattice.
    pub fn in_lattice(self, x: &[i64]) -> bool {
        if x.len() != self.ambient_dim() {
            return false;
        }
        match self {
            GroupContext::Gl(_) => true,
            GroupContext::Gsp(m) => {
                let c = x[0] + x[2 * m - 1];
                (1..=m).all(|j| x[j - 1] + x[self.star(j) - 1] == c)
            }
            GroupContext::Gu(m) => {
                let c = 2 * x[m];
                (1..=m).all(|j| x[j - 1] + x[self.star(j) - 1] == c)
            }
        }
    }

    /// Membership of a rational point in the real span of the lattice.
    pub fn in_apartment(self, x: &[Rational64]) -> bool {
        if x.len() != self.ambient_dim() {
            return false;
        }
        match self {
            GroupContext::Gl(_) => true,
            GroupContext::Gsp(m) => {
                let c = x[0] + x[2 * m - 1];
                (1..=m).all(|j| x[j - 1] + x[self.star(j) - 1] == c)
            }
            GroupContext::Gu(m) => {
                let c = x[m] * 2;
                (1..=m).all(|j| x[j - 1] + x[self.star(j) - 1] == c)
            }
        }
    }

    /// The finite Weyl group as one-line permutations, in lexicographic order:
    /// `S_N` for GL and the centralizer `S_N^*` of `j ↦ j*` otherwise.
    pub fn finite_weyl_group(self) -> Vec<Vec<u8>> {
        let n = self.ambient_dim();
        let mut out = Vec::new();
        match self {
            GroupContext::Gl(_) => {
                let mut p: Vec<u8> = (1..=n as u8).collect();
                loop {
                    out.push(p.clone());
                    if !next_permutation(&mut p) {
                        break;
                    }
                }
            }
            GroupContext::Gsp(m) | GroupContext::Gu(m) => {
                // a signed permutation of the m pairs {j, j*}
                let mut base: Vec<u8> = (1..=m as u8).collect();
                loop {
                    for signs in 0u32..(1 << m) {
                        let mut perm = vec![0u8; n];
                        for j in 1..=m {
                            let target = base[j - 1] as usize;
                            let img = if signs >> (j - 1) & 1 == 1 { self.star(target) } else { target };
                            perm[j - 1] = img as u8;
                            perm[self.star(j) - 1] = self.star(img) as u8;
                        }
                        if let Some(mid) = self.middle() {
                            perm[mid - 1] = mid as u8;
                        }
                        out.push(perm);
                    }
                    if !next_permutation(&mut base) {
                        break;
                    }
                }
                out.sort();
            }
        }
        out
    }
}

impl fmt::Display for GroupContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.group_name(), self.rank())
    }
}

pub(crate) fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Apply a one-line permutation to a vector: `(σx)(σ(j)) = x(j)`.
pub fn permute<T: Copy + Default>(perm: &[u8], x: &[T]) -> Vec<T> {
    let mut y = vec![T::default(); x.len()];
    for (j, &xj) in x.iter().enumerate() {
        y[perm[j] as usize - 1] = xj;
    }
    y
}

/// An element `t_λ σ` of an extended affine Weyl group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElement {
    ctx: GroupContext,
    perm: Vec<u8>,
    trans: Vec<i64>,
}

impl WeylElement {
    /// Validated constructor.
    pub fn new(ctx: GroupContext, perm: Vec<u8>, trans: Vec<i64>) -> Result<Self> {
        ctx.check_dim(perm.len())?;
        ctx.check_dim(trans.len())?;
        if !ctx.is_valid_perm(&perm) {
            return Err(Error::InvalidPermutation { ctx, perm });
        }
        if !ctx.in_lattice(&trans) {
            return Err(Error::LatticeViolation { ctx, vector: trans });
        }
        Ok(WeylElement { ctx, perm, trans })
    }

    pub(crate) fn from_parts_unchecked(ctx: GroupContext, perm: Vec<u8>, trans: Vec<i64>) -> Self {
        debug_assert!(ctx.is_valid_perm(&perm) && ctx.in_lattice(&trans));
        WeylElement { ctx, perm, trans }
    }

    pub fn identity(ctx: GroupContext) -> Self {
        let n = ctx.ambient_dim();
        WeylElement { ctx, perm: (1..=n as u8).collect(), trans: vec![0; n] }
    }

    pub fn translation(ctx: GroupContext, lambda: &[i64]) -> Result<Self> {
        let n = ctx.ambient_dim();
        Self::new(ctx, (1..=n as u8).collect(), lambda.to_vec())
    }

    pub fn finite(ctx: GroupContext, perm: Vec<u8>) -> Result<Self> {
        let n = ctx.ambient_dim();
        Self::new(ctx, perm, vec![0; n])
    }

    pub fn context(&self) -> GroupContext {
        self.ctx
    }

    pub fn perm(&self) -> &[u8] {
        &self.perm
    }

    pub fn trans(&self) -> &[i64] {
        &self.trans
    }

    pub fn is_identity(&self) -> bool {
        self.trans.iter().all(|&t| t == 0) && self.perm.iter().enumerate().all(|(j, &p)| p as usize == j + 1)
    }

    pub fn is_translation(&self) -> bool {
        self.perm.iter().enumerate().all(|(j, &p)| p as usize == j + 1)
    }

    /// `t_{λ_a + σ_a λ_b} σ_a σ_b`.
    pub fn compose(&self, other: &WeylElement) -> Result<WeylElement> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch(self.ctx, other.ctx));
        }
        Ok(self.mul(other))
    }

    /// Composition without the context check; callers guarantee equal contexts.
    pub(crate) fn mul(&self, other: &WeylElement) -> WeylElement {
        debug_assert_eq!(self.ctx, other.ctx);
        let moved = permute(&self.perm, &other.trans);
        let trans = self.trans.iter().zip(&moved).map(|(a, b)| a + b).collect();
        let perm = other.perm.iter().map(|&p| self.perm[p as usize - 1]).collect();
        WeylElement { ctx: self.ctx, perm, trans }
    }

    /// `t_{-σ⁻¹λ} σ⁻¹`.
    pub fn inverse(&self) -> WeylElement {
        let mut inv = vec![0u8; self.perm.len()];
        for (j, &p) in self.perm.iter().enumerate() {
            inv[p as usize - 1] = (j + 1) as u8;
        }
        let moved = permute(&inv, &self.trans);
        let trans = moved.into_iter().map(|t| -t).collect();
        WeylElement { ctx: self.ctx, perm: inv, trans }
    }

    /// Affine action on integer points.
    pub fn act(&self, x: &[i64]) -> Vec<i64> {
        let moved = permute(&self.perm, x);
        self.trans.iter().zip(moved).map(|(t, y)| t + y).collect()
    }

    /// Affine action on integer points scaled by `denom`: acts on `x / denom`
    /// and returns the numerators over the same denominator.
    pub fn act_scaled(&self, x: &[i64], denom: i64) -> Vec<i64> {
        let moved = permute(&self.perm, x);
        self.trans.iter().zip(moved).map(|(t, y)| t * denom + y).collect()
    }

    /// Affine action on rational points.
    pub fn affine_action(&self, x: &[Rational64]) -> Result<Vec<Rational64>> {
        self.ctx.check_dim(x.len())?;
        let moved = permute(&self.perm, x);
        Ok(self.trans.iter().zip(moved).map(|(&t, y)| Rational64::from_integer(t) + y).collect())
    }

    /// The integer classifying the `W_a`-coset: `Σλ` (GL), `λ_1 + λ_{2m}`
    /// (GSp) or `λ_{m+1}` (GU).
    pub fn kottwitz_invariant(&self) -> i64 {
        kottwitz_of_vector(self.ctx, &self.trans)
    }

    /// Drop the middle coordinate: `W̃_GU ↪ W̃_GSp`, an index-2 embedding.
    pub fn embed_gu_to_gsp(&self) -> Result<WeylElement> {
        let GroupContext::Gu(m) = self.ctx else {
            return Err(Error::Unsupported { ctx: self.ctx, what: "embed_gu_to_gsp needs a GU element" });
        };
        let mid = m + 1;
        let reindex = |p: usize| if p > mid { p - 1 } else { p };
        let perm = (1..=2 * m + 1).filter(|&j| j != mid).map(|j| reindex(self.perm[j - 1] as usize) as u8).collect();
        let trans = (1..=2 * m + 1).filter(|&j| j != mid).map(|j| self.trans[j - 1]).collect();
        Ok(WeylElement { ctx: GroupContext::Gsp(m), perm, trans })
    }

    /// Inverse of [`embed_gu_to_gsp`](Self::embed_gu_to_gsp) on its image,
    /// i.e. on elements whose Kottwitz invariant is even.
    pub fn lift_gsp_to_gu(&self) -> Result<Option<WeylElement>> {
        let GroupContext::Gsp(m) = self.ctx else {
            return Err(Error::Unsupported { ctx: self.ctx, what: "lift_gsp_to_gu needs a GSp element" });
        };
        let c = self.kottwitz_invariant();
        if c.rem_euclid(2) != 0 {
            return Ok(None);
        }
        let mid = m + 1;
        let reindex = |p: usize| if p >= mid { p + 1 } else { p };
        let mut perm = Vec::with_capacity(2 * m + 1);
        let mut trans = Vec::with_capacity(2 * m + 1);
        for j in 1..=2 * m {
            if j == mid {
                perm.push(mid as u8);
                trans.push(c / 2);
            }
            perm.push(reindex(self.perm[j - 1] as usize) as u8);
            trans.push(self.trans[j - 1]);
        }
        Ok(Some(WeylElement { ctx: GroupContext::Gu(m), perm, trans }))
    }

    /// `W̃_GSp ↪ W̃_GL(2m)`: the same data with the invariants relaxed.
    pub fn embed_gsp_to_gl(&self) -> Result<WeylElement> {
        let GroupContext::Gsp(m) = self.ctx else {
            return Err(Error::Unsupported { ctx: self.ctx, what: "embed_gsp_to_gl needs a GSp element" });
        };
        Ok(WeylElement { ctx: GroupContext::Gl(2 * m), perm: self.perm.clone(), trans: self.trans.clone() })
    }

    /// Restriction of a GL(2m) element back to GSp(m), if it lies there.
    pub fn restrict_gl_to_gsp(&self, m: usize) -> Option<WeylElement> {
        let ctx = GroupContext::Gsp(m);
        if self.ctx != GroupContext::Gl(2 * m) || !ctx.is_valid_perm(&self.perm) || !ctx.in_lattice(&self.trans) {
            return None;
        }
        Some(WeylElement { ctx, perm: self.perm.clone(), trans: self.trans.clone() })
    }

    /// Canonical text form `perm=[..];trans=[..]`.
    pub fn canonical_text(&self) -> String {
        self.to_string()
    }

    pub fn parse(ctx: GroupContext, text: &str) -> Result<WeylElement> {
        let raw: RawElement = text.parse()?;
        WeylElement::new(ctx, raw.perm, raw.trans)
    }
}

pub fn kottwitz_of_vector(ctx: GroupContext, x: &[i64]) -> i64 {
    match ctx {
        GroupContext::Gl(_) => x.iter().sum(),
        GroupContext::Gsp(m) => x[0] + x[2 * m - 1],
        GroupContext::Gu(m) => x[m],
    }
}

fn write_list<T: fmt::Display>(f: &mut fmt::Formatter<'_>, xs: &[T]) -> fmt::Result {
    f.write_str("[")?;
    for (k, x) in xs.iter().enumerate() {
        if k > 0 {
            f.write_str(",")?;
        }
        write!(f, "{x}")?;
    }
    f.write_str("]")
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("perm=")?;
        write_list(f, &self.perm)?;
        f.write_str(";trans=")?;
        write_list(f, &self.trans)
    }
}

/// Context-free parse result of the canonical text form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawElement {
    pub perm: Vec<u8>,
    pub trans: Vec<i64>,
}

fn parse_list<T: FromStr>(s: &str, what: &str) -> Result<Vec<T>> {
    let inner = s
        .trim()
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("{what}: expected [..], got {s:?}")))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|t| t.trim().parse::<T>().map_err(|_| Error::Parse(format!("{what}: bad entry {t:?}"))))
        .collect()
}

impl FromStr for RawElement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (p, t) = s.trim().split_once(';').ok_or_else(|| Error::Parse(format!("missing ';' in {s:?}")))?;
        let p = p.trim().strip_prefix("perm=").ok_or_else(|| Error::Parse(format!("missing perm= in {s:?}")))?;
        let t = t.trim().strip_prefix("trans=").ok_or_else(|| Error::Parse(format!("missing trans= in {s:?}")))?;
        Ok(RawElement { perm: parse_list(p, "perm")?, trans: parse_list(t, "trans")? })
    }
}

/// The orbit of `mu` under the finite Weyl group, deduplicated and sorted.
pub fn weyl_orbit(ctx: GroupContext, mu: &[i64]) -> Result<Vec<Vec<i64>>> {
    ctx.check_dim(mu.len())?;
    if !ctx.in_lattice(mu) {
        return Err(Error::LatticeViolation { ctx, vector: mu.to_vec() });
    }
    let mut orbit: Vec<Vec<i64>> = ctx.finite_weyl_group().iter().map(|p| permute(p, mu)).collect();
    orbit.sort();
    orbit.dedup();
    Ok(orbit)
}

/// `ω_i = ((-1)^(c), 0^(p-c)) - b·𝟏` where `i = p·b + c`, `0 <= c < p`, and
/// `p` is the ambient dimension.
pub fn omega_vertex(ctx: GroupContext, i: i64) -> Vec<i64> {
    let p = ctx.ambient_dim() as i64;
    let b = i.div_euclid(p);
    let c = i.rem_euclid(p) as usize;
    (0..p as usize).map(|k| if k < c { -1 - b } else { -b }).collect()
}

/// A nonempty level `I`: a subset of `{0..m}` for GSp and GU, or an explicit
/// residue set in `{0..N-1}` for GL.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LevelStructure {
    indices: Vec<usize>,
}

impl LevelStructure {
    pub fn new(ctx: GroupContext, indices: &[usize]) -> Result<Self> {
        let mut v = indices.to_vec();
        v.sort_unstable();
        v.dedup();
        if v.is_empty() {
            return Err(Error::InvalidLevel("I must be nonempty".into()));
        }
        let bound = match ctx {
            GroupContext::Gl(n) => n - 1,
            GroupContext::Gsp(m) | GroupContext::Gu(m) => m,
        };
        if let Some(&bad) = v.iter().find(|&&i| i > bound) {
            return Err(Error::InvalidLevel(format!("index {bad} out of range 0..={bound} for {ctx}")));
        }
        Ok(LevelStructure { indices: v })
    }

    /// The Iwahori level: every index.
    pub fn iwahori(ctx: GroupContext) -> Self {
        let top = match ctx {
            GroupContext::Gl(n) => n - 1,
            GroupContext::Gsp(m) | GroupContext::Gu(m) => m,
        };
        LevelStructure { indices: (0..=top).collect() }
    }

    /// Every nonempty level for the context, in lexicographic order of the
    /// sorted index lists.
    pub fn all(ctx: GroupContext) -> Vec<Self> {
        let top = LevelStructure::iwahori(ctx).indices.len();
        let mut out: Vec<Self> = (1u64..(1 << top))
            .map(|mask| LevelStructure { indices: (0..top).filter(|k| mask >> k & 1 == 1).collect() })
            .collect();
        out.sort();
        out
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    /// Residues of `pZ ± I` modulo the period `p`, sorted.
    pub fn representatives(&self, ctx: GroupContext) -> Vec<usize> {
        let p = ctx.ambient_dim();
        let mut out: Vec<usize> = match ctx {
            GroupContext::Gl(_) => self.indices.clone(),
            _ => self.indices.iter().flat_map(|&i| [i % p, (p - i) % p]).collect(),
        };
        out.sort_unstable();
        out.dedup();
        out
    }

    /// The GL(2m) residue set `±I` attached to a GSp(m) level.
    pub fn pm_residues(&self, m: usize) -> LevelStructure {
        let p = 2 * m;
        let mut v: Vec<usize> = self.indices.iter().flat_map(|&i| [i % p, (p - i) % p]).collect();
        v.sort_unstable();
        v.dedup();
        LevelStructure { indices: v }
    }

    /// Parse a comma separated index list such as `0,2`.
    pub fn parse_indices(text: &str) -> Result<Vec<usize>> {
        text.split(',')
            .filter(|t| !t.trim().is_empty())
            .map(|t| t.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad level index {t:?}"))))
            .collect()
    }
}

impl fmt::Display for LevelStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.indices.iter().map(|i| i.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}
