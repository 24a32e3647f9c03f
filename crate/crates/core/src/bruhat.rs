//! Alcove geometry, length, Bruhat order, parahoric subgroups and minimal
//! coset representatives.
//!
//! The base alcove of every context contains the point
//! `p = (-(N-1)/N, …, -1/N, 0)`, the barycenter of `ω_0, …, ω_{N-1}`.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use num_rational::Rational64;
use parking_lot::RwLock;
use rand::Rng;

use crate::error::{Error, Result};
use crate::weyl::{omega_vertex, GroupContext, LevelStructure, WeylElement};

/// The affine hyperplane `x_i - x_j = level`, `i < j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hyperplane {
    pub i: usize,
    pub j: usize,
    pub level: i64,
}

/// Coordinate pairs `(i, j)`, `i < j`, indexing the root hyperplane families.
pub fn root_pairs(ctx: GroupContext) -> Vec<(usize, usize)> {
    let n = ctx.ambient_dim();
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            match ctx {
                GroupContext::Gl(_) => out.push((i, j)),
                GroupContext::Gsp(_) | GroupContext::Gu(_) => {
                    if ctx.middle().is_some_and(|mid| i == mid || j == mid) {
                        continue;
                    }
                    if (i, j) <= (ctx.star(j), ctx.star(i)) {
                        out.push((i, j));
                    }
                }
            }
        }
    }
    out
}

/// Numerators of the base point over the denominator `N`.
fn base_scaled(n: usize) -> Vec<i64> {
    (1..=n as i64).map(|j| j - n as i64).collect()
}

/// An interior point of the base alcove.
pub fn base_alcove_point(ctx: GroupContext) -> Vec<Rational64> {
    let n = ctx.ambient_dim() as i64;
    base_scaled(ctx.ambient_dim()).into_iter().map(|p| Rational64::new(p, n)).collect()
}

/// Whether `x` lies strictly inside the base alcove: on the apartment and on
/// the same side of every hyperplane as the base point.
pub fn in_base_alcove(ctx: GroupContext, x: &[Rational64]) -> bool {
    if !ctx.in_apartment(x) {
        return false;
    }
    let one = Rational64::from_integer(1);
    root_pairs(ctx).into_iter().all(|(i, j)| {
        let d = x[i - 1] - x[j - 1];
        d < Rational64::from_integer(0) && d > -one
    })
}

#[inline]
fn pair_floor(q: &[i64], n: i64, i: usize, j: usize) -> i64 {
    (q[i - 1] - q[j - 1]).div_euclid(n)
}

/// Hyperplanes strictly between the base alcove and its image under `w`.
pub fn separating_hyperplanes(w: &WeylElement) -> Vec<Hyperplane> {
    let ctx = w.context();
    let n = ctx.ambient_dim();
    let q = w.act_scaled(&base_scaled(n), n as i64);
    let mut out = Vec::new();
    for (i, j) in root_pairs(ctx) {
        let fl = pair_floor(&q, n as i64, i, j);
        let levels = if fl >= 0 { 0..=fl } else { fl + 1..=-1 };
        out.extend(levels.map(|level| Hyperplane { i, j, level }));
    }
    out
}

/// Number of separating hyperplanes.
pub fn length(w: &WeylElement) -> usize {
    let ctx = w.context();
    let n = ctx.ambient_dim();
    let q = w.act_scaled(&base_scaled(n), n as i64);
    let n = n as i64;
    root_pairs(ctx).into_iter().map(|(i, j)| (pair_floor(&q, n, i, j) + 1).unsigned_abs() as usize).sum()
}

fn gl_reflection_parts(n: usize, i: usize, j: usize, k: i64, perm: &mut [u8], trans: &mut [i64]) {
    debug_assert!(perm.len() == n);
    perm.swap(i - 1, j - 1);
    trans[i - 1] += k;
    trans[j - 1] -= k;
}

/// The affine reflection across `x_i - x_j = k` on the apartment.
pub fn reflection(ctx: GroupContext, h: Hyperplane) -> WeylElement {
    let n = ctx.ambient_dim();
    let mut perm: Vec<u8> = (1..=n as u8).collect();
    let mut trans = vec![0i64; n];
    gl_reflection_parts(n, h.i, h.j, h.level, &mut perm, &mut trans);
    if ctx.is_symmetric() && h.j != ctx.star(h.i) {
        gl_reflection_parts(n, ctx.star(h.j), ctx.star(h.i), h.level, &mut perm, &mut trans);
    }
    WeylElement::from_parts_unchecked(ctx, perm, trans)
}

/// Walls of the base alcove, labelled `0..` as affine simple reflections.
pub fn simple_walls(ctx: GroupContext) -> Vec<(usize, Hyperplane)> {
    let h = |i, j, level| Hyperplane { i, j, level };
    match ctx {
        GroupContext::Gl(1) => Vec::new(),
        GroupContext::Gl(n) => {
            let mut v = vec![(0, h(1, n, -1))];
            v.extend((1..n).map(|j| (j, h(j, j + 1, 0))));
            v
        }
        GroupContext::Gsp(m) => {
            let mut v = vec![(0, h(1, 2 * m, -1))];
            v.extend((1..=m).map(|j| (j, h(j, j + 1, 0))));
            v
        }
        GroupContext::Gu(m) => {
            let mut v = vec![(0, h(1, 2 * m + 1, -1))];
            v.extend((1..m).map(|j| (j, h(j, j + 1, 0))));
            v.push((m, h(m, m + 2, 0)));
            v
        }
    }
}

/// Simple affine reflections with their labels.
pub fn simple_reflections(ctx: GroupContext) -> Vec<(usize, WeylElement)> {
    simple_walls(ctx).into_iter().map(|(label, h)| (label, reflection(ctx, h))).collect()
}

/// The length-zero element with the given Kottwitz invariant.
pub fn omega_element(ctx: GroupContext, kappa: i64) -> WeylElement {
    let n = ctx.ambient_dim();
    let trans: Vec<i64> = match ctx {
        GroupContext::Gl(_) => {
            let mut t = vec![0; n];
            t[0] = kappa;
            t
        }
        GroupContext::Gsp(m) => (0..n).map(|k| if k < m { kappa } else { 0 }).collect(),
        GroupContext::Gu(m) => (0..n)
            .map(|k| {
                if k < m {
                    2 * kappa
                } else if k == m {
                    kappa
                } else {
                    0
                }
            })
            .collect(),
    };
    let t = WeylElement::from_parts_unchecked(ctx, (1..=n as u8).collect(), trans);
    omega_decompose(&t).1
}

/// `w = w_a · ω` with `w_a` in the affine Weyl group and `ω` of length zero.
pub fn omega_decompose(w: &WeylElement) -> (WeylElement, WeylElement) {
    let (_, omega) = reduced_word(w);
    (w.mul(&omega.inverse()), omega)
}

/// A reduced word `s_{l_1} ⋯ s_{l_k} ω` for `w`, obtained by repeatedly
/// stripping a left descent.
pub fn reduced_word(w: &WeylElement) -> (Vec<usize>, WeylElement) {
    let simples = simple_reflections(w.context());
    let mut cur = w.clone();
    let mut len = length(&cur);
    let mut word = Vec::with_capacity(len);
    while len > 0 {
        let (label, next) = simples
            .iter()
            .map(|(label, s)| (*label, s.mul(&cur)))
            .find(|(_, x)| length(x) < len)
            .expect("an element of positive length has a left descent");
        word.push(label);
        cur = next;
        len -= 1;
    }
    (word, cur)
}

/// Elements covered by `w`.
pub fn covers_below(w: &WeylElement) -> Vec<WeylElement> {
    let ctx = w.context();
    let target = match length(w).checked_sub(1) {
        Some(t) => t,
        None => return Vec::new(),
    };
    let mut out: Vec<WeylElement> = separating_hyperplanes(w)
        .into_iter()
        .map(|h| reflection(ctx, h).mul(w))
        .filter(|x| length(x) == target)
        .collect();
    out.sort();
    out.dedup();
    out
}

fn check_same(ctx: GroupContext, items: &[&WeylElement]) -> Result<()> {
    for x in items {
        if x.context() != ctx {
            return Err(Error::ContextMismatch(ctx, x.context()));
        }
    }
    Ok(())
}

/// `a ≤ b` in the Bruhat order, by a downward search from `b` pruned at the
/// length of `a`.
pub fn bruhat_leq(a: &WeylElement, b: &WeylElement) -> Result<bool> {
    check_same(a.context(), &[b])?;
    if a.kottwitz_invariant() != b.kottwitz_invariant() {
        return Ok(false);
    }
    let (la, lb) = (length(a), length(b));
    if la > lb {
        return Ok(false);
    }
    let mut layer: HashSet<WeylElement> = HashSet::from([b.clone()]);
    for _ in la..lb {
        let mut next = HashSet::new();
        for x in &layer {
            next.extend(covers_below(x));
        }
        layer = next;
    }
    Ok(layer.contains(a))
}

/// Union of the lower Bruhat intervals of the seeds.
pub fn downward_closure(seeds: &[WeylElement]) -> Result<HashSet<WeylElement>> {
    let Some(first) = seeds.first() else {
        return Ok(HashSet::new());
    };
    let ctx = first.context();
    check_same(ctx, &seeds.iter().collect::<Vec<_>>())?;
    let mut by_len: HashMap<usize, HashSet<WeylElement>> = HashMap::new();
    let mut top = 0;
    for s in seeds {
        let l = length(s);
        top = top.max(l);
        by_len.entry(l).or_default().insert(s.clone());
    }
    let mut all = HashSet::new();
    for l in (0..=top).rev() {
        let layer = by_len.remove(&l).unwrap_or_default();
        if l > 0 {
            let below = by_len.entry(l - 1).or_default();
            for x in &layer {
                below.extend(covers_below(x));
            }
        }
        all.extend(layer);
    }
    Ok(all)
}

/// Something that can produce downward closures, possibly from a cache.
pub trait ClosureProvider: Sync {
    fn closure(&self, seeds: &[WeylElement]) -> Result<Arc<HashSet<WeylElement>>>;
}

/// Uncached closures.
#[derive(Debug, Default, Clone, Copy)]
pub struct DirectClosure;

impl ClosureProvider for DirectClosure {
    fn closure(&self, seeds: &[WeylElement]) -> Result<Arc<HashSet<WeylElement>>> {
        downward_closure(seeds).map(Arc::new)
    }
}

/// In-memory memo of closures keyed by their sorted seed list; concurrent
/// readers, exclusive insertion.
#[derive(Debug, Default)]
pub struct BruhatCache {
    closures: RwLock<HashMap<Vec<WeylElement>, Arc<HashSet<WeylElement>>>>,
}

impl BruhatCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.closures.read().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, seeds: &[WeylElement]) -> Option<Arc<HashSet<WeylElement>>> {
        self.closures.read().get(&normalize_seeds(seeds)).cloned()
    }

    pub fn insert(&self, seeds: &[WeylElement], closure: Arc<HashSet<WeylElement>>) {
        self.closures.write().insert(normalize_seeds(seeds), closure);
    }

    /// `a ≤ b` using the memoized closure of `b`.
    pub fn leq(&self, a: &WeylElement, b: &WeylElement) -> Result<bool> {
        check_same(a.context(), &[b])?;
        if a.kottwitz_invariant() != b.kottwitz_invariant() || length(a) > length(b) {
            return Ok(false);
        }
        Ok(self.closure(std::slice::from_ref(b))?.contains(a))
    }
}

pub(crate) fn normalize_seeds(seeds: &[WeylElement]) -> Vec<WeylElement> {
    let mut v = seeds.to_vec();
    v.sort();
    v.dedup();
    v
}

impl ClosureProvider for BruhatCache {
    fn closure(&self, seeds: &[WeylElement]) -> Result<Arc<HashSet<WeylElement>>> {
        if let Some(hit) = self.get(seeds) {
            return Ok(hit);
        }
        let fresh = Arc::new(downward_closure(seeds)?);
        let mut guard = self.closures.write();
        Ok(guard.entry(normalize_seeds(seeds)).or_insert(fresh).clone())
    }
}

/// A standard parahoric subgroup `W_I`, generated by the simple reflections
/// fixing every `ω_i`, `i ∈ I ∪ (p - I)`.
#[derive(Clone, Debug)]
pub struct Parahoric {
    ctx: GroupContext,
    level: Option<LevelStructure>,
    labels: Vec<usize>,
    generators: Vec<WeylElement>,
}

impl Parahoric {
    /// The trivial subgroup.
    pub fn trivial(ctx: GroupContext) -> Self {
        Parahoric { ctx, level: None, labels: Vec::new(), generators: Vec::new() }
    }

    /// The subgroup generated by the simple reflections with the given labels.
    pub fn from_labels(ctx: GroupContext, labels: &[usize]) -> Result<Self> {
        let simples = simple_reflections(ctx);
        let mut chosen = Vec::new();
        let mut ls = Vec::new();
        for &l in labels {
            let (_, s) = simples
                .iter()
                .find(|(lab, _)| *lab == l)
                .ok_or_else(|| Error::InvalidLevel(format!("no simple reflection {l} in {ctx}")))?;
            if !ls.contains(&l) {
                ls.push(l);
                chosen.push(s.clone());
            }
        }
        if ls.len() == simples.len() && !simples.is_empty() {
            return Err(Error::InvalidLevel("all simple reflections generate an infinite group".into()));
        }
        Ok(Parahoric { ctx, level: None, labels: ls, generators: chosen })
    }

    pub fn context(&self) -> GroupContext {
        self.ctx
    }

    pub fn level(&self) -> Option<&LevelStructure> {
        self.level.as_ref()
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn generators(&self) -> &[WeylElement] {
        &self.generators
    }

    /// All elements of the (finite) group, sorted.
    pub fn elements(&self) -> Vec<WeylElement> {
        let mut seen: HashSet<WeylElement> = HashSet::from([WeylElement::identity(self.ctx)]);
        let mut frontier: Vec<WeylElement> = seen.iter().cloned().collect();
        while let Some(x) = frontier.pop() {
            for g in &self.generators {
                let y = x.mul(g);
                if seen.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        let mut v: Vec<_> = seen.into_iter().collect();
        v.sort();
        v
    }

    pub fn contains(&self, w: &WeylElement) -> bool {
        w.context() == self.ctx && self.elements().contains(w)
    }
}

/// `W_{G,I}`.
pub fn parahoric(ctx: GroupContext, level: &LevelStructure) -> Result<Parahoric> {
    let reps = level.representatives(ctx);
    if reps.is_empty() {
        return Err(Error::InvalidLevel("I must be nonempty".into()));
    }
    let vertices: Vec<Vec<i64>> = reps.iter().map(|&i| omega_vertex(ctx, i as i64)).collect();
    let mut labels = Vec::new();
    let mut generators = Vec::new();
    for (label, s) in simple_reflections(ctx) {
        if vertices.iter().all(|v| s.act(v) == *v) {
            labels.push(label);
            generators.push(s);
        }
    }
    Ok(Parahoric { ctx, level: Some(level.clone()), labels, generators })
}

/// The minimal-length element of `left · w · right`.
pub fn min_length_rep(w: &WeylElement, left: &Parahoric, right: &Parahoric) -> Result<WeylElement> {
    if left.ctx != w.context() {
        return Err(Error::ContextMismatch(w.context(), left.ctx));
    }
    if right.ctx != w.context() {
        return Err(Error::ContextMismatch(w.context(), right.ctx));
    }
    let mut cur = w.clone();
    let mut len = length(&cur);
    loop {
        let mut moved = false;
        for s in &left.generators {
            let x = s.mul(&cur);
            let lx = length(&x);
            if lx < len {
                cur = x;
                len = lx;
                moved = true;
            }
        }
        for s in &right.generators {
            let x = cur.mul(s);
            let lx = length(&x);
            if lx < len {
                cur = x;
                len = lx;
                moved = true;
            }
        }
        if !moved {
            return Ok(cur);
        }
    }
}

/// Minimal representative of `w · W_I`.
pub fn coset_rep(w: &WeylElement, p: &Parahoric) -> WeylElement {
    min_length_rep(w, &Parahoric::trivial(w.context()), p).expect("contexts checked by caller")
}

/// Minimal representative of `W_I · w · W_I`.
pub fn double_coset_rep(w: &WeylElement, p: &Parahoric) -> WeylElement {
    min_length_rep(w, p, p).expect("contexts checked by caller")
}

/// `left·a·right ≤ left·b·right`, compared through minimal representatives.
pub fn bruhat_leq_cosets(a: &WeylElement, b: &WeylElement, left: &Parahoric, right: &Parahoric) -> Result<bool> {
    let a0 = min_length_rep(a, left, right)?;
    let b0 = min_length_rep(b, left, right)?;
    bruhat_leq(&a0, &b0)
}

/// Sort by `(length, canonical text)`.
pub fn canonical_sort(v: &mut [WeylElement]) {
    v.sort_by_cached_key(|w| (length(w), w.canonical_text()));
}

/// A random element: a random Ω-part followed by `steps` random simple
/// reflections.
pub fn random_element<R: Rng + ?Sized>(ctx: GroupContext, rng: &mut R, steps: usize, kappa_bound: i64) -> WeylElement {
    let simples = simple_reflections(ctx);
    let kappa = rng.random_range(-kappa_bound..=kappa_bound);
    let mut w = omega_element(ctx, kappa);
    for _ in 0..steps {
        if simples.is_empty() {
            break;
        }
        let (_, s) = &simples[rng.random_range(0..simples.len())];
        w = s.mul(&w);
    }
    w
}
