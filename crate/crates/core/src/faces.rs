//! Faces of type `I` and their μ-vectors.
//!
//! A face is stored on the residues of `pZ ± I` modulo the period `p`; the
//! value at any other index follows from `v_{i+p} = v_i - 𝟏`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::weyl::{omega_vertex, GroupContext, LevelStructure, WeylElement};

fn require_symmetric(ctx: GroupContext) -> Result<()> {
    if !ctx.is_symmetric() {
        return Err(Error::Unsupported { ctx, what: "faces of type I need a GSp or GU context" });
    }
    Ok(())
}

fn star_vec(x: &[i64]) -> Vec<i64> {
    x.iter().rev().copied().collect()
}

/// A failed face axiom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FaceViolation {
    Monotonicity { i: i64, j: i64 },
    Sums { i: i64, j: i64 },
    Duality { i: i64 },
    OddLevel { d: i64 },
}

/// A family `(v_i)` over `pZ ± I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceOfTypeI {
    ctx: GroupContext,
    level: LevelStructure,
    vectors: BTreeMap<usize, Vec<i64>>,
    d: i64,
}

impl FaceOfTypeI {
    /// Build from vectors on the representative residues, computing `d` and
    /// checking the face axioms.
    pub fn from_vectors(ctx: GroupContext, level: LevelStructure, vectors: BTreeMap<usize, Vec<i64>>) -> Result<Self> {
        let face = Self::unchecked(ctx, level, vectors)?;
        let bad = face.violations();
        if !bad.is_empty() {
            return Err(Error::Precondition(format!("not a face of type I: {bad:?}")));
        }
        Ok(face)
    }

    fn unchecked(ctx: GroupContext, level: LevelStructure, vectors: BTreeMap<usize, Vec<i64>>) -> Result<Self> {
        require_symmetric(ctx)?;
        let reps = level.representatives(ctx);
        if vectors.keys().copied().collect::<Vec<_>>() != reps {
            return Err(Error::InvalidLevel(format!("face must be given on residues {reps:?}")));
        }
        let n = ctx.ambient_dim();
        if let Some(v) = vectors.values().find(|v| v.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, got: v.len() });
        }
        let mut face = FaceOfTypeI { ctx, level, vectors, d: 0 };
        let i0 = reps[0] as i64;
        face.d = face.vector(i0)[0] + face.vector(-i0)[n - 1];
        Ok(face)
    }

    pub fn context(&self) -> GroupContext {
        self.ctx
    }

    pub fn level(&self) -> &LevelStructure {
        &self.level
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn stored(&self) -> &BTreeMap<usize, Vec<i64>> {
        &self.vectors
    }

    /// `v_k` for any `k ∈ pZ ± I`.
    pub fn vector(&self, k: i64) -> Vec<i64> {
        let p = self.ctx.ambient_dim() as i64;
        let base = &self.vectors[&(k.rem_euclid(p) as usize)];
        let shift = k.div_euclid(p);
        base.iter().map(|x| x - shift).collect()
    }

    /// Face axioms F2–F4 on the stored residues (F1 holds by construction),
    /// plus evenness of `d` in the unitary case.
    pub fn violations(&self) -> Vec<FaceViolation> {
        let p = self.ctx.ambient_dim() as i64;
        let reps: Vec<i64> = self.vectors.keys().map(|&k| k as i64).collect();
        let mut out = Vec::new();
        // consecutive indices, including the wrap to the next period
        let mut chain = reps.clone();
        chain.push(reps[0] + p);
        for w in chain.windows(2) {
            let (a, b) = (self.vector(w[0]), self.vector(w[1]));
            if a.iter().zip(&b).any(|(x, y)| x < y) {
                out.push(FaceViolation::Monotonicity { i: w[0], j: w[1] });
            }
        }
        for &i in &reps {
            for &j in &reps {
                let si: i64 = self.vector(i).iter().sum();
                let sj: i64 = self.vector(j).iter().sum();
                if si - sj != j - i {
                    out.push(FaceViolation::Sums { i, j });
                }
            }
        }
        for &i in &reps {
            let lhs = self.vector(i);
            let rhs = star_vec(&self.vector(-i));
            if lhs.iter().zip(&rhs).any(|(a, b)| a + b != self.d) {
                out.push(FaceViolation::Duality { i });
            }
        }
        if matches!(self.ctx, GroupContext::Gu(_)) && self.d.rem_euclid(2) != 0 {
            out.push(FaceViolation::OddLevel { d: self.d });
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.violations().is_empty()
    }

    pub fn to_json(&self) -> FaceJson {
        FaceJson {
            level: self.level.indices().to_vec(),
            d: self.d,
            v: self.vectors.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
        }
    }

    pub fn from_json(ctx: GroupContext, json: &FaceJson) -> Result<Self> {
        let level = LevelStructure::new(ctx, &json.level)?;
        let vectors = json
            .v
            .iter()
            .map(|(k, v)| {
                k.parse::<usize>().map(|k| (k, v.clone())).map_err(|_| Error::Parse(format!("bad index {k:?}")))
            })
            .collect::<Result<BTreeMap<_, _>>>()?;
        let face = Self::from_vectors(ctx, level, vectors)?;
        if face.d != json.d {
            return Err(Error::Parse(format!("stored d = {} but the vectors give {}", json.d, face.d)));
        }
        Ok(face)
    }
}

/// Serialized form `{"I": [...], "d": d, "v": {"i": [...]}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceJson {
    #[serde(rename = "I")]
    pub level: Vec<usize>,
    pub d: i64,
    pub v: BTreeMap<String, Vec<i64>>,
}

/// The 0-face `(ω_i)`.
pub fn standard_face(ctx: GroupContext, level: &LevelStructure) -> Result<FaceOfTypeI> {
    require_symmetric(ctx)?;
    let vectors = level.representatives(ctx).into_iter().map(|i| (i, omega_vertex(ctx, i as i64))).collect();
    FaceOfTypeI::unchecked(ctx, level.clone(), vectors)
}

/// The face `(w·ω_i)`.
pub fn face_of(w: &WeylElement, level: &LevelStructure) -> Result<FaceOfTypeI> {
    let ctx = w.context();
    require_symmetric(ctx)?;
    let vectors = level.representatives(ctx).into_iter().map(|i| (i, w.act(&omega_vertex(ctx, i as i64)))).collect();
    FaceOfTypeI::unchecked(ctx, level.clone(), vectors)
}

/// `μ_i = v_i - ω_i` on the representative residues.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MuFamily {
    ctx: GroupContext,
    mu: BTreeMap<usize, Vec<i64>>,
    d: i64,
}

impl MuFamily {
    /// Raw constructor for hand-built (possibly corrupted) families.
    pub fn from_parts(ctx: GroupContext, mu: BTreeMap<usize, Vec<i64>>, d: i64) -> Self {
        MuFamily { ctx, mu, d }
    }

    pub fn context(&self) -> GroupContext {
        self.ctx
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn stored(&self) -> &BTreeMap<usize, Vec<i64>> {
        &self.mu
    }

    /// `μ_k` for any `k ∈ pZ ± I`.
    pub fn get(&self, k: i64) -> &[i64] {
        let p = self.ctx.ambient_dim() as i64;
        &self.mu[&(k.rem_euclid(p) as usize)]
    }
}

pub fn mu_family(face: &FaceOfTypeI) -> Result<MuFamily> {
    let bad = face.violations();
    if !bad.is_empty() {
        return Err(Error::Precondition(format!("invalid face: {bad:?}")));
    }
    Ok(mu_family_unchecked(face))
}

pub(crate) fn mu_family_unchecked(face: &FaceOfTypeI) -> MuFamily {
    let mu = face
        .vectors
        .iter()
        .map(|(&i, v)| {
            let om = omega_vertex(face.ctx, i as i64);
            (i, v.iter().zip(om).map(|(a, b)| a - b).collect())
        })
        .collect();
    MuFamily { ctx: face.ctx, mu, d: face.d }
}

/// `μ_i = w·ω_i - ω_i` for the given residue.
pub fn displacement(w: &WeylElement, i: i64) -> Vec<i64> {
    let om = omega_vertex(w.context(), i);
    w.act(&om).iter().zip(&om).map(|(a, b)| a - b).collect()
}

/// `A_i = {1..i} ∪ {i*..N}`.
pub fn a_set(ctx: GroupContext, i: usize) -> Vec<usize> {
    let n = ctx.ambient_dim();
    (1..=n).filter(|&j| j <= i || j >= n + 1 - i).collect()
}

/// `B_i = {i+1..N-i}`.
pub fn b_set(ctx: GroupContext, i: usize) -> Vec<usize> {
    let n = ctx.ambient_dim();
    (i + 1..=n - i).collect()
}

/// A failed basic inequality `lower ≤ μ_index(j) + μ_index(j*) ≤ upper`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasicViolation {
    pub index: i64,
    pub j: usize,
    pub sum: i64,
    pub lower: i64,
    pub upper: i64,
}

/// Check the basic inequalities at every `i ∈ I` and their counterparts at
/// `-i`; an empty result means all hold.
pub fn check_basic_inequalities(mu: &MuFamily, level: &LevelStructure) -> Vec<BasicViolation> {
    let ctx = mu.ctx;
    let d = mu.d;
    let mut out = Vec::new();
    for &i in level.indices() {
        for (index, a_band, b_band) in [(i as i64, (d, d + 1), (d - 1, d)), (-(i as i64), (d - 1, d), (d, d + 1))] {
            let v = mu.get(index);
            for (set, (lower, upper)) in [(a_set(ctx, i), a_band), (b_set(ctx, i), b_band)] {
                for j in set {
                    let sum = v[j - 1] + v[ctx.star(j) - 1];
                    if sum < lower || sum > upper {
                        out.push(BasicViolation { index, j, sum, lower, upper });
                    }
                }
            }
        }
    }
    out
}

/// `μ + μ* = 𝐝`.
pub fn is_self_dual(mu: &[i64], d: i64) -> bool {
    let n = mu.len();
    (0..n).all(|k| mu[k] + mu[n - 1 - k] == d)
}

/// Whether `μ(j) + μ(j*) = d` for every `j` in `set`.
pub fn pair_sums_equal(mu: &[i64], set: &[usize], d: i64) -> bool {
    let n = mu.len();
    set.iter().all(|&j| mu[j - 1] + mu[n - j] == d)
}
