//! The combinatorial spin condition.
//!
//! For a residue `c` of `nZ ± I` and a naively permissible `μ = μ_c`, the
//! module `F_c` is spanned by `ε_j` (`μ(j) = 0`), `πε_j` (`μ(j) ∈ {0,1}`),
//! `j ≠ m+1`, and the middle element. Each spanner becomes a basis index of
//! `{1..2n}` together with a power of `π`:
//!
//! | `j`              | `ε_j`            | `πε_j`          |
//! |------------------|------------------|-----------------|
//! | `j ≤ m, j ≤ c`   | `j`, `π^0`       | `n+j`, `π^0`    |
//! | `j ≤ m, j > c`   | `n+j`, `π^0`     | `j`, `π^2`      |
//! | `j ≥ m+2, j ≤ c` | `n+j`, `π^-2`    | `j`, `π^0`      |
//! | `j ≥ m+2, j > c` | `j`, `π^0`       | `n+j`, `π^0`    |
//!
//! The middle element contributes `b_- = m+1` or `b_+ = n+m+1` and one power
//! of `π` when `c ≤ m`. For `c = i ∈ I` this is the familiar six-part
//! description of `E_±`; for `c = n - i` it handles the mirrored index.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::faces::displacement;
use crate::weyl::{GroupContext, LevelStructure, WeylElement};

/// Sign of a one-line permutation of `1..=k`.
pub fn perm_sign(perm: &[usize]) -> i32 {
    let mut seen = vec![false; perm.len()];
    let mut sign = 1;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut k = start;
        while !seen[k] {
            seen[k] = true;
            k = perm[k] - 1;
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

fn check_subset(e: &[usize], n: usize) -> Result<BTreeSet<usize>> {
    let set: BTreeSet<usize> = e.iter().copied().collect();
    if set.len() != e.len() || set.len() != n || set.iter().any(|&x| x == 0 || x > 2 * n) {
        return Err(Error::Precondition(format!("E = {e:?} must be an n-subset of 1..={}", 2 * n)));
    }
    Ok(set)
}

/// `E^⊥ = (2n+1 - E)^c`.
pub fn perp(e: &[usize], n: usize) -> Result<Vec<usize>> {
    let set = check_subset(e, n)?;
    Ok((1..=2 * n).filter(|x| !set.contains(&(2 * n + 1 - x))).collect())
}

/// Sign of `σ_E`: `1..n ↦ E` and `n+1..2n ↦ E^c`, both increasing.
pub fn sigma_sign(e: &[usize], n: usize) -> Result<i32> {
    let set = check_subset(e, n)?;
    let mut perm: Vec<usize> = set.iter().copied().collect();
    perm.extend((1..=2 * n).filter(|x| !set.contains(x)));
    Ok(perm_sign(&perm))
}

/// Sign of `σ'_E`: `1..n ↦ 2n+1-E` decreasing and `n+1..2n ↦ E^⊥`
/// increasing.
pub fn sigma_prime_sign(e: &[usize], n: usize) -> Result<i32> {
    let set = check_subset(e, n)?;
    let mut perm: Vec<usize> = set.iter().map(|&x| 2 * n + 1 - x).collect();
    perm.extend(perp(e, n)?);
    Ok(perm_sign(&perm))
}

/// An index `i ∈ I` or its mirror `-i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SignedIndex {
    Plus(usize),
    Minus(usize),
}

impl SignedIndex {
    pub fn residue(self, n: usize) -> usize {
        match self {
            SignedIndex::Plus(i) => i % n,
            SignedIndex::Minus(i) => (n - i % n) % n,
        }
    }

    pub fn value(self) -> i64 {
        match self {
            SignedIndex::Plus(i) => i as i64,
            SignedIndex::Minus(i) => -(i as i64),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SpinCase {
    /// `q > q^⊥`
    Strict,
    /// `q = q^⊥`
    SelfDual,
    /// `q < q^⊥`; never produced by a naively permissible `μ`.
    Unresolved,
}

/// The index sets, exponents and signs attached to one `μ_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpinWitness {
    pub i: i64,
    #[serde(rename = "E_minus")]
    pub e_minus: Vec<usize>,
    #[serde(rename = "E_plus")]
    pub e_plus: Vec<usize>,
    #[serde(rename = "E_perp_minus")]
    pub e_perp_minus: Vec<usize>,
    #[serde(rename = "E_perp_plus")]
    pub e_perp_plus: Vec<usize>,
    pub q: i64,
    pub q_perp: i64,
    pub case: SpinCase,
    pub sgn_minus: i32,
    pub sgn_plus: i32,
    pub satisfied: bool,
}

/// Check `0 ≤ μ ≤ 2`, `Σμ = n`, `μ(m+1) = 1`.
pub fn check_spin_preconditions(ctx: GroupContext, mu: &[i64]) -> Result<()> {
    let GroupContext::Gu(m) = ctx else {
        return Err(Error::Unsupported { ctx, what: "the spin condition needs a GU context" });
    };
    let n = 2 * m + 1;
    if mu.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: mu.len() });
    }
    if let Some((j, x)) = mu.iter().enumerate().find(|(_, x)| !(0..=2).contains(*x)) {
        return Err(Error::Precondition(format!("0 <= mu({}) <= 2 fails: mu({}) = {x}", j + 1, j + 1)));
    }
    let total: i64 = mu.iter().sum();
    if total != n as i64 {
        return Err(Error::Precondition(format!("sum of mu is {total}, expected {n}")));
    }
    if mu[m] != 1 {
        return Err(Error::Precondition(format!("mu({}) = {}, expected 1", m + 1, mu[m])));
    }
    Ok(())
}

/// Basis index and `π`-exponent of `ε_j` (`pi = false`) or `πε_j`.
fn spanner(m: usize, c: usize, j: usize, pi: bool) -> (usize, i64) {
    let n = 2 * m + 1;
    match (j <= m, j <= c, pi) {
        (true, true, false) => (j, 0),
        (true, true, true) => (n + j, 0),
        (true, false, false) => (n + j, 0),
        (true, false, true) => (j, 2),
        (false, true, false) => (n + j, -2),
        (false, true, true) => (j, 0),
        (false, false, false) => (j, 0),
        (false, false, true) => (n + j, 0),
    }
}

/// `π`-exponent carried by basis index `k` at residue `c`.
fn exponent(m: usize, c: usize, k: usize) -> i64 {
    let n = 2 * m + 1;
    if k <= m {
        if k <= c {
            0
        } else {
            2
        }
    } else if k > n + m + 1 {
        if k - n <= c {
            -2
        } else {
            0
        }
    } else {
        0
    }
}

/// Basis set of `F_c` without the middle element, with total exponent.
fn f_indices(m: usize, c: usize, mu: &[i64]) -> (BTreeSet<usize>, i64) {
    let mut set = BTreeSet::new();
    let mut q = 0;
    for j in (1..=2 * m + 1).filter(|&j| j != m + 1) {
        let x = mu[j - 1];
        if x == 0 {
            let (k, e) = spanner(m, c, j, false);
            set.insert(k);
            q += e;
        }
        if x == 0 || x == 1 {
            let (k, e) = spanner(m, c, j, true);
            set.insert(k);
            q += e;
        }
    }
    (set, q)
}

/// Evaluate the spin condition for `μ_i` at the given (signed) index.
pub fn spin_witness(ctx: GroupContext, mu: &[i64], index: SignedIndex) -> Result<SpinWitness> {
    check_spin_preconditions(ctx, mu)?;
    let m = ctx.rank();
    let n = 2 * m + 1;
    let c = index.residue(n);
    let (base, q_base) = f_indices(m, c, mu);
    let mid = if c <= m { 1 } else { 0 };
    let q = mid + q_base;
    let build = |b: usize| -> Result<(Vec<usize>, Vec<usize>, i32)> {
        let mut e = base.clone();
        e.insert(b);
        let e: Vec<usize> = e.into_iter().collect();
        let ep = perp(&e, n)?;
        let sgn = sigma_sign(&e, n)?;
        Ok((e, ep, sgn))
    };
    let (e_minus, e_perp_minus, sgn_minus) = build(m + 1)?;
    let (e_plus, e_perp_plus, sgn_plus) = build(n + m + 1)?;
    let q_perp = mid + e_perp_minus.iter().map(|&k| exponent(m, c, k)).sum::<i64>();
    debug_assert_eq!(q_perp, mid + e_perp_plus.iter().map(|&k| exponent(m, c, k)).sum::<i64>());
    let (case, satisfied) = match q.cmp(&q_perp) {
        std::cmp::Ordering::Greater => (SpinCase::Strict, true),
        std::cmp::Ordering::Equal => {
            (SpinCase::SelfDual, e_minus == e_perp_minus && e_plus == e_perp_plus && sgn_plus == -sgn_minus)
        }
        std::cmp::Ordering::Less => (SpinCase::Unresolved, false),
    };
    Ok(SpinWitness {
        i: index.value(),
        e_minus,
        e_plus,
        e_perp_minus,
        e_perp_plus,
        q,
        q_perp,
        case,
        sgn_minus,
        sgn_plus,
        satisfied,
    })
}

/// Witnesses at every `i ∈ I` and `-i`, `i ≠ 0`.
pub fn witnesses(w: &WeylElement, level: &LevelStructure) -> Result<Vec<SpinWitness>> {
    let ctx = w.context();
    let n = ctx.ambient_dim();
    let mut out = Vec::new();
    for &i in level.indices() {
        let mut idx = vec![SignedIndex::Plus(i)];
        if i != 0 {
            idx.push(SignedIndex::Minus(i));
        }
        for s in idx {
            let mu = displacement(w, s.residue(n) as i64);
            out.push(spin_witness(ctx, &mu, s)?);
        }
    }
    Ok(out)
}

/// Rank of `π` on `F_c`: the spanners `ε_j` whose images `πε_j` are also
/// spanners, i.e. `μ(j) = 0`, `j ≠ m+1`.
fn pi_rank(mu: &[i64], m: usize) -> usize {
    (1..=2 * m + 1).filter(|&j| j != m + 1 && mu[j - 1] == 0).count()
}

/// Naive permissibility, the rank bounds `rk π|F_c ≤ s, n - s`, and the spin
/// condition at every representative index.
pub fn is_spin_permissible(w: &WeylElement, level: &LevelStructure, s: usize) -> Result<bool> {
    let ctx = w.context();
    let GroupContext::Gu(m) = ctx else {
        return Err(Error::Unsupported { ctx, what: "the spin condition needs a GU context" });
    };
    let n = 2 * m + 1;
    for &i in level.indices() {
        let mut idx = vec![SignedIndex::Plus(i)];
        if i != 0 {
            idx.push(SignedIndex::Minus(i));
        }
        for si in idx {
            let mu = displacement(w, si.residue(n) as i64);
            if check_spin_preconditions(ctx, &mu).is_err() {
                return Ok(false);
            }
            let rank = pi_rank(&mu, m);
            if rank > s || rank > n - s {
                return Ok(false);
            }
            if !spin_witness(ctx, &mu, si)?.satisfied {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// All `k`-subsets of `1..=n` in lexicographic order.
    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for x in start..=n {
                cur.push(x);
                rec(x + 1, n, k, cur, out);
                cur.pop();
            }
        }
        rec(1, n, k, &mut cur, &mut out);
        out
    }

    /// Parity by counting inversions.
    fn inversion_sign(perm: &[usize]) -> i32 {
        let mut inv = 0;
        for a in 0..perm.len() {
            for b in a + 1..perm.len() {
                if perm[a] > perm[b] {
                    inv += 1;
                }
            }
        }
        if inv % 2 == 0 {
            1
        } else {
            -1
        }
    }

    #[test]
    fn sign_examples() {
        assert_eq!(sigma_sign(&[1, 2, 3], 3).unwrap(), 1);
        assert_eq!(sigma_sign(&[2, 3, 6], 3).unwrap(), -1);
        assert_eq!(inversion_sign(&[2, 3, 6, 1, 4, 5]), -1);
        assert_eq!(sigma_prime_sign(&[1, 2, 3], 3).unwrap(), 1);
        assert!(sigma_sign(&[1, 2], 3).is_err());
        assert!(sigma_sign(&[1, 1, 2], 3).is_err());
    }

    #[test]
    fn sign_relations_small() {
        for n in [3, 5] {
            let m = (n - 1) / 2;
            let subs = subsets(2 * n, n);
            for e in &subs {
                let s = sigma_sign(e, n).unwrap();
                assert_eq!(s, sigma_sign(&perp(e, n).unwrap(), n).unwrap());
                let expect = if (m + 1) % 2 == 0 { s } else { -s };
                assert_eq!(sigma_prime_sign(e, n).unwrap(), expect);
                assert_eq!(perp(&perp(e, n).unwrap(), n).unwrap(), *e);
            }
        }
    }

    #[test]
    fn cycle_sign_matches_inversions() {
        for e in subsets(8, 4) {
            let set: BTreeSet<usize> = e.iter().copied().collect();
            let mut perm = e.clone();
            perm.extend((1..=8).filter(|x| !set.contains(x)));
            assert_eq!(perm_sign(&perm), inversion_sign(&perm));
        }
    }

    #[test]
    fn witness_example_n3() {
        let gu1 = GroupContext::Gu(1);
        let w = spin_witness(gu1, &[2, 1, 0], SignedIndex::Plus(1)).unwrap();
        assert_eq!(w.e_minus, vec![2, 3, 6]);
        assert_eq!(w.e_plus, vec![3, 5, 6]);
        assert_eq!((w.q, w.q_perp), (1, 1));
        assert_eq!(w.case, SpinCase::SelfDual);
        assert_eq!(w.e_perp_minus, w.e_minus);
        assert_eq!((w.sgn_minus, w.sgn_plus), (-1, 1));
        assert!(w.satisfied);
        let w0 = spin_witness(gu1, &[2, 1, 0], SignedIndex::Plus(0)).unwrap();
        assert_eq!((w0.q, w0.q_perp, w0.case), (1, 1, SpinCase::SelfDual));
    }

    #[test]
    fn preconditions_are_reported() {
        let gu1 = GroupContext::Gu(1);
        assert!(spin_witness(gu1, &[3, 1, -1], SignedIndex::Plus(0)).is_err());
        assert!(spin_witness(gu1, &[2, 0, 1], SignedIndex::Plus(0)).is_err());
        assert!(spin_witness(gu1, &[1, 1, 0], SignedIndex::Plus(0)).is_err());
        assert!(spin_witness(GroupContext::Gsp(1), &[1, 1], SignedIndex::Plus(0)).is_err());
    }

    /// The six-part description of `E_±` for `i ∈ I`, written out literally.
    fn six_part(mu: &[i64], m: usize, i: usize, b: usize) -> Vec<usize> {
        let n = 2 * m + 1;
        let z = |j: usize| mu[j - 1] == 0;
        let zo = |j: usize| mu[j - 1] == 0 || mu[j - 1] == 1;
        let mut e = BTreeSet::new();
        e.extend((1..=i).filter(|&j| z(j)));
        e.extend((i + 1..=m).filter(|&j| zo(j)));
        e.extend((m + 2..=n).filter(|&j| z(j)));
        e.extend((1..=i).filter(|&j| zo(j)).map(|j| n + j));
        e.extend((i + 1..=m).filter(|&j| z(j)).map(|j| n + j));
        e.extend((m + 2..=n).filter(|&j| zo(j)).map(|j| n + j));
        e.insert(b);
        e.into_iter().collect()
    }

    /// Every `μ` with `0 ≤ μ ≤ 2`, `Σμ = n`, `μ(m+1) = 1`.
    fn naive_vectors(m: usize) -> Vec<Vec<i64>> {
        let n = 2 * m + 1;
        let mut out = Vec::new();
        let mut cur = vec![0i64; n];
        loop {
            if cur[m] == 1 && cur.iter().sum::<i64>() == n as i64 {
                out.push(cur.clone());
            }
            let mut k = 0;
            while k < n && cur[k] == 2 {
                cur[k] = 0;
                k += 1;
            }
            if k == n {
                break;
            }
            cur[k] += 1;
        }
        out
    }

    #[test]
    fn recipe_matches_six_part_display() {
        for m in 1..=3 {
            let n = 2 * m + 1;
            let ctx = GroupContext::Gu(m);
            for mu in naive_vectors(m) {
                for i in 0..=m {
                    let w = spin_witness(ctx, &mu, SignedIndex::Plus(i)).unwrap();
                    assert_eq!(w.e_minus, six_part(&mu, m, i, m + 1));
                    assert_eq!(w.e_plus, six_part(&mu, m, i, n + m + 1));
                    let q = 1 + 2 * (i + 1..=m).filter(|&j| mu[j - 1] <= 1).count() as i64;
                    let qp = 1 + 2 * (i + 1..=m).filter(|&j| mu[n - j] == 2).count() as i64;
                    assert_eq!((w.q, w.q_perp), (q, qp));
                }
            }
        }
    }

    #[test]
    fn json_field_names() {
        let w = spin_witness(GroupContext::Gu(1), &[2, 1, 0], SignedIndex::Plus(1)).unwrap();
        let text = serde_json::to_string(&w).unwrap();
        for key in
            ["\"i\":1", "\"E_minus\"", "\"E_plus\"", "\"q_perp\"", "\"case\":\"SELF_DUAL\"", "\"satisfied\":true"]
        {
            assert!(text.contains(key), "{text}");
        }
    }

    #[test]
    fn translation_is_spin_permissible() {
        let gu1 = GroupContext::Gu(1);
        let iw = LevelStructure::iwahori(gu1);
        let t = WeylElement::translation(gu1, &[2, 1, 0]).unwrap();
        assert!(is_spin_permissible(&t, &iw, 1).unwrap());
        assert!(!is_spin_permissible(&WeylElement::identity(gu1), &iw, 1).unwrap());
    }
}
