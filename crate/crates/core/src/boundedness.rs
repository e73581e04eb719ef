//! `(δ, J)`-, `(δ, j)`- and `𝛅`-boundedness of colourings, and the census of
//! same-colour edge pairs by agreement set.
//!
//! A colouring is `(δ, J)`-bounded when all but at most `δ|V_J|` tuples
//! `S ∈ V_J` have every colour fiber `{e : e_J = S, φ(e) = ℓ}` of size at most
//! `δ|V_{[k]∖J}|`. All comparisons are exact: a count `c` satisfies
//! `c ≤ δN` iff `c ≤ ⌊δN⌋`.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::colouring::{Colour, EdgeColours};
use crate::error::{Error, Result};
use crate::partite::{ClassSizes, JSet};

/// Entries shown in the bad-set sample of serialized reports.
pub const BAD_SET_SAMPLE: usize = 100;

/// `𝛅 = (δ_0, …, δ_{k-1})` with every entry in `(0, 1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaVec(Vec<BigRational>);

impl DeltaVec {
    pub fn new(deltas: Vec<BigRational>) -> Result<Self> {
        if deltas.is_empty() {
            return Err(Error::InvalidParameter("empty delta vector".into()));
        }
        for (j, d) in deltas.iter().enumerate() {
            check_delta(d).map_err(|_| {
                Error::InvalidParameter(format!("delta_{j} = {d} is not in (0, 1]"))
            })?;
        }
        Ok(DeltaVec(deltas))
    }

    /// The same `δ` at every level.
    pub fn uniform(k: usize, delta: BigRational) -> Result<Self> {
        Self::new(vec![delta; k])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, j: usize) -> &BigRational {
        &self.0[j]
    }

    pub fn as_slice(&self) -> &[BigRational] {
        &self.0
    }

    /// `(δ_0/δ_{j⋆}, …, δ_{j⋆-1}/δ_{j⋆})`, each entry capped at 1 (a cap of
    /// 1 or more is vacuous, so the cap does not change any verdict).
    pub fn quotient(&self, j_star: usize) -> DeltaVec {
        let top = &self.0[j_star];
        DeltaVec(
            self.0[..j_star]
                .iter()
                .map(|d| (d / top).min(BigRational::one()))
                .collect(),
        )
    }
}

impl FromStr for DeltaVec {
    type Err = Error;

    /// Comma-separated exact rationals, e.g. `1/2,1/3`.
    fn from_str(s: &str) -> Result<Self> {
        let deltas = s
            .split(',')
            .map(|p| parse_rational(p.trim()))
            .collect::<Result<Vec<_>>>()?;
        DeltaVec::new(deltas)
    }
}

/// Parses `p/q` or an integer into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::InvalidParameter(format!("cannot parse rational {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| bad())?;
    let den = BigInt::from_str(den).map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

fn check_delta(delta: &BigRational) -> Result<()> {
    if delta.is_positive() && *delta <= BigRational::one() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("delta {delta} is not in (0, 1]")))
    }
}

/// `⌊δ·n⌋`, saturating at `u64::MAX`.
pub(crate) fn floor_times(delta: &BigRational, n: u64) -> u64 {
    let prod = delta.numer() * BigInt::from(n);
    let q = prod.div_floor(delta.denom());
    if q.is_negative() {
        0
    } else {
        q.to_u64().unwrap_or(u64::MAX)
    }
}

/// Per-colour fiber counts of one tuple `S ∈ V_J`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberEntry {
    pub tuple: Vec<usize>,
    pub counts: BTreeMap<Colour, u64>,
}

impl FiberEntry {
    /// Most frequent colour and its count; ties go to the smallest colour id.
    pub fn dominant(&self) -> Option<(Colour, u64)> {
        self.counts
            .iter()
            .fold(None, |best: Option<(Colour, u64)>, (&c, &n)| match best {
                Some((_, bn)) if bn >= n => best,
                _ => Some((c, n)),
            })
    }
}

/// Fiber counts of a colouring over `V_J` and the tuples that break the cap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberStats {
    pub j_set: JSet,
    pub delta: BigRational,
    /// `⌊δ|V_{[k]∖J}|⌋`; a fiber count above it is a violation.
    pub cap: u64,
    /// `⌊δ|V_J|⌋`; the number of violating tuples tolerated.
    pub allowed_bad: u64,
    /// Every `S ∈ V_J` in lexicographic order.
    pub fibers: Vec<FiberEntry>,
    pub bad_set: Vec<Vec<usize>>,
}

impl FiberStats {
    /// `(δ, J)`-boundedness verdict.
    pub fn is_bounded(&self) -> bool {
        self.bad_set.len() as u64 <= self.allowed_bad
    }
}

/// Counts for every `S ∈ V_J` and colour `ℓ` the edges with `e_J = S` and
/// `φ(e) = ℓ`, and flags each `S` with some count above `δ|V_{[k]∖J}|`.
pub fn fiber_stats<C: EdgeColours + ?Sized>(
    col: &C,
    j_set: JSet,
    delta: &BigRational,
) -> Result<FiberStats> {
    let sizes = col.sizes();
    check_level(sizes, j_set)?;
    check_delta(delta)?;
    let counts = fiber_counts(col, j_set);
    let rest = sizes.tuple_count(j_set.complement(sizes.k())) as u64;
    let cap = floor_times(delta, rest);
    let allowed_bad = floor_times(delta, sizes.tuple_count(j_set) as u64);
    let mut fibers = Vec::with_capacity(counts.len());
    let mut bad_set = Vec::new();
    for (tuple, map) in sizes.tuples(j_set).zip(counts) {
        if map.values().any(|&n| n > cap) {
            bad_set.push(tuple.clone());
        }
        fibers.push(FiberEntry { tuple, counts: map.into_iter().collect() });
    }
    Ok(FiberStats { j_set, delta: delta.clone(), cap, allowed_bad, fibers, bad_set })
}

fn check_level(sizes: &ClassSizes, j_set: JSet) -> Result<()> {
    sizes.check_jset(j_set)?;
    if j_set == JSet::full(sizes.k()) {
        Err(Error::InvalidLevel(j_set.to_string()))
    } else {
        Ok(())
    }
}

/// Row-major index of `e_J` inside `V_J`.
fn tuple_index(sizes: &ClassSizes, j_set: JSet, edge: &[usize]) -> usize {
    j_set.iter().fold(0, |acc, c| acc * sizes.size(c) + edge[c])
}

fn fiber_counts<C: EdgeColours + ?Sized>(col: &C, j_set: JSet) -> Vec<HashMap<Colour, u64>> {
    let sizes = col.sizes();
    let mut counts = vec![HashMap::new(); sizes.tuple_count(j_set)];
    for (idx, c) in col.coloured_edges() {
        let e = sizes.coords_of(idx);
        *counts[tuple_index(sizes, j_set, &e)].entry(c).or_insert(0) += 1;
    }
    counts
}

/// Number of tuples of `V_J` with some colour fiber above `⌊δ|V_{[k]∖J}|⌋`.
fn bad_count<C: EdgeColours + ?Sized>(col: &C, j_set: JSet, delta: &BigRational) -> u64 {
    let sizes = col.sizes();
    let rest = sizes.tuple_count(j_set.complement(sizes.k())) as u64;
    let cap = floor_times(delta, rest);
    fiber_counts(col, j_set)
        .iter()
        .filter(|m| m.values().any(|&n| n > cap))
        .count() as u64
}

/// `(δ, J)`-boundedness without materialising the fiber table.
pub fn is_set_bounded<C: EdgeColours + ?Sized>(
    col: &C,
    j_set: JSet,
    delta: &BigRational,
) -> Result<bool> {
    check_level(col.sizes(), j_set)?;
    check_delta(delta)?;
    let allowed = floor_times(delta, col.sizes().tuple_count(j_set) as u64);
    Ok(bad_count(col, j_set, delta) <= allowed)
}

/// Sets of size `level` that are not `(δ, J)`-bounded, in lexicographic order.
pub fn failing_sets<C: EdgeColours + ?Sized>(
    col: &C,
    level: usize,
    delta: &BigRational,
) -> Result<Vec<JSet>> {
    let k = col.sizes().k();
    if level >= k {
        return Err(Error::InvalidLevel(format!("level {level} with k = {k}")));
    }
    let mut out = Vec::new();
    for j in JSet::subsets_of_size(k, level) {
        if !is_set_bounded(col, j, delta)? {
            out.push(j);
        }
    }
    Ok(out)
}

/// `(δ, j)`-boundedness: `(δ, J)`-bounded for every `J` of size `j`.
pub fn is_level_bounded<C: EdgeColours + ?Sized>(
    col: &C,
    level: usize,
    delta: &BigRational,
) -> Result<bool> {
    let k = col.sizes().k();
    if level >= k {
        return Err(Error::InvalidLevel(format!("level {level} with k = {k}")));
    }
    for j in JSet::subsets_of_size(k, level) {
        if !is_set_bounded(col, j, delta)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelVerdict {
    pub level: usize,
    pub delta: BigRational,
    pub bounded: bool,
    pub failing_sets: Vec<JSet>,
}

/// Verdicts for every level, the minimal failing level `j⋆` and its
/// lexicographically least witness set `J⋆`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundednessReport {
    pub levels: Vec<LevelVerdict>,
    pub j_star: Option<usize>,
    pub j_star_set: Option<JSet>,
    pub witness_stats: Option<FiberStats>,
}

impl BoundednessReport {
    /// `𝛅`-boundedness.
    pub fn is_bounded(&self) -> bool {
        self.j_star.is_none()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::from("phc 1 boundedness\n");
        for lv in &self.levels {
            let _ = write!(
                out,
                "level {} delta {} bounded {}",
                lv.level,
                lv.delta,
                if lv.bounded { "yes" } else { "no" }
            );
            for j in &lv.failing_sets {
                let _ = write!(out, " {j}");
            }
            out.push('\n');
        }
        match (self.j_star, self.j_star_set) {
            (Some(j), Some(set)) => {
                let _ = writeln!(out, "j_star {j}\nj_star_set {set}");
            }
            _ => out.push_str("j_star none\n"),
        }
        if let Some(fs) = &self.witness_stats {
            let _ = writeln!(
                out,
                "bad_tuples {} allowed {} cap {}",
                fs.bad_set.len(),
                fs.allowed_bad,
                fs.cap
            );
            for s in fs.bad_set.iter().take(BAD_SET_SAMPLE) {
                let _ = writeln!(out, "bad {}", join(s));
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "levels": self.levels.iter().map(|lv| json!({
                "level": lv.level,
                "delta": lv.delta.to_string(),
                "bounded": lv.bounded,
                "failing": lv.failing_sets.iter().map(|j| j.labels()).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
            "j_star": self.j_star,
            "j_star_set": self.j_star_set.map(|j| j.labels()),
            "bad_set_size": self.witness_stats.as_ref().map(|f| f.bad_set.len()),
            "bad_set_sample": self.witness_stats.as_ref().map(|f| {
                f.bad_set.iter().take(BAD_SET_SAMPLE).cloned().collect::<Vec<_>>()
            }),
        })
    }
}

fn join(v: &[usize]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

/// Classifies the colouring level by level against `dv`.
pub fn is_bounded<C: EdgeColours + ?Sized>(col: &C, dv: &DeltaVec) -> Result<BoundednessReport> {
    let k = col.sizes().k();
    if dv.len() != k {
        return Err(Error::InvalidParameter(format!(
            "delta vector has {} entries, expected k = {k}",
            dv.len()
        )));
    }
    let mut levels = Vec::with_capacity(k);
    for level in 0..k {
        let delta = dv.get(level);
        let failing = failing_sets(col, level, delta)?;
        levels.push(LevelVerdict {
            level,
            delta: delta.clone(),
            bounded: failing.is_empty(),
            failing_sets: failing,
        });
    }
    let first = levels.iter().find(|lv| !lv.bounded);
    let j_star = first.map(|lv| lv.level);
    let j_star_set = first.map(|lv| lv.failing_sets[0]);
    let witness_stats = match (j_star, j_star_set) {
        (Some(j), Some(set)) => Some(fiber_stats(col, set, dv.get(j))?),
        _ => None,
    };
    Ok(BoundednessReport { levels, j_star, j_star_set, witness_stats })
}

/// Unordered same-colour edge pairs, classified by their exact agreement set
/// `A = {j : e_j = e'_j}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConflictCensus {
    pub k: usize,
    pub counts: BTreeMap<JSet, u64>,
}

impl ConflictCensus {
    pub fn count(&self, j_set: JSet) -> u64 {
        self.counts.get(&j_set).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::from("phc 1 census\n");
        for (j, n) in &self.counts {
            let _ = writeln!(out, "agree {j} pairs {n}");
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "k": self.k,
            "pairs": self.counts.iter().map(|(j, n)| json!({"agree": j.labels(), "pairs": n}))
                .collect::<Vec<_>>(),
        })
    }
}

/// Exact per-agreement-set conflict counts.
///
/// For every `J` this first counts pairs agreeing on at least `J`
/// (`Σ_S Σ_ℓ C(count(S, ℓ), 2)`) and then inverts over supersets.
pub fn conflict_census<C: EdgeColours + ?Sized>(col: &C) -> ConflictCensus {
    let k = col.sizes().k();
    let at_least: Vec<i128> = JSet::all_subsets(k)
        .map(|j| {
            fiber_counts(col, j)
                .iter()
                .flat_map(|m| m.values())
                .map(|&n| (n as i128) * (n as i128 - 1) / 2)
                .sum()
        })
        .collect();
    let full = JSet::full(k).bits();
    let counts = JSet::proper_subsets(k)
        .map(|j| {
            let exact: i128 = JSet::all_subsets(k)
                .filter(|sup| j.is_subset_of(*sup))
                .map(|sup| {
                    let sign = if (sup.len() - j.len()) % 2 == 0 { 1 } else { -1 };
                    sign * at_least[sup.bits() as usize]
                })
                .sum();
            debug_assert!(exact >= 0);
            (j, exact as u64)
        })
        .collect();
    debug_assert_eq!(at_least[full as usize], 0);
    ConflictCensus { k, counts }
}

/// Outcome of checking the conflict-pair bound `δ|V_J||V_{[k]∖J}|²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConflictBound {
    Holds { pairs: u64, bound: BigRational },
    Violated { pairs: u64, bound: BigRational },
    /// The colouring is not `(δ, J)`-bounded, so the bound does not apply.
    Inapplicable { bad: u64, allowed: u64 },
}

impl ConflictBound {
    pub fn holds(&self) -> bool {
        matches!(self, ConflictBound::Holds { .. })
    }
}

/// For a `(δ, J)`-bounded colouring, compares the number of same-colour pairs
/// with agreement set exactly `J` against `δ|V_J||V_{[k]∖J}|²`.
pub fn check_conflict_bound<C: EdgeColours + ?Sized>(
    col: &C,
    j_set: JSet,
    delta: &BigRational,
) -> Result<ConflictBound> {
    let stats = fiber_stats(col, j_set, delta)?;
    if !stats.is_bounded() {
        return Ok(ConflictBound::Inapplicable {
            bad: stats.bad_set.len() as u64,
            allowed: stats.allowed_bad,
        });
    }
    let sizes = col.sizes();
    let vj = BigInt::from(sizes.tuple_count(j_set));
    let rest = BigInt::from(sizes.tuple_count(j_set.complement(sizes.k())));
    let bound = delta * BigRational::from_integer(vj * &rest * &rest);
    let pairs = conflict_census(col).count(j_set);
    if BigRational::from_integer(BigInt::from(pairs)) <= bound {
        Ok(ConflictBound::Holds { pairs, bound })
    } else {
        Ok(ConflictBound::Violated { pairs, bound })
    }
}
