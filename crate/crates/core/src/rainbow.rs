//! Randomized extraction of rainbow boxes from bounded colourings.
//!
//! Both samplers draw independent uniform vertex subsets per class from a
//! ChaCha stream keyed by `(seed, attempt)`, so a run is reproducible given its
//! seed. Successes are always re-verified before they are returned.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::boundedness::DeltaVec;
use crate::colouring::{Colour, Colouring, EdgeColours};
use crate::error::{Error, Result};
use crate::hypergraph::ColouredHypergraph;
use crate::partite::{ClassSizes, JSet, SubBox};

pub const DEFAULT_RETRIES: usize = 50;

/// What one sampling attempt saw.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SampleDiagnostics {
    pub attempt: usize,
    /// Same-colour pairs in the sample, keyed by exact agreement set.
    pub conflicts: BTreeMap<JSet, u64>,
    /// Edges present in the sample (dense sampler only).
    pub edges_present: Option<u64>,
    /// Vertices removed by deletion repair (box sampler only).
    pub deletions: u64,
}

impl SampleDiagnostics {
    pub fn total_conflicts(&self) -> u64 {
        self.conflicts.values().sum()
    }

    fn to_json(&self) -> Value {
        let table: Vec<Value> = self
            .conflicts
            .iter()
            .map(|(j, c)| json!({"j": j.labels(), "count": c}))
            .collect();
        json!({
            "attempt": self.attempt,
            "conflicts": table,
            "edges_present": self.edges_present,
            "deletions": self.deletions,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RainbowResult {
    pub sub_box: SubBox,
    /// Surviving edges of the dense sampler; the box sampler returns the
    /// whole box and leaves this `None`.
    pub edges: Option<Vec<Vec<usize>>>,
    pub diagnostics: SampleDiagnostics,
}

/// Hypotheses of the dense sampler, reported but never enforced.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DenseFeasibility {
    /// `2^{k+3}/d ≤ m ≤ min n_j`.
    pub size_ok: bool,
    /// `δ_j < 1/(2^{k+1} m^{2k-j})` per level, when a `𝛅` was supplied.
    pub delta_ok: Option<Vec<bool>>,
}

impl DenseFeasibility {
    pub fn holds(&self) -> bool {
        self.size_ok && self.delta_ok.as_ref().is_none_or(|v| v.iter().all(|&b| b))
    }
}

/// A full sampler run: the first success, if any, and every attempt made.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RainbowRun {
    pub seed: u64,
    pub result: Option<RainbowResult>,
    pub attempts: Vec<SampleDiagnostics>,
    pub feasibility: Option<DenseFeasibility>,
    /// Why no attempt was made, if none was.
    pub note: Option<String>,
}

impl RainbowRun {
    pub fn succeeded(&self) -> bool {
        self.result.is_some()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "seed": self.seed,
            "success": self.succeeded(),
            "retries_used": self.attempts.len(),
            "box": self.result.as_ref().map(|r| r.sub_box.classes()),
            "edges": self.result.as_ref().and_then(|r| r.edges.as_ref()).map(|es| es.len()),
            "feasibility": self.feasibility,
            "note": self.note,
            "attempts": self.attempts.iter().map(SampleDiagnostics::to_json).collect::<Vec<_>>(),
        })
    }
}

fn pow2(e: usize) -> BigInt {
    BigInt::one() << e
}

fn int(n: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Per-level verdicts of `δ_j ≤ 1/(2^{3k-j} t^{2k-j-1})`.
pub fn check_simplerain(dv: &DeltaVec, t: usize, sizes: &ClassSizes) -> Result<Vec<bool>> {
    let k = sizes.k();
    if dv.len() != k {
        return Err(Error::InvalidParameter(format!("delta vector has {} entries, k = {k}", dv.len())));
    }
    if t == 0 || 2 * t > sizes.min_size() {
        return Err(Error::InvalidParameter(format!(
            "t = {t} needs 1 <= t <= min n_j / 2 = {}",
            sizes.min_size() / 2
        )));
    }
    Ok((0..k)
        .map(|j| {
            let den = pow2(3 * k - j) * BigInt::from(t).pow((2 * k - j - 1) as u32);
            dv.get(j) * BigRational::from_integer(den) <= BigRational::one()
        })
        .collect())
}

/// Hypotheses of the dense sampler for density `d` and sample size `m`.
pub fn dense_feasibility(d: &BigRational, m: usize, sizes: &ClassSizes, dv: Option<&DeltaVec>) -> DenseFeasibility {
    let k = sizes.k();
    let size_ok = *d > BigRational::zero()
        && BigRational::from_integer(pow2(k + 3)) <= d * int(m)
        && m <= sizes.min_size();
    let delta_ok = dv.map(|dv| {
        (0..k.min(dv.len()))
            .map(|j| {
                let den = pow2(k + 1) * BigInt::from(m).pow((2 * k - j) as u32);
                dv.get(j) * BigRational::from_integer(den) < BigRational::one()
            })
            .collect()
    });
    DenseFeasibility { size_ok, delta_ok }
}

/// True iff the given edges are all coloured and no two share a colour.
pub fn verify_rainbow<C, I>(col: &C, edges: I) -> bool
where
    C: EdgeColours + ?Sized,
    I: IntoIterator,
    I::Item: AsRef<[usize]>,
{
    let mut seen = std::collections::HashSet::new();
    for e in edges {
        let Ok(i) = col.sizes().index_of(e.as_ref()) else { return false };
        match col.colour_at(i) {
            Some(c) if seen.insert(c) => {}
            _ => return false,
        }
    }
    true
}

/// True iff every edge of the box gets a distinct colour.
pub fn verify_rainbow_box(col: &Colouring, sub_box: &SubBox) -> bool {
    sub_box.check_fits(col.sizes()).is_ok() && verify_rainbow(col, sub_box.edges())
}

fn attempt_rng(seed: u64, attempt: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(attempt as u64);
    rng
}

fn sample_classes(rng: &mut ChaCha8Rng, sizes: &ClassSizes, size: usize) -> Vec<Vec<usize>> {
    (0..sizes.k())
        .map(|i| {
            let mut w = index::sample(rng, sizes.size(i), size).into_vec();
            w.sort_unstable();
            w
        })
        .collect()
}

fn agreement(e: &[usize], f: &[usize]) -> JSet {
    JSet::from_classes((0..e.len()).filter(|&i| e[i] == f[i]))
}

/// Calls `visit(a, b, J)` for every same-colour pair `a < b` of `edges`,
/// colours in ascending order, pairs in edge order within a colour.
fn for_each_conflict<F: FnMut(usize, usize, JSet)>(edges: &[(Vec<usize>, Colour)], mut visit: F) {
    let mut groups: HashMap<Colour, Vec<usize>> = HashMap::new();
    for (i, (_, c)) in edges.iter().enumerate() {
        groups.entry(*c).or_default().push(i);
    }
    let mut colours: Vec<Colour> = groups.keys().copied().collect();
    colours.sort_unstable();
    for c in colours {
        let g = &groups[&c];
        for (x, &a) in g.iter().enumerate() {
            for &b in &g[x + 1..] {
                visit(a, b, agreement(&edges[a].0, &edges[b].0));
            }
        }
    }
}

/// Samples `2t` vertices per class, deletes one vertex per same-colour pair
/// and keeps the `t` lowest survivors per class.
///
/// The deleted vertex lies in the lowest class where the pair differs and is
/// the smaller of the two. Pairs already broken by an earlier deletion are
/// skipped.
pub fn sample_rainbow_box(col: &Colouring, t: usize, seed: u64, max_retries: usize) -> Result<RainbowRun> {
    let sizes = col.sizes();
    if t == 0 || 2 * t > sizes.min_size() {
        return Err(Error::InvalidParameter(format!(
            "t = {t} needs 1 <= t <= min n_j / 2 = {}",
            sizes.min_size() / 2
        )));
    }
    let k = sizes.k();
    let mut attempts = Vec::new();
    for attempt in 0..max_retries {
        let mut rng = attempt_rng(seed, attempt);
        let w = sample_classes(&mut rng, sizes, 2 * t);
        let wbox = SubBox::new(w.clone()).expect("sorted samples");
        let edges: Vec<(Vec<usize>, Colour)> = wbox
            .edges()
            .map(|e| {
                let c = col.colour_unchecked(&e);
                (e, c)
            })
            .collect();
        let mut deleted: Vec<Vec<bool>> = sizes.sizes().iter().map(|&n| vec![false; n]).collect();
        let mut conflicts: BTreeMap<JSet, u64> = BTreeMap::new();
        let mut deletions = 0u64;
        for_each_conflict(&edges, |a, b, j| {
            *conflicts.entry(j).or_default() += 1;
            let (e, f) = (&edges[a].0, &edges[b].0);
            let alive = |x: &[usize], del: &Vec<Vec<bool>>| (0..k).all(|i| !del[i][x[i]]);
            if alive(e, &deleted) && alive(f, &deleted) {
                let c = (0..k).find(|&i| !j.contains(i)).expect("distinct edges differ somewhere");
                deleted[c][e[c].min(f[c])] = true;
                deletions += 1;
            }
        });
        let diag = SampleDiagnostics { attempt, conflicts, edges_present: None, deletions };
        let survivors: Vec<Vec<usize>> = w
            .iter()
            .enumerate()
            .map(|(i, wi)| wi.iter().copied().filter(|&v| !deleted[i][v]).take(t).collect())
            .collect();
        if survivors.iter().all(|s| s.len() == t) {
            let trimmed = SubBox::new(survivors).expect("sorted survivors");
            if verify_rainbow_box(col, &trimmed) {
                attempts.push(diag.clone());
                return Ok(RainbowRun {
                    seed,
                    result: Some(RainbowResult { sub_box: trimmed, edges: None, diagnostics: diag }),
                    attempts,
                    feasibility: None,
                    note: None,
                });
            }
        }
        attempts.push(diag);
    }
    Ok(RainbowRun { seed, result: None, attempts, feasibility: None, note: None })
}

/// Samples `m` vertices per class of a coloured hypergraph and accepts iff the
/// induced edges carry pairwise distinct colours and at least `d m^k / 2` of
/// them are present. Nothing is deleted.
pub fn sample_rainbow_dense(
    h: &ColouredHypergraph,
    m: usize,
    dv: Option<&DeltaVec>,
    seed: u64,
    max_retries: usize,
) -> Result<RainbowRun> {
    let sizes = h.sizes().clone();
    if m == 0 || m > sizes.min_size() {
        return Err(Error::InvalidParameter(format!(
            "m = {m} needs 1 <= m <= min n_j = {}",
            sizes.min_size()
        )));
    }
    let k = sizes.k();
    let d = h.density();
    let feasibility = Some(dense_feasibility(&d, m, &sizes, dv));
    if d.is_zero() {
        return Ok(RainbowRun {
            seed,
            result: None,
            attempts: Vec::new(),
            feasibility,
            note: Some("hypergraph has no edges, density 0".into()),
        });
    }
    // accept when 2·Y·∏n ≥ |E|·m^k
    let total = BigInt::from(sizes.num_edges());
    let need = BigInt::from(h.num_coloured()) * BigInt::from(m).pow(k as u32);
    let mut attempts = Vec::new();
    for attempt in 0..max_retries {
        let mut rng = attempt_rng(seed, attempt);
        let w = sample_classes(&mut rng, &sizes, m);
        let wbox = SubBox::new(w).expect("sorted samples");
        let edges: Vec<(Vec<usize>, Colour)> = wbox
            .edges()
            .filter_map(|e| h.colour(&e).map(|c| (e, c)))
            .collect();
        let mut conflicts: BTreeMap<JSet, u64> = BTreeMap::new();
        for_each_conflict(&edges, |_, _, j| *conflicts.entry(j).or_default() += 1);
        let y = edges.len() as u64;
        let diag = SampleDiagnostics { attempt, conflicts, edges_present: Some(y), deletions: 0 };
        let dense_enough = BigInt::from(2 * y) * &total >= need;
        if diag.total_conflicts() == 0 && dense_enough {
            let kept: Vec<Vec<usize>> = edges.into_iter().map(|(e, _)| e).collect();
            assert!(verify_rainbow(h, &kept), "accepted sample is not rainbow");
            attempts.push(diag.clone());
            return Ok(RainbowRun {
                seed,
                result: Some(RainbowResult { sub_box: wbox, edges: Some(kept), diagnostics: diag }),
                attempts,
                feasibility,
                note: None,
            });
        }
        attempts.push(diag);
    }
    Ok(RainbowRun { seed, result: None, attempts, feasibility, note: None })
}
