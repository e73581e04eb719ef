//! The case analysis of the upper-bound argument as an algorithm: classify
//! the colouring against `𝛅`, then follow the branch for the minimal
//! failing level `j⋆` down to a verified canonical box.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use serde::Serialize;
use serde_json::{json, Value};

use crate::boundedness::{is_bounded, DeltaVec, FiberStats};
use crate::canonical::{is_j_canonical, CanonicalWitness};
use crate::colouring::{Colour, Colouring};
use crate::error::{Error, Result};
use crate::extremal::{check_assumption, extract_complete_box, AssumptionCheck, ExtractMode, ExtremalInstance};
use crate::hypergraph::{ColouredHypergraph, PartiteHypergraph};
use crate::partite::{Budget, ClassSizes, JSet, SubBox};
use crate::rainbow::{sample_rainbow_box, sample_rainbow_dense, RainbowRun, DEFAULT_RETRIES};

/// Default node budget for complete-box extraction.
pub const DEFAULT_NODE_BUDGET: u64 = 50_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PipelineConfig {
    pub retries: usize,
    pub node_budget: u64,
    /// Dense-sampler class size for `j⋆ ≥ 2`; defaults to
    /// `min(max(t, n_min/2), n_min)` over the classes of `J⋆`.
    pub m: Option<usize>,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig { retries: DEFAULT_RETRIES, node_budget: DEFAULT_NODE_BUDGET, m: None }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    Bounded,
    Level0,
    Level1,
    Higher,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FailedStep {
    /// `t` does not fit the colouring or the rainbow sampler's `2t ≤ n`.
    Precondition,
    RainbowSampler,
    HeavySetEmpty,
    BoxPrinciple,
    DenseSampler,
    StarEmpty,
    Extraction,
    BudgetExhausted,
    /// A box was extracted but did not verify; indicates a bug.
    Verification,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PipelineFailure {
    pub branch: Branch,
    pub step: FailedStep,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SplitKind {
    Equal,
    Distinct,
}

/// Output of the box principle: a subset on which `ℓ` is constant or
/// injective.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Split<T> {
    Equal(Vec<(T, Colour)>),
    Distinct(Vec<(T, Colour)>),
}

impl<T> Split<T> {
    pub fn kind(&self) -> SplitKind {
        match self {
            Split::Equal(_) => SplitKind::Equal,
            Split::Distinct(_) => SplitKind::Distinct,
        }
    }

    pub fn items(&self) -> &[(T, Colour)] {
        match self {
            Split::Equal(v) | Split::Distinct(v) => v,
        }
    }
}

/// Returns `Equal` with the first `threshold` items of the largest colour
/// class (ties to the smallest colour) when that class reaches `threshold`,
/// otherwise `Distinct` with the first item of every colour, provided there
/// are at least `threshold` colours.
pub fn box_principle_split<T: Clone>(items: &[(T, Colour)], threshold: usize) -> Option<Split<T>> {
    assert!(threshold >= 1, "threshold must be positive");
    let mut classes: BTreeMap<Colour, Vec<usize>> = BTreeMap::new();
    for (i, (_, c)) in items.iter().enumerate() {
        classes.entry(*c).or_default().push(i);
    }
    let largest = classes
        .iter()
        .fold(None, |best: Option<(&Colour, &Vec<usize>)>, (c, v)| match best {
            Some((_, bv)) if bv.len() >= v.len() => best,
            _ => Some((c, v)),
        });
    match largest {
        Some((_, v)) if v.len() >= threshold => {
            Some(Split::Equal(v[..threshold].iter().map(|&i| items[i].clone()).collect()))
        }
        _ if classes.len() >= threshold => {
            Some(Split::Distinct(classes.values().map(|v| items[v[0]].clone()).collect()))
        }
        _ => None,
    }
}

/// Base tuples on the classes of `J` with their colours, and every edge of
/// the colouring extending a base tuple in that tuple's colour.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarHypergraph {
    pub j_set: JSet,
    pub base: Vec<(Vec<usize>, Colour)>,
    pub hypergraph: PartiteHypergraph,
}

pub fn build_star(col: &Colouring, j_set: JSet, base: &[(Vec<usize>, Colour)]) -> Result<StarHypergraph> {
    let sizes = col.sizes();
    sizes.check_jset(j_set)?;
    let k = sizes.k();
    let rest = j_set.complement(k);
    let mut h = PartiteHypergraph::empty(sizes.clone());
    let mut edge = vec![0; k];
    for (s, colour) in base {
        if s.len() != j_set.len() {
            return Err(Error::InvalidParameter(format!(
                "base tuple of length {} on a set of size {}",
                s.len(),
                j_set.len()
            )));
        }
        for (c, &v) in j_set.iter().zip(s) {
            if v >= sizes.size(c) {
                return Err(Error::MalformedEdge(format!("vertex {v} outside class {}", c + 1)));
            }
            edge[c] = v;
        }
        for ext in sizes.tuples(rest) {
            for (c, &v) in rest.iter().zip(&ext) {
                edge[c] = v;
            }
            if col.colour_unchecked(&edge) == *colour {
                h.insert_index(sizes.index_unchecked(&edge));
            }
        }
    }
    Ok(StarHypergraph { j_set, base: base.to_vec(), hypergraph: h })
}

/// What the extraction step did.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtractionTrace {
    pub edges: usize,
    pub assumption: AssumptionCheck,
    pub mode: Option<ExtractMode>,
    pub nodes: u64,
    pub found: Option<SubBox>,
}

/// Everything a run looked at, enough to replay it from the seed.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PipelineTrace {
    pub seed: u64,
    pub j_star: Option<usize>,
    pub j_star_set: Option<JSet>,
    pub branch: Option<Branch>,
    /// Heavy vertices (`j⋆ = 1`) or heavy tuples (`j⋆ ≥ 2`) with colours `ℓ`.
    pub heavy: Vec<(Vec<usize>, Colour)>,
    pub threshold: Option<usize>,
    pub split: Option<SplitKind>,
    pub selected: Vec<(Vec<usize>, Colour)>,
    /// Dominant colour of the whole colouring (`j⋆ = 0`).
    pub dominant_colour: Option<(Colour, u64)>,
    pub g_edges: Option<usize>,
    pub g_bounded: Option<bool>,
    pub g_star_edges: Option<usize>,
    pub sampler: Option<RainbowRun>,
    pub star_edges: Option<usize>,
    pub extraction: Option<ExtractionTrace>,
}

impl PipelineTrace {
    pub fn to_json(&self) -> Value {
        let items = |v: &[(Vec<usize>, Colour)]| {
            v.iter()
                .map(|(s, c)| json!({"tuple": s, "colour": c}))
                .collect::<Vec<_>>()
        };
        json!({
            "seed": self.seed,
            "j_star": self.j_star,
            "j_star_set": self.j_star_set.map(|j| j.labels()),
            "branch": self.branch,
            "heavy": items(&self.heavy),
            "threshold": self.threshold,
            "split": self.split,
            "selected": items(&self.selected),
            "dominant_colour": self.dominant_colour.map(|(c, n)| json!({"colour": c, "count": n})),
            "g_edges": self.g_edges,
            "g_bounded": self.g_bounded,
            "g_star_edges": self.g_star_edges,
            "sampler": self.sampler.as_ref().map(RainbowRun::to_json),
            "star_edges": self.star_edges,
            "extraction": self.extraction.as_ref().map(|x| json!({
                "edges": x.edges,
                "assumption_holds": x.assumption.holds(),
                "assumption_per_class": x.assumption.per_class,
                "mode": x.mode,
                "nodes": x.nodes,
                "found": x.found.is_some(),
            })),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PipelineResult {
    Witness(CanonicalWitness),
    Failure(PipelineFailure),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PipelineOutcome {
    pub result: PipelineResult,
    pub trace: PipelineTrace,
}

impl PipelineOutcome {
    pub fn witness(&self) -> Option<&CanonicalWitness> {
        match &self.result {
            PipelineResult::Witness(w) => Some(w),
            PipelineResult::Failure(_) => None,
        }
    }

    pub fn failure(&self) -> Option<&PipelineFailure> {
        match &self.result {
            PipelineResult::Failure(f) => Some(f),
            PipelineResult::Witness(_) => None,
        }
    }
}

type Step<T> = std::result::Result<T, PipelineFailure>;

fn fail<T>(branch: Branch, step: FailedStep, message: impl Into<String>) -> Step<T> {
    Err(PipelineFailure { branch, step, message: message.into() })
}

/// `count ≥ δ·total`, exactly.
fn at_least(count: u64, delta: &BigRational, total: usize) -> bool {
    BigInt::from(count) * delta.denom() >= delta.numer() * BigInt::from(total)
}

/// `⌈√(δ n)⌉`: the least `s` with `s² ≥ δ n`.
pub fn sqrt_threshold(delta: &BigRational, n: usize) -> usize {
    let target = delta * BigRational::from_integer(n.into());
    let ceil = target.ceil().to_integer();
    let mut s = ceil.sqrt();
    while BigRational::from_integer(&s * &s) < target {
        s += 1;
    }
    while s.is_positive() {
        let p = &s - 1;
        if BigRational::from_integer(&p * &p) >= target {
            s = p;
        } else {
            break;
        }
    }
    s.to_usize().unwrap_or(usize::MAX)
}

/// Runs the case analysis and returns a verified witness or the step that
/// could not be carried out.
pub fn find_canonical_copy(
    col: &Colouring,
    t: usize,
    dv: &DeltaVec,
    seed: u64,
    config: &PipelineConfig,
) -> Result<PipelineOutcome> {
    let sizes = col.sizes();
    if dv.len() != sizes.k() {
        return Err(Error::InvalidParameter(format!(
            "delta vector has {} entries, expected k = {}",
            dv.len(),
            sizes.k()
        )));
    }
    if t == 0 || t > sizes.min_size() {
        return Err(Error::InvalidParameter(format!("t = {t} must lie in 1..={}", sizes.min_size())));
    }
    let mut trace = PipelineTrace { seed, ..Default::default() };
    let report = is_bounded(col, dv)?;
    trace.j_star = report.j_star;
    trace.j_star_set = report.j_star_set;
    let mut budget = Budget::new(config.node_budget);
    let step = match (report.j_star, report.j_star_set, report.witness_stats) {
        (None, _, _) => bounded_branch(col, t, seed, config, &mut trace),
        (Some(0), _, Some(stats)) => level0_branch(col, t, &stats, dv, &mut budget, &mut trace),
        (Some(1), Some(j), Some(stats)) => level1_branch(col, t, j, &stats, dv, &mut budget, &mut trace),
        (Some(_), Some(j), Some(stats)) => {
            higher_branch(col, t, j, &stats, dv, seed, config, &mut budget, &mut trace)
        }
        _ => unreachable!("a failing level always has a witness set"),
    };
    let result = match step {
        Ok(w) => PipelineResult::Witness(w),
        Err(f) => PipelineResult::Failure(f),
    };
    Ok(PipelineOutcome { result, trace })
}

fn verified(col: &Colouring, b: &SubBox, j: JSet, branch: Branch) -> Step<CanonicalWitness> {
    match is_j_canonical(col, b, j) {
        Ok(Some(w)) => Ok(w),
        _ => fail(branch, FailedStep::Verification, format!("extracted box is not {j}-canonical")),
    }
}

fn bounded_branch(
    col: &Colouring,
    t: usize,
    seed: u64,
    config: &PipelineConfig,
    trace: &mut PipelineTrace,
) -> Step<CanonicalWitness> {
    let branch = Branch::Bounded;
    trace.branch = Some(branch);
    let sizes = col.sizes();
    if 2 * t > sizes.min_size() {
        return fail(branch, FailedStep::Precondition, format!("rainbow sampling needs 2t <= {}", sizes.min_size()));
    }
    let run = sample_rainbow_box(col, t, seed, config.retries).expect("preconditions checked");
    let found = run.result.as_ref().map(|r| r.sub_box.clone());
    trace.sampler = Some(run);
    match found {
        Some(b) => verified(col, &b, JSet::full(sizes.k()), branch),
        None => fail(branch, FailedStep::RainbowSampler, format!("no rainbow box after {} attempts", config.retries)),
    }
}

/// Proof-guided extraction, then the exhaustive search if that finds nothing.
fn extract(
    h: PartiteHypergraph,
    t: usize,
    assumption: AssumptionCheck,
    branch: Branch,
    budget: &mut Budget,
    trace: &mut PipelineTrace,
) -> Step<SubBox> {
    let k = h.sizes().k();
    let edges = h.edge_count();
    let start = budget.used();
    let mut record = ExtractionTrace { edges, assumption, mode: None, nodes: 0, found: None };
    let inst = ExtremalInstance::new(h, vec![t; k]).expect("t fits every class");
    let mut outcome = Ok(None);
    for mode in [ExtractMode::ProofGuided, ExtractMode::Exhaustive] {
        record.mode = Some(mode);
        outcome = extract_complete_box(&inst, mode, budget);
        if !matches!(outcome, Ok(None)) {
            break;
        }
    }
    record.nodes = budget.used() - start;
    let result = match outcome {
        Ok(Some(b)) => {
            record.found = Some(b.clone());
            Ok(b)
        }
        Ok(None) => fail(branch, FailedStep::Extraction, format!("no complete t-box among {edges} edges")),
        Err(Error::BudgetExceeded { limit, .. }) => {
            fail(branch, FailedStep::BudgetExhausted, format!("extraction exceeded {limit} nodes"))
        }
        Err(e) => fail(branch, FailedStep::Extraction, e.to_string()),
    };
    trace.extraction = Some(record);
    result
}

fn level0_branch(
    col: &Colouring,
    t: usize,
    stats: &FiberStats,
    dv: &DeltaVec,
    budget: &mut Budget,
    trace: &mut PipelineTrace,
) -> Step<CanonicalWitness> {
    let branch = Branch::Level0;
    trace.branch = Some(branch);
    let (colour, count) = stats.fibers[0].dominant().expect("a colouring has edges");
    trace.dominant_colour = Some((colour, count));
    let sizes = col.sizes();
    let h = PartiteHypergraph::from_predicate(sizes.clone(), |e| col.colour_unchecked(e) == colour);
    let assumption = check_assumption(dv.get(0), sizes.sizes(), &vec![t; sizes.k()]);
    let b = extract(h, t, assumption, branch, budget, trace)?;
    verified(col, &b, JSet::EMPTY, branch)
}

/// Tuples of `V_J` whose dominant colour fills at least a `δ` share of the
/// fiber, with that colour.
fn heavy_tuples(stats: &FiberStats, delta: &BigRational, rest: usize) -> Vec<(Vec<usize>, Colour)> {
    stats
        .fibers
        .iter()
        .filter_map(|f| {
            let (c, n) = f.dominant()?;
            at_least(n, delta, rest).then(|| (f.tuple.clone(), c))
        })
        .collect()
}

fn level1_branch(
    col: &Colouring,
    t: usize,
    j: JSet,
    stats: &FiberStats,
    dv: &DeltaVec,
    budget: &mut Budget,
    trace: &mut PipelineTrace,
) -> Step<CanonicalWitness> {
    let branch = Branch::Level1;
    trace.branch = Some(branch);
    let sizes = col.sizes();
    let k = sizes.k();
    let class = j.iter().next().expect("|J⋆| = 1");
    let delta = dv.get(1);
    let rest = sizes.tuple_count(j.complement(k));
    trace.heavy = heavy_tuples(stats, delta, rest);
    if trace.heavy.is_empty() {
        return fail(branch, FailedStep::HeavySetEmpty, format!("no vertex of class {} is heavy", class + 1));
    }
    let threshold = sqrt_threshold(delta, sizes.size(class)).max(1);
    trace.threshold = Some(threshold);
    let Some(split) = box_principle_split(&trace.heavy, threshold) else {
        return fail(
            branch,
            FailedStep::BoxPrinciple,
            format!("{} heavy vertices give neither {threshold} equal nor {threshold} distinct colours", trace.heavy.len()),
        );
    };
    trace.split = Some(split.kind());
    trace.selected = split.items().to_vec();
    let star = build_star(col, j, split.items()).expect("heavy tuples fit");
    trace.star_edges = Some(star.hypergraph.edge_count());
    if star.hypergraph.edge_count() == 0 {
        return fail(branch, FailedStep::StarEmpty, "the star hypergraph has no edges");
    }
    let mut ordered = vec![split.items().len()];
    ordered.extend((0..k).filter(|&c| c != class).map(|c| sizes.size(c)));
    let assumption = check_assumption(delta, &ordered, &vec![t; k]);
    let b = extract(star.hypergraph, t, assumption, branch, budget, trace)?;
    let target = match split {
        Split::Equal(_) => JSet::EMPTY,
        Split::Distinct(_) => j,
    };
    verified(col, &b, target, branch)
}

#[allow(clippy::too_many_arguments)]
fn higher_branch(
    col: &Colouring,
    t: usize,
    j: JSet,
    stats: &FiberStats,
    dv: &DeltaVec,
    seed: u64,
    config: &PipelineConfig,
    budget: &mut Budget,
    trace: &mut PipelineTrace,
) -> Step<CanonicalWitness> {
    let branch = Branch::Higher;
    trace.branch = Some(branch);
    let sizes = col.sizes();
    let k = sizes.k();
    let js = j.len();
    let delta = dv.get(js);
    let rest = sizes.tuple_count(j.complement(k));
    trace.heavy = heavy_tuples(stats, delta, rest);
    if trace.heavy.is_empty() {
        return fail(branch, FailedStep::HeavySetEmpty, format!("no tuple of V_{j} is heavy"));
    }
    // the auxiliary j⋆-graph on the classes of J⋆, coloured by ℓ
    let g_sizes = sizes.project(j).expect("J⋆ is a valid set");
    let mut g = ColouredHypergraph::empty(g_sizes.clone());
    for (s, c) in &trace.heavy {
        g.set(s, *c).expect("heavy tuples fit");
    }
    trace.g_edges = Some(trace.heavy.len());
    let quotient = dv.quotient(js);
    trace.g_bounded = Some(is_bounded(&g, &quotient).map(|r| r.is_bounded()).unwrap_or(false));
    let m = config.m.unwrap_or_else(|| default_m(t, &g_sizes)).min(g_sizes.min_size()).max(1);
    let run = sample_rainbow_dense(&g, m, Some(&quotient), seed, config.retries).expect("m fits");
    let g_star = run.result.as_ref().and_then(|r| r.edges.clone());
    trace.sampler = Some(run);
    let Some(g_star) = g_star else {
        return fail(branch, FailedStep::DenseSampler, format!("no rainbow dense sample with m = {m}"));
    };
    trace.g_star_edges = Some(g_star.len());
    let colour_of: BTreeMap<&Vec<usize>, Colour> = trace.heavy.iter().map(|(s, c)| (s, *c)).collect();
    let base: Vec<(Vec<usize>, Colour)> = g_star.iter().map(|s| (s.clone(), colour_of[s])).collect();
    let star = build_star(col, j, &base).expect("sampled tuples fit");
    trace.star_edges = Some(star.hypergraph.edge_count());
    if star.hypergraph.edge_count() == 0 {
        return fail(branch, FailedStep::StarEmpty, "the star hypergraph has no edges");
    }
    let mut ordered = vec![m; js];
    ordered.extend(j.complement(k).iter().map(|c| sizes.size(c)));
    let d = delta * delta / BigRational::from_integer(2.into());
    let assumption = check_assumption(&d, &ordered, &vec![t; k]);
    let b = extract(star.hypergraph, t, assumption, branch, budget, trace)?;
    verified(col, &b, j, branch)
}

fn default_m(t: usize, g_sizes: &ClassSizes) -> usize {
    let n = g_sizes.min_size();
    t.max(n / 2).min(n)
}

/// `δ_j` as exact rationals with `δ_j = 1/q` for every level: handy for tests
/// and examples.
pub fn harmonic_deltas(denominators: &[u64]) -> Result<DeltaVec> {
    DeltaVec::new(
        denominators
            .iter()
            .map(|&q| BigRational::new(BigInt::one(), BigInt::from(q)))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn split_examples() {
        let items = |cs: &[Colour]| cs.iter().enumerate().map(|(i, &c)| (i, c)).collect::<Vec<_>>();
        assert_eq!(box_principle_split(&items(&[5, 5, 5]), 2), Some(Split::Equal(vec![(0, 5), (1, 5)])));
        match box_principle_split(&items(&[1, 2, 3, 4]), 2).unwrap() {
            Split::Distinct(v) => assert_eq!(v.len(), 4),
            other => panic!("{other:?}"),
        }
        assert_eq!(box_principle_split(&items(&[1, 1, 2, 3]), 2), Some(Split::Equal(vec![(0, 1), (1, 1)])));
        assert_eq!(box_principle_split(&items(&[2, 2, 1, 1]), 2), Some(Split::Equal(vec![(2, 1), (3, 1)])));
        assert_eq!(box_principle_split(&items(&[1]), 2), None);
    }

    #[test]
    fn thresholds() {
        assert_eq!(sqrt_threshold(&q(1, 2), 64), 6);
        assert_eq!(sqrt_threshold(&q(1, 2), 32), 4);
        assert_eq!(sqrt_threshold(&q(1, 3), 3), 1);
        assert_eq!(sqrt_threshold(&q(1, 1), 10), 4);
    }

    #[test]
    fn star_examples() {
        let s = ClassSizes::uniform(2, 4).unwrap();
        let col = Colouring::from_fn(s.clone(), |e| if e[0] == 1 { 7 } else { 0 });
        let star = build_star(&col, JSet::from_classes([0]), &[(vec![1], 7)]).unwrap();
        assert_eq!(star.hypergraph.edge_count(), 4);
        let none = build_star(&col, JSet::from_classes([0]), &[(vec![1], 3)]).unwrap();
        assert_eq!(none.hypergraph.edge_count(), 0);

        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let col = Colouring::random(ClassSizes::uniform(2, 9).unwrap(), 3, &mut rng);
        let l = col.colour(&[4, 0]).unwrap();
        let star = build_star(&col, JSet::from_classes([0]), &[(vec![4], l)]).unwrap();
        let direct = (0..9).filter(|&v| col.colour(&[4, v]).unwrap() == l).count();
        assert_eq!(star.hypergraph.edge_count(), direct);
        for e in star.hypergraph.edges() {
            assert_eq!(e[0], 4);
            assert_eq!(col.colour(&e).unwrap(), l);
        }
    }

    #[test]
    fn constant_colouring_gives_monochromatic() {
        let col = Colouring::constant(ClassSizes::uniform(2, 64).unwrap(), 3);
        let dv = DeltaVec::new(vec![q(1, 2), q(1, 2)]).unwrap();
        let out = find_canonical_copy(&col, 2, &dv, 0, &PipelineConfig::default()).unwrap();
        assert_eq!(out.trace.branch, Some(Branch::Level0));
        let w = out.witness().unwrap();
        assert_eq!(w.j_set, JSet::EMPTY);
        assert!(w.verify(&col));
    }

    #[test]
    fn first_coordinate_colouring_gives_class_one() {
        let col = Colouring::from_fn(ClassSizes::uniform(2, 16).unwrap(), |e| e[0] as Colour);
        let dv = DeltaVec::new(vec![q(1, 2), q(1, 2)]).unwrap();
        let out = find_canonical_copy(&col, 2, &dv, 0, &PipelineConfig::default()).unwrap();
        assert_eq!(out.trace.branch, Some(Branch::Level1));
        assert_eq!(out.trace.split, Some(SplitKind::Distinct));
        assert_eq!(out.witness().unwrap().j_set, JSet::from_classes([0]));
    }

    #[test]
    fn injective_gives_rainbow() {
        let col = Colouring::injective(ClassSizes::uniform(3, 6).unwrap());
        let dv = DeltaVec::uniform(3, q(1, 2)).unwrap();
        let out = find_canonical_copy(&col, 2, &dv, 4, &PipelineConfig::default()).unwrap();
        assert_eq!(out.trace.branch, Some(Branch::Bounded));
        assert_eq!(out.witness().unwrap().j_set, JSet::full(3));
    }

    #[test]
    fn two_class_projection_reaches_higher_branch() {
        // colour = (e_1, e_2): {1,2}-canonical everywhere, unbounded at level 2
        let col = Colouring::from_fn(ClassSizes::uniform(3, 8).unwrap(), |e| (e[0] * 8 + e[1]) as Colour);
        let dv = DeltaVec::uniform(3, q(1, 2)).unwrap();
        let out = find_canonical_copy(&col, 2, &dv, 9, &PipelineConfig::default()).unwrap();
        assert_eq!(out.trace.j_star, Some(2));
        assert_eq!(out.trace.branch, Some(Branch::Higher));
        assert_eq!(out.witness().unwrap().j_set, JSet::from_classes([0, 1]));
        assert_eq!(out.trace.g_bounded, Some(true));
    }

    #[test]
    fn rejects_bad_parameters() {
        let col = Colouring::constant(ClassSizes::uniform(2, 4).unwrap(), 0);
        let dv = DeltaVec::uniform(2, q(1, 2)).unwrap();
        assert!(find_canonical_copy(&col, 5, &dv, 0, &PipelineConfig::default()).is_err());
        let dv3 = DeltaVec::uniform(3, q(1, 2)).unwrap();
        assert!(find_canonical_copy(&col, 2, &dv3, 0, &PipelineConfig::default()).is_err());
    }

    #[test]
    fn budget_exhaustion_is_structured() {
        let col = Colouring::constant(ClassSizes::uniform(3, 10).unwrap(), 0);
        let dv = DeltaVec::uniform(3, q(1, 2)).unwrap();
        let cfg = PipelineConfig { node_budget: 5, ..Default::default() };
        let out = find_canonical_copy(&col, 3, &dv, 0, &cfg).unwrap();
        assert_eq!(out.failure().unwrap().step, FailedStep::BudgetExhausted);
    }
}
