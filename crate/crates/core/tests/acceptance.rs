//! Acceptance suite: one PASS/FAIL line per criterion, tolerances pinned below.

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use canonical_ramsey::boundedness::{check_conflict_bound, fiber_stats, is_level_bounded, ConflictBound};
use canonical_ramsey::cli;
use canonical_ramsey::extremal::{
    assumption_holds, count_complete_boxes, count_lower_bound, extract_complete_box, ExtractMode,
    ExtremalInstance,
};
use canonical_ramsey::hypergraph::ColouredHypergraph;
use canonical_ramsey::oracle::{all_avoiders, avoider_search, bell, random_lb_experiment, AvoiderSearch, SearchStatus};
use canonical_ramsey::pipeline::{PipelineConfig, PipelineResult};
use canonical_ramsey::rainbow::{sample_rainbow_box, sample_rainbow_dense};
use canonical_ramsey::schedule::{build_schedule, minimal_valid_t, verify_inequalities, LogMonomial, Variant};
use canonical_ramsey::{
    classify_box, find_canonical_copy, Budget, ClassSizes, Colour, Colouring, DeltaVec, JSet, PartiteHypergraph,
    SubBox,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const C1_LIMIT: Duration = Duration::from_secs(1);
const C2_MIN_INSTANCES: usize = 200;
const C2_LIMIT: Duration = Duration::from_secs(300);
const C3_SPARSE: usize = 100;
const C4_COLOURINGS: usize = 100;
const C5_TRIPLES: usize = 10_000;
const C6_FUZZ_RUNS: usize = 1_000;
const C6_MIN_SUCCESS: f64 = 0.95;
const C6_SEEDS: u64 = 100;
const C6_RETRIES: usize = 50;
const C7_LIMIT: Duration = Duration::from_secs(60);
const C7_T_MAX: u64 = 1_000;
const C8_FUZZ_RUNS: usize = 1_000;
const C9_TRIALS: u64 = 100_000;
const C9_TOLERANCE: f64 = 0.01;
const C9_LIMIT: Duration = Duration::from_secs(30);
const C10_LIMIT: Duration = Duration::from_secs(60);

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict { pass, detail: detail.into() }
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn int(n: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

type Criterion = fn() -> Verdict;

fn main() {
    let criteria: [(&str, Criterion); 10] = [
        ("C1 canonicity oracle", c1_canonicity),
        ("C2 complete-box count bound", c2_count_bound),
        ("C3 extraction completeness", c3_extraction),
        ("C4 conflict census bound", c4_census),
        ("C5 boundedness monotonicity", c5_monotonicity),
        ("C6 sampler soundness and calibration", c6_samplers),
        ("C7 schedule certification", c7_schedule),
        ("C8 pipeline soundness", c8_pipeline),
        ("C9 random lower bound", c9_random_lb),
        ("C10 Erdos-Rado oracle", c10_er_oracle),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let start = Instant::now();
        let v = f();
        let secs = start.elapsed().as_secs_f64();
        println!("{} {name}: {} ({secs:.2} s)", if v.pass { "PASS" } else { "FAIL" }, v.detail);
        if !v.pass {
            failed += 1;
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}

/// All set partitions of `0..m` as restricted-growth strings.
fn partitions(m: usize) -> Vec<Vec<Colour>> {
    fn go(prefix: &mut Vec<Colour>, m: usize, out: &mut Vec<Vec<Colour>>) {
        if prefix.len() == m {
            out.push(prefix.clone());
            return;
        }
        let next = prefix.iter().max().map_or(0, |&c| c + 1);
        for c in 0..=next {
            prefix.push(c);
            go(prefix, m, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), m, &mut out);
    out
}

type Partition = BTreeSet<BTreeSet<Vec<usize>>>;

/// Edge partition induced by `key` on the listed edges, as a set of blocks.
fn blocks<K: Ord>(edges: &[Vec<usize>], key: impl Fn(&[usize]) -> K) -> Partition {
    let mut m: BTreeMap<K, BTreeSet<Vec<usize>>> = BTreeMap::new();
    for e in edges {
        m.entry(key(e)).or_default().insert(e.clone());
    }
    m.into_values().collect()
}

/// Canonical sets by comparing the colour partition with each restriction
/// partition directly.
fn canonical_sets_by_partition(col: &Colouring, b: &SubBox) -> Vec<JSet> {
    let edges: Vec<Vec<usize>> = b.edges().collect();
    let by_colour = blocks(&edges, |e| col.colour(e).unwrap());
    JSet::all_subsets(b.k())
        .filter(|j| blocks(&edges, |e| j.project(e)) == by_colour)
        .collect()
}

fn c1_canonicity() -> Verdict {
    let start = Instant::now();
    let sizes = ClassSizes::uniform(2, 2).unwrap();
    let full = SubBox::new(vec![vec![0, 1], vec![0, 1]]).unwrap();
    let parts = partitions(4);
    let mut mismatches = 0;
    let mut canonical = 0;
    for p in &parts {
        let col = Colouring::new(sizes.clone(), p.clone()).unwrap();
        let mut a = classify_box(&col, &full).unwrap();
        let mut b = canonical_sets_by_partition(&col, &full);
        a.sort();
        b.sort();
        if a != b {
            mismatches += 1;
        }
        canonical += usize::from(!a.is_empty());
    }
    let elapsed = start.elapsed();
    verdict(
        parts.len() == 15 && mismatches == 0 && canonical == 4 && elapsed < C1_LIMIT,
        format!("{} partitions, {mismatches} mismatches, {canonical} canonical", parts.len()),
    )
}

fn random_instance(
    rng: &mut ChaCha8Rng,
    k: usize,
    max_n: usize,
    p: std::ops::Range<f64>,
    t_max: usize,
) -> ExtremalInstance {
    let p = rng.gen_range(p);
    let sizes: Vec<usize> = (0..k).map(|_| rng.gen_range(2..=max_n)).collect();
    let t: Vec<usize> = sizes.iter().map(|&n| rng.gen_range(1..=t_max.min(n))).collect();
    let h = PartiteHypergraph::random(ClassSizes::new(sizes).unwrap(), p, rng);
    ExtremalInstance::new(h, t).unwrap()
}

/// Mixed pool for criteria 2 and 3: returns every generated instance and the
/// indices whose counting hypothesis holds.
fn c2_pool() -> (Vec<ExtremalInstance>, Vec<usize>) {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC2);
    let mut pool = Vec::new();
    let mut holding = Vec::new();
    let mut round = 0usize;
    while holding.len() < C2_MIN_INSTANCES && round < 20_000 {
        round += 1;
        let inst = match round % 4 {
            0 | 1 => random_instance(&mut rng, 1, 14, 0.2..1.0, 3),
            2 => {
                // the hypothesis needs d/4 · |V_2| ≥ 2t_2 and t_1 = 1
                let mut inst = random_instance(&mut rng, 2, 14, 0.55..1.0, 1);
                inst.t = vec![1, 1];
                inst
            }
            _ => random_instance(&mut rng, 3, 6, 0.3..1.0, 3),
        };
        if assumption_holds(&inst).holds() {
            holding.push(pool.len());
        }
        pool.push(inst);
    }
    (pool, holding)
}

fn c2_count_bound() -> Verdict {
    let start = Instant::now();
    let (pool, holding) = c2_pool();
    let mut failures = 0;
    let mut per_k = [0usize; 4];
    for &i in &holding {
        let inst = &pool[i];
        per_k[inst.k()] += 1;
        let count = count_complete_boxes(inst, &mut Budget::unlimited()).unwrap();
        if BigRational::from_integer(BigInt::from(count)) <= count_lower_bound(inst) {
            failures += 1;
        }
    }
    let elapsed = start.elapsed();
    verdict(
        holding.len() >= C2_MIN_INSTANCES && failures == 0 && elapsed < C2_LIMIT,
        format!(
            "{} instances with the hypothesis (k=1: {}, k=2: {}, k=3: {}), {failures} with count <= bound",
            holding.len(),
            per_k[1],
            per_k[2],
            per_k[3]
        ),
    )
}

fn c3_extraction() -> Verdict {
    let (mut pool, _) = c2_pool();
    let mut rng = ChaCha8Rng::seed_from_u64(0xC3);
    for _ in 0..C3_SPARSE {
        let k = rng.gen_range(2..=3);
        pool.push(random_instance(&mut rng, k, 8, 0.05..0.4, 3));
    }
    let mut disagreements = 0;
    let mut unsound = 0;
    let mut positive = 0;
    for inst in &pool {
        let count = count_complete_boxes(inst, &mut Budget::unlimited()).unwrap();
        let found = extract_complete_box(inst, ExtractMode::Exhaustive, &mut Budget::unlimited()).unwrap();
        let has = count > 0u32.into();
        positive += usize::from(has);
        if found.is_some() != has {
            disagreements += 1;
        }
        let guided = extract_complete_box(inst, ExtractMode::ProofGuided, &mut Budget::unlimited()).unwrap();
        for b in found.iter().chain(guided.iter()) {
            if b.t_vec() != inst.t || !b.edges().all(|e| inst.hypergraph.contains(&e)) {
                unsound += 1;
            }
        }
    }
    verdict(
        disagreements == 0 && unsound == 0,
        format!("{} instances ({positive} with a box), {disagreements} disagreements, {unsound} invalid boxes", pool.len()),
    )
}

/// Unordered same-colour pairs agreeing exactly on `j`, by brute force.
fn pairs_agreeing_exactly(col: &Colouring, j: JSet) -> u64 {
    let edges: Vec<Vec<usize>> = col.sizes().edges().collect();
    let mut n = 0;
    for (a, e) in edges.iter().enumerate() {
        for f in &edges[a + 1..] {
            let agree = JSet::from_classes((0..e.len()).filter(|&c| e[c] == f[c]));
            if agree == j && col.colour(e).unwrap() == col.colour(f).unwrap() {
                n += 1;
            }
        }
    }
    n
}

fn c4_census() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC4);
    let mut checked = 0;
    let mut violations = 0;
    let mut route_mismatch = 0;
    for _ in 0..C4_COLOURINGS {
        let k = rng.gen_range(2..=3);
        let n_max = if k == 2 { 10 } else { 6 };
        let sizes = ClassSizes::new((0..k).map(|_| rng.gen_range(1..=n_max)).collect()).unwrap();
        let palette = rng.gen_range(1..=6);
        let col = Colouring::random(sizes.clone(), palette, &mut rng);
        for j in JSet::proper_subsets(k) {
            let rest = sizes.tuple_count(j.complement(k));
            let probe = fiber_stats(&col, j, &q(1, 1)).unwrap();
            let max_fiber = probe.fibers.iter().filter_map(|f| f.dominant()).map(|(_, c)| c).max().unwrap_or(0);
            let mut deltas = vec![BigRational::new(BigInt::from(max_fiber.max(1)), BigInt::from(rest))];
            deltas.push(q(rng.gen_range(1..=8), 8));
            for delta in deltas {
                match check_conflict_bound(&col, j, &delta).unwrap() {
                    ConflictBound::Holds { pairs, .. } => {
                        checked += 1;
                        route_mismatch += usize::from(pairs != pairs_agreeing_exactly(&col, j));
                    }
                    ConflictBound::Violated { .. } => {
                        checked += 1;
                        violations += 1;
                    }
                    ConflictBound::Inapplicable { .. } => {}
                }
                // independent evaluation of the same bound
                let vj = sizes.tuple_count(j);
                if fiber_stats(&col, j, &delta).unwrap().is_bounded() {
                    let bound = &delta * int(vj * rest * rest);
                    if int(pairs_agreeing_exactly(&col, j) as usize) > bound {
                        violations += 1;
                    }
                }
            }
        }
    }
    verdict(
        violations == 0 && route_mismatch == 0 && checked > 0,
        format!("{checked} bounded (colouring, J, δ) cases, {violations} violations, {route_mismatch} census mismatches"),
    )
}

fn c5_monotonicity() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC5);
    let mut counterexamples = 0;
    let mut premise_true = 0;
    for _ in 0..C5_TRIPLES {
        let k = rng.gen_range(2..=3);
        let n_max = if k == 2 { 8 } else { 4 };
        let sizes = ClassSizes::new((0..k).map(|_| rng.gen_range(1..=n_max)).collect()).unwrap();
        let palette = rng.gen_range(1..=5);
        let col = Colouring::random(sizes, palette, &mut rng);
        let den = rng.gen_range(1..=12);
        let delta = q(rng.gen_range(1..=den), den);
        let j = rng.gen_range(0..k - 1);
        let shrunk = &delta * &delta / (q(1, 1) + &delta);
        if is_level_bounded(&col, j + 1, &shrunk).unwrap() {
            premise_true += 1;
            if !is_level_bounded(&col, j, &delta).unwrap() {
                counterexamples += 1;
            }
        }
    }
    verdict(
        counterexamples == 0 && premise_true > 0,
        format!("{C5_TRIPLES} triples, premise held in {premise_true}, {counterexamples} counterexamples"),
    )
}

fn rainbow_edges(col: &Colouring, b: &SubBox) -> bool {
    let colours: Vec<Colour> = b.edges().map(|e| col.colour(&e).unwrap()).collect();
    colours.iter().collect::<BTreeSet<_>>().len() == colours.len()
}

/// Checks a dense-sampler result from scratch: edges lie in `h` and in the
/// box, carry distinct colours, and number at least `d·m^k/2`.
fn dense_result_ok(h: &PartiteHypergraph, col: &Colouring, m: usize, b: &SubBox, edges: &[Vec<usize>]) -> bool {
    let k = h.sizes().k();
    let in_box = edges.iter().all(|e| (0..k).all(|c| b.class(c).contains(&e[c])) && h.contains(e));
    let expected: BTreeSet<Vec<usize>> = b.edges().filter(|e| h.contains(e)).collect();
    let got: BTreeSet<Vec<usize>> = edges.iter().cloned().collect();
    let colours: BTreeSet<Colour> = edges.iter().map(|e| col.colour(e).unwrap()).collect();
    let dense = int(2 * edges.len()) >= h.density() * int(m.pow(k as u32));
    in_box && expected == got && colours.len() == edges.len() && dense && b.t_vec() == vec![m; k]
}

fn success_rate(mut f: impl FnMut(u64) -> bool) -> f64 {
    (0..C6_SEEDS).filter(|&s| f(s)).count() as f64 / C6_SEEDS as f64
}

fn c6_samplers() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC6);
    let mut successes = 0;
    let mut unsound = 0;
    for run in 0..C6_FUZZ_RUNS {
        let k = rng.gen_range(2..=3);
        let n_max = if k == 2 { 10 } else { 6 };
        let sizes = ClassSizes::new((0..k).map(|_| rng.gen_range(2..=n_max)).collect()).unwrap();
        let palette = rng.gen_range(1..=300);
        let col = Colouring::random(sizes.clone(), palette, &mut rng);
        let seed = rng.gen();
        if run % 2 == 0 {
            let t = rng.gen_range(1..=sizes.min_size() / 2);
            let out = sample_rainbow_box(&col, t, seed, 5).unwrap();
            if let Some(r) = &out.result {
                successes += 1;
                let fits = r.sub_box.t_vec() == vec![t; k] && r.sub_box.check_fits(&sizes).is_ok();
                unsound += usize::from(!(fits && rainbow_edges(&col, &r.sub_box)));
            }
        } else {
            let h = PartiteHypergraph::random(sizes.clone(), rng.gen_range(0.1..1.0), &mut rng);
            let ch = ColouredHypergraph::restrict_colouring(&col, &h).unwrap();
            let m = rng.gen_range(1..=sizes.min_size());
            let out = sample_rainbow_dense(&ch, m, None, seed, 5).unwrap();
            if let Some(r) = &out.result {
                successes += 1;
                let edges = r.edges.as_deref().unwrap_or(&[]);
                unsound += usize::from(!dense_result_ok(&h, &col, m, &r.sub_box, edges));
            }
        }
    }

    let mut rates = Vec::new();
    for (k, n, t) in [(2, 12, 3), (3, 8, 2), (3, 6, 3)] {
        let col = Colouring::injective(ClassSizes::uniform(k, n).unwrap());
        rates.push((format!("injective k={k} t={t}"), success_rate(|s| {
            sample_rainbow_box(&col, t, s, C6_RETRIES).unwrap().succeeded()
        })));
    }
    for (k, n, t, palette) in [(2, 40, 3, 1_000_000u64), (3, 12, 2, 1 << 40), (3, 10, 3, 1 << 40)] {
        rates.push((format!("uniform k={k} t={t}"), success_rate(|s| {
            let col = Colouring::random(ClassSizes::uniform(k, n).unwrap(), palette, &mut ChaCha8Rng::seed_from_u64(s));
            sample_rainbow_box(&col, t, s, C6_RETRIES).unwrap().succeeded()
        })));
    }
    for (k, n, m, p) in [(2, 60, 16, 0.5), (3, 16, 8, 0.5)] {
        rates.push((format!("dense k={k} m={m}"), success_rate(|s| {
            let mut r = ChaCha8Rng::seed_from_u64(s);
            let h = PartiteHypergraph::random(ClassSizes::uniform(k, n).unwrap(), p, &mut r);
            let col = Colouring::injective(h.sizes().clone());
            let ch = ColouredHypergraph::restrict_colouring(&col, &h).unwrap();
            let out = sample_rainbow_dense(&ch, m, None, s, C6_RETRIES).unwrap();
            out.result.as_ref().is_some_and(|x| dense_result_ok(&h, &col, m, &x.sub_box, x.edges.as_deref().unwrap_or(&[])))
        })));
    }
    let worst = rates.iter().map(|(_, r)| *r).fold(1.0, f64::min);
    let summary: Vec<String> = rates.iter().map(|(n, r)| format!("{n} {:.0}%", r * 100.0)).collect();
    verdict(
        unsound == 0 && worst >= C6_MIN_SUCCESS,
        format!(
            "{C6_FUZZ_RUNS} fuzzed runs, {successes} successes, {unsound} unverified; calibration {}",
            summary.join(", ")
        ),
    )
}

const GENERAL_FAMILIES: [&str; 6] =
    ["chain:", "mono_extraction", "star1_", "star_j_", "top_level_delta", "rainbow_box_hypothesis"];

fn c7_schedule() -> Verdict {
    let start = Instant::now();
    let mut ok = true;
    let mut notes = Vec::new();
    for k in 2..=5 {
        match minimal_valid_t(k, Variant::General, C7_T_MAX).unwrap() {
            Some(t) => {
                let report = verify_inequalities(&build_schedule(k, t, Variant::General).unwrap());
                let families = GENERAL_FAMILIES
                    .iter()
                    .all(|f| report.entries.iter().any(|e| e.name.starts_with(f)));
                let certified = report.all_hold() && families;
                ok &= certified;
                notes.push(format!("k={k} t*={t} {}", if certified { "certified" } else { "NOT certified" }));
            }
            None => notes.push(format!("k={k} no t* <= {C7_T_MAX}")),
        }
    }
    let mut identities = 0;
    for k in 2..=6 {
        for t in [(1u64 << (2 * k + 1)) + 1, 1000, 1 << 20] {
            let s = build_schedule(k, t, Variant::General).unwrap();
            let expected = LogMonomial::from_ints(-(2 * k as i64 + 1), -(k as i64), t);
            if *s.delta(k - 1) == expected {
                identities += 1;
            } else {
                ok = false;
            }
        }
    }
    notes.push(format!("{identities}/15 δ_(k-1) identities"));

    let dir = tempfile::tempdir().unwrap();
    let journal = dir.path().join("journal.jsonl");
    for (k, variant, t) in [(2, "k2-special", 1000), (3, "k3-special", 1000), (3, "k3-special", 524_302)] {
        let (_, out, _) = cli::run_captured(&[
            "--format", "structured", "--journal", journal.to_str().unwrap(),
            "schedule", "--k", &k.to_string(), "--variant", variant, "--t", &t.to_string(),
        ]);
        let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
        let entries = v["report"]["inequalities"].as_array().cloned().unwrap_or_default();
        let holds = entries.iter().filter(|e| e["verdict"] == "holds").count();
        notes.push(format!("{variant} t={t}: {holds}/{} hold", entries.len()));
        ok &= !entries.is_empty();
    }
    let journaled = canonical_ramsey::journal::read(&journal).map(|r| r.len()).unwrap_or(0);
    ok &= journaled == 3;
    let elapsed = start.elapsed();
    verdict(ok && elapsed < C7_LIMIT, format!("{}; {journaled} special verdicts journaled", notes.join("; ")))
}

fn c8_pipeline() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC8);
    let config = PipelineConfig { node_budget: 2_000_000, ..Default::default() };
    let mut witnesses = 0;
    let mut unverified = 0;
    for _ in 0..C8_FUZZ_RUNS {
        let k = rng.gen_range(2..=3);
        let n_max = if k == 2 { 12 } else { 6 };
        let sizes = ClassSizes::new((0..k).map(|_| rng.gen_range(2..=n_max)).collect()).unwrap();
        let palette = [1, 2, 3, 8, 1000][rng.gen_range(0..5)];
        let col = match rng.gen_range(0..4) {
            0 => Colouring::from_fn(sizes.clone(), |e| (e[0] as Colour) % palette),
            _ => Colouring::random(sizes.clone(), palette, &mut rng),
        };
        let t = rng.gen_range(1..=sizes.min_size().min(3));
        let dv = DeltaVec::new((0..k).map(|_| q(1, rng.gen_range(2..=8))).collect()).unwrap();
        let out = find_canonical_copy(&col, t, &dv, rng.gen(), &config).unwrap();
        if let PipelineResult::Witness(w) = &out.result {
            witnesses += 1;
            let sets = classify_box(&col, &w.sub_box).unwrap();
            let ok = w.verify(&col) && sets.contains(&w.j_set) && w.sub_box.t_vec() == vec![t; k];
            unverified += usize::from(!ok);
        }
    }

    let half = |k| DeltaVec::uniform(k, q(1, 2)).unwrap();
    let constructed: Vec<(&str, Colouring, JSet)> = vec![
        ("constant k=2", Colouring::constant(ClassSizes::uniform(2, 64).unwrap(), 5), JSet::EMPTY),
        ("constant k=3", Colouring::constant(ClassSizes::uniform(3, 16).unwrap(), 5), JSet::EMPTY),
        ("projection k=2", Colouring::from_fn(ClassSizes::uniform(2, 16).unwrap(), |e| e[0] as Colour), JSet::from_classes([0])),
        ("projection k=3", Colouring::from_fn(ClassSizes::uniform(3, 12).unwrap(), |e| e[0] as Colour), JSet::from_classes([0])),
        ("injective k=2", Colouring::injective(ClassSizes::uniform(2, 8).unwrap()), JSet::full(2)),
        ("injective k=3", Colouring::injective(ClassSizes::uniform(3, 6).unwrap()), JSet::full(3)),
    ];
    let mut wrong = Vec::new();
    for (name, col, expected) in &constructed {
        let k = col.sizes().k();
        let out = find_canonical_copy(col, 2, &half(k), 1, &PipelineConfig::default()).unwrap();
        match out.witness() {
            Some(w) if w.j_set == *expected && w.verify(col) => {}
            Some(w) => wrong.push(format!("{name} gave J = {}", w.j_set)),
            None => wrong.push(format!("{name} gave {:?}", out.failure().map(|f| f.step))),
        }
    }
    verdict(
        unverified == 0 && wrong.is_empty(),
        format!(
            "{C8_FUZZ_RUNS} fuzzed runs, {witnesses} witnesses, {unverified} unverified; constructed {}/{} as expected{}",
            constructed.len() - wrong.len(),
            constructed.len(),
            if wrong.is_empty() { String::new() } else { format!(" ({})", wrong.join(", ")) }
        ),
    )
}

fn c9_random_lb() -> Verdict {
    // exact rate by enumerating all 81 colourings
    let sizes = ClassSizes::uniform(2, 2).unwrap();
    let full = SubBox::new(vec![vec![0, 1], vec![0, 1]]).unwrap();
    let mut canonical = 0;
    for code in 0..81u64 {
        let colours: Vec<Colour> = (0..4).map(|i| (code / 3u64.pow(i)) % 3).collect();
        let col = Colouring::new(sizes.clone(), colours).unwrap();
        canonical += usize::from(!canonical_sets_by_partition(&col, &full).is_empty());
    }
    let exact = canonical as f64 / 81.0;
    let start = Instant::now();
    let r = random_lb_experiment(2, 2, 2, 3, C9_TRIALS, 2024).unwrap();
    let elapsed = start.elapsed();
    let err = (r.hit_rate() - 5.0 / 27.0).abs();
    verdict(
        canonical == 15 && err <= C9_TOLERANCE && elapsed < C9_LIMIT,
        format!("{canonical}/81 = {exact:.5} canonical by enumeration; hit rate {:.5} (|Δ| = {err:.5})", r.hit_rate()),
    )
}

fn c10_er_oracle() -> Verdict {
    let start = Instant::now();
    let full = SubBox::new(vec![vec![0, 1], vec![0, 1]]).unwrap();
    let n2 = avoider_search(2, 2, 2, &mut Budget::unlimited()).unwrap();
    let n2_ok = n2.as_ref().is_some_and(|c| classify_box(c, &full).unwrap().is_empty());

    let mut decided = AvoiderSearch::new(2, 2, 3, true).unwrap();
    let n3 = decided.run(&mut Budget::unlimited());
    let n3_decided = matches!(n3, SearchStatus::Found(_) | SearchStatus::Exhausted);

    let (pruned_avoiders, _) = all_avoiders(2, 2, 3, true, &mut Budget::unlimited()).unwrap();
    let (plain_avoiders, plain) = all_avoiders(2, 2, 3, false, &mut Budget::unlimited()).unwrap();
    let leaves_ok = plain.leaves == 21_147 && bell(9) == 21_147;
    let agree = pruned_avoiders == plain_avoiders;
    let elapsed = start.elapsed();
    verdict(
        n2_ok && n3_decided && leaves_ok && agree && elapsed < C10_LIMIT,
        format!(
            "n=2 avoider {:?}; n=3 {}; {} unpruned leaves; {} avoiders on 3x3 by both routes",
            n2.map(|c| c.colours().to_vec()),
            if matches!(n3, SearchStatus::Found(_)) { "decided (avoider exists)" } else { "decided" },
            plain.leaves,
            plain_avoiders.len()
        ),
    )
}
