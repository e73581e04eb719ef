//! Complete sub-boxes inside partite hypergraphs: exact counting, the
//! density lower bound and its hypothesis, and constructive extraction.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::PartiteHypergraph;
use crate::partite::{Budget, SubBox};

/// A hypergraph together with target class sizes `t_1, …, t_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtremalInstance {
    pub hypergraph: PartiteHypergraph,
    pub t: Vec<usize>,
}

impl ExtremalInstance {
    pub fn new(hypergraph: PartiteHypergraph, t: Vec<usize>) -> Result<Self> {
        let sizes = hypergraph.sizes();
        if t.len() != sizes.k() {
            return Err(Error::InvalidParameter(format!(
                "{} target sizes for uniformity {}",
                t.len(),
                sizes.k()
            )));
        }
        for (j, (&tj, &nj)) in t.iter().zip(sizes.sizes()).enumerate() {
            if tj == 0 || tj > nj {
                return Err(Error::InvalidParameter(format!(
                    "t_{} = {tj} must lie in 1..={nj}",
                    j + 1
                )));
            }
        }
        Ok(ExtremalInstance { hypergraph, t })
    }

    pub fn k(&self) -> usize {
        self.t.len()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExtractMode {
    /// Descend through heavy vertices of the last class and tally the
    /// complete boxes of their links.
    ProofGuided,
    /// Depth-first search over candidate boxes; complete.
    Exhaustive,
}

/// `C(n, r)` as a big integer.
pub fn binomial(n: usize, r: usize) -> BigUint {
    if r > n {
        return BigUint::zero();
    }
    let r = r.min(n - r);
    let mut acc = BigUint::one();
    for i in 0..r {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Depth-first walk over complete sub-boxes, class 1 first.
///
/// `live[i]` holds, for the prefix chosen so far, which tuples of classes
/// `i..k` still extend every chosen prefix edge to an edge of `H`.
struct BoxSearch<'a> {
    sizes: &'a [usize],
    t: &'a [usize],
    /// `suffix[i] = n_i ⋯ n_k`, with `suffix[k] = 1`.
    suffix: Vec<usize>,
    budget: &'a mut Budget,
}

enum Visit {
    Continue,
    Stop,
}

impl<'a> BoxSearch<'a> {
    fn new(sizes: &'a [usize], t: &'a [usize], budget: &'a mut Budget) -> Self {
        let k = sizes.len();
        let mut suffix = vec![1; k + 1];
        for i in (0..k).rev() {
            suffix[i] = suffix[i + 1] * sizes[i];
        }
        BoxSearch { sizes, t, suffix, budget }
    }

    /// Calls `on_last(prefix, candidates)` once per complete choice of the
    /// first `k-1` classes, with the last-class vertices that complete it.
    fn run<F>(&mut self, live: &[bool], on_last: &mut F) -> Result<()>
    where
        F: FnMut(&[Vec<usize>], &[usize]) -> Visit,
    {
        let mut prefix = Vec::new();
        self.level(0, live, &mut prefix, on_last).map(|_| ())
    }

    fn level<F>(
        &mut self,
        i: usize,
        live: &[bool],
        prefix: &mut Vec<Vec<usize>>,
        on_last: &mut F,
    ) -> Result<Visit>
    where
        F: FnMut(&[Vec<usize>], &[usize]) -> Visit,
    {
        self.budget.tick("complete-box search")?;
        let k = self.sizes.len();
        if i == k - 1 {
            let cands: Vec<usize> = (0..self.sizes[i]).filter(|&v| live[v]).collect();
            if cands.len() < self.t[i] {
                return Ok(Visit::Continue);
            }
            return Ok(on_last(prefix, &cands));
        }
        let width = self.suffix[i + 1];
        let cands: Vec<usize> = (0..self.sizes[i])
            .filter(|&u| live[u * width..(u + 1) * width].iter().any(|&b| b))
            .collect();
        let mut chosen = Vec::with_capacity(self.t[i]);
        self.choose(i, live, &cands, 0, &mut chosen, None, prefix, on_last)
    }

    #[allow(clippy::too_many_arguments)]
    fn choose<F>(
        &mut self,
        i: usize,
        live: &[bool],
        cands: &[usize],
        from: usize,
        chosen: &mut Vec<usize>,
        acc: Option<&[bool]>,
        prefix: &mut Vec<Vec<usize>>,
        on_last: &mut F,
    ) -> Result<Visit>
    where
        F: FnMut(&[Vec<usize>], &[usize]) -> Visit,
    {
        let need = self.t[i] - chosen.len();
        if need == 0 {
            let acc = acc.expect("t_i >= 1");
            prefix.push(chosen.clone());
            let r = self.level(i + 1, acc, prefix, on_last);
            prefix.pop();
            return r;
        }
        let width = self.suffix[i + 1];
        let next_width = self.suffix[i + 2];
        let need_next = self.t[i + 1];
        for idx in from..cands.len() {
            if cands.len() - idx < need {
                break;
            }
            let u = cands[idx];
            let slice = &live[u * width..(u + 1) * width];
            let meet: Vec<bool> = match acc {
                Some(a) => a.iter().zip(slice).map(|(&x, &y)| x && y).collect(),
                None => slice.to_vec(),
            };
            // the next class must keep at least t_{i+1} vertices with some extension
            let support = (0..self.sizes[i + 1])
                .filter(|&v| meet[v * next_width..(v + 1) * next_width].iter().any(|&b| b))
                .count();
            if support < need_next {
                continue;
            }
            self.budget.tick("complete-box search")?;
            chosen.push(u);
            let r = self.choose(i, live, cands, idx + 1, chosen, Some(&meet), prefix, on_last)?;
            chosen.pop();
            if let Visit::Stop = r {
                return Ok(Visit::Stop);
            }
        }
        Ok(Visit::Continue)
    }
}

/// Exact number of sub-boxes with `t_j` vertices per class all of whose
/// transversal edges lie in `H`. For `k = 1` this is `C(|E|, t_1)`.
pub fn count_complete_boxes(inst: &ExtremalInstance, budget: &mut Budget) -> Result<BigUint> {
    let h = &inst.hypergraph;
    let mut total = BigUint::zero();
    let tk = *inst.t.last().expect("k >= 1");
    let mut search = BoxSearch::new(h.sizes().sizes(), &inst.t, budget);
    search.run(h.membership(), &mut |_, cands| {
        total += binomial(cands.len(), tk);
        Visit::Continue
    })?;
    Ok(total)
}

/// All complete sub-boxes in lexicographic order.
pub fn list_complete_boxes(inst: &ExtremalInstance, budget: &mut Budget) -> Result<Vec<SubBox>> {
    let h = &inst.hypergraph;
    let tk = *inst.t.last().expect("k >= 1");
    let mut out = Vec::new();
    let mut overflow = false;
    let limit = budget.limit();
    {
        let mut search = BoxSearch::new(h.sizes().sizes(), &inst.t, budget);
        search.run(h.membership(), &mut |prefix, cands| {
            for last in itertools::Itertools::combinations(cands.iter().copied(), tk) {
                let mut classes = prefix.to_vec();
                classes.push(last);
                out.push(SubBox::new(classes).expect("search yields sorted classes"));
                if out.len() as u64 > limit {
                    overflow = true;
                    return Visit::Stop;
                }
            }
            Visit::Continue
        })?;
    }
    if overflow {
        return Err(Error::BudgetExceeded { limit, during: "listing complete boxes" });
    }
    budget.charge(out.len() as u64, "listing complete boxes")?;
    Ok(out)
}

/// Per-class verdicts of `(d/4^{k-1})^{∏_{j<i} t_j} |V_i| ≥ 2t_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssumptionCheck {
    pub density: BigRational,
    pub per_class: Vec<bool>,
    pub diagnostic: Option<String>,
}

impl AssumptionCheck {
    pub fn holds(&self) -> bool {
        self.diagnostic.is_none() && self.per_class.iter().all(|&b| b)
    }
}

/// Checks the counting hypothesis for the instance's own density.
pub fn assumption_holds(inst: &ExtremalInstance) -> AssumptionCheck {
    check_assumption(&inst.hypergraph.density(), inst.hypergraph.sizes().sizes(), &inst.t)
}

/// Checks the counting hypothesis for an explicit density `d` and class sizes.
pub fn check_assumption(d: &BigRational, sizes: &[usize], t: &[usize]) -> AssumptionCheck {
    let k = sizes.len();
    if d.is_zero() || *d < BigRational::zero() {
        return AssumptionCheck {
            density: d.clone(),
            per_class: vec![false; k],
            diagnostic: Some("density must be positive".into()),
        };
    }
    let base = d / BigRational::from_integer(BigInt::from(4u8).pow(k as u32 - 1));
    let quarter = BigRational::new(1.into(), 4.into());
    let mut exponent: u64 = 1;
    let per_class = (0..k)
        .map(|i| {
            if i > 0 {
                exponent = exponent.saturating_mul(t[i - 1] as u64);
            }
            let rhs = BigRational::from_integer(BigInt::from(2 * t[i]));
            let n = BigRational::from_integer(BigInt::from(sizes[i]));
            if base.is_one() {
                return n >= rhs;
            }
            // base ≤ 1/4 whenever k ≥ 2, and then (1/4)^64 · n < 1 ≤ 2t_i
            if exponent > 64 && base <= quarter {
                return false;
            }
            num_traits::pow(base.clone(), exponent as usize) * n >= rhs
        })
        .collect();
    AssumptionCheck { density: d.clone(), per_class, diagnostic: None }
}

/// `(d/2^{2k-1})^{∏ t_j} ∏ C(|V_j|, t_j)`, exactly.
pub fn count_lower_bound(inst: &ExtremalInstance) -> BigRational {
    let d = inst.hypergraph.density();
    lower_bound_for(&d, inst.hypergraph.sizes().sizes(), &inst.t)
}

pub fn lower_bound_for(d: &BigRational, sizes: &[usize], t: &[usize]) -> BigRational {
    let k = sizes.len();
    if d.is_zero() {
        return BigRational::zero();
    }
    let base = d / BigRational::from_integer(BigInt::from(2u8).pow(2 * k as u32 - 1));
    let exponent: usize = t.iter().product();
    let binoms: BigUint = sizes.iter().zip(t).map(|(&n, &tj)| binomial(n, tj)).product();
    num_traits::pow(base, exponent) * BigRational::from_integer(BigInt::from(binoms))
}

/// For every complete `(k-1)`-box of classes `1..k-1`, the last-class
/// vertices whose links contain it. Only vertices accepted by `keep` are
/// tallied.
pub fn link_box_tally<F: Fn(usize) -> bool>(
    inst: &ExtremalInstance,
    keep: F,
    budget: &mut Budget,
) -> Result<BTreeMap<SubBox, Vec<usize>>> {
    let h = &inst.hypergraph;
    let k = inst.k();
    if k < 2 {
        return Err(Error::InvalidParameter("link tallies need k >= 2".into()));
    }
    let mut tally: BTreeMap<SubBox, Vec<usize>> = BTreeMap::new();
    let nk = h.sizes().size(k - 1);
    for v in (0..nk).filter(|&v| keep(v)) {
        let link = h.last_class_link(v)?;
        let sub = ExtremalInstance { hypergraph: link, t: inst.t[..k - 1].to_vec() };
        for b in list_complete_boxes(&sub, budget)? {
            tally.entry(b).or_default().push(v);
        }
    }
    Ok(tally)
}

/// Counts complete boxes through the link tally: `Σ_B C(|ext(B)|, t_k)`.
pub fn count_via_links(inst: &ExtremalInstance, budget: &mut Budget) -> Result<BigUint> {
    let tk = inst.t[inst.k() - 1];
    Ok(link_box_tally(inst, |_| true, budget)?
        .values()
        .map(|ext| binomial(ext.len(), tk))
        .sum())
}

/// Finds a complete sub-box with `t_j` vertices in class `j`.
///
/// Proof-guided mode keeps the heavy vertices `v` of the last class
/// (`e(H(v)) ≥ |E|/(2|V_k|)`), tallies the complete boxes of their links and
/// returns the lexicographically least box with at least `t_k` heavy
/// extenders; it can miss boxes that only light vertices complete. Exhaustive
/// mode returns the lexicographically first complete box and finds one
/// whenever one exists. Every returned box is checked against `H`.
pub fn extract_complete_box(
    inst: &ExtremalInstance,
    mode: ExtractMode,
    budget: &mut Budget,
) -> Result<Option<SubBox>> {
    let found = match mode {
        ExtractMode::Exhaustive => extract_exhaustive(inst, budget)?,
        ExtractMode::ProofGuided => extract_proof_guided(inst, budget)?,
    };
    if let Some(b) = &found {
        assert!(inst.hypergraph.contains_box(b), "extracted box is not complete");
    }
    Ok(found)
}

fn extract_exhaustive(inst: &ExtremalInstance, budget: &mut Budget) -> Result<Option<SubBox>> {
    let h = &inst.hypergraph;
    let tk = inst.t[inst.k() - 1];
    let mut found = None;
    let mut search = BoxSearch::new(h.sizes().sizes(), &inst.t, budget);
    search.run(h.membership(), &mut |prefix, cands| {
        let mut classes = prefix.to_vec();
        classes.push(cands[..tk].to_vec());
        found = Some(SubBox::new(classes).expect("sorted"));
        Visit::Stop
    })?;
    Ok(found)
}

fn extract_proof_guided(inst: &ExtremalInstance, budget: &mut Budget) -> Result<Option<SubBox>> {
    let h = &inst.hypergraph;
    let k = inst.k();
    if h.edge_count() == 0 {
        return Ok(None);
    }
    if k == 1 {
        let verts: Vec<usize> = h.edges().map(|e| e[0]).take(inst.t[0]).collect();
        return Ok((verts.len() == inst.t[0]).then(|| SubBox::new(vec![verts]).expect("sorted")));
    }
    let nk = h.sizes().size(k - 1);
    let edges = h.edge_count();
    let heavy = |v: usize| 2 * nk * h.last_class_degree(v) >= edges;
    let tally = link_box_tally(inst, heavy, budget)?;
    let tk = inst.t[k - 1];
    Ok(tally.into_iter().find(|(_, ext)| ext.len() >= tk).map(|(b, ext)| {
        let mut classes = b.classes().to_vec();
        classes.push(ext[..tk].to_vec());
        SubBox::new(classes).expect("sorted")
    }))
}

/// Heavy vertices of the last class, as used by proof-guided extraction.
pub fn heavy_last_class_vertices(h: &PartiteHypergraph) -> Vec<usize> {
    let k = h.sizes().k();
    let nk = h.sizes().size(k - 1);
    (0..nk)
        .filter(|&v| 2 * nk * h.last_class_degree(v) >= h.edge_count() && h.edge_count() > 0)
        .collect()
}
