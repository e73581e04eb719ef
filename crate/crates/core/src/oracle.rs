//! Ground truth for tiny instances: exhaustive search for colourings with no
//! canonical copy, Erdős–Rado numbers, and random-colouring experiments.
//!
//! Colourings are enumerated up to renaming as restricted-growth strings over
//! the edges in row-major order: edge `i` gets a colour at most one more than
//! the largest colour among edges `< i`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::canonical::{find_canonical_copy_exhaustive, BoxShape};
use crate::colouring::{Colour, Colouring};
use crate::error::{Error, Result};
use crate::partite::{enumerate_boxes, Budget, ClassSizes};

/// Counters kept by the search.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    /// Assignment steps tried.
    pub nodes: u64,
    /// Branches cut because a completed box was canonical.
    pub pruned: u64,
    /// Complete colourings reached.
    pub leaves: u64,
    /// Complete colourings with no canonical copy.
    pub avoiders: u64,
}

/// Resumable position of a search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub k: usize,
    pub t: usize,
    pub n: usize,
    pub prune: bool,
    pub assign: Vec<u32>,
    pub next: u32,
    pub stats: SearchStats,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchStatus {
    /// An avoider was found; the search can be resumed for more.
    Found(Vec<u32>),
    /// The whole partition space has been visited.
    Exhausted,
    /// The budget ran out; [`AvoiderSearch::checkpoint`] resumes it.
    OutOfBudget,
}

/// Depth-first search over restricted-growth colourings of `K_{n,…,n}`.
pub struct AvoiderSearch {
    sizes: ClassSizes,
    t: usize,
    prune: bool,
    shape: BoxShape,
    /// `boxes_by_last[i]`: local-to-global edge indices of every `t`-box
    /// whose last edge is `i`.
    boxes_by_last: Vec<Vec<Vec<usize>>>,
    assign: Vec<u32>,
    /// Number of colours used by `assign[..=i]`.
    used: Vec<u32>,
    next: u32,
    stats: SearchStats,
    done: bool,
    scratch: Vec<Colour>,
}

impl AvoiderSearch {
    /// With `prune`, a branch is cut as soon as a completed box is canonical;
    /// without it every partition is a leaf and is checked at the end.
    pub fn new(k: usize, t: usize, n: usize, prune: bool) -> Result<Self> {
        if t == 0 {
            return Err(Error::InvalidParameter("t must be positive".into()));
        }
        let sizes = ClassSizes::uniform(k, n)?;
        let mut boxes_by_last = vec![Vec::new(); sizes.num_edges()];
        if t <= n {
            for b in enumerate_boxes(&sizes, &vec![t; k]) {
                let idx: Vec<usize> = b.edges().map(|e| sizes.index_unchecked(&e)).collect();
                let last = *idx.last().expect("boxes are non-empty");
                boxes_by_last[last].push(idx);
            }
        }
        Ok(AvoiderSearch {
            sizes,
            t,
            prune,
            shape: BoxShape::new(&vec![t; k]),
            boxes_by_last,
            assign: Vec::new(),
            used: Vec::new(),
            next: 0,
            stats: SearchStats::default(),
            done: false,
            scratch: Vec::new(),
        })
    }

    pub fn resume(cp: &Checkpoint) -> Result<Self> {
        let mut s = Self::new(cp.k, cp.t, cp.n, cp.prune)?;
        if cp.assign.len() > s.sizes.num_edges() {
            return Err(Error::InvalidParameter("checkpoint is longer than the edge count".into()));
        }
        let mut used = Vec::with_capacity(cp.assign.len());
        let mut m = 0;
        for &c in &cp.assign {
            if c > m {
                return Err(Error::InvalidParameter("checkpoint is not a restricted-growth prefix".into()));
            }
            m = m.max(c + 1);
            used.push(m);
        }
        s.assign = cp.assign.clone();
        s.used = used;
        s.next = cp.next;
        s.stats = cp.stats.clone();
        Ok(s)
    }

    pub fn checkpoint(&self) -> Checkpoint {
        Checkpoint {
            k: self.sizes.k(),
            t: self.t,
            n: self.sizes.size(0),
            prune: self.prune,
            assign: self.assign.clone(),
            next: self.next,
            stats: self.stats.clone(),
        }
    }

    pub fn stats(&self) -> &SearchStats {
        &self.stats
    }

    pub fn sizes(&self) -> &ClassSizes {
        &self.sizes
    }

    /// Whether some box ending at edge `i` is canonical under `assign`.
    fn closes_canonical_box(&mut self, i: usize) -> bool {
        for idx in &self.boxes_by_last[i] {
            self.scratch.clear();
            self.scratch.extend(idx.iter().map(|&e| self.assign[e] as Colour));
            if self.shape.is_canonical(&self.scratch) {
                return true;
            }
        }
        false
    }

    fn is_avoider(&mut self) -> bool {
        (0..self.assign.len()).all(|i| !self.closes_canonical_box(i))
    }

    fn backtrack(&mut self) {
        match self.assign.pop() {
            Some(c) => {
                self.used.pop();
                self.next = c + 1;
            }
            None => self.done = true,
        }
    }

    /// Advances to the next avoider, the end of the space, or the end of
    /// the budget.
    pub fn run(&mut self, budget: &mut Budget) -> SearchStatus {
        let total = self.sizes.num_edges();
        loop {
            if self.done {
                return SearchStatus::Exhausted;
            }
            let d = self.assign.len();
            if d == total {
                self.stats.leaves += 1;
                let found = self.prune || self.is_avoider();
                let result = found.then(|| self.assign.clone());
                self.backtrack();
                if let Some(a) = result {
                    self.stats.avoiders += 1;
                    return SearchStatus::Found(a);
                }
                continue;
            }
            let limit = if d == 0 { 0 } else { self.used[d - 1] };
            if self.next > limit {
                self.backtrack();
                continue;
            }
            if budget.tick("avoider search").is_err() {
                return SearchStatus::OutOfBudget;
            }
            self.stats.nodes += 1;
            let c = self.next;
            self.assign.push(c);
            self.used.push(limit.max(c + 1));
            if self.prune && self.closes_canonical_box(d) {
                self.stats.pruned += 1;
                self.assign.pop();
                self.used.pop();
                self.next = c + 1;
                continue;
            }
            self.next = 0;
        }
    }

    pub fn colouring(&self, assign: &[u32]) -> Colouring {
        Colouring::new(self.sizes.clone(), assign.iter().map(|&c| c as Colour).collect())
            .expect("one colour per edge")
    }
}

/// A colouring of `K^{(k)}_{n,…,n}` with no canonical `t`-box, verified
/// against the exhaustive checker, or `None` if none exists.
pub fn avoider_search(k: usize, t: usize, n: usize, budget: &mut Budget) -> Result<Option<Colouring>> {
    let mut s = AvoiderSearch::new(k, t, n, true)?;
    match s.run(budget) {
        SearchStatus::Found(a) => {
            let col = s.colouring(&a);
            assert!(find_canonical_copy_exhaustive(&col, t).is_none(), "avoider has a canonical copy");
            Ok(Some(col))
        }
        SearchStatus::Exhausted => Ok(None),
        SearchStatus::OutOfBudget => {
            Err(Error::BudgetExceeded { limit: budget.limit(), during: "avoider search" })
        }
    }
}

/// Every avoider (as a restricted-growth string) and the final statistics.
pub fn all_avoiders(k: usize, t: usize, n: usize, prune: bool, budget: &mut Budget) -> Result<(Vec<Vec<u32>>, SearchStats)> {
    let mut s = AvoiderSearch::new(k, t, n, prune)?;
    let mut out = Vec::new();
    loop {
        match s.run(budget) {
            SearchStatus::Found(a) => out.push(a),
            SearchStatus::Exhausted => return Ok((out, s.stats.clone())),
            SearchStatus::OutOfBudget => {
                return Err(Error::BudgetExceeded { limit: budget.limit(), during: "avoider search" })
            }
        }
    }
}

/// Result of an Erdős–Rado scan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ErScan {
    /// Smallest `n ≤ n_max` with no avoider.
    pub value: Option<usize>,
    /// Sizes at which an avoider was found.
    pub avoided: Vec<usize>,
    /// No avoider at `value + 1` either; `None` when the budget ran out first.
    pub next_confirmed: Option<bool>,
    pub nodes: u64,
}

/// Scans `n = 1, …, n_max` for the first size without an avoider, then
/// re-checks `n + 1` with whatever budget is left.
pub fn er_number(k: usize, t: usize, n_max: usize, budget: &mut Budget) -> Result<ErScan> {
    let mut avoided = Vec::new();
    for n in 1..=n_max {
        if avoider_search(k, t, n, budget)?.is_some() {
            avoided.push(n);
            continue;
        }
        let next_confirmed = match avoider_search(k, t, n + 1, budget) {
            Ok(found) => Some(found.is_none()),
            Err(Error::BudgetExceeded { .. }) => None,
            Err(e) => return Err(e),
        };
        return Ok(ErScan { value: Some(n), avoided, next_confirmed, nodes: budget.used() });
    }
    Ok(ErScan { value: None, avoided, next_confirmed: None, nodes: budget.used() })
}

/// Outcome of a random-colouring experiment.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentRecord {
    pub k: usize,
    pub t: usize,
    pub n: usize,
    pub palette: u64,
    pub trials: u64,
    pub seed: u64,
    pub hits: u64,
    pub misses: u64,
}

impl ExperimentRecord {
    pub fn hit_rate(&self) -> f64 {
        if self.trials == 0 {
            0.0
        } else {
            self.hits as f64 / self.trials as f64
        }
    }

    /// Half-width of the normal-approximation 95% interval.
    pub fn confidence_radius(&self) -> f64 {
        if self.trials == 0 {
            return 0.0;
        }
        let p = self.hit_rate();
        1.96 * (p * (1.0 - p) / self.trials as f64).sqrt()
    }
}

/// Colours `K^{(k)}_{n,…,n}` uniformly from `palette` colours `trials` times
/// and counts the colourings that contain a canonical `t`-box.
pub fn random_lb_experiment(k: usize, t: usize, n: usize, palette: u64, trials: u64, seed: u64) -> Result<ExperimentRecord> {
    if palette == 0 {
        return Err(Error::InvalidParameter("palette must be positive".into()));
    }
    let sizes = ClassSizes::uniform(k, n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut hits = 0;
    for _ in 0..trials {
        let colours: Vec<Colour> = (0..sizes.num_edges()).map(|_| rng.gen_range(0..palette)).collect();
        let col = Colouring::new(sizes.clone(), colours).expect("sized");
        if t <= n && find_canonical_copy_exhaustive(&col, t).is_some() {
            hits += 1;
        }
    }
    Ok(ExperimentRecord { k, t, n, palette, trials, seed, hits, misses: trials - hits })
}

/// `Bell(m)`, via the Bell triangle.
pub fn bell(m: usize) -> u128 {
    let mut row = vec![1u128];
    for _ in 0..m {
        let mut next = vec![*row.last().expect("non-empty")];
        for &x in &row {
            let v = next.last().expect("non-empty") + x;
            next.push(v);
        }
        row = next;
    }
    row[0]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bell_numbers() {
        assert_eq!((0..=5).map(bell).collect::<Vec<_>>(), vec![1, 1, 2, 5, 15, 52]);
        assert_eq!(bell(9), 21147);
    }

    #[test]
    fn unpruned_leaves_are_bell() {
        for (k, n) in [(1, 3), (2, 2), (1, 5)] {
            let (_, stats) = all_avoiders(k, 2, n, false, &mut Budget::unlimited()).unwrap();
            assert_eq!(stats.leaves as u128, bell(n.pow(k as u32)));
        }
    }

    #[test]
    fn small_avoiders() {
        let c = avoider_search(2, 2, 1, &mut Budget::unlimited()).unwrap().unwrap();
        assert_eq!(c.colours().len(), 1);
        let c = avoider_search(2, 2, 2, &mut Budget::unlimited()).unwrap().unwrap();
        assert!(find_canonical_copy_exhaustive(&c, 2).is_none());
    }

    #[test]
    fn pruning_preserves_avoiders() {
        let (a, _) = all_avoiders(2, 2, 2, true, &mut Budget::unlimited()).unwrap();
        let (b, _) = all_avoiders(2, 2, 2, false, &mut Budget::unlimited()).unwrap();
        assert_eq!(a, b);
        assert!(!a.is_empty());
    }

    #[test]
    fn checkpoint_resume_matches_straight_run() {
        let (all, _) = all_avoiders(2, 2, 2, true, &mut Budget::unlimited()).unwrap();
        let mut s = AvoiderSearch::new(2, 2, 2, true).unwrap();
        let mut got = Vec::new();
        loop {
            let mut b = Budget::new(3);
            match s.run(&mut b) {
                SearchStatus::Found(a) => got.push(a),
                SearchStatus::Exhausted => break,
                SearchStatus::OutOfBudget => {
                    let json = serde_json::to_string(&s.checkpoint()).unwrap();
                    s = AvoiderSearch::resume(&serde_json::from_str(&json).unwrap()).unwrap();
                }
            }
        }
        assert_eq!(got, all);
    }

    #[test]
    fn budget_is_an_error() {
        assert!(matches!(avoider_search(2, 2, 4, &mut Budget::new(5)), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn er_below_t_is_none() {
        let scan = er_number(2, 3, 2, &mut Budget::unlimited()).unwrap();
        assert_eq!(scan.value, None);
        assert_eq!(scan.avoided, vec![1, 2]);
    }

    #[test]
    fn experiment_edges() {
        let r = random_lb_experiment(2, 2, 3, 1, 50, 0).unwrap();
        assert_eq!(r.hits, 50);
        let r = random_lb_experiment(2, 3, 2, 5, 50, 0).unwrap();
        assert_eq!(r.hits, 0);
        assert_eq!(r.hits + r.misses, r.trials);
        assert!(random_lb_experiment(2, 2, 2, 0, 1, 0).is_err());
    }
}
