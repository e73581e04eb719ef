//! Vertex classes, index sets `J ⊆ [k]`, sub-boxes and their enumeration.
//!
//! Classes are 0-based in the API. Index sets print 1-based (`{1,3}`) so that
//! reports read the same way as the combinatorics they describe.

use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest uniformity supported by the bitmask representation of [`JSet`].
pub const MAX_UNIFORMITY: usize = 32;

/// Sizes `n_1, …, n_k` of the vertex classes of a complete `k`-partite box.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct ClassSizes {
    sizes: Vec<usize>,
    num_edges: usize,
}

impl ClassSizes {
    pub fn new(sizes: Vec<usize>) -> Result<Self> {
        if sizes.is_empty() {
            return Err(Error::InvalidSizes("uniformity k must be at least 1".into()));
        }
        if sizes.len() > MAX_UNIFORMITY {
            return Err(Error::InvalidSizes(format!(
                "uniformity {} exceeds the supported maximum {MAX_UNIFORMITY}",
                sizes.len()
            )));
        }
        if let Some(j) = sizes.iter().position(|&n| n == 0) {
            return Err(Error::InvalidSizes(format!("class {} is empty", j + 1)));
        }
        let num_edges = sizes
            .iter()
            .try_fold(1usize, |acc, &n| acc.checked_mul(n))
            .ok_or_else(|| Error::InvalidSizes("edge count overflows the index space".into()))?;
        Ok(ClassSizes { sizes, num_edges })
    }

    /// `k` classes of `n` vertices each.
    pub fn uniform(k: usize, n: usize) -> Result<Self> {
        Self::new(vec![n; k])
    }

    pub fn k(&self) -> usize {
        self.sizes.len()
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn size(&self, class: usize) -> usize {
        self.sizes[class]
    }

    pub fn min_size(&self) -> usize {
        *self.sizes.iter().min().expect("k >= 1")
    }

    /// Number of transversal edges, `n_1 ⋯ n_k`.
    pub fn num_edges(&self) -> usize {
        self.num_edges
    }

    /// `|V_J| = ∏_{j∈J} n_j`; the empty product is 1.
    pub fn tuple_count(&self, j_set: JSet) -> usize {
        j_set.iter().map(|c| self.sizes[c]).product()
    }

    /// Checks that `coords` is a transversal edge of this box.
    pub fn check_edge(&self, coords: &[usize]) -> Result<()> {
        if coords.len() != self.k() {
            return Err(Error::MalformedEdge(format!(
                "expected {} coordinates, got {}",
                self.k(),
                coords.len()
            )));
        }
        for (j, (&c, &n)) in coords.iter().zip(&self.sizes).enumerate() {
            if c >= n {
                return Err(Error::MalformedEdge(format!(
                    "coordinate {c} out of range for class {} of size {n}",
                    j + 1
                )));
            }
        }
        Ok(())
    }

    /// Row-major index of an edge (last class varies fastest).
    pub fn index_of(&self, coords: &[usize]) -> Result<usize> {
        self.check_edge(coords)?;
        Ok(self.index_unchecked(coords))
    }

    pub(crate) fn index_unchecked(&self, coords: &[usize]) -> usize {
        coords
            .iter()
            .zip(&self.sizes)
            .fold(0, |acc, (&c, &n)| acc * n + c)
    }

    pub fn coords_of(&self, mut index: usize) -> Vec<usize> {
        let mut coords = vec![0; self.k()];
        for j in (0..self.k()).rev() {
            coords[j] = index % self.sizes[j];
            index /= self.sizes[j];
        }
        coords
    }

    /// All edges in row-major order.
    pub fn edges(&self) -> Product {
        Product::new(self.sizes.iter().map(|&n| (0..n).collect()).collect())
    }

    /// All tuples of `V_J` in lexicographic order (one empty tuple for `J = ∅`).
    pub fn tuples(&self, j_set: JSet) -> Product {
        Product::new(j_set.iter().map(|c| (0..self.sizes[c]).collect()).collect())
    }

    /// The restriction `e_J`: coordinates of `edge` on the classes of `J`,
    /// in increasing class order.
    pub fn restrict(&self, edge: &[usize], j_set: JSet) -> Result<Vec<usize>> {
        self.check_edge(edge)?;
        self.check_jset(j_set)?;
        Ok(j_set.project(edge))
    }

    pub fn check_jset(&self, j_set: JSet) -> Result<()> {
        if j_set.is_subset_of(JSet::full(self.k())) {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!(
                "{j_set} is not a subset of [{}]",
                self.k()
            )))
        }
    }

    /// Sizes of the classes indexed by a non-empty `J`, in class order.
    pub fn project(&self, j_set: JSet) -> Result<ClassSizes> {
        self.check_jset(j_set)?;
        ClassSizes::new(j_set.iter().map(|c| self.sizes[c]).collect())
    }
}

impl TryFrom<Vec<usize>> for ClassSizes {
    type Error = Error;
    fn try_from(sizes: Vec<usize>) -> Result<Self> {
        ClassSizes::new(sizes)
    }
}

impl From<ClassSizes> for Vec<usize> {
    fn from(s: ClassSizes) -> Self {
        s.sizes
    }
}

/// A subset `J ⊆ [k]` of class indices, stored as a bitmask over 0-based classes.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "Vec<usize>", try_from = "Vec<usize>")]
pub struct JSet(u32);

impl JSet {
    pub const EMPTY: JSet = JSet(0);

    pub fn empty() -> Self {
        JSet(0)
    }

    /// `[k] = {1, …, k}`.
    pub fn full(k: usize) -> Self {
        assert!(k <= MAX_UNIFORMITY);
        if k == 32 {
            JSet(u32::MAX)
        } else {
            JSet((1u32 << k) - 1)
        }
    }

    pub fn from_bits(bits: u32) -> Self {
        JSet(bits)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    /// Builds a set from 0-based class indices.
    pub fn from_classes<I: IntoIterator<Item = usize>>(classes: I) -> Self {
        JSet(classes.into_iter().fold(0, |acc, c| {
            assert!(c < MAX_UNIFORMITY, "class index {c} out of range");
            acc | (1 << c)
        }))
    }

    /// Builds a set from 1-based class labels, as written in reports and files.
    pub fn from_labels<I: IntoIterator<Item = usize>>(labels: I) -> Result<Self> {
        let mut bits = 0u32;
        for l in labels {
            if l == 0 || l > MAX_UNIFORMITY {
                return Err(Error::InvalidParameter(format!("class label {l} out of range")));
            }
            bits |= 1 << (l - 1);
        }
        Ok(JSet(bits))
    }

    pub fn contains(self, class: usize) -> bool {
        class < MAX_UNIFORMITY && self.0 & (1 << class) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset_of(self, other: JSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: JSet) -> JSet {
        JSet(self.0 | other.0)
    }

    pub fn intersection(self, other: JSet) -> JSet {
        JSet(self.0 & other.0)
    }

    /// `[k] \ J`.
    pub fn complement(self, k: usize) -> JSet {
        JSet(JSet::full(k).0 & !self.0)
    }

    /// 0-based classes in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..MAX_UNIFORMITY).filter(move |&c| self.contains(c))
    }

    /// 1-based labels in increasing order.
    pub fn labels(self) -> Vec<usize> {
        self.iter().map(|c| c + 1).collect()
    }

    /// Coordinates of `edge` on the classes of this set.
    pub fn project(self, edge: &[usize]) -> Vec<usize> {
        self.iter().map(|c| edge[c]).collect()
    }

    /// Every subset of `[k]`, by increasing bitmask.
    pub fn all_subsets(k: usize) -> impl Iterator<Item = JSet> {
        let full = JSet::full(k).0 as u64;
        (0..=full).map(|b| JSet(b as u32))
    }

    /// Every proper subset `J ⊊ [k]`, by increasing bitmask.
    pub fn proper_subsets(k: usize) -> impl Iterator<Item = JSet> {
        let full = JSet::full(k);
        JSet::all_subsets(k).filter(move |&j| j != full)
    }

    /// The `j`-element subsets of `[k]` in lexicographic order of their sorted
    /// class lists: `{1,2} < {1,3} < {2,3}`.
    pub fn subsets_of_size(k: usize, j: usize) -> Vec<JSet> {
        (0..k).combinations(j).map(JSet::from_classes).collect()
    }
}

impl fmt::Display for JSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.labels().iter().join(","))
    }
}

impl From<JSet> for Vec<usize> {
    fn from(j: JSet) -> Self {
        j.labels()
    }
}

impl TryFrom<Vec<usize>> for JSet {
    type Error = Error;
    fn try_from(labels: Vec<usize>) -> Result<Self> {
        JSet::from_labels(labels)
    }
}

/// A choice of `t_j` distinct vertices `U_j ⊆ V_j` per class.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SubBox {
    classes: Vec<Vec<usize>>,
}

impl SubBox {
    /// Each class list must be non-empty and strictly increasing.
    pub fn new(classes: Vec<Vec<usize>>) -> Result<Self> {
        if classes.is_empty() {
            return Err(Error::MalformedBox("a sub-box needs at least one class".into()));
        }
        for (j, c) in classes.iter().enumerate() {
            if c.is_empty() {
                return Err(Error::MalformedBox(format!("class {} is empty", j + 1)));
            }
            if c.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::MalformedBox(format!(
                    "class {} is not strictly increasing",
                    j + 1
                )));
            }
        }
        Ok(SubBox { classes })
    }

    /// Sorts and deduplicates each class before validating.
    pub fn from_unsorted(mut classes: Vec<Vec<usize>>) -> Result<Self> {
        for c in &mut classes {
            c.sort_unstable();
            c.dedup();
        }
        Self::new(classes)
    }

    pub fn k(&self) -> usize {
        self.classes.len()
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class(&self, j: usize) -> &[usize] {
        &self.classes[j]
    }

    /// `(t_1, …, t_k)`.
    pub fn t_vec(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    pub fn num_edges(&self) -> usize {
        self.classes.iter().map(Vec::len).product()
    }

    pub fn check_fits(&self, sizes: &ClassSizes) -> Result<()> {
        if self.k() != sizes.k() {
            return Err(Error::MalformedBox(format!(
                "box has {} classes but the colouring has {}",
                self.k(),
                sizes.k()
            )));
        }
        for (j, c) in self.classes.iter().enumerate() {
            let last = *c.last().expect("non-empty");
            if last >= sizes.size(j) {
                return Err(Error::MalformedBox(format!(
                    "vertex {last} out of range for class {} of size {}",
                    j + 1,
                    sizes.size(j)
                )));
            }
        }
        Ok(())
    }

    /// Edges of the box in row-major order.
    pub fn edges(&self) -> Product {
        Product::new(self.classes.clone())
    }
}

/// Row-major cartesian product of per-class vertex lists.
///
/// The product over zero lists yields exactly one empty tuple; a product with
/// an empty list yields nothing.
#[derive(Clone, Debug)]
pub struct Product {
    lists: Vec<Vec<usize>>,
    pos: Vec<usize>,
    done: bool,
}

impl Product {
    pub fn new(lists: Vec<Vec<usize>>) -> Self {
        let done = lists.iter().any(Vec::is_empty);
        let pos = vec![0; lists.len()];
        Product { lists, pos, done }
    }
}

impl Iterator for Product {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let item = self.pos.iter().zip(&self.lists).map(|(&p, l)| l[p]).collect();
        let mut j = self.lists.len();
        loop {
            if j == 0 {
                self.done = true;
                break;
            }
            j -= 1;
            self.pos[j] += 1;
            if self.pos[j] < self.lists[j].len() {
                break;
            }
            self.pos[j] = 0;
        }
        Some(item)
    }
}

/// Lexicographic, duplicate-free enumeration of every sub-box with `t_j`
/// vertices in class `j`, ordered by (class-1 subset, …, class-k subset).
///
/// Yields nothing when `t` has the wrong length or some `t_j` is 0 or exceeds `n_j`.
pub fn enumerate_boxes(sizes: &ClassSizes, t: &[usize]) -> impl Iterator<Item = SubBox> {
    let feasible = t.len() == sizes.k()
        && t.iter().zip(sizes.sizes()).all(|(&tj, &nj)| tj >= 1 && tj <= nj);
    let choices: Vec<Vec<Vec<usize>>> = if feasible {
        t.iter()
            .zip(sizes.sizes())
            .map(|(&tj, &nj)| (0..nj).combinations(tj).collect())
            .collect()
    } else {
        vec![Vec::new()]
    };
    let index_lists = choices.iter().map(|c| (0..c.len()).collect()).collect();
    Product::new(index_lists).map(move |idx| SubBox {
        classes: idx.iter().zip(&choices).map(|(&i, c)| c[i].clone()).collect(),
    })
}

/// Node-count budget shared by the exhaustive searches.
#[derive(Clone, Debug)]
pub struct Budget {
    limit: u64,
    used: u64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { limit, used: 0 }
    }

    pub fn unlimited() -> Self {
        Budget::new(u64::MAX)
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn tick(&mut self, during: &'static str) -> Result<()> {
        self.charge(1, during)
    }

    pub fn charge(&mut self, amount: u64, during: &'static str) -> Result<()> {
        self.used = self.used.saturating_add(amount);
        if self.used > self.limit {
            Err(Error::BudgetExceeded { limit: self.limit, during })
        } else {
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn restrict_examples() {
        let s = ClassSizes::new(vec![3, 6, 8]).unwrap();
        let j = JSet::from_labels([1, 3]).unwrap();
        assert_eq!(s.restrict(&[2, 5, 7], j).unwrap(), vec![2, 7]);

        let s2 = ClassSizes::new(vec![2, 5]).unwrap();
        assert_eq!(s2.restrict(&[0, 0], JSet::empty()).unwrap(), Vec::<usize>::new());
        assert_eq!(s2.restrict(&[1, 4], JSet::full(2)).unwrap(), vec![1, 4]);
    }

    #[test]
    fn restrict_rejects_bad_edges() {
        let s = ClassSizes::new(vec![2, 2]).unwrap();
        assert!(matches!(s.restrict(&[2, 0], JSet::empty()), Err(Error::MalformedEdge(_))));
        assert!(matches!(s.restrict(&[0], JSet::empty()), Err(Error::MalformedEdge(_))));
        assert!(s.restrict(&[0, 0], JSet::from_labels([3]).unwrap()).is_err());
    }

    #[test]
    fn class_sizes_validation() {
        assert!(ClassSizes::new(vec![]).is_err());
        assert!(ClassSizes::new(vec![3, 0]).is_err());
        assert!(ClassSizes::new(vec![usize::MAX, 2]).is_err());
        let s = ClassSizes::new(vec![2, 3, 4]).unwrap();
        assert_eq!(s.num_edges(), 24);
        assert_eq!(s.tuple_count(JSet::from_labels([1, 3]).unwrap()), 8);
        assert_eq!(s.tuple_count(JSet::empty()), 1);
    }

    #[test]
    fn index_round_trip() {
        let s = ClassSizes::new(vec![2, 3, 4]).unwrap();
        for (i, e) in s.edges().enumerate() {
            assert_eq!(s.index_of(&e).unwrap(), i);
            assert_eq!(s.coords_of(i), e);
        }
    }

    #[test]
    fn enumerate_box_counts() {
        let s22 = ClassSizes::uniform(2, 2).unwrap();
        assert_eq!(enumerate_boxes(&s22, &[2, 2]).count(), 1);
        let s33 = ClassSizes::uniform(2, 3).unwrap();
        assert_eq!(enumerate_boxes(&s33, &[2, 2]).count(), 9);
        let s3 = ClassSizes::new(vec![3]).unwrap();
        assert_eq!(enumerate_boxes(&s3, &[2]).count(), 3);
        assert_eq!(enumerate_boxes(&s33, &[4, 2]).count(), 0);
    }

    #[test]
    fn enumeration_is_lexicographic() {
        let s = ClassSizes::new(vec![3, 3]).unwrap();
        let boxes: Vec<SubBox> = enumerate_boxes(&s, &[2, 2]).collect();
        let mut sorted = boxes.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(boxes, sorted);
        assert_eq!(boxes[0].classes(), &[vec![0, 1], vec![0, 1]]);
        assert_eq!(boxes[1].classes(), &[vec![0, 1], vec![0, 2]]);
    }

    #[test]
    fn jset_order_and_display() {
        let pairs = JSet::subsets_of_size(3, 2);
        let shown: Vec<String> = pairs.iter().map(ToString::to_string).collect();
        assert_eq!(shown, ["{1,2}", "{1,3}", "{2,3}"]);
        assert_eq!(JSet::empty().to_string(), "{}");
        assert_eq!(JSet::proper_subsets(2).count(), 3);
        assert_eq!(JSet::from_labels([2]).unwrap().complement(3).labels(), vec![1, 3]);
    }

    #[test]
    fn product_edge_cases() {
        assert_eq!(Product::new(vec![]).collect::<Vec<_>>(), vec![Vec::<usize>::new()]);
        assert_eq!(Product::new(vec![vec![1], vec![]]).count(), 0);
    }

    #[test]
    fn sub_box_validation() {
        assert!(SubBox::new(vec![vec![1, 0]]).is_err());
        assert!(SubBox::new(vec![vec![]]).is_err());
        let b = SubBox::from_unsorted(vec![vec![3, 1, 1], vec![0]]).unwrap();
        assert_eq!(b.classes(), &[vec![1, 3], vec![0]]);
        assert!(b.check_fits(&ClassSizes::new(vec![3, 1]).unwrap()).is_err());
        assert!(b.check_fits(&ClassSizes::new(vec![4, 1]).unwrap()).is_ok());
    }

    #[test]
    fn budget_trips() {
        let mut b = Budget::new(2);
        assert!(b.tick("test").is_ok());
        assert!(b.tick("test").is_ok());
        assert!(matches!(b.tick("test"), Err(Error::BudgetExceeded { limit: 2, .. })));
    }
}
