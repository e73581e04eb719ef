//! Sparse edge subsets of a complete box, optionally coloured.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;

use crate::colouring::{Colour, Colouring, EdgeColours};
use crate::error::{Error, Result};
use crate::partite::{ClassSizes, SubBox};

/// A `k`-partite `k`-uniform hypergraph: a duplicate-free subset of the
/// transversal edges of a complete box.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartiteHypergraph {
    sizes: ClassSizes,
    member: Vec<bool>,
    edge_count: usize,
}

impl PartiteHypergraph {
    pub fn empty(sizes: ClassSizes) -> Self {
        let member = vec![false; sizes.num_edges()];
        PartiteHypergraph { sizes, member, edge_count: 0 }
    }

    pub fn complete(sizes: ClassSizes) -> Self {
        let member = vec![true; sizes.num_edges()];
        let edge_count = member.len();
        PartiteHypergraph { sizes, member, edge_count }
    }

    /// Rejects duplicate or out-of-range edges.
    pub fn from_edges<I, E>(sizes: ClassSizes, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: AsRef<[usize]>,
    {
        let mut h = Self::empty(sizes);
        for e in edges {
            let e = e.as_ref();
            if !h.insert(e)? {
                return Err(Error::MalformedEdge(format!("duplicate edge {e:?}")));
            }
        }
        Ok(h)
    }

    /// Builds the hypergraph from a membership predicate on edge coordinates.
    pub fn from_predicate<F: FnMut(&[usize]) -> bool>(sizes: ClassSizes, mut f: F) -> Self {
        let member: Vec<bool> = sizes.edges().map(|e| f(&e)).collect();
        let edge_count = member.iter().filter(|&&b| b).count();
        PartiteHypergraph { sizes, member, edge_count }
    }

    /// Each edge present independently with probability `p`.
    pub fn random<R: Rng + ?Sized>(sizes: ClassSizes, p: f64, rng: &mut R) -> Self {
        Self::from_predicate(sizes, |_| rng.gen_bool(p.clamp(0.0, 1.0)))
    }

    /// Inserts an edge; returns `false` if it was already present.
    pub fn insert(&mut self, edge: &[usize]) -> Result<bool> {
        let i = self.sizes.index_of(edge)?;
        Ok(self.insert_index(i))
    }

    pub(crate) fn insert_index(&mut self, i: usize) -> bool {
        if self.member[i] {
            false
        } else {
            self.member[i] = true;
            self.edge_count += 1;
            true
        }
    }

    pub fn sizes(&self) -> &ClassSizes {
        &self.sizes
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn contains(&self, edge: &[usize]) -> bool {
        self.sizes.check_edge(edge).is_ok() && self.member[self.sizes.index_unchecked(edge)]
    }

    pub fn contains_index(&self, index: usize) -> bool {
        self.member[index]
    }

    pub(crate) fn membership(&self) -> &[bool] {
        &self.member
    }

    /// `d = |E| / (n_1 ⋯ n_k)`, exactly.
    pub fn density(&self) -> BigRational {
        BigRational::new(BigInt::from(self.edge_count), BigInt::from(self.sizes.num_edges()))
    }

    pub fn edge_indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.member.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i)
    }

    /// Edges in row-major order.
    pub fn edges(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        self.edge_indices().map(|i| self.sizes.coords_of(i))
    }

    /// Whether every transversal edge of `sub_box` is present.
    pub fn contains_box(&self, sub_box: &SubBox) -> bool {
        sub_box.check_fits(&self.sizes).is_ok()
            && sub_box
                .edges()
                .all(|e| self.member[self.sizes.index_unchecked(&e)])
    }

    /// Degree of vertex `v` of the last class, `e(H(v))`.
    pub fn last_class_degree(&self, v: usize) -> usize {
        let nk = self.sizes.size(self.sizes.k() - 1);
        (0..self.sizes.num_edges() / nk)
            .filter(|&p| self.member[p * nk + v])
            .count()
    }

    /// The link `H(v)` of vertex `v` in the last class: the `(k-1)`-uniform
    /// hypergraph on classes `1..k-1` of edges through `v`, with `v` removed.
    pub fn last_class_link(&self, v: usize) -> Result<PartiteHypergraph> {
        let k = self.sizes.k();
        if k < 2 {
            return Err(Error::InvalidParameter("links need uniformity at least 2".into()));
        }
        let nk = self.sizes.size(k - 1);
        if v >= nk {
            return Err(Error::MalformedEdge(format!("vertex {v} not in class {k}")));
        }
        let sizes = ClassSizes::new(self.sizes.sizes()[..k - 1].to_vec())?;
        let member: Vec<bool> = (0..sizes.num_edges()).map(|p| self.member[p * nk + v]).collect();
        let edge_count = member.iter().filter(|&&b| b).count();
        Ok(PartiteHypergraph { sizes, member, edge_count })
    }
}

/// A hypergraph whose edges carry colours; absent edges have none.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColouredHypergraph {
    sizes: ClassSizes,
    colours: Vec<Option<Colour>>,
    edge_count: usize,
}

impl ColouredHypergraph {
    pub fn empty(sizes: ClassSizes) -> Self {
        let colours = vec![None; sizes.num_edges()];
        ColouredHypergraph { sizes, colours, edge_count: 0 }
    }

    /// Colours the edges of `h` with `f`.
    pub fn from_hypergraph<F: FnMut(&[usize]) -> Colour>(h: &PartiteHypergraph, mut f: F) -> Self {
        let mut out = Self::empty(h.sizes().clone());
        for i in h.edge_indices() {
            let e = h.sizes().coords_of(i);
            out.colours[i] = Some(f(&e));
        }
        out.edge_count = h.edge_count();
        out
    }

    /// The edges of `h` with the colours `col` gives them.
    pub fn restrict_colouring(col: &Colouring, h: &PartiteHypergraph) -> Result<Self> {
        if col.sizes() != h.sizes() {
            return Err(Error::InvalidParameter(
                "colouring and hypergraph live on different boxes".into(),
            ));
        }
        let mut out = Self::empty(h.sizes().clone());
        for i in h.edge_indices() {
            out.colours[i] = Some(col.colour_of_index(i));
        }
        out.edge_count = h.edge_count();
        Ok(out)
    }

    /// Sets the colour of an edge, inserting it if absent.
    pub fn set(&mut self, edge: &[usize], colour: Colour) -> Result<()> {
        let i = self.sizes.index_of(edge)?;
        if self.colours[i].is_none() {
            self.edge_count += 1;
        }
        self.colours[i] = Some(colour);
        Ok(())
    }

    pub fn colour(&self, edge: &[usize]) -> Option<Colour> {
        self.sizes
            .index_of(edge)
            .ok()
            .and_then(|i| self.colours[i])
    }

    pub fn hypergraph(&self) -> PartiteHypergraph {
        let member: Vec<bool> = self.colours.iter().map(Option::is_some).collect();
        PartiteHypergraph { sizes: self.sizes.clone(), member, edge_count: self.edge_count }
    }

    pub fn density(&self) -> BigRational {
        BigRational::new(BigInt::from(self.edge_count), BigInt::from(self.sizes.num_edges()))
    }
}

impl EdgeColours for ColouredHypergraph {
    fn sizes(&self) -> &ClassSizes {
        &self.sizes
    }

    fn colour_at(&self, index: usize) -> Option<Colour> {
        self.colours.get(index).copied().flatten()
    }

    fn coloured_edges(&self) -> Box<dyn Iterator<Item = (usize, Colour)> + '_> {
        Box::new(
            self.colours
                .iter()
                .enumerate()
                .filter_map(|(i, c)| c.map(|c| (i, c))),
        )
    }

    fn num_coloured(&self) -> usize {
        self.edge_count
    }
}
