//! `J`-canonicity of colourings restricted to sub-boxes.
//!
//! A colouring is `J`-canonical on a box when two box edges share a colour
//! exactly when their restrictions to the classes of `J` coincide. `J = ∅` is
//! monochromatic, `J = [k]` is rainbow.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::colouring::{Colour, Colouring};
use crate::error::Result;
use crate::partite::{enumerate_boxes, JSet, SubBox};

/// Proof that a colouring is `J`-canonical on `sub_box`: every box edge `e`
/// has colour `fiber_map[e_J]`, and `fiber_map` is injective.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalWitness {
    pub j_set: JSet,
    pub sub_box: SubBox,
    pub fiber_map: BTreeMap<Vec<usize>, Colour>,
}

impl CanonicalWitness {
    /// Re-checks the witness against `col` from scratch.
    pub fn verify(&self, col: &Colouring) -> bool {
        if self.sub_box.check_fits(col.sizes()).is_err() {
            return false;
        }
        let mut seen = std::collections::HashSet::new();
        if !self.fiber_map.values().all(|c| seen.insert(*c)) {
            return false;
        }
        self.sub_box.edges().all(|e| {
            self.fiber_map.get(&self.j_set.project(&e)) == Some(&col.colour_unchecked(&e))
        })
    }
}

/// Checks `φ(e) = φ(e') ⟺ e_J = e'_J` over the edges of `sub_box`, in both
/// directions, and returns the witness on success.
pub fn is_j_canonical(
    col: &Colouring,
    sub_box: &SubBox,
    j_set: JSet,
) -> Result<Option<CanonicalWitness>> {
    sub_box.check_fits(col.sizes())?;
    col.sizes().check_jset(j_set)?;
    let mut fiber_colour: HashMap<Vec<usize>, Colour> = HashMap::new();
    let mut colour_fiber: HashMap<Colour, Vec<usize>> = HashMap::new();
    for e in sub_box.edges() {
        let s = j_set.project(&e);
        let c = col.colour_unchecked(&e);
        match fiber_colour.get(&s) {
            Some(&prev) if prev != c => return Ok(None),
            Some(_) => {}
            None => {
                if colour_fiber.contains_key(&c) {
                    // colour already used by a different fiber
                    return Ok(None);
                }
                colour_fiber.insert(c, s.clone());
                fiber_colour.insert(s, c);
            }
        }
    }
    Ok(Some(CanonicalWitness {
        j_set,
        sub_box: sub_box.clone(),
        fiber_map: fiber_colour.into_iter().collect(),
    }))
}

/// Every `J ⊆ [k]` (by increasing bitmask) for which the box is `J`-canonical.
/// Boxes with a class of size 1 can qualify for several `J` at once.
pub fn classify_box(col: &Colouring, sub_box: &SubBox) -> Result<Vec<JSet>> {
    let mut out = Vec::new();
    for j in JSet::all_subsets(col.sizes().k()) {
        if is_j_canonical(col, sub_box, j)?.is_some() {
            out.push(j);
        }
    }
    Ok(out)
}

/// Scans every `t × … × t` sub-box and every `J`; returns the first witness
/// in enumeration order, or `None` when the colouring has no canonical copy.
pub fn find_canonical_copy_exhaustive(col: &Colouring, t: usize) -> Option<CanonicalWitness> {
    let k = col.sizes().k();
    let t_vec = vec![t; k];
    for b in enumerate_boxes(col.sizes(), &t_vec) {
        for j in JSet::all_subsets(k) {
            if let Ok(Some(w)) = is_j_canonical(col, &b, j) {
                return Some(w);
            }
        }
    }
    None
}

/// Precomputed fiber structure of a fixed box shape, for hot loops that test
/// many colourings of boxes with the same `t`-vector.
///
/// Local edges are numbered row-major inside the box.
#[derive(Clone, Debug)]
pub(crate) struct BoxShape {
    k: usize,
    /// `fibers[J][i]` is the fiber id of local edge `i` under `e ↦ e_J`.
    fibers: Vec<Vec<u32>>,
}

impl BoxShape {
    pub(crate) fn new(t_vec: &[usize]) -> Self {
        let k = t_vec.len();
        let local: Vec<Vec<usize>> =
            crate::partite::Product::new(t_vec.iter().map(|&t| (0..t).collect()).collect())
                .collect();
        let fibers = JSet::all_subsets(k)
            .map(|j| {
                let mut ids: HashMap<Vec<usize>, u32> = HashMap::new();
                local
                    .iter()
                    .map(|e| {
                        let n = ids.len() as u32;
                        *ids.entry(j.project(e)).or_insert(n)
                    })
                    .collect()
            })
            .collect();
        BoxShape { k, fibers }
    }

    /// Whether the local colours are `J`-canonical for some `J`.
    pub(crate) fn is_canonical(&self, colours: &[Colour]) -> bool {
        JSet::all_subsets(self.k).any(|j| self.is_j_canonical(colours, j))
    }

    pub(crate) fn is_j_canonical(&self, colours: &[Colour], j: JSet) -> bool {
        let f = &self.fibers[j.bits() as usize];
        for a in 0..colours.len() {
            for b in a + 1..colours.len() {
                if (colours[a] == colours[b]) != (f[a] == f[b]) {
                    return false;
                }
            }
        }
        true
    }
}
