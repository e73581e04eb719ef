//! Total colourings of complete boxes, plus the read-only view shared with
//! partially coloured hypergraphs.

use rand::Rng;

use crate::error::{Error, Result};
use crate::partite::{ClassSizes, SubBox};

/// Colour ids are opaque; equality is the only operation that matters.
pub type Colour = u64;

/// Read access to a set of coloured transversal edges.
pub trait EdgeColours {
    fn sizes(&self) -> &ClassSizes;

    /// Colour of the edge with the given row-major index, if it is present.
    fn colour_at(&self, index: usize) -> Option<Colour>;

    /// Present edges as `(row-major index, colour)`, by increasing index.
    fn coloured_edges(&self) -> Box<dyn Iterator<Item = (usize, Colour)> + '_>;

    fn num_coloured(&self) -> usize;
}

/// A colouring of every edge of `K^{(k)}_{n_1,…,n_k}`, stored densely in
/// row-major edge order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Colouring {
    sizes: ClassSizes,
    colours: Vec<Colour>,
}

impl Colouring {
    pub fn new(sizes: ClassSizes, colours: Vec<Colour>) -> Result<Self> {
        if colours.len() != sizes.num_edges() {
            return Err(Error::InvalidParameter(format!(
                "{} colours supplied for {} edges",
                colours.len(),
                sizes.num_edges()
            )));
        }
        Ok(Colouring { sizes, colours })
    }

    pub fn from_fn<F: FnMut(&[usize]) -> Colour>(sizes: ClassSizes, mut f: F) -> Self {
        let colours = sizes.edges().map(|e| f(&e)).collect();
        Colouring { sizes, colours }
    }

    pub fn constant(sizes: ClassSizes, colour: Colour) -> Self {
        let colours = vec![colour; sizes.num_edges()];
        Colouring { sizes, colours }
    }

    /// Every edge gets its own colour (its row-major index).
    pub fn injective(sizes: ClassSizes) -> Self {
        let colours = (0..sizes.num_edges() as Colour).collect();
        Colouring { sizes, colours }
    }

    /// Independent uniform colours from `0..palette`.
    pub fn random<R: Rng + ?Sized>(sizes: ClassSizes, palette: Colour, rng: &mut R) -> Self {
        assert!(palette >= 1, "palette must be non-empty");
        let colours = (0..sizes.num_edges()).map(|_| rng.gen_range(0..palette)).collect();
        Colouring { sizes, colours }
    }

    pub fn sizes(&self) -> &ClassSizes {
        &self.sizes
    }

    pub fn colours(&self) -> &[Colour] {
        &self.colours
    }

    pub fn colour(&self, edge: &[usize]) -> Result<Colour> {
        Ok(self.colours[self.sizes.index_of(edge)?])
    }

    pub fn colour_of_index(&self, index: usize) -> Colour {
        self.colours[index]
    }

    pub(crate) fn colour_unchecked(&self, edge: &[usize]) -> Colour {
        self.colours[self.sizes.index_unchecked(edge)]
    }

    /// The colouring induced on a sub-box, re-indexed so that the box's
    /// vertices become `0..t_j` in each class.
    pub fn induced(&self, sub_box: &SubBox) -> Result<Colouring> {
        sub_box.check_fits(&self.sizes)?;
        let sizes = ClassSizes::new(sub_box.t_vec())?;
        let colours = sub_box.edges().map(|e| self.colour_unchecked(&e)).collect();
        Ok(Colouring { sizes, colours })
    }

    /// Number of distinct colours used.
    pub fn palette_size(&self) -> usize {
        let mut c = self.colours.clone();
        c.sort_unstable();
        c.dedup();
        c.len()
    }
}

impl EdgeColours for Colouring {
    fn sizes(&self) -> &ClassSizes {
        &self.sizes
    }

    fn colour_at(&self, index: usize) -> Option<Colour> {
        self.colours.get(index).copied()
    }

    fn coloured_edges(&self) -> Box<dyn Iterator<Item = (usize, Colour)> + '_> {
        Box::new(self.colours.iter().copied().enumerate())
    }

    fn num_coloured(&self) -> usize {
        self.colours.len()
    }
}
