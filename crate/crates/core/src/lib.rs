//! Canonical Ramsey theory for partite hypergraphs: canonical-copy checks,
//! bounded colourings, complete-box extraction, rainbow sampling, the
//! symbolic constant schedule, the proof pipeline and small exact oracles.

pub mod boundedness;
pub mod canonical;
pub mod cli;
pub mod colouring;
pub mod error;
pub mod extremal;
pub mod hypergraph;
pub mod io;
pub mod journal;
pub mod oracle;
pub mod partite;
pub mod pipeline;
pub mod rainbow;
pub mod schedule;

pub use boundedness::{conflict_census, is_bounded, DeltaVec};
pub use canonical::{classify_box, find_canonical_copy_exhaustive, is_j_canonical, CanonicalWitness};
pub use colouring::{Colour, Colouring, EdgeColours};
pub use error::{Error, Result};
pub use hypergraph::{ColouredHypergraph, PartiteHypergraph};
pub use partite::{Budget, ClassSizes, JSet, SubBox};
pub use pipeline::find_canonical_copy;
