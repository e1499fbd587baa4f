//! Coxeter systems, their visual decompositions, and refinement of those
//! decompositions over minimal splitting subgroups.

pub mod caps;
pub mod corpus;
pub mod error;
pub mod finite;
pub mod gog;
pub mod group;
pub mod measure;
pub mod splittings;
pub mod subset;
pub mod system;
pub mod word;

pub use caps::Caps;
pub use error::{Error, Result};
pub use gog::{Decomposer, GogEdge, SplitMove, Violation, VisualGog};
pub use measure::{Measure, MeasureReport, NValue};
pub use subset::SpecialSubset;
pub use system::CoxeterSystem;
pub use word::{GeodesicClass, Word, WordEngine};
