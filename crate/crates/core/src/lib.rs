//! Discrete manifolds as finite simple graphs: recognition, constructions,
//! chromatic numbers and Fisk varieties.
//!
//! ```
//! use zykov::{builders::{cycle, join}, coloring::chromatic_number, manifolds::is_sphere};
//!
//! let g = join(&cycle(5), &cycle(5));
//! assert_eq!(is_sphere(&g, 1_000_000).witness().map(|w| w.dim), Some(3));
//! assert_eq!(chromatic_number(&g, u64::MAX).value(), Some(6));
//! ```

pub mod builders;
pub mod coloring;
pub mod dot;
pub mod error;
pub mod expr;
pub mod fisk;
pub mod graph;
pub mod homology;
pub mod io;
pub mod iso;
pub mod manifolds;

pub use coloring::{Chromatic, Coloring, KColoring};
pub use error::{Error, Result};
pub use fisk::{FiskCriterionReport, FiskVariety};
pub use graph::{FVector, Graph, Induced, Simplex};
pub use homology::BettiVector;
pub use manifolds::{Answer, Recognizer, Refutation, SphereWitness};
