//! Chip-firing reachability and halting on directed multigraphs.
//!
//! ```
//! use chipfire::fixtures;
//! use chipfire::reach::{reach_decide, verify_nonreach_certificate, Budget, Verdict};
//!
//! let g = fixtures::six_vertex();
//! let (x, y) = fixtures::six_vertex_instance();
//! let r = reach_decide(&g, &x, &y, Budget::default()).unwrap();
//! assert_eq!(r.verdict, Verdict::No);
//! assert!(verify_nonreach_certificate(&g, &x, &y, r.certificate.as_ref().unwrap()));
//! ```

pub mod cli;
pub mod error;
pub mod fixtures;
pub mod game;
pub mod gen;
pub mod graph;
pub mod halting;
pub mod linalg;
pub mod reach;
pub mod vector;

pub use error::{Error, Result};
pub use game::{GameTrace, Run, TieBreak};
pub use graph::{Digraph, Laplacian, SccDecomposition};
pub use vector::{ChipDistribution, FiringVector, PeriodVector};
