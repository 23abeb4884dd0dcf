//! Combinatorics of weighted Vogan diagrams.
//!
//! A weighted Vogan diagram is a Dynkin diagram with an involution θ, a set of
//! painted θ-fixed nodes and θ-symmetric weights in `{0, 1, 2}`. This crate
//! builds the positive roots of every simple finite type, splits them by weight
//! into compact, non-compact and complex parts, decides the noticed equality,
//! and works with the equivalence generated by operation (A).
//!
//! ```
//! let d: vogan::WeightedVoganDiagram = "B5 theta=id J=2,4,5 w=2,0,0,2,0".parse().unwrap();
//! let report = vogan::classify::noticed_report(&d);
//! assert_eq!((report.lhs, report.rhs), (7, 7));
//! assert!(report.noticed);
//! ```

pub mod classify;
pub mod cli;
pub mod diagram;
pub mod equiv;
pub mod error;
pub mod rootsys;
pub mod sweep;

pub use classify::{Analysis, NoticedReport, RootClass, Theorem55, WeightPartition};
pub use diagram::{Involution, RawDiagram, WeightedVoganDiagram};
pub use equiv::EquivalenceClass;
pub use error::{Error, Result, Violation};
pub use rootsys::{DynkinDiagram, Family, Root, RootSystem, SimpleType};
pub use sweep::{Catalog, SweepOptions};
