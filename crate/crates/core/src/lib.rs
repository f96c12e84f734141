//! The bicyclic inverse semigroup `B`, its associated graphs, and
//! two-class partitions that avoid a given set of products.
//!
//! Elements are pairs `(a,b)` with `a ≥ 0` and `a + b ≥ 0`. A subset `U` is
//! avoidable when `B` splits into two classes with no product of two
//! distinct elements from one class landing in `U`; equivalently, when the
//! associated graph of `U` is bipartite.

pub mod classify;
pub mod coloring;
pub mod element;
pub mod error;
pub mod exec;
pub mod family;
pub mod graph;
pub mod partition;
pub mod sweep;
pub mod window;
pub mod witness;

pub use classify::{
    classify, containing_families, family_partition, Classifier, FamilyFit, Verdict,
};
pub use coloring::{k_colorable, ColoringOutcome};
pub use element::{Element, EvenClass, Letter, Parity};
pub use error::Error;
pub use exec::Exec;
pub use family::MaximalFamily;
pub use graph::{
    associated_graph, bipartition_or_odd_cycle, verify_certificate, AssociatedGraph, Certificate,
    Side,
};
pub use partition::{partition_avoids, PartitionRule, Violation};
pub use window::{TargetSet, Window};
pub use witness::{Construction, Provenance, Witness};
