//! Common-divisor graphs on conjugacy classes of finite permutation groups,
//! with the structural machinery needed to check statements about them.

pub mod cdgraph;
pub mod classes;
pub mod constructors;
pub mod permgroup;
pub mod structure;
pub mod verdict;
pub mod verifier;

pub use cdgraph::{build_graph, ClassGraph, Diameter, Mode};
pub use classes::{conjugacy_classes, ClassSet, ClassTable, ConjClass};
pub use constructors::{build, builtin_corpus, parse_spec, GroupSpec, SpecError};
pub use permgroup::{Group, GroupError, Permutation, PrimeSet};
pub use structure::Analysis;
pub use verdict::{CheckId, Counterexample, Status, Verdict};
pub use verifier::{run_suite, GroupContext, SuiteReport};
