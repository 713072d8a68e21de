//! Fixtures shared by the criterion benches.

use cdgraph::constructors::{build, GroupSpec};
use cdgraph::Group;

/// A small Frobenius group and the two order-5250 witness groups.
pub fn fixtures() -> Vec<(&'static str, Group)> {
    [
        ("f42", GroupSpec::FrobeniusMetacyclic { q: 7, d: 6 }),
        ("ex31a", GroupSpec::example_31a()),
        ("ex31b", GroupSpec::example_31b()),
    ]
    .into_iter()
    .map(|(name, spec)| (name, build(&spec).expect("fixture builds")))
    .collect()
}
