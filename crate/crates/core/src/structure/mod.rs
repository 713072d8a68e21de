//! Structural predicates: normal subgroups, `O_π`, quotients, separability,
//! π-length, Sylow and Hall subgroups, p-nilpotency and quasi-Frobenius
//! analysis.
//!
//! Normal subgroups are handled as unions of conjugacy classes
//! ([`ClassSet`]s) over the group's [`ClassTable`]; every normal subgroup is
//! generated by the classes it contains, so the lattice is the join-closure of
//! the normal closures of single classes. Subgroups are materialised as
//! [`Group`]s only when a caller needs elements.

mod frobenius;
mod quotient;
mod sylow;

use std::sync::{Arc, OnceLock};

use rustc_hash::FxHashSet;
use serde::Serialize;
use thiserror::Error;

use crate::classes::{ClassSet, ClassTable};
use crate::permgroup::{Group, PrimeSet};
use crate::verdict::{CheckId, Counterexample, Status, Verdict};

pub use frobenius::{
    quasi_frobenius_analysis, FrobeniusAnalysis, FrobeniusParts, FrobeniusSummary,
};
pub use quotient::{quotient, quotient_by_center, Quotient};
pub use sylow::{hall_pi_subgroup, sylow_conjugates, sylow_subgroup, HallOutcome};

/// Default node budget for backtracking searches.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StructureError {
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("complement search exhausted its budget of {budget} nodes")]
    ComplementSearchExhausted { budget: u64 },
    #[error(
        "internal error: two distinct Frobenius kernel candidates of orders {first} and {second}"
    )]
    FrobeniusKernelNotUnique { first: u64, second: u64 },
    #[error("internal error: no complement of order {order} exists for a coprime normal subgroup")]
    MissingComplement { order: u64 },
}

/// A normal subgroup as a closed union of classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalSubgroup {
    pub classes: ClassSet,
    pub order: u64,
}

/// A group with its class table and lazily computed normal structure.
pub struct Analysis {
    table: ClassTable,
    lattice: OnceLock<Vec<NormalSubgroup>>,
}

impl std::fmt::Debug for Analysis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Analysis")
            .field("table", &self.table)
            .finish()
    }
}

impl Analysis {
    pub fn new(group: impl Into<Arc<Group>>) -> Analysis {
        Analysis::from_table(ClassTable::new(group.into()))
    }

    pub fn from_table(table: ClassTable) -> Analysis {
        Analysis {
            table,
            lattice: OnceLock::new(),
        }
    }

    pub fn group(&self) -> &Arc<Group> {
        self.table.group()
    }

    pub fn table(&self) -> &ClassTable {
        &self.table
    }

    pub fn order(&self) -> u64 {
        self.group().order()
    }

    /// Union of the size-1 classes.
    pub fn center_set(&self) -> ClassSet {
        self.table
            .set_of((0..self.table.len()).filter(|&i| self.table.class(i).is_central()))
    }

    pub fn center(&self) -> Group {
        self.table.subgroup_of(&self.center_set())
    }

    pub fn trivial_set(&self) -> ClassSet {
        self.table.set_of([0])
    }

    pub fn full_set(&self) -> ClassSet {
        self.table.set_of(0..self.table.len())
    }

    /// All normal subgroups, sorted by order then by class membership.
    pub fn normal_lattice(&self) -> &[NormalSubgroup] {
        self.lattice.get_or_init(|| {
            let t = &self.table;
            let mut seen: FxHashSet<ClassSet> = FxHashSet::default();
            let mut list: Vec<ClassSet> = Vec::new();
            let mut push = |s: ClassSet, list: &mut Vec<ClassSet>| {
                if seen.insert(s.clone()) {
                    list.push(s);
                }
            };
            push(self.trivial_set(), &mut list);
            for i in 1..t.len() {
                push(t.closure(&t.set_of([i])), &mut list);
            }
            let mut head = 0;
            while head < list.len() {
                let a = list[head].clone();
                for j in 0..head {
                    let joined = t.normal_product(&a, &list[j]);
                    push(joined, &mut list);
                }
                head += 1;
            }
            let mut out: Vec<NormalSubgroup> = list
                .into_iter()
                .map(|classes| NormalSubgroup {
                    order: t.set_order(&classes),
                    classes,
                })
                .collect();
            out.sort_by(|a, b| {
                a.order
                    .cmp(&b.order)
                    .then_with(|| a.classes.ones().cmp(b.classes.ones()))
            });
            out
        })
    }

    pub fn subgroup(&self, set: &ClassSet) -> Group {
        self.table.subgroup_of(set)
    }

    /// `O_π(G)` as a class set: the largest normal subgroup of π-order.
    pub fn o_pi_set(&self, pi: &PrimeSet) -> ClassSet {
        self.normal_lattice()
            .iter()
            .filter(|n| pi.is_pi_number(n.order))
            .max_by_key(|n| n.order)
            .map(|n| n.classes.clone())
            .expect("the trivial subgroup is always a π-group")
    }

    pub fn o_pi(&self, pi: &PrimeSet) -> Group {
        self.subgroup(&self.o_pi_set(pi))
    }

    /// π′ relative to π(G).
    pub fn complement(&self, pi: &PrimeSet) -> PrimeSet {
        pi.complement_in(&self.group().prime_set())
    }

    /// Largest normal `M ⊇ base` with `|M : base|` a π-number: the preimage of
    /// `O_π(G/base)`.
    fn relative_o_pi(&self, base: &NormalSubgroup, pi: &PrimeSet) -> NormalSubgroup {
        self.normal_lattice()
            .iter()
            .filter(|m| {
                m.classes.is_superset(&base.classes) && pi.is_pi_number(m.order / base.order)
            })
            .max_by_key(|m| m.order)
            .cloned()
            .expect("base itself qualifies")
    }

    /// π-separability by alternating `O_π` and `O_π′` steps, tracked inside the
    /// normal lattice of `G` (normal subgroups of `G/N` are those of `G` containing `N`).
    pub fn separability(&self, pi: &PrimeSet) -> SeparabilityReport {
        let pi_prime = self.complement(pi);
        let mut current = self.normal_lattice()[0].clone();
        let mut series = Vec::new();
        let separable = loop {
            if current.order == self.order() {
                break true;
            }
            let step = self.relative_o_pi(&current, pi);
            if step.order > current.order {
                series.push(SeriesStep {
                    factor_order: step.order / current.order,
                    kind: StepKind::OPi,
                });
                current = step;
                continue;
            }
            let step = self.relative_o_pi(&current, &pi_prime);
            if step.order > current.order {
                series.push(SeriesStep {
                    factor_order: step.order / current.order,
                    kind: StepKind::OPiPrime,
                });
                current = step;
                continue;
            }
            break false;
        };
        SeparabilityReport {
            pi: pi.clone(),
            separable,
            series,
        }
    }

    pub fn is_pi_separable(&self, pi: &PrimeSet) -> bool {
        self.separability(pi).separable
    }

    pub fn is_p_separable(&self, p: u64) -> bool {
        self.is_pi_separable(&PrimeSet::single(p))
    }

    /// A normal series `1 ⊴ A ⊴ B ⊴ G` with `A`, `G/B` π′-groups and `B/A` a
    /// π-group, if one exists. Returns `(|A|, |B|)`.
    pub fn pi_length_at_most_one(&self, pi: &PrimeSet) -> Option<(u64, u64)> {
        let lattice = self.normal_lattice();
        let pi_prime = self.complement(pi);
        let n = self.order();
        for a in lattice.iter().filter(|a| pi_prime.is_pi_number(a.order)) {
            if let Some(b) = lattice.iter().find(|b| {
                b.classes.is_superset(&a.classes)
                    && pi.is_pi_number(b.order / a.order)
                    && pi_prime.is_pi_number(n / b.order)
            }) {
                return Some((a.order, b.order));
            }
        }
        None
    }

    /// Whether the π-elements form a subgroup, returned as a class set if so.
    pub fn closed_pi_elements(&self, pi: &PrimeSet) -> Option<ClassSet> {
        let set = self.table.set_of(self.table.pi_element_classes(pi));
        self.table.is_closed(&set).then_some(set)
    }

    /// Two π-elements whose product is not a π-element, when the π-elements are not closed.
    pub fn pi_closure_witness(&self, pi: &PrimeSet) -> Option<Counterexample> {
        let t = &self.table;
        let classes = t.pi_element_classes(pi);
        for &i in &classes {
            let row = t.product_row(i);
            for &j in &classes {
                if let Some(&k) = row[j]
                    .iter()
                    .find(|&&k| !pi.is_pi_number(t.class(k as usize).element_order))
                {
                    let g = t.group();
                    let x = t.class(i).rep.clone();
                    let target = k as usize;
                    let y = t
                        .class(j)
                        .members(g)
                        .find(|y| t.class_of(&x.mul(y)) == Some(target))
                        .expect("product row entries are realised")
                        .clone();
                    return Some(Counterexample::NotClosed {
                        pi: pi.iter().collect(),
                        x,
                        y,
                    });
                }
            }
        }
        None
    }

    /// p-nilpotency: the p-regular elements are closed under multiplication.
    pub fn p_nilpotency(&self, p: u64) -> PNilpotency {
        let p_prime = self.complement(&PrimeSet::single(p));
        match self.closed_pi_elements(&p_prime) {
            Some(set) => PNilpotency {
                p_nilpotent: true,
                complement: Some(self.subgroup(&set)),
                p_regular_count: self.table.set_order(&set),
            },
            None => PNilpotency {
                p_nilpotent: false,
                complement: None,
                p_regular_count: self
                    .table
                    .set_order(&self.table.set_of(self.table.p_regular_classes(p))),
            },
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StepKind {
    OPi,
    OPiPrime,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeriesStep {
    /// Order of the factor `O_π(G/N)` (or `O_π′`) added by this step.
    pub factor_order: u64,
    pub kind: StepKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeparabilityReport {
    pub pi: PrimeSet,
    pub separable: bool,
    pub series: Vec<SeriesStep>,
}

#[derive(Clone, Debug)]
pub struct PNilpotency {
    pub p_nilpotent: bool,
    /// The normal p-complement when it exists.
    pub complement: Option<Group>,
    pub p_regular_count: u64,
}

pub fn normal_subgroups(a: &Analysis) -> Vec<Group> {
    a.normal_lattice()
        .iter()
        .map(|n| a.subgroup(&n.classes))
        .collect()
}

pub fn o_pi(a: &Analysis, pi: &PrimeSet) -> Group {
    a.o_pi(pi)
}

pub fn is_pi_separable(a: &Analysis, pi: &PrimeSet) -> SeparabilityReport {
    a.separability(pi)
}

pub fn is_p_nilpotent(a: &Analysis, p: u64) -> PNilpotency {
    a.p_nilpotency(p)
}

/// Every `x` in a Hall π-subgroup whose class size is a π-number lies in `O_π(G)`.
pub fn wielandt_check(a: &Analysis, name: &str, pi: &PrimeSet, budget: u64) -> Verdict {
    let mut v = Verdict::new(CheckId::Wielandt, name, None);
    v.witness("pi", pi);
    let hall = match hall_pi_subgroup(a, pi, budget) {
        HallOutcome::Found(h) => h,
        HallOutcome::BudgetExhausted { nodes } => {
            v.witness("hall_nodes", nodes);
            return v.inconclusive("Hall subgroup search exhausted its budget");
        }
        HallOutcome::DoesNotExist => {
            return v.not_applicable("no Hall π-subgroup exists");
        }
    };
    v.hypothesis = Status::Holds;
    v.conclusion = Status::Holds;
    let o = a.o_pi_set(pi);
    let t = a.table();
    let mut qualifying = 0u64;
    for x in hall.elements() {
        let c = t.class_of(x).expect("Hall subgroup lies in G");
        if !pi.is_pi_number(t.class(c).size) {
            continue;
        }
        qualifying += 1;
        if !o.contains(c) {
            v.fail(Counterexample::Clause {
                clause: "wielandt".into(),
                detail: serde_json::json!({ "element": x, "class_size": t.class(c).size }),
            });
            break;
        }
    }
    v.witness("hall_order", hall.order());
    v.witness("o_pi_order", a.table().set_order(&o));
    v.witness("qualifying_elements", qualifying);
    v
}
