//! Structured results of a single executable check.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::permgroup::Permutation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CheckId {
    #[serde(rename = "THM-A")]
    ThmA,
    #[serde(rename = "COR-DIAM")]
    CorDiam,
    #[serde(rename = "THM-B")]
    ThmB,
    #[serde(rename = "DISC-ORD")]
    DiscOrd,
    #[serde(rename = "DISC-PREG")]
    DiscPreg,
    #[serde(rename = "S-SUBGROUP")]
    SSubgroup,
    #[serde(rename = "FMS-EQ")]
    FmsEq,
    #[serde(rename = "WIELANDT")]
    Wielandt,
    #[serde(rename = "CONJ-C")]
    ConjC,
}

impl CheckId {
    /// Checks of proved statements, in suite order.
    pub const THEOREMS: [CheckId; 7] = [
        CheckId::ThmA,
        CheckId::CorDiam,
        CheckId::ThmB,
        CheckId::DiscOrd,
        CheckId::DiscPreg,
        CheckId::SSubgroup,
        CheckId::FmsEq,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckId::ThmA => "THM-A",
            CheckId::CorDiam => "COR-DIAM",
            CheckId::ThmB => "THM-B",
            CheckId::DiscOrd => "DISC-ORD",
            CheckId::DiscPreg => "DISC-PREG",
            CheckId::SSubgroup => "S-SUBGROUP",
            CheckId::FmsEq => "FMS-EQ",
            CheckId::Wielandt => "WIELANDT",
            CheckId::ConjC => "CONJ-C",
        }
    }

    /// Whether the check concerns an open statement rather than a proved one.
    pub fn is_conjecture(self) -> bool {
        self == CheckId::ConjC
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Accepts the canonical ids and loose spellings such as `thmB` or `disc_preg`.
impl FromStr for CheckId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key: String = s
            .chars()
            .filter(|c| c.is_ascii_alphanumeric())
            .map(|c| c.to_ascii_lowercase())
            .collect();
        Ok(match key.as_str() {
            "thma" => CheckId::ThmA,
            "cordiam" => CheckId::CorDiam,
            "thmb" => CheckId::ThmB,
            "discord" => CheckId::DiscOrd,
            "discpreg" => CheckId::DiscPreg,
            "ssubgroup" => CheckId::SSubgroup,
            "fms" | "fmseq" => CheckId::FmsEq,
            "wielandt" => CheckId::Wielandt,
            "conjc" => CheckId::ConjC,
            _ => return Err(format!("unknown check id {s:?}")),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Holds,
    Fails,
    Inconclusive,
    NotApplicable,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Holds => "holds",
            Status::Fails => "fails",
            Status::Inconclusive => "inconclusive",
            Status::NotApplicable => "not-applicable",
        })
    }
}

/// Machine-readable evidence attached to every failing conclusion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Counterexample {
    /// A pair of vertices of the gcd graph on `sizes` at distance above `bound`
    /// (`distance = None` means different components).
    Distance {
        sizes: Vec<u64>,
        from: usize,
        to: usize,
        distance: Option<u32>,
        bound: u32,
    },
    /// Two elements that fail to commute inside a subgroup claimed abelian.
    NonCommuting { x: Permutation, y: Permutation },
    /// Two elements whose orders are π-numbers with a product whose order is not.
    NotClosed {
        pi: Vec<u64>,
        x: Permutation,
        y: Permutation,
    },
    /// Any other failed clause; revalidated by re-running the named clause.
    Clause { clause: String, detail: Value },
}

impl Counterexample {
    /// Re-derives the failure from the witness data alone, where the variant
    /// carries enough data to do so. `Clause` witnesses return `None`.
    pub fn revalidate(&self) -> Option<bool> {
        match self {
            Counterexample::Distance {
                sizes,
                from,
                to,
                distance,
                bound,
            } => {
                let d = crate::cdgraph::gcd_distances(sizes)
                    .get(*from)
                    .and_then(|row| row.get(*to))
                    .copied()?;
                let exceeds = match d {
                    None => true,
                    Some(d) => d > *bound,
                };
                Some(d == *distance && exceeds)
            }
            Counterexample::NonCommuting { x, y } => Some(!x.commutes_with(y)),
            Counterexample::NotClosed { pi, x, y } => {
                let pi: crate::PrimeSet = pi.iter().copied().collect();
                Some(
                    pi.is_pi_number(x.order())
                        && pi.is_pi_number(y.order())
                        && !pi.is_pi_number(x.mul(y).order()),
                )
            }
            Counterexample::Clause { .. } => None,
        }
    }
}

/// One check result. Field names are part of the JSON output contract.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub check_id: CheckId,
    pub group: String,
    pub prime: Option<u64>,
    pub hypothesis: Status,
    pub conclusion: Status,
    pub witnesses: BTreeMap<String, Value>,
    pub elapsed_ms: u64,
}

impl Verdict {
    pub fn new(check_id: CheckId, group: &str, prime: Option<u64>) -> Self {
        Verdict {
            check_id,
            group: group.to_string(),
            prime,
            hypothesis: Status::Inconclusive,
            conclusion: Status::Inconclusive,
            witnesses: BTreeMap::new(),
            elapsed_ms: 0,
        }
    }

    pub fn witness(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.witnesses.insert(
            key.to_string(),
            serde_json::to_value(value).expect("witness values serialize"),
        );
        self
    }

    /// Hypothesis fails; the conclusion does not apply.
    pub fn not_applicable(mut self, reason: &str) -> Self {
        self.hypothesis = Status::Fails;
        self.conclusion = Status::NotApplicable;
        self.witness("reason", reason);
        self
    }

    pub fn inconclusive(mut self, reason: &str) -> Self {
        self.conclusion = Status::Inconclusive;
        self.witness("inconclusive_reason", reason);
        self
    }

    /// Marks the conclusion failed with its counterexample.
    pub fn fail(&mut self, counterexample: Counterexample) {
        self.conclusion = Status::Fails;
        let list = self
            .witnesses
            .entry("counterexamples".to_string())
            .or_insert_with(|| Value::Array(Vec::new()));
        if let Value::Array(items) = list {
            items.push(serde_json::to_value(counterexample).expect("counterexamples serialize"));
        }
    }

    pub fn counterexamples(&self) -> Vec<Counterexample> {
        match self.witnesses.get("counterexamples") {
            Some(Value::Array(items)) => items
                .iter()
                .filter_map(|v| serde_json::from_value(v.clone()).ok())
                .collect(),
            _ => Vec::new(),
        }
    }

    pub fn is_failure(&self) -> bool {
        self.conclusion == Status::Fails
    }

    /// Same verdict without timing, for determinism comparisons.
    pub fn without_timing(&self) -> Verdict {
        Verdict {
            elapsed_ms: 0,
            ..self.clone()
        }
    }
}
