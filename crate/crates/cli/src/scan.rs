//! Corpus scans: one JSONL record per (group, prime dividing the order).

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use cdgraph::cdgraph::distance_pairs;
use cdgraph::structure::DEFAULT_BUDGET;
use cdgraph::verifier::{run_suite, GroupContext};
use cdgraph::{build, builtin_corpus, CheckId, GroupSpec, Mode, Status};
use clap::Args;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::{EXIT_CLEAN, EXIT_FAILS};

#[derive(Args, Debug)]
pub struct ScanArgs {
    /// `builtin`, or a JSONL file of {"name": ..., "spec": {...}} lines.
    #[arg(long, default_value = "builtin")]
    pub corpus: String,
    /// Output file; records go to stdout when absent.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Worker threads (0 = one per core).
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
    /// Node budget for Hall subgroup searches.
    #[arg(long, env = "CDGRAPH_BUDGET")]
    pub budget: Option<u64>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CorpusEntry {
    pub name: String,
    pub spec: GroupSpec,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ScanRecord {
    pub group: String,
    pub spec: GroupSpec,
    pub order: u64,
    pub prime: u64,
    pub vertices: usize,
    /// Class sizes of the p-regular graph, ascending.
    pub sizes: Vec<u64>,
    pub components: usize,
    /// Number, `"inf"`, or null for the empty graph.
    pub diameter: serde_json::Value,
    /// Vertex pairs `[u, v]`, `u < v`, at distance exactly 3.
    pub diameter3_pairs: Vec<[usize; 2]>,
    /// Distinct `[|u|, |v|]` size pairs of `diameter3_pairs`, each ascending.
    pub diameter3_sizes: Vec<[u64; 2]>,
    pub disconnected: bool,
    /// Conclusion status per check id; DISC-ORD is the group-level check.
    pub verdicts: BTreeMap<String, Status>,
}

impl ScanRecord {
    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("records serialize")
    }

    fn fails(&self, conjecture: bool) -> Vec<&str> {
        self.verdicts
            .iter()
            .filter(|(id, s)| {
                **s == Status::Fails && (id.as_str() == CheckId::ConjC.as_str()) == conjecture
            })
            .map(|(id, _)| id.as_str())
            .collect()
    }

    pub fn theorem_fails(&self) -> Vec<&str> {
        self.fails(false)
    }

    pub fn conjecture_fails(&self) -> bool {
        !self.fails(true).is_empty()
    }
}

fn all_checks() -> Vec<CheckId> {
    CheckId::THEOREMS
        .into_iter()
        .chain([CheckId::Wielandt, CheckId::ConjC])
        .collect()
}

/// Records for one group, ascending by prime.
pub fn scan_group(name: &str, spec: &GroupSpec, budget: u64) -> Result<Vec<ScanRecord>> {
    let group = build(spec).with_context(|| format!("building {name}"))?;
    let ctx = GroupContext::new(name, group).with_budget(budget);
    let report = run_suite(&ctx, &[], &all_checks());
    let verdicts: Vec<_> = report.theorems.iter().chain(&report.conjecture).collect();
    let mut out = Vec::new();
    for p in ctx.group().prime_set().iter() {
        let g = ctx.graph(Mode::PRegular(p));
        let mut sizes = g.sizes();
        sizes.sort_unstable();
        let pairs = distance_pairs(&g, 3);
        let mut size_pairs: Vec<[u64; 2]> = pairs
            .iter()
            .map(|&(u, v)| {
                let (a, b) = (g.vertices[u].size, g.vertices[v].size);
                [a.min(b), a.max(b)]
            })
            .collect();
        size_pairs.sort_unstable();
        size_pairs.dedup();
        out.push(ScanRecord {
            group: name.to_string(),
            spec: spec.clone(),
            order: ctx.group().order(),
            prime: p,
            vertices: g.len(),
            sizes,
            components: g.components.len(),
            diameter: serde_json::to_value(g.diameter())?,
            diameter3_pairs: pairs.into_iter().map(|(u, v)| [u, v]).collect(),
            diameter3_sizes: size_pairs,
            disconnected: g.is_disconnected(),
            verdicts: verdicts
                .iter()
                .filter(|v| v.prime.is_none() || v.prime == Some(p))
                .map(|v| (v.check_id.as_str().to_string(), v.conclusion))
                .collect(),
        });
    }
    Ok(out)
}

/// Scans `entries` on `jobs` workers; the result is sorted by (group, prime)
/// and does not depend on `jobs`.
pub fn scan(entries: &[CorpusEntry], jobs: usize, budget: u64) -> Result<Vec<ScanRecord>> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build()?;
    let per_group: Vec<Result<Vec<ScanRecord>>> = pool.install(|| {
        entries
            .par_iter()
            .map(|e| scan_group(&e.name, &e.spec, budget))
            .collect()
    });
    let mut records = Vec::new();
    for r in per_group {
        records.extend(r?);
    }
    records.sort_by(|a, b| (&a.group, a.prime).cmp(&(&b.group, b.prime)));
    Ok(records)
}

/// Whether a record matches a fresh computation from its own spec.
pub fn revalidate_record(record: &ScanRecord, budget: u64) -> Result<bool> {
    let fresh = scan_group(&record.group, &record.spec, budget)?;
    Ok(fresh.iter().any(|r| r == record))
}

pub fn builtin_entries() -> Vec<CorpusEntry> {
    builtin_corpus()
        .into_iter()
        .map(|(name, spec)| CorpusEntry { name, spec })
        .collect()
}

/// Reads a JSONL corpus; blank lines and `#` comments are skipped.
pub fn read_corpus(path: &Path) -> Result<Vec<CorpusEntry>> {
    let text =
        fs::read_to_string(path).with_context(|| format!("reading corpus {}", path.display()))?;
    let mut entries = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let entry: CorpusEntry =
            serde_json::from_str(line).with_context(|| format!("{}:{}", path.display(), i + 1))?;
        entry
            .spec
            .validate()
            .with_context(|| format!("{}:{}", path.display(), i + 1))?;
        entries.push(entry);
    }
    Ok(entries)
}

pub fn to_jsonl(records: &[ScanRecord]) -> String {
    records.iter().map(|r| r.to_line() + "\n").collect()
}

/// Writes through a temporary file in the target directory, so a failed
/// write leaves no partial output behind.
fn write_atomically(path: &Path, contents: &str) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)
        .with_context(|| format!("creating file in {}", dir.display()))?;
    tmp.write_all(contents.as_bytes())?;
    tmp.persist(path)
        .with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

pub fn summary(records: &[ScanRecord]) -> String {
    let mut s = String::new();
    let groups: std::collections::BTreeSet<&str> =
        records.iter().map(|r| r.group.as_str()).collect();
    s += &format!("{} records ({} groups)\n", records.len(), groups.len());
    let d3: Vec<_> = records
        .iter()
        .filter(|r| !r.diameter3_pairs.is_empty())
        .collect();
    s += &format!("diameter-3 instances: {}\n", d3.len());
    for r in d3 {
        let sizes: Vec<String> = r
            .diameter3_sizes
            .iter()
            .map(|[a, b]| format!("({a},{b})"))
            .collect();
        s += &format!("  {} p={} sizes {}\n", r.group, r.prime, sizes.join(" "));
    }
    let disc: Vec<_> = records.iter().filter(|r| r.disconnected).collect();
    s += &format!("disconnected instances: {}\n", disc.len());
    for r in disc {
        s += &format!("  {} p={} sizes {:?}\n", r.group, r.prime, r.sizes);
    }
    let fails: Vec<_> = records
        .iter()
        .filter(|r| !r.theorem_fails().is_empty())
        .collect();
    s += &format!("theorem fails: {}\n", fails.len());
    for r in fails {
        s += &format!(
            "  {} p={} {}\n",
            r.group,
            r.prime,
            r.theorem_fails().join(",")
        );
    }
    let conj: Vec<_> = records.iter().filter(|r| r.conjecture_fails()).collect();
    s += &format!("CONJ-C fails: {}\n", conj.len());
    for r in conj {
        s += &format!("  POTENTIAL COUNTEREXAMPLE {} p={}\n", r.group, r.prime);
    }
    s
}

pub fn cmd_scan(a: &ScanArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let entries = if a.corpus == "builtin" {
        builtin_entries()
    } else {
        read_corpus(Path::new(&a.corpus))?
    };
    let records = scan(&entries, a.jobs, a.budget.unwrap_or(DEFAULT_BUDGET))?;
    let jsonl = to_jsonl(&records);
    let summary = summary(&records);
    match &a.out {
        Some(path) => {
            write_atomically(path, &jsonl)?;
            out.write_all(summary.as_bytes())?;
        }
        None => {
            out.write_all(jsonl.as_bytes())?;
            err.write_all(summary.as_bytes())?;
        }
    }
    let failing = records.iter().any(|r| !r.theorem_fails().is_empty());
    Ok(if failing { EXIT_FAILS } else { EXIT_CLEAN })
}
