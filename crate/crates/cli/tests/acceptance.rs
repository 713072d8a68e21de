//! Acceptance criteria 1-11. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use cdgraph::cdgraph::{distance_pairs, maximal_classes, s_subgroup};
use cdgraph::structure::{quasi_frobenius_analysis, DEFAULT_BUDGET};
use cdgraph::verifier::{
    check_s_subgroup, check_thm_b, fms_sweep, lemmas, run_suite, GroupContext,
};
use cdgraph::{build, builtin_corpus, CheckId, Diameter, GroupSpec, Mode, Status, Verdict};
use serde_json::{json, Value};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn ctx(name: &str, spec: &GroupSpec) -> GroupContext {
    GroupContext::new(name, build(spec).expect("corpus specs build"))
}

/// Distinct `(min, max)` size pairs at distance exactly 3.
fn distance3_sizes(ctx: &GroupContext, p: u64) -> BTreeSet<(u64, u64)> {
    let g = ctx.graph(Mode::PRegular(p));
    distance_pairs(&g, 3)
        .into_iter()
        .map(|(u, v)| {
            let (a, b) = (g.vertices[u].size, g.vertices[v].size);
            (a.min(b), a.max(b))
        })
        .collect()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let c = ctx("ex31a", &GroupSpec::example_31a());
    let pairs = distance3_sizes(&c, 2);
    let elapsed = start.elapsed();
    let ok = c.group().order() == 5250
        && pairs == BTreeSet::from([(6, 7)])
        && pairs.iter().all(|(small, _)| small % 2 == 0)
        && elapsed < Duration::from_secs(10);
    outcome(
        ok,
        format!("ex31a p=2 distance-3 size pairs {pairs:?} in {elapsed:.2?}"),
    )
}

fn criterion_2() -> Outcome {
    let c = ctx("ex31a", &GroupSpec::example_31a());
    let v = check_thm_b(&c, 2);
    let w = &v.witnesses;
    let per_pi = w["per_pi"].as_array().cloned().unwrap_or_default();
    let qf_ok = !per_pi.is_empty()
        && per_pi.iter().all(|e| {
            let q = &e["quasi_frobenius"];
            q["is_quasi_frobenius"] == true
                && q["kernel_abelian"] == true
                && q["complement_abelian"] == true
                && e["kernel_order"] == 7
                && e["complement_order"] == 3
                && e["z_h_order"] == 5
                && e["center_matches"] == true
                && e["sylow_centralizes_complement"] == true
        });
    let ok = v.hypothesis == Status::Holds
        && v.conclusion == Status::Holds
        && w["p_nilpotent"] == true
        && w["h_order"] == 2625
        && qf_ok;
    outcome(
        ok,
        format!(
            "THM-B {} / {}: h_order {}, per_pi {}",
            v.hypothesis,
            v.conclusion,
            w.get("h_order").unwrap_or(&Value::Null),
            Value::from(per_pi)
        ),
    )
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let c = ctx("ex31b", &GroupSpec::example_31b());
    let pairs = distance3_sizes(&c, 3);
    let v = check_thm_b(&c, 3);
    let nilpotent = c.analysis.p_nilpotency(3).p_nilpotent;
    let elapsed = start.elapsed();
    let ok = pairs == BTreeSet::from([(2, 21)])
        && v.hypothesis == Status::Fails
        && !nilpotent
        && elapsed < Duration::from_secs(10);
    outcome(
        ok,
        format!(
            "ex31b p=3 distance-3 size pairs {pairs:?}, THM-B hypothesis {}, 3-nilpotent {nilpotent}, {elapsed:.2?}",
            v.hypothesis
        ),
    )
}

/// Everything the corpus-wide criteria need, gathered in one pass.
#[derive(Default)]
struct Sweep {
    elapsed: Duration,
    groups: usize,
    thm_a_instances: usize,
    thm_a_violations: Vec<String>,
    diam_instances: usize,
    diam_violations: Vec<String>,
    disc_violations: Vec<String>,
    disconnected_groups: usize,
    fms_verdicts: usize,
    fms_violations: Vec<String>,
    fms_inconclusive: usize,
    lemma_cases: u64,
    lemma_violations: Vec<String>,
    conj_verdicts: usize,
    conj_fails: Vec<String>,
    other_fails: Vec<String>,
}

fn failed(v: &Verdict) -> String {
    format!("{} {} p={:?}", v.group, v.check_id, v.prime)
}

fn sweep() -> Sweep {
    let start = Instant::now();
    let mut s = Sweep::default();
    let mut checks = CheckId::THEOREMS.to_vec();
    checks.push(CheckId::ConjC);
    for (name, spec) in builtin_corpus() {
        let c = ctx(&name, &spec);
        s.groups += 1;
        let report = run_suite(&c, &[], &checks);
        let primes: Vec<u64> = c.group().prime_set().iter().collect();

        for &p in &primes {
            if !c.analysis.is_p_separable(p) {
                continue;
            }
            let g = c.graph(Mode::PRegular(p));
            if g.is_empty() || !g.is_connected() {
                continue;
            }
            s.thm_a_instances += 1;
            for b0 in maximal_classes(&g).expect("nonempty") {
                let far = g.dist[b0]
                    .iter()
                    .map(|d| d.expect("connected"))
                    .max()
                    .unwrap_or(0);
                if far > 2 {
                    s.thm_a_violations
                        .push(format!("{name} p={p} b0={b0} distance {far}"));
                }
            }
        }
        for &p in &primes {
            let g = c.graph(Mode::PRegular(p));
            if g.is_empty() || !g.is_connected() {
                continue;
            }
            s.diam_instances += 1;
            match g.diameter() {
                Diameter::Finite(d) if d <= 3 => {}
                d => s.diam_violations.push(format!("{name} p={p} diameter {d}")),
            }
        }

        let ordinary = c.graph(Mode::Ordinary);
        if !ordinary.is_empty() {
            let qf =
                quasi_frobenius_analysis(&c.analysis, DEFAULT_BUDGET).map(|f| f.is_quasi_frobenius);
            let sizes: BTreeSet<u64> = ordinary.sizes().into_iter().collect();
            match qf {
                Ok(q) if q != ordinary.is_disconnected() => s.disc_violations.push(format!(
                    "{name}: disconnected {} vs quasi-Frobenius {q}",
                    ordinary.is_disconnected()
                )),
                Err(e) => s.disc_violations.push(format!("{name}: {e}")),
                _ => {}
            }
            if ordinary.is_disconnected() {
                s.disconnected_groups += 1;
                if sizes.len() != 2 {
                    s.disc_violations.push(format!("{name}: sizes {sizes:?}"));
                }
            }
        }

        for v in &report.theorems {
            let sink = match v.check_id {
                CheckId::ThmA => &mut s.thm_a_violations,
                CheckId::CorDiam => &mut s.diam_violations,
                CheckId::DiscOrd => &mut s.disc_violations,
                CheckId::FmsEq => &mut s.fms_violations,
                _ => &mut s.other_fails,
            };
            if v.is_failure() {
                sink.push(failed(v));
            }
        }
        s.conj_verdicts += report.conjecture.len();
        s.conj_fails.extend(
            report
                .conjecture
                .iter()
                .filter(|v| v.is_failure())
                .map(failed),
        );

        if primes.len() <= 4 {
            for v in fms_sweep(&c) {
                if v.hypothesis == Status::Fails {
                    continue;
                }
                s.fms_verdicts += 1;
                match v.conclusion {
                    Status::Fails => {
                        s.fms_violations
                            .push(format!("{} pi={}", failed(&v), v.witnesses["pi"]))
                    }
                    Status::Inconclusive => s.fms_inconclusive += 1,
                    _ => {}
                }
            }
        }

        for r in lemmas::all(&c) {
            s.lemma_cases += r.cases;
            s.lemma_violations.extend(
                r.violations
                    .iter()
                    .map(|x| format!("{} {}: {x}", r.group, r.lemma)),
            );
        }
    }
    s.elapsed = start.elapsed();
    s
}

fn first(v: &[String]) -> String {
    v.iter().take(3).cloned().collect::<Vec<_>>().join("; ")
}

fn criterion_4(s: &Sweep) -> Outcome {
    let ok = s.thm_a_violations.is_empty() && s.elapsed < Duration::from_secs(300);
    outcome(
        ok,
        format!(
            "{} connected p-separable instances over {} groups, {} violations {}; sweep {:.2?}",
            s.thm_a_instances,
            s.groups,
            s.thm_a_violations.len(),
            first(&s.thm_a_violations),
            s.elapsed
        ),
    )
}

fn criterion_5(s: &Sweep) -> Outcome {
    outcome(
        s.diam_violations.is_empty(),
        format!(
            "{} connected instances, {} violations {}",
            s.diam_instances,
            s.diam_violations.len(),
            first(&s.diam_violations)
        ),
    )
}

fn criterion_6(s: &Sweep) -> Outcome {
    let sizes = |name: &str, spec: GroupSpec| -> BTreeSet<u64> {
        ctx(name, &spec)
            .graph(Mode::Ordinary)
            .sizes()
            .into_iter()
            .collect()
    };
    let s3 = sizes("S3", GroupSpec::Symmetric { n: 3 });
    let f42 = sizes("F7_6", GroupSpec::FrobeniusMetacyclic { q: 7, d: 6 });
    let ok = s.disc_violations.is_empty()
        && s3 == BTreeSet::from([2, 3])
        && f42 == BTreeSet::from([6, 7]);
    outcome(
        ok,
        format!(
            "{} disconnected ordinary graphs, S3 sizes {s3:?}, F42 sizes {f42:?}, {} violations {}",
            s.disconnected_groups,
            s.disc_violations.len(),
            first(&s.disc_violations)
        ),
    )
}

fn criterion_7(s: &Sweep) -> Outcome {
    outcome(
        s.fms_violations.is_empty(),
        format!(
            "{} separable (G, pi) cases, {} violations {}, {} inconclusive",
            s.fms_verdicts,
            s.fms_violations.len(),
            first(&s.fms_violations),
            s.fms_inconclusive
        ),
    )
}

fn criterion_8(s: &Sweep) -> Outcome {
    outcome(
        s.lemma_violations.is_empty(),
        format!(
            "{} cases, {} violations {}",
            s.lemma_cases,
            s.lemma_violations.len(),
            first(&s.lemma_violations)
        ),
    )
}

fn criterion_9() -> Outcome {
    let c = ctx("ex31a", &GroupSpec::example_31a());
    let g = c.graph(Mode::PRegular(2));
    let t = c.table();
    let z_odd: Vec<_> = c
        .group()
        .elements()
        .filter(|x| x.order() % 2 == 1 && c.group().elements().all(|y| x.commutes_with(y)))
        .cloned()
        .collect();
    let mut ok = z_odd.len() == 5;
    let mut orders = BTreeSet::new();
    for b0 in maximal_classes(&g).expect("nonempty") {
        let s = s_subgroup(t, &g, b0);
        orders.insert(s.order());
        let quotient_primes = cdgraph::PrimeSet::of(s.order() / z_odd.len() as u64);
        ok &= s.order() == 35
            && s.is_abelian()
            && c.group().is_normal_subgroup(&s)
            && s.order() % 2 == 1
            && z_odd.iter().all(|z| s.contains(z))
            && quotient_primes == cdgraph::PrimeSet::single(7)
            && quotient_primes.is_subset(&g.vertices[b0].primes);
    }
    let v = check_s_subgroup(&c, 2);
    ok &= v.conclusion == Status::Holds
        && v.witnesses["per_b0"].as_array().is_some_and(|rs| {
            rs.iter()
                .all(|r| r["s_order"] == 35 && r["pi_s_mod_z"] == json!([7]))
        });
    outcome(
        ok,
        format!(
            "S orders {orders:?}, |Z(G)_2'| = {}, S-SUBGROUP {}",
            z_odd.len(),
            v.conclusion
        ),
    )
}

fn criterion_10() -> Outcome {
    let dir = tempfile::tempdir().expect("temp dir");
    let run = |jobs: &str| -> Option<Vec<u8>> {
        let out = dir.path().join(format!("scan-{jobs}.jsonl"));
        let status = Command::new(env!("CARGO_BIN_EXE_cdgraph"))
            .args(["scan", "--corpus", "builtin", "--jobs", jobs, "--out"])
            .arg(&out)
            .output()
            .ok()?
            .status;
        status.success().then(|| std::fs::read(&out).ok()).flatten()
    };
    match (run("1"), run("4")) {
        (Some(a), Some(b)) => outcome(
            a == b && !a.is_empty(),
            format!(
                "--jobs 1 and --jobs 4: {} and {} bytes, identical {}",
                a.len(),
                b.len(),
                a == b
            ),
        ),
        _ => outcome(false, "scan did not complete"),
    }
}

fn criterion_11(s: &Sweep) -> Outcome {
    outcome(
        s.conj_fails.is_empty(),
        format!(
            "{} CONJ-C verdicts, {} fails {}",
            s.conj_verdicts,
            s.conj_fails.len(),
            first(&s.conj_fails)
        ),
    )
}

fn main() {
    let mut results: Vec<(u32, Outcome)> =
        vec![(1, criterion_1()), (2, criterion_2()), (3, criterion_3())];
    let s = sweep();
    results.push((4, criterion_4(&s)));
    results.push((5, criterion_5(&s)));
    results.push((6, criterion_6(&s)));
    results.push((7, criterion_7(&s)));
    results.push((8, criterion_8(&s)));
    results.push((9, criterion_9()));
    results.push((10, criterion_10()));
    results.push((11, criterion_11(&s)));
    let mut failures = 0;
    for (n, o) in &results {
        println!(
            "{} criterion {n}: {}",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
        failures += usize::from(!o.pass);
    }
    println!(
        "INFO THM-B, DISC-PREG and S-SUBGROUP over the corpus: {} fails {}",
        s.other_fails.len(),
        first(&s.other_fails)
    );
    println!(
        "acceptance: {} passed, {failures} failed",
        results.len() - failures
    );
    if failures > 0 || !s.other_fails.is_empty() {
        std::process::exit(1);
    }
}
