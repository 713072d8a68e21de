//! Executable checks producing [`Verdict`]s, and the suite runner.
//!
//! Every failing conclusion carries a [`Counterexample`]. Distance,
//! commutation and closure witnesses revalidate from their own data; clause
//! witnesses revalidate by re-running the check ([`revalidate`]).

pub mod lemmas;

use std::collections::BTreeSet;
use std::sync::{Arc, Mutex};
use std::time::Instant;

use rustc_hash::FxHashMap;
use serde::Serialize;
use serde_json::json;

use crate::cdgraph::{
    build_graph, distance_pairs, maximal_classes, s_subgroup_classes, ClassGraph, Mode,
};
use crate::classes::ClassTable;
use crate::permgroup::{Group, Permutation, PrimeSet};
use crate::structure::{
    hall_pi_subgroup, quasi_frobenius_analysis, sylow_conjugates, sylow_subgroup, wielandt_check,
    Analysis, FrobeniusAnalysis, HallOutcome, StructureError, DEFAULT_BUDGET,
};
use crate::verdict::{CheckId, Counterexample, Status, Verdict};

/// Counterexamples recorded per verdict before further ones are only counted.
const MAX_COUNTEREXAMPLES: usize = 16;

/// A named group with its cached analysis and graphs.
pub struct GroupContext {
    pub name: String,
    pub analysis: Analysis,
    pub budget: u64,
    graphs: Mutex<FxHashMap<Mode, Arc<ClassGraph>>>,
}

impl GroupContext {
    pub fn new(name: &str, group: Group) -> Self {
        Self::from_table(name, ClassTable::new(Arc::new(group)))
    }

    pub fn from_table(name: &str, table: ClassTable) -> Self {
        GroupContext {
            name: name.to_string(),
            analysis: Analysis::from_table(table),
            budget: DEFAULT_BUDGET,
            graphs: Mutex::new(FxHashMap::default()),
        }
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn group(&self) -> &Arc<Group> {
        self.analysis.group()
    }

    pub fn table(&self) -> &ClassTable {
        self.analysis.table()
    }

    pub fn graph(&self, mode: Mode) -> Arc<ClassGraph> {
        if let Some(g) = self.graphs.lock().expect("graph cache").get(&mode) {
            return g.clone();
        }
        let g = Arc::new(build_graph(self.table(), mode));
        self.graphs
            .lock()
            .expect("graph cache")
            .entry(mode)
            .or_insert(g)
            .clone()
    }

    fn verdict(&self, id: CheckId, prime: Option<u64>) -> Verdict {
        Verdict::new(id, &self.name, prime)
    }
}

fn timed(f: impl FnOnce() -> Verdict) -> Verdict {
    let start = Instant::now();
    let mut v = f();
    v.elapsed_ms = start.elapsed().as_millis() as u64;
    v
}

fn fail_capped(v: &mut Verdict, count: &mut u64, c: Counterexample) {
    *count += 1;
    if (*count as usize) <= MAX_COUNTEREXAMPLES {
        v.fail(c);
    }
}

fn clause(name: &str, detail: serde_json::Value) -> Counterexample {
    Counterexample::Clause {
        clause: name.to_string(),
        detail,
    }
}

/// Two non-commuting elements among the generators of `h`, if any.
fn non_commuting(h: &Group) -> Option<Counterexample> {
    let gens = h.generators();
    for (i, x) in gens.iter().enumerate() {
        for y in &gens[i + 1..] {
            if !x.commutes_with(y) {
                return Some(Counterexample::NonCommuting {
                    x: x.clone(),
                    y: y.clone(),
                });
            }
        }
    }
    None
}

fn centralizes(a: &[Permutation], b: &[Permutation]) -> bool {
    a.iter().all(|x| b.iter().all(|y| x.commutes_with(y)))
}

/// Index of the first conjugate of a Sylow p-subgroup of `g` centralizing `h`.
fn centralizing_sylow(g: &Group, p: u64, h: &Group) -> Option<usize> {
    let sylow = sylow_subgroup(g, p);
    sylow_conjugates(g, &sylow)
        .iter()
        .position(|s| centralizes(s.generators(), h.generators()))
}

fn size_pairs(graph: &ClassGraph, pairs: &[(usize, usize)]) -> Vec<[u64; 2]> {
    let set: BTreeSet<[u64; 2]> = pairs
        .iter()
        .map(|&(u, v)| {
            let (a, b) = (graph.vertices[u].size, graph.vertices[v].size);
            [a.min(b), a.max(b)]
        })
        .collect();
    set.into_iter().collect()
}

/// Outcome of checking the p-complement structure shared by THM-B, DISC-PREG and CONJ-C.
enum Qf {
    Done(Box<FrobeniusAnalysis>),
    Exhausted,
}

fn qf_of(v: &mut Verdict, a: &Analysis, budget: u64, label: &str) -> Qf {
    match quasi_frobenius_analysis(a, budget) {
        Ok(f) => Qf::Done(Box::new(f)),
        Err(StructureError::ComplementSearchExhausted { .. }) => Qf::Exhausted,
        Err(e) => {
            v.fail(clause(label, json!({ "internal_error": e.to_string() })));
            Qf::Done(Box::new(FrobeniusAnalysis {
                is_quasi_frobenius: false,
                parts: None,
            }))
        }
    }
}

/// Records and checks "quasi-Frobenius with abelian kernel and complements".
/// Returns the analysis when the structure holds.
fn require_abelian_qf(
    v: &mut Verdict,
    a: &Analysis,
    budget: u64,
    label: &str,
    detail: &mut serde_json::Map<String, serde_json::Value>,
) -> Option<FrobeniusAnalysis> {
    let f = match qf_of(v, a, budget, label) {
        Qf::Done(f) => *f,
        Qf::Exhausted => {
            detail.insert("quasi_frobenius".into(), json!("inconclusive"));
            return None;
        }
    };
    let summary = f.summary();
    detail.insert(
        "quasi_frobenius".into(),
        serde_json::to_value(&summary).expect("serializes"),
    );
    let Some(parts) = f.parts.as_ref() else {
        v.fail(clause(
            label,
            json!({ "group_order": a.order(), "is_quasi_frobenius": false }),
        ));
        return None;
    };
    for (part, g) in [("kernel", &parts.kernel), ("complement", &parts.complement)] {
        if let Some(c) = non_commuting(g) {
            detail.insert(format!("{part}_non_commuting"), json!(true));
            v.fail(c);
        }
    }
    Some(f)
}

fn p_complement_witness(v: &mut Verdict, a: &Analysis, p: u64) -> Option<Group> {
    let pn = a.p_nilpotency(p);
    v.witness("p_nilpotent", pn.p_nilpotent);
    match pn.complement {
        Some(h) => Some(h),
        None => {
            let pi = a.complement(&PrimeSet::single(p));
            let c = a
                .pi_closure_witness(&pi)
                .expect("non-closed p-regular set has a witness pair");
            v.fail(c);
            None
        }
    }
}

fn center_matches(g: &Group, h: &Analysis) -> (bool, u64) {
    let zh = h.center();
    let meet = h.group().intersection(&g.center());
    (zh.same_elements(&meet), zh.order())
}

pub fn check_thm_a(ctx: &GroupContext, p: u64) -> Verdict {
    timed(|| {
        let mut v = ctx.verdict(CheckId::ThmA, Some(p));
        let g = ctx.graph(Mode::PRegular(p));
        let sep = ctx.analysis.is_p_separable(p);
        v.witness("p_separable", sep);
        v.witness("vertices", g.len());
        v.witness("components", g.components.len());
        if !sep {
            return v.not_applicable("group is not p-separable");
        }
        if g.len() < 2 {
            return v.not_applicable("fewer than 2 vertices");
        }
        if g.is_disconnected() {
            return v.not_applicable("graph is disconnected");
        }
        v.hypothesis = Status::Holds;
        v.conclusion = Status::Holds;
        let max = maximal_classes(&g).expect("nonempty");
        let sizes = g.sizes();
        let mut worst = 0;
        let mut violations = 0;
        for &b0 in &max {
            for d in 0..g.len() {
                let dist = g.dist[b0][d].expect("connected");
                worst = worst.max(dist);
                if dist > 2 {
                    fail_capped(
                        &mut v,
                        &mut violations,
                        Counterexample::Distance {
                            sizes: sizes.clone(),
                            from: b0,
                            to: d,
                            distance: Some(dist),
                            bound: 2,
                        },
                    );
                }
            }
        }
        v.witness("maximal_class_size", sizes[max[0]]);
        v.witness("maximal_classes", max.len());
        v.witness("max_distance_from_maximal", worst);
        v.witness("violations", violations);
        v
    })
}

pub fn check_cor_diam(ctx: &GroupContext, p: u64) -> Verdict {
    timed(|| {
        let mut v = ctx.verdict(CheckId::CorDiam, Some(p));
        let g = ctx.graph(Mode::PRegular(p));
        let sep = ctx.analysis.is_p_separable(p);
        v.witness("p_separable", sep);
        v.witness("vertices", g.len());
        v.witness("diameter", g.diameter());
        if !sep {
            return v.not_applicable("group is not p-separable");
        }
        if g.is_empty() {
            return v.not_applicable("empty graph");
        }
        if g.is_disconnected() {
            return v.not_applicable("graph is disconnected");
        }
        v.hypothesis = Status::Holds;
        v.conclusion = Status::Holds;
        let d = g.diameter().finite().expect("connected nonempty graph");
        if d > 3 {
            let (u, w) = distance_pairs(&g, d)[0];
            v.fail(Counterexample::Distance {
                sizes: g.sizes(),
                from: u,
                to: w,
                distance: Some(d),
                bound: 3,
            });
        }
        v
    })
}

pub fn check_thm_b(ctx: &GroupContext, p: u64) -> Verdict {
    timed(|| {
        let mut v = ctx.verdict(CheckId::ThmB, Some(p));
        let a = &ctx.analysis;
        let g = ctx.graph(Mode::PRegular(p));
        let sep = a.is_p_separable(p);
        let pairs = distance_pairs(&g, 3);
        v.witness("p_separable", sep);
        v.witness("distance3_pairs", size_pairs(&g, &pairs));
        if !sep {
            return v.not_applicable("group is not p-separable");
        }
        if pairs.is_empty() {
            return v.not_applicable("no pair of classes at distance 3");
        }
        let qualifying: Vec<(usize, usize)> = pairs
            .iter()
            .copied()
            .filter(|&(x, y)| g.vertices[x].size.min(g.vertices[y].size).is_multiple_of(p))
            .collect();
        if qualifying.is_empty() {
            v.witness("p_nilpotent", a.p_nilpotency(p).p_nilpotent);
            return v.not_applicable("p does not divide the smaller size of any distance-3 pair");
        }
        v.hypothesis = Status::Holds;
        v.conclusion = Status::Holds;
        v.witness("qualifying_pairs", size_pairs(&g, &qualifying));
        let Some(h) = p_complement_witness(&mut v, a, p) else {
            return v;
        };
        v.witness("h_order", h.order());
        let ha = Analysis::new(h);
        let pis: BTreeSet<PrimeSet> = qualifying
            .iter()
            .map(|&(x, y)| g.vertices[x].primes.union(&g.vertices[y].primes))
            .collect();
        let mut reports = Vec::new();
        let mut inconclusive = false;
        for pi in pis {
            let mut d = serde_json::Map::new();
            d.insert("pi".into(), json!(pi));
            if !complement_structure(&mut v, ctx, &ha, &pi, p, &mut d) {
                inconclusive = true;
            }
            reports.push(serde_json::Value::Object(d));
        }
        v.witness("per_pi", reports);
        if inconclusive && v.conclusion != Status::Fails {
            return v.inconclusive("complement search exhausted its budget");
        }
        v
    })
}

/// Clauses (ii)-(v) of the diameter-3 theorem for one π. Returns false when
/// a budget ran out.
fn complement_structure(
    v: &mut Verdict,
    ctx: &GroupContext,
    ha: &Analysis,
    pi: &PrimeSet,
    p: u64,
    d: &mut serde_json::Map<String, serde_json::Value>,
) -> bool {
    let g = ctx.group();
    let h_order = ha.order();
    let o_pi = ha.o_pi(pi);
    let o_pi_prime = ha.o_pi(&ha.complement(pi));
    d.insert("o_pi_order".into(), json!(o_pi.order()));
    d.insert("o_pi_prime_order".into(), json!(o_pi_prime.order()));
    if o_pi.order() * o_pi_prime.order() != h_order {
        v.fail(clause(
            "direct-decomposition",
            json!({ "pi": pi, "h_order": h_order, "o_pi_order": o_pi.order(), "o_pi_prime_order": o_pi_prime.order() }),
        ));
    }
    let oa = Analysis::new(o_pi);
    let mut complete = true;
    match require_abelian_qf(v, &oa, ctx.budget, "o-pi-quasi-frobenius", d) {
        Some(f) => {
            let parts = f.parts.as_ref().expect("quasi-Frobenius");
            d.insert("kernel_order".into(), json!(parts.kernel.order()));
            d.insert("complement_order".into(), json!(parts.complement.order()));
            let found = centralizing_sylow(g, p, &parts.complement);
            d.insert(
                "sylow_centralizes_complement".into(),
                json!(found.is_some()),
            );
            if found.is_none() {
                v.fail(clause(
                    "sylow-centralizes-complement",
                    json!({ "pi": pi, "complement_generators": parts.complement.generators() }),
                ));
            }
        }
        None => {
            if d.get("quasi_frobenius") == Some(&json!("inconclusive")) {
                complete = false;
            }
        }
    }
    // the other reading: complements of H itself, when H is quasi-Frobenius
    match quasi_frobenius_analysis(ha, ctx.budget) {
        Ok(f) => {
            let centralized = f
                .parts
                .as_ref()
                .map(|parts| centralizing_sylow(g, p, &parts.complement).is_some());
            d.insert(
                "h_complement_reading".into(),
                json!({ "h_quasi_frobenius": f.is_quasi_frobenius, "centralized": centralized }),
            );
        }
        Err(e) => {
            d.insert(
                "h_complement_reading".into(),
                json!({ "error": e.to_string() }),
            );
        }
    }
    let (ok, zh) = center_matches(g, ha);
    d.insert("z_h_order".into(), json!(zh));
    d.insert("center_matches".into(), json!(ok));
    if !ok {
        v.fail(clause("center", json!({ "pi": pi, "z_h_order": zh })));
    }
    complete
}

pub fn check_disc_ord(ctx: &GroupContext) -> Verdict {
    timed(|| {
        let mut v = ctx.verdict(CheckId::DiscOrd, None);
        let g = ctx.graph(Mode::Ordinary);
        let disconnected = g.is_disconnected();
        let sizes: BTreeSet<u64> = g.sizes().into_iter().collect();
        v.witness("vertices", g.len());
        v.witness("components", g.components.len());
        v.witness("disconnected", disconnected);
        v.witness("nontrivial_sizes", &sizes);
        if g.is_empty() {
            return v.not_applicable("no non-central classes");
        }
        v.hypothesis = Status::Holds;
        let f = match quasi_frobenius_analysis(&ctx.analysis, ctx.budget) {
            Ok(f) => f,
            Err(StructureError::ComplementSearchExhausted { .. }) => {
                return v.inconclusive("complement search exhausted its budget");
            }
            Err(e) => {
                v.fail(clause(
                    "quasi-frobenius",
                    json!({ "internal_error": e.to_string() }),
                ));
                return v;
            }
        };
        v.witness("quasi_frobenius", f.summary());
        v.conclusion = Status::Holds;
        let structured = f.abelian_kernel_and_complements();
        if disconnected != structured {
            v.fail(clause(
                "biconditional",
                json!({ "disconnected": disconnected, "abelian_quasi_frobenius": structured }),
            ));
        } else if disconnected {
            let parts = f.parts.as_ref().expect("structured");
            let expected: BTreeSet<u64> =
                [parts.kernel_bar_order, parts.complement_bar_order].into();
            if sizes != expected {
                v.fail(clause(
                    "two-class-sizes",
                    json!({ "sizes": sizes, "kernel_bar_order": parts.kernel_bar_order, "complement_bar_order": parts.complement_bar_order }),
                ));
            }
        }
        v
    })
}

pub fn check_disc_preg(ctx: &GroupContext, p: u64) -> Verdict {
    timed(|| {
        let mut v = ctx.verdict(CheckId::DiscPreg, Some(p));
        let a = &ctx.analysis;
        let g = ctx.graph(Mode::PRegular(p));
        let sep = a.is_p_separable(p);
        v.witness("p_separable", sep);
        v.witness("components", g.components.len());
        if !sep {
            return v.not_applicable("group is not p-separable");
        }
        if !g.is_disconnected() {
            return v.not_applicable("graph is connected or empty");
        }
        v.hypothesis = Status::Holds;
        v.conclusion = Status::Holds;
        let b0 = maximal_classes(&g).expect("nonempty")[0];
        let comp = &g.components[g.component_of(b0)];
        let pi0 = comp.iter().fold(PrimeSet::empty(), |acc, &u| {
            acc.union(&g.vertices[u].primes)
        });
        v.witness("pi0", &pi0);
        v.witness(
            "components_complete",
            g.components.iter().all(|c| {
                c.iter()
                    .all(|&x| c.iter().all(|&y| x == y || g.adjacent(x, y)))
            }),
        );
        let budget = ctx.budget;
        let mut d = serde_json::Map::new();
        if !pi0.contains(p) {
            v.witness("clause", "a");
            let Some(h) = p_complement_witness(&mut v, a, p) else {
                return v;
            };
            d.insert("h_order".into(), json!(h.order()));
            let ha = Analysis::new(h);
            match require_abelian_qf(&mut v, &ha, budget, "h-quasi-frobenius", &mut d) {
                Some(f) => {
                    let parts = f.parts.as_ref().expect("quasi-Frobenius");
                    let found = centralizing_sylow(ctx.group(), p, &parts.complement);
                    d.insert(
                        "sylow_centralizes_complement".into(),
                        json!(found.is_some()),
                    );
                    if found.is_none() {
                        v.fail(clause(
                            "sylow-centralizes-complement",
                            json!({ "complement_generators": parts.complement.generators() }),
                        ));
                    }
                }
                None if d.get("quasi_frobenius") == Some(&json!("inconclusive")) => {
                    v.witnesses
                        .insert("details".into(), serde_json::Value::Object(d));
                    return v.inconclusive("complement search exhausted its budget");
                }
                None => {}
            }
            check_center(&mut v, ctx, &ha, &mut d);
        } else {
            let rest = pi0.difference(&PrimeSet::single(p));
            let hall_abelian = if pi0.len() >= 3 {
                None
            } else {
                match hall_pi_subgroup(a, &rest, budget) {
                    HallOutcome::Found(t) => Some(t.is_abelian()),
                    HallOutcome::BudgetExhausted { .. } => {
                        return v.inconclusive("Hall subgroup search exhausted its budget");
                    }
                    HallOutcome::DoesNotExist => Some(false),
                }
            };
            v.witness("hall_pi0_minus_p_abelian", hall_abelian);
            if pi0.len() < 3 && hall_abelian != Some(true) {
                v.witness("open_case", true);
                return v.inconclusive("|π0| = 2 with non-abelian Hall subgroups: unresolved case");
            }
            v.witness("clause", "b");
            let pc = PrimeSet::single(p).complement_in(&ctx.group().prime_set());
            let h = match hall_pi_subgroup(a, &pc, budget) {
                HallOutcome::Found(h) => h,
                HallOutcome::BudgetExhausted { .. } => {
                    return v.inconclusive("p-complement search exhausted its budget");
                }
                HallOutcome::DoesNotExist => {
                    v.fail(clause("p-complement", json!({ "exists": false })));
                    return v;
                }
            };
            d.insert("h_order".into(), json!(h.order()));
            let ha = Analysis::new(h);
            if require_abelian_qf(&mut v, &ha, budget, "h-quasi-frobenius", &mut d).is_none()
                && d.get("quasi_frobenius") == Some(&json!("inconclusive"))
            {
                v.witnesses
                    .insert("details".into(), serde_json::Value::Object(d));
                return v.inconclusive("complement search exhausted its budget");
            }
            check_center(&mut v, ctx, &ha, &mut d);
        }
        v.witnesses
            .insert("details".into(), serde_json::Value::Object(d));
        v
    })
}

fn check_center(
    v: &mut Verdict,
    ctx: &GroupContext,
    ha: &Analysis,
    d: &mut serde_json::Map<String, serde_json::Value>,
) {
    let (ok, zh) = center_matches(ctx.group(), ha);
    d.insert("z_h_order".into(), json!(zh));
    d.insert("center_matches".into(), json!(ok));
    if !ok {
        v.fail(clause("center", json!({ "z_h_order": zh })));
    }
}

/// The subgroup `S` generated by the classes at distance at least 2 from a maximal class.
pub fn check_s_subgroup(ctx: &GroupContext, p: u64) -> Verdict {
    timed(|| {
        let mut v = ctx.verdict(CheckId::SSubgroup, Some(p));
        let a = &ctx.analysis;
        let t = a.table();
        let grp = ctx.group();
        let g = ctx.graph(Mode::PRegular(p));
        let sep = a.is_p_separable(p);
        v.witness("p_separable", sep);
        v.witness("vertices", g.len());
        if !sep {
            return v.not_applicable("group is not p-separable");
        }
        if g.is_empty() {
            return v.not_applicable("empty graph");
        }
        v.hypothesis = Status::Holds;
        v.conclusion = Status::Holds;
        let z_pp = t.set_of(
            (0..t.len()).filter(|&i| t.class(i).is_central() && t.class(i).is_p_regular(p)),
        );
        let z_pp_order = t.set_order(&z_pp);
        v.witness("z_p_prime_order", z_pp_order);
        let mut reports = Vec::new();
        let mut seen = BTreeSet::new();
        for b0 in maximal_classes(&g).expect("nonempty") {
            let s_set = s_subgroup_classes(t, &g, b0);
            let s_order = t.set_order(&s_set);
            let pi_b0 = &g.vertices[b0].primes;
            let s = a.subgroup(&s_set);
            let key: Vec<usize> = s_set.ones().collect();
            // identical S and π(B_0) give identical clause outcomes
            if !seen.insert((key, pi_b0.clone())) {
                continue;
            }
            let mut r = serde_json::Map::new();
            r.insert("b0".into(), json!(b0));
            r.insert("s_order".into(), json!(s_order));
            // (a)
            let abelian = s.is_abelian();
            r.insert("abelian".into(), json!(abelian));
            if let Some(c) = non_commuting(&s) {
                v.fail(c);
            }
            if !grp.is_normal_subgroup(&s) {
                v.fail(clause("a-normal", json!({ "b0": b0 })));
            }
            if s_order.is_multiple_of(p) {
                v.fail(clause("a-p-prime", json!({ "b0": b0, "s_order": s_order })));
            }
            // (b)
            let contains_z = s_set.is_superset(&z_pp);
            let pi_quot = PrimeSet::of(s_order / z_pp_order.max(1));
            r.insert("contains_z_p_prime".into(), json!(contains_z));
            r.insert("pi_s_mod_z".into(), json!(pi_quot));
            r.insert("pi_b0".into(), json!(pi_b0));
            if !contains_z || !s_order.is_multiple_of(z_pp_order) {
                v.fail(clause("b-center", json!({ "b0": b0, "s_order": s_order })));
            } else if !pi_quot.is_subset(pi_b0) {
                v.fail(clause(
                    "b-primes",
                    json!({ "b0": b0, "pi_s_mod_z": pi_quot, "pi_b0": pi_b0 }),
                ));
            }
            // (c)
            let far: Vec<usize> = (0..g.len())
                .filter(|&d| g.dist[b0][d].is_none_or(|x| x >= 3))
                .collect();
            let mut c_reports = Vec::new();
            for &dv in &far {
                let rep = &t.class(g.vertices[dv].class).rep;
                let c = grp.centralizer(rep);
                if !s.is_subgroup_of(&c) {
                    v.fail(clause(
                        "c-containment",
                        json!({ "b0": b0, "d": dv, "rep": rep }),
                    ));
                    continue;
                }
                let index = c.order() / s.order();
                let candidates = pi_b0.intersection(&PrimeSet::of(rep.order()));
                let q = candidates
                    .iter()
                    .find(|&q| PrimeSet::new([p, q]).is_pi_number(index));
                c_reports.push(json!({ "d": dv, "index": index, "q": q }));
                if q.is_none() {
                    v.fail(clause(
                        "c-pq-group",
                        json!({ "b0": b0, "d": dv, "index": index, "candidates": candidates }),
                    ));
                }
            }
            r.insert("distance_ge3".into(), json!(c_reports));
            // (d)
            let at3: Vec<usize> = (0..g.len()).filter(|&d| g.dist[b0][d] == Some(3)).collect();
            r.insert("distance3".into(), json!(at3.len()));
            let sizes3: BTreeSet<u64> = at3.iter().map(|&d| g.vertices[d].size).collect();
            if sizes3.len() > 1 {
                v.fail(clause(
                    "d-equal-sizes",
                    json!({ "b0": b0, "sizes": sizes3 }),
                ));
            }
            for &dv in &at3 {
                if pi_b0.contains(p) || g.vertices[dv].primes.contains(p) {
                    v.fail(clause("d-p-free", json!({ "b0": b0, "d": dv })));
                }
            }
            reports.push(serde_json::Value::Object(r));
        }
        v.witness("per_b0", reports);
        v
    })
}

/// The three statements of the class-size trichotomy for `π`.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct FmsEvaluation {
    pub a: bool,
    pub b: Option<bool>,
    pub c: bool,
    pub direct: bool,
    pub hall_abelian: Option<bool>,
    pub pi_length_at_most_one: bool,
}

pub fn evaluate_fms(a: &Analysis, pi: &PrimeSet, budget: u64) -> FmsEvaluation {
    let t = a.table();
    let pi = pi.intersection(&a.group().prime_set());
    let pi_prime = a.complement(&pi);
    let sizes: Vec<u64> = t
        .pi_element_classes(&pi)
        .into_iter()
        .map(|c| t.class(c).size)
        .collect();
    let stmt_a = sizes
        .iter()
        .all(|&s| pi.is_pi_number(s) || pi_prime.is_pi_number(s));
    let stmt_c = sizes.iter().all(|&s| pi.is_pi_number(s))
        || sizes.iter().all(|&s| pi_prime.is_pi_number(s));
    let direct = a.table().set_order(&a.o_pi_set(&pi))
        * a.table().set_order(&a.o_pi_set(&pi_prime))
        == a.order();
    let length = a.pi_length_at_most_one(&pi).is_some();
    let hall_abelian = if direct {
        None
    } else {
        match hall_pi_subgroup(a, &pi, budget) {
            HallOutcome::Found(h) => Some(h.is_abelian()),
            HallOutcome::DoesNotExist => Some(false),
            HallOutcome::BudgetExhausted { .. } => None,
        }
    };
    let b = if direct {
        Some(true)
    } else {
        hall_abelian.map(|ab| ab && length)
    };
    FmsEvaluation {
        a: stmt_a,
        b,
        c: stmt_c,
        direct,
        hall_abelian,
        pi_length_at_most_one: length,
    }
}

pub fn check_fms(ctx: &GroupContext, pi: &PrimeSet, prime: Option<u64>) -> Verdict {
    timed(|| {
        let mut v = ctx.verdict(CheckId::FmsEq, prime);
        let a = &ctx.analysis;
        v.witness("pi", pi);
        let sep = a.is_pi_separable(pi);
        v.witness("pi_separable", sep);
        if !sep {
            return v.not_applicable("group is not π-separable");
        }
        v.hypothesis = Status::Holds;
        let e = evaluate_fms(a, pi, ctx.budget);
        v.witness("statements", &e);
        let Some(b) = e.b else {
            return v.inconclusive("Hall subgroup search exhausted its budget");
        };
        v.conclusion = Status::Holds;
        if !(e.a == b && b == e.c) {
            v.fail(clause(
                "equivalence",
                json!({ "pi": pi, "a": e.a, "b": b, "c": e.c }),
            ));
        }
        v
    })
}

/// Pairs of coprime vertices such that every other vertex is coprime to one of them.
pub fn isolated_pairs(graph: &ClassGraph) -> Vec<(usize, usize)> {
    let n = graph.len();
    let mut out = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            if graph.adjacent(x, y) {
                continue;
            }
            if (0..n).all(|z| z == x || z == y || !graph.adjacent(z, x) || !graph.adjacent(z, y)) {
                out.push((x, y));
            }
        }
    }
    out
}

pub fn check_conj_c(ctx: &GroupContext, p: u64) -> Verdict {
    timed(|| {
        let mut v = ctx.verdict(CheckId::ConjC, Some(p));
        let a = &ctx.analysis;
        let g = ctx.graph(Mode::PRegular(p));
        let sep = a.is_p_separable(p);
        v.witness("p_separable", sep);
        if !sep {
            return v.not_applicable("group is not p-separable");
        }
        let pairs = isolated_pairs(&g);
        v.witness("isolated_pairs", size_pairs(&g, &pairs));
        if pairs.is_empty() {
            return v.not_applicable("no pair of classes isolating the rest");
        }
        v.hypothesis = Status::Holds;
        v.conclusion = Status::Holds;
        let pc = PrimeSet::single(p).complement_in(&ctx.group().prime_set());
        let h = match hall_pi_subgroup(a, &pc, ctx.budget) {
            HallOutcome::Found(h) => h,
            HallOutcome::BudgetExhausted { .. } => {
                return v.inconclusive("p-complement search exhausted its budget");
            }
            HallOutcome::DoesNotExist => {
                v.fail(clause("p-complement", json!({ "exists": false })));
                v.witness("potential_counterexample", true);
                return v;
            }
        };
        v.witness("h_order", h.order());
        let ha = Analysis::new(h);
        let pis: BTreeSet<PrimeSet> = pairs
            .iter()
            .map(|&(x, y)| g.vertices[x].primes.union(&g.vertices[y].primes))
            .collect();
        let mut reports = Vec::new();
        let mut complete = true;
        for pi in pis {
            let mut d = serde_json::Map::new();
            d.insert("pi".into(), json!(pi));
            let o_pi = ha.o_pi(&pi);
            let o_pi_prime = ha.o_pi(&ha.complement(&pi));
            d.insert("o_pi_order".into(), json!(o_pi.order()));
            d.insert("o_pi_prime_order".into(), json!(o_pi_prime.order()));
            if o_pi.order() * o_pi_prime.order() != ha.order() {
                v.fail(clause(
                    "direct-decomposition",
                    json!({ "pi": pi, "o_pi_order": o_pi.order(), "o_pi_prime_order": o_pi_prime.order() }),
                ));
            }
            let oa = Analysis::new(o_pi);
            if require_abelian_qf(&mut v, &oa, ctx.budget, "o-pi-quasi-frobenius", &mut d).is_none()
                && d.get("quasi_frobenius") == Some(&json!("inconclusive"))
            {
                complete = false;
            }
            reports.push(serde_json::Value::Object(d));
        }
        v.witness("per_pi", reports);
        if v.is_failure() {
            v.witness("potential_counterexample", true);
        } else if !complete {
            return v.inconclusive("complement search exhausted its budget");
        }
        v
    })
}

pub fn check_wielandt(ctx: &GroupContext, pi: &PrimeSet, prime: Option<u64>) -> Verdict {
    timed(|| {
        let mut v = wielandt_check(&ctx.analysis, &ctx.name, pi, ctx.budget);
        v.prime = prime;
        v
    })
}

/// Suite output: theorem checks and conjecture evidence are kept apart.
#[derive(Clone, Debug, Default, Serialize)]
pub struct SuiteReport {
    pub theorems: Vec<Verdict>,
    pub conjecture: Vec<Verdict>,
}

impl SuiteReport {
    pub fn failures(&self) -> usize {
        self.theorems.iter().filter(|v| v.is_failure()).count()
    }

    pub fn conjecture_failures(&self) -> usize {
        self.conjecture.iter().filter(|v| v.is_failure()).count()
    }

    pub fn inconclusive(&self) -> usize {
        self.theorems
            .iter()
            .chain(&self.conjecture)
            .filter(|v| v.conclusion == Status::Inconclusive && v.hypothesis != Status::Fails)
            .count()
    }
}

/// Per-prime checks, in suite order.
const PER_PRIME: [CheckId; 8] = [
    CheckId::ThmA,
    CheckId::CorDiam,
    CheckId::ThmB,
    CheckId::DiscPreg,
    CheckId::SSubgroup,
    CheckId::FmsEq,
    CheckId::Wielandt,
    CheckId::ConjC,
];

pub fn run_check(ctx: &GroupContext, id: CheckId, p: u64) -> Verdict {
    let single = PrimeSet::single(p);
    match id {
        CheckId::ThmA => check_thm_a(ctx, p),
        CheckId::CorDiam => check_cor_diam(ctx, p),
        CheckId::ThmB => check_thm_b(ctx, p),
        CheckId::DiscOrd => check_disc_ord(ctx),
        CheckId::DiscPreg => check_disc_preg(ctx, p),
        CheckId::SSubgroup => check_s_subgroup(ctx, p),
        CheckId::FmsEq => check_fms(ctx, &single, Some(p)),
        CheckId::Wielandt => check_wielandt(ctx, &single, Some(p)),
        CheckId::ConjC => check_conj_c(ctx, p),
    }
}

/// Runs `checks` for every prime in `primes` (DISC-ORD once). An empty prime
/// list means the primes dividing `|G|`.
pub fn run_suite(ctx: &GroupContext, primes: &[u64], checks: &[CheckId]) -> SuiteReport {
    let primes: Vec<u64> = if primes.is_empty() {
        ctx.group().prime_set().iter().collect()
    } else {
        let set: BTreeSet<u64> = primes.iter().copied().collect();
        set.into_iter().collect()
    };
    let mut report = SuiteReport::default();
    if checks.contains(&CheckId::DiscOrd) {
        report.theorems.push(check_disc_ord(ctx));
    }
    for &p in &primes {
        for id in PER_PRIME {
            if !checks.contains(&id) {
                continue;
            }
            let v = run_check(ctx, id, p);
            if id.is_conjecture() {
                report.conjecture.push(v);
            } else {
                report.theorems.push(v);
            }
        }
    }
    report
}

/// `FMS-EQ` over every `π ⊆ π(G)`.
pub fn fms_sweep(ctx: &GroupContext) -> Vec<Verdict> {
    ctx.group()
        .prime_set()
        .subsets()
        .iter()
        .map(|pi| check_fms(ctx, pi, None))
        .collect()
}

/// Whether every counterexample of a failing verdict reproduces: self-contained
/// witnesses from their own data, clause witnesses by re-running the check.
pub fn revalidate(ctx: &GroupContext, verdict: &Verdict) -> bool {
    let counterexamples = verdict.counterexamples();
    if counterexamples.is_empty() {
        return false;
    }
    let mut rerun: Option<Verdict> = None;
    counterexamples.iter().all(|c| match c.revalidate() {
        Some(ok) => ok,
        None => {
            let again = rerun.get_or_insert_with(|| match verdict.check_id {
                CheckId::FmsEq => {
                    let pi: PrimeSet = serde_json::from_value(verdict.witnesses["pi"].clone())
                        .unwrap_or_else(|_| PrimeSet::empty());
                    check_fms(ctx, &pi, verdict.prime)
                }
                CheckId::Wielandt => {
                    let pi: PrimeSet = serde_json::from_value(verdict.witnesses["pi"].clone())
                        .unwrap_or_else(|_| PrimeSet::empty());
                    check_wielandt(ctx, &pi, verdict.prime)
                }
                id => run_check(ctx, id, verdict.prime.unwrap_or(2)),
            });
            again.counterexamples().contains(c)
        }
    })
}
