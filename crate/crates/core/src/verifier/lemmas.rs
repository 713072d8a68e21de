//! Exhaustive property suites for the auxiliary class-size facts.

use std::sync::Arc;

use fixedbitset::FixedBitSet;
use num_integer::Integer;
use serde::Serialize;

use crate::cdgraph::{build_graph, Mode};
use crate::classes::{sigma_part, ClassTable};
use crate::permgroup::PrimeSet;
use crate::structure::quotient;
use crate::verdict::Status;

use super::GroupContext;

#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct LemmaReport {
    pub lemma: String,
    pub group: String,
    pub cases: u64,
    pub inconclusive: u64,
    pub violations: Vec<String>,
}

impl LemmaReport {
    fn new(lemma: &str, ctx: &GroupContext) -> Self {
        LemmaReport {
            lemma: lemma.to_string(),
            group: ctx.name.clone(),
            ..Default::default()
        }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.violations.push(describe());
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// `|x^N|` divides `|x^G|` for every normal `N` and `x ∈ N`.
pub fn class_size_in_normal_subgroup(ctx: &GroupContext) -> LemmaReport {
    let mut r = LemmaReport::new("class-size-in-normal-subgroup", ctx);
    let a = &ctx.analysis;
    let t = a.table();
    let g = ctx.group();
    for n in a.normal_lattice() {
        let elems = t.elements_of(&n.classes);
        for c in n.classes.ones() {
            let x = &t.class(c).rep;
            let centralizing = elems
                .iter()
                .filter(|&&e| g.element(e).commutes_with(x))
                .count() as u64;
            let in_n = n.order / centralizing;
            r.check(t.class(c).size.is_multiple_of(in_n), || {
                format!(
                    "|N|={} class {c}: |x^N|={in_n} does not divide {}",
                    n.order,
                    t.class(c).size
                )
            });
        }
    }
    r
}

/// `|(xN)^{G/N}|` divides `|x^G|`.
pub fn class_size_in_quotient(ctx: &GroupContext) -> LemmaReport {
    let mut r = LemmaReport::new("class-size-in-quotient", ctx);
    let a = &ctx.analysis;
    let t = a.table();
    let g = ctx.group();
    for n in a.normal_lattice() {
        let q = quotient(g, &a.subgroup(&n.classes)).expect("lattice members are normal");
        let qt = ClassTable::new(Arc::new(q.group.clone()));
        for c in t.classes() {
            let image = q.projection[c.rep_index] as usize;
            let qsize = qt.class(qt.class_of_index(image)).size;
            r.check(c.size % qsize == 0, || {
                format!(
                    "|N|={} rep {}: quotient class size {qsize} does not divide {}",
                    n.order, c.rep, c.size
                )
            });
        }
    }
    r
}

/// Every σ-coset `xN` contains a σ-element `y`, namely `x_σ`; tested for
/// `σ = {p}` and `σ = {p}′` over the primes of `G`.
pub fn regular_coset_representative(ctx: &GroupContext) -> LemmaReport {
    let mut r = LemmaReport::new("regular-coset-representative", ctx);
    let a = &ctx.analysis;
    let g = ctx.group();
    let universe = g.prime_set();
    let sigmas: Vec<PrimeSet> = universe
        .iter()
        .flat_map(|p| {
            let s = PrimeSet::single(p);
            [s.complement_in(&universe), s]
        })
        .collect();
    for n in a.normal_lattice() {
        let q = quotient(g, &a.subgroup(&n.classes)).expect("lattice members are normal");
        let mut seen = FixedBitSet::with_capacity(q.group.len());
        for (i, x) in g.elements().enumerate() {
            let image = q.projection[i] as usize;
            if seen.put(image) {
                continue;
            }
            let coset_order = q.group.element(image).order();
            for sigma in &sigmas {
                if !sigma.is_pi_number(coset_order) {
                    continue;
                }
                let y = sigma_part(x, sigma);
                let same = q.projection[g.index_of(&y).expect("power of x")] as usize == image;
                r.check(sigma.is_pi_number(y.order()) && same, || {
                    format!(
                        "|N|={} x={x} sigma={sigma}: x_sigma={y} not a sigma-element of xN",
                        n.order
                    )
                });
            }
        }
    }
    r
}

/// `C(xy) = C(x) ∩ C(y)` for commuting `x, y` of coprime orders.
pub fn coprime_commuting_centralizer(ctx: &GroupContext) -> LemmaReport {
    let mut r = LemmaReport::new("coprime-commuting-centralizer", ctx);
    let g = ctx.group();
    let t = ctx.table();
    let n = g.len();
    let centralizer: Vec<FixedBitSet> = (0..n)
        .map(|i| {
            let x = g.element(i);
            let mut b = FixedBitSet::with_capacity(n);
            for (j, y) in g.elements().enumerate() {
                if x.commutes_with(y) {
                    b.insert(j);
                }
            }
            b
        })
        .collect();
    let orders: Vec<u64> = g.elements().map(|x| x.order()).collect();
    for c in t.classes() {
        let xi = c.rep_index;
        for yi in centralizer[xi].ones() {
            if orders[xi].gcd(&orders[yi]) != 1 {
                continue;
            }
            let xy = g.mul_index(xi, yi);
            let mut meet = centralizer[xi].clone();
            meet.intersect_with(&centralizer[yi]);
            let xy_size = g.order() / centralizer[xy].count_ones(..) as u64;
            let divides = xy_size.is_multiple_of(c.size)
                && xy_size.is_multiple_of(g.order() / centralizer[yi].count_ones(..) as u64);
            r.check(meet == centralizer[xy] && divides, || {
                format!(
                    "x={} y={}: C(xy) differs from C(x) ∩ C(y)",
                    c.rep,
                    g.element(yi)
                )
            });
        }
    }
    r
}

/// For non-central p-regular classes `B`, `C` of coprime sizes in a
/// p-separable group, `BC` is one p-regular class and `1 ≠ |BC|` divides `|B||C|`.
pub fn coprime_class_product(ctx: &GroupContext) -> LemmaReport {
    let mut r = LemmaReport::new("coprime-class-product", ctx);
    let a = &ctx.analysis;
    let t = a.table();
    let mut done = std::collections::BTreeSet::new();
    for p in ctx.group().prime_set().iter() {
        if !a.is_p_separable(p) {
            continue;
        }
        let graph = build_graph(t, Mode::PRegular(p));
        for u in 0..graph.len() {
            for v in 0..graph.len() {
                if u == v || graph.vertices[u].size.gcd(&graph.vertices[v].size) != 1 {
                    continue;
                }
                let (i, j) = (graph.vertices[u].class, graph.vertices[v].class);
                if !done.insert((p, i, j)) {
                    continue;
                }
                let prod = t.class_product(i, j);
                let class = t.class(t.class_of_index(prod.elements[0]));
                let ok = prod.single_class
                    && class.is_p_regular(p)
                    && class.size != 1
                    && (t.class(i).size * t.class(j).size).is_multiple_of(class.size);
                r.check(ok, || {
                    format!("p={p} classes {i},{j}: product is not a single p-regular class of dividing size")
                });
            }
        }
    }
    r
}

/// Elements of a Hall π-subgroup with π-number class size lie in `O_π(G)`,
/// for every `π ⊆ π(G)` admitting a Hall subgroup.
pub fn hall_class_size(ctx: &GroupContext) -> LemmaReport {
    let mut r = LemmaReport::new("hall-class-size", ctx);
    for pi in ctx.group().prime_set().subsets() {
        let v = super::check_wielandt(ctx, &pi, None);
        match (v.hypothesis, v.conclusion) {
            (Status::Fails, _) => {}
            (_, Status::Inconclusive) => r.inconclusive += 1,
            (_, c) => r.check(c == Status::Holds, || {
                format!("pi={pi}: {}", v.witnesses["counterexamples"])
            }),
        }
    }
    r
}

/// In a p-separable group where every `{p,q}′`-element has class size prime
/// to `q`, the group is `{p,q}`-separable.
pub fn pq_separability(ctx: &GroupContext) -> LemmaReport {
    let mut r = LemmaReport::new("pq-separability", ctx);
    let a = &ctx.analysis;
    let t = a.table();
    let primes = ctx.group().prime_set();
    for p in primes.iter() {
        if !a.is_p_separable(p) {
            continue;
        }
        for q in primes.iter().filter(|&q| q != p) {
            let pq = PrimeSet::new([p, q]);
            let outside = pq.complement_in(&primes);
            let hypothesis = t
                .pi_element_classes(&outside)
                .into_iter()
                .all(|c| !t.class(c).size.is_multiple_of(q));
            if hypothesis {
                r.check(a.is_pi_separable(&pq), || {
                    format!("p={p} q={q}: not {{p,q}}-separable")
                });
            }
        }
    }
    r
}

/// Every suite, with the size limits of the exhaustive runs applied.
pub fn all(ctx: &GroupContext) -> Vec<LemmaReport> {
    let order = ctx.group().order();
    let mut out = Vec::new();
    if order <= 500 {
        out.push(class_size_in_normal_subgroup(ctx));
        out.push(class_size_in_quotient(ctx));
        out.push(regular_coset_representative(ctx));
        out.push(coprime_commuting_centralizer(ctx));
    }
    if order <= 1000 {
        out.push(coprime_class_product(ctx));
        out.push(hall_class_size(ctx));
        out.push(pq_separability(ctx));
    }
    out
}
