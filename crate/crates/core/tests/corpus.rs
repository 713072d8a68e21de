use cdgraph::verifier::{run_suite, GroupContext};
use cdgraph::{build, build_graph, builtin_corpus, conjugacy_classes, CheckId, GroupSpec, Mode, PrimeSet};
use num_integer::Integer;
use proptest::prelude::*;

fn corpus_up_to(limit: u64) -> Vec<(String, GroupContext)> {
    builtin_corpus()
        .into_iter()
        .filter(|(_, spec)| spec.expected_order().is_some_and(|n| n <= limit))
        .map(|(name, spec)| {
            let ctx = GroupContext::new(&name, build(&spec).unwrap());
            (name, ctx)
        })
        .collect()
}

#[test]
fn orbit_stabilizer_on_every_element() {
    for (name, ctx) in corpus_up_to(500) {
        let g = ctx.group();
        let t = ctx.table();
        for (i, x) in g.elements().enumerate() {
            let size = t.class(t.class_of_index(i)).size;
            assert_eq!(g.centralizer(x).order() * size, g.order(), "{name} {x}");
        }
    }
}

#[test]
fn disconnected_graphs_have_two_complete_components() {
    let mut seen = 0;
    for (name, ctx) in corpus_up_to(10_000) {
        for p in ctx.group().prime_set().iter() {
            if !ctx.analysis.is_p_separable(p) {
                continue;
            }
            let g = ctx.graph(Mode::PRegular(p));
            if !g.is_disconnected() {
                continue;
            }
            seen += 1;
            assert_eq!(g.components.len(), 2, "{name} p={p}");
            for comp in &g.components {
                for &u in comp {
                    for &v in comp {
                        assert!(u == v || g.adjacent(u, v), "{name} p={p}: {u} and {v}");
                    }
                }
            }
        }
    }
    assert!(seen > 0);
}

#[test]
fn o_pi_and_o_pi_prime_are_complementary() {
    for (name, ctx) in corpus_up_to(1000) {
        let a = &ctx.analysis;
        let g = ctx.group();
        for pi in g.prime_set().subsets() {
            let x = a.o_pi(&pi);
            let y = a.o_pi(&a.complement(&pi));
            assert!(x.intersection(&y).is_trivial(), "{name} {pi}");
            let xy = g.join(&x, &y);
            assert_eq!(xy.order(), x.order() * y.order(), "{name} {pi}");
            assert!(g.is_normal_subgroup(&xy), "{name} {pi}");
            assert!(pi.is_pi_number(x.order()));
        }
    }
}

#[test]
fn suites_are_deterministic() {
    let checks: Vec<CheckId> = CheckId::THEOREMS
        .into_iter()
        .chain([CheckId::Wielandt, CheckId::ConjC])
        .collect();
    for name in ["S4", "F7_6", "D42xC5", "A5xS3"] {
        let (_, spec) = builtin_corpus().into_iter().find(|(n, _)| n == name).unwrap();
        let run = || {
            let ctx = GroupContext::new(name, build(&spec).unwrap());
            let r = run_suite(&ctx, &[], &checks);
            r.theorems
                .iter()
                .chain(&r.conjecture)
                .map(|v| serde_json::to_string(&v.without_timing()).unwrap())
                .collect::<Vec<_>>()
        };
        assert_eq!(run(), run(), "{name}");
    }
}

fn small_factor() -> impl Strategy<Value = GroupSpec> {
    prop_oneof![
        (1u32..8).prop_map(|n| GroupSpec::Cyclic { n }),
        (3u32..8).prop_map(|n| GroupSpec::Dihedral { order: 2 * n }),
        (3u32..5).prop_map(|n| GroupSpec::Symmetric { n }),
        Just(GroupSpec::Alternating { n: 4 }),
        Just(GroupSpec::FrobeniusMetacyclic { q: 7, d: 3 }),
        Just(GroupSpec::FrobeniusMetacyclic { q: 5, d: 4 }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn class_sizes_and_edges_rederive(parts in prop::collection::vec(small_factor(), 1..3)) {
        let spec = GroupSpec::Direct { parts };
        let g = build(&spec).unwrap();
        let order = g.order();
        let t = conjugacy_classes(g);
        prop_assert_eq!(t.sizes().iter().sum::<u64>(), order);
        prop_assert!(t.sizes().iter().all(|s| order % s == 0));
        for mode in std::iter::once(Mode::Ordinary).chain(PrimeSet::of(order).iter().map(Mode::PRegular)) {
            let graph = build_graph(&t, mode);
            for u in 0..graph.len() {
                for v in 0..graph.len() {
                    let shared = graph.vertices[u].size.gcd(&graph.vertices[v].size) > 1;
                    prop_assert_eq!(u != v && shared, graph.adjacent(u, v));
                }
            }
        }
    }
}
