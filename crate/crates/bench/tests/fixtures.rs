use cdgraph_bench::fixtures;

#[test]
fn fixture_orders() {
    let orders: Vec<(&str, u64)> = fixtures().iter().map(|(n, g)| (*n, g.order())).collect();
    assert_eq!(orders, [("f42", 42), ("ex31a", 5250), ("ex31b", 5250)]);
}
