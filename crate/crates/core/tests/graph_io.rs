use gcoh::graph::{bipartition, components, WeightedGraph};
use gcoh::io::{graph_to_json, parse_graph};
use gcoh::Error;
use num_bigint::BigUint;
use proptest::prelude::*;

fn graph() -> impl Strategy<Value = WeightedGraph> {
    (0..=6usize).prop_flat_map(|n| {
        (
            prop::collection::btree_set("[a-zA-Z0-9_ ~\"\\\\é]{1,6}", n..=n),
            prop::collection::vec(prop::collection::vec(any::<u32>(), 1..4), n),
            prop::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2),
        )
            .prop_map(move |(ids, limbs, mask)| {
                let ids: Vec<String> = ids.into_iter().collect();
                let weights = limbs.into_iter().map(|l| BigUint::new(l) + 1u32);
                let edges: Vec<(String, String)> = (0..n)
                    .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                    .zip(mask)
                    .filter(|&(_, keep)| keep)
                    .map(|((i, j), _)| (ids[i].clone(), ids[j].clone()))
                    .collect();
                WeightedGraph::new(ids.clone().into_iter().zip(weights).collect(), edges).unwrap()
            })
    })
}

fn same(a: &WeightedGraph, b: &WeightedGraph) -> bool {
    a.ids() == b.ids() && a.weights() == b.weights() && a.edges() == b.edges()
}

proptest! {
    #[test]
    fn json_round_trip(g in graph()) {
        let back = parse_graph(&graph_to_json(&g)).unwrap();
        prop_assert!(same(&g, &back));
    }

    #[test]
    fn components_partition_the_graph(g in graph()) {
        let comps = components(&g, &g.full());
        let mut vs: Vec<usize> = comps.iter().flat_map(|c| c.vertices().to_vec()).collect();
        let mut es: Vec<usize> = comps.iter().flat_map(|c| c.edges().to_vec()).collect();
        vs.sort_unstable();
        es.sort_unstable();
        prop_assert_eq!(vs, (0..g.vertex_count()).collect::<Vec<_>>());
        prop_assert_eq!(es, (0..g.edge_count()).collect::<Vec<_>>());
        let firsts: Vec<usize> = comps.iter().map(|c| c.vertices()[0]).collect();
        prop_assert!(firsts.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn bipartitions_are_valid_and_normalized(g in graph()) {
        for c in components(&g, &g.full()) {
            if let Some(a) = bipartition(&g, &c) {
                prop_assert!(a.is_valid_for(&g, &c));
                prop_assert_eq!(a.sign(c.vertices()[0]), 1);
            }
        }
    }
}

#[test]
fn large_weights_survive() {
    let text = r#"{"vertices":[{"id":"x","weight":"123456789012345678901234567890"}],"edges":[]}"#;
    let g = parse_graph(text).unwrap();
    assert_eq!(g.weight(0).to_string(), "123456789012345678901234567890");
    assert!(graph_to_json(&g).contains("\"123456789012345678901234567890\""));
}

#[test]
fn malformed_files_are_rejected() {
    let bad = [
        ("{", "parse"),
        (r#"{"vertices":[{"id":"x","weight":"-3"}],"edges":[]}"#, "parse"),
        (r#"{"vertices":[{"id":"x","weight":"3","colour":1}],"edges":[]}"#, "parse"),
        (r#"{"vertices":[{"id":"x","weight":"0"}],"edges":[]}"#, "invalid"),
        (r#"{"vertices":[{"id":"x","weight":"1"},{"id":"x","weight":"2"}],"edges":[]}"#, "invalid"),
        (r#"{"vertices":[{"id":"x","weight":"1"}],"edges":[["x","y"]]}"#, "invalid"),
        (r#"{"vertices":[{"id":"x","weight":"1"}],"edges":[["x","x"]]}"#, "invalid"),
        (r#"{"vertices":[{"id":"x","weight":"1"},{"id":"y","weight":"1"}],"edges":[["x","y"],["y","x"]]}"#, "invalid"),
    ];
    for (text, kind) in bad {
        let err = parse_graph(text).unwrap_err();
        match kind {
            "parse" => assert!(matches!(err, Error::Parse(_)), "{text}: {err}"),
            _ => assert!(matches!(err, Error::InvalidGraph(_)), "{text}: {err}"),
        }
    }
}

#[test]
fn small_examples() {
    let two = WeightedGraph::from_u64(&[("a", 1), ("b", 1), ("c", 1), ("d", 1)], &[("a", "b"), ("c", "d")]).unwrap();
    assert_eq!(components(&two, &two.full()).len(), 2);
    let isolated = WeightedGraph::from_u64(&[("a", 1), ("b", 1), ("c", 1)], &[]).unwrap();
    assert_eq!(components(&isolated, &isolated.full()).len(), 3);
    let path = WeightedGraph::from_u64(&[("u", 1), ("v", 1), ("w", 1)], &[("u", "v"), ("v", "w")]).unwrap();
    assert_eq!(bipartition(&path, &path.full()).unwrap().signs(), &[1, -1, 1]);
    let tri = WeightedGraph::from_u64(&[("u", 1), ("v", 1), ("w", 1)], &[("u", "v"), ("v", "w"), ("u", "w")]).unwrap();
    assert!(bipartition(&tri, &tri.full()).is_none());
}
