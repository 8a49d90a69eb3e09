mod common;

use gcoh::graph::{is_bipartite, p_valuation, WeightedGraph};
use gcoh::weights::{
    core_torsion_relation, edge_weighted_constants, hbe_count, oriented_core, oriented_torsion_exponent, tree_torsion,
    weighted_spanning_tree,
};
use gcoh::Error;
use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn u(x: u64) -> BigUint {
    BigUint::from(x)
}

fn cycle4(w: [u64; 4]) -> WeightedGraph {
    WeightedGraph::from_u64(
        &[("a", w[0]), ("b", w[1]), ("c", w[2]), ("d", w[3])],
        &[("a", "b"), ("b", "c"), ("c", "d"), ("a", "d")],
    )
    .unwrap()
}

#[test]
fn tree_examples() {
    let single = WeightedGraph::from_u64(&[("x", 7)], &[]).unwrap();
    assert_eq!(tree_torsion(&single, &single.full()).unwrap(), u(1));
    let edge = WeightedGraph::from_u64(&[("u", 4), ("v", 6)], &[("u", "v")]).unwrap();
    assert_eq!(tree_torsion(&edge, &edge.full()).unwrap(), common::tree_torsion_by_minors(&edge));
    let star = common::graph_from(vec![u(2), u(3), u(4), u(5)], &[(0, 1), (0, 2), (0, 3)]);
    assert_eq!(common::tree_torsion_by_minors(&star), u(4));
    assert_eq!(tree_torsion(&star, &star.full()).unwrap(), u(4));
    assert!(matches!(tree_torsion(&common::k3(), &common::k3().full()), Err(Error::Precondition(_))));
}

#[test]
fn tree_formula_matches_minors() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..200 {
        let g = common::tree(&mut rng, 8, 1_000_000);
        let expected = common::tree_torsion_by_minors(&g);
        assert_eq!(tree_torsion(&g, &g.full()).unwrap(), expected);
        assert_eq!(expected, common::torsion_order(&g));
    }
}

#[test]
fn edge_constants_examples() {
    let t = WeightedGraph::from_u64(&[("a", 1), ("b", 1), ("c", 1)], &[("a", "b"), ("b", "c"), ("a", "c")]).unwrap();
    let c = edge_weighted_constants(&t, &t.full());
    assert_eq!((c.c0, c.c1, c.c2), (u(1), u(1), u(2)));

    let e = WeightedGraph::from_u64(&[("u", 4), ("v", 6)], &[("u", "v")]).unwrap();
    let c = edge_weighted_constants(&e, &e.full());
    assert_eq!((c.c0, c.c1, c.c2), (u(2), u(24), u(24)));

    let g = common::k3();
    let c = edge_weighted_constants(&g, &g.full());
    assert_eq!((c.c0.clone(), c.c1.clone()), (u(1), u(81)));
    assert_eq!(p_valuation(&c.c2, 3), 8);
    assert_eq!(&c.c0 * &c.c2, &c.c1 * common::torsion_order(&g));
}

#[test]
fn euler_relation() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for _ in 0..150 {
        let g = common::mixed_graph(&mut rng, 6, 3, 3);
        let c = edge_weighted_constants(&g, &g.full());
        assert_eq!(&c.c0 * &c.c2, &c.c1 * common::torsion_order(&g), "{}", gcoh::io::graph_to_json(&g));
    }
    let g = common::k3();
    let two = g.disjoint_union(&common::graph_from(vec![u(4), u(6)], &[(0, 1)]), "2").unwrap();
    let c = edge_weighted_constants(&two, &two.full());
    assert_eq!(&c.c0 * &c.c2, &c.c1 * common::torsion_order(&two));
}

#[test]
fn hbe_matches_edge_constant() {
    assert_eq!(hbe_count(&common::k3(), 3).unwrap(), 8);
    let t = |a| WeightedGraph::from_u64(&[("a", a), ("b", 1), ("c", 1)], &[("a", "b"), ("b", "c"), ("a", "c")]).unwrap();
    assert_eq!(hbe_count(&t(1), 3).unwrap(), 0);
    let t3 = t(3);
    let nodes = gcoh::forest::build_forest(&t3, 3).unwrap().nodes().len() as u64;
    assert_eq!(hbe_count(&t3, 3).unwrap(), nodes + 1);

    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let mut checked = 0;
    for _ in 0..200 {
        let g = common::mixed_graph(&mut rng, 6, 3, 3);
        if is_bipartite(&g, &g.full()) {
            assert!(matches!(hbe_count(&g, 3), Err(Error::Precondition(_))));
            continue;
        }
        // C2 = C1 |T| for a connected graph that is not bipartite.
        let c2 = g.weights().iter().product::<BigUint>() * common::torsion_order(&g);
        assert_eq!(hbe_count(&g, 3).unwrap(), u64::from(p_valuation(&c2, 3)));
        checked += 1;
    }
    assert!(checked > 50);
}

#[test]
fn core_examples() {
    let g = common::k3();
    let core = oriented_core(&g, 3).unwrap();
    assert_eq!(core.core.edge_labels(&g), ["B~G", "G~R"]);
    assert_eq!(core_torsion_relation(&g, 3).unwrap(), common::torsion_exponent(&g, 3));

    let t = WeightedGraph::from_u64(&[("a", 1), ("b", 1), ("c", 1)], &[("a", "b"), ("b", "c"), ("a", "c")]).unwrap();
    let core = oriented_core(&t, 3).unwrap();
    assert!(core.components.iter().all(|c| c.non_forest && c.graph.vertices().len() == 1));
    assert!(matches!(core_torsion_relation(&t, 3), Err(Error::NotApplicable(_))));

    let t9 = WeightedGraph::from_u64(&[("a", 9), ("b", 1), ("c", 1)], &[("a", "b"), ("b", "c"), ("a", "c")]).unwrap();
    if let Ok(n) = core_torsion_relation(&t9, 3) {
        assert_eq!(n, common::torsion_exponent(&t9, 3));
    }

    let path = common::graph_from(vec![u(4), u(6), u(9)], &[(0, 1), (1, 2)]);
    assert_eq!(oriented_core(&path, 3).unwrap().core, path.full());
}

#[test]
fn core_relation_matches_oracle_when_defined() {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    let mut defined = 0;
    for p in [3, 5] {
        for _ in 0..200 {
            let g = common::prime_power_graph(&mut rng, 6, p, 4);
            match core_torsion_relation(&g, p) {
                Ok(n) => {
                    assert_eq!(n, common::torsion_exponent(&g, p), "{}", gcoh::io::graph_to_json(&g));
                    defined += 1;
                }
                Err(Error::NotApplicable(_)) => {}
                Err(e) => panic!("{e}"),
            }
        }
    }
    assert!(defined > 20);
}

#[test]
fn spanning_tree_examples() {
    let sq = cycle4([3, 3, 3, 3]);
    let t = weighted_spanning_tree(&sq, &sq.full(), 3).unwrap();
    // All edges have valuation 2, so the largest edge in label order goes.
    assert_eq!(t.edge_labels(&sq), ["a~b", "a~d", "b~c"]);
    let rows = common::d0_rows(&sq);
    let f = common::invariant_factors(&rows);
    assert_eq!(f.iter().map(|x| x.to_string()).collect::<Vec<_>>(), ["3", "3", "3"]);
    assert_eq!(oriented_torsion_exponent(&sq, &sq.full(), 3).unwrap(), 3);
    assert_eq!(common::torsion_exponent(&sq, 3), 3);

    // A path with a chord of strictly largest valuation.
    let g = cycle4([9, 1, 1, 27]);
    let t = weighted_spanning_tree(&g, &g.full(), 3).unwrap();
    assert_eq!(t.edge_labels(&g), ["a~b", "b~c", "c~d"]);
    assert!(g.edge_valuations(3).iter().max() == Some(&5));
    assert_eq!(oriented_torsion_exponent(&g, &g.full(), 3).unwrap(), common::torsion_exponent(&g, 3));

    let path = WeightedGraph::from_u64(&[("R", 27), ("G", 1), ("B", 3)], &[("R", "G"), ("G", "B")]).unwrap();
    assert_eq!(weighted_spanning_tree(&path, &path.full(), 3).unwrap(), path.full());
    assert_eq!(oriented_torsion_exponent(&path, &path.full(), 3).unwrap(), 0);
    assert_eq!(common::torsion_exponent(&path, 3), 0);
}

#[test]
fn spanning_tree_exponent_matches_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(25);
    let mut checked = 0;
    for p in [3, 5] {
        for _ in 0..300 {
            let g = common::prime_power_graph(&mut rng, 6, p, 3);
            let Ok(n) = oriented_torsion_exponent(&g, &g.full(), p) else { continue };
            assert_eq!(n, common::torsion_exponent(&g, p), "{}", gcoh::io::graph_to_json(&g));
            checked += 1;
        }
    }
    assert!(checked > 50, "only {checked} instances met the precondition");
}
