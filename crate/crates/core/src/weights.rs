//! Closed formulas for the torsion as the weights vary: trees, the edge
//! weighted complex, the oriented core and weighted spanning trees.

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::cohomology::{cohomology_groups, d0_edge_matrix, torsion_order_p};
use crate::forest::{build_forest, RSup};
use crate::graph::{bipartition, check_prime, components, is_bipartite, Subgraph, WeightedGraph};
use crate::linalg::cokernel_structure;
use crate::orientation::is_orientable;
use crate::{Error, Result};

fn is_connected_sub(g: &WeightedGraph, d: &Subgraph) -> bool {
    components(g, d).len() == 1
}

fn valence(g: &WeightedGraph, d: &Subgraph, v: usize) -> usize {
    g.neighbours(v).iter().filter(|&&(_, e)| d.contains_edge(e)).count()
}

pub fn is_tree(g: &WeightedGraph, d: &Subgraph) -> bool {
    is_connected_sub(g, d) && d.edges().len() + 1 == d.vertices().len()
}

/// `gcd(k) * prod k_v^(u(v) - 1)` for a tree, `u` the valence.
pub fn tree_torsion(g: &WeightedGraph, d: &Subgraph) -> Result<BigUint> {
    if !is_tree(g, d) {
        return Err(Error::Precondition("tree formula needs a tree".into()));
    }
    let mut num = d.weight_gcd(g);
    let mut den = BigUint::one();
    for &v in d.vertices() {
        match valence(g, d, v) {
            0 => den *= g.weight(v),
            u => num *= g.weight(v).pow(u as u32 - 1),
        }
    }
    Ok(num / den)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeConstants {
    #[serde(with = "crate::io::decimal")]
    pub c0: BigUint,
    #[serde(with = "crate::io::decimal")]
    pub c1: BigUint,
    #[serde(with = "crate::io::decimal")]
    pub c2: BigUint,
}

impl EdgeConstants {
    /// `C0 * C2 / C1`, which is the order of the torsion of `H^1`.
    pub fn torsion_order(&self) -> BigUint {
        &self.c0 * &self.c2 / &self.c1
    }
}

/// `C0` is the product of the weight gcds of the bipartite components,
/// `C1 = prod k_v`, and `C2` the torsion order of the edge weighted complex.
pub fn edge_weighted_constants(g: &WeightedGraph, d: &Subgraph) -> EdgeConstants {
    let mut c0 = BigUint::one();
    for comp in components(g, d) {
        if is_bipartite(g, &comp) {
            c0 *= comp.weight_gcd(g);
        }
    }
    let c1 = d.vertices().iter().map(|&v| g.weight(v)).product();
    let c2 = cokernel_structure(&d0_edge_matrix(g, d)).torsion_order();
    EdgeConstants { c0, c1, c2 }
}

/// Number of pairs `(Delta, r)` satisfying the forest conditions except the
/// one on single vertices: forest nodes plus `sum val_p(k_v)`.
pub fn hbe_count(g: &WeightedGraph, p: u64) -> Result<u64> {
    check_prime(p)?;
    if components(g, &g.full()).iter().any(|c| is_bipartite(g, c)) {
        return Err(Error::Precondition("a bipartite component contributes infinitely many pairs".into()));
    }
    let f = build_forest(g, p)?;
    let vals: u64 = g.vertex_valuations(p).iter().map(|&k| k as u64).sum();
    Ok(f.nodes().len() as u64 + vals)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoreComponent {
    pub graph: Subgraph,
    pub r: RSup,
    pub m: u32,
    pub bipartite: bool,
    /// Vertex covered by no maximal forest element.
    pub non_forest: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoreDecomposition {
    pub core: Subgraph,
    pub special_edges: Vec<usize>,
    pub components: Vec<CoreComponent>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoreComponentReport {
    pub vertices: Vec<String>,
    pub edges: Vec<String>,
    pub r: RSup,
    pub m: u32,
    pub bipartite: bool,
    pub non_forest: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoreReport {
    pub edges: Vec<String>,
    pub special_edges: Vec<String>,
    pub components: Vec<CoreComponentReport>,
}

impl CoreDecomposition {
    pub fn covers_all(&self) -> bool {
        self.components.iter().all(|c| !c.non_forest)
    }

    pub fn report(&self, g: &WeightedGraph) -> CoreReport {
        CoreReport {
            edges: self.core.edge_labels(g),
            special_edges: self.special_edges.iter().map(|&e| g.edge_label(e)).collect(),
            components: self
                .components
                .iter()
                .map(|c| CoreComponentReport {
                    vertices: c.graph.vertex_ids(g).iter().map(|s| s.to_string()).collect(),
                    edges: c.graph.edge_labels(g),
                    r: c.r,
                    m: c.m,
                    bipartite: c.bipartite,
                    non_forest: c.non_forest,
                })
                .collect(),
        }
    }
}

/// Disjoint union of the graphs of the maximal forest elements, padded with
/// the uncovered vertices.
pub fn oriented_core(g: &WeightedGraph, p: u64) -> Result<CoreDecomposition> {
    let f = build_forest(g, p)?;
    let kv = g.vertex_valuations(p);
    let ke = g.edge_valuations(p);
    let mut comps = Vec::new();
    let mut covered = vec![false; g.vertex_count()];
    let mut special = Vec::new();
    for d in f.maximal_subgraphs() {
        let sub = f.subgraph(d).clone();
        for &v in sub.vertices() {
            covered[v] = true;
        }
        let bip = bipartition(g, &sub).is_some();
        if p == 2 && !bip {
            let top = sub.edges().iter().map(|&e| ke[e]).max().unwrap_or(0);
            special.extend(sub.edges().iter().copied().filter(|&e| ke[e] == top));
        }
        comps.push(CoreComponent { graph: sub, r: f.r(d), m: f.m(d), bipartite: bip, non_forest: false });
    }
    for v in 0..g.vertex_count() {
        if !covered[v] {
            comps.push(CoreComponent {
                graph: Subgraph::new(g, vec![v], vec![])?,
                r: RSup::Finite(0),
                m: kv[v],
                bipartite: true,
                non_forest: true,
            });
        }
    }
    comps.sort_by(|a, b| a.graph.vertices()[0].cmp(&b.graph.vertices()[0]));
    let vs = (0..g.vertex_count()).collect();
    let es = comps.iter().flat_map(|c| c.graph.edges().iter().copied()).collect();
    special.sort_unstable();
    Ok(CoreDecomposition { core: Subgraph::new(g, vs, es)?, special_edges: special, components: comps })
}

/// `val_p t(core) + sum (r_i - m_i)` over the bipartite core components.
/// Only defined for connected, non-bipartite graphs covered by the forest.
pub fn core_torsion_relation(g: &WeightedGraph, p: u64) -> Result<u32> {
    check_prime(p)?;
    if !g.is_connected() || is_bipartite(g, &g.full()) {
        return Err(Error::NotApplicable("needs a connected graph that is not bipartite".into()));
    }
    let core = oriented_core(g, p)?;
    if !core.covers_all() {
        return Err(Error::NotApplicable("some vertex lies in no maximal forest element".into()));
    }
    let mut n = torsion_order_p(g, &core.core, p);
    for c in core.components.iter().filter(|c| c.bipartite) {
        let r = c.r.finite().ok_or_else(|| Error::Invariant("core component of a connected graph is unbounded".into()))?;
        n += r - c.m;
    }
    Ok(n)
}

/// Largest `r` at which `u` and `v` lie in different components of
/// `red_{p^r}(d)`, for every pair; `None` when they are never joined.
pub fn separation_levels(g: &WeightedGraph, d: &Subgraph, p: u64) -> Vec<Vec<Option<u32>>> {
    let ke = g.edge_valuations(p);
    let n = g.vertex_count();
    // joined at r iff a path uses only edges of valuation < r, i.e. the
    // minimax path valuation is < r; so q = minimax valuation
    let mut best: Vec<Vec<Option<u32>>> = vec![vec![None; n]; n];
    for &v in d.vertices() {
        best[v][v] = Some(0);
    }
    for &e in d.edges() {
        let (a, b) = g.edge(e);
        let w = Some(ke[e]);
        if best[a][b].is_none_or(|x| ke[e] < x) {
            best[a][b] = w;
            best[b][a] = w;
        }
    }
    let vs = d.vertices();
    for &k in vs {
        for &i in vs {
            for &j in vs {
                if let (Some(x), Some(y)) = (best[i][k], best[k][j]) {
                    let m = x.max(y);
                    if best[i][j].is_none_or(|z| m < z) {
                        best[i][j] = Some(m);
                    }
                }
            }
        }
    }
    best
}

fn check_oriented(g: &WeightedGraph, d: &Subgraph, p: u64) -> Result<()> {
    check_prime(p)?;
    if !is_connected_sub(g, d) {
        return Err(Error::Precondition("graph must be connected".into()));
    }
    let ke = g.edge_valuations(p);
    let r = d.edges().iter().map(|&e| ke[e]).max().map_or(1, |x| x + 1);
    if !is_orientable(g, d, p, r).orientable {
        return Err(Error::Precondition(format!("not Z/{p}^{r}-orientable")));
    }
    if p == 2 && !is_bipartite(g, d) {
        return Err(Error::NotApplicable("spanning tree formula needs a bipartite graph at p = 2".into()));
    }
    Ok(())
}

/// Repeatedly deletes a cycle edge of largest valuation (ties: the largest
/// edge in id order) until a spanning tree is left.
pub fn weighted_spanning_tree(g: &WeightedGraph, d: &Subgraph, p: u64) -> Result<Subgraph> {
    check_oriented(g, d, p)?;
    let ke = g.edge_valuations(p);
    let mut t = d.clone();
    while t.edges().len() + 1 > t.vertices().len() {
        let on_cycle = t
            .edges()
            .iter()
            .copied()
            .filter(|&e| is_connected_sub(g, &t.without_edge(e)))
            .max_by_key(|&e| (ke[e], e))
            .expect("a graph with too many edges has a cycle");
        t = t.without_edge(on_cycle);
    }
    Ok(t)
}

/// `min_v k_v + sum_v (u(v) - 1) k_v` with valences from the weighted
/// spanning tree and `k_v = val_p`.
pub fn oriented_torsion_exponent(g: &WeightedGraph, d: &Subgraph, p: u64) -> Result<u32> {
    let t = weighted_spanning_tree(g, d, p)?;
    let kv = g.vertex_valuations(p);
    let min = t.vertices().iter().map(|&v| kv[v] as i64).min().unwrap_or(0);
    let sum: i64 = t.vertices().iter().map(|&v| (valence(g, &t, v) as i64 - 1) * kv[v] as i64).sum();
    Ok((min + sum) as u32)
}

/// `|torsion H^1|` straight from the Smith form, for comparison.
pub fn torsion_order(g: &WeightedGraph, d: &Subgraph) -> BigUint {
    cohomology_groups(g, d).1.torsion_order()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k3() -> WeightedGraph {
        WeightedGraph::from_u64(&[("R", 27), ("G", 1), ("B", 3)], &[("R", "G"), ("R", "B"), ("G", "B")]).unwrap()
    }

    fn snf_torsion(g: &WeightedGraph) -> BigUint {
        torsion_order(g, &g.full())
    }

    #[test]
    fn tree_examples() {
        let v = WeightedGraph::from_u64(&[("x", 7)], &[]).unwrap();
        assert_eq!(tree_torsion(&v, &v.full()).unwrap(), BigUint::one());
        let e = WeightedGraph::from_u64(&[("a", 4), ("b", 6)], &[("a", "b")]).unwrap();
        assert_eq!(tree_torsion(&e, &e.full()).unwrap(), BigUint::from(2u32));
        let star = WeightedGraph::from_u64(&[("c", 2), ("x", 3), ("y", 4), ("z", 5)], &[("c", "x"), ("c", "y"), ("c", "z")])
            .unwrap();
        assert_eq!(tree_torsion(&star, &star.full()).unwrap(), BigUint::from(4u32));
        assert_eq!(snf_torsion(&star), BigUint::from(4u32));
        assert!(matches!(tree_torsion(&k3(), &k3().full()), Err(Error::Precondition(_))));
    }

    #[test]
    fn edge_constants() {
        let t = WeightedGraph::from_u64(&[("a", 1), ("b", 1), ("c", 1)], &[("a", "b"), ("a", "c"), ("b", "c")]).unwrap();
        let c = edge_weighted_constants(&t, &t.full());
        assert_eq!((c.c0, c.c1, c.c2), (BigUint::one(), BigUint::one(), BigUint::from(2u32)));
        let e = WeightedGraph::from_u64(&[("a", 4), ("b", 6)], &[("a", "b")]).unwrap();
        let c = edge_weighted_constants(&e, &e.full());
        assert_eq!((c.c0.clone(), c.c1.clone(), c.c2.clone()), (BigUint::from(2u32), BigUint::from(24u32), BigUint::from(24u32)));
        assert_eq!(c.torsion_order(), snf_torsion(&e));
        let c = edge_weighted_constants(&k3(), &k3().full());
        assert_eq!(c.c1, BigUint::from(81u32));
        assert_eq!(c.c2, BigUint::from(2u32 * 6561));
        assert_eq!(c.torsion_order(), BigUint::from(162u32));
    }

    #[test]
    fn hbe_examples() {
        assert_eq!(hbe_count(&k3(), 3).unwrap(), 8);
        let t = WeightedGraph::from_u64(&[("a", 1), ("b", 1), ("c", 1)], &[("a", "b"), ("a", "c"), ("b", "c")]).unwrap();
        assert_eq!(hbe_count(&t, 3).unwrap(), 0);
        let t3 = WeightedGraph::from_u64(&[("a", 3), ("b", 1), ("c", 1)], &[("a", "b"), ("a", "c"), ("b", "c")]).unwrap();
        let nodes = build_forest(&t3, 3).unwrap().nodes().len() as u64;
        assert_eq!(hbe_count(&t3, 3).unwrap(), nodes + 1);
        let c2 = edge_weighted_constants(&t3, &t3.full()).c2;
        assert_eq!(hbe_count(&t3, 3).unwrap(), crate::graph::p_valuation(&c2, 3) as u64);
        let e = WeightedGraph::from_u64(&[("a", 3), ("b", 1)], &[("a", "b")]).unwrap();
        assert!(matches!(hbe_count(&e, 3), Err(Error::Precondition(_))));
    }

    #[test]
    fn core_examples() {
        let g = k3();
        let core = oriented_core(&g, 3).unwrap();
        assert_eq!(core.core.edge_labels(&g), vec!["B~G".to_string(), "G~R".to_string()]);
        assert_eq!(core.components.len(), 1);
        assert!(core.special_edges.is_empty());
        assert_eq!(core_torsion_relation(&g, 3).unwrap(), 4);

        let t = WeightedGraph::from_u64(&[("a", 1), ("b", 1), ("c", 1)], &[("a", "b"), ("a", "c"), ("b", "c")]).unwrap();
        let core = oriented_core(&t, 3).unwrap();
        assert_eq!(core.components.len(), 3);
        assert!(core.components.iter().all(|c| c.non_forest));
        assert!(matches!(core_torsion_relation(&t, 3), Err(Error::NotApplicable(_))));

        let t9 = WeightedGraph::from_u64(&[("a", 9), ("b", 1), ("c", 1)], &[("a", "b"), ("a", "c"), ("b", "c")]).unwrap();
        match core_torsion_relation(&t9, 3) {
            Ok(n) => assert_eq!(n, torsion_order_p(&t9, &t9.full(), 3)),
            Err(e) => assert!(matches!(e, Error::NotApplicable(_))),
        }

        let sq = WeightedGraph::from_u64(&[("a", 3), ("b", 1), ("c", 9), ("d", 1)], &[("a", "b"), ("b", "c"), ("c", "d"), ("a", "d")])
            .unwrap();
        let core = oriented_core(&sq, 3).unwrap();
        assert_eq!(core.core, sq.full());
        assert_eq!(core.components[0].r, RSup::Infinite);
    }

    #[test]
    fn core_special_edges_at_two() {
        let t = WeightedGraph::from_u64(&[("a", 2), ("b", 1), ("c", 1)], &[("a", "b"), ("a", "c"), ("b", "c")]).unwrap();
        let core = oriented_core(&t, 2).unwrap();
        assert_eq!(core.components.len(), 1);
        let labels: Vec<String> = core.special_edges.iter().map(|&e| t.edge_label(e)).collect();
        assert_eq!(labels, vec!["a~b".to_string(), "a~c".to_string()]);
    }

    #[test]
    fn spanning_trees() {
        let path = WeightedGraph::from_u64(&[("R", 27), ("G", 1), ("B", 3)], &[("R", "G"), ("G", "B")]).unwrap();
        assert_eq!(weighted_spanning_tree(&path, &path.full(), 3).unwrap(), path.full());
        assert_eq!(oriented_torsion_exponent(&path, &path.full(), 3).unwrap(), 0);

        let sq = WeightedGraph::from_u64(&[("a", 3), ("b", 3), ("c", 3), ("d", 3)], &[("a", "b"), ("b", "c"), ("c", "d"), ("a", "d")])
            .unwrap();
        let t = weighted_spanning_tree(&sq, &sq.full(), 3).unwrap();
        assert_eq!(t.edge_labels(&sq), vec!["a~b", "a~d", "b~c"]);
        assert_eq!(oriented_torsion_exponent(&sq, &sq.full(), 3).unwrap(), 3);
        assert_eq!(torsion_order_p(&sq, &sq.full(), 3), 3);

        // path a-b-c-d with chord a-d of strictly larger valuation
        let pc = WeightedGraph::from_u64(&[("a", 9), ("b", 1), ("c", 1), ("d", 9)], &[("a", "b"), ("b", "c"), ("c", "d"), ("a", "d")])
            .unwrap();
        let t = weighted_spanning_tree(&pc, &pc.full(), 3).unwrap();
        assert_eq!(t.edge_labels(&pc), vec!["a~b", "b~c", "c~d"]);
        let q_g = separation_levels(&pc, &pc.full(), 3);
        let q_t = separation_levels(&pc, &t, 3);
        assert_eq!(q_g, q_t);

        assert!(matches!(weighted_spanning_tree(&k3(), &k3().full(), 3), Err(Error::Precondition(_))));
    }
}
