//! The fundamental forest of a weighted graph at a prime `p`, and the
//! small chain complex built from it.

mod complex;
mod dot;
mod restrict;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::graph::{
    bipartition, check_prime, components, edge_boundary, reduce, reduced_bipartition_signs, Subgraph, WeightedGraph,
};
use crate::orientation::is_orientable;
use crate::{Error, Result};

pub use complex::{
    chi, chi_image_torsion_order, complex_cohomology, fundamental_complex, ChiMaps, FundamentalComplex, Generator,
    GeneratorKind,
};
pub use dot::to_dot;
pub use restrict::{restrict, Restriction};

/// `r(Delta)`: the top level of a forest graph, infinite for bipartite
/// components of the whole graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum RSup {
    Finite(u32),
    Infinite,
}

impl RSup {
    pub fn finite(self) -> Option<u32> {
        match self {
            RSup::Finite(r) => Some(r),
            RSup::Infinite => None,
        }
    }
}

impl fmt::Display for RSup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RSup::Finite(r) => write!(f, "{r}"),
            RSup::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ForestNode {
    /// Index into [`FundamentalForest::subgraphs`].
    pub graph: usize,
    pub level: u32,
    pub m: u32,
    pub r_sup: RSup,
}

#[derive(Debug, Clone)]
pub struct FundamentalForest {
    graph: WeightedGraph,
    prime: u64,
    horizon: u32,
    vertex_vals: Vec<u32>,
    edge_vals: Vec<u32>,
    subgraphs: Vec<Subgraph>,
    sub_m: Vec<u32>,
    sub_lowest: Vec<u32>,
    sub_rsup: Vec<RSup>,
    sub_bipartite_component: Vec<bool>,
    nodes: Vec<ForestNode>,
    node_at: BTreeMap<(usize, u32), usize>,
    s_map: Vec<Option<usize>>,
    b_map: Vec<usize>,
    min_set: Vec<usize>,
    min0: Vec<usize>,
    max0: Vec<usize>,
    t_map: BTreeMap<usize, usize>,
    witness: BTreeMap<usize, usize>,
    signs: Vec<i8>,
}

fn min_valuation(d: &Subgraph, kv: &[u32]) -> u32 {
    d.vertices().iter().map(|&v| kv[v]).min().expect("nonempty subgraph")
}

/// Smallest vertex of `d` realizing its minimal valuation.
fn witness_vertex(d: &Subgraph, kv: &[u32]) -> usize {
    let m = min_valuation(d, kv);
    *d.vertices().iter().find(|&&v| kv[v] == m).unwrap()
}

// At p = 2 the gcd condition of the orientation test is dropped: it is not
// invariant under rescaling all weights by 2, and with it the torsion count
// comes out one short on odd cycles whose weights are all even.
fn forest_orientable(g: &WeightedGraph, comp: &Subgraph, p: u64, r: u32, ke: &[u32]) -> bool {
    if p == 2 {
        bipartition(g, comp).is_some() || reduced_bipartition_signs(g, comp, ke, r - 1).is_some()
    } else {
        is_orientable(g, comp, p, r).orientable
    }
}

/// Builds the fundamental forest of `g` at `p`.
pub fn build_forest(g: &WeightedGraph, p: u64) -> Result<FundamentalForest> {
    check_prime(p)?;
    let kv = g.vertex_valuations(p);
    let ke = g.edge_valuations(p);
    // Edge valuations alone would miss isolated vertices of high valuation.
    let horizon = if g.vertex_count() == 0 { 0 } else { ke.iter().chain(&kv).copied().max().unwrap() + 1 };

    let mut subgraphs: Vec<Subgraph> = Vec::new();
    let mut sub_index: BTreeMap<Subgraph, usize> = BTreeMap::new();
    let mut nodes: Vec<ForestNode> = Vec::new();
    let mut node_at = BTreeMap::new();
    for r in 1..=horizon {
        for comp in components(g, &reduce(g, p, r)) {
            let m = min_valuation(&comp, &kv);
            if m >= r || !forest_orientable(g, &comp, p, r, &ke) {
                continue;
            }
            let id = *sub_index.entry(comp.clone()).or_insert_with(|| {
                subgraphs.push(comp.clone());
                subgraphs.len() - 1
            });
            node_at.insert((id, r), nodes.len());
            nodes.push(ForestNode { graph: id, level: r, m, r_sup: RSup::Infinite });
        }
    }

    let k = subgraphs.len();
    let sub_m: Vec<u32> = subgraphs.iter().map(|d| min_valuation(d, &kv)).collect();
    let mut sub_lowest = vec![u32::MAX; k];
    let mut sub_top = vec![0; k];
    for n in &nodes {
        sub_lowest[n.graph] = sub_lowest[n.graph].min(n.level);
        sub_top[n.graph] = sub_top[n.graph].max(n.level);
    }
    let sub_bipartite_component: Vec<bool> = subgraphs
        .iter()
        .map(|d| edge_boundary(d, g).is_empty() && bipartition(g, d).is_some())
        .collect();
    let sub_rsup: Vec<RSup> = (0..k)
        .map(|i| if sub_bipartite_component[i] { RSup::Infinite } else { RSup::Finite(sub_top[i]) })
        .collect();
    for n in nodes.iter_mut() {
        n.r_sup = sub_rsup[n.graph];
    }

    // s: step down one level along the witness vertex
    let mut comp_of_level: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    let mut s_map = vec![None; nodes.len()];
    for (i, n) in nodes.iter().enumerate() {
        if n.level == n.m + 1 {
            continue;
        }
        let w = witness_vertex(&subgraphs[n.graph], &kv);
        let lvl = n.level - 1;
        let owner = comp_of_level.entry(lvl).or_insert_with(|| {
            let mut owner = vec![usize::MAX; g.vertex_count()];
            for c in components(g, &reduce(g, p, lvl)) {
                if let Some(&id) = sub_index.get(&c) {
                    for &v in c.vertices() {
                        owner[v] = id;
                    }
                }
            }
            owner
        });
        let target = owner[w];
        let j = if target == usize::MAX { None } else { node_at.get(&(target, lvl)).copied() };
        match j {
            Some(j) => s_map[i] = Some(j),
            None => {
                return Err(Error::Invariant(format!(
                    "no forest node below ({}, {})",
                    subgraphs[n.graph].label(g),
                    n.level
                )))
            }
        }
    }
    let mut b_map = vec![0; nodes.len()];
    for i in 0..nodes.len() {
        let mut x = i;
        while let Some(y) = s_map[x] {
            x = y;
        }
        b_map[i] = x;
    }
    let min_set: Vec<usize> = (0..nodes.len()).filter(|&i| s_map[i].is_none()).collect();
    let infinite_roots: Vec<usize> = (0..nodes.len())
        .filter(|&i| sub_bipartite_component[nodes[i].graph])
        .map(|i| b_map[i])
        .collect();
    let min0: Vec<usize> = min_set.iter().copied().filter(|a| !infinite_roots.contains(a)).collect();
    let mut t_map = BTreeMap::new();
    for &a in &min0 {
        let top = (0..nodes.len())
            .filter(|&i| b_map[i] == a)
            .max_by_key(|&i| nodes[i].level)
            .unwrap();
        t_map.insert(a, top);
    }
    let max0: Vec<usize> = t_map.values().copied().collect();
    let mut witness = BTreeMap::new();
    for &a in &min_set {
        let d = nodes[a].graph;
        witness.insert(d, witness_vertex(&subgraphs[d], &kv));
    }

    let mut forest = FundamentalForest {
        graph: g.clone(),
        prime: p,
        horizon,
        vertex_vals: kv,
        edge_vals: ke,
        subgraphs,
        sub_m,
        sub_lowest,
        sub_rsup,
        sub_bipartite_component,
        nodes,
        node_at,
        s_map,
        b_map,
        min_set,
        min0,
        max0,
        t_map,
        witness,
        signs: Vec::new(),
    };
    forest.signs = forest.global_signs();
    Ok(forest)
}

impl FundamentalForest {
    pub fn graph(&self) -> &WeightedGraph {
        &self.graph
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    /// Levels `1..=horizon` were materialized.
    pub fn horizon(&self) -> u32 {
        self.horizon
    }

    pub fn vertex_valuations(&self) -> &[u32] {
        &self.vertex_vals
    }

    pub fn edge_valuations(&self) -> &[u32] {
        &self.edge_vals
    }

    /// The set `S` of graphs occurring in the forest.
    pub fn subgraphs(&self) -> &[Subgraph] {
        &self.subgraphs
    }

    pub fn subgraph(&self, i: usize) -> &Subgraph {
        &self.subgraphs[i]
    }

    pub fn find_subgraph(&self, d: &Subgraph) -> Option<usize> {
        self.subgraphs.iter().position(|x| x == d)
    }

    pub fn nodes(&self) -> &[ForestNode] {
        &self.nodes
    }

    pub fn node(&self, i: usize) -> &ForestNode {
        &self.nodes[i]
    }

    pub fn node_index(&self, graph: usize, level: u32) -> Option<usize> {
        self.node_at.get(&(graph, level)).copied()
    }

    pub fn m(&self, d: usize) -> u32 {
        self.sub_m[d]
    }

    pub fn r(&self, d: usize) -> RSup {
        self.sub_rsup[d]
    }

    /// `r^L(Delta)`: one below the lowest level at which `Delta` occurs.
    pub fn r_lower(&self, d: usize) -> u32 {
        self.sub_lowest[d] - 1
    }

    /// Whether `Delta` is the graph of a minimal node.
    pub fn is_minimal_graph(&self, d: usize) -> bool {
        self.sub_lowest[d] == self.sub_m[d] + 1
    }

    /// Bipartite components of the whole graph; these carry no `alpha_1`.
    pub fn is_bipartite_component(&self, d: usize) -> bool {
        self.sub_bipartite_component[d]
    }

    /// `Phi(Delta)`: graphs of the nodes at level `r^L(Delta)` inside `Delta`.
    pub fn phi(&self, d: usize) -> Vec<usize> {
        if self.is_minimal_graph(d) {
            return Vec::new();
        }
        let lvl = self.r_lower(d);
        let outer = &self.subgraphs[d];
        self.nodes
            .iter()
            .filter(|n| n.level == lvl && self.subgraphs[n.graph].vertices().iter().all(|&v| outer.contains_vertex(v)))
            .map(|n| n.graph)
            .collect()
    }

    pub fn s(&self, node: usize) -> Option<usize> {
        self.s_map[node]
    }

    pub fn b(&self, node: usize) -> usize {
        self.b_map[node]
    }

    pub fn min_set(&self) -> &[usize] {
        &self.min_set
    }

    pub fn min0(&self) -> &[usize] {
        &self.min0
    }

    pub fn max0(&self) -> &[usize] {
        &self.max0
    }

    pub fn t(&self, min_node: usize) -> Option<usize> {
        self.t_map.get(&min_node).copied()
    }

    /// Witness vertex of each minimal graph.
    pub fn witness(&self) -> &BTreeMap<usize, usize> {
        &self.witness
    }

    /// Nodes whose `B`-image lies in `Min^0`.
    pub fn h0_nodes(&self) -> Vec<usize> {
        (0..self.nodes.len()).filter(|&i| self.min0.contains(&self.b_map[i])).collect()
    }

    /// Nodes that are not `s^n`-images for every `n`. Nodes on the chains
    /// below bipartite components are, since those chains never end.
    pub fn nodes_outside_stable_image(&self) -> Vec<usize> {
        let mut in_image = vec![false; self.nodes.len()];
        for (i, n) in self.nodes.iter().enumerate() {
            if self.sub_bipartite_component[n.graph] {
                let mut x = Some(i);
                while let Some(y) = x {
                    in_image[y] = true;
                    x = self.s_map[y];
                }
            }
        }
        (0..self.nodes.len()).filter(|&i| !in_image[i]).collect()
    }

    /// Exponents `level(T(a)) - m(a)` over `a` in `Min^0`, ascending.
    pub fn torsion_structure(&self) -> Vec<u32> {
        let mut e: Vec<u32> = self
            .min0
            .iter()
            .map(|&a| self.nodes[self.t_map[&a]].level - self.nodes[a].m)
            .collect();
        e.sort_unstable();
        e
    }

    /// Maximal elements of `S` under inclusion.
    pub fn maximal_subgraphs(&self) -> Vec<usize> {
        (0..self.subgraphs.len())
            .filter(|&i| {
                !(0..self.subgraphs.len())
                    .any(|j| j != i && self.subgraphs[i].is_subgraph_of(&self.subgraphs[j]))
            })
            .collect()
    }

    /// One sign function for every fundamental chain: the normalized
    /// bipartition of each maximal graph (of its reduction one level down
    /// when it is not bipartite), `+1` elsewhere.
    fn global_signs(&self) -> Vec<i8> {
        let g = &self.graph;
        let mut signs = vec![1i8; g.vertex_count()];
        for d in self.maximal_subgraphs() {
            let sub = &self.subgraphs[d];
            let a = match bipartition(g, sub) {
                Some(a) => a.signs().to_vec(),
                None => {
                    let top = self.sub_lowest[d];
                    reduced_bipartition_signs(g, sub, &self.edge_vals, top - 1)
                        .expect("orientable maximal graph has a bipartite reduction")
                }
            };
            for &v in sub.vertices() {
                signs[v] = a[v];
            }
        }
        signs
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn label(&self, d: usize) -> String {
        self.subgraphs[d].label(&self.graph)
    }

    /// Label that also names edges, unique within the forest.
    pub fn full_label(&self, d: usize) -> String {
        let sub = &self.subgraphs[d];
        let edges = sub.edge_labels(&self.graph);
        if edges.is_empty() {
            sub.label(&self.graph)
        } else {
            format!("{{{}|{}}}", sub.vertex_ids(&self.graph).join(","), edges.join(","))
        }
    }

    pub fn node_label(&self, i: usize) -> String {
        let n = &self.nodes[i];
        format!("({}, {})", self.label(n.graph), n.level)
    }

    pub fn report(&self) -> ForestReport {
        let node_report = |i: usize| {
            let n = &self.nodes[i];
            NodeReport {
                vertices: self.subgraphs[n.graph].vertex_ids(&self.graph).iter().map(|s| s.to_string()).collect(),
                edges: self.subgraphs[n.graph].edge_labels(&self.graph),
                level: n.level,
                m: n.m,
                r_sup: n.r_sup,
            }
        };
        ForestReport {
            prime: self.prime,
            horizon: self.horizon,
            nodes: (0..self.nodes.len()).map(node_report).collect(),
            min0: self.min0.iter().map(|&i| self.node_label(i)).collect(),
            max0: self.max0.iter().map(|&i| self.node_label(i)).collect(),
            infinite_components: (0..self.subgraphs.len())
                .filter(|&d| self.sub_bipartite_component[d])
                .map(|d| self.label(d))
                .collect(),
            torsion_exponents: self.torsion_structure(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeReport {
    pub vertices: Vec<String>,
    pub edges: Vec<String>,
    pub level: u32,
    pub m: u32,
    pub r_sup: RSup,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForestReport {
    pub prime: u64,
    pub horizon: u32,
    pub nodes: Vec<NodeReport>,
    pub min0: Vec<String>,
    pub max0: Vec<String>,
    pub infinite_components: Vec<String>,
    pub torsion_exponents: Vec<u32>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::cohomology_groups;

    fn k3() -> WeightedGraph {
        WeightedGraph::from_u64(&[("R", 27), ("G", 1), ("B", 3)], &[("R", "G"), ("R", "B"), ("G", "B")]).unwrap()
    }

    #[test]
    fn k3_nodes() {
        let g = k3();
        let f = build_forest(&g, 3).unwrap();
        let labels: Vec<String> = (0..f.nodes().len()).map(|i| f.node_label(i)).collect();
        assert_eq!(labels, vec!["({G}, 1)", "({B,G}, 2)", "({B,G}, 3)", "({B,G,R}, 4)"]);
        let path = f.subgraph(f.nodes()[3].graph);
        assert_eq!(path.edge_labels(&g), vec!["B~G", "G~R"]);
        assert_eq!(f.min0().iter().map(|&i| f.node_label(i)).collect::<Vec<_>>(), vec!["({G}, 1)"]);
        assert_eq!(f.max0().iter().map(|&i| f.node_label(i)).collect::<Vec<_>>(), vec!["({B,G,R}, 4)"]);
        assert_eq!(f.t(0), Some(3));
        assert_eq!(f.torsion_structure(), vec![4]);
        assert_eq!(f.r(1), RSup::Finite(3));
        assert_eq!(f.r_lower(1), 1);
        assert_eq!(f.phi(1), vec![0]);
        assert_eq!(f.witness().get(&0), Some(&g.index_of("G").unwrap()));
    }

    #[test]
    fn unit_triangle_is_empty() {
        let t = WeightedGraph::from_u64(&[("a", 1), ("b", 1), ("c", 1)], &[("a", "b"), ("a", "c"), ("b", "c")]).unwrap();
        for p in [3, 5, 7] {
            let f = build_forest(&t, p).unwrap();
            assert!(f.nodes().is_empty());
            assert!(f.torsion_structure().is_empty());
        }
    }

    #[test]
    fn disjoint_union_doubles() {
        let g = k3();
        let u = g.disjoint_union(&g, "'").unwrap();
        assert_eq!(build_forest(&u, 3).unwrap().torsion_structure(), vec![4, 4]);
    }

    #[test]
    fn bipartite_components_are_infinite() {
        let e = WeightedGraph::from_u64(&[("u", 9), ("v", 3)], &[("u", "v")]).unwrap();
        let f = build_forest(&e, 3).unwrap();
        let top = f.find_subgraph(&e.full()).unwrap();
        assert_eq!(f.r(top), RSup::Infinite);
        let u_alone = f.node_index(f.find_subgraph(&Subgraph::from_ids(&e, &["u"], &[]).unwrap()).unwrap(), 3).unwrap();
        assert_eq!(f.min0(), &[u_alone]);
        assert_eq!(f.torsion_structure(), vec![1]);
        assert_eq!(cohomology_groups(&e, &e.full()).1.p_exponents(3), vec![1]);
    }

    #[test]
    fn s_map_invariants() {
        let g = k3();
        let f = build_forest(&g, 3).unwrap();
        for (i, n) in f.nodes().iter().enumerate() {
            assert!(n.m < n.level);
            if let Some(j) = f.s(i) {
                let t = f.node(j);
                assert_eq!(t.level + 1, n.level);
                assert_eq!(t.m, n.m);
                assert!(f.subgraph(t.graph).is_subgraph_of(f.subgraph(n.graph)));
            }
        }
    }
}
