//! Vertex-weighted simple graphs, subgraphs and p-adic valuations.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Largest `a` with `p^a | n`. `n` must be nonzero.
pub fn p_valuation(n: &BigUint, p: u64) -> u32 {
    assert!(!n.is_zero(), "valuation of zero");
    let p = BigUint::from(p);
    let mut n = n.clone();
    let mut a = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return a;
        }
        n = q;
        a += 1;
    }
}

/// Valuation of a signed integer; `None` stands for the valuation of zero.
pub fn p_valuation_int(n: &BigInt, p: u64) -> Option<u32> {
    if n.is_zero() {
        None
    } else {
        Some(p_valuation(n.magnitude(), p))
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// A simple graph with a positive integer weight on every vertex.
///
/// Vertices are kept sorted by identifier and addressed by their index in
/// that order. Edges are stored as `(a, b)` with `a < b`, sorted.
#[derive(Clone, PartialEq, Eq)]
pub struct WeightedGraph {
    ids: Vec<String>,
    weights: Vec<BigUint>,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<(usize, usize)>>,
}

impl fmt::Debug for WeightedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verts: Vec<String> = (0..self.vertex_count())
            .map(|v| format!("{}:{}", self.ids[v], self.weights[v]))
            .collect();
        let edges: Vec<String> = (0..self.edge_count()).map(|e| self.edge_label(e)).collect();
        write!(f, "WeightedGraph {{ vertices: [{}], edges: [{}] }}", verts.join(", "), edges.join(", "))
    }
}

impl WeightedGraph {
    pub fn new<I, S>(vertices: Vec<(I, BigUint)>, edges: Vec<(S, S)>) -> Result<Self>
    where
        I: Into<String>,
        S: AsRef<str>,
    {
        let mut verts: Vec<(String, BigUint)> = vertices.into_iter().map(|(i, w)| (i.into(), w)).collect();
        verts.sort_by(|a, b| a.0.cmp(&b.0));
        for pair in verts.windows(2) {
            if pair[0].0 == pair[1].0 {
                return Err(Error::InvalidGraph(format!("duplicate vertex `{}`", pair[0].0)));
            }
        }
        if let Some((id, _)) = verts.iter().find(|(_, w)| w.is_zero()) {
            return Err(Error::InvalidGraph(format!("vertex `{id}` has weight 0")));
        }
        let (ids, weights): (Vec<String>, Vec<BigUint>) = verts.into_iter().unzip();
        let index: BTreeMap<&str, usize> = ids.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        let mut pairs = Vec::with_capacity(edges.len());
        for (a, b) in &edges {
            let (a, b) = (a.as_ref(), b.as_ref());
            let ia = *index.get(a).ok_or_else(|| Error::InvalidGraph(format!("unknown vertex `{a}`")))?;
            let ib = *index.get(b).ok_or_else(|| Error::InvalidGraph(format!("unknown vertex `{b}`")))?;
            if ia == ib {
                return Err(Error::InvalidGraph(format!("loop at `{a}`")));
            }
            pairs.push((ia.min(ib), ia.max(ib)));
        }
        pairs.sort_unstable();
        for w in pairs.windows(2) {
            if w[0] == w[1] {
                return Err(Error::InvalidGraph(format!(
                    "multiple edge between `{}` and `{}`",
                    ids[w[0].0], ids[w[0].1]
                )));
            }
        }
        Ok(Self::from_parts(ids, weights, pairs))
    }

    /// Convenience constructor for small integer weights.
    pub fn from_u64(vertices: &[(&str, u64)], edges: &[(&str, &str)]) -> Result<Self> {
        Self::new(
            vertices.iter().map(|(i, w)| (i.to_string(), BigUint::from(*w))).collect(),
            edges.to_vec(),
        )
    }

    fn from_parts(ids: Vec<String>, weights: Vec<BigUint>, edges: Vec<(usize, usize)>) -> Self {
        let mut adjacency = vec![Vec::new(); ids.len()];
        for (e, &(a, b)) in edges.iter().enumerate() {
            adjacency[a].push((b, e));
            adjacency[b].push((a, e));
        }
        WeightedGraph { ids, weights, edges, adjacency }
    }

    pub fn vertex_count(&self) -> usize {
        self.ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn id(&self, v: usize) -> &str {
        &self.ids[v]
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn weight(&self, v: usize) -> &BigUint {
        &self.weights[v]
    }

    pub fn weights(&self) -> &[BigUint] {
        &self.weights
    }

    pub fn edge(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Neighbours of `v` as `(vertex, edge)` pairs.
    pub fn neighbours(&self, v: usize) -> &[(usize, usize)] {
        &self.adjacency[v]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.ids.binary_search_by(|x| x.as_str().cmp(id)).ok()
    }

    pub fn edge_index(&self, a: usize, b: usize) -> Option<usize> {
        let key = (a.min(b), a.max(b));
        self.edges.binary_search(&key).ok()
    }

    pub fn edge_between(&self, a: &str, b: &str) -> Option<usize> {
        self.edge_index(self.index_of(a)?, self.index_of(b)?)
    }

    pub fn edge_label(&self, e: usize) -> String {
        let (a, b) = self.edges[e];
        format!("{}~{}", self.ids[a], self.ids[b])
    }

    pub fn full(&self) -> Subgraph {
        Subgraph {
            vertices: (0..self.vertex_count()).collect(),
            edges: (0..self.edge_count()).collect(),
        }
    }

    /// Subgraph on `vertices` containing every edge of `self` between them.
    pub fn induced(&self, vertices: &[usize]) -> Subgraph {
        let mut mask = vec![false; self.vertex_count()];
        for &v in vertices {
            mask[v] = true;
        }
        let mut vs: Vec<usize> = vertices.to_vec();
        vs.sort_unstable();
        vs.dedup();
        let edges = (0..self.edge_count())
            .filter(|&e| mask[self.edges[e].0] && mask[self.edges[e].1])
            .collect();
        Subgraph { vertices: vs, edges }
    }

    /// The subgraph as a standalone weighted graph with the induced weights.
    pub fn restrict(&self, sub: &Subgraph) -> WeightedGraph {
        let mut remap = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in sub.vertices.iter().enumerate() {
            remap[v] = i;
        }
        let ids = sub.vertices.iter().map(|&v| self.ids[v].clone()).collect();
        let weights = sub.vertices.iter().map(|&v| self.weights[v].clone()).collect();
        let edges = sub
            .edges
            .iter()
            .map(|&e| {
                let (a, b) = self.edges[e];
                (remap[a], remap[b])
            })
            .collect();
        WeightedGraph::from_parts(ids, weights, edges)
    }

    /// Same graph with every weight replaced by its p-part.
    pub fn p_part(&self, p: u64) -> WeightedGraph {
        let weights = self
            .weights
            .iter()
            .map(|w| BigUint::from(p).pow(p_valuation(w, p)))
            .collect();
        WeightedGraph::from_parts(self.ids.clone(), weights, self.edges.clone())
    }

    pub fn with_weights(&self, weights: Vec<BigUint>) -> Result<WeightedGraph> {
        if weights.len() != self.vertex_count() {
            return Err(Error::Precondition("weight count mismatch".into()));
        }
        if weights.iter().any(|w| w.is_zero()) {
            return Err(Error::InvalidGraph("zero weight".into()));
        }
        Ok(WeightedGraph::from_parts(self.ids.clone(), weights, self.edges.clone()))
    }

    /// Disjoint union; identifiers of `other` get `suffix` appended.
    pub fn disjoint_union(&self, other: &WeightedGraph, suffix: &str) -> Result<WeightedGraph> {
        let mut vertices: Vec<(String, BigUint)> =
            self.ids.iter().cloned().zip(self.weights.iter().cloned()).collect();
        vertices.extend(
            other
                .ids
                .iter()
                .map(|i| format!("{i}{suffix}"))
                .zip(other.weights.iter().cloned()),
        );
        let mut edges: Vec<(String, String)> = self
            .edges
            .iter()
            .map(|&(a, b)| (self.ids[a].clone(), self.ids[b].clone()))
            .collect();
        edges.extend(
            other
                .edges
                .iter()
                .map(|&(a, b)| (format!("{}{suffix}", other.ids[a]), format!("{}{suffix}", other.ids[b]))),
        );
        WeightedGraph::new(vertices, edges)
    }

    pub fn vertex_valuations(&self, p: u64) -> Vec<u32> {
        self.weights.iter().map(|w| p_valuation(w, p)).collect()
    }

    pub fn edge_valuations(&self, p: u64) -> Vec<u32> {
        let kv = self.vertex_valuations(p);
        self.edges.iter().map(|&(a, b)| kv[a] + kv[b]).collect()
    }

    pub fn is_connected(&self) -> bool {
        components(self, &self.full()).len() <= 1
    }
}

/// Vertex and edge index sets into a parent [`WeightedGraph`].
///
/// Both lists are sorted. Operations on subgraphs take the parent graph
/// explicitly.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgraph {
    vertices: Vec<usize>,
    edges: Vec<usize>,
}

impl Subgraph {
    pub fn new(g: &WeightedGraph, mut vertices: Vec<usize>, mut edges: Vec<usize>) -> Result<Self> {
        vertices.sort_unstable();
        vertices.dedup();
        edges.sort_unstable();
        edges.dedup();
        if vertices.last().is_some_and(|&v| v >= g.vertex_count()) {
            return Err(Error::Precondition("vertex index out of range".into()));
        }
        for &e in &edges {
            if e >= g.edge_count() {
                return Err(Error::Precondition("edge index out of range".into()));
            }
            let (a, b) = g.edge(e);
            if vertices.binary_search(&a).is_err() || vertices.binary_search(&b).is_err() {
                return Err(Error::Precondition(format!(
                    "edge {} has an endpoint outside the vertex set",
                    g.edge_label(e)
                )));
            }
        }
        Ok(Subgraph { vertices, edges })
    }

    /// Build from vertex and edge identifiers.
    pub fn from_ids(g: &WeightedGraph, vertices: &[&str], edges: &[(&str, &str)]) -> Result<Self> {
        let vs = vertices
            .iter()
            .map(|v| g.index_of(v).ok_or_else(|| Error::Precondition(format!("unknown vertex `{v}`"))))
            .collect::<Result<Vec<_>>>()?;
        let es = edges
            .iter()
            .map(|(a, b)| {
                g.edge_between(a, b)
                    .ok_or_else(|| Error::Precondition(format!("unknown edge {a}~{b}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Subgraph::new(g, vs, es)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn edges(&self) -> &[usize] {
        &self.edges
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    pub fn contains_edge(&self, e: usize) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    pub fn is_subgraph_of(&self, other: &Subgraph) -> bool {
        self.vertices.iter().all(|&v| other.contains_vertex(v)) && self.edges.iter().all(|&e| other.contains_edge(e))
    }

    pub fn intersection(&self, other: &Subgraph) -> Subgraph {
        Subgraph {
            vertices: self.vertices.iter().copied().filter(|&v| other.contains_vertex(v)).collect(),
            edges: self.edges.iter().copied().filter(|&e| other.contains_edge(e)).collect(),
        }
    }

    /// The same subgraph indexed inside `outer.restrict(..)`, if it fits.
    pub fn relative_to(&self, outer: &Subgraph) -> Option<Subgraph> {
        let vertices = self.vertices.iter().map(|v| outer.vertices.binary_search(v).ok()).collect::<Option<_>>()?;
        let edges = self.edges.iter().map(|e| outer.edges.binary_search(e).ok()).collect::<Option<_>>()?;
        Some(Subgraph { vertices, edges })
    }

    pub fn without_edge(&self, e: usize) -> Subgraph {
        Subgraph {
            vertices: self.vertices.clone(),
            edges: self.edges.iter().copied().filter(|&x| x != e).collect(),
        }
    }

    pub fn vertex_ids<'g>(&self, g: &'g WeightedGraph) -> Vec<&'g str> {
        self.vertices.iter().map(|&v| g.id(v)).collect()
    }

    pub fn edge_labels(&self, g: &WeightedGraph) -> Vec<String> {
        self.edges.iter().map(|&e| g.edge_label(e)).collect()
    }

    /// Greatest common divisor of the vertex weights (1 for the empty graph).
    pub fn weight_gcd(&self, g: &WeightedGraph) -> BigUint {
        let mut acc = BigUint::zero();
        for &v in &self.vertices {
            acc = acc.gcd(g.weight(v));
        }
        if acc.is_zero() {
            BigUint::one()
        } else {
            acc
        }
    }

    /// Compact label such as `{B,G}` (vertices only) used in reports.
    pub fn label(&self, g: &WeightedGraph) -> String {
        format!("{{{}}}", self.vertex_ids(g).join(","))
    }
}

/// Connected components, ordered by smallest vertex index.
pub fn components(g: &WeightedGraph, sub: &Subgraph) -> Vec<Subgraph> {
    let n = g.vertex_count();
    let mut in_sub = vec![false; n];
    for &v in &sub.vertices {
        in_sub[v] = true;
    }
    let mut edge_in = vec![false; g.edge_count()];
    for &e in &sub.edges {
        edge_in[e] = true;
    }
    let mut comp = vec![usize::MAX; n];
    let mut out: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    for &start in &sub.vertices {
        if comp[start] != usize::MAX {
            continue;
        }
        let c = out.len();
        comp[start] = c;
        let mut verts = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &(w, e) in g.neighbours(v) {
                if edge_in[e] && in_sub[w] && comp[w] == usize::MAX {
                    comp[w] = c;
                    verts.push(w);
                    queue.push_back(w);
                }
            }
        }
        verts.sort_unstable();
        out.push((verts, Vec::new()));
    }
    for &e in &sub.edges {
        let (a, _) = g.edge(e);
        out[comp[a]].1.push(e);
    }
    out.into_iter().map(|(vertices, edges)| Subgraph { vertices, edges }).collect()
}

/// A sign per vertex of the parent graph; 0 marks vertices outside the domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipartition {
    signs: Vec<i8>,
}

impl Bipartition {
    pub fn from_signs(signs: Vec<i8>) -> Self {
        Bipartition { signs }
    }

    pub fn sign(&self, v: usize) -> i8 {
        self.signs[v]
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    /// Checks that every edge of `sub` joins opposite signs and that the
    /// domain covers `sub`.
    pub fn is_valid_for(&self, g: &WeightedGraph, sub: &Subgraph) -> bool {
        self.signs.len() == g.vertex_count()
            && sub.vertices.iter().all(|&v| self.signs[v] != 0)
            && sub.edges.iter().all(|&e| {
                let (a, b) = g.edge(e);
                self.signs[a] == -self.signs[b]
            })
    }
}

/// Two-colouring with `+1` on the smallest vertex of each component.
pub fn bipartition(g: &WeightedGraph, sub: &Subgraph) -> Option<Bipartition> {
    let mut signs = vec![0i8; g.vertex_count()];
    for comp in components(g, sub) {
        let root = comp.vertices[0];
        signs[root] = 1;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &(w, e) in g.neighbours(v) {
                if !comp.contains_edge(e) {
                    continue;
                }
                if signs[w] == 0 {
                    signs[w] = -signs[v];
                    queue.push_back(w);
                } else if signs[w] == signs[v] {
                    return None;
                }
            }
        }
    }
    Some(Bipartition { signs })
}

pub fn is_bipartite(g: &WeightedGraph, sub: &Subgraph) -> bool {
    bipartition(g, sub).is_some()
}

/// An odd cycle of `sub` as a closed vertex walk, if one exists.
pub fn odd_cycle(g: &WeightedGraph, sub: &Subgraph) -> Option<Vec<usize>> {
    let n = g.vertex_count();
    let mut depth = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    for comp in components(g, sub) {
        let root = comp.vertices[0];
        depth[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &(w, e) in g.neighbours(v) {
                if !comp.contains_edge(e) {
                    continue;
                }
                if depth[w] == usize::MAX {
                    depth[w] = depth[v] + 1;
                    parent[w] = v;
                    queue.push_back(w);
                } else if depth[w] % 2 == depth[v] % 2 {
                    // climb to the common ancestor
                    let (mut a, mut b) = (v, w);
                    let mut left = vec![a];
                    let mut right = vec![b];
                    while a != b {
                        if depth[a] >= depth[b] {
                            a = parent[a];
                            left.push(a);
                        } else {
                            b = parent[b];
                            right.push(b);
                        }
                    }
                    right.pop();
                    right.reverse();
                    left.extend(right);
                    return Some(left);
                }
            }
        }
    }
    None
}

/// All vertices, and the edges with `val_p(k_v k_w) < s`.
pub fn reduce(g: &WeightedGraph, p: u64, s: u32) -> Subgraph {
    let ke = g.edge_valuations(p);
    Subgraph {
        vertices: (0..g.vertex_count()).collect(),
        edges: (0..g.edge_count()).filter(|&e| ke[e] < s).collect(),
    }
}

/// Restriction of `reduce` to a subgraph.
pub fn reduce_sub(sub: &Subgraph, edge_vals: &[u32], s: u32) -> Subgraph {
    Subgraph {
        vertices: sub.vertices.clone(),
        edges: sub.edges.iter().copied().filter(|&e| edge_vals[e] < s).collect(),
    }
}

/// Signs of the normalized bipartition of `red(sub, s)`, if bipartite.
pub fn reduced_bipartition_signs(g: &WeightedGraph, sub: &Subgraph, edge_vals: &[u32], s: u32) -> Option<Vec<i8>> {
    bipartition(g, &reduce_sub(sub, edge_vals, s)).map(|a| a.signs)
}

/// Edges of `g` touching `V(d)` that are not edges of `d`.
pub fn edge_boundary(d: &Subgraph, g: &WeightedGraph) -> Vec<usize> {
    (0..g.edge_count())
        .filter(|&e| {
            let (a, b) = g.edge(e);
            (d.contains_vertex(a) || d.contains_vertex(b)) && !d.contains_edge(e)
        })
        .collect()
}
