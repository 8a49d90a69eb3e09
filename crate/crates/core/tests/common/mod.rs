//! Test-side oracles that share no code with the library's linear algebra,
//! plus random instance generators.
#![allow(dead_code)]

use gcoh::graph::WeightedGraph;
use itertools::Itertools;
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;

/// `d^0` as rows of big integers: row `e(v,w)` has `k_w` at `v` and `k_v` at `w`.
pub fn d0_rows(g: &WeightedGraph) -> Vec<Vec<BigInt>> {
    g.edges()
        .iter()
        .map(|&(v, w)| {
            let mut row = vec![BigInt::zero(); g.vertex_count()];
            row[v] = BigInt::from(g.weight(w).clone());
            row[w] = BigInt::from(g.weight(v).clone());
            row
        })
        .collect()
}

fn val(x: &BigInt, p: &BigInt) -> u32 {
    let mut x = x.clone();
    let mut n = 0;
    while (&x % p).is_zero() {
        x /= p;
        n += 1;
    }
    n
}

/// Exponents of the `p`-primary invariant factors of `coker d^0`, by
/// elimination over `Z/p^N` with minimal-valuation pivots. `N` is far above
/// any exponent the generated instances can reach.
pub fn p_exponents(g: &WeightedGraph, p: u64) -> Vec<u32> {
    let pb = BigInt::from(p);
    let q = pb.pow(60);
    let mut m: Vec<Vec<BigInt>> = d0_rows(g).into_iter().map(|r| r.into_iter().map(|x| x.mod_floor(&q)).collect()).collect();
    let mut rows: Vec<usize> = (0..m.len()).collect();
    let mut cols: Vec<usize> = (0..g.vertex_count()).collect();
    let mut out = Vec::new();
    loop {
        let mut best: Option<(usize, usize, u32)> = None;
        for &i in &rows {
            for &j in &cols {
                if !m[i][j].is_zero() {
                    let v = val(&m[i][j], &pb);
                    if best.is_none_or(|(_, _, b)| v < b) {
                        best = Some((i, j, v));
                    }
                }
            }
        }
        let Some((pi, pj, v)) = best else { break };
        let unit = &m[pi][pj] / pb.pow(v);
        let inv = unit.extended_gcd(&q).x.mod_floor(&q);
        let pivot_row: Vec<BigInt> = m[pi].iter().map(|x| (x * &inv).mod_floor(&q)).collect();
        for &i in &rows {
            if i == pi || m[i][pj].is_zero() {
                continue;
            }
            let f = &m[i][pj] / pb.pow(v);
            for &j in &cols {
                m[i][j] = (&m[i][j] - &f * &pivot_row[j]).mod_floor(&q);
            }
        }
        rows.retain(|&i| i != pi);
        cols.retain(|&j| j != pj);
        if v > 0 {
            out.push(v);
        }
    }
    out.sort_unstable();
    out
}

pub fn torsion_exponent(g: &WeightedGraph, p: u64) -> u32 {
    p_exponents(g, p).iter().sum()
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Order of the torsion of `H^1`: its primes divide a weight or are 2.
pub fn torsion_order(g: &WeightedGraph) -> BigUint {
    let mut primes: Vec<u64> = g
        .weights()
        .iter()
        .flat_map(|w| prime_divisors(u64::try_from(w).expect("test weights fit in u64")))
        .chain([2])
        .collect();
    primes.sort_unstable();
    primes.dedup();
    primes.into_iter().map(|p| BigUint::from(p).pow(torsion_exponent(g, p))).product()
}

/// Bareiss fraction-free determinant.
pub fn determinant(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// `gcd` of all `k x k` minors, for `k = 1..=min(rows, cols)`, stopping at
/// the first zero.
pub fn determinantal_divisors(m: &[Vec<BigInt>]) -> Vec<BigInt> {
    let (r, c) = (m.len(), m.first().map_or(0, Vec::len));
    let mut out = Vec::new();
    for k in 1..=r.min(c) {
        let mut g = BigInt::zero();
        for rs in (0..r).combinations(k) {
            for cs in (0..c).combinations(k) {
                let sub: Vec<Vec<BigInt>> = rs.iter().map(|&i| cs.iter().map(|&j| m[i][j].clone()).collect()).collect();
                g = g.gcd(&determinant(&sub));
            }
        }
        if g.is_zero() {
            break;
        }
        out.push(g);
    }
    out
}

/// Invariant factors `d_k / d_{k-1}` of a small matrix (nonzero ones only).
pub fn invariant_factors(m: &[Vec<BigInt>]) -> Vec<BigInt> {
    let d = determinantal_divisors(m);
    let mut prev = BigInt::one();
    d.into_iter()
        .map(|x| {
            let f = &x / &prev;
            prev = x;
            f.abs()
        })
        .collect()
}

/// `|T|` of a tree: the gcd of the maximal minors of `d^0`, which has full
/// row rank.
pub fn tree_torsion_by_minors(g: &WeightedGraph) -> BigUint {
    let rows = d0_rows(g);
    if rows.is_empty() {
        return BigUint::one();
    }
    let n = g.vertex_count();
    let mut acc = BigInt::zero();
    for drop in 0..n {
        let sub: Vec<Vec<BigInt>> =
            rows.iter().map(|r| r.iter().enumerate().filter(|&(j, _)| j != drop).map(|(_, x)| x.clone()).collect()).collect();
        acc = acc.gcd(&determinant(&sub));
    }
    acc.magnitude().clone()
}

/// Number of bipartite connected components, by two-colouring.
pub fn bipartite_components(g: &WeightedGraph) -> usize {
    let n = g.vertex_count();
    let mut colour = vec![None::<bool>; n];
    let mut count = 0;
    for s in 0..n {
        if colour[s].is_some() {
            continue;
        }
        colour[s] = Some(false);
        let mut ok = true;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for &(a, b) in g.edges() {
                if a != v && b != v {
                    continue;
                }
                let w = if a == v { b } else { a };
                match colour[w] {
                    None => {
                        colour[w] = Some(!colour[v].unwrap());
                        stack.push(w);
                    }
                    Some(c) if c == colour[v].unwrap() => ok = false,
                    _ => {}
                }
            }
        }
        if ok {
            count += 1;
        }
    }
    count
}

fn names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("x{i}")).collect()
}

pub fn graph_from(weights: Vec<BigUint>, edges: &[(usize, usize)]) -> WeightedGraph {
    let ids = names(weights.len());
    let edges = edges.iter().map(|&(a, b)| (ids[a].clone(), ids[b].clone())).collect();
    WeightedGraph::new(ids.into_iter().zip(weights).collect(), edges).unwrap()
}

/// Connected graph on `1..=max_n` vertices with edge density drawn per graph.
pub fn connected_edges(rng: &mut impl Rng, n: usize) -> Vec<(usize, usize)> {
    let density = rng.gen_range(0.0..0.9);
    let mut edges: Vec<(usize, usize)> = (1..n).map(|i| (rng.gen_range(0..i), i)).collect();
    for i in 0..n {
        for j in i + 1..n {
            if !edges.contains(&(i, j)) && rng.gen_bool(density) {
                edges.push((i, j));
            }
        }
    }
    edges
}

/// Connected graph with weights `p^a`, `a <= max_val`.
pub fn prime_power_graph(rng: &mut impl Rng, max_n: usize, p: u64, max_val: u32) -> WeightedGraph {
    let n = rng.gen_range(1..=max_n);
    let w = (0..n).map(|_| BigUint::from(p).pow(rng.gen_range(0..=max_val))).collect();
    graph_from(w, &connected_edges(rng, n))
}

/// Connected graph with weights `p^a u`, `u` drawn from small numbers.
pub fn mixed_graph(rng: &mut impl Rng, max_n: usize, p: u64, max_val: u32) -> WeightedGraph {
    let n = rng.gen_range(1..=max_n);
    let w = (0..n)
        .map(|_| BigUint::from(p).pow(rng.gen_range(0..=max_val)) * BigUint::from([1u32, 1, 2, 3, 5, 7][rng.gen_range(0..6)]))
        .collect();
    graph_from(w, &connected_edges(rng, n))
}

pub fn tree(rng: &mut impl Rng, max_n: usize, max_w: u64) -> WeightedGraph {
    let n = rng.gen_range(1..=max_n);
    let edges: Vec<(usize, usize)> = (1..n).map(|i| (rng.gen_range(0..i), i)).collect();
    graph_from((0..n).map(|_| BigUint::from(rng.gen_range(1..=max_w))).collect(), &edges)
}

pub fn complete(weights: Vec<BigUint>) -> WeightedGraph {
    let n = weights.len();
    let edges: Vec<(usize, usize)> = (0..n).tuple_combinations().collect();
    graph_from(weights, &edges)
}

pub fn k3() -> WeightedGraph {
    WeightedGraph::from_u64(&[("R", 27), ("G", 1), ("B", 3)], &[("R", "G"), ("R", "B"), ("G", "B")]).unwrap()
}
