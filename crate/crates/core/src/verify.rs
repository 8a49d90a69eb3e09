//! Randomized cross-checks of every closed-form result against the Smith
//! normal form oracle.
//!
//! Instance `i` of property `k` draws from its own ChaCha8 stream seeded by
//! `(seed, k, i)`, so reports do not depend on the thread count.

use num_bigint::BigUint;
use num_integer::Integer;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cohomology::{cohomology_groups, generation_check, torsion_order_p};
use crate::forest::{
    build_forest, chi, chi_image_torsion_order, complex_cohomology, fundamental_complex, restrict,
};
use crate::graph::{p_valuation, Subgraph, WeightedGraph};
use crate::io::GraphFile;
use crate::linalg::IntMatrix;
use crate::tropical::{tropical_torsion_exponent, valuation_assignment, z_complete_for, z_gamma, EnumerationCap};
use crate::weights::{
    edge_weighted_constants, hbe_count, is_tree, oriented_torsion_exponent, separation_levels, torsion_order,
    tree_torsion, weighted_spanning_tree,
};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct VerificationConfig {
    pub instance_count: usize,
    pub max_vertices: usize,
    pub max_valuation: u32,
    pub primes: Vec<u64>,
    pub seed: u64,
    pub parallelism: usize,
}

impl Default for VerificationConfig {
    fn default() -> Self {
        VerificationConfig {
            instance_count: 500,
            max_vertices: 7,
            max_valuation: 4,
            primes: vec![2, 3, 5],
            seed: 42,
            parallelism: std::thread::available_parallelism().map_or(1, |n| n.get()),
        }
    }
}

impl VerificationConfig {
    pub fn validate(&self) -> Result<()> {
        if self.instance_count == 0 || self.max_vertices == 0 || self.max_valuation == 0 || self.parallelism == 0 {
            return Err(Error::Precondition("verification settings must be positive".into()));
        }
        if self.primes.is_empty() {
            return Err(Error::Precondition("no primes to verify".into()));
        }
        self.primes.iter().try_for_each(|&p| crate::graph::check_prime(p))
    }
}

/// The computations under test. Replacing one with a broken version must
/// make the matching property fail.
#[derive(Clone, Copy)]
pub struct Checks {
    pub torsion_structure: fn(&WeightedGraph, u64) -> Result<Vec<u32>>,
    pub tree_torsion: fn(&WeightedGraph) -> Result<BigUint>,
    pub tropical_exponent: fn(&WeightedGraph, u64) -> Result<i64>,
}

impl Default for Checks {
    fn default() -> Self {
        Checks {
            torsion_structure: |g, p| Ok(build_forest(g, p)?.torsion_structure()),
            tree_torsion: |g| tree_torsion(g, &g.full()),
            tropical_exponent: |g, p| tropical_torsion_exponent(g, p, EnumerationCap::default()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub instance: usize,
    pub prime: Option<u64>,
    pub detail: String,
    pub graph: GraphFile,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub name: String,
    pub checked: usize,
    pub skipped: usize,
    pub failures: usize,
    pub counterexample: Option<Counterexample>,
}

impl PropertyReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub config: VerificationConfig,
    pub properties: Vec<PropertyReport>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.properties.iter().all(PropertyReport::passed)
    }
}

enum Outcome {
    Pass,
    Skip,
    Fail(String, WeightedGraph),
}

fn fail(detail: impl Into<String>, g: &WeightedGraph) -> Outcome {
    Outcome::Fail(detail.into(), g.clone())
}

/// Stream for one instance of one property.
pub fn instance_rng(seed: u64, property: usize, instance: usize) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&(property as u64).to_le_bytes());
    key[16..24].copy_from_slice(&(instance as u64).to_le_bytes());
    ChaCha8Rng::from_seed(key)
}

fn names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("v{i}")).collect()
}

/// A unit modulo `p` from a small fixed set.
fn unit(rng: &mut impl Rng, p: u64) -> u64 {
    let units: Vec<u64> = [1, 1, 1, 2, 3, 5, 7, 11].into_iter().filter(|u| u.gcd(&p) == 1).collect();
    *units.choose(rng).unwrap()
}

/// Random connected graph on `1..=max_vertices` vertices, weights `p^a u`
/// with `a <= max_valuation` and `u` prime to `p`.
pub fn random_connected_graph(rng: &mut impl Rng, max_vertices: usize, p: u64, max_valuation: u32) -> WeightedGraph {
    let n = rng.gen_range(1..=max_vertices);
    let weights = (0..n).map(|_| BigUint::from(p).pow(rng.gen_range(0..=max_valuation)) * unit(rng, p)).collect();
    random_connected_with(rng, n, weights)
}

fn random_connected_with(rng: &mut impl Rng, n: usize, weights: Vec<BigUint>) -> WeightedGraph {
    let ids = names(n);
    let density = [0.15, 0.4, 0.8][rng.gen_range(0..3)];
    let mut edges = Vec::new();
    for i in 1..n {
        edges.push((rng.gen_range(0..i), i));
    }
    for i in 0..n {
        for j in i + 1..n {
            if !edges.contains(&(i, j)) && rng.gen_bool(density) {
                edges.push((i, j));
            }
        }
    }
    let edges = edges.into_iter().map(|(a, b)| (ids[a].clone(), ids[b].clone())).collect();
    WeightedGraph::new(ids.into_iter().zip(weights).collect(), edges).expect("generated graphs are valid")
}

/// Random tree with weights in `1..=max_weight`.
pub fn random_tree(rng: &mut impl Rng, max_vertices: usize, max_weight: u64) -> WeightedGraph {
    let n = rng.gen_range(1..=max_vertices);
    let ids = names(n);
    let edges = (1..n).map(|i| (ids[rng.gen_range(0..i)].clone(), ids[i].clone())).collect();
    let vs = ids.iter().map(|id| (id.clone(), BigUint::from(rng.gen_range(1..=max_weight)))).collect();
    WeightedGraph::new(vs, edges).expect("generated trees are valid")
}

/// `K_n` with the given weights on `v0, v1, ...`.
pub fn complete_graph(weights: Vec<BigUint>) -> WeightedGraph {
    let ids = names(weights.len());
    let mut edges = Vec::new();
    for i in 0..ids.len() {
        for j in i + 1..ids.len() {
            edges.push((ids[i].clone(), ids[j].clone()));
        }
    }
    WeightedGraph::new(ids.into_iter().zip(weights).collect(), edges).expect("complete graphs are valid")
}

/// Random subgraph keeping each vertex and each available edge with
/// probability 0.7.
pub fn random_subgraph(rng: &mut impl Rng, g: &WeightedGraph, of: &Subgraph) -> Option<Subgraph> {
    let vs: Vec<usize> = of.vertices().iter().copied().filter(|_| rng.gen_bool(0.7)).collect();
    if vs.is_empty() {
        return None;
    }
    let es = of
        .edges()
        .iter()
        .copied()
        .filter(|&e| {
            let (a, b) = g.edge(e);
            vs.contains(&a) && vs.contains(&b) && rng.gen_bool(0.7)
        })
        .collect();
    Subgraph::new(g, vs, es).ok()
}

fn oracle_exponents(g: &WeightedGraph, p: u64) -> Vec<u32> {
    let mut e = cohomology_groups(g, &g.full()).1.p_exponents(p);
    e.sort_unstable();
    e
}

type Property = (&'static str, bool, fn(&Checks, &VerificationConfig, &mut ChaCha8Rng, u64) -> Result<Outcome>);

fn properties() -> Vec<Property> {
    vec![
        ("main_theorem", false, main_theorem),
        ("rank_independence", false, rank_independence),
        ("p_splitting", false, p_splitting),
        ("disjoint_union", false, disjoint_union),
        ("fundamental_complex_order", false, complex_order),
        ("chi_chain_map", false, chi_chain_map),
        ("restriction", true, restriction),
        ("generation", false, generation),
        ("tree_formula", false, tree_formula),
        ("euler_relation", false, euler_relation),
        ("spanning_tree", false, spanning_tree),
        ("tropical", true, tropical),
        ("complete_graph", true, complete_formula),
    ]
}

pub fn property_names() -> Vec<&'static str> {
    properties().into_iter().map(|(n, _, _)| n).collect()
}

fn main_theorem(c: &Checks, cfg: &VerificationConfig, rng: &mut ChaCha8Rng, p: u64) -> Result<Outcome> {
    let g = random_connected_graph(rng, cfg.max_vertices, p, cfg.max_valuation);
    let mut got = (c.torsion_structure)(&g, p)?;
    got.sort_unstable();
    let want = oracle_exponents(&g, p);
    Ok(if got == want { Outcome::Pass } else { fail(format!("forest {got:?}, oracle {want:?}"), &g) })
}

fn rank_independence(_: &Checks, cfg: &VerificationConfig, rng: &mut ChaCha8Rng, p: u64) -> Result<Outcome> {
    let g = random_connected_graph(rng, cfg.max_vertices, p, cfg.max_valuation);
    let (h0, h1) = cohomology_groups(&g, &g.full());
    for _ in 0..3 {
        let w = (0..g.vertex_count()).map(|_| BigUint::from(rng.gen_range(1u32..=1000))).collect();
        let h = g.with_weights(w)?;
        let (k0, k1) = cohomology_groups(&h, &h.full());
        if (k0.rank, k1.rank) != (h0.rank, h1.rank) {
            return Ok(fail(format!("ranks ({}, {}) became ({}, {})", h0.rank, h1.rank, k0.rank, k1.rank), &h));
        }
    }
    Ok(Outcome::Pass)
}

fn p_splitting(_: &Checks, cfg: &VerificationConfig, rng: &mut ChaCha8Rng, p: u64) -> Result<Outcome> {
    // mix in a second prime so the p-part differs from the graph
    let q = cfg.primes.iter().copied().find(|&q| q != p).unwrap_or(p);
    let mut g = random_connected_graph(rng, cfg.max_vertices, p, cfg.max_valuation);
    let w = g.weights().iter().map(|k| k * BigUint::from(q).pow(rng.gen_range(0..=2))).collect();
    g = g.with_weights(w)?;
    let whole = cohomology_groups(&g, &g.full()).1.torsion_order();
    let mut product = BigUint::from(1u32);
    // odd cycles contribute 2-torsion even when every weight is odd
    let mut primes: Vec<u64> = g.weights().iter().flat_map(prime_divisors).chain([2]).collect();
    primes.sort_unstable();
    primes.dedup();
    for r in primes {
        let part = g.p_part(r);
        let (a, b) = (torsion_order_p(&part, &part.full(), r), torsion_order_p(&g, &g.full(), r));
        if a != b {
            return Ok(fail(format!("at {r}: p-part exponent {a}, graph exponent {b}"), &g));
        }
        product *= BigUint::from(r).pow(a);
    }
    Ok(if product == whole { Outcome::Pass } else { fail(format!("product {product} vs {whole}"), &g) })
}

fn prime_divisors(n: &BigUint) -> Vec<u64> {
    let mut n = u64::try_from(n).expect("generated weights fit in u64");
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
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

fn same_entries(a: &IntMatrix, b: &IntMatrix) -> bool {
    (a.rows(), a.cols()) == (b.rows(), b.cols()) && (0..a.rows()).all(|i| (0..a.cols()).all(|j| a.get(i, j) == b.get(i, j)))
}

fn disjoint_union(_: &Checks, cfg: &VerificationConfig, rng: &mut ChaCha8Rng, p: u64) -> Result<Outcome> {
    let a = random_connected_graph(rng, cfg.max_vertices, p, cfg.max_valuation);
    let b = random_connected_graph(rng, cfg.max_vertices, p, cfg.max_valuation);
    let u = a.disjoint_union(&b, "'")?;
    let (a0, a1) = cohomology_groups(&a, &a.full());
    let (b0, b1) = cohomology_groups(&b, &b.full());
    let (u0, u1) = cohomology_groups(&u, &u.full());
    Ok(if u0 == a0.sum(&b0) && u1 == a1.sum(&b1) { Outcome::Pass } else { fail("union is not the direct sum", &u) })
}

fn complex_order(_: &Checks, cfg: &VerificationConfig, rng: &mut ChaCha8Rng, p: u64) -> Result<Outcome> {
    let g = random_connected_graph(rng, cfg.max_vertices, p, cfg.max_valuation);
    let f = build_forest(&g, p)?;
    let (_, h1) = complex_cohomology(&fundamental_complex(&f));
    let want = BigUint::from(p).pow(f.h0_nodes().len() as u32);
    let oracle = BigUint::from(p).pow(torsion_order_p(&g, &g.full(), p));
    Ok(if h1.rank == 0 && h1.torsion_order() == want && want == oracle {
        Outcome::Pass
    } else {
        fail(format!("|H1(F)| = {}, p^|H0 nodes| = {want}, oracle {oracle}", h1.torsion_order()), &g)
    })
}

fn chi_chain_map(_: &Checks, cfg: &VerificationConfig, rng: &mut ChaCha8Rng, p: u64) -> Result<Outcome> {
    let g = random_connected_graph(rng, cfg.max_vertices, p, cfg.max_valuation);
    let f = build_forest(&g, p)?;
    let c = fundamental_complex(&f);
    let x = chi(&c, &f)?;
    let gp = g.p_part(p);
    let d0 = crate::cohomology::d0_matrix(&gp, &gp.full());
    if !x.chi0.mul(&c.d_minus1).is_zero() || !same_entries(&d0.mul(&x.chi0), &x.chi1.mul(&c.d0)) {
        return Ok(fail("chi does not commute with the differentials", &g));
    }
    let image = chi_image_torsion_order(&f, &x)?;
    let oracle = BigUint::from(p).pow(torsion_order_p(&g, &g.full(), p));
    Ok(if image == oracle { Outcome::Pass } else { fail(format!("chi image order {image}, oracle {oracle}"), &g) })
}

fn restriction(_: &Checks, cfg: &VerificationConfig, rng: &mut ChaCha8Rng, p: u64) -> Result<Outcome> {
    let g = random_connected_graph(rng, cfg.max_vertices.min(6), p, cfg.max_valuation);
    let f = build_forest(&g, p)?;
    let Some(d) = random_subgraph(rng, &g, &g.full()) else { return Ok(Outcome::Skip) };
    let r = restrict(&f, &d)?;
    if !r.is_chain_map() || !r.is_compatible_with_chi(&d) {
        return Ok(fail(format!("restriction to {} is not a chi-compatible chain map", d.label(&g)), &g));
    }
    let Some(d2) = random_subgraph(rng, &g, &d) else { return Ok(Outcome::Pass) };
    let direct = restrict(&f, &d2)?;
    let inner = restrict(&r.target_forest, &d2.relative_to(&d).expect("nested subgraphs"))?;
    Ok(
        if same_entries(&inner.j0.mul(&r.j0), &direct.j0)
            && same_entries(&inner.j1.mul(&r.j1), &direct.j1)
            && same_entries(&inner.j_minus1.mul(&r.j_minus1), &direct.j_minus1)
        {
            Outcome::Pass
        } else {
            fail(format!("restricting to {} then {} differs from restricting directly", d.label(&g), d2.label(&g)), &g)
        },
    )
}

fn generation(_: &Checks, cfg: &VerificationConfig, rng: &mut ChaCha8Rng, p: u64) -> Result<Outcome> {
    let g = random_connected_graph(rng, cfg.max_vertices.min(5), p, cfg.max_valuation);
    let s = rng.gen_range(1..=3);
    Ok(if generation_check(&g, p, s, 2 * cfg.max_valuation + 2)? {
        Outcome::Pass
    } else {
        fail(format!("orientation classes do not generate at s = {s}"), &g)
    })
}

fn tree_formula(c: &Checks, cfg: &VerificationConfig, rng: &mut ChaCha8Rng, _: u64) -> Result<Outcome> {
    let g = random_tree(rng, cfg.max_vertices.max(2), 1_000_000);
    let got = (c.tree_torsion)(&g)?;
    let want = cohomology_groups(&g, &g.full()).1.torsion_order();
    Ok(if got == want { Outcome::Pass } else { fail(format!("tree formula {got}, oracle {want}"), &g) })
}

fn euler_relation(_: &Checks, cfg: &VerificationConfig, rng: &mut ChaCha8Rng, p: u64) -> Result<Outcome> {
    let g = random_connected_graph(rng, cfg.max_vertices, p, cfg.max_valuation);
    let k = edge_weighted_constants(&g, &g.full());
    let t = torsion_order(&g, &g.full());
    if &t * &k.c1 != &k.c0 * &k.c2 {
        return Ok(fail(format!("|T| C1 = {} but C0 C2 = {}", &t * &k.c1, &k.c0 * &k.c2), &g));
    }
    match hbe_count(&g, p) {
        Ok(h) if h != u64::from(p_valuation(&k.c2, p)) => {
            Ok(fail(format!("hbe {h}, val_p(C2) {}", p_valuation(&k.c2, p)), &g))
        }
        Ok(_) | Err(Error::Precondition(_)) => Ok(Outcome::Pass),
        Err(e) => Err(e),
    }
}

fn spanning_tree(_: &Checks, cfg: &VerificationConfig, rng: &mut ChaCha8Rng, p: u64) -> Result<Outcome> {
    let g = random_connected_graph(rng, cfg.max_vertices, p, cfg.max_valuation);
    let n = match oriented_torsion_exponent(&g, &g.full(), p) {
        Ok(n) => n,
        Err(Error::Precondition(_) | Error::NotApplicable(_)) => return Ok(Outcome::Skip),
        Err(e) => return Err(e),
    };
    let t = weighted_spanning_tree(&g, &g.full(), p)?;
    let oracle = torsion_order_p(&g, &g.full(), p);
    Ok(
        if n == oracle && is_tree(&g, &t) && separation_levels(&g, &g.full(), p) == separation_levels(&g, &t, p) {
            Outcome::Pass
        } else {
            fail(format!("spanning-tree exponent {n}, oracle {oracle}"), &g)
        },
    )
}

fn tropical(c: &Checks, cfg: &VerificationConfig, rng: &mut ChaCha8Rng, p: u64) -> Result<Outcome> {
    let g = random_connected_graph(rng, cfg.max_vertices.min(6), p, cfg.max_valuation);
    let got = (c.tropical_exponent)(&g, p)?;
    let want = torsion_order_p(&g, &g.full(), p);
    Ok(if got == i64::from(want) { Outcome::Pass } else { fail(format!("Z evaluates to {got}, oracle {want}"), &g) })
}

fn complete_formula(_: &Checks, cfg: &VerificationConfig, rng: &mut ChaCha8Rng, p: u64) -> Result<Outcome> {
    let n = rng.gen_range(3..=5);
    let w = (0..n).map(|_| BigUint::from(p).pow(rng.gen_range(0..=cfg.max_valuation))).collect();
    let g = complete_graph(w);
    let at = valuation_assignment(&g, p)?;
    let a = z_complete_for(&g)?.eval(&at)?;
    let b = z_gamma(&g, EnumerationCap::default())?.eval(&at)?;
    let oracle = torsion_order_p(&g, &g.full(), p);
    Ok(if a == b && a.finite() == Some(oracle.into()) {
        Outcome::Pass
    } else {
        fail(format!("complete formula {a}, Z {b}, oracle {oracle}"), &g)
    })
}

pub fn run(cfg: &VerificationConfig) -> Result<VerificationReport> {
    run_with(cfg, &Checks::default())
}

pub fn run_with(cfg: &VerificationConfig, checks: &Checks) -> Result<VerificationReport> {
    cfg.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.parallelism)
        .build()
        .map_err(|e| Error::Invariant(format!("thread pool: {e}")))?;
    let mut reports = Vec::new();
    for (k, (name, odd_only, check)) in properties().into_iter().enumerate() {
        let primes: Vec<u64> = cfg.primes.iter().copied().filter(|&p| !odd_only || p != 2).collect();
        let outcomes: Vec<(Option<u64>, Result<Outcome>)> = if primes.is_empty() {
            Vec::new()
        } else {
            pool.install(|| {
                (0..cfg.instance_count)
                    .into_par_iter()
                    .map(|i| {
                        let p = primes[i % primes.len()];
                        (Some(p), check(checks, cfg, &mut instance_rng(cfg.seed, k, i), p))
                    })
                    .collect()
            })
        };
        let mut report = PropertyReport {
            name: name.to_string(),
            checked: 0,
            skipped: if primes.is_empty() { cfg.instance_count } else { 0 },
            failures: 0,
            counterexample: None,
        };
        for (i, (prime, outcome)) in outcomes.into_iter().enumerate() {
            let (detail, graph) = match outcome {
                Ok(Outcome::Pass) => {
                    report.checked += 1;
                    continue;
                }
                Ok(Outcome::Skip) => {
                    report.skipped += 1;
                    continue;
                }
                Ok(Outcome::Fail(detail, g)) => (detail, Some(g)),
                Err(e) => (format!("error: {e}"), None),
            };
            report.checked += 1;
            report.failures += 1;
            if report.counterexample.is_none() {
                // errors carry no graph; regenerate the instance for the record
                let graph = graph.unwrap_or_else(|| {
                    random_connected_graph(&mut instance_rng(cfg.seed, k, i), cfg.max_vertices, prime.unwrap_or(2), cfg.max_valuation)
                });
                report.counterexample = Some(Counterexample { instance: i, prime, detail, graph: GraphFile::from_graph(&graph) });
            }
        }
        reports.push(report);
    }
    Ok(VerificationReport { config: cfg.clone(), properties: reports })
}
