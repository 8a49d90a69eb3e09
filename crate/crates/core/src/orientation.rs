//! Fundamental chains and orientability over `Z`, fields and `Z/p^s`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::cohomology::{d0_matrix, Chain, Modulus};
use crate::graph::{bipartition, components, reduce_sub, Bipartition, Subgraph, WeightedGraph};
use crate::linalg::{critical_dim, kernel_mod, modulus, smith_normal_form};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Ring {
    Integers,
    Field(u64),
    Mod { p: u64, s: u32 },
}

/// Which criterion settled orientability. Ordered by how much work it took.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Method {
    Bipartite,
    OddPrime,
    TwoAdic,
    CriticalDimension,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientationReport {
    pub ring: Ring,
    pub orientable: bool,
    pub orientation_class: Option<Chain>,
    pub method: Method,
}

fn signed_weights(g: &WeightedGraph, d: &Subgraph, a: &Bipartition) -> Vec<BigInt> {
    let mut c = vec![BigInt::zero(); g.vertex_count()];
    for &v in d.vertices() {
        c[v] = BigInt::from(a.sign(v)) * BigInt::from(g.weight(v).clone());
    }
    c
}

/// `sum_v a(v) k_v v` over `V(d)`.
pub fn fundamental_chain(g: &WeightedGraph, d: &Subgraph, a: &Bipartition) -> Result<Chain> {
    if !a.is_valid_for(g, d) {
        return Err(Error::Precondition("not a bipartition of the subgraph".into()));
    }
    Ok(Chain::new(0, Modulus::Integers, signed_weights(g, d, a)))
}

/// The fundamental chain divided by the gcd of the weights of `V(d)`.
pub fn divided_fundamental_class(g: &WeightedGraph, d: &Subgraph, a: &Bipartition) -> Result<Chain> {
    let f = fundamental_chain(g, d, a)?;
    Ok(divide_by_gcd(g, d, f.coefficients()))
}

fn divide_by_gcd(g: &WeightedGraph, d: &Subgraph, c: &[BigInt]) -> Chain {
    let gcd = BigInt::from(d.weight_gcd(g));
    Chain::new(0, Modulus::Integers, c.iter().map(|x| x / &gcd).collect())
}

/// Per-component normalized bipartition of `red(d, p, s - 1)`, the sign
/// choice behind the 2-adic orientation of non-bipartite graphs.
pub fn reduced_bipartition(g: &WeightedGraph, d: &Subgraph, p: u64, s: u32) -> Option<Bipartition> {
    let ke = g.edge_valuations(p);
    bipartition(g, &reduce_sub(d, &ke, s.saturating_sub(1)))
}

/// Divided fundamental class built from [`reduced_bipartition`].
pub fn reduced_fundamental_class(g: &WeightedGraph, d: &Subgraph, p: u64, s: u32) -> Option<Chain> {
    let a = reduced_bipartition(g, d, p, s)?;
    Some(divide_by_gcd(g, d, &signed_weights(g, d, &a)))
}

struct Decision {
    orientable: bool,
    class: Option<Vec<BigInt>>,
    method: Method,
}

fn decide_component(g: &WeightedGraph, c: &Subgraph, p: u64, s: u32, ke: &[u32]) -> Decision {
    let reduced = c.edges().iter().all(|&e| ke[e] < s);
    if reduced {
        if let Some(a) = bipartition(g, c) {
            let class = divided_fundamental_class(g, c, &a).expect("valid bipartition");
            return Decision { orientable: true, class: Some(class.coefficients().to_vec()), method: Method::Bipartite };
        }
        if p != 2 {
            return Decision { orientable: false, class: None, method: Method::OddPrime };
        }
        let kv = g.vertex_valuations(p);
        let unit_gcd = c.vertices().iter().any(|&v| kv[v] == 0);
        if unit_gcd {
            if let Some(class) = reduced_fundamental_class(g, c, p, s) {
                return Decision { orientable: true, class: Some(class.coefficients().to_vec()), method: Method::TwoAdic };
            }
        }
        return Decision { orientable: false, class: None, method: Method::TwoAdic };
    }
    let a = d0_matrix(g, c);
    let snf = smith_normal_form(&a);
    let diag = snf.diagonal();
    let top: Vec<usize> = (0..a.cols())
        .filter(|&j| diag.get(j).is_none_or(|d| crate::graph::p_valuation(d.magnitude(), p) >= s))
        .collect();
    if top.len() != 1 {
        return Decision { orientable: false, class: None, method: Method::CriticalDimension };
    }
    let local = snf.v.column(top[0]);
    let mut class = vec![BigInt::zero(); g.vertex_count()];
    for (i, &v) in c.vertices().iter().enumerate() {
        class[v] = local[i].clone();
    }
    Decision { orientable: true, class: Some(class), method: Method::CriticalDimension }
}

/// Orientability of `d` over `Z/p^s`; every component must be oriented.
pub fn is_orientable(g: &WeightedGraph, d: &Subgraph, p: u64, s: u32) -> OrientationReport {
    assert!(s >= 1, "orientation needs s >= 1");
    let ke = g.edge_valuations(p);
    let mut class = vec![BigInt::zero(); g.vertex_count()];
    let mut orientable = true;
    let mut method = Method::Bipartite;
    for c in components(g, d) {
        let dec = decide_component(g, &c, p, s, &ke);
        method = method.max(dec.method);
        match dec.class {
            Some(z) if dec.orientable => {
                for &v in c.vertices() {
                    class[v] = z[v].clone();
                }
            }
            _ => orientable = false,
        }
    }
    OrientationReport {
        ring: Ring::Mod { p, s },
        orientable,
        orientation_class: orientable.then(|| Chain::new(0, Modulus::PrimePower { p, s }, class)),
        method,
    }
}

/// Orientability over `Z` or a prime field, where it means `H^0 = R`.
pub fn orientation_over(g: &WeightedGraph, d: &Subgraph, ring: Ring) -> OrientationReport {
    match ring {
        Ring::Mod { p, s } => is_orientable(g, d, p, s),
        Ring::Integers => match bipartition(g, d) {
            Some(a) if components(g, d).len() == 1 => OrientationReport {
                ring,
                orientable: true,
                orientation_class: Some(divided_fundamental_class(g, d, &a).expect("valid bipartition")),
                method: Method::Bipartite,
            },
            _ => OrientationReport { ring, orientable: false, orientation_class: None, method: Method::Bipartite },
        },
        Ring::Field(p) => {
            let a = d0_matrix(g, d);
            let orientable = critical_dim(&a, p, 1) == 1;
            let class = orientable.then(|| {
                let local = kernel_mod(&a, p, 1).remove(0);
                let mut z = vec![BigInt::zero(); g.vertex_count()];
                for (i, &v) in d.vertices().iter().enumerate() {
                    z[v] = local[i].clone();
                }
                Chain::new(0, Modulus::PrimePower { p, s: 1 }, z)
            });
            OrientationReport { ring, orientable, orientation_class: class, method: Method::CriticalDimension }
        }
    }
}

/// Checks the two conditions characterizing `Z/p^s`-orientation classes of
/// a connected subgraph. `z` must be a cocycle mod `p^s`.
pub fn is_orientation_class(z: &Chain, g: &WeightedGraph, d: &Subgraph, p: u64, s: u32) -> Result<bool> {
    if components(g, d).len() != 1 {
        return Err(Error::Precondition("orientation classes are tested on connected subgraphs".into()));
    }
    let q = modulus(p, s);
    let zd: Vec<BigInt> = z.restricted(d).iter().map(|x| x.mod_floor(&q)).collect();
    let a = d0_matrix(g, d);
    if a.mul_vec(&zd).iter().any(|x| !x.mod_floor(&q).is_zero()) {
        return Err(Error::Precondition("chain is not a cocycle".into()));
    }
    let pb = BigInt::from(p);
    if zd.iter().all(|x| x.is_multiple_of(&pb)) {
        return Ok(false);
    }
    for u in kernel_mod(&a, p, s) {
        let ok = (0..p).any(|n| {
            let n = BigInt::from(n);
            u.iter().zip(&zd).all(|(ui, zi)| (ui - &n * zi).is_multiple_of(&pb))
        });
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}
