//! The cochain complex `C^0 -> C^1` of a weighted graph and its cohomology.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::graph::{bipartition, components, reduce, Subgraph, WeightedGraph};
use crate::linalg::{
    cokernel_structure, critical_dim, kernel_mod, modulus, solve_mod, AbelianGroup, IntMatrix,
};
use crate::orientation;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Modulus {
    Integers,
    PrimePower { p: u64, s: u32 },
}

/// A cochain in degree 0 or 1, stored densely over all vertices (resp.
/// edges) of its parent graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain {
    degree: u8,
    modulus: Modulus,
    coefficients: Vec<BigInt>,
}

impl Chain {
    pub fn new(degree: u8, modulus: Modulus, coefficients: Vec<BigInt>) -> Self {
        assert!(degree <= 1, "chains live in degree 0 or 1");
        let coefficients = match modulus {
            Modulus::Integers => coefficients,
            Modulus::PrimePower { p, s } => {
                let q = crate::linalg::modulus(p, s);
                coefficients.into_iter().map(|c| c.mod_floor(&q)).collect()
            }
        };
        Chain { degree, modulus, coefficients }
    }

    pub fn zero(degree: u8, modulus: Modulus, len: usize) -> Self {
        Chain::new(degree, modulus, vec![BigInt::zero(); len])
    }

    pub fn degree(&self) -> u8 {
        self.degree
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coefficients
    }

    pub fn coefficient(&self, i: usize) -> &BigInt {
        &self.coefficients[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(|c| c.is_zero())
    }

    pub fn reduce_mod(&self, p: u64, s: u32) -> Chain {
        Chain::new(self.degree, Modulus::PrimePower { p, s }, self.coefficients.clone())
    }

    pub fn scale(&self, k: &BigInt) -> Chain {
        Chain::new(self.degree, self.modulus, self.coefficients.iter().map(|c| c * k).collect())
    }

    /// Nonzero coefficients keyed by vertex id or edge label.
    pub fn labeled(&self, g: &WeightedGraph) -> Vec<(String, BigInt)> {
        self.coefficients
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let label = if self.degree == 0 { g.id(i).to_string() } else { g.edge_label(i) };
                (label, c.clone())
            })
            .collect()
    }

    /// The coefficient vector restricted to the vertices of `d`, in order.
    pub fn restricted(&self, d: &Subgraph) -> Vec<BigInt> {
        assert_eq!(self.degree, 0);
        d.vertices().iter().map(|&v| self.coefficients[v].clone()).collect()
    }
}

fn vertex_labels(g: &WeightedGraph, d: &Subgraph) -> Vec<String> {
    d.vertices().iter().map(|&v| g.id(v).to_string()).collect()
}

fn edge_labels(g: &WeightedGraph, d: &Subgraph) -> Vec<String> {
    d.edges().iter().map(|&e| g.edge_label(e)).collect()
}

fn coboundary(g: &WeightedGraph, d: &Subgraph, entry: impl Fn(usize, usize) -> BigInt) -> IntMatrix {
    let col_of = |v: usize| d.vertices().binary_search(&v).expect("edge endpoint in subgraph");
    let mut m = IntMatrix::zeros(d.edges().len(), d.vertices().len());
    for (i, &e) in d.edges().iter().enumerate() {
        let (a, b) = g.edge(e);
        m.set(i, col_of(a), entry(a, b));
        m.set(i, col_of(b), entry(b, a));
    }
    m.with_labels(edge_labels(g, d), vertex_labels(g, d))
}

/// `d^0`: rows are edges, columns vertices; entry `(e(v,w), v)` is `k_w`.
pub fn d0_matrix(g: &WeightedGraph, d: &Subgraph) -> IntMatrix {
    coboundary(g, d, |_, w| BigInt::from(g.weight(w).clone()))
}

/// Edge-weighted complex: entry `(e(v,w), v)` is `k_v k_w`.
pub fn d0_edge_matrix(g: &WeightedGraph, d: &Subgraph) -> IntMatrix {
    coboundary(g, d, |v, w| BigInt::from(g.weight(v) * g.weight(w)))
}

/// `d^0` of a degree-0 chain on the whole of `g`.
pub fn coboundary_of(g: &WeightedGraph, z: &Chain) -> Chain {
    assert_eq!(z.degree(), 0);
    let d = d0_matrix(g, &g.full());
    Chain::new(1, z.modulus(), d.mul_vec(z.coefficients()))
}

/// `(H^0, H^1)` of the subgraph with induced weights.
pub fn cohomology_groups(g: &WeightedGraph, d: &Subgraph) -> (AbelianGroup, AbelianGroup) {
    let m = d0_matrix(g, d);
    let h1 = cokernel_structure(&m);
    let h0 = AbelianGroup::free(m.cols() - (m.rows() - h1.rank));
    (h0, h1)
}

/// `N` such that the p-torsion of `H^1` has order `p^N`.
pub fn torsion_order_p(g: &WeightedGraph, d: &Subgraph, p: u64) -> u32 {
    cohomology_groups(g, d).1.p_exponents(p).iter().sum()
}

/// Dimension over `Z/p` of the critical cohomology `CH(d; Z/p^s)`.
pub fn critical_cohomology_dim(g: &WeightedGraph, d: &Subgraph, p: u64, s: u32) -> usize {
    critical_dim(&d0_matrix(g, d), p, s)
}

/// Whether the classes of orientable reduction components generate
/// `H^0(g; Z/p^s)`.
///
/// Fails with [`Error::CapExceeded`] if `s > max_s`, and with
/// [`Error::Invariant`] if a candidate generator is not a cocycle.
pub fn generation_check(g: &WeightedGraph, p: u64, s: u32, max_s: u32) -> Result<bool> {
    crate::graph::check_prime(p)?;
    if s == 0 {
        return Err(Error::Precondition("s must be at least 1".into()));
    }
    if s > max_s {
        return Err(Error::CapExceeded(format!("generation check limited to s <= {max_s}")));
    }
    let gens = generation_candidates(g, p, s)?;
    let a = d0_matrix(g, &g.full());
    let q = modulus(p, s);
    for z in &gens {
        if a.mul_vec(z).iter().any(|x| !x.mod_floor(&q).is_zero()) {
            return Err(Error::Invariant("generation candidate is not a cocycle".into()));
        }
    }
    let span = IntMatrix::from_columns(g.vertex_count(), &gens);
    Ok(kernel_mod(&a, p, s).iter().all(|k| solve_mod(&span, k, p, s).is_some()))
}

/// The candidate generators `p^d * [Delta]` used by [`generation_check`].
pub fn generation_candidates(g: &WeightedGraph, p: u64, s: u32) -> Result<Vec<Vec<BigInt>>> {
    let kv = g.vertex_valuations(p);
    let ke = g.edge_valuations(p);
    let top = ke.iter().chain(&kv).copied().max().unwrap_or(0) + 1;
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for r in 1..=top {
        for comp in components(g, &reduce(g, p, r)) {
            if !seen.insert(comp.clone()) {
                continue;
            }
            let m = comp.vertices().iter().map(|&v| kv[v]).min().unwrap();
            let r_delta = crate::graph::edge_boundary(&comp, g).iter().map(|&e| ke[e]).min();
            for dd in 0..=s {
                let t = s - dd;
                if t == 0 {
                    continue;
                }
                if let Some(rb) = r_delta {
                    if rb < m || rb - m < t {
                        continue;
                    }
                }
                let report = orientation::is_orientable(g, &comp, p, t);
                if !report.orientable {
                    continue;
                }
                let mut classes = Vec::new();
                match bipartition(g, &comp) {
                    Some(a) => classes.push(orientation::divided_fundamental_class(g, &comp, &a)?),
                    None => {
                        if p == 2 {
                            classes.extend(orientation::reduced_fundamental_class(g, &comp, p, t));
                        }
                        classes.extend(report.orientation_class);
                    }
                }
                // at p = 2 the reduced class of a component that is not
                // t-reduced need not be a cocycle; it is simply not a candidate
                let Some(class) = classes.into_iter().find(|c| {
                    matches!(orientation::is_orientation_class(&c.reduce_mod(p, t), g, &comp, p, t), Ok(true))
                }) else {
                    continue;
                };
                let scale = modulus(p, dd);
                out.push(class.coefficients().iter().map(|c| c * &scale).collect());
            }
        }
    }
    Ok(out)
}
