use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::Zero;

use super::FundamentalForest;
use crate::cohomology::d0_matrix;
use crate::linalg::{cokernel_structure, homology, AbelianGroup, IntMatrix};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GeneratorKind {
    RhoMinus1,
    Rho0,
    Alpha0,
    Alpha1,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Generator {
    pub kind: GeneratorKind,
    /// Index into the forest's subgraph list.
    pub graph: usize,
}

impl Generator {
    fn new(kind: GeneratorKind, graph: usize) -> Self {
        Generator { kind, graph }
    }
}

/// The complex `F^-1 -> F^0 -> F^1` of a fundamental forest.
#[derive(Debug, Clone)]
pub struct FundamentalComplex {
    pub prime: u64,
    pub degree_minus1: Vec<Generator>,
    pub degree0: Vec<Generator>,
    pub degree1: Vec<Generator>,
    /// Rows indexed by `degree0`, columns by `degree_minus1`.
    pub d_minus1: IntMatrix,
    /// Rows indexed by `degree1`, columns by `degree0`.
    pub d0: IntMatrix,
}

impl FundamentalComplex {
    pub fn position(&self, g: Generator) -> Option<usize> {
        let list = match g.kind {
            GeneratorKind::RhoMinus1 => &self.degree_minus1,
            GeneratorKind::Rho0 | GeneratorKind::Alpha0 => &self.degree0,
            GeneratorKind::Alpha1 => &self.degree1,
        };
        list.iter().position(|&x| x == g)
    }
}

pub(crate) fn pow(p: u64, e: u32) -> BigInt {
    BigInt::from(p).pow(e)
}

pub(crate) fn generator_label(f: &FundamentalForest, g: Generator) -> String {
    let name = match g.kind {
        GeneratorKind::RhoMinus1 => "rho-1",
        GeneratorKind::Rho0 => "rho0",
        GeneratorKind::Alpha0 => "alpha0",
        GeneratorKind::Alpha1 => "alpha1",
    };
    format!("{name}{}", f.full_label(g.graph))
}

pub fn fundamental_complex(f: &FundamentalForest) -> FundamentalComplex {
    use GeneratorKind::*;
    let p = f.prime();
    let k = f.subgraphs().len();
    let non_min: Vec<usize> = (0..k).filter(|&d| !f.is_minimal_graph(d)).collect();
    let deg_m1: Vec<Generator> = non_min.iter().map(|&d| Generator::new(RhoMinus1, d)).collect();
    let mut deg0: Vec<Generator> = non_min.iter().map(|&d| Generator::new(Rho0, d)).collect();
    deg0.extend((0..k).map(|d| Generator::new(Alpha0, d)));
    let deg1: Vec<Generator> = (0..k)
        .filter(|&d| !f.is_bipartite_component(d))
        .map(|d| Generator::new(Alpha1, d))
        .collect();
    let pos = |list: &[Generator], g: Generator| list.iter().position(|&x| x == g);

    let mut dm1 = IntMatrix::zeros(deg0.len(), deg_m1.len());
    for (j, gen) in deg_m1.iter().enumerate() {
        let d = gen.graph;
        let (m, rl) = (f.m(d), f.r_lower(d));
        dm1.set(pos(&deg0, Generator::new(Alpha0, d)).unwrap(), j, BigInt::from(1));
        dm1.set(pos(&deg0, Generator::new(Rho0, d)).unwrap(), j, -pow(p, rl - m));
        for o in f.phi(d) {
            let i = pos(&deg0, Generator::new(Alpha0, o)).unwrap();
            let v = dm1.get(i, j) - pow(p, f.m(o) - m);
            dm1.set(i, j, v);
        }
    }

    let mut d0 = IntMatrix::zeros(deg1.len(), deg0.len());
    for (j, gen) in deg0.iter().enumerate() {
        let d = gen.graph;
        let own = pos(&deg1, Generator::new(Alpha1, d));
        match gen.kind {
            Rho0 => {
                if let Some(i) = own {
                    let r = f.r(d).finite().expect("finite r outside bipartite components");
                    d0.set(i, j, pow(p, r - f.r_lower(d)));
                }
                for o in f.phi(d) {
                    let i = pos(&deg1, Generator::new(Alpha1, o)).expect("children carry alpha_1");
                    let v = d0.get(i, j) - BigInt::from(1);
                    d0.set(i, j, v);
                }
            }
            Alpha0 => {
                if let Some(i) = own {
                    let r = f.r(d).finite().expect("finite r outside bipartite components");
                    d0.set(i, j, pow(p, r - f.m(d)));
                }
            }
            _ => unreachable!(),
        }
    }
    let labels = |list: &[Generator]| list.iter().map(|&g| generator_label(f, g)).collect::<Vec<_>>();
    let dm1 = dm1.with_labels(labels(&deg0), labels(&deg_m1));
    let d0 = d0.with_labels(labels(&deg1), labels(&deg0));
    FundamentalComplex { prime: p, degree_minus1: deg_m1, degree0: deg0, degree1: deg1, d_minus1: dm1, d0 }
}

/// `(H^0, H^1)` of the fundamental complex.
pub fn complex_cohomology(c: &FundamentalComplex) -> (AbelianGroup, AbelianGroup) {
    (homology(&c.d_minus1, &c.d0), cokernel_structure(&c.d0))
}

/// Matrices of `chi` in degrees 0 and 1, into the cochains of the graph with
/// weights replaced by their p-parts.
#[derive(Debug, Clone)]
pub struct ChiMaps {
    pub chi0: IntMatrix,
    pub chi1: IntMatrix,
}

/// Fundamental chain of a forest graph with p-part weights and the forest's
/// global signs.
pub(crate) fn fundamental_vector(f: &FundamentalForest, d: usize) -> Vec<BigInt> {
    let g = f.graph();
    let kv = f.vertex_valuations();
    let mut c = vec![BigInt::zero(); g.vertex_count()];
    for &v in f.subgraph(d).vertices() {
        c[v] = BigInt::from(f.signs()[v]) * pow(f.prime(), kv[v]);
    }
    c
}

fn divide_exact(x: &[BigInt], q: &BigInt, what: &str) -> Result<Vec<BigInt>> {
    x.iter()
        .map(|c| {
            let (a, r) = c.div_rem(q);
            if r.is_zero() {
                Ok(a)
            } else {
                Err(Error::Invariant(format!("{what} is not divisible by {q}")))
            }
        })
        .collect()
}

pub fn chi(c: &FundamentalComplex, f: &FundamentalForest) -> Result<ChiMaps> {
    use GeneratorKind::*;
    let g = f.graph();
    let p = f.prime();
    let gp = g.p_part(p);
    let d0c = d0_matrix(&gp, &gp.full());
    let n = g.vertex_count();
    let mut cols0 = Vec::with_capacity(c.degree0.len());
    for gen in &c.degree0 {
        let d = gen.graph;
        let fund = fundamental_vector(f, d);
        let col = match gen.kind {
            Alpha0 => divide_exact(&fund, &pow(p, f.m(d)), "fundamental chain")?,
            Rho0 => {
                // zero unless Phi(Delta) misses vertices of Delta
                let mut diff = fund;
                for o in f.phi(d) {
                    for (x, y) in diff.iter_mut().zip(fundamental_vector(f, o)) {
                        *x -= y;
                    }
                }
                divide_exact(&diff, &pow(p, f.r_lower(d)), "correction chain")?
            }
            _ => unreachable!(),
        };
        cols0.push(col);
    }
    let mut cols1 = Vec::with_capacity(c.degree1.len());
    for gen in &c.degree1 {
        let d = gen.graph;
        let r = f.r(d).finite().expect("alpha_1 only on finite graphs");
        let boundary = d0c.mul_vec(&fundamental_vector(f, d));
        cols1.push(divide_exact(&boundary, &pow(p, r), "boundary of fundamental chain")?);
    }
    let vlabels: Vec<String> = g.ids().to_vec();
    let elabels: Vec<String> = (0..g.edge_count()).map(|e| g.edge_label(e)).collect();
    Ok(ChiMaps {
        chi0: IntMatrix::from_columns(n, &cols0).with_labels(vlabels, c.d_minus1.row_labels().to_vec()),
        chi1: IntMatrix::from_columns(g.edge_count(), &cols1).with_labels(elabels, c.d0.row_labels().to_vec()),
    })
}

/// Order of the subgroup of `coker(d^0)` generated by the `chi_1` images.
pub fn chi_image_torsion_order(f: &FundamentalForest, maps: &ChiMaps) -> Result<BigUint> {
    let gp = f.graph().p_part(f.prime());
    let a = d0_matrix(&gp, &gp.full());
    let ax = a.hstack(&maps.chi1);
    let whole = cokernel_structure(&a);
    let quotient = cokernel_structure(&ax);
    if whole.rank != quotient.rank {
        return Err(Error::Invariant("chi image is not torsion".into()));
    }
    Ok(whole.torsion_order() / quotient.torsion_order())
}
