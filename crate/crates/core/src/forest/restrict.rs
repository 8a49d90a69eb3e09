use num_bigint::BigInt;
use num_traits::Zero;

use super::complex::{chi, fundamental_complex, pow, ChiMaps, FundamentalComplex, Generator, GeneratorKind};
use super::{build_forest, FundamentalForest};
use crate::graph::{components, Subgraph};
use crate::linalg::{solve_integer, IntMatrix};
use crate::{Error, Result};

/// `j^*: F(G) -> F(D)` for a subgraph `D` of `G`, one matrix per degree.
#[derive(Debug, Clone)]
pub struct Restriction {
    pub source: FundamentalComplex,
    pub target_forest: FundamentalForest,
    pub target: FundamentalComplex,
    pub source_chi: ChiMaps,
    pub target_chi: ChiMaps,
    pub j_minus1: IntMatrix,
    pub j0: IntMatrix,
    pub j1: IntMatrix,
    /// `alpha` columns that could not use the componentwise formula.
    pub solved_columns: usize,
}

struct Piece {
    graph: Option<usize>,
    sign: Option<i8>,
}

fn pieces(f: &FundamentalForest, h: &FundamentalForest, d: &Subgraph, omega: usize) -> Vec<Piece> {
    let g = f.graph();
    let inter = f.subgraph(omega).intersection(d);
    let mut out = Vec::new();
    for psi in components(g, &inter) {
        let local = psi.relative_to(d).expect("pieces lie in the subgraph");
        let mut signs = psi.vertices().iter().zip(local.vertices()).map(|(&vg, &vh)| f.signs()[vg] * h.signs()[vh]);
        let first = signs.next().unwrap();
        let sign = if signs.all(|s| s == first) { Some(first) } else { None };
        out.push(Piece { graph: h.find_subgraph(&local), sign });
    }
    out
}

fn column_of(m: &IntMatrix, j: usize) -> Vec<BigInt> {
    m.column(j)
}

fn project(x: &[BigInt], keep: &[usize]) -> Vec<BigInt> {
    keep.iter().map(|&i| x[i].clone()).collect()
}

pub fn restrict(f: &FundamentalForest, d: &Subgraph) -> Result<Restriction> {
    use GeneratorKind::*;
    let g = f.graph();
    if !d.is_subgraph_of(&g.full()) {
        return Err(Error::Precondition("not a subgraph".into()));
    }
    let p = f.prime();
    // Orientations of subgraphs at p = 2 come from bipartitions of a further
    // reduction and do not restrict to orientations of the pieces.
    if p == 2 {
        return Err(Error::NotApplicable("restriction is only defined for odd primes".into()));
    }
    let hg = g.restrict(d);
    let h = build_forest(&hg, p)?;
    let cg = fundamental_complex(f);
    let ch = fundamental_complex(&h);
    let xg = chi(&cg, f)?;
    let xh = chi(&ch, &h)?;
    let mut solved = 0;
    let unsolvable = |what: &str| Error::Invariant(format!("{what} has no chi-compatible restriction"));

    // degree 1
    let mut j1_cols = Vec::with_capacity(cg.degree1.len());
    for (jg, gen) in cg.degree1.iter().enumerate() {
        let omega = gen.graph;
        let r_omega = f.r(omega).finite().unwrap();
        let mut col = vec![BigInt::zero(); ch.degree1.len()];
        let mut explicit = true;
        for piece in pieces(f, &h, d, omega) {
            if piece.graph.is_some_and(|psi| h.is_bipartite_component(psi)) {
                continue;
            }
            let (Some(psi), Some(sign)) = (piece.graph, piece.sign) else {
                explicit = false;
                break;
            };
            let r_psi = h.r(psi).finite().unwrap();
            if r_psi < r_omega {
                explicit = false;
                break;
            }
            let i = ch.position(Generator { kind: Alpha1, graph: psi }).unwrap();
            col[i] += BigInt::from(sign) * pow(p, r_psi - r_omega);
        }
        if !explicit {
            solved += 1;
            let rhs = project(&column_of(&xg.chi1, jg), d.edges());
            col = solve_integer(&xh.chi1, &rhs)
                .ok_or_else(|| unsolvable(&format!("alpha_1{}", f.label(omega))))?;
        }
        j1_cols.push(col);
    }
    let j1 = IntMatrix::from_columns(ch.degree1.len(), &j1_cols)
        .with_labels(ch.d0.row_labels().to_vec(), cg.d0.row_labels().to_vec());

    // degree 0: canonical representatives are spanned by rho_0 and the
    // alpha_0 of minimal graphs
    let canon: Vec<usize> = ch
        .degree0
        .iter()
        .enumerate()
        .filter(|(_, x)| x.kind == Rho0 || h.is_minimal_graph(x.graph))
        .map(|(i, _)| i)
        .collect();
    let system = ch.d0.select_columns(&canon).vstack(&xh.chi0.select_columns(&canon));
    if system.rank() != canon.len() {
        return Err(Error::Invariant("canonical degree-0 system is not injective".into()));
    }
    let solve_canonical = |jg: usize| -> Result<Vec<BigInt>> {
        let mut rhs = j1.mul_vec(&column_of(&cg.d0, jg));
        rhs.extend(project(&column_of(&xg.chi0, jg), d.vertices()));
        let y = solve_integer(&system, &rhs)
            .ok_or_else(|| unsolvable("degree 0"))?;
        let mut col = vec![BigInt::zero(); ch.degree0.len()];
        for (k, &i) in canon.iter().enumerate() {
            col[i] = y[k].clone();
        }
        Ok(col)
    };
    let mut j0_cols = Vec::with_capacity(cg.degree0.len());
    for (jg, gen) in cg.degree0.iter().enumerate() {
        let col = match gen.kind {
            Rho0 => solve_canonical(jg)?,
            Alpha0 => {
                let omega = gen.graph;
                let mut col = vec![BigInt::zero(); ch.degree0.len()];
                let mut explicit = true;
                for piece in pieces(f, &h, d, omega) {
                    match (piece.graph, piece.sign) {
                        (Some(psi), Some(sign)) => {
                            let i = ch.position(Generator { kind: Alpha0, graph: psi }).unwrap();
                            col[i] += BigInt::from(sign) * pow(p, h.m(psi) - f.m(omega));
                        }
                        _ => {
                            explicit = false;
                            break;
                        }
                    }
                }
                if explicit {
                    col
                } else {
                    solved += 1;
                    solve_canonical(jg)?
                }
            }
            _ => unreachable!(),
        };
        j0_cols.push(col);
    }
    let j0 = IntMatrix::from_columns(ch.degree0.len(), &j0_cols)
        .with_labels(ch.d0.col_labels().to_vec(), cg.d0.col_labels().to_vec());

    // degree -1 is forced by injectivity of d^-1
    let mut jm1_cols = Vec::with_capacity(cg.degree_minus1.len());
    for jg in 0..cg.degree_minus1.len() {
        let target = j0.mul_vec(&column_of(&cg.d_minus1, jg));
        let z = solve_integer(&ch.d_minus1, &target)
            .ok_or_else(|| Error::Invariant("degree -1 restriction has no preimage".into()))?;
        jm1_cols.push(z);
    }
    let j_minus1 = IntMatrix::from_columns(ch.degree_minus1.len(), &jm1_cols)
        .with_labels(ch.d_minus1.col_labels().to_vec(), cg.d_minus1.col_labels().to_vec());

    Ok(Restriction {
        source: cg,
        target_forest: h,
        target: ch,
        source_chi: xg,
        target_chi: xh,
        j_minus1,
        j0,
        j1,
        solved_columns: solved,
    })
}

impl Restriction {
    /// `j d = d j` in both degrees.
    pub fn is_chain_map(&self) -> bool {
        self.j0.mul(&self.source.d_minus1) == self.target.d_minus1.mul(&self.j_minus1)
            && self.j1.mul(&self.source.d0) == self.target.d0.mul(&self.j0)
    }

    /// `chi_D j = res chi_G` in degrees 0 and 1.
    pub fn is_compatible_with_chi(&self, d: &Subgraph) -> bool {
        let res0 = self.source_chi.chi0.select_rows(d.vertices());
        let res1 = self.source_chi.chi1.select_rows(d.edges());
        let lhs0 = self.target_chi.chi0.mul(&self.j0);
        let lhs1 = self.target_chi.chi1.mul(&self.j1);
        same_entries(&lhs0, &res0) && same_entries(&lhs1, &res1)
    }
}

fn same_entries(a: &IntMatrix, b: &IntMatrix) -> bool {
    a.rows() == b.rows()
        && a.cols() == b.cols()
        && (0..a.rows()).all(|i| (0..a.cols()).all(|j| a.get(i, j) == b.get(i, j)))
}
