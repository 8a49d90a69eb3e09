use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::IntMatrix;
use crate::graph::p_valuation;

/// `U * A * V = S` with `U`, `V` unimodular and `S` in Smith form.
#[derive(Debug, Clone)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
}

impl SmithDecomposition {
    /// Nonzero diagonal entries of `S`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        let n = self.s.rows().min(self.s.cols());
        (0..n).map(|i| self.s.get(i, i).clone()).take_while(|d| !d.is_zero()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().len()
    }
}

/// Finitely generated abelian group: free rank plus invariant factors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianGroup {
    pub rank: usize,
    #[serde(with = "decimal_list")]
    pub divisors: Vec<BigUint>,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        AbelianGroup { rank: 0, divisors: Vec::new() }
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup { rank, divisors: Vec::new() }
    }

    /// Normalizes an arbitrary list of cyclic orders into invariant factors.
    pub fn from_cyclic_orders(rank: usize, orders: &[BigUint]) -> Self {
        let n = orders.len();
        let mut m = IntMatrix::zeros(n, n);
        for (i, o) in orders.iter().enumerate() {
            m.set(i, i, BigInt::from(o.clone()));
        }
        let g = cokernel_structure(&m);
        AbelianGroup { rank: rank + g.rank, divisors: g.divisors }
    }

    pub fn torsion_order(&self) -> BigUint {
        self.divisors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.divisors.is_empty()
    }

    /// Exponents of the p-primary part, ascending.
    pub fn p_exponents(&self, p: u64) -> Vec<u32> {
        self.divisors.iter().map(|d| p_valuation(d, p)).filter(|&e| e > 0).collect()
    }

    /// Direct sum.
    pub fn sum(&self, other: &AbelianGroup) -> AbelianGroup {
        let orders: Vec<BigUint> = self.divisors.iter().chain(&other.divisors).cloned().collect();
        AbelianGroup::from_cyclic_orders(self.rank + other.rank, &orders)
    }
}

mod decimal_list {
    use num_bigint::BigUint;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|x| x.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigUint>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|s| s.parse::<BigUint>().map_err(D::Error::custom))
            .collect()
    }
}

fn min_abs_nonzero<I: Iterator<Item = (usize, usize)>>(a: &IntMatrix, cells: I) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), BigInt)> = None;
    for (i, j) in cells {
        let x = a.get(i, j);
        if x.is_zero() {
            continue;
        }
        let ax = x.abs();
        if best.as_ref().is_none_or(|(_, b)| ax < *b) {
            let done = ax.is_one();
            best = Some(((i, j), ax));
            if done {
                break;
            }
        }
    }
    best.map(|(c, _)| c)
}

/// Smith normal form; pivots on a nonzero entry of least absolute value.
///
/// Panics if the multiplied-back check `U A V = S` fails.
pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let (m, n) = (a.rows(), a.cols());
    let mut s = a.clone();
    let mut u = IntMatrix::identity(m).with_labels(a.row_labels().to_vec(), a.row_labels().to_vec());
    let mut v = IntMatrix::identity(n).with_labels(a.col_labels().to_vec(), a.col_labels().to_vec());
    let mut t = 0;
    while t < m.min(n) {
        let cells = (t..m).flat_map(|i| (t..n).map(move |j| (i, j)));
        let Some((pi, pj)) = min_abs_nonzero(&s, cells) else {
            break;
        };
        s.swap_rows(t, pi);
        u.swap_rows(t, pi);
        s.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..m {
                if s.get(i, t).is_zero() {
                    continue;
                }
                let q = -(s.get(i, t) / s.get(t, t));
                if !q.is_zero() {
                    s.add_row(i, t, &q);
                    u.add_row(i, t, &q);
                }
                if !s.get(i, t).is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..n {
                if s.get(t, j).is_zero() {
                    continue;
                }
                let q = -(s.get(t, j) / s.get(t, t));
                if !q.is_zero() {
                    s.add_col(j, t, &q);
                    v.add_col(j, t, &q);
                }
                if !s.get(t, j).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                let cells = (t..m).map(|i| (i, t)).chain((t + 1..n).map(|j| (t, j)));
                let (pi, pj) = min_abs_nonzero(&s, cells).expect("pivot row/column nonzero");
                s.swap_rows(t, pi);
                u.swap_rows(t, pi);
                s.swap_cols(t, pj);
                v.swap_cols(t, pj);
                continue;
            }
            let pivot = s.get(t, t).clone();
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !s.get(i, j).is_multiple_of(&pivot)));
            match bad {
                Some(i) => {
                    let one = BigInt::one();
                    s.add_row(t, i, &one);
                    u.add_row(t, i, &one);
                }
                None => break,
            }
        }
        if s.get(t, t).is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    let check = u.mul(a).mul(&v);
    assert!(check == s, "Smith decomposition failed to multiply back");
    SmithDecomposition { u, s, v }
}

/// Cokernel of `A: Z^cols -> Z^rows`.
pub fn cokernel_structure(a: &IntMatrix) -> AbelianGroup {
    let snf = smith_normal_form(a);
    let diag = snf.diagonal();
    AbelianGroup {
        rank: a.rows() - diag.len(),
        divisors: diag.into_iter().filter(|d| !d.is_one()).map(|d| d.into_parts().1).collect(),
    }
}
