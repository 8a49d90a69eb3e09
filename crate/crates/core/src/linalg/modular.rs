use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{cokernel_structure, smith_normal_form, AbelianGroup, IntMatrix, SmithDecomposition};
use crate::graph::p_valuation_int;

pub fn modulus(p: u64, s: u32) -> BigInt {
    BigInt::from(p).pow(s)
}

pub fn reduce_vec(x: &[BigInt], q: &BigInt) -> Vec<BigInt> {
    x.iter().map(|c| c.mod_floor(q)).collect()
}

fn exponents(snf: &SmithDecomposition, cols: usize, p: u64, s: u32) -> Vec<u32> {
    let diag = snf.diagonal();
    (0..cols)
        .map(|j| match diag.get(j) {
            Some(d) => p_valuation_int(d, p).unwrap().min(s),
            None => s,
        })
        .collect()
}

/// Generators of `{x : A x = 0 mod p^s}`, reduced into `[0, p^s)`.
pub fn kernel_mod(a: &IntMatrix, p: u64, s: u32) -> Vec<Vec<BigInt>> {
    let snf = smith_normal_form(a);
    let q = modulus(p, s);
    let mut gens = Vec::new();
    for (j, t) in exponents(&snf, a.cols(), p, s).into_iter().enumerate() {
        if t == 0 {
            continue;
        }
        let scale = modulus(p, s - t);
        let g: Vec<BigInt> = snf.v.column(j).iter().map(|x| (x * &scale).mod_floor(&q)).collect();
        gens.push(g);
    }
    gens
}

/// Order of the kernel of `A` modulo `p^s`, read off the Smith diagonal.
pub fn kernel_mod_order(a: &IntMatrix, p: u64, s: u32) -> BigUint {
    let snf = smith_normal_form(a);
    let total: u32 = exponents(&snf, a.cols(), p, s).iter().sum();
    BigUint::from(p).pow(total)
}

/// Order of the submodule of `(Z/p^s)^n` generated by `gens`.
pub fn module_order_mod(n: usize, gens: &[Vec<BigInt>], p: u64, s: u32) -> BigUint {
    let q = modulus(p, s);
    let g = IntMatrix::from_columns(n, gens);
    let mut qi = IntMatrix::zeros(n, n);
    for i in 0..n {
        qi.set(i, i, q.clone());
    }
    let coker = cokernel_structure(&g.hstack(&qi));
    debug_assert_eq!(coker.rank, 0);
    let whole = q.magnitude().pow(n as u32);
    whole / coker.torsion_order()
}

/// `dim_{Z/p}` of the cokernel of `p: ker(A mod p^{s-1}) -> ker(A mod p^s)`.
pub fn critical_dim(a: &IntMatrix, p: u64, s: u32) -> usize {
    assert!(s >= 1);
    let snf = smith_normal_form(a);
    let diag = snf.diagonal();
    (0..a.cols())
        .filter(|&j| match diag.get(j) {
            Some(d) => p_valuation_int(d, p).unwrap() >= s,
            None => true,
        })
        .count()
}

fn inverse_mod(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

/// Some `x` with `A x = b mod p^s`.
pub fn solve_mod(a: &IntMatrix, b: &[BigInt], p: u64, s: u32) -> Option<Vec<BigInt>> {
    assert_eq!(b.len(), a.rows(), "dimension mismatch");
    let q = modulus(p, s);
    let snf = smith_normal_form(a);
    let c = snf.u.mul_vec(b);
    let diag = snf.diagonal();
    let mut y = vec![BigInt::zero(); a.cols()];
    for (i, ci) in c.iter().enumerate() {
        let ci = ci.mod_floor(&q);
        match diag.get(i) {
            Some(d) => {
                let g = d.gcd(&q);
                if !ci.is_multiple_of(&g) {
                    return None;
                }
                let qg = &q / &g;
                y[i] = if qg.is_one() { BigInt::zero() } else { ((&ci / &g) * inverse_mod(&(d / &g), &qg)).mod_floor(&qg) };
            }
            None => {
                if !ci.is_zero() {
                    return None;
                }
            }
        }
    }
    Some(reduce_vec(&snf.v.mul_vec(&y), &q))
}

/// Some integer `x` with `A x = b`.
pub fn solve_integer(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    solve_with(&smith_normal_form(a), b)
}

pub fn solve_with(snf: &SmithDecomposition, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let c = snf.u.mul_vec(b);
    let diag = snf.diagonal();
    let mut y = vec![BigInt::zero(); snf.v.rows()];
    for (i, ci) in c.iter().enumerate() {
        match diag.get(i) {
            Some(d) => {
                let (qt, r) = ci.div_rem(d);
                if !r.is_zero() {
                    return None;
                }
                y[i] = qt;
            }
            None => {
                if !ci.is_zero() {
                    return None;
                }
            }
        }
    }
    Some(snf.v.mul_vec(&y))
}

/// A basis of the integer kernel of `A` (as columns).
pub fn kernel_basis(a: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(a);
    let r = snf.rank();
    let cols: Vec<usize> = (r..a.cols()).collect();
    snf.v.select_columns(&cols)
}

/// `ker(d_out) / im(d_in)` for composable maps with `d_out * d_in = 0`.
pub fn homology(d_in: &IntMatrix, d_out: &IntMatrix) -> AbelianGroup {
    assert_eq!(d_in.rows(), d_out.cols(), "maps are not composable");
    assert!(d_out.mul(d_in).is_zero(), "not a complex");
    let k = kernel_basis(d_out);
    if k.cols() == 0 {
        return AbelianGroup::trivial();
    }
    let ksnf = smith_normal_form(&k);
    let columns: Vec<Vec<BigInt>> = (0..d_in.cols())
        .map(|j| solve_with(&ksnf, &d_in.column(j)).expect("image lies in the kernel"))
        .collect();
    cokernel_structure(&IntMatrix::from_columns(k.cols(), &columns))
}
