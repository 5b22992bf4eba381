//! Test-only oracles, independent of the library's vector-form product.
#![allow(dead_code)]

use quatcomm_core::{Quaternion, Rational, Scalar};

/// `basis[a][b] = (sign, index)` with `e_a e_b = sign · e_index` over
/// `(1, i, j, k)`.
const HAMILTON: [[(i64, usize); 4]; 4] = [
    [(1, 0), (1, 1), (1, 2), (1, 3)],
    [(1, 1), (-1, 0), (1, 3), (-1, 2)],
    [(1, 2), (-1, 3), (-1, 0), (1, 1)],
    [(1, 3), (1, 2), (-1, 1), (-1, 0)],
];

/// Product by distributing over the 16-entry basis multiplication table.
pub fn table_mul<S: Scalar>(a: &Quaternion<S>, b: &Quaternion<S>) -> Quaternion<S> {
    let (x, y) = (a.components(), b.components());
    let mut out = [S::zero(), S::zero(), S::zero(), S::zero()];
    for p in 0..4 {
        for q in 0..4 {
            let (sign, idx) = HAMILTON[p][q];
            let term = x[p].clone() * y[q].clone() * S::from_i64(sign);
            out[idx] = out[idx].clone() + term;
        }
    }
    Quaternion::from_components(out)
}

pub fn table_commutator<S: Scalar>(a: &Quaternion<S>, b: &Quaternion<S>) -> Quaternion<S> {
    table_mul(a, b) - table_mul(b, a)
}

/// Right-nested commutator of `qs` taken in the order `order` (0-based).
pub fn table_nested<S: Scalar>(qs: &[Quaternion<S>], order: &[usize]) -> Quaternion<S> {
    let mut acc = qs[*order.last().unwrap()].clone();
    for &i in order[..order.len() - 1].iter().rev() {
        acc = table_commutator(&qs[i], &acc);
    }
    acc
}

pub fn table_product<S: Scalar>(qs: &[Quaternion<S>], order: &[usize]) -> Quaternion<S> {
    order[1..]
        .iter()
        .fold(qs[order[0]].clone(), |acc, &i| table_mul(&acc, &qs[i]))
}

/// All orders of `0..n` by Heap's algorithm, sorted lexicographically.
pub fn all_orders(n: usize) -> Vec<Vec<usize>> {
    fn heap(k: usize, a: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(a.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, a, out);
            if k.is_multiple_of(2) {
                a.swap(i, k - 1);
            } else {
                a.swap(0, k - 1);
            }
        }
    }
    let mut out = Vec::new();
    heap(n, &mut (0..n).collect(), &mut out);
    out.sort();
    out
}

/// 3×3 determinant by cofactor expansion of the imaginary parts as rows.
pub fn det_rows<S: Scalar>(a: &Quaternion<S>, b: &Quaternion<S>, c: &Quaternion<S>) -> S {
    let m = [a.im.components(), b.im.components(), c.im.components()];
    let minor = |r: usize, s: usize| m[1][r].clone() * m[2][s].clone() - m[1][s].clone() * m[2][r].clone();
    m[0][0].clone() * minor(1, 2) - m[0][1].clone() * minor(0, 2) + m[0][2].clone() * minor(0, 1)
}

pub fn q(w: i64, x: i64, y: i64, z: i64) -> Quaternion<Rational> {
    Quaternion::from_components([w, x, y, z].map(Rational::from_i64))
}
