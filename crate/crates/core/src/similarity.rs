//! Multiproducts, similarity, and similarity-class enumeration.
//!
//! `p ~ q` (there is `s ≠ 0` with `q = s⁻¹ p s`) holds exactly when `p` and
//! `q` share their real part and their norm. All criteria here are phrased
//! with squared norms and polynomial expressions so that Exact mode never
//! needs a square root.

use std::cmp::Ordering;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::permutation::{factorial, Permutation};
use crate::quaternion::{Quaternion, Vector3};
use crate::report::serialize_display;
use crate::scalar::{Mode, Scalar, Tolerance};

/// `q_σ(1) q_σ(2) ⋯ q_σ(n)`.
pub fn multiproduct<S: Scalar>(qs: &[Quaternion<S>], sigma: &Permutation) -> Result<Quaternion<S>> {
    if qs.is_empty() {
        return Err(Error::Arity {
            op: "multiproduct",
            min: 1,
            got: 0,
        });
    }
    let ordered = sigma.arrange(qs)?;
    Ok(ordered[1..]
        .iter()
        .fold(ordered[0].clone(), |acc, q| acc.mul(q)))
}

/// The similarity invariants of a quaternion.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound = "")]
pub struct SimilarityKey<S: Scalar> {
    #[serde(serialize_with = "serialize_display")]
    pub re: S,
    #[serde(serialize_with = "serialize_display")]
    pub norm_sq: S,
}

impl<S: Scalar> SimilarityKey<S> {
    pub fn of(q: &Quaternion<S>) -> Self {
        Self {
            re: q.re.clone(),
            norm_sq: q.norm_sq(),
        }
    }

    /// Exact equality in Exact mode. In Float mode the real parts are
    /// compared relative to `sqrt(max norm_sq)` and the squared norms
    /// relative to themselves.
    pub fn matches(&self, other: &Self, tol: &Tolerance) -> bool {
        let scale = self.norm_sq.to_f64().max(other.norm_sq.to_f64()).sqrt();
        self.re.near_scaled(&other.re, scale, tol) && self.norm_sq.near(&other.norm_sq, tol)
    }

    fn cmp_exact(&self, other: &Self) -> Ordering {
        self.re
            .partial_cmp(&other.re)
            .unwrap_or(Ordering::Equal)
            .then(self.norm_sq.partial_cmp(&other.norm_sq).unwrap_or(Ordering::Equal))
    }
}

pub fn is_similar<S: Scalar>(p: &Quaternion<S>, q: &Quaternion<S>) -> bool {
    is_similar_with(p, q, &Tolerance::default())
}

pub fn is_similar_with<S: Scalar>(p: &Quaternion<S>, q: &Quaternion<S>, tol: &Tolerance) -> bool {
    SimilarityKey::of(p).matches(&SimilarityKey::of(q), tol)
}

/// Returns `s ≠ 0` with `s⁻¹ p s = q`.
///
/// With `a = im p`, `b = im q` and `|a| = |b|`, the quaternion
/// `r = |a||b| + a·b + a×b` rotates `a` onto `b` under `x ↦ r x r⁻¹`, so
/// `s = conj(r)` works. `|a||b| = |a|²` keeps everything rational in Exact
/// mode. When `b = −a` the construction collapses and any nonzero vector
/// orthogonal to `a` is used instead.
pub fn similarity_witness<S: Scalar>(p: &Quaternion<S>, q: &Quaternion<S>) -> Result<Quaternion<S>> {
    similarity_witness_with(p, q, &Tolerance::default())
}

pub fn similarity_witness_with<S: Scalar>(
    p: &Quaternion<S>,
    q: &Quaternion<S>,
    tol: &Tolerance,
) -> Result<Quaternion<S>> {
    if !is_similar_with(p, q, tol) {
        return Err(Error::Precondition(format!("{p} and {q} are not similar")));
    }
    let (a, b) = (&p.im, &q.im);
    if Quaternion::pure(a.clone()).approx_eq(&Quaternion::pure(b.clone()), tol) {
        return Ok(Quaternion::one());
    }
    let ab = (a.norm_sq() * b.norm_sq()).try_sqrt()?;
    let r = Quaternion::from_parts(ab.clone() + a.dot(b), a.cross(b));
    if !r.norm_sq().near_scaled(&S::zero(), ab.to_f64() * ab.to_f64(), tol) {
        return Ok(r.conj());
    }
    Ok(Quaternion::pure(orthogonal_to(a)))
}

/// A nonzero vector orthogonal to `v ≠ 0`: `v × e` for the basis axis `e`
/// along which `v` has its smallest component.
fn orthogonal_to<S: Scalar>(v: &Vector3<S>) -> Vector3<S> {
    let comps = v.components().map(|c| c.abs_val());
    let axis = (0..3)
        .min_by(|&i, &j| comps[i].partial_cmp(&comps[j]).unwrap_or(Ordering::Equal))
        .expect("three components");
    let mut e = [S::zero(), S::zero(), S::zero()];
    e[axis] = S::one();
    v.cross(&Vector3::from_components(e))
}

/// `s` with `s⁻¹ (ab) s = ba`: `s = b⁻¹`, i.e. `b (ab) b⁻¹ = ba`.
/// For `b = 0` both products vanish and `s = 1`.
pub fn product_swap_witness<S: Scalar>(_a: &Quaternion<S>, b: &Quaternion<S>) -> Quaternion<S> {
    b.inverse().unwrap_or_else(|_| Quaternion::one())
}

/// `s⁻¹ p s`.
pub fn conjugate_by<S: Scalar>(p: &Quaternion<S>, s: &Quaternion<S>) -> Result<Quaternion<S>> {
    Ok(s.inverse()?.mul(&p.mul(s)))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound = "")]
pub struct ClassMember<S: Scalar> {
    pub permutation: Permutation,
    #[serde(serialize_with = "serialize_display")]
    pub product: Quaternion<S>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound = "")]
pub struct SimilarityClass<S: Scalar> {
    pub key: SimilarityKey<S>,
    /// Members in lexicographic permutation order.
    pub members: Vec<ClassMember<S>>,
    /// Refinement by exact product equality (Exact mode only); each group
    /// lists the permutations with identical products.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub equality_classes: Option<Vec<Vec<Permutation>>>,
}

/// All `n!` multiproducts of a tuple grouped into similarity classes.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound = "")]
pub struct ClassPartition<S: Scalar> {
    pub tuple_size: usize,
    pub mode: Mode,
    /// Float-mode partitions come from tolerance bucketing and are not
    /// decisive.
    pub heuristic: bool,
    /// Classes ordered by their lexicographically first member.
    pub classes: Vec<SimilarityClass<S>>,
}

impl<S: Scalar> ClassPartition<S> {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c.members.len()).collect()
    }

    /// Index of the class holding `sigma`.
    pub fn class_of(&self, sigma: &Permutation) -> Option<usize> {
        self.classes
            .iter()
            .position(|c| c.members.iter().any(|m| &m.permutation == sigma))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PartitionOptions {
    pub max_n: usize,
    pub tolerance: Tolerance,
}

impl Default for PartitionOptions {
    fn default() -> Self {
        Self {
            max_n: 8,
            tolerance: Tolerance::default(),
        }
    }
}

pub fn enumerate_class_partition<S: Scalar>(qs: &[Quaternion<S>]) -> Result<ClassPartition<S>> {
    enumerate_class_partition_with(qs, &PartitionOptions::default())
}

pub fn enumerate_class_partition_with<S: Scalar>(
    qs: &[Quaternion<S>],
    opts: &PartitionOptions,
) -> Result<ClassPartition<S>> {
    let n = qs.len();
    if n == 0 {
        return Err(Error::Arity {
            op: "enumerate_class_partition",
            min: 1,
            got: 0,
        });
    }
    if n > opts.max_n {
        return Err(Error::SizeLimit { n, max: opts.max_n });
    }
    let exact = S::MODE == Mode::Exact;
    let perms: Vec<Permutation> = Permutation::all(n).collect();

    if qs.iter().any(Quaternion::is_zero) {
        let members: Vec<_> = perms
            .iter()
            .map(|p| ClassMember {
                permutation: p.clone(),
                product: Quaternion::zero(),
            })
            .collect();
        return Ok(ClassPartition {
            tuple_size: n,
            mode: S::MODE,
            heuristic: !exact,
            classes: vec![SimilarityClass {
                key: SimilarityKey::of(&Quaternion::zero()),
                equality_classes: exact.then(|| vec![perms.clone()]),
                members,
            }],
        });
    }

    let products = perms
        .par_iter()
        .map(|p| multiproduct(qs, p))
        .collect::<Result<Vec<_>>>()?;
    let keys: Vec<SimilarityKey<S>> = products.par_iter().map(SimilarityKey::of).collect();

    // Groups of indices into `perms`, each sorted ascending.
    let mut groups: Vec<Vec<usize>> = if exact {
        let mut order: Vec<usize> = (0..perms.len()).collect();
        order.sort_by(|&x, &y| keys[x].cmp_exact(&keys[y]).then(x.cmp(&y)));
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for idx in order {
            match groups.last_mut() {
                Some(g) if keys[g[0]] == keys[idx] => g.push(idx),
                _ => groups.push(vec![idx]),
            }
        }
        groups
    } else {
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for idx in 0..perms.len() {
            match groups
                .iter_mut()
                .find(|g| keys[g[0]].matches(&keys[idx], &opts.tolerance))
            {
                Some(g) => g.push(idx),
                None => groups.push(vec![idx]),
            }
        }
        groups
    };
    groups.sort_by_key(|g| g[0]);

    let classes = groups
        .into_iter()
        .map(|g| {
            let equality_classes = exact.then(|| equality_refinement(&g, &products, &perms));
            SimilarityClass {
                key: keys[g[0]].clone(),
                members: g
                    .iter()
                    .map(|&i| ClassMember {
                        permutation: perms[i].clone(),
                        product: products[i].clone(),
                    })
                    .collect(),
                equality_classes,
            }
        })
        .collect();

    Ok(ClassPartition {
        tuple_size: n,
        mode: S::MODE,
        heuristic: !exact,
        classes,
    })
}

fn equality_refinement<S: Scalar>(
    group: &[usize],
    products: &[Quaternion<S>],
    perms: &[Permutation],
) -> Vec<Vec<Permutation>> {
    let cmp = |x: &Quaternion<S>, y: &Quaternion<S>| {
        x.components()
            .iter()
            .zip(y.components().iter())
            .map(|(a, b)| a.partial_cmp(b).unwrap_or(Ordering::Equal))
            .find(|o| *o != Ordering::Equal)
            .unwrap_or(Ordering::Equal)
    };
    let mut order = group.to_vec();
    order.sort_by(|&x, &y| cmp(&products[x], &products[y]).then(x.cmp(&y)));
    let mut sub: Vec<Vec<usize>> = Vec::new();
    for idx in order {
        match sub.last_mut() {
            Some(g) if products[g[0]] == products[idx] => g.push(idx),
            _ => sub.push(vec![idx]),
        }
    }
    sub.sort_by_key(|g| g[0]);
    sub.into_iter()
        .map(|g| g.into_iter().map(|i| perms[i].clone()).collect())
        .collect()
}

/// Upper bound on the class count from cyclic similarity: `(n−1)!`.
pub fn class_count_bound(n: usize) -> usize {
    factorial(n.saturating_sub(1)).max(1)
}

/// `det[a, b, c] = (a × b) · c` over the imaginary parts.
pub fn triple_det<S: Scalar>(a: &Quaternion<S>, b: &Quaternion<S>, c: &Quaternion<S>) -> S {
    Vector3::triple(&a.im, &b.im, &c.im)
}

/// `re(abc) − re(acb)` by direct multiplication.
pub fn triple_re_difference<S: Scalar>(a: &Quaternion<S>, b: &Quaternion<S>, c: &Quaternion<S>) -> S {
    a.mul(b).mul(c).re - a.mul(c).mul(b).re
}

/// `abc ~ acb` decided by `det[a, b, c] = 0`.
pub fn triple_similar_criterion<S: Scalar>(a: &Quaternion<S>, b: &Quaternion<S>, c: &Quaternion<S>) -> bool {
    triple_similar_criterion_with(a, b, c, &Tolerance::default())
}

pub fn triple_similar_criterion_with<S: Scalar>(
    a: &Quaternion<S>,
    b: &Quaternion<S>,
    c: &Quaternion<S>,
    tol: &Tolerance,
) -> bool {
    let scale = [a, b, c]
        .iter()
        .map(|q| q.im.norm_sq().to_f64().sqrt())
        .product::<f64>();
    triple_det(a, b, c).near_scaled(&S::zero(), scale, tol)
}

/// `re(abcd) − re(adcb)` by direct multiplication.
pub fn quad_re_difference_direct<S: Scalar>(
    a: &Quaternion<S>,
    b: &Quaternion<S>,
    c: &Quaternion<S>,
    d: &Quaternion<S>,
) -> S {
    a.mul(b).mul(c).mul(d).re - a.mul(d).mul(c).mul(b).re
}

/// `re(abcd) − re(acbd)` by direct multiplication.
pub fn quad_re_difference_acbd<S: Scalar>(
    a: &Quaternion<S>,
    b: &Quaternion<S>,
    c: &Quaternion<S>,
    d: &Quaternion<S>,
) -> S {
    a.mul(b).mul(c).mul(d).re - a.mul(c).mul(b).mul(d).re
}

/// Closed form `−2[(a₀b + b₀a)·(c × d) + (a × b)·(c₀d + d₀c)]`, over
/// imaginary parts.
pub fn quad_re_difference_formula<S: Scalar>(
    a: &Quaternion<S>,
    b: &Quaternion<S>,
    c: &Quaternion<S>,
    d: &Quaternion<S>,
) -> S {
    let left = (b.im.scale(&a.re) + a.im.scale(&b.re)).dot(&c.im.cross(&d.im));
    let right = a.im.cross(&b.im).dot(&(d.im.scale(&c.re) + c.im.scale(&d.re)));
    S::from_i64(-2) * (left + right)
}

/// A linear relation `αa + βb + γc + δd = 0` among four imaginary parts.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound = "")]
pub struct DependenceCoefficients<S: Scalar> {
    #[serde(serialize_with = "serialize_display")]
    pub alpha: S,
    #[serde(serialize_with = "serialize_display")]
    pub beta: S,
    #[serde(serialize_with = "serialize_display")]
    pub gamma: S,
    #[serde(serialize_with = "serialize_display")]
    pub delta: S,
    /// Dimension of the null space; above 1 the vectors span less than
    /// 3-space and the relation is not unique.
    pub nullity: usize,
}

impl<S: Scalar> DependenceCoefficients<S> {
    pub fn new(alpha: S, beta: S, gamma: S, delta: S) -> Self {
        Self {
            alpha,
            beta,
            gamma,
            delta,
            nullity: 1,
        }
    }

    pub fn as_array(&self) -> [S; 4] {
        [
            self.alpha.clone(),
            self.beta.clone(),
            self.gamma.clone(),
            self.delta.clone(),
        ]
    }

    pub fn spans_space(&self) -> bool {
        self.nullity == 1
    }

    /// `αa + βb + γc + δd`.
    pub fn combine(&self, vs: [&Vector3<S>; 4]) -> Vector3<S> {
        self.as_array()
            .iter()
            .zip(vs)
            .fold(Vector3::zero(), |acc, (coef, v)| acc + v.scale(coef))
    }
}

/// A normalized null vector of the 3×4 matrix `[a b c d]` of imaginary
/// parts, by exact Gauss-Jordan elimination. The basis vector of the first
/// free column is returned, scaled so its first nonzero entry is 1.
pub fn dependence_coefficients<S: Scalar>(
    a: &Quaternion<S>,
    b: &Quaternion<S>,
    c: &Quaternion<S>,
    d: &Quaternion<S>,
) -> Result<DependenceCoefficients<S>> {
    if S::MODE != Mode::Exact {
        return Err(Error::ModeUnsupported {
            op: "dependence_coefficients",
            mode: S::MODE,
        });
    }
    let cols = [a, b, c, d].map(|q| q.im.components());
    let mut m: Vec<Vec<S>> = (0..3)
        .map(|r| (0..4).map(|col| cols[col][r].clone()).collect())
        .collect();

    let mut pivots: Vec<usize> = Vec::new();
    let mut row = 0;
    for col in 0..4 {
        if row == 3 {
            break;
        }
        let Some(p) = (row..3).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let lead = m[row][col].clone();
        for x in m[row].iter_mut() {
            *x = x.try_div(&lead)?;
        }
        let pivot_row = m[row].clone();
        for (r, cur) in m.iter_mut().enumerate() {
            if r != row && !cur[col].is_zero() {
                let f = cur[col].clone();
                for (x, p) in cur.iter_mut().zip(&pivot_row) {
                    *x = x.clone() - f.clone() * p.clone();
                }
            }
        }
        pivots.push(col);
        row += 1;
    }

    let free: Vec<usize> = (0..4).filter(|c| !pivots.contains(c)).collect();
    let f = free[0];
    let mut x = vec![S::zero(); 4];
    x[f] = S::one();
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = -m[r][f].clone();
    }
    let lead = x.iter().find(|v| !v.is_zero()).expect("free entry is 1").clone();
    let x: Vec<S> = x
        .iter()
        .map(|v| v.try_div(&lead))
        .collect::<Result<_>>()?;
    Ok(DependenceCoefficients {
        alpha: x[0].clone(),
        beta: x[1].clone(),
        gamma: x[2].clone(),
        delta: x[3].clone(),
        nullity: free.len(),
    })
}

/// `a₀α − b₀β + c₀γ − d₀δ`. Fails unless `coeffs` is a nonzero relation
/// among the imaginary parts.
pub fn quad_criterion<S: Scalar>(
    a: &Quaternion<S>,
    b: &Quaternion<S>,
    c: &Quaternion<S>,
    d: &Quaternion<S>,
    coeffs: &DependenceCoefficients<S>,
) -> Result<S> {
    let tol = Tolerance::default();
    let coef = coeffs.as_array();
    if coef.iter().all(|x| x.is_near_zero(&tol)) {
        return Err(Error::Precondition("dependence coefficients are all zero".into()));
    }
    let residual = Quaternion::pure(coeffs.combine([&a.im, &b.im, &c.im, &d.im]));
    let scale = [a, b, c, d]
        .iter()
        .zip(coef.iter())
        .map(|(q, x)| q.magnitude() * x.to_f64().abs())
        .fold(0.0, f64::max);
    if !residual.approx_eq(&Quaternion::zero(), &Tolerance::new(tol.rel * scale.max(1.0), tol.abs)) {
        return Err(Error::Precondition(format!(
            "coefficients leave residual {residual}"
        )));
    }
    let [al, be, ga, de] = coef;
    Ok(a.re.clone() * al - b.re.clone() * be + c.re.clone() * ga - d.re.clone() * de)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{ratio, Rational};

    type QR = Quaternion<Rational>;
    type QF = Quaternion<f64>;

    fn qr(w: i64, x: i64, y: i64, z: i64) -> QR {
        QR::from_components([w, x, y, z].map(Rational::from_i64))
    }

    fn r(v: i64) -> Rational {
        Rational::from_i64(v)
    }

    #[test]
    fn multiproduct_examples() {
        let a = qr(1, 2, 0, -1);
        let b = qr(0, 1, 3, 1);
        assert_eq!(
            multiproduct(&[a.clone(), b.clone()], &Permutation::identity(2)).unwrap(),
            a.mul(&b)
        );
        let ijk = [QR::i(), QR::j(), QR::k()];
        assert_eq!(multiproduct(&ijk, &Permutation::identity(3)).unwrap(), -QR::one());
        let ikj = Permutation::from_one_based(&[1, 3, 2]).unwrap();
        assert_eq!(multiproduct(&ijk, &ikj).unwrap(), QR::one());
        assert!(matches!(
            multiproduct::<Rational>(&[], &Permutation::identity(0)),
            Err(Error::Arity { .. })
        ));
    }

    #[test]
    fn similarity_examples() {
        let q = qr(3, 1, -2, 5);
        assert!(is_similar(&q, &q));
        assert!(is_similar(&QR::i(), &QR::j()));
        assert!(!is_similar(&QR::i(), &qr(1, 1, 0, 0)));
    }

    #[test]
    fn witness_examples() {
        let q = qr(3, 1, -2, 5);
        assert_eq!(similarity_witness(&q, &q).unwrap(), QR::one());

        let s = similarity_witness(&QR::i(), &-QR::i()).unwrap();
        assert_eq!(conjugate_by(&QR::i(), &s).unwrap(), -QR::i());
        // j itself also works
        assert_eq!(conjugate_by(&QR::i(), &QR::j()).unwrap(), -QR::i());

        let s = similarity_witness(&QR::i(), &QR::j()).unwrap();
        assert_eq!(conjugate_by(&QR::i(), &s).unwrap(), QR::j());

        assert!(matches!(
            similarity_witness(&QR::i(), &qr(1, 1, 0, 0)),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn witness_float() {
        let p = QF::new(0.5, 1.0, 2.0, -2.0);
        let q = QF::new(0.5, 0.0, 3.0, 0.0);
        let s = similarity_witness(&p, &q).unwrap();
        assert!(conjugate_by(&p, &s).unwrap().approx_eq(&q, &Tolerance::default()));
        let s = similarity_witness(&p, &QF::new(0.5, -1.0, -2.0, 2.0)).unwrap();
        assert!(conjugate_by(&p, &s)
            .unwrap()
            .approx_eq(&QF::new(0.5, -1.0, -2.0, 2.0), &Tolerance::default()));
    }

    #[test]
    fn swap_witness() {
        let a = qr(1, 2, 3, 4);
        let b = qr(-2, 0, 1, 5);
        let s = product_swap_witness(&a, &b);
        assert_eq!(conjugate_by(&a.mul(&b), &s).unwrap(), b.mul(&a));
    }

    #[test]
    fn pair_partition_is_single_class() {
        let part = enumerate_class_partition(&[qr(1, 2, 0, -1), qr(0, 1, 3, 1)]).unwrap();
        assert_eq!(part.class_sizes(), vec![2]);
        assert!(!part.heuristic);
    }

    #[test]
    fn generic_triple_has_two_classes() {
        let part = enumerate_class_partition(&[qr(1, 2, 0, -1), qr(0, 1, 3, 1), qr(2, -1, 1, 4)]).unwrap();
        assert_eq!(part.class_sizes(), vec![3, 3]);
        let id = Permutation::identity(3);
        let c = part.class_of(&id).unwrap();
        for k in 1..3 {
            assert_eq!(part.class_of(&id.rotate_word(k)), Some(c));
        }
    }

    #[test]
    fn dependent_triple_collapses() {
        let a = qr(1, 2, 0, -1);
        let b = qr(0, 1, 3, 1);
        let c = QR::from_parts(r(5), a.im.clone() + b.im.clone());
        let part = enumerate_class_partition(&[a, b, c]).unwrap();
        assert_eq!(part.class_sizes(), vec![6]);
    }

    #[test]
    fn zero_tuple_is_single_zero_class() {
        let part = enumerate_class_partition(&[qr(1, 2, 0, -1), QR::zero(), qr(2, 1, 1, 1)]).unwrap();
        assert_eq!(part.class_count(), 1);
        assert_eq!(part.classes[0].members.len(), 6);
        assert_eq!(part.classes[0].equality_classes.as_ref().unwrap().len(), 1);
    }

    #[test]
    fn partition_size_limit() {
        let qs = vec![QR::i(); 9];
        assert!(matches!(
            enumerate_class_partition(&qs),
            Err(Error::SizeLimit { n: 9, max: 8 })
        ));
        let opts = PartitionOptions {
            max_n: 2,
            ..Default::default()
        };
        assert!(enumerate_class_partition_with(&[QR::i(), QR::j(), QR::k()], &opts).is_err());
    }

    #[test]
    fn equality_refinement_splits_distinct_products() {
        // i, j, k: products are ±1 split between the two cyclic classes
        let part = enumerate_class_partition(&[QR::i(), QR::j(), QR::k()]).unwrap();
        assert_eq!(part.class_count(), 2);
        for class in &part.classes {
            assert_eq!(class.equality_classes.as_ref().unwrap().len(), 1);
        }
        // i, i, j: abc ~ acb, products j·(-1), i·i·j, i·j·i split by equality
        let part = enumerate_class_partition(&[QR::i(), QR::i(), QR::j()]).unwrap();
        assert_eq!(part.class_count(), 1);
        assert_eq!(part.classes[0].equality_classes.as_ref().unwrap().len(), 2);
    }

    #[test]
    fn float_partition_is_heuristic() {
        let qs = [QF::new(1.0, 0.3, -0.2, 0.9), QF::new(-0.4, 1.1, 0.5, 0.2), QF::new(0.7, -0.6, 0.8, -1.3)];
        let part = enumerate_class_partition(&qs).unwrap();
        assert!(part.heuristic);
        assert_eq!(part.class_sizes(), vec![3, 3]);
        assert!(part.classes.iter().all(|c| c.equality_classes.is_none()));
    }

    #[test]
    fn triple_examples() {
        let (i, j, k) = (QR::i(), QR::j(), QR::k());
        assert_eq!(triple_re_difference(&i, &j, &k), r(-2));
        assert_eq!(triple_det(&i, &j, &k), r(1));
        assert_eq!(triple_re_difference(&i, &i, &j), r(0));
        assert!(!triple_similar_criterion(&i, &j, &k));
        assert!(triple_similar_criterion(&i, &i, &j));
    }

    #[test]
    fn constructed_dependent_triples() {
        let a = QR::new(ratio(1, 2), r(1), r(-2), ratio(3, 4));
        let b = QR::new(r(-1), ratio(2, 3), r(5), r(0));
        for (al, be) in [(ratio(1, 3), r(2)), (r(-4), ratio(7, 5)), (r(0), r(1))] {
            let c = QR::from_parts(ratio(-3, 7), a.im.scale(&al) + b.im.scale(&be));
            assert!(triple_similar_criterion(&a, &b, &c));
            assert!(is_similar(&a.mul(&b).mul(&c), &a.mul(&c).mul(&b)));
        }
    }

    #[test]
    fn quad_formula_edge_cases() {
        let a = qr(2, 1, -1, 3);
        assert_eq!(quad_re_difference_formula(&a, &a, &a, &a), r(0));
        assert_eq!(quad_re_difference_direct(&a, &a, &a, &a), r(0));
        // imaginary parts in the xy-plane
        let qs = [qr(1, 1, 2, 0), qr(-3, 0, 1, 0), qr(2, 5, -1, 0), qr(4, 1, 1, 0)];
        assert_eq!(quad_re_difference_formula(&qs[0], &qs[1], &qs[2], &qs[3]), r(0));
        assert_eq!(quad_re_difference_direct(&qs[0], &qs[1], &qs[2], &qs[3]), r(0));
    }

    #[test]
    fn dependence_examples() {
        let (i, j, k) = (QR::i(), QR::j(), QR::k());
        let s = qr(0, 1, 1, 1);
        let dc = dependence_coefficients(&i, &j, &k, &s).unwrap();
        assert_eq!(dc.as_array(), [r(1), r(1), r(1), r(-1)]);
        assert!(dc.spans_space());

        let dc = dependence_coefficients(&i, &i, &j, &k).unwrap();
        assert_eq!(dc.as_array(), [r(1), r(-1), r(0), r(0)]);
        assert!(dc.spans_space());

        let dc = dependence_coefficients(&i, &j, &i, &j).unwrap();
        assert_eq!(dc.nullity, 2);
        assert!(!dc.spans_space());

        assert!(matches!(
            dependence_coefficients(&QF::i(), &QF::j(), &QF::k(), &QF::i()),
            Err(Error::ModeUnsupported { .. })
        ));
    }

    #[test]
    fn quad_criterion_checks_coefficients() {
        let (i, j, k) = (QR::i(), QR::j(), QR::k());
        let s = qr(0, 1, 1, 1);
        let good = DependenceCoefficients::new(r(1), r(1), r(1), r(-1));
        assert_eq!(quad_criterion(&i, &j, &k, &s, &good).unwrap(), r(0));
        let bad = DependenceCoefficients::new(r(1), r(0), r(0), r(0));
        assert!(matches!(
            quad_criterion(&i, &j, &k, &s, &bad),
            Err(Error::Precondition(_))
        ));
        let zero = DependenceCoefficients::new(r(0), r(0), r(0), r(0));
        assert!(quad_criterion(&i, &j, &k, &s, &zero).is_err());
    }

    #[test]
    fn identical_quadruple_criterion() {
        let a = qr(2, 1, -1, 3);
        let dc = dependence_coefficients(&a, &a, &a, &a).unwrap();
        assert_eq!(dc.nullity, 3);
        let abcd = multiproduct(&[a.clone(), a.clone(), a.clone(), a.clone()], &Permutation::identity(4)).unwrap();
        assert!(is_similar(&abcd, &abcd));
        // the relation (1, −1, 0, 0) is one of many; the criterion only
        // decides similarity for spanning quadruples
        assert_eq!(quad_criterion(&a, &a, &a, &a, &dc).unwrap(), r(4));
    }
}
