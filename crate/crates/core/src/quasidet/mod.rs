//! Quasideterminants, positive quasiminors and quasi-Plücker coordinates.

use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::{IndexSet, Matrix};
use crate::skewfield::Scalar;
use crate::weyl::Permutation;

pub mod identities;

/// `|A|_{pq} = a_{pq} - r_p (A^{pq})⁻¹ c_q`.
pub fn quasidet<S: Scalar>(a: &Matrix<S>, p: usize, q: usize) -> Result<S> {
    if !a.is_square() {
        return Err(Error::ShapeMismatch(format!(
            "quasideterminant of a {}x{} matrix",
            a.rows(),
            a.cols()
        )));
    }
    let n = a.rows();
    if !(1..=n).contains(&p) || !(1..=n).contains(&q) {
        return Err(Error::IndexOutOfRange(format!("marked position ({p},{q}) in order {n}")));
    }
    if n == 1 {
        return Ok(a[(1, 1)].clone());
    }
    let others_r: Vec<usize> = (1..=n).filter(|&i| i != p).collect();
    let others_c: Vec<usize> = (1..=n).filter(|&j| j != q).collect();
    let inner = a.select(&others_r, &others_c)?;
    let column = a.select(&others_r, &[q])?;
    let solved = inner
        .left_divide(&column)
        .map_err(|_| Error::not_generic(format!("|A|_{{{p},{q}}}: A^{{{p}{q}}} is singular")))?;
    let mut acc = a[(p, q)].clone();
    for (pos, &j) in others_c.iter().enumerate() {
        let r = &a[(p, j)];
        if !r.is_zero() {
            acc = acc - &(r.clone() * &solved[(pos + 1, 1)]);
        }
    }
    Ok(acc)
}

/// The same quasideterminant through the expansion
/// `a_{pq} - Σ a_{pj} |A^{pq}|⁻¹_{ij} a_{iq}`, recursing on every inner
/// quasideterminant. Exponential; meant for cross-checks at small order.
pub fn quasidet_by_expansion<S: Scalar>(a: &Matrix<S>, p: usize, q: usize) -> Result<S> {
    let n = a.rows();
    if n == 1 {
        return Ok(a[(1, 1)].clone());
    }
    let inner = a.delete(p, q)?;
    let mut acc = a[(p, q)].clone();
    for (ri, i) in (1..=n).filter(|&i| i != p).enumerate() {
        for (cj, j) in (1..=n).filter(|&j| j != q).enumerate() {
            let qd = quasidet_by_expansion(&inner, ri + 1, cj + 1)?;
            let qd_inv = qd
                .inv()
                .map_err(|_| Error::not_generic(format!("expansion: |A^{{{p}{q}}}|_{{{i},{j}}} = 0")))?;
            acc = acc - &(a[(p, j)].clone() * &qd_inv * &a[(i, q)]);
        }
    }
    Ok(acc)
}

/// `|x_{I,J}|_{i,j}` with rows and columns listed in any order; the marked
/// position is named by original indices.
pub fn quasiminor<S: Scalar>(x: &Matrix<S>, rows: &[usize], cols: &[usize], i: usize, j: usize) -> Result<S> {
    if rows.len() != cols.len() {
        return Err(Error::ShapeMismatch(format!("{} rows against {} columns", rows.len(), cols.len())));
    }
    let p = rows
        .iter()
        .position(|&r| r == i)
        .ok_or_else(|| Error::IndexOutOfRange(format!("marked row {i} not among {rows:?}")))?;
    let q = cols
        .iter()
        .position(|&c| c == j)
        .ok_or_else(|| Error::IndexOutOfRange(format!("marked column {j} not among {cols:?}")))?;
    quasidet(&x.select(rows, cols)?, p + 1, q + 1)
}

/// Descriptor `(I, J, i, j)` of the positive quasiminor `Δ^{i,j}_{I,J}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MinorSpec {
    pub rows: IndexSet,
    pub cols: IndexSet,
    pub i: usize,
    pub j: usize,
}

impl MinorSpec {
    pub fn new(rows: IndexSet, cols: IndexSet, i: usize, j: usize) -> Result<Self> {
        if rows.len() != cols.len() {
            return Err(Error::ShapeMismatch(format!("|I| = {} but |J| = {}", rows.len(), cols.len())));
        }
        if !rows.contains(i) || !cols.contains(j) {
            return Err(Error::IndexOutOfRange(format!("marked ({i},{j}) outside {rows} x {cols}")));
        }
        Ok(MinorSpec { rows, cols, i, j })
    }

    /// `I = u[1,k]`, `J = v[1,k]`, `i = u(k)`, `j = v(k)`.
    pub fn from_perms(u: &Permutation, v: &Permutation, k: usize) -> Self {
        MinorSpec {
            rows: u.image_of_prefix(k),
            cols: v.image_of_prefix(k),
            i: u.apply(k),
            j: v.apply(k),
        }
    }

    /// `(-1)^{d_i(I) + d_j(J)}` as a parity.
    pub fn sign_is_negative(&self) -> bool {
        (self.rows.count_greater(self.i) + self.cols.count_greater(self.j)) % 2 == 1
    }
}

impl fmt::Display for MinorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Δ^{{{},{}}}_{{{},{}}}", self.i, self.j, self.rows, self.cols)
    }
}

/// `Δ^{i,j}_{I,J}(x) = (-1)^{d_i(I)+d_j(J)} |x_{I,J}|_{i,j}`.
pub fn positive_quasiminor<S: Scalar>(x: &Matrix<S>, m: &MinorSpec) -> Result<S> {
    let q = quasiminor(x, m.rows.as_slice(), m.cols.as_slice(), m.i, m.j)
        .map_err(|e| relabel(e, m))?;
    Ok(if m.sign_is_negative() { -q } else { q })
}

fn relabel(e: Error, m: &MinorSpec) -> Error {
    match e {
        Error::NotGeneric(_) => Error::not_generic(format!("{m} undefined")),
        other => other,
    }
}

/// Principal quasiminor `Δ^i(x) = |x_{[1,i],[1,i]}|_{i,i}`.
pub fn principal_quasiminor<S: Scalar>(x: &Matrix<S>, i: usize) -> Result<S> {
    let range: Vec<usize> = (1..=i).collect();
    quasiminor(x, &range, &range, i, i)
        .map_err(|e| match e {
            Error::NotGeneric(_) => Error::not_generic(format!("principal Δ^{i} undefined")),
            other => other,
        })
}

/// `Δ^k_{u,v}`: the positive quasiminor indexed by a pair of permutations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SnMinorSpec {
    pub u: Permutation,
    pub v: Permutation,
    pub k: usize,
}

impl SnMinorSpec {
    pub fn new(u: Permutation, v: Permutation, k: usize) -> Self {
        assert_eq!(u.n(), v.n());
        assert!(k >= 1 && k <= u.n());
        SnMinorSpec { u, v, k }
    }

    pub fn to_minor_spec(&self) -> MinorSpec {
        MinorSpec::from_perms(&self.u, &self.v, self.k)
    }
}

impl fmt::Display for SnMinorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Δ^{}_{{{},{}}}", self.k, self.u, self.v)
    }
}

/// `Δ^k_{u,v}(x)` through its `(I, J, i, j)` descriptor.
pub fn quasiminor_indexed<S: Scalar>(x: &Matrix<S>, s: &SnMinorSpec) -> Result<S> {
    positive_quasiminor(x, &s.to_minor_spec())
}

/// `Δ^k_{u,v}(x) = Δ^k(ū⁻¹ x v̄)` through the signed representatives.
pub fn quasiminor_by_conjugation<S: Scalar>(x: &Matrix<S>, s: &SnMinorSpec) -> Result<S> {
    let u_bar: Matrix<S> = s.u.representative();
    let v_bar: Matrix<S> = s.v.representative();
    let conj = &u_bar.inverse()?.try_mul(x)? * &v_bar;
    principal_quasiminor(&conj, s.k).map_err(|e| match e {
        Error::NotGeneric(_) => Error::not_generic(format!("{s} undefined")),
        other => other,
    })
}

/// Evaluates `Δ^k_{u,v}(x)` both ways and fails if the routes disagree.
pub fn quasiminor_indexed_checked<S: Scalar>(x: &Matrix<S>, s: &SnMinorSpec) -> Result<S> {
    let direct = quasiminor_indexed(x, s)?;
    let conj = quasiminor_by_conjugation(x, s)?;
    if direct != conj {
        return Err(Error::Inconsistent(format!("{s}: {direct} vs {conj}")));
    }
    Ok(direct)
}

/// Shorthand for `Δ^k_{u,v}(x)`.
pub fn delta<S: Scalar>(x: &Matrix<S>, k: usize, u: &Permutation, v: &Permutation) -> Result<S> {
    positive_quasiminor(x, &MinorSpec::from_perms(u, v, k))
}

fn check_plucker_args(n: usize, i: usize, j: usize, set: &[usize], k: usize) -> Result<()> {
    if set.len() + 1 != k {
        return Err(Error::ShapeMismatch(format!("need {} auxiliary indices, got {}", k - 1, set.len())));
    }
    if set.contains(&i) {
        return Err(Error::IndexOutOfRange(format!("{i} must not lie in {set:?}")));
    }
    for &a in set.iter().chain([&i, &j]) {
        if !(1..=n).contains(&a) {
            return Err(Error::IndexOutOfRange(format!("index {a} outside [1,{n}]")));
        }
    }
    Ok(())
}

/// Left quasi-Plücker coordinate `q^I_{ij}(A)` of a `k x n` matrix evaluated
/// with auxiliary row `s`.
pub fn quasi_plucker_left_at<S: Scalar>(a: &Matrix<S>, i: usize, j: usize, set: &[usize], s: usize) -> Result<S> {
    let k = a.rows();
    check_plucker_args(a.cols(), i, j, set, k)?;
    let rows: Vec<usize> = (1..=k).collect();
    let cols_i: Vec<usize> = std::iter::once(i).chain(set.iter().copied()).collect();
    let cols_j: Vec<usize> = std::iter::once(j).chain(set.iter().copied()).collect();
    // The marked column is the first one of each block.
    let den = quasidet(&a.select(&rows, &cols_i)?, s, 1)?;
    let num = quasidet(&a.select(&rows, &cols_j)?, s, 1)?;
    let den_inv = den
        .inv()
        .map_err(|_| Error::not_generic(format!("q^I_{{{i}{j}}}: vanishing denominator at s={s}")))?;
    Ok(den_inv * &num)
}

/// Right quasi-Plücker coordinate `r^I_{ij}(B)` of an `n x k` matrix
/// evaluated with auxiliary column `t`.
pub fn quasi_plucker_right_at<S: Scalar>(b: &Matrix<S>, i: usize, j: usize, set: &[usize], t: usize) -> Result<S> {
    let k = b.cols();
    check_plucker_args(b.rows(), j, i, set, k)?;
    let cols: Vec<usize> = (1..=k).collect();
    let rows_i: Vec<usize> = std::iter::once(i).chain(set.iter().copied()).collect();
    let rows_j: Vec<usize> = std::iter::once(j).chain(set.iter().copied()).collect();
    let num = quasidet(&b.select(&rows_i, &cols)?, 1, t)?;
    let den = quasidet(&b.select(&rows_j, &cols)?, 1, t)?;
    let den_inv = den
        .inv()
        .map_err(|_| Error::not_generic(format!("r^I_{{{i}{j}}}: vanishing denominator at t={t}")))?;
    Ok(num * &den_inv)
}

/// Evaluates at the smallest auxiliary index where both factors are defined
/// and confirms the value at the next one.
fn plucker_with_witness<S: Scalar>(
    k: usize,
    name: &str,
    eval: impl Fn(usize) -> Result<S>,
) -> Result<S> {
    let mut first: Option<(usize, S)> = None;
    for s in 1..=k {
        match eval(s) {
            Ok(v) => match &first {
                None => first = Some((s, v)),
                Some((s0, v0)) => {
                    if *v0 != v {
                        return Err(Error::Inconsistent(format!(
                            "{name} differs between auxiliary indices {s0} and {s}"
                        )));
                    }
                    return Ok(v);
                }
            },
            Err(e) if e.is_genericity() => continue,
            Err(e) => return Err(e),
        }
    }
    first
        .map(|(_, v)| v)
        .ok_or_else(|| Error::not_generic(format!("{name}: no auxiliary index gives defined factors")))
}

/// `q^I_{ij}(A)`, independent of the auxiliary row.
pub fn quasi_plucker_left<S: Scalar>(a: &Matrix<S>, i: usize, j: usize, set: &[usize]) -> Result<S> {
    plucker_with_witness(a.rows(), "q^I_ij", |s| quasi_plucker_left_at(a, i, j, set, s))
}

/// `r^I_{ij}(B)`, independent of the auxiliary column.
pub fn quasi_plucker_right<S: Scalar>(b: &Matrix<S>, i: usize, j: usize, set: &[usize]) -> Result<S> {
    plucker_with_witness(b.cols(), "r^I_ij", |t| quasi_plucker_right_at(b, i, j, set, t))
}

/// Sylvester reduction: `b_{pq} = |A_{I₀∪p, J₀∪q}|_{pq}` for `p ∉ I₀`,
/// `q ∉ J₀`, indexed by the complements in increasing order.
pub fn sylvester_reduce<S: Scalar>(a: &Matrix<S>, pivot_rows: &IndexSet, pivot_cols: &IndexSet) -> Result<Matrix<S>> {
    if !a.is_square() || pivot_rows.len() != pivot_cols.len() {
        return Err(Error::ShapeMismatch("Sylvester reduction needs a square pivot".into()));
    }
    let n = a.rows();
    if pivot_rows.max().is_some_and(|m| m > n) || pivot_cols.max().is_some_and(|m| m > n) {
        return Err(Error::IndexOutOfRange("pivot outside the matrix".into()));
    }
    if !pivot_rows.is_empty() {
        a.submatrix(pivot_rows, pivot_cols)?
            .inverse()
            .map_err(|_| Error::not_generic(format!("pivot A_{{{pivot_rows},{pivot_cols}}} is singular")))?;
    }
    let rest_r: Vec<usize> = (1..=n).filter(|&i| !pivot_rows.contains(i)).collect();
    let rest_c: Vec<usize> = (1..=n).filter(|&j| !pivot_cols.contains(j)).collect();
    let mut entries = Vec::with_capacity(rest_r.len() * rest_c.len());
    for &p in &rest_r {
        for &q in &rest_c {
            let rows: Vec<usize> = pivot_rows.iter().chain([p]).collect();
            let cols: Vec<usize> = pivot_cols.iter().chain([q]).collect();
            entries.push(quasiminor(a, &rows, &cols, p, q)?);
        }
    }
    Matrix::from_vec(rest_r.len(), rest_c.len(), entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::skewfield::{sampler, Quaternion, Rational};
    use crate::weyl::Permutation;

    fn qm(rows: Vec<Vec<i64>>) -> Matrix<Quaternion> {
        Matrix::from_rows(rows.into_iter().map(|r| r.into_iter().map(Quaternion::from).collect()).collect()).unwrap()
    }

    fn random(n: usize, seed: u64) -> Matrix<Quaternion> {
        let mut rng = sampler(seed);
        Matrix::from_fn(n, n, |_, _| Quaternion::sample(&mut rng, 3))
    }

    #[test]
    fn one_by_one_is_the_entry() {
        let a = Matrix::from_rows(vec![vec![Quaternion::from_ints(1, 2, 3, 4)]]).unwrap();
        assert_eq!(quasidet(&a, 1, 1).unwrap(), Quaternion::from_ints(1, 2, 3, 4));
    }

    #[test]
    fn two_by_two_formulas() {
        let a = random(2, 4);
        let e = |i, j| a[(i, j)].clone();
        let inv = |x: Quaternion| x.inv().unwrap();
        assert_eq!(quasidet(&a, 1, 1).unwrap(), e(1, 1) - &(e(1, 2) * &inv(e(2, 2)) * &e(2, 1)));
        assert_eq!(quasidet(&a, 1, 2).unwrap(), e(1, 2) - &(e(1, 1) * &inv(e(2, 1)) * &e(2, 2)));
        assert_eq!(quasidet(&a, 2, 1).unwrap(), e(2, 1) - &(e(2, 2) * &inv(e(1, 2)) * &e(1, 1)));
        assert_eq!(quasidet(&a, 2, 2).unwrap(), e(2, 2) - &(e(2, 1) * &inv(e(1, 1)) * &e(1, 2)));
    }

    #[test]
    fn expansion_agrees_with_definition() {
        for seed in 0..10 {
            let a = random(3, seed);
            for p in 1..=3 {
                for q in 1..=3 {
                    assert_eq!(quasidet(&a, p, q).unwrap(), quasidet_by_expansion(&a, p, q).unwrap());
                }
            }
        }
    }

    #[test]
    fn identity_quasidet_is_one() {
        let id = Matrix::<Quaternion>::identity(2);
        assert!(quasidet(&id, 1, 1).unwrap().is_one());
        // off-diagonal of the identity: the inner block is singular
        assert!(matches!(quasidet(&id, 1, 2), Err(Error::NotGeneric(_))));
    }

    #[test]
    fn singular_inner_block_is_reported() {
        let a = qm(vec![vec![1, 2, 3], vec![4, 1, 1], vec![5, 2, 2]]);
        let err = quasidet(&a, 1, 1).unwrap_err();
        assert!(matches!(err, Error::NotGeneric(ref s) if s.contains("A^{11}")));
    }

    #[test]
    fn sign_of_positive_quasiminor() {
        let m = MinorSpec::new(IndexSet::new(vec![1, 2]).unwrap(), IndexSet::new(vec![2, 3]).unwrap(), 1, 2).unwrap();
        assert!(!m.sign_is_negative());
        let a = random(3, 1);
        assert_eq!(
            positive_quasiminor(&a, &m).unwrap(),
            quasiminor(&a, &[1, 2], &[2, 3], 1, 2).unwrap()
        );
        let m2 = MinorSpec::new(IndexSet::range(1, 3), IndexSet::range(1, 3), 1, 3).unwrap();
        assert!(!m2.sign_is_negative());
        let m3 = MinorSpec::new(IndexSet::range(1, 2), IndexSet::range(1, 2), 1, 2).unwrap();
        assert!(m3.sign_is_negative());
        assert!(MinorSpec::new(IndexSet::range(1, 2), IndexSet::range(1, 3), 1, 1).is_err());
        assert!(MinorSpec::new(IndexSet::range(1, 2), IndexSet::range(1, 2), 3, 1).is_err());
    }

    #[test]
    fn principal_minor_is_identity_indexed() {
        let a = random(4, 2);
        let e = Permutation::identity(4);
        for k in 1..=4 {
            let s = SnMinorSpec::new(e.clone(), e.clone(), k);
            assert_eq!(quasiminor_indexed(&a, &s).unwrap(), principal_quasiminor(&a, k).unwrap());
        }
    }

    #[test]
    fn both_routes_agree_on_all_of_s4() {
        let a = random(4, 3);
        for u in Permutation::all(4) {
            for v in Permutation::all(4) {
                for k in 1..=4 {
                    let s = SnMinorSpec::new(u.clone(), v.clone(), k);
                    match quasiminor_indexed_checked(&a, &s) {
                        Ok(_) => {}
                        Err(e) => assert!(e.is_genericity(), "{s}: {e}"),
                    }
                }
            }
        }
    }

    #[test]
    fn signed_representative_has_unit_minors() {
        for u in Permutation::all(4) {
            let x: Matrix<Rational> = u.representative();
            for i in 1..=4 {
                let s = SnMinorSpec::new(u.clone(), Permutation::identity(4), i);
                assert!(quasiminor_indexed(&x, &s).unwrap().is_one(), "u = {u}, i = {i}");
            }
        }
    }

    #[test]
    fn plucker_trivial_and_bad_arguments() {
        let mut rng = sampler(5);
        let a = Matrix::from_fn(2, 4, |_, _| Quaternion::sample(&mut rng, 3));
        assert!(quasi_plucker_left(&a, 1, 1, &[3]).unwrap().is_one());
        assert!(quasi_plucker_left(&a, 1, 2, &[1]).is_err());
        assert!(quasi_plucker_left(&a, 1, 2, &[3, 4]).is_err());
        let b = a.transpose();
        assert!(quasi_plucker_right(&b, 2, 2, &[4]).unwrap().is_one());
    }

    #[test]
    fn empty_pivot_sylvester_is_identity() {
        let a = random(3, 8);
        assert_eq!(sylvester_reduce(&a, &IndexSet::empty(), &IndexSet::empty()).unwrap(), a);
    }

    #[test]
    fn example_three_by_three_sylvester() {
        // |A|_11 with pivot a_22, written out as four 2x2 quasiminors
        let a = random(3, 12);
        let b = sylvester_reduce(&a, &IndexSet::new(vec![2]).unwrap(), &IndexSet::new(vec![2]).unwrap()).unwrap();
        let q = |rows: [usize; 2], cols: [usize; 2], i, j| quasiminor(&a, &rows, &cols, i, j).unwrap();
        // The displayed example reads |A|_11 = b11 - b13 b33^{-1} b31 on the
        // reduced 2x2 matrix B indexed by {1,3}.
        let lhs = quasidet(&a, 1, 1).unwrap();
        let bb = |i: usize, j: usize| b[(i, j)].clone();
        let rhs = bb(1, 1) - &(bb(1, 2) * &bb(2, 2).inv().unwrap() * &bb(2, 1));
        assert_eq!(lhs, rhs);
        assert_eq!(b[(1, 1)], q([1, 2], [1, 2], 1, 1));
        assert_eq!(b[(1, 2)], q([1, 2], [2, 3], 1, 3));
        assert_eq!(b[(2, 1)], q([2, 3], [1, 2], 3, 1));
        assert_eq!(b[(2, 2)], q([2, 3], [2, 3], 3, 3));
    }
}
