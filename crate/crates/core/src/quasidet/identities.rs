//! Both sides of the identities satisfied by quasideterminants and positive
//! quasiminors, evaluated on a given matrix.

use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::{IndexSet, Matrix};
use crate::skewfield::Scalar;
use crate::weyl::Permutation;

use super::{delta, quasidet, quasiminor, sylvester_reduce};

/// The two sides of one instance of an identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sides<S> {
    pub name: String,
    pub lhs: S,
    pub rhs: S,
}

impl<S: Scalar> Sides<S> {
    fn new(name: impl Into<String>, lhs: S, rhs: S) -> Self {
        Sides { name: name.into(), lhs, rhs }
    }

    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

impl<S: Scalar> fmt::Display for Sides<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rel = if self.holds() { "=" } else { "≠" };
        write!(f, "{}: {} {rel} {}", self.name, self.lhs, self.rhs)
    }
}

fn without(n: usize, k: usize) -> Vec<usize> {
    (1..=n).filter(|&a| a != k).collect()
}

fn check_square<S: Scalar>(a: &Matrix<S>) -> Result<usize> {
    if !a.is_square() {
        return Err(Error::ShapeMismatch(format!("{}x{} matrix", a.rows(), a.cols())));
    }
    Ok(a.rows())
}

fn distinct(pairs: &[(usize, usize)], n: usize) -> Result<()> {
    for &(a, b) in pairs {
        if a == b || !(1..=n).contains(&a) || !(1..=n).contains(&b) {
            return Err(Error::IndexOutOfRange(format!("need distinct indices in [1,{n}], got {a} and {b}")));
        }
    }
    Ok(())
}

/// Row relation: `-|A|_{ij} |A^{iℓ}|⁻¹_{sj} = |A|_{iℓ} |A^{ij}|⁻¹_{sℓ}` for
/// `s ≠ i`, `ℓ ≠ j`.
pub fn homological_row<S: Scalar>(a: &Matrix<S>, i: usize, j: usize, l: usize, s: usize) -> Result<Sides<S>> {
    let n = check_square(a)?;
    distinct(&[(i, s), (j, l)], n)?;
    let lhs = -(quasidet(a, i, j)? * &quasiminor(a, &without(n, i), &without(n, l), s, j)?.inv()?);
    let rhs = quasidet(a, i, l)? * &quasiminor(a, &without(n, i), &without(n, j), s, l)?.inv()?;
    Ok(Sides::new(format!("row homological (i,j,ℓ,s) = ({i},{j},{l},{s})"), lhs, rhs))
}

/// Column relation: `-|A^{kj}|⁻¹_{it} |A|_{ij} = |A^{ij}|⁻¹_{kt} |A|_{kj}` for
/// `k ≠ i`, `t ≠ j`.
pub fn homological_col<S: Scalar>(a: &Matrix<S>, i: usize, j: usize, k: usize, t: usize) -> Result<Sides<S>> {
    let n = check_square(a)?;
    distinct(&[(i, k), (j, t)], n)?;
    let lhs = -(quasiminor(a, &without(n, k), &without(n, j), i, t)?.inv()? * &quasidet(a, i, j)?);
    let rhs = quasiminor(a, &without(n, i), &without(n, j), k, t)?.inv()? * &quasidet(a, k, j)?;
    Ok(Sides::new(format!("column homological (i,j,k,t) = ({i},{j},{k},{t})"), lhs, rhs))
}

/// `|A|_{st} = |B|_{st}` for the matrix `B` built on the pivot `A_{I₀,J₀}`.
pub fn sylvester<S: Scalar>(
    a: &Matrix<S>,
    pivot_rows: &IndexSet,
    pivot_cols: &IndexSet,
    s: usize,
    t: usize,
) -> Result<Sides<S>> {
    let n = check_square(a)?;
    if pivot_rows.contains(s) || pivot_cols.contains(t) || !(1..=n).contains(&s) || !(1..=n).contains(&t) {
        return Err(Error::IndexOutOfRange(format!("({s},{t}) must avoid the pivot")));
    }
    let b = sylvester_reduce(a, pivot_rows, pivot_cols)?;
    let p = (1..=s).filter(|&r| !pivot_rows.contains(r)).count();
    let q = (1..=t).filter(|&c| !pivot_cols.contains(c)).count();
    Ok(Sides::new(
        format!("Sylvester pivot {pivot_rows}x{pivot_cols} at ({s},{t})"),
        quasidet(a, s, t)?,
        quasidet(&b, p, q)?,
    ))
}

/// `|A|_{11}` for a 3x3 matrix against its reduction on the pivot `a_{22}`:
/// `b11 - b13 b33⁻¹ b31` with `b11 = |a11* a12; a21 a22|`,
/// `b13 = |a12 a13*; a22 a23|`, `b31 = |a21 a22; a31* a32|`,
/// `b33 = |a22 a23; a32 a33*|`.
pub fn sylvester_three<S: Scalar>(a: &Matrix<S>) -> Result<Sides<S>> {
    if a.rows() != 3 || a.cols() != 3 {
        return Err(Error::ShapeMismatch("3x3 matrix expected".into()));
    }
    let q = |rows: [usize; 2], cols: [usize; 2], i: usize, j: usize| quasiminor(a, &rows, &cols, i, j);
    let rhs = q([1, 2], [1, 2], 1, 1)?
        - &(q([1, 2], [2, 3], 1, 3)? * &q([2, 3], [2, 3], 3, 3)?.inv()? * &q([2, 3], [1, 2], 3, 1)?);
    Ok(Sides::new("3x3 pivot on a22", quasidet(a, 1, 1)?, rhs))
}

/// `b11 - b13 b31 b33` in the notation of [`sylvester_three`]; this is not
/// `|A|_{11}` in general.
pub fn sylvester_three_as_printed<S: Scalar>(a: &Matrix<S>) -> Result<S> {
    let q = |rows: [usize; 2], cols: [usize; 2], i: usize, j: usize| quasiminor(a, &rows, &cols, i, j);
    Ok(q([1, 2], [1, 2], 1, 1)?
        - &(q([1, 2], [2, 3], 1, 3)? * &q([2, 3], [1, 2], 3, 1)? * &q([2, 3], [2, 3], 3, 3)?))
}

fn extends(w: &Permutation, i: usize) -> bool {
    w.apply(i) < w.apply(i + 1)
}

/// `ℓ(us_i) = ℓ(u) + 1` and `ℓ(vs_i) = ℓ(v) + 1`.
pub fn dodgson_admissible(u: &Permutation, v: &Permutation, i: usize) -> bool {
    i >= 1 && i < u.n() && extends(u, i) && extends(v, i)
}

/// The five relations among `Δ^i` and `Δ^{i+1}` at `(u,v)`, `(us_i,v)`,
/// `(u,vs_i)` and `(us_i,vs_i)`.
pub fn dodgson<S: Scalar>(x: &Matrix<S>, u: &Permutation, v: &Permutation, i: usize) -> Result<Vec<Sides<S>>> {
    dodgson_with(|k, a, b| delta(x, k, a, b), u, v, i)
}

/// [`dodgson`] with `Δ^k_{a,b}` supplied by `d`, e.g. from a cache.
pub fn dodgson_with<S: Scalar>(
    d: impl Fn(usize, &Permutation, &Permutation) -> Result<S>,
    u: &Permutation,
    v: &Permutation,
    i: usize,
) -> Result<Vec<Sides<S>>> {
    if !dodgson_admissible(u, v, i) {
        return Err(Error::InvalidPermutation(format!("(u,v,i) = ({u},{v},{i}) is not admissible")));
    }
    let us = u.mul_simple(i);
    let vs = v.mul_simple(i);
    let base = d(i, u, v)?;
    let base_inv = base.inv()?;
    let left = d(i, &us, v)?;
    let right = d(i, u, &vs)?;
    let next = d(i + 1, u, v)?;
    let next_left = d(i + 1, &us, v)?;
    let next_right = d(i + 1, u, &vs)?;
    let tag = |k: usize| format!("Dodgson {k} at (u,v,i) = ({u},{v},{i})");
    Ok(vec![
        Sides::new(tag(1), d(i, &us, &vs)?, left.clone() * &base_inv * &right + &next),
        Sides::new(tag(2), left.inv()? * &next, base_inv.clone() * &next_left),
        Sides::new(tag(3), next.clone() * &right.inv()?, next_right.clone() * &base_inv),
        Sides::new(tag(4), next.clone() * &next_left.inv()?, left * &base_inv),
        Sides::new(tag(5), next_right.inv()? * &next, base_inv * &right),
    ])
}

/// `ℓ(ws_is_{i+1}s_i) = ℓ(w) + 3`.
pub fn plucker_admissible(w: &Permutation, i: usize) -> bool {
    i >= 1 && i + 2 <= w.n() && w.apply(i) < w.apply(i + 1) && w.apply(i + 1) < w.apply(i + 2)
}

/// `Δ^{i+1}_{us_{i+1},v} = Δ^{i+1}_{us_is_{i+1},v} + Δ^i_{us_{i+1}s_i,v} (Δ^i_{us_i,v})⁻¹ Δ^{i+1}_{u,v}`.
pub fn plucker_rows<S: Scalar>(x: &Matrix<S>, u: &Permutation, v: &Permutation, i: usize) -> Result<Sides<S>> {
    plucker_rows_with(|k, a, b| delta(x, k, a, b), u, v, i)
}

pub fn plucker_rows_with<S: Scalar>(
    d: impl Fn(usize, &Permutation, &Permutation) -> Result<S>,
    u: &Permutation,
    v: &Permutation,
    i: usize,
) -> Result<Sides<S>> {
    if !plucker_admissible(u, i) {
        return Err(Error::InvalidPermutation(format!("ℓ(u s_i s_i+1 s_i) ≠ ℓ(u) + 3 for u = {u}, i = {i}")));
    }
    let d = |k: usize, a: &Permutation| d(k, a, v);
    let (a, b) = (i, i + 1);
    let rhs = d(b, &u.mul_simple(a).mul_simple(b))?
        + &(d(a, &u.mul_simple(b).mul_simple(a))? * &d(a, &u.mul_simple(a))?.inv()? * &d(b, u)?);
    Ok(Sides::new(format!("Plücker rows at (u,v,i) = ({u},{v},{i})"), d(b, &u.mul_simple(b))?, rhs))
}

/// `Δ^{i+1}_{u,vs_{i+1}} = Δ^{i+1}_{u,vs_is_{i+1}} + Δ^{i+1}_{u,v} (Δ^i_{u,vs_i})⁻¹ Δ^i_{u,vs_{i+1}s_i}`.
pub fn plucker_cols<S: Scalar>(x: &Matrix<S>, u: &Permutation, v: &Permutation, i: usize) -> Result<Sides<S>> {
    plucker_cols_with(|k, a, b| delta(x, k, a, b), u, v, i)
}

pub fn plucker_cols_with<S: Scalar>(
    d: impl Fn(usize, &Permutation, &Permutation) -> Result<S>,
    u: &Permutation,
    v: &Permutation,
    i: usize,
) -> Result<Sides<S>> {
    if !plucker_admissible(v, i) {
        return Err(Error::InvalidPermutation(format!("ℓ(v s_i s_i+1 s_i) ≠ ℓ(v) + 3 for v = {v}, i = {i}")));
    }
    let d = |k: usize, b: &Permutation| d(k, u, b);
    let (a, b) = (i, i + 1);
    let rhs = d(b, &v.mul_simple(a).mul_simple(b))?
        + &(d(b, v)? * &d(a, &v.mul_simple(a))?.inv()? * &d(a, &v.mul_simple(b).mul_simple(a))?);
    Ok(Sides::new(format!("Plücker columns at (u,v,i) = ({u},{v},{i})"), d(b, &v.mul_simple(b))?, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::skewfield::{sampler, Quaternion};

    fn random(n: usize, seed: u64) -> Matrix<Quaternion> {
        let mut rng = sampler(seed);
        Matrix::from_fn(n, n, |_, _| Quaternion::sample(&mut rng, 3))
    }

    #[test]
    fn homological_relations_hold() {
        for n in [3, 4] {
            let a = random(n, n as u64);
            for i in 1..=n {
                for j in 1..=n {
                    for l in (1..=n).filter(|&l| l != j) {
                        for s in (1..=n).filter(|&s| s != i) {
                            let r = homological_row(&a, i, j, l, s).unwrap();
                            assert!(r.holds(), "{r}");
                            let c = homological_col(&a, i, j, s, l).unwrap();
                            assert!(c.holds(), "{c}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn sylvester_on_five_by_five() {
        let a = random(5, 7);
        let rows = IndexSet::new(vec![2, 4]).unwrap();
        let cols = IndexSet::new(vec![1, 3]).unwrap();
        for s in [1, 3, 5] {
            for t in [2, 4, 5] {
                let r = sylvester(&a, &rows, &cols, s, t).unwrap();
                assert!(r.holds(), "{r}");
            }
        }
        let inner = IndexSet::range(2, 4);
        assert!(sylvester(&a, &inner, &inner, 1, 5).unwrap().holds());
    }

    #[test]
    fn three_by_three_pivot() {
        for seed in 0..5 {
            let a = random(3, 20 + seed);
            assert!(sylvester_three(&a).unwrap().holds());
            assert_ne!(sylvester_three_as_printed(&a).unwrap(), quasidet(&a, 1, 1).unwrap());
        }
    }

    #[test]
    fn dodgson_and_plucker_on_s4() {
        let x = random(4, 9);
        let perms = Permutation::all(4);
        let (mut dodgson_count, mut plucker_count) = (0, 0);
        for u in &perms {
            for v in &perms {
                for i in 1..4 {
                    if dodgson_admissible(u, v, i) {
                        for r in dodgson(&x, u, v, i).unwrap() {
                            assert!(r.holds(), "{r}");
                            dodgson_count += 1;
                        }
                    }
                    if plucker_admissible(u, i) {
                        let r = plucker_rows(&x, u, v, i).unwrap();
                        assert!(r.holds(), "{r}");
                        plucker_count += 1;
                    }
                    if plucker_admissible(v, i) {
                        let r = plucker_cols(&x, u, v, i).unwrap();
                        assert!(r.holds(), "{r}");
                        plucker_count += 1;
                    }
                }
            }
        }
        assert!(dodgson_count > 0 && plucker_count > 0);
    }
}
