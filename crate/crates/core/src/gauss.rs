//! Gauss `LDU` decomposition and the projections `[x]_-`, `[x]_0`, `[x]_+`.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::quasidet::{principal_quasiminor, quasi_plucker_left, quasi_plucker_right};
use crate::skewfield::Scalar;

/// `A = lower · diag · upper` with unitriangular outer factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussTriple<S: Scalar> {
    pub lower: Matrix<S>,
    pub diag: Matrix<S>,
    pub upper: Matrix<S>,
}

impl<S: Scalar> GaussTriple<S> {
    pub fn product(&self) -> Matrix<S> {
        &(&self.lower * &self.diag) * &self.upper
    }

    /// `[x]_-`, the lower triangular factor `lower · diag`.
    pub fn minus(&self) -> Matrix<S> {
        &self.lower * &self.diag
    }

    /// `[x]_0`.
    pub fn zero(&self) -> &Matrix<S> {
        &self.diag
    }

    /// `[x]_+`.
    pub fn plus(&self) -> &Matrix<S> {
        &self.upper
    }
}

fn pivots<S: Scalar>(a: &Matrix<S>) -> Result<Vec<S>> {
    let n = a.rows();
    (1..=n)
        .map(|k| match principal_quasiminor(a, k) {
            Ok(y) if !y.is_zero() => Ok(y),
            Ok(_) => Err(Error::NotInGaussCell(format!("y_{k} = |A^{k}|_{{{k}{k}}} vanishes"))),
            Err(e) if e.is_genericity() => Err(Error::NotInGaussCell(format!("y_{k} = |A^{k}|_{{{k}{k}}} undefined"))),
            Err(e) => Err(e),
        })
        .collect()
}

/// Gauss decomposition through quasi-Plücker coordinates: the pivots are the
/// principal quasiminors `y_k`, below-diagonal entries of `lower` are right
/// coordinates of the leading column blocks and above-diagonal entries of
/// `upper` are left coordinates of the leading row blocks.
pub fn ldu<S: Scalar>(a: &Matrix<S>) -> Result<GaussTriple<S>> {
    if !a.is_square() {
        return Err(Error::ShapeMismatch(format!("ldu of a {}x{} matrix", a.rows(), a.cols())));
    }
    let n = a.rows();
    let y = pivots(a)?;
    let mut lower = Matrix::identity(n);
    let mut upper = Matrix::identity(n);
    let all: Vec<usize> = (1..=n).collect();
    for alpha in 1..n {
        let head: Vec<usize> = (1..alpha).collect();
        let cols_block = a.select(&all, &(1..=alpha).collect::<Vec<_>>())?;
        let rows_block = a.select(&(1..=alpha).collect::<Vec<_>>(), &all)?;
        for beta in alpha + 1..=n {
            lower[(beta, alpha)] = gauss_coordinate(quasi_plucker_right(&cols_block, beta, alpha, &head), beta, alpha)?;
            upper[(alpha, beta)] = gauss_coordinate(quasi_plucker_left(&rows_block, alpha, beta, &head), alpha, beta)?;
        }
    }
    Ok(GaussTriple { lower, diag: Matrix::diag(&y), upper })
}

fn gauss_coordinate<S: Scalar>(r: Result<S>, i: usize, j: usize) -> Result<S> {
    r.map_err(|e| match e {
        Error::NotGeneric(w) => Error::NotInGaussCell(format!("coordinate ({i},{j}): {w}")),
        other => other,
    })
}

/// Plain elimination without pivoting; the oracle for [`ldu`].
pub fn ldu_elimination<S: Scalar>(a: &Matrix<S>) -> Result<GaussTriple<S>> {
    if !a.is_square() {
        return Err(Error::ShapeMismatch(format!("ldu of a {}x{} matrix", a.rows(), a.cols())));
    }
    let n = a.rows();
    let mut m = a.clone();
    let mut lower = Matrix::identity(n);
    let mut d = Vec::with_capacity(n);
    for k in 1..=n {
        let p = m[(k, k)].clone();
        let p_inv = p
            .inv()
            .map_err(|_| Error::NotInGaussCell(format!("elimination pivot {k} vanishes")))?;
        for i in k + 1..=n {
            let l = m[(i, k)].clone() * &p_inv;
            if !l.is_zero() {
                m.add_row_multiple(i, k, &l);
            }
            lower[(i, k)] = l;
        }
        m.scale_row_left(k, &p_inv);
        d.push(p);
    }
    Ok(GaussTriple { lower, diag: Matrix::diag(&d), upper: m })
}

/// `([x]_-, [x]_0, [x]_+)`.
pub fn gauss_parts<S: Scalar>(x: &Matrix<S>) -> Result<(Matrix<S>, Matrix<S>, Matrix<S>)> {
    let t = ldu(x)?;
    Ok((t.minus(), t.diag, t.upper))
}

/// `[x]_-` alone, by elimination.
pub fn gauss_minus<S: Scalar>(x: &Matrix<S>) -> Result<Matrix<S>> {
    ldu_elimination(x).map(|t| t.minus())
}

/// `[x]_+` alone, by elimination.
pub fn gauss_plus<S: Scalar>(x: &Matrix<S>) -> Result<Matrix<S>> {
    ldu_elimination(x).map(|t| t.upper)
}

/// `[x]_0` alone, by elimination.
pub fn gauss_zero<S: Scalar>(x: &Matrix<S>) -> Result<Matrix<S>> {
    ldu_elimination(x).map(|t| t.diag)
}
