//! Bruhat and double Bruhat cells, reduced-cell membership and twist maps.

use std::fmt;

use crate::error::{Error, Result};
use crate::gauss::{gauss_minus, gauss_plus, gauss_zero};
use crate::matrix::Matrix;
use crate::quasidet::delta;
use crate::skewfield::Scalar;
use crate::weyl::Permutation;

/// `(u, v)` with `x ∈ BuB ∩ B⁻vB⁻`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CellLabel {
    pub u: Permutation,
    pub v: Permutation,
}

impl fmt::Display for CellLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G^{{{},{}}}", self.u, self.v)
    }
}

/// `x = n · ū · b` with `n ∈ U(u)` and `b ∈ B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BruhatFactors<S: Scalar> {
    pub n: Matrix<S>,
    pub u: Permutation,
    pub b: Matrix<S>,
}

/// Reduces `x` to a monomial matrix with row operations that add lower rows
/// to upper ones and column operations that add left columns to right ones.
/// Column `j` pivots on its bottom-most nonzero entry among rows not yet
/// used, which gives `u(j)`.
pub fn bruhat_decompose<S: Scalar>(x: &Matrix<S>) -> Result<BruhatFactors<S>> {
    if !x.is_square() {
        return Err(Error::ShapeMismatch(format!("Bruhat cell of a {}x{} matrix", x.rows(), x.cols())));
    }
    let n = x.rows();
    let mut m = x.clone();
    // r_ops accumulates the row operations: r_ops · x · c_ops = monomial
    let mut r_ops = Matrix::<S>::identity(n);
    let mut c_ops = Matrix::<S>::identity(n);
    let mut used = vec![false; n + 1];
    let mut images = Vec::with_capacity(n);
    for j in 1..=n {
        let r = (1..=n)
            .rev()
            .find(|&r| !used[r] && !m[(r, j)].is_zero())
            .ok_or_else(|| Error::not_generic(format!("singular matrix: column {j} has no pivot")))?;
        used[r] = true;
        images.push(r);
        let p_inv = m[(r, j)].inv()?;
        for k in j + 1..=n {
            if !m[(r, k)].is_zero() {
                let f = p_inv.clone() * &m[(r, k)];
                m.add_col_multiple(k, j, &f);
                c_ops.add_col_multiple(k, j, &f);
            }
        }
        for i in 1..r {
            if !used[i] && !m[(i, j)].is_zero() {
                let f = m[(i, j)].clone() * &p_inv;
                m.add_row_multiple(i, r, &f);
                r_ops.add_row_multiple(i, r, &f);
            }
        }
    }
    let u = Permutation::from_images(images)?;
    let u_bar: Matrix<S> = u.representative();
    // m is monomial with support on (u(j), j); ū⁻¹ m is diagonal
    let d = &u_bar.inverse()? * &m;
    let b = &d * &c_ops.inverse()?;
    let n_part = r_ops.inverse()?;
    Ok(BruhatFactors { n: n_part, u, b })
}

/// The `(u, v)` of the double Bruhat cell containing `x`.
pub fn classify<S: Scalar>(x: &Matrix<S>) -> Result<CellLabel> {
    let u = bruhat_decompose(x)?.u;
    let w0 = Permutation::longest(x.rows());
    let v = w0.compose(&bruhat_decompose(&x.sigma())?.u).compose(&w0);
    Ok(CellLabel { u, v })
}

/// `u` such that `x ∈ BuB`.
pub fn bruhat_cell<S: Scalar>(x: &Matrix<S>) -> Result<Permutation> {
    Ok(bruhat_decompose(x)?.u)
}

pub fn check_cell<S: Scalar>(x: &Matrix<S>, u: &Permutation, v: &Permutation) -> Result<()> {
    let found = classify(x)?;
    let expected = CellLabel { u: u.clone(), v: v.clone() };
    if found != expected {
        return Err(Error::WrongCell { expected: expected.to_string(), found: found.to_string() });
    }
    Ok(())
}

/// Whether `x ∈ G^{u,v}` lies in `L^{u,v}`, i.e. `Δ^i_{u,e}(x) = 1` for all `i`.
pub fn in_reduced_cell<S: Scalar>(x: &Matrix<S>, u: &Permutation, v: &Permutation) -> Result<bool> {
    check_cell(x, u, v)?;
    let e = Permutation::identity(x.rows());
    for i in 1..=x.rows() {
        if !delta(x, i, u, &e)?.is_one() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn projection_failed(which: &str) -> impl Fn(Error) -> Error + '_ {
    move |e| match e {
        Error::NotInGaussCell(w) => Error::not_generic(format!("Gauss projection {which} does not exist: {w}")),
        other => other,
    }
}

struct TwistParts<S: Scalar> {
    u_bar: Matrix<S>,
    /// `[x · \overline{v⁻¹}]_-`
    minus: Matrix<S>,
    /// `[ū⁻¹ x]_+`
    plus: Matrix<S>,
    /// `[ū⁻¹ x]_0`
    zero: Matrix<S>,
}

fn twist_parts<S: Scalar>(x: &Matrix<S>, u: &Permutation, v: &Permutation) -> Result<TwistParts<S>> {
    let u_bar: Matrix<S> = u.representative();
    let v_inv_bar: Matrix<S> = v.inverse().representative();
    let ux = &u_bar.inverse()? * x;
    let minus = gauss_minus(&(x * &v_inv_bar)).map_err(projection_failed("[x·v̄⁻¹]_-"))?;
    let plus = gauss_plus(&ux).map_err(projection_failed("[ū⁻¹x]_+"))?;
    let zero = gauss_zero(&ux).map_err(projection_failed("[ū⁻¹x]_0"))?;
    Ok(TwistParts { u_bar, minus, plus, zero })
}

/// `ψ^{u,v}(x) = ([x \overline{v⁻¹}]_-)^ι (x^ι)⁻¹ ([ū⁻¹x]_+)^ι` on `L^{u,v}`.
pub fn twist_reduced<S: Scalar>(x: &Matrix<S>, u: &Permutation, v: &Permutation) -> Result<Matrix<S>> {
    if !in_reduced_cell(x, u, v)? {
        return Err(Error::NotInReducedCell(format!("[ū⁻¹x]_0 ≠ 1 for (u,v) = ({u},{v})")));
    }
    let p = twist_parts(x, u, v)?;
    Ok(&(&p.minus.iota()? * &x.iota_inverse()) * &p.plus.iota()?)
}

/// `u(h) = ū h ū⁻¹` for diagonal `h`.
fn conjugate_diag<S: Scalar>(u_bar: &Matrix<S>, h: &Matrix<S>) -> Result<Matrix<S>> {
    Ok(&(u_bar * h) * &u_bar.inverse()?)
}

/// The left `H`-equivariant twist on `G^{u,v}`:
/// `u([ū⁻¹g]_0) · ([g \overline{v⁻¹}]_-)^ι (g^ι)⁻¹ ([ū⁻¹g]_+)^ι`.
pub fn twist_general<S: Scalar>(g: &Matrix<S>, u: &Permutation, v: &Permutation) -> Result<Matrix<S>> {
    check_cell(g, u, v)?;
    let p = twist_parts(g, u, v)?;
    let torus = conjugate_diag(&p.u_bar, &p.zero)?;
    Ok(&(&(&torus * &p.minus.iota()?) * &g.iota_inverse()) * &p.plus.iota()?)
}

/// Second form: `u([ū⁻¹g]_0) [(v̄ g^ι)⁻¹]_+ v̄ ([ū⁻¹g]_+)^ι`.
pub fn twist_general_second<S: Scalar>(g: &Matrix<S>, u: &Permutation, v: &Permutation) -> Result<Matrix<S>> {
    check_cell(g, u, v)?;
    let p = twist_parts(g, u, v)?;
    let torus = conjugate_diag(&p.u_bar, &p.zero)?;
    let v_bar: Matrix<S> = v.representative();
    let inner = (&v_bar * &g.iota()?).inverse()?;
    let head = gauss_plus(&inner).map_err(projection_failed("[(v̄g^ι)⁻¹]_+"))?;
    Ok(&(&(&torus * &head) * &v_bar) * &p.plus.iota()?)
}

/// Third form: `u([ū⁻¹g]_0) ([g \overline{v⁻¹}]_-)^ι \overline{u⁻¹}⁻¹ [\overline{u⁻¹} (g^ι)⁻¹]_-`.
pub fn twist_general_third<S: Scalar>(g: &Matrix<S>, u: &Permutation, v: &Permutation) -> Result<Matrix<S>> {
    check_cell(g, u, v)?;
    let p = twist_parts(g, u, v)?;
    let torus = conjugate_diag(&p.u_bar, &p.zero)?;
    let u_inv_bar: Matrix<S> = u.inverse().representative();
    let tail = gauss_minus(&(&u_inv_bar * &g.iota_inverse())).map_err(projection_failed("[\\overline{u⁻¹}(g^ι)⁻¹]_-"))?;
    Ok(&(&(&torus * &p.minus.iota()?) * &u_inv_bar.inverse()?) * &tail)
}

/// The twist on whichever of `L^{u,v}` or `G^{u,v}` the point belongs to;
/// the two agree on `L^{u,v}`.
pub fn twist<S: Scalar>(x: &Matrix<S>, u: &Permutation, v: &Permutation) -> Result<Matrix<S>> {
    twist_general(x, u, v)
}
