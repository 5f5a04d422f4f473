//! Factorizations on `G^{u,w₀}` and `G^{w₀,v}`, and the quasiminor
//! identities of the maximal twist `ψ^{w₀,w₀}`.

use serde::Serialize;

use crate::cells::{classify, twist_general, CellLabel};
use crate::error::{Error, Result};
use crate::matrix::{IndexSet, Matrix};
use crate::quasidet::{positive_quasiminor, MinorSpec};
use crate::skewfield::Scalar;
use crate::weyl::Permutation;

use super::generators::{x_gen, x_neg};
use super::standard::upper_param;

/// `Δ^{i,j}_{rows,cols}(x)`.
fn dq<S: Scalar>(x: &Matrix<S>, rows: IndexSet, cols: IndexSet, i: usize, j: usize) -> Result<S> {
    positive_quasiminor(x, &MinorSpec::new(rows, cols, i, j)?)
}

fn ratio<S: Scalar>(den: Result<S>, num: Result<S>) -> Result<S> {
    Ok(den?.inv()? * &num?)
}

fn name(err: Error, what: &str) -> Error {
    match err {
        Error::NotGeneric(w) => Error::not_generic(format!("{what}: {w}")),
        Error::ZeroInverse => Error::not_generic(format!("{what}: vanishing quasiminor")),
        other => other,
    }
}

fn r(a: usize, b: usize) -> IndexSet {
    IndexSet::range(a, b)
}

fn join(a: IndexSet, b: IndexSet) -> IndexSet {
    a.union(&b)
}

/// `Δ^{i,j}_{[1,i],[j+1-i,j]}(x)⁻¹ Δ^{i,j+1}_{[1,i],[j-i+2,j+1]}(x)`.
fn t_direct<S: Scalar>(x: &Matrix<S>, i: usize, j: usize) -> Result<S> {
    upper_param(x, i, j)
}

/// `Δ^{i,j}_{[1,i]∪[n+i+1-j,n],[1,j]}(y)⁻¹ Δ^{i,j+1}_{[1,i]∪[n+i-j,n],[1,j+1]}(y)`.
fn t_twisted<S: Scalar>(y: &Matrix<S>, i: usize, j: usize) -> Result<S> {
    let n = y.rows();
    ratio(
        dq(y, join(r(1, i), r(n + i + 1 - j, n)), r(1, j), i, j),
        dq(y, join(r(1, i), r(n + i - j, n)), r(1, j + 1), i, j + 1),
    )
}

/// `h_m = Δ^{m,n+1-m}_{[m,n],[1,n+1-m]}(x)`.
fn h_direct<S: Scalar>(x: &Matrix<S>, m: usize) -> Result<S> {
    let n = x.rows();
    dq(x, r(m, n), r(1, n + 1 - m), m, n + 1 - m)
}

/// `Δ^{i,j+1-i}_{[i,j],[1,j+1-i]}(x)⁻¹ h_i(x)`.
fn tau_direct<S: Scalar>(x: &Matrix<S>, i: usize, j: usize) -> Result<S> {
    ratio(dq(x, r(i, j), r(1, j + 1 - i), i, j + 1 - i), h_direct(x, i))
}

/// `Δ^{j,j+1-i}_{[1,j],[n+2-i,n]∪[1,j+1-i]}(y)⁻¹ Δ^{j,n+1-i}_{[1,j],[n+1-i,n]∪[1,j-i]}(y)`.
fn tau_twisted<S: Scalar>(y: &Matrix<S>, i: usize, j: usize) -> Result<S> {
    let n = y.rows();
    ratio(
        dq(y, r(1, j), join(r(n + 2 - i, n), r(1, j + 1 - i)), j, j + 1 - i),
        dq(y, r(1, j), join(r(n + 1 - i, n), r(1, j - i)), j, n + 1 - i),
    )
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..n).flat_map(move |i| (i..n).map(move |j| (i, j)))
}

/// `x = x_- · x^{(n-1)} ⋯ x^{(1)}` with
/// `x^{(m)} = x_m(t_{m,m}) x_{m+1}(t_{m,m+1}) ⋯ x_{n-1}(t_{m,n-1})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositiveStandard<S: Scalar> {
    pub u: Permutation,
    /// `t_{m,k}` for `1 ≤ m ≤ k ≤ n-1`, row by row.
    pub t: Vec<((usize, usize), S)>,
    pub minus: Matrix<S>,
}

/// `x = h · x_-^{(n-1)} ⋯ x_-^{(1)} · x_+` with
/// `x_-^{(m)} = x_{-m}(τ_{m,m}) x_{-(m+1)}(τ_{m,m+1}) ⋯ x_{-(n-1)}(τ_{m,n-1})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NegativeStandard<S: Scalar> {
    pub v: Permutation,
    pub h: Vec<S>,
    pub tau: Vec<((usize, usize), S)>,
    pub plus: Matrix<S>,
}

fn positive_blocks<S: Scalar>(n: usize, t: &[((usize, usize), S)]) -> Matrix<S> {
    let mut p = Matrix::identity(n);
    for m in (1..n).rev() {
        for ((a, k), tk) in t.iter().filter(|((a, _), _)| *a == m) {
            debug_assert_eq!(*a, m);
            p = &p * &x_gen(*k, tk.clone(), n);
        }
    }
    p
}

fn negative_blocks<S: Scalar>(n: usize, tau: &[((usize, usize), S)]) -> Result<Matrix<S>> {
    let mut p = Matrix::identity(n);
    for m in (1..n).rev() {
        for ((_, k), tk) in tau.iter().filter(|((a, _), _)| *a == m) {
            p = &p * &x_neg(*k, tk.clone(), n)?;
        }
    }
    Ok(p)
}

impl<S: Scalar> PositiveStandard<S> {
    pub fn replay(&self) -> Matrix<S> {
        &self.minus * &positive_blocks(self.minus.rows(), &self.t)
    }
}

impl<S: Scalar> NegativeStandard<S> {
    pub fn replay(&self) -> Result<Matrix<S>> {
        let n = self.plus.rows();
        Ok(&(&Matrix::diag(&self.h) * &negative_blocks(n, &self.tau)?) * &self.plus)
    }
}

fn cell_of<S: Scalar>(x: &Matrix<S>) -> Result<CellLabel> {
    if !x.is_square() {
        return Err(Error::ShapeMismatch(format!("{}x{} matrix", x.rows(), x.cols())));
    }
    classify(x)
}

/// Factors `x ∈ G^{u,w₀}`. Each `t_{m,k}` is computed from the quasiminors
/// of `x` and again from those of `ψ^{u,w₀}(x)`; the two must agree.
/// A point of `G^{u,e}` has nothing to clear and comes back unchanged.
pub fn factor_u_w0<S: Scalar>(x: &Matrix<S>) -> Result<PositiveStandard<S>> {
    let cell = cell_of(x)?;
    let n = x.rows();
    if cell.v.is_identity() {
        return Ok(PositiveStandard { u: cell.u, t: Vec::new(), minus: x.clone() });
    }
    let w0 = Permutation::longest(n);
    if cell.v != w0 {
        let expected = CellLabel { u: cell.u.clone(), v: w0 };
        return Err(Error::WrongCell { expected: expected.to_string(), found: cell.to_string() });
    }
    let y = twist_general(x, &cell.u, &w0)?;
    let mut t = Vec::new();
    for (m, k) in pairs(n) {
        let what = format!("t_{{{m},{k}}}");
        let direct = t_direct(x, m, k).map_err(|e| name(e, &what))?;
        let twisted = t_twisted(&y, m, k).map_err(|e| name(e, &what))?;
        if direct != twisted {
            return Err(Error::Inconsistent(format!("{what}: {direct} from x, {twisted} from ψ(x)")));
        }
        t.push(((m, k), direct));
    }
    let minus = x * &positive_blocks(n, &t).inverse()?;
    let found = classify(&minus)?;
    if !minus.is_lower_triangular() || found.u != cell.u || !found.v.is_identity() {
        return Err(Error::Inconsistent(format!("residual factor lies in {found}")));
    }
    Ok(PositiveStandard { u: cell.u, t, minus })
}

/// Factors `x ∈ G^{w₀,v}`. Each `τ_{m,k}` is computed from the quasiminors
/// of `x` and again from those of `ψ^{w₀,v}(x)`; the two must agree.
pub fn factor_w0_v<S: Scalar>(x: &Matrix<S>) -> Result<NegativeStandard<S>> {
    let cell = cell_of(x)?;
    let n = x.rows();
    let w0 = Permutation::longest(n);
    if cell.u != w0 {
        let expected = CellLabel { u: w0, v: cell.v.clone() };
        return Err(Error::WrongCell { expected: expected.to_string(), found: cell.to_string() });
    }
    let h = (1..=n)
        .map(|m| h_direct(x, m).map_err(|e| name(e, &format!("h_{m}"))))
        .collect::<Result<Vec<_>>>()?;
    let y = twist_general(x, &w0, &cell.v)?;
    let mut tau = Vec::new();
    for (m, k) in pairs(n) {
        let what = format!("τ_{{{m},{k}}}");
        let direct = tau_direct(x, m, k).map_err(|e| name(e, &what))?;
        let twisted = tau_twisted(&y, m, k).map_err(|e| name(e, &what))?;
        if direct != twisted {
            return Err(Error::Inconsistent(format!("{what}: {direct} from x, {twisted} from ψ(x)")));
        }
        tau.push(((m, k), direct));
    }
    let head = &Matrix::diag(&h) * &negative_blocks(n, &tau)?;
    let plus = &head.inverse()? * x;
    if !plus.is_upper_unitriangular() || classify(&plus)?.v != cell.v {
        return Err(Error::Inconsistent("residual factor is not in L^{e,v}".into()));
    }
    Ok(NegativeStandard { v: cell.v, h, tau, plus })
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityCheck {
    /// Index tuple of the instance, e.g. `[i]` or `[i, j]`.
    pub index: Vec<usize>,
    pub holds: bool,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityFamily {
    pub name: String,
    pub checks: Vec<IdentityCheck>,
}

impl IdentityFamily {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &IdentityCheck> {
        self.checks.iter().filter(|c| !c.holds)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DoubleRatioReport {
    pub families: Vec<IdentityFamily>,
}

impl DoubleRatioReport {
    pub fn passed(&self) -> bool {
        self.families.iter().all(IdentityFamily::passed)
    }

    pub fn family(&self, name: &str) -> Option<&IdentityFamily> {
        self.families.iter().find(|f| f.name == name)
    }
}

/// Names of the families checked by [`verify_double_ratios`], in order.
pub const DOUBLE_RATIO_FAMILIES: [&str; 6] =
    ["anti-diagonal", "t-twisted", "t-twisted-converse", "tau-twisted", "tau-twisted-converse", "tau-minor"];

/// Extra identities checked only with `tentative`: telescoped products of
/// the `t`-ratios, under a best reading of their index sets.
pub const TENTATIVE_FAMILIES: [&str; 2] = ["t-telescoped", "t-telescoped-converse"];

fn family<S: Scalar>(
    name: &str,
    indices: impl Iterator<Item = Vec<usize>>,
    mut pair: impl FnMut(&[usize]) -> Result<(S, S)>,
) -> Result<IdentityFamily> {
    let mut checks = Vec::new();
    for index in indices {
        let (lhs, rhs) = pair(&index).map_err(|e| name_family(e, name, &index))?;
        checks.push(IdentityCheck { holds: lhs == rhs, lhs: lhs.to_string(), rhs: rhs.to_string(), index });
    }
    Ok(IdentityFamily { name: name.into(), checks })
}

fn name_family(err: Error, name: &str, index: &[usize]) -> Error {
    match err {
        Error::NotGeneric(w) => Error::not_generic(format!("{name} at {index:?}: {w}")),
        Error::ZeroInverse => Error::not_generic(format!("{name} at {index:?}: vanishing quasiminor")),
        other => other,
    }
}

/// Evaluates the quasiminor identities relating `x` and `y = ψ^{w₀,w₀}(x)`.
pub fn verify_double_ratios<S: Scalar>(x: &Matrix<S>, tentative: bool) -> Result<DoubleRatioReport> {
    let n = x.rows();
    let w0 = Permutation::longest(n);
    let y = twist_general(x, &w0, &w0)?;
    let ij = || pairs(n).map(|(i, j)| vec![i, j]);
    let anti = |z: &Matrix<S>, i: usize| dq(z, r(n + 1 - i, n), r(1, i), n + 1 - i, i);
    let mut families = vec![
        family("anti-diagonal", (1..=n).map(|i| vec![i]), |a| Ok((anti(&y, a[0])?, anti(x, a[0])?)))?,
        family("t-twisted", ij(), |a| Ok((t_twisted(&y, a[0], a[1])?, t_direct(x, a[0], a[1])?)))?,
        family("t-twisted-converse", ij(), |a| Ok((t_direct(&y, a[0], a[1])?, t_twisted(x, a[0], a[1])?)))?,
        family("tau-twisted", ij(), |a| Ok((tau_twisted(&y, a[0], a[1])?, tau_direct(x, a[0], a[1])?)))?,
        family("tau-twisted-converse", ij(), |a| Ok((tau_direct(&y, a[0], a[1])?, tau_twisted(x, a[0], a[1])?)))?,
        family("tau-minor", ij(), |a| {
            let (i, j) = (a[0], a[1]);
            let lhs = dq(&y, r(i, j), r(1, j + 1 - i), i, j + 1 - i)?;
            let mid = dq(x, r(1, j), join(r(n + 1 - i, n), r(1, j - i)), j, n + 1 - i)?.inv()?;
            let last = dq(x, r(1, j), join(r(n + 2 - i, n), r(1, j + 1 - i)), j, j + 1 - i)?;
            Ok((lhs, h_direct(x, i)? * &mid * &last))
        })?,
    ];
    if tentative {
        // Δ^{i,i}_{[1,i],[1,i]}(z)⁻¹ Δ^{i,j}_{[1,i]∪[n+i+1-j,n],[1,j]}(z) against
        // Δ^{i,i}_{[1,i],[1,i]}(w)⁻¹ Δ^{i,j}_{[1,i],[j+1-i,j]}(w).
        let spread = |z: &Matrix<S>, i: usize, j: usize| {
            ratio(dq(z, r(1, i), r(1, i), i, i), dq(z, join(r(1, i), r(n + i + 1 - j, n)), r(1, j), i, j))
        };
        let packed = |z: &Matrix<S>, i: usize, j: usize| {
            ratio(dq(z, r(1, i), r(1, i), i, i), dq(z, r(1, i), r(j + 1 - i, j), i, j))
        };
        let ij_full = || (1..n).flat_map(move |i| (i..=n).map(move |j| vec![i, j]));
        families.push(family("t-telescoped", ij_full(), |a| Ok((spread(&y, a[0], a[1])?, packed(x, a[0], a[1])?)))?);
        families.push(family("t-telescoped-converse", ij_full(), |a| {
            Ok((packed(&y, a[0], a[1])?, spread(x, a[0], a[1])?))
        })?);
    }
    Ok(DoubleRatioReport { families })
}
