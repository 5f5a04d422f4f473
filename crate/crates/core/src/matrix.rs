//! Dense matrices over a [`Scalar`] with 1-based indexing.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::skewfield::Scalar;

/// Strictly increasing list of 1-based indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexSet(Vec<usize>);

impl IndexSet {
    pub fn new(indices: Vec<usize>) -> Result<Self> {
        if indices.contains(&0) {
            return Err(Error::IndexOutOfRange("indices are 1-based".into()));
        }
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::IndexOutOfRange(format!(
                "index set {indices:?} is not strictly increasing"
            )));
        }
        Ok(IndexSet(indices))
    }

    /// Sorts and deduplicates.
    pub fn from_unsorted(indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut v: Vec<usize> = indices.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        IndexSet::new(v)
    }

    /// `[a, b]`, empty when `a > b`.
    pub fn range(a: usize, b: usize) -> Self {
        IndexSet((a.max(1)..=b).collect())
    }

    pub fn empty() -> Self {
        IndexSet(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn max(&self) -> Option<usize> {
        self.0.last().copied()
    }

    /// Number of elements strictly greater than `i`.
    pub fn count_greater(&self, i: usize) -> usize {
        self.0.iter().filter(|&&a| a > i).count()
    }

    pub fn without(&self, i: usize) -> Self {
        IndexSet(self.0.iter().copied().filter(|&a| a != i).collect())
    }

    pub fn union(&self, other: &IndexSet) -> Self {
        IndexSet::from_unsorted(self.iter().chain(other.iter())).expect("union of index sets")
    }

    /// `(I ∘ I')_a = I_{I'_a}`: positions of `inner` picked out of `self`.
    pub fn compose(&self, inner: &IndexSet) -> Result<Self> {
        inner
            .iter()
            .map(|p| {
                self.0.get(p - 1).copied().ok_or_else(|| {
                    Error::IndexOutOfRange(format!("position {p} in a set of size {}", self.len()))
                })
            })
            .collect::<Result<Vec<_>>>()
            .map(IndexSet)
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (pos, i) in self.0.iter().enumerate() {
            if pos > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

/// Dense row-major matrix. All public indexing is 1-based.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<S>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        Matrix::from_vec(r, c, rows.into_iter().flatten().collect())
    }

    /// Builds entry `(i, j)` from `f(i, j)`, 1-based.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 1..=rows {
            for j in 1..=cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |_, _| S::zero())
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { S::one() } else { S::zero() })
    }

    pub fn diag(entries: &[S]) -> Self {
        let n = entries.len();
        Matrix::from_fn(n, n, |i, j| {
            if i == j {
                entries[i - 1].clone()
            } else {
                S::zero()
            }
        })
    }

    /// Matrix unit `E_{ij}`.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        m[(i, j)] = S::one();
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&S> {
        if (1..=self.rows).contains(&i) && (1..=self.cols).contains(&j) {
            Some(&self.data[(i - 1) * self.cols + (j - 1)])
        } else {
            None
        }
    }

    pub fn row(&self, i: usize) -> Vec<S> {
        (1..=self.cols).map(|j| self[(i, j)].clone()).collect()
    }

    pub fn diagonal(&self) -> Vec<S> {
        (1..=self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = &S> {
        self.data.iter()
    }

    pub fn map(&self, f: impl Fn(&S) -> S) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Rows and columns in the given order (not necessarily increasing).
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Result<Self> {
        for &i in rows {
            if !(1..=self.rows).contains(&i) {
                return Err(Error::IndexOutOfRange(format!("row {i} of {}", self.rows)));
            }
        }
        for &j in cols {
            if !(1..=self.cols).contains(&j) {
                return Err(Error::IndexOutOfRange(format!("column {j} of {}", self.cols)));
            }
        }
        Ok(Matrix::from_fn(rows.len(), cols.len(), |a, b| {
            self[(rows[a - 1], cols[b - 1])].clone()
        }))
    }

    /// `x_{I,J}`.
    pub fn submatrix(&self, rows: &IndexSet, cols: &IndexSet) -> Result<Self> {
        self.select(rows.as_slice(), cols.as_slice())
    }

    /// `A^{pq}`: delete row `p` and column `q`.
    pub fn delete(&self, p: usize, q: usize) -> Result<Self> {
        let rows: Vec<usize> = (1..=self.rows).filter(|&i| i != p).collect();
        let cols: Vec<usize> = (1..=self.cols).filter(|&j| j != q).collect();
        self.select(&rows, &cols)
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn try_mul(&self, rhs: &Matrix<S>) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(Matrix::from_fn(self.rows, rhs.cols, |i, j| {
            let mut acc = S::zero();
            for k in 1..=self.cols {
                let (a, b) = (&self[(i, k)], &rhs[(k, j)]);
                if !a.is_zero() && !b.is_zero() {
                    acc = acc + &(a.clone() * b);
                }
            }
            acc
        }))
    }

    pub fn try_add(&self, rhs: &Matrix<S>) -> Result<Self> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::ShapeMismatch("addition of different shapes".into()));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.clone() + b).collect(),
        })
    }

    /// Left scalar multiple `λ·x`.
    pub fn scale_left(&self, lambda: &S) -> Self {
        self.map(|a| lambda.clone() * a)
    }

    /// Two-sided inverse by Gauss-Jordan elimination with left row
    /// operations, pivoting on the first nonzero entry of each column.
    pub fn inverse(&self) -> Result<Self> {
        self.left_divide(&Matrix::identity(self.rows))
    }

    /// `self⁻¹ · rhs` without forming the inverse.
    pub fn left_divide(&self, rhs: &Matrix<S>) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch(format!(
                "inverse of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        if rhs.rows != self.rows {
            return Err(Error::ShapeMismatch("left division by a matrix of another height".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut out = rhs.clone();
        for c in 1..=n {
            let p = (c..=n)
                .find(|&r| !a[(r, c)].is_zero())
                .ok_or_else(|| Error::not_generic(format!("singular: no pivot in column {c}")))?;
            if p != c {
                a.swap_rows(p, c);
                out.swap_rows(p, c);
            }
            let pivot_inv = a[(c, c)].inv()?;
            a.scale_row_left(c, &pivot_inv);
            out.scale_row_left(c, &pivot_inv);
            for r in 1..=n {
                if r == c || a[(r, c)].is_zero() {
                    continue;
                }
                let factor = a[(r, c)].clone();
                a.add_row_multiple(r, c, &factor);
                out.add_row_multiple(r, c, &factor);
            }
        }
        Ok(out)
    }

    /// Row rank by elimination with left row operations.
    pub fn rank(&self) -> usize {
        let mut a = self.clone();
        let mut rank = 0;
        for c in 1..=self.cols {
            let Some(p) = (rank + 1..=self.rows).find(|&r| !a[(r, c)].is_zero()) else {
                continue;
            };
            rank += 1;
            a.swap_rows(p, rank);
            let pivot_inv = a[(rank, c)].inv().expect("nonzero pivot");
            a.scale_row_left(rank, &pivot_inv);
            for r in rank + 1..=self.rows {
                if !a[(r, c)].is_zero() {
                    let factor = a[(r, c)].clone();
                    a.add_row_multiple(r, rank, &factor);
                }
            }
        }
        rank
    }

    pub(crate) fn swap_rows(&mut self, r1: usize, r2: usize) {
        for j in 1..=self.cols {
            let (a, b) = ((r1 - 1) * self.cols + j - 1, (r2 - 1) * self.cols + j - 1);
            self.data.swap(a, b);
        }
    }

    /// Row `r` becomes `λ · row r`.
    pub(crate) fn scale_row_left(&mut self, r: usize, lambda: &S) {
        for j in 1..=self.cols {
            let v = lambda.clone() * &self[(r, j)];
            self[(r, j)] = v;
        }
    }

    /// Row `target` becomes `row target − factor · row source`.
    pub(crate) fn add_row_multiple(&mut self, target: usize, source: usize, factor: &S) {
        for j in 1..=self.cols {
            if self[(source, j)].is_zero() {
                continue;
            }
            let v = self[(target, j)].clone() - &(factor.clone() * &self[(source, j)]);
            self[(target, j)] = v;
        }
    }

    /// Column `target` becomes `column target − column source · factor`.
    pub(crate) fn add_col_multiple(&mut self, target: usize, source: usize, factor: &S) {
        for i in 1..=self.rows {
            if self[(i, source)].is_zero() {
                continue;
            }
            let v = self[(i, target)].clone() - &(self[(i, source)].clone() * factor);
            self[(i, target)] = v;
        }
    }

    /// `σ(x)_{ij} = x_{n+1-i, n+1-j}`.
    pub fn sigma(&self) -> Self {
        let (r, c) = (self.rows, self.cols);
        Matrix::from_fn(r, c, |i, j| self[(r + 1 - i, c + 1 - j)].clone())
    }

    /// Positive inverse `x^ι = J x⁻¹ J` with `J = diag(-1, 1, -1, …)`.
    pub fn iota(&self) -> Result<Self> {
        Ok(self.inverse()?.conjugate_by_signs())
    }

    /// `(x^ι)⁻¹ = J x J`.
    pub fn iota_inverse(&self) -> Self {
        self.conjugate_by_signs()
    }

    /// `J x J`: entry `(i, j)` picks up the sign `(-1)^{i+j}`.
    fn conjugate_by_signs(&self) -> Self {
        Matrix::from_fn(self.rows, self.cols, |i, j| {
            let v = self[(i, j)].clone();
            if (i + j) % 2 == 1 {
                -v
            } else {
                v
            }
        })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(S::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Matrix::identity(self.rows)
    }

    pub fn is_diagonal(&self) -> bool {
        self.positions().all(|(i, j)| i == j || self[(i, j)].is_zero())
    }

    pub fn is_lower_triangular(&self) -> bool {
        self.positions().all(|(i, j)| i >= j || self[(i, j)].is_zero())
    }

    pub fn is_upper_triangular(&self) -> bool {
        self.positions().all(|(i, j)| i <= j || self[(i, j)].is_zero())
    }

    pub fn is_lower_unitriangular(&self) -> bool {
        self.is_lower_triangular() && self.diagonal().iter().all(S::is_one)
    }

    pub fn is_upper_unitriangular(&self) -> bool {
        self.is_upper_triangular() && self.diagonal().iter().all(S::is_one)
    }

    fn positions(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (1..=self.rows).flat_map(move |i| (1..=self.cols).map(move |j| (i, j)))
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson {
            n: self.rows,
            m: self.cols,
            entries: (1..=self.rows)
                .map(|i| (1..=self.cols).map(|j| self[(i, j)].to_string()).collect())
                .collect(),
        }
    }

    pub fn from_json(json: &MatrixJson) -> Result<Self> {
        if json.entries.len() != json.n || json.entries.iter().any(|r| r.len() != json.m) {
            return Err(Error::ShapeMismatch(format!(
                "declared {}x{} does not match the entries",
                json.n, json.m
            )));
        }
        let data = json
            .entries
            .iter()
            .flatten()
            .map(|s| s.parse::<S>())
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_vec(json.n, json.m, data)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("matrix serializes")
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let json: MatrixJson =
            serde_json::from_str(s).map_err(|e| Error::Parse(format!("matrix JSON: {e}")))?;
        Matrix::from_json(&json)
    }
}

/// Wire form `{ "n": rows, "m": cols, "entries": [[scalar, …], …] }` with
/// scalars in their canonical text form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub n: usize,
    pub m: usize,
    pub entries: Vec<Vec<String>>,
}

impl<S> Index<(usize, usize)> for Matrix<S> {
    type Output = S;

    fn index(&self, (i, j): (usize, usize)) -> &S {
        assert!(
            (1..=self.rows).contains(&i) && (1..=self.cols).contains(&j),
            "index ({i}, {j}) outside a {}x{} matrix",
            self.rows,
            self.cols
        );
        &self.data[(i - 1) * self.cols + (j - 1)]
    }
}

impl<S> IndexMut<(usize, usize)> for Matrix<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        assert!(
            (1..=self.rows).contains(&i) && (1..=self.cols).contains(&j),
            "index ({i}, {j}) outside a {}x{} matrix",
            self.rows,
            self.cols
        );
        &mut self.data[(i - 1) * self.cols + (j - 1)]
    }
}

impl<'b, S: Scalar> Mul<&'b Matrix<S>> for &Matrix<S> {
    type Output = Matrix<S>;

    /// Panics on a shape mismatch; use [`Matrix::try_mul`] to recover.
    fn mul(self, rhs: &'b Matrix<S>) -> Matrix<S> {
        self.try_mul(rhs).unwrap()
    }
}

impl<S: Scalar> fmt::Display for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.data.iter().map(ToString::to_string).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(1);
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, "  ")?;
                }
                write!(f, "{:>width$}", cells[i * self.cols + j])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

impl<S: Scalar> fmt::Debug for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 1..=self.rows {
            write!(f, "[")?;
            for j in 1..=self.cols {
                if j > 1 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}
