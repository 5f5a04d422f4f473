//! Matrix loading. The scalar type is inferred from the entries: rational if
//! every entry parses as a rational, else quaternion, else a rational
//! function in named variables.

use std::fs;

use qbruhat::matrix::MatrixJson;
use qbruhat::{Error, IndexSet, Matrix, Permutation, Quaternion, RatFunc, Rational, Result};

pub enum AnyMatrix {
    Rational(Matrix<Rational>),
    Quaternion(Matrix<Quaternion>),
    Symbolic(Matrix<RatFunc>),
}

/// Runs `$body` with `$x` bound to the concrete matrix.
macro_rules! with_matrix {
    ($m:expr, $x:ident => $body:expr) => {
        match $m {
            $crate::input::AnyMatrix::Rational($x) => $body,
            $crate::input::AnyMatrix::Quaternion($x) => $body,
            $crate::input::AnyMatrix::Symbolic($x) => $body,
        }
    };
}
pub(crate) use with_matrix;

/// `arg` is inline JSON when it starts with `{`, a file path otherwise.
pub fn load(arg: &str) -> Result<AnyMatrix> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        fs::read_to_string(arg).map_err(|e| Error::Parse(format!("{arg}: {e}")))?
    };
    let json: MatrixJson =
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("matrix JSON: {e}")))?;
    if let Ok(m) = Matrix::from_json(&json) {
        return Ok(AnyMatrix::Rational(m));
    }
    if let Ok(m) = Matrix::from_json(&json) {
        return Ok(AnyMatrix::Quaternion(m));
    }
    Matrix::from_json(&json).map(AnyMatrix::Symbolic)
}

pub fn index_list(text: &str) -> Result<Vec<usize>> {
    text.trim()
        .trim_start_matches('[')
        .trim_end_matches(']')
        .split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| Error::Parse(format!("index {t:?}"))))
        .collect()
}

pub fn index_set(text: &str) -> Result<IndexSet> {
    IndexSet::from_unsorted(index_list(text)?)
}

pub fn pair(text: &str) -> Result<(usize, usize)> {
    match index_list(text)?.as_slice() {
        [i, j] => Ok((*i, *j)),
        _ => Err(Error::Parse(format!("expected two indices, got {text:?}"))),
    }
}

pub fn permutation(text: &str) -> Result<Permutation> {
    text.parse()
}
