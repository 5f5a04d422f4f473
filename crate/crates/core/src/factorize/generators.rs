//! Elementary generators of `GL_n` and the product map along a word.

use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::skewfield::Scalar;
use crate::weyl::{simple_representative, DoubleWord};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GeneratorKind {
    /// `x_i(t) = I + t E_{i,i+1}`
    X,
    /// `y_i(t) = I + t E_{i+1,i}`
    Y,
    /// `h_i(t) = φ_i diag(t, t⁻¹)`
    H,
    /// `x_{-i}(t) = φ_i [[t⁻¹, 0], [1, t]]`
    XNeg,
    /// `s̄_i = φ_i [[0, -1], [1, 0]]`
    SBar,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator<S> {
    pub kind: GeneratorKind,
    pub i: usize,
    pub t: Option<S>,
}

impl<S: Scalar> Generator<S> {
    pub fn new(kind: GeneratorKind, i: usize, t: Option<S>) -> Self {
        Generator { kind, i, t }
    }

    /// The generator for a signed letter: `i > 0` gives `x_i(t)`, `i < 0`
    /// gives `x_{-|i|}(t)`.
    pub fn letter(letter: i32, t: S) -> Self {
        let kind = if letter > 0 { GeneratorKind::X } else { GeneratorKind::XNeg };
        Generator { kind, i: letter.unsigned_abs() as usize, t: Some(t) }
    }
}

impl<S: Scalar> fmt::Display for Generator<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.kind {
            GeneratorKind::X => format!("x_{}", self.i),
            GeneratorKind::Y => format!("y_{}", self.i),
            GeneratorKind::H => format!("h_{}", self.i),
            GeneratorKind::XNeg => format!("x_-{}", self.i),
            GeneratorKind::SBar => return write!(f, "sbar_{}", self.i),
        };
        match &self.t {
            Some(t) => write!(f, "{name}({t})"),
            None => write!(f, "{name}(?)"),
        }
    }
}

fn block<S: Scalar>(n: usize, i: usize, b: [[S; 2]; 2]) -> Matrix<S> {
    let mut m = Matrix::identity(n);
    let [[a, bb], [c, d]] = b;
    m[(i, i)] = a;
    m[(i, i + 1)] = bb;
    m[(i + 1, i)] = c;
    m[(i + 1, i + 1)] = d;
    m
}

pub fn generator_matrix<S: Scalar>(g: &Generator<S>, n: usize) -> Result<Matrix<S>> {
    if g.i == 0 || g.i >= n {
        return Err(Error::IndexOutOfRange(format!("generator index {} outside [1,{}]", g.i, n.saturating_sub(1))));
    }
    if g.kind == GeneratorKind::SBar {
        return Ok(simple_representative(g.i, n));
    }
    let t = g
        .t
        .clone()
        .ok_or_else(|| Error::ShapeMismatch(format!("{g} needs a parameter")))?;
    let (z, o) = (S::zero(), S::one());
    Ok(match g.kind {
        GeneratorKind::X => block(n, g.i, [[o.clone(), t], [z, o]]),
        GeneratorKind::Y => block(n, g.i, [[o.clone(), z], [t, o]]),
        GeneratorKind::H => {
            let ti = t.inv()?;
            block(n, g.i, [[t, z.clone()], [z, ti]])
        }
        GeneratorKind::XNeg => {
            let ti = t.inv()?;
            block(n, g.i, [[ti, z], [o, t]])
        }
        GeneratorKind::SBar => unreachable!(),
    })
}

pub fn x_gen<S: Scalar>(i: usize, t: S, n: usize) -> Matrix<S> {
    generator_matrix(&Generator::new(GeneratorKind::X, i, Some(t)), n).expect("valid x_i")
}

pub fn y_gen<S: Scalar>(i: usize, t: S, n: usize) -> Matrix<S> {
    generator_matrix(&Generator::new(GeneratorKind::Y, i, Some(t)), n).expect("valid y_i")
}

pub fn h_gen<S: Scalar>(i: usize, t: S, n: usize) -> Result<Matrix<S>> {
    generator_matrix(&Generator::new(GeneratorKind::H, i, Some(t)), n)
}

pub fn x_neg<S: Scalar>(i: usize, t: S, n: usize) -> Result<Matrix<S>> {
    generator_matrix(&Generator::new(GeneratorKind::XNeg, i, Some(t)), n)
}

/// `h · x_{i_1}(t_1) ⋯ x_{i_m}(t_m)` for a signed word.
pub fn product_map<S: Scalar>(word: &DoubleWord, t: &[S], h: Option<&[S]>) -> Result<Matrix<S>> {
    product_of_letters(word.n(), word.letters(), t, h)
}

/// [`product_map`] for an arbitrary signed letter sequence, reduced or not.
pub fn product_of_letters<S: Scalar>(n: usize, letters: &[i32], t: &[S], h: Option<&[S]>) -> Result<Matrix<S>> {
    if letters.len() != t.len() {
        return Err(Error::ShapeMismatch(format!("{} letters but {} parameters", letters.len(), t.len())));
    }
    let mut m = match h {
        None => Matrix::identity(n),
        Some(h) => {
            if h.len() != n {
                return Err(Error::ShapeMismatch(format!("torus part of length {} in GL_{n}", h.len())));
            }
            if h.iter().any(S::is_zero) {
                return Err(Error::ZeroInverse);
            }
            Matrix::diag(h)
        }
    };
    for (&l, tk) in letters.iter().zip(t) {
        if tk.is_zero() {
            return Err(Error::ZeroInverse);
        }
        m = &m * &generator_matrix(&Generator::letter(l, tk.clone()), n)?;
    }
    Ok(m)
}

/// Moves `x_i` left past `x_{-i}`: `x_{-i}(s) x_i(t) = x_i(s⁻¹t(s+t)⁻¹) x_{-i}(s+t)`.
/// Returns the two new parameters; undefined when `s + t = 0`.
pub fn commute_negative_positive<S: Scalar>(s: &S, t: &S) -> Result<(S, S)> {
    let sum = s.clone() + t;
    if sum.is_zero() {
        return Err(Error::not_generic("x_{-i}(s) x_i(t) with s + t = 0"));
    }
    Ok((s.inv()? * t * &sum.inv()?, sum))
}

/// `m` nonzero parameters.
pub fn sample_params<S: Scalar, R: Rng + ?Sized>(rng: &mut R, m: usize, bound: i64) -> Vec<S> {
    (0..m).map(|_| S::sample(rng, bound)).collect()
}

pub fn sample_torus<S: Scalar, R: Rng + ?Sized>(rng: &mut R, n: usize, bound: i64) -> Vec<S> {
    (0..n).map(|_| S::sample(rng, bound)).collect()
}
