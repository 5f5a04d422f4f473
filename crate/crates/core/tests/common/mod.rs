#![allow(dead_code)]

use qbruhat::skewfield::{sampler, Sampler};
use qbruhat::{Matrix, Quaternion, Rational, Scalar};

/// Determinant by cofactor expansion along the first row.
pub fn det(m: &Matrix<Rational>) -> Rational {
    let n = m.rows();
    if n == 0 {
        return Rational::one();
    }
    if n == 1 {
        return m[(1, 1)].clone();
    }
    let mut acc = Rational::zero();
    for j in 1..=n {
        if m[(1, j)].is_zero() {
            continue;
        }
        let term = m[(1, j)].clone() * &det(&m.delete(1, j).unwrap());
        acc = if j % 2 == 1 { acc + &term } else { acc - &term };
    }
    acc
}

pub fn random_quaternion_matrix(n: usize, rng: &mut Sampler, bound: i64) -> Matrix<Quaternion> {
    Matrix::from_fn(n, n, |_, _| Quaternion::sample(rng, bound))
}

pub fn random_rational_matrix(n: usize, rng: &mut Sampler, bound: i64) -> Matrix<Rational> {
    Matrix::from_fn(n, n, |_, _| Rational::sample(rng, bound))
}

pub fn rng(seed: u64) -> Sampler {
    sampler(seed)
}
