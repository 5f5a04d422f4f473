//! Inputs shared by the benchmarks.

use qbruhat::factorize::{product_map, sample_params, sample_torus};
use qbruhat::skewfield::sampler;
use qbruhat::{DoubleWord, Matrix, Permutation, Quaternion, Scalar};

pub fn random_matrix(n: usize, seed: u64) -> Matrix<Quaternion> {
    let mut rng = sampler(seed);
    Matrix::from_fn(n, n, |_, _| Quaternion::sample(&mut rng, 3))
}

/// A point of `G^{w0,w0}` built along a random double reduced word.
pub fn cell_point(n: usize, seed: u64) -> (Matrix<Quaternion>, DoubleWord) {
    let mut rng = sampler(seed);
    let w0 = Permutation::longest(n);
    let word = DoubleWord::random_for(&w0, &w0, &mut rng);
    let h: Vec<Quaternion> = sample_torus(&mut rng, n, 3);
    let t: Vec<Quaternion> = sample_params(&mut rng, word.len(), 3);
    let x = product_map(&word, &t, Some(&h)).expect("nonzero parameters");
    (x, word)
}

#[cfg(test)]
mod tests {
    use super::*;
    use qbruhat::cells::classify;

    #[test]
    fn cell_point_lands_in_the_top_cell() {
        let (x, word) = cell_point(3, 1);
        let label = classify(&x).unwrap();
        assert_eq!(label.u, word.u());
        assert_eq!(label.v, word.v());
    }
}
