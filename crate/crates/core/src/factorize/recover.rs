//! Recovery of `h` and `t` from `x = h x_{i_1}(t_1) ⋯ x_{i_m}(t_m)` through
//! quasiminors of the twisted point `y = ψ^{u,v}(x)`.

use serde::{Deserialize, Serialize};

use crate::cells::{check_cell, twist_general};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::quasidet::delta;
use crate::skewfield::Scalar;
use crate::weyl::{DoubleWord, Permutation};

use super::generators::product_map;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorizationOutput<S> {
    pub h: Vec<S>,
    pub t: Vec<S>,
}

/// `h_i = Δ^{u⁻¹(i)}_{u,e}(x)`.
pub fn torus_part<S: Scalar>(x: &Matrix<S>, u: &Permutation) -> Result<Vec<S>> {
    let n = x.rows();
    let e = Permutation::identity(n);
    let u_inv = u.inverse();
    (1..=n)
        .map(|i| delta(x, u_inv.apply(i), u, &e).map_err(|err| name(err, &format!("h_{i}"))))
        .collect()
}

fn name(err: Error, what: &str) -> Error {
    match err {
        Error::NotGeneric(w) => Error::not_generic(format!("{what}: {w}")),
        Error::ZeroInverse => Error::not_generic(format!("{what}: vanishing quasiminor")),
        other => other,
    }
}

fn ratio<S: Scalar>(y: &Matrix<S>, den: (usize, &Permutation, &Permutation), num: (usize, &Permutation, &Permutation)) -> Result<S> {
    let d = delta(y, den.0, den.1, den.2)?;
    let n = delta(y, num.0, num.1, num.2)?;
    Ok(d.inv()? * &n)
}

/// Both closed forms of `t_k`, evaluated on the twisted point `y`. For a
/// negative letter `-i`:
/// `Δ^i_{v<k,u>k}(y)⁻¹ Δ^i_{v<k,u≥k}(y)` and
/// `Δ^{i+1}_{v<k,u≥k}(y)⁻¹ Δ^{i+1}_{v<k,u>k}(y)`; for a positive letter `i`:
/// `Δ^i_{v≤k,u>k}(y)⁻¹ Δ^{i+1}_{v<k,u>k}(y)` and
/// `Δ^i_{v<k,u>k}(y)⁻¹ Δ^{i+1}_{v≤k,u>k}(y)`.
pub fn param_forms<S: Scalar>(y: &Matrix<S>, word: &DoubleWord, k: usize) -> Result<(S, S)> {
    let letter = word.letters()[k - 1];
    let i = letter.unsigned_abs() as usize;
    let s = word.subword_perms(k);
    let forms = if letter < 0 {
        (
            ratio(y, (i, &s.v_lt, &s.u_gt), (i, &s.v_lt, &s.u_ge)),
            ratio(y, (i + 1, &s.v_lt, &s.u_ge), (i + 1, &s.v_lt, &s.u_gt)),
        )
    } else {
        (
            ratio(y, (i, &s.v_le, &s.u_gt), (i + 1, &s.v_lt, &s.u_gt)),
            ratio(y, (i, &s.v_lt, &s.u_gt), (i + 1, &s.v_le, &s.u_gt)),
        )
    };
    let what = format!("t_{k}");
    Ok((forms.0.map_err(|e| name(e, &what))?, forms.1.map_err(|e| name(e, &what))?))
}

/// Factors `x ∈ G^{u,v}` along a double reduced word for `(u, v)`.
/// Both closed forms of every `t_k` are computed and must agree.
pub fn recover_params<S: Scalar>(x: &Matrix<S>, word: &DoubleWord) -> Result<FactorizationOutput<S>> {
    if x.rows() != word.n() || !x.is_square() {
        return Err(Error::ShapeMismatch(format!("{}x{} matrix for a word in S_{}", x.rows(), x.cols(), word.n())));
    }
    let (u, v) = (word.u(), word.v());
    check_cell(x, &u, &v)?;
    let h = torus_part(x, &u)?;
    let y = twist_general(x, &u, &v)?;
    let mut t = Vec::with_capacity(word.len());
    for k in 1..=word.len() {
        let (a, b) = param_forms(&y, word, k)?;
        if a != b {
            return Err(Error::Inconsistent(format!("t_{k}: {a} vs {b}")));
        }
        t.push(a);
    }
    Ok(FactorizationOutput { h, t })
}

/// [`recover_params`] followed by a replay through the product map.
pub fn recover_and_verify<S: Scalar>(x: &Matrix<S>, word: &DoubleWord) -> Result<FactorizationOutput<S>> {
    let out = recover_params(x, word)?;
    let replay = product_map(word, &out.t, Some(&out.h))?;
    if &replay != x {
        return Err(Error::Inconsistent(format!("replay along {word} does not reproduce the input")));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factorize::{sample_params, sample_torus};
    use crate::skewfield::{sampler, Quaternion, Rational};

    #[test]
    fn round_trip_over_every_s3_double_word() {
        let mut rng = sampler(1);
        let mut words = 0;
        for u in Permutation::all(3) {
            for v in Permutation::all(3) {
                for w in DoubleWord::enumerate_for(&u, &v, usize::MAX) {
                    let h: Vec<Quaternion> = sample_torus(&mut rng, 3, 3);
                    let t: Vec<Quaternion> = sample_params(&mut rng, w.len(), 3);
                    let x = product_map(&w, &t, Some(&h)).unwrap();
                    let out = recover_and_verify(&x, &w).unwrap();
                    assert_eq!(out, FactorizationOutput { h, t }, "word {w}");
                    words += 1;
                }
            }
        }
        assert!(words > 36);
    }

    #[test]
    fn round_trip_on_random_s4_words() {
        let mut rng = sampler(2);
        for _ in 0..30 {
            let u = Permutation::random(&mut rng, 4);
            let v = Permutation::random(&mut rng, 4);
            let w = DoubleWord::random_for(&u, &v, &mut rng);
            let h: Vec<Rational> = sample_torus(&mut rng, 4, 4);
            let t: Vec<Rational> = sample_params(&mut rng, w.len(), 4);
            let x = product_map(&w, &t, Some(&h)).unwrap();
            assert_eq!(recover_params(&x, &w).unwrap(), FactorizationOutput { h, t }, "word {w}");
        }
    }

    #[test]
    fn positive_words_have_trivial_torus() {
        let mut rng = sampler(3);
        let e = Permutation::identity(4);
        let v = Permutation::longest(4);
        let w = DoubleWord::random_for(&e, &v, &mut rng);
        let t: Vec<Quaternion> = sample_params(&mut rng, w.len(), 3);
        let x = product_map(&w, &t, None).unwrap();
        let out = recover_params(&x, &w).unwrap();
        assert!(out.h.iter().all(|h| h.is_one()));
        for i in 1..=4 {
            assert_eq!(out.h[i - 1], x[(i, i)]);
        }
    }

    #[test]
    fn wrong_cell_is_reported() {
        let mut rng = sampler(4);
        let w = DoubleWord::parse(3, "1,2,1").unwrap();
        let t: Vec<Quaternion> = sample_params(&mut rng, 3, 3);
        let x = product_map(&w, &t, None).unwrap();
        let other = DoubleWord::parse(3, "-1,2,1").unwrap();
        assert!(matches!(recover_params(&x, &other), Err(Error::WrongCell { .. })));
    }
}
