//! Small worked factorizations in `GL_3` and `GL_4` with their closed-form
//! parameters, written entry by entry.

use crate::error::Result;
use crate::factorize::{product_map, FactorizationOutput};
use crate::matrix::Matrix;
use crate::quasidet::quasidet;
use crate::skewfield::{RatFunc, Scalar};
use crate::weyl::DoubleWord;

/// The matrix of independent variables `x11, x12, …`.
pub fn symbolic_matrix(n: usize, prefix: &str) -> Matrix<RatFunc> {
    Matrix::from_fn(n, n, |i, j| RatFunc::var(&format!("{prefix}{i}{j}")))
}

/// `|x_{rows,cols}|` with the box at `(p, q)`, both in original numbering.
fn boxed<S: Scalar>(x: &Matrix<S>, rows: &[usize], cols: &[usize], p: usize, q: usize) -> Result<S> {
    let sub = x.select(rows, cols)?;
    let pi = rows.iter().position(|&r| r == p).expect("boxed row") + 1;
    let qi = cols.iter().position(|&c| c == q).expect("boxed column") + 1;
    quasidet(&sub, pi, qi)
}

/// Upper triangular `x = diag(x11, x22, x33) · x_1(t12) x_2(t13) x_1(t23)`.
pub fn borel3_word() -> DoubleWord {
    DoubleWord::parse(3, "1,2,1").expect("reduced")
}

/// `(t12, t13, t23)` with `t13 = x22⁻¹x23`, `t12 = x11⁻¹x13x23⁻¹x22`,
/// `t23 = x11⁻¹ |x12* x13; x22 x23|`.
pub fn borel3_params<S: Scalar>(x: &Matrix<S>) -> Result<[S; 3]> {
    let e = |i, j| x[(i, j)].clone();
    let t13 = e(2, 2).inv()? * &e(2, 3);
    let t12 = e(1, 1).inv()? * &e(1, 3) * &e(2, 3).inv()? * &e(2, 2);
    let t23 = e(1, 1).inv()? * &boxed(x, &[1, 2], &[2, 3], 1, 2)?;
    Ok([t12, t13, t23])
}

pub fn borel3_product<S: Scalar>(diag: &[S], t: &[S; 3]) -> Result<Matrix<S>> {
    product_map(&borel3_word(), t, Some(diag))
}

/// `x = h x_{-2}(t1) x_{-1}(t2) x_{-2}(t3) x_2(t4) x_1(t5) x_2(t6)`.
pub fn gl3_word() -> DoubleWord {
    DoubleWord::parse(3, "-2,-1,-2,2,1,2").expect("reduced")
}

/// `h` and `t` from the displayed quasideterminants of `x`.
pub fn gl3_params<S: Scalar>(x: &Matrix<S>) -> Result<FactorizationOutput<S>> {
    let e = |i, j| x[(i, j)].clone();
    let all = [1, 2, 3];
    let h1 = boxed(x, &all, &all, 1, 3)?;
    let h2 = -boxed(x, &[2, 3], &[1, 2], 2, 2)?;
    let h3 = e(3, 1);
    let t6 = e(1, 2).inv()? * &e(1, 3);
    let t5 = e(1, 1).inv()? * &e(1, 2);
    let t4 = boxed(x, &[1, 2], &[1, 2], 2, 2)?.inv()? * &boxed(x, &[1, 2], &[2, 3], 2, 3)?;
    let t1 = -(e(2, 1).inv()? * &boxed(x, &[2, 3], &[1, 2], 2, 2)?);
    let t2 = e(1, 1).inv()? * &h1;
    let t3 = -(boxed(x, &[1, 2], &[1, 2], 1, 2)?.inv()? * &h1);
    Ok(FactorizationOutput { h: vec![h1, h2, h3], t: vec![t1, t2, t3, t4, t5, t6] })
}

/// `t4` written out: `(x22 - x21 x11⁻¹ x12)⁻¹ (x23 - x22 x12⁻¹ x13)`.
pub fn gl3_t4_expanded<S: Scalar>(x: &Matrix<S>) -> Result<S> {
    let e = |i, j| x[(i, j)].clone();
    let a = e(2, 2) - e(2, 1) * &e(1, 1).inv()? * &e(1, 2);
    let b = e(2, 3) - e(2, 2) * &e(1, 2).inv()? * &e(1, 3);
    Ok(a.inv()? * &b)
}

/// Unipotent `x = x_1(t12) x_2(t13) x_3(t14) x_1(t23) x_2(t24) x_1(t34)`.
pub fn sl4_word() -> DoubleWord {
    DoubleWord::parse(4, "1,2,3,1,2,1").expect("reduced")
}

/// `[t12, t13, t14, t23, t24, t34]` from the boxed quasideterminants.
pub fn sl4_params<S: Scalar>(x: &Matrix<S>) -> Result<Vec<S>> {
    let e = |i, j| x[(i, j)].clone();
    let t14 = e(3, 4);
    let t13 = e(2, 4) * &e(3, 4).inv()?;
    let t12 = e(1, 4) * &e(2, 4).inv()?;
    let t24 = boxed(x, &[2, 3], &[3, 4], 2, 3)?;
    let t23 = boxed(x, &[1, 2], &[3, 4], 1, 3)? * &t24.inv()?;
    let t34 = boxed(x, &[1, 2, 3], &[2, 3, 4], 1, 2)?;
    Ok(vec![t12, t13, t14, t23, t24, t34])
}

/// `t24` and `t23` written out: `x23 - x24 x34⁻¹` and
/// `(x13 - x14 x24⁻¹ x23)(x23 - x24 x34⁻¹)⁻¹`.
pub fn sl4_expanded<S: Scalar>(x: &Matrix<S>) -> Result<(S, S)> {
    let e = |i, j| x[(i, j)].clone();
    let t24 = e(2, 3) - e(2, 4) * &e(3, 4).inv()?;
    let t23 = (e(1, 3) - e(1, 4) * &e(2, 4).inv()? * &e(2, 3)) * &t24.inv()?;
    Ok((t24, t23))
}

/// `t34` written out: `x12 - x13 (x23 - x24 x34⁻¹)⁻¹ + x14 x34⁻¹ (x23 - x24 x34⁻¹)⁻¹`.
pub fn sl4_t34_expanded<S: Scalar>(x: &Matrix<S>) -> Result<S> {
    let e = |i, j| x[(i, j)].clone();
    let t24_inv = (e(2, 3) - e(2, 4) * &e(3, 4).inv()?).inv()?;
    Ok(e(1, 2) - e(1, 3) * &t24_inv + &(e(1, 4) * &e(3, 4).inv()? * &t24_inv))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factorize::{recover_params, sample_params, sample_torus};
    use crate::skewfield::{sampler, Quaternion};

    fn symbols(names: &[&str]) -> Vec<RatFunc> {
        names.iter().map(|n| RatFunc::var(n)).collect()
    }

    #[test]
    fn borel_symbolic_and_quaternionic() {
        let d = symbols(&["d1", "d2", "d3"]);
        let t = symbols(&["t12", "t13", "t23"]);
        let t: [RatFunc; 3] = t.try_into().unwrap();
        let x = borel3_product(&d, &t).unwrap();
        assert_eq!(x[(1, 2)], d[0].clone() * &(t[0].clone() + &t[2]));
        assert_eq!(borel3_params(&x).unwrap(), t);
        let mut rng = sampler(1);
        for _ in 0..10 {
            let d: Vec<Quaternion> = sample_torus(&mut rng, 3, 3);
            let t: [Quaternion; 3] = sample_params(&mut rng, 3, 3).try_into().unwrap();
            let x = borel3_product(&d, &t).unwrap();
            assert_eq!(borel3_params(&x).unwrap(), t);
            assert_eq!(x.diagonal(), d);
        }
    }

    #[test]
    fn gl3_symbolic_and_quaternionic() {
        let h = symbols(&["h1", "h2", "h3"]);
        let t = symbols(&["t1", "t2", "t3", "t4", "t5", "t6"]);
        let x = product_map(&gl3_word(), &t, Some(&h)).unwrap();
        assert_eq!(gl3_params(&x).unwrap(), FactorizationOutput { h: h.clone(), t: t.clone() });
        let mut rng = sampler(2);
        for _ in 0..10 {
            let h: Vec<Quaternion> = sample_torus(&mut rng, 3, 3);
            let t: Vec<Quaternion> = sample_params(&mut rng, 6, 3);
            let x = product_map(&gl3_word(), &t, Some(&h)).unwrap();
            let expected = FactorizationOutput { h, t };
            assert_eq!(gl3_params(&x).unwrap(), expected);
            assert_eq!(recover_params(&x, &gl3_word()).unwrap(), expected);
            assert_eq!(gl3_t4_expanded(&x).unwrap(), expected.t[3]);
        }
    }

    #[test]
    fn gl3_head_matrix() {
        let mut rng = sampler(3);
        let h: Vec<Quaternion> = sample_torus(&mut rng, 3, 3);
        let t: Vec<Quaternion> = sample_params(&mut rng, 3, 3);
        let w = DoubleWord::parse(3, "-2,-1,-2").unwrap();
        let x = product_map(&w, &t, Some(&h)).unwrap();
        let inv = |q: &Quaternion| q.inv().unwrap();
        let z = Quaternion::zero;
        let expected = Matrix::from_rows(vec![
            vec![h[0].clone() * &inv(&t[1]), z(), z()],
            vec![h[1].clone() * &inv(&t[0]), h[1].clone() * &inv(&t[0]) * &t[1] * &inv(&t[2]), z()],
            vec![h[2].clone(), h[2].clone() * &(t[0].clone() + &(t[1].clone() * &inv(&t[2]))), h[2].clone() * &t[0] * &t[2]],
        ])
        .unwrap();
        assert_eq!(x, expected);
    }

    #[test]
    fn sl4_symbolic_and_quaternionic() {
        let t = symbols(&["t12", "t13", "t14", "t23", "t24", "t34"]);
        let x = product_map(&sl4_word(), &t, None).unwrap();
        assert_eq!(sl4_params(&x).unwrap(), t);
        let mut rng = sampler(4);
        for _ in 0..10 {
            let t: Vec<Quaternion> = sample_params(&mut rng, 6, 3);
            let x = product_map(&sl4_word(), &t, None).unwrap();
            assert_eq!(x[(1, 4)], t[0].clone() * &t[1] * &t[2]);
            assert_eq!(sl4_params(&x).unwrap(), t);
            assert_eq!(sl4_expanded(&x).unwrap(), (t[4].clone(), t[3].clone()));
            assert_eq!(sl4_t34_expanded(&x).unwrap(), t[5]);
        }
    }
}
