//! Direct factorizations: the unipotent word `(1,…,n-1; 1,…,n-2; …; 1)` and
//! the column-clearing factorization of a generic matrix.

use crate::error::{Error, Result};
use crate::matrix::{IndexSet, Matrix};
use crate::quasidet::{positive_quasiminor, quasiminor, MinorSpec};
use crate::skewfield::Scalar;

use super::generators::{product_of_letters, x_gen};

/// Position of `t_{ij}` in the word `(1,…,n-1; 1,…,n-2; …; 1)`:
/// `k_{ij} = n(i-1) - C(i+1, 2) + j`.
pub(crate) fn k_index(n: usize, i: usize, j: usize) -> usize {
    n * (i - 1) + j - (i + 1) * i / 2
}

/// The word `(1,…,n-1; 1,…,n-2; …; 1, 2; 1)`.
pub fn standard_unipotent_word(n: usize) -> Vec<i32> {
    (1..n).rev().flat_map(|len| 1..=len as i32).collect()
}

/// Replays `∏ (1 + t_k E_{i_k})` along [`standard_unipotent_word`].
pub fn standard_unipotent_product<S: Scalar>(n: usize, t: &[S]) -> Result<Matrix<S>> {
    product_of_letters(n, &standard_unipotent_word(n), t, None)
}

/// Parameters `t_k` of `x = ∏ (1 + t_k E_{i_k})` along the standard word:
/// `t_{ij} = |x_{i,j-1}|_{j-i, n-i+1} · |x_{ij}|⁻¹_{j-i+1, n-i+1}`, where
/// `x_{ij}` has rows `[j-i+1, j]` and columns `[n-i+1, n]`.
pub fn solve_standard_unipotent<S: Scalar>(x: &Matrix<S>) -> Result<Vec<S>> {
    if !x.is_square() {
        return Err(Error::ShapeMismatch("square matrix expected".into()));
    }
    let n = x.rows();
    let mut t = vec![S::zero(); n * (n - 1) / 2];
    let block = |i: usize, j: usize| -> Result<S> {
        let rows: Vec<usize> = (j + 1 - i..=j).collect();
        let cols: Vec<usize> = (n + 1 - i..=n).collect();
        quasiminor(x, &rows, &cols, j + 1 - i, n + 1 - i)
    };
    for i in 1..n {
        for j in i + 1..=n {
            let fail = |e: Error| match e {
                Error::NotGeneric(w) | Error::NotInGaussCell(w) => Error::not_generic(format!("t_{{{i},{j}}}: {w}")),
                Error::ZeroInverse => Error::not_generic(format!("t_{{{i},{j}}}: vanishing denominator")),
                other => other,
            };
            let num = block(i, j - 1).map_err(fail)?;
            let den = block(i, j).map_err(fail)?.inv().map_err(fail)?;
            t[k_index(n, i, j) - 1] = num * &den;
        }
    }
    Ok(t)
}

/// `t_{m,k}` with `1 ≤ m ≤ k ≤ n-1`, listed in the clearing order
/// `(1,n-1), …, (1,1), (2,n-1), …, (n-1,n-1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UpperFactorization<S: Scalar> {
    pub params: Vec<((usize, usize), S)>,
    /// `x(m,k)` after each clearing step, same order as `params`.
    pub stages: Vec<((usize, usize), Matrix<S>)>,
}

impl<S: Scalar> UpperFactorization<S> {
    pub fn param(&self, m: usize, k: usize) -> Option<&S> {
        self.params.iter().find(|(mk, _)| *mk == (m, k)).map(|(_, t)| t)
    }

    pub fn stage(&self, m: usize, k: usize) -> Option<&Matrix<S>> {
        self.stages.iter().find(|(mk, _)| *mk == (m, k)).map(|(_, s)| s)
    }

    /// The lower triangular end point `x(n-1, n-1)`.
    pub fn lower(&self) -> Option<&Matrix<S>> {
        self.stages.last().map(|(_, s)| s)
    }

    /// `x(n-1,n-1) · ∏ (1 + t_{m,k} E_k)` in reverse clearing order.
    pub fn replay(&self, n: usize) -> Matrix<S> {
        let mut m = self.lower().cloned().unwrap_or_else(|| Matrix::identity(n));
        for ((_, k), t) in self.params.iter().rev() {
            m = &m * &x_gen(*k, t.clone(), n);
        }
        m
    }
}

/// `Δ^{m,k}_{[1,m],[k-m+1,k]}(x)⁻¹ Δ^{m,k+1}_{[1,m],[k-m+2,k+1]}(x)`.
pub fn upper_param<S: Scalar>(x: &Matrix<S>, m: usize, k: usize) -> Result<S> {
    let den = MinorSpec::new(IndexSet::range(1, m), IndexSet::range(k + 1 - m, k), m, k)?;
    let num = MinorSpec::new(IndexSet::range(1, m), IndexSet::range(k + 2 - m, k + 1), m, k + 1)?;
    let fail = |e: Error| match e {
        Error::NotGeneric(w) => Error::not_generic(format!("t_{{{m},{k}}}: {w}")),
        Error::ZeroInverse => Error::not_generic(format!("t_{{{m},{k}}}: Δ^{{{m},{k}}} vanishes")),
        other => other,
    };
    let d = positive_quasiminor(x, &den).map_err(fail)?.inv().map_err(fail)?;
    Ok(d * &positive_quasiminor(x, &num).map_err(fail)?)
}

/// Clears the strictly upper part of `x` column by column from the right:
/// `x(1,n-1) = x(1 - t_{1,n-1} E_{n-1})`, `x(m,k) = x(m,k+1)(1 - t_{m,k} E_k)`,
/// `x(m+1,n-1) = x(m,m)(1 - t_{m+1,n-1} E_{n-1})`, with `t_{m,k}` from
/// [`upper_param`].
pub fn upper_factorize<S: Scalar>(x: &Matrix<S>) -> Result<UpperFactorization<S>> {
    if !x.is_square() {
        return Err(Error::ShapeMismatch("square matrix expected".into()));
    }
    let n = x.rows();
    let mut current = x.clone();
    let mut params = Vec::new();
    let mut stages = Vec::new();
    for m in 1..n {
        for k in (m..n).rev() {
            let t = upper_param(x, m, k)?;
            current.add_col_multiple(k + 1, k, &t);
            params.push(((m, k), t));
            stages.push(((m, k), current.clone()));
        }
    }
    Ok(UpperFactorization { params, stages })
}

/// Closed form of the stage entry `x(m,k)_{ij}`. Column `j` has been cleared
/// `r` times, `r = min(m-1, j-1)` for `j ≤ k` and `r = min(m, j-1)` for
/// `j > k`; the entry vanishes for `i ≤ r` and otherwise equals
/// `|x_{[1,r] ∪ {i}, [j-r, j]}|_{i,j}`.
pub fn stage_entry<S: Scalar>(x: &Matrix<S>, m: usize, k: usize, i: usize, j: usize) -> Result<S> {
    let r = if j <= k { (m - 1).min(j - 1) } else { m.min(j - 1) };
    if i <= r {
        return Ok(S::zero());
    }
    let rows: Vec<usize> = (1..=r).chain([i]).collect();
    let cols: Vec<usize> = (j - r..=j).collect();
    quasiminor(x, &rows, &cols, i, j)
}

/// The stage entry exactly as the two displayed formulas read, or `None`
/// where they do not apply: `i ≥ m, 2 ≤ j ≤ k` uses rows `[1,m-1] ∪ {i}`
/// and columns `[j-m+1, j]`; `i > m, j > k` uses rows `[1,m] ∪ {i}` and
/// columns `[j-m, j]`. `None` is also returned when a column range would
/// start below 1.
pub fn stage_entry_as_displayed<S: Scalar>(x: &Matrix<S>, m: usize, k: usize, i: usize, j: usize) -> Option<Result<S>> {
    let (rows, first_col): (Vec<usize>, isize) = if i >= m && (2..=k).contains(&j) {
        ((1..m).chain([i]).collect(), j as isize - m as isize + 1)
    } else if i > m && j > k {
        ((1..=m).chain([i]).collect(), j as isize - m as isize)
    } else {
        return None;
    };
    if first_col < 1 {
        return None;
    }
    let cols: Vec<usize> = (first_col as usize..=j).collect();
    Some(quasiminor(x, &rows, &cols, i, j))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factorize::sample_params;
    use crate::quasidet::quasidet;
    use crate::skewfield::{sampler, Quaternion, RatFunc};

    fn random(n: usize, seed: u64) -> Matrix<Quaternion> {
        let mut rng = sampler(seed);
        Matrix::from_fn(n, n, |_, _| Quaternion::sample(&mut rng, 3))
    }

    #[test]
    fn positions_in_the_standard_word() {
        let n = 4;
        let word = standard_unipotent_word(n);
        assert_eq!(word, vec![1, 2, 3, 1, 2, 1]);
        for i in 1..n {
            for j in i + 1..=n {
                assert_eq!(word[k_index(n, i, j) - 1], (j - i) as i32);
            }
        }
        assert_eq!(k_index(4, 3, 4), 6);
    }

    #[test]
    fn entries_are_ordered_path_sums() {
        let n = 5;
        let mut rng = sampler(1);
        let t: Vec<Quaternion> = sample_params(&mut rng, n * (n - 1) / 2, 3);
        let x = standard_unipotent_product(n, &t).unwrap();
        let tij = |i: usize, j: usize| t[k_index(n, i, j) - 1].clone();
        for i in 1..n {
            for k in 1..=n - i {
                // nondecreasing (i_1, …, i_k) in [1, n+1-i-k]
                let mut total = Quaternion::zero();
                let mut seq = vec![1usize; k];
                loop {
                    let mut term = Quaternion::one();
                    for (pos, &a) in seq.iter().enumerate() {
                        term = term * &tij(a, a + i + pos);
                    }
                    total = total + &term;
                    let top = n + 1 - i - k;
                    let Some(p) = (0..k).rev().find(|&p| seq[p] < top) else { break };
                    seq[p] += 1;
                    for q in p + 1..k {
                        seq[q] = seq[p];
                    }
                }
                assert_eq!(x[(i, i + k)], total, "x_{{{i},{}}}", i + k);
            }
        }
    }

    #[test]
    fn elementary_symmetric_specialization() {
        let n = 4;
        let y: Vec<RatFunc> = (0..=n).map(|j| RatFunc::var(&format!("y{j}"))).collect();
        let mut t = vec![RatFunc::zero(); n * (n - 1) / 2];
        for i in 1..n {
            for j in i + 1..=n {
                t[k_index(n, i, j) - 1] = y[j].clone();
            }
        }
        let x = standard_unipotent_product(n, &t).unwrap();
        for i in 1..n {
            for k in 1..=n - i {
                let mut e = RatFunc::zero();
                let pool: Vec<usize> = (i + 1..=n).collect();
                for mask in 0u32..(1 << pool.len()) {
                    if mask.count_ones() as usize == k {
                        let mut term = RatFunc::one();
                        for (b, &j) in pool.iter().enumerate() {
                            if mask & (1 << b) != 0 {
                                term = term * &y[j];
                            }
                        }
                        e = e + &term;
                    }
                }
                assert_eq!(x[(i, i + k)], e);
            }
        }
    }

    #[test]
    fn first_row_parameters() {
        let n = 5;
        let mut rng = sampler(2);
        let t: Vec<Quaternion> = sample_params(&mut rng, 10, 3);
        let x = standard_unipotent_product(n, &t).unwrap();
        let rec = solve_standard_unipotent(&x).unwrap();
        for i in 1..n {
            let expected = x[(i, n)].clone() * &x[(i + 1, n)].inv().unwrap();
            assert_eq!(rec[k_index(n, 1, i + 1) - 1], expected);
        }
        assert_eq!(rec, t);
    }

    #[test]
    fn unipotent_round_trip() {
        let mut rng = sampler(3);
        for n in 2..=5 {
            let t: Vec<Quaternion> = sample_params(&mut rng, n * (n - 1) / 2, 3);
            let x = standard_unipotent_product(n, &t).unwrap();
            assert_eq!(solve_standard_unipotent(&x).unwrap(), t);
        }
    }

    #[test]
    fn upper_factorization_round_trip() {
        for (n, seed) in [(3, 4), (4, 5), (5, 6)] {
            let x = random(n, seed);
            let f = upper_factorize(&x).unwrap();
            assert!(f.lower().unwrap().is_lower_triangular());
            assert_eq!(f.replay(n), x);
            for ((m, k), stage) in &f.stages {
                for i in 1..=n {
                    for j in 1..=n {
                        assert_eq!(stage[(i, j)], stage_entry(&x, *m, *k, i, j).unwrap(), "x({m},{k})_{{{i}{j}}}");
                    }
                }
            }
        }
    }

    #[test]
    fn displayed_stage_formulas_where_in_range() {
        let n = 4;
        let x = random(n, 8);
        let f = upper_factorize(&x).unwrap();
        let mut covered = 0;
        let mut fallback_wrong = 0;
        for ((m, k), stage) in &f.stages {
            for i in 1..=n {
                for j in 1..=n {
                    match stage_entry_as_displayed(&x, *m, *k, i, j) {
                        Some(v) => {
                            assert_eq!(v.unwrap(), stage[(i, j)], "x({m},{k})_{{{i}{j}}}");
                            covered += 1;
                        }
                        None => {
                            if stage[(i, j)] != x[(i, j)] {
                                fallback_wrong += 1;
                            }
                        }
                    }
                }
            }
        }
        assert!(covered > 0);
        // entries outside both displayed cases are not always x_ij
        assert!(fallback_wrong > 0);
    }

    #[test]
    fn three_by_three_stages_symbolic() {
        let x = Matrix::from_fn(3, 3, |i, j| RatFunc::var(&format!("x{i}{j}")));
        let e = |i: usize, j: usize| x[(i, j)].clone();
        let q2 = |r: [usize; 2], c: [usize; 2]| quasidet(&x.select(&r, &c).unwrap(), 2, 2).unwrap();
        let f = upper_factorize(&x).unwrap();
        assert_eq!(f.param(1, 2).unwrap(), &(e(1, 2).inv().unwrap() * &e(1, 3)));
        assert_eq!(f.param(1, 1).unwrap(), &(e(1, 1).inv().unwrap() * &e(1, 2)));
        assert_eq!(f.param(2, 2).unwrap(), &(q2([1, 2], [1, 2]).inv().unwrap() * &q2([1, 2], [2, 3])));
        let z = RatFunc::zero;
        let x12 = Matrix::from_rows(vec![
            vec![e(1, 1), e(1, 2), z()],
            vec![e(2, 1), e(2, 2), q2([1, 2], [2, 3])],
            vec![e(3, 1), e(3, 2), q2([1, 3], [2, 3])],
        ])
        .unwrap();
        assert_eq!(f.stage(1, 2).unwrap(), &x12);
        let x11 = Matrix::from_rows(vec![
            vec![e(1, 1), z(), z()],
            vec![e(2, 1), q2([1, 2], [1, 2]), q2([1, 2], [2, 3])],
            vec![e(3, 1), q2([1, 3], [1, 2]), q2([1, 3], [2, 3])],
        ])
        .unwrap();
        assert_eq!(f.stage(1, 1).unwrap(), &x11);
        let x22 = Matrix::from_rows(vec![
            vec![e(1, 1), z(), z()],
            vec![e(2, 1), q2([1, 2], [1, 2]), z()],
            vec![e(3, 1), q2([1, 3], [1, 2]), quasidet(&x, 3, 3).unwrap()],
        ])
        .unwrap();
        assert_eq!(f.stage(2, 2).unwrap(), &x22);
    }

    #[test]
    fn singular_quasiminor_is_named() {
        let mut x = random(3, 7);
        x[(1, 2)] = Quaternion::zero();
        let err = upper_factorize(&x).unwrap_err();
        assert!(matches!(err, Error::NotGeneric(ref w) if w.contains("t_{1,2}")), "{err}");
    }
}
