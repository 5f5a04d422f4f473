//! Type A Weyl group combinatorics: permutations, reduced words, signed
//! representatives and double reduced words.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::matrix::{IndexSet, Matrix};
use crate::skewfield::Scalar;

/// A permutation of `[1, n]` stored by its images, `w(k) = images[k-1]`.
///
/// Composition follows function composition: `(u * v)(k) = u(v(k))`, which
/// matches multiplication of the permutation matrices `E_{w(k), k}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &w in &images {
            if w == 0 || w > n || seen[w] {
                return Err(Error::InvalidPermutation(format!("{images:?}")));
            }
            seen[w] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation { images: (1..=n).collect() }
    }

    /// Simple transposition `s_i = (i, i+1)`.
    pub fn simple(i: usize, n: usize) -> Self {
        assert!(i >= 1 && i < n, "s_{i} is not a simple transposition of S_{n}");
        let mut images: Vec<usize> = (1..=n).collect();
        images.swap(i - 1, i);
        Permutation { images }
    }

    /// Longest element `w₀ = (n, n-1, …, 1)`.
    pub fn longest(n: usize) -> Self {
        Permutation { images: (1..=n).rev().collect() }
    }

    /// `s_{i_1} s_{i_2} ⋯ s_{i_m}`.
    pub fn from_word(word: &[usize], n: usize) -> Result<Self> {
        let mut w = Permutation::identity(n);
        for &i in word {
            if i == 0 || i >= n {
                return Err(Error::InvalidWord(format!("letter {i} outside [1, {}]", n - 1)));
            }
            w = w.mul_simple(i);
        }
        Ok(w)
    }

    /// All of `S_n` in lexicographic order of one-line notation.
    pub fn all(n: usize) -> Vec<Permutation> {
        (1..=n)
            .permutations(n)
            .map(|images| Permutation { images })
            .collect()
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Self {
        let mut images: Vec<usize> = (1..=n).collect();
        images.shuffle(rng);
        Permutation { images }
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, k: usize) -> usize {
        self.images[k - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &w)| w == k + 1)
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.n()];
        for (k, &w) in self.images.iter().enumerate() {
            images[w - 1] = k + 1;
        }
        Permutation { images }
    }

    pub fn compose(&self, rhs: &Permutation) -> Self {
        assert_eq!(self.n(), rhs.n(), "composing permutations of different degree");
        Permutation {
            images: rhs.images.iter().map(|&k| self.apply(k)).collect(),
        }
    }

    /// `w · s_i`: swaps positions `i` and `i+1` of the one-line notation.
    pub fn mul_simple(&self, i: usize) -> Self {
        let mut images = self.images.clone();
        images.swap(i - 1, i);
        Permutation { images }
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        self.images
            .iter()
            .tuple_combinations()
            .filter(|(a, b)| a > b)
            .count()
    }

    /// `i` with `ℓ(w s_i) < ℓ(w)`.
    pub fn right_descents(&self) -> Vec<usize> {
        (1..self.n()).filter(|&i| self.apply(i) > self.apply(i + 1)).collect()
    }

    /// Reduced word built by repeatedly stripping the smallest right descent.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut w = self.clone();
        let mut word = Vec::with_capacity(self.length());
        while let Some(&i) = w.right_descents().first() {
            word.push(i);
            w = w.mul_simple(i);
        }
        word.reverse();
        word
    }

    /// Reduced word built from randomly chosen descents.
    pub fn random_reduced_word<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<usize> {
        let mut w = self.clone();
        let mut word = Vec::with_capacity(self.length());
        loop {
            let descents = w.right_descents();
            let Some(&i) = descents.choose(rng) else { break };
            word.push(i);
            w = w.mul_simple(i);
        }
        word.reverse();
        word
    }

    /// Every reduced word of `w`.
    pub fn reduced_words(&self) -> Vec<Vec<usize>> {
        if self.is_identity() {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for i in self.right_descents() {
            for mut word in self.mul_simple(i).reduced_words() {
                word.push(i);
                out.push(word);
            }
        }
        out.sort();
        out
    }

    /// `w[1, k] = {w(1), …, w(k)}`.
    pub fn image_of_prefix(&self, k: usize) -> IndexSet {
        IndexSet::from_unsorted(self.images[..k].iter().copied()).expect("permutation images")
    }

    /// Plain permutation matrix with ones at `(w(k), k)`.
    pub fn matrix<S: Scalar>(&self) -> Matrix<S> {
        let n = self.n();
        Matrix::from_fn(n, n, |i, j| if i == self.apply(j) { S::one() } else { S::zero() })
    }

    /// Signed representative `w̄`: the product of `s̄_i` along any reduced word.
    pub fn representative<S: Scalar>(&self) -> Matrix<S> {
        let n = self.n();
        let mut m = Matrix::identity(n);
        for i in self.reduced_word() {
            m = &m * &simple_representative(i, n);
        }
        m
    }
}

/// `s̄_i = φ_i [[0, -1], [1, 0]]`.
pub fn simple_representative<S: Scalar>(i: usize, n: usize) -> Matrix<S> {
    let mut m = Matrix::identity(n);
    m[(i, i)] = S::zero();
    m[(i + 1, i + 1)] = S::zero();
    m[(i, i + 1)] = -S::one();
    m[(i + 1, i)] = S::one();
    m
}

pub fn representative<S: Scalar>(w: &Permutation) -> Matrix<S> {
    w.representative()
}

/// `w₀^{(i,n)}`: reverses `[i, n]` and fixes `[1, i-1]`.
pub fn longest_in_range(i: usize, n: usize) -> Permutation {
    assert!(i >= 1 && i <= n);
    let images = (1..i).chain((i..=n).rev()).collect();
    Permutation { images }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.images.iter().join(","))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// One-line notation, `"2,3,1"` or `"[2,3,1]"`.
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('[').trim_end_matches(']');
        let images = body
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("permutation {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Permutation::from_images(images)
    }
}

/// A shuffle of a reduced word for `u` in the letters `-1, …, -(n-1)` with a
/// reduced word for `v` in the letters `1, …, n-1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DoubleWord {
    n: usize,
    letters: Vec<i32>,
}

/// The four partial products attached to position `k` of a double word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subwords {
    pub u_ge: Permutation,
    pub u_gt: Permutation,
    pub v_le: Permutation,
    pub v_lt: Permutation,
}

impl DoubleWord {
    /// Validates that both components are reduced.
    pub fn new(n: usize, letters: Vec<i32>) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidWord("n must be positive".into()));
        }
        for &l in &letters {
            if l == 0 || l.unsigned_abs() as usize >= n {
                return Err(Error::InvalidWord(format!(
                    "letter {l} outside ±[1, {}]",
                    n - 1
                )));
            }
        }
        let w = DoubleWord { n, letters };
        let (neg, pos) = (w.negative_part(), w.positive_part());
        if Permutation::from_word(&neg, n)?.length() != neg.len() {
            return Err(Error::InvalidWord(format!("negative letters {neg:?} are not reduced")));
        }
        if Permutation::from_word(&pos, n)?.length() != pos.len() {
            return Err(Error::InvalidWord(format!("positive letters {pos:?} are not reduced")));
        }
        Ok(w)
    }

    pub fn parse(n: usize, text: &str) -> Result<Self> {
        let letters = if text.trim().is_empty() {
            Vec::new()
        } else {
            text.split(',')
                .map(|t| {
                    t.trim()
                        .parse::<i32>()
                        .map_err(|_| Error::Parse(format!("word letter {t:?}")))
                })
                .collect::<Result<Vec<_>>>()?
        };
        DoubleWord::new(n, letters)
    }

    /// Interleaves `neg` (as negative letters) and `pos` following `mask`,
    /// where `true` takes the next negative letter.
    pub fn shuffle(n: usize, neg: &[usize], pos: &[usize], mask: &[bool]) -> Result<Self> {
        let (mut a, mut b) = (neg.iter(), pos.iter());
        let letters = mask
            .iter()
            .map(|&take_neg| {
                if take_neg {
                    a.next().map(|&i| -(i as i32))
                } else {
                    b.next().map(|&i| i as i32)
                }
            })
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::InvalidWord("shuffle mask longer than the words".into()))?;
        if a.next().is_some() || b.next().is_some() {
            return Err(Error::InvalidWord("shuffle mask shorter than the words".into()));
        }
        DoubleWord::new(n, letters)
    }

    /// Random double reduced word for `(u, v)`.
    pub fn random_for<R: Rng + ?Sized>(u: &Permutation, v: &Permutation, rng: &mut R) -> Self {
        let neg = u.random_reduced_word(rng);
        let pos = v.random_reduced_word(rng);
        let mut mask: Vec<bool> = std::iter::repeat_n(true, neg.len())
            .chain(std::iter::repeat_n(false, pos.len()))
            .collect();
        mask.shuffle(rng);
        DoubleWord::shuffle(u.n(), &neg, &pos, &mask).expect("shuffle of reduced words")
    }

    /// Up to `limit` distinct double reduced words for `(u, v)`, in a fixed
    /// order: all shuffles of the first reduced words, then further words.
    pub fn enumerate_for(u: &Permutation, v: &Permutation, limit: usize) -> Vec<Self> {
        let n = u.n();
        let (lu, lv) = (u.length(), v.length());
        let mut out = Vec::new();
        for neg in u.reduced_words() {
            for pos in v.reduced_words() {
                for negs in (0..lu + lv).combinations(lu) {
                    let mask: Vec<bool> = (0..lu + lv).map(|p| negs.contains(&p)).collect();
                    let w = DoubleWord::shuffle(n, &neg, &pos, &mask).expect("valid shuffle");
                    if !out.contains(&w) {
                        out.push(w);
                    }
                    if out.len() >= limit {
                        return out;
                    }
                }
            }
        }
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    fn negative_part(&self) -> Vec<usize> {
        self.letters
            .iter()
            .filter(|&&l| l < 0)
            .map(|l| l.unsigned_abs() as usize)
            .collect()
    }

    fn positive_part(&self) -> Vec<usize> {
        self.letters.iter().filter(|&&l| l > 0).map(|&l| l as usize).collect()
    }

    /// The permutation spelled by the negative letters.
    pub fn u(&self) -> Permutation {
        Permutation::from_word(&self.negative_part(), self.n).expect("validated")
    }

    /// The permutation spelled by the positive letters.
    pub fn v(&self) -> Permutation {
        Permutation::from_word(&self.positive_part(), self.n).expect("validated")
    }

    /// `u_{≥k} = s_{-i_m} ⋯ s_{-i_k}`, `u_{>k}`, `v_{≤k} = s_{i_1} ⋯ s_{i_k}`,
    /// `v_{<k}`, with `s_j = 1` for `j ≤ 0`.
    pub fn subword_perms(&self, k: usize) -> Subwords {
        let m = self.len();
        assert!(k >= 1 && k <= m, "position {k} outside [1, {m}]");
        let neg_rev = |from: usize| {
            let mut w = Permutation::identity(self.n);
            for l in (from..=m).rev() {
                let letter = self.letters[l - 1];
                if letter < 0 {
                    w = w.mul_simple(letter.unsigned_abs() as usize);
                }
            }
            w
        };
        let pos_prefix = |to: usize| {
            let mut w = Permutation::identity(self.n);
            for &letter in &self.letters[..to] {
                if letter > 0 {
                    w = w.mul_simple(letter as usize);
                }
            }
            w
        };
        Subwords {
            u_ge: neg_rev(k),
            u_gt: neg_rev(k + 1),
            v_le: pos_prefix(k),
            v_lt: pos_prefix(k - 1),
        }
    }
}

impl fmt::Display for DoubleWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letters.iter().join(","))
    }
}

impl fmt::Debug for DoubleWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DoubleWord(n={}, {})", self.n, self)
    }
}
