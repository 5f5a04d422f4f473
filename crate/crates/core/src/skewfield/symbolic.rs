//! Commutative rational functions over `Q` in named indeterminates.
//!
//! Used to check closed-form formulas symbolically: build a matrix out of
//! symbols, run a formula, compare with the expected expression. Fractions
//! are not reduced by a gcd; equality is decided by cross-multiplication,
//! and only cheap simplifications (monomial content, exact division) run
//! eagerly.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use super::{sample_int, Scalar};
use crate::error::{Error, Result};

fn names() -> &'static Mutex<Vec<String>> {
    static NAMES: OnceLock<Mutex<Vec<String>>> = OnceLock::new();
    NAMES.get_or_init(|| Mutex::new(Vec::new()))
}

fn intern(name: &str) -> usize {
    let mut table = names().lock().expect("symbol table poisoned");
    if let Some(pos) = table.iter().position(|n| n == name) {
        return pos;
    }
    table.push(name.to_string());
    table.len() - 1
}

fn var_name(id: usize) -> String {
    names().lock().expect("symbol table poisoned")[id].clone()
}

/// Exponent vector with trailing zeros trimmed, so that `Vec` ordering is
/// lexicographic order on monomials.
type Monomial = Vec<u32>;

fn mono_mul(a: &Monomial, b: &Monomial) -> Monomial {
    let mut out = vec![0; a.len().max(b.len())];
    for (i, e) in a.iter().enumerate() {
        out[i] += e;
    }
    for (i, e) in b.iter().enumerate() {
        out[i] += e;
    }
    out
}

fn mono_div(a: &Monomial, b: &Monomial) -> Option<Monomial> {
    if b.len() > a.len()
        && b[a.len()..].iter().any(|&e| e > 0) {
            return None;
        }
    let mut out = a.clone();
    for (i, e) in b.iter().enumerate() {
        if out[i] < *e {
            return None;
        }
        out[i] -= e;
    }
    while out.last() == Some(&0) {
        out.pop();
    }
    Some(out)
}

#[derive(Clone, PartialEq, Eq, Default)]
struct Poly(BTreeMap<Monomial, BigRational>);

impl Poly {
    fn constant(c: BigRational) -> Self {
        let mut m = BTreeMap::new();
        if !c.is_zero() {
            m.insert(Vec::new(), c);
        }
        Poly(m)
    }

    fn var(id: usize) -> Self {
        let mut mono = vec![0; id + 1];
        mono[id] = 1;
        Poly(BTreeMap::from([(mono, BigRational::one())]))
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn as_constant(&self) -> Option<BigRational> {
        match self.0.len() {
            0 => Some(BigRational::zero()),
            1 => self.0.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        let slot = self.0.entry(m.clone()).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.0.remove(&m);
        }
    }

    fn add(&self, o: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &o.0 {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    fn neg(&self) -> Poly {
        Poly(self.0.iter().map(|(m, c)| (m.clone(), -c)).collect())
    }

    fn mul(&self, o: &Poly) -> Poly {
        let mut out = Poly::default();
        for (ma, ca) in &self.0 {
            for (mb, cb) in &o.0 {
                out.add_term(mono_mul(ma, mb), ca * cb);
            }
        }
        out
    }

    fn scale(&self, c: &BigRational) -> Poly {
        Poly(self.0.iter().map(|(m, v)| (m.clone(), v * c)).collect())
    }

    fn leading(&self) -> Option<(&Monomial, &BigRational)> {
        self.0.iter().next_back()
    }

    /// `self / d` when the division is exact.
    fn exact_div(&self, d: &Poly) -> Option<Poly> {
        let (dm, dc) = d.leading()?;
        let mut rem = self.clone();
        let mut q = Poly::default();
        while let Some((rm, rc)) = rem.leading() {
            let m = mono_div(rm, dm)?;
            let c = rc / dc;
            let term = Poly(BTreeMap::from([(m.clone(), c.clone())]));
            rem = rem.add(&term.mul(d).neg());
            q.add_term(m, c);
        }
        Some(q)
    }

    /// Largest monomial dividing every term.
    fn monomial_content(&self) -> Monomial {
        let mut it = self.0.keys();
        let Some(first) = it.next() else { return Vec::new() };
        let mut g = first.clone();
        for m in it {
            g.truncate(m.len());
            for (i, e) in g.iter_mut().enumerate() {
                *e = (*e).min(m[i]);
            }
        }
        while g.last() == Some(&0) {
            g.pop();
        }
        g
    }

    fn div_monomial(&self, m: &Monomial) -> Poly {
        Poly(self.0.iter().map(|(k, c)| (mono_div(k, m).expect("content divides"), c.clone())).collect())
    }

    fn fmt_with(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        for (pos, (m, c)) in self.0.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if pos == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !a.is_one() || m.is_empty() {
                factors.push(if a.is_integer() { a.numer().to_string() } else { format!("{}/{}", a.numer(), a.denom()) });
            }
            for (id, &e) in m.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(var_name(id)),
                    _ => factors.push(format!("{}^{}", var_name(id), e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

/// A quotient of polynomials with rational coefficients.
#[derive(Clone)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    /// The indeterminate called `name`.
    pub fn var(name: &str) -> Self {
        RatFunc { num: Poly::var(intern(name)), den: Poly::constant(BigRational::one()) }
    }

    pub fn constant(c: BigRational) -> Self {
        RatFunc { num: Poly::constant(c), den: Poly::constant(BigRational::one()) }
    }

    /// Numerator and denominator term counts, a rough size measure.
    pub fn size(&self) -> (usize, usize) {
        (self.num.0.len(), self.den.0.len())
    }

    fn make(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return RatFunc::constant(BigRational::zero());
        }
        if let Some(c) = den.as_constant() {
            return RatFunc { num: num.scale(&c.recip()), den: Poly::constant(BigRational::one()) };
        }
        if let Some(q) = num.exact_div(&den) {
            return RatFunc { num: q, den: Poly::constant(BigRational::one()) };
        }
        let (num, den) = match den.exact_div(&num) {
            Some(q) => (Poly::constant(BigRational::one()), q),
            None => {
                let cn = num.monomial_content();
                let cd = den.monomial_content();
                let common: Monomial = cn.iter().zip(cd.iter()).map(|(a, b)| *a.min(b)).collect();
                (num.div_monomial(&common), den.div_monomial(&common))
            }
        };
        let lead = den.leading().map(|(_, c)| c.clone()).expect("nonzero denominator");
        let inv = lead.recip();
        RatFunc { num: num.scale(&inv), den: den.scale(&inv) }
    }
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

impl Eq for RatFunc {}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let one = self.den.as_constant().is_some_and(|c| c.is_one());
        let wrap = |p: &Poly| p.0.len() > 1;
        if one {
            return self.num.fmt_with(f);
        }
        if wrap(&self.num) {
            write!(f, "(")?;
            self.num.fmt_with(f)?;
            write!(f, ")")?;
        } else {
            self.num.fmt_with(f)?;
        }
        write!(f, "/")?;
        if wrap(&self.den) || self.den.0.keys().any(|m| m.iter().filter(|&&e| e > 0).count() > 1 || m.iter().any(|&e| e > 1)) {
            write!(f, "(")?;
            self.den.fmt_with(f)?;
            write!(f, ")")
        } else {
            self.den.fmt_with(f)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Accepts an integer, a fraction `p/q`, or an identifier, each optionally
/// negated.
impl FromStr for RatFunc {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let (neg, body) = match t.strip_prefix('-') {
            Some(rest) => (true, rest.trim()),
            None => (false, t),
        };
        let is_ident = body.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
            && body.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        let value = if is_ident {
            RatFunc::var(body)
        } else {
            let r: super::Rational = body
                .parse()
                .map_err(|_| Error::Parse(format!("not a symbol or rational: {s:?}")))?;
            RatFunc::constant(r.as_big_rational().clone())
        };
        Ok(if neg { -value } else { value })
    }
}

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: RatFunc) -> RatFunc {
        self + &rhs
    }
}

impl<'a> Add<&'a RatFunc> for RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &'a RatFunc) -> RatFunc {
        if self.den == rhs.den {
            return RatFunc::make(self.num.add(&rhs.num), self.den);
        }
        let num = self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den));
        RatFunc::make(num, self.den.mul(&rhs.den))
    }
}

impl Sub for RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl<'a> Sub<&'a RatFunc> for RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &'a RatFunc) -> RatFunc {
        self + &(-rhs.clone())
    }
}

impl Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: RatFunc) -> RatFunc {
        self * &rhs
    }
}

impl<'a> Mul<&'a RatFunc> for RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &'a RatFunc) -> RatFunc {
        if self.num.is_zero() || rhs.num.is_zero() {
            return RatFunc::zero();
        }
        RatFunc::make(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: self.num.neg(), den: self.den }
    }
}

impl Scalar for RatFunc {
    const COMMUTATIVE: bool = true;

    fn zero() -> Self {
        RatFunc::constant(BigRational::zero())
    }

    fn one() -> Self {
        RatFunc::constant(BigRational::one())
    }

    fn from_i64(v: i64) -> Self {
        RatFunc::constant(BigRational::from_integer(BigInt::from(v)))
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn inv(&self) -> Result<Self> {
        if self.num.is_zero() {
            return Err(Error::ZeroInverse);
        }
        Ok(RatFunc::make(self.den.clone(), self.num.clone()))
    }

    /// A nonzero integer constant.
    fn sample<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Self {
        loop {
            let v = sample_int(rng, bound.max(1));
            if v != 0 {
                return RatFunc::from_i64(v);
            }
        }
    }
}
