use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use super::{sample_int, Scalar};
use crate::error::{Error, Result};

/// Exact rational number, always in lowest terms with a positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self> {
        let denom = denom.into();
        if denom.is_zero() {
            return Err(Error::ZeroInverse);
        }
        Ok(Rational(BigRational::new(numer.into(), denom)))
    }

    pub fn from_integer(v: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(v.into()))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn as_big_rational(&self) -> &BigRational {
        &self.0
    }
}

impl From<i64> for Rational {
    fn from(v: i64) -> Self {
        Rational::from_integer(v)
    }
}

impl From<BigRational> for Rational {
    fn from(v: BigRational) -> Self {
        Rational(v)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("not a rational: {s:?}"));
        let int = |t: &str| -> Result<BigInt> {
            let t = t.trim();
            let digits = t.strip_prefix(['-', '+']).unwrap_or(t);
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            t.parse::<BigInt>().map_err(|_| bad())
        };
        match s.split_once('/') {
            None => Ok(Rational::from_integer(int(s)?)),
            Some((p, q)) => {
                let q = int(q)?;
                if q.is_negative() || q.is_zero() {
                    return Err(bad());
                }
                Rational::new(int(p)?, q)
            }
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($trait::$method(self.0, rhs.0))
            }
        }
        impl<'a> $trait<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational($trait::$method(self.0, &rhs.0))
            }
        }
        impl<'a, 'b> $trait<&'b Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'b Rational) -> Rational {
                Rational($trait::$method(&self.0, &rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl Scalar for Rational {
    const COMMUTATIVE: bool = true;

    fn zero() -> Self {
        Rational(BigRational::zero())
    }

    fn one() -> Self {
        Rational(BigRational::one())
    }

    fn from_i64(v: i64) -> Self {
        Rational::from_integer(v)
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn is_one(&self) -> bool {
        self.0.is_one()
    }

    fn inv(&self) -> Result<Self> {
        if self.0.is_zero() {
            Err(Error::ZeroInverse)
        } else {
            Ok(Rational(self.0.recip()))
        }
    }

    fn sample<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Self {
        loop {
            let v = sample_int(rng, bound.max(1));
            if v != 0 {
                return Rational::from_integer(v);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::skewfield::sampler;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn normalizes_eagerly() {
        let r = Rational::new(6, -4).unwrap();
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
        assert_eq!(r.to_string(), "-3/2");
    }

    #[test]
    fn parse_print() {
        for s in ["0", "7", "-7", "1/2", "-13/6"] {
            assert_eq!(q(s).to_string(), s);
        }
        assert_eq!(q("4/6").to_string(), "2/3");
        assert!("1/0".parse::<Rational>().is_err());
        assert!("1/-2".parse::<Rational>().is_err());
        assert!("x".parse::<Rational>().is_err());
        assert!("".parse::<Rational>().is_err());
    }

    #[test]
    fn zero_has_no_inverse() {
        assert_eq!(Rational::zero().inv(), Err(Error::ZeroInverse));
        assert_eq!(q("-2/3").inv().unwrap(), q("-3/2"));
    }

    // Cross-multiplication against raw big integers, independent of the
    // normalizing representation.
    #[test]
    fn matches_cross_multiplication() {
        let mut rng = sampler(11);
        let frac = |rng: &mut crate::skewfield::Sampler| {
            let p: i64 = rng.gen_range(-50..=50);
            let q: i64 = rng.gen_range(1..=50);
            (BigInt::from(p), BigInt::from(q))
        };
        for _ in 0..1000 {
            let (a, b) = frac(&mut rng);
            let (c, d) = frac(&mut rng);
            let (e, f) = frac(&mut rng);
            let x = Rational::new(a.clone(), b.clone()).unwrap();
            let y = Rational::new(c.clone(), d.clone()).unwrap();
            let z = Rational::new(e.clone(), f.clone()).unwrap();
            // (x + y) * z = ((a d + c b) e) / (b d f)
            let lhs = (x.clone() + &y) * &z;
            let num = (&a * &d + &c * &b) * &e;
            let den = &b * &d * &f;
            assert_eq!(lhs.numer() * &den, &num * lhs.denom());
            // x - y * z
            let lhs = x - &(y * &z);
            let num = &a * &d * &f - &c * &e * &b;
            let den = &b * &d * &f;
            assert_eq!(lhs.numer() * &den, &num * lhs.denom());
            assert!(lhs.denom() > &BigInt::from(0));
        }
    }
}
