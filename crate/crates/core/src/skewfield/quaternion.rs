use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use rand::Rng;

use super::{sample_int, Rational, Scalar};
use crate::error::{Error, Result};

/// `a + b·i + c·j + d·k` with exact rational coordinates.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Quaternion {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub d: Rational,
}

impl Quaternion {
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational) -> Self {
        Quaternion { a, b, c, d }
    }

    pub fn from_ints(a: i64, b: i64, c: i64, d: i64) -> Self {
        Quaternion::new(a.into(), b.into(), c.into(), d.into())
    }

    pub fn real(a: Rational) -> Self {
        Quaternion::new(a, Rational::zero(), Rational::zero(), Rational::zero())
    }

    pub fn i() -> Self {
        Quaternion::from_ints(0, 1, 0, 0)
    }

    pub fn j() -> Self {
        Quaternion::from_ints(0, 0, 1, 0)
    }

    pub fn k() -> Self {
        Quaternion::from_ints(0, 0, 0, 1)
    }

    pub fn conj(&self) -> Self {
        Quaternion::new(self.a.clone(), -&self.b, -&self.c, -&self.d)
    }

    /// Squared norm `a² + b² + c² + d²`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a + &(&self.b * &self.b) + &(&self.c * &self.c) + &(&self.d * &self.d)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Quaternion::new(&self.a * r, &self.b * r, &self.c * r, &self.d * r)
    }

    pub fn is_real(&self) -> bool {
        self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    fn hamilton(x: &Quaternion, y: &Quaternion) -> Quaternion {
        let (a1, b1, c1, d1) = (&x.a, &x.b, &x.c, &x.d);
        let (a2, b2, c2, d2) = (&y.a, &y.b, &y.c, &y.d);
        Quaternion {
            a: a1 * a2 - &(b1 * b2) - &(c1 * c2) - &(d1 * d2),
            b: a1 * b2 + &(b1 * a2) + &(c1 * d2) - &(d1 * c2),
            c: a1 * c2 - &(b1 * d2) + &(c1 * a2) + &(d1 * b2),
            d: a1 * d2 + &(b1 * c2) - &(c1 * b2) + &(d1 * a2),
        }
    }
}

impl From<i64> for Quaternion {
    fn from(v: i64) -> Self {
        Quaternion::real(v.into())
    }
}

impl From<Rational> for Quaternion {
    fn from(v: Rational) -> Self {
        Quaternion::real(v)
    }
}

/// Hamilton product.
pub fn quat_mul(x: &Quaternion, y: &Quaternion) -> Quaternion {
    Quaternion::hamilton(x, y)
}

pub fn quat_inv(x: &Quaternion) -> Result<Quaternion> {
    x.inv()
}

impl Add for Quaternion {
    type Output = Quaternion;
    fn add(self, rhs: Quaternion) -> Quaternion {
        self + &rhs
    }
}

impl<'a> Add<&'a Quaternion> for Quaternion {
    type Output = Quaternion;
    fn add(self, rhs: &'a Quaternion) -> Quaternion {
        Quaternion {
            a: self.a + &rhs.a,
            b: self.b + &rhs.b,
            c: self.c + &rhs.c,
            d: self.d + &rhs.d,
        }
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    fn sub(self, rhs: Quaternion) -> Quaternion {
        self - &rhs
    }
}

impl<'a> Sub<&'a Quaternion> for Quaternion {
    type Output = Quaternion;
    fn sub(self, rhs: &'a Quaternion) -> Quaternion {
        Quaternion {
            a: self.a - &rhs.a,
            b: self.b - &rhs.b,
            c: self.c - &rhs.c,
            d: self.d - &rhs.d,
        }
    }
}

impl Mul for Quaternion {
    type Output = Quaternion;
    fn mul(self, rhs: Quaternion) -> Quaternion {
        Quaternion::hamilton(&self, &rhs)
    }
}

impl<'a> Mul<&'a Quaternion> for Quaternion {
    type Output = Quaternion;
    fn mul(self, rhs: &'a Quaternion) -> Quaternion {
        Quaternion::hamilton(&self, rhs)
    }
}

impl<'b> Mul<&'b Quaternion> for &Quaternion {
    type Output = Quaternion;
    fn mul(self, rhs: &'b Quaternion) -> Quaternion {
        Quaternion::hamilton(self, rhs)
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        Quaternion::new(-self.a, -self.b, -self.c, -self.d)
    }
}

impl Scalar for Quaternion {
    const COMMUTATIVE: bool = false;

    fn zero() -> Self {
        Quaternion::from_ints(0, 0, 0, 0)
    }

    fn one() -> Self {
        Quaternion::from_ints(1, 0, 0, 0)
    }

    fn from_i64(v: i64) -> Self {
        Quaternion::from(v)
    }

    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.is_real()
    }

    fn is_one(&self) -> bool {
        self.a.is_one() && self.is_real()
    }

    fn inv(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::ZeroInverse);
        }
        Ok(self.conj().scale(&n.inv()?))
    }

    fn sample<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Self {
        let bound = bound.max(1);
        loop {
            let q = Quaternion::from_ints(
                sample_int(rng, bound),
                sample_int(rng, bound),
                sample_int(rng, bound),
                sample_int(rng, bound),
            );
            if !q.is_zero() {
                return q;
            }
        }
    }
}

/// Canonical text form: nonzero terms of `a+b*i+c*j+d*k` in that order,
/// rationals as `p/q`, unit coefficients elided (`-i`, `1/2*j`), zero as `0`.
impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (coef, unit) in [(&self.a, ""), (&self.b, "i"), (&self.c, "j"), (&self.d, "k")] {
            if coef.is_zero() {
                continue;
            }
            let neg = coef.is_negative();
            if neg {
                f.write_str("-")?;
            } else if !first {
                f.write_str("+")?;
            }
            let mag = coef.abs();
            if unit.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(unit)?;
            } else {
                write!(f, "{mag}*{unit}")?;
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Quaternion {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if text.is_empty() {
            return Err(Error::Parse("empty quaternion".into()));
        }
        // Split into signed terms; a sign directly after '/', '*' or another
        // sign is not a term boundary.
        let mut terms = Vec::new();
        let mut start = 0;
        let bytes = text.as_bytes();
        for (pos, &b) in bytes.iter().enumerate() {
            if (b == b'+' || b == b'-') && pos > 0 && !matches!(bytes[pos - 1], b'/' | b'*' | b'+' | b'-') {
                terms.push(&text[start..pos]);
                start = pos;
            }
        }
        terms.push(&text[start..]);

        let mut q = Quaternion::zero();
        for term in terms {
            let (neg, body) = match term.as_bytes().first() {
                Some(b'-') => (true, &term[1..]),
                Some(b'+') => (false, &term[1..]),
                _ => (false, term),
            };
            if body.is_empty() {
                return Err(Error::Parse(format!("dangling sign in {s:?}")));
            }
            let (coef, unit) = match body.rsplit_once('*') {
                Some((c, u)) => (c.parse::<Rational>()?, u),
                None => match body {
                    "i" | "j" | "k" => (Rational::one(), body),
                    _ => (body.parse::<Rational>()?, ""),
                },
            };
            let coef = if neg { -coef } else { coef };
            let slot = match unit {
                "" => &mut q.a,
                "i" => &mut q.b,
                "j" => &mut q.c,
                "k" => &mut q.d,
                other => return Err(Error::Parse(format!("unknown unit {other:?} in {s:?}"))),
            };
            *slot = slot.clone() + coef;
        }
        Ok(q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::skewfield::{sample_generic, sampler};
    use proptest::prelude::*;

    fn q(s: &str) -> Quaternion {
        s.parse().unwrap()
    }

    #[test]
    fn hamilton_relations() {
        let (i, j, k) = (Quaternion::i(), Quaternion::j(), Quaternion::k());
        let m1 = Quaternion::from(-1);
        assert_eq!(quat_mul(&i, &j), k);
        assert_eq!(&j * &i, -k.clone());
        assert_eq!(&i * &i, m1);
        assert_eq!(&j * &j, m1);
        assert_eq!(&k * &k, m1);
        assert_eq!(&(&i * &j) * &k, m1);
        let x = q("3-2*i+1/2*j+k");
        assert_eq!(&Quaternion::one() * &x, x);
        assert_eq!(&q("1+i") * &q("1-i"), Quaternion::from(2));
    }

    #[test]
    fn inverses() {
        assert_eq!(quat_inv(&Quaternion::one()).unwrap(), Quaternion::one());
        assert_eq!(quat_inv(&Quaternion::i()).unwrap(), q("-i"));
        assert_eq!(quat_inv(&q("1+i")).unwrap(), q("1/2-1/2*i"));
        assert_eq!(quat_inv(&Quaternion::zero()), Err(Error::ZeroInverse));
        let x = q("2-3*i+j-5/7*k");
        let y = x.inv().unwrap();
        assert!((&x * &y).is_one());
        assert!((&y * &x).is_one());
    }

    #[test]
    fn text_form() {
        assert_eq!(q("0").to_string(), "0");
        assert_eq!(q("1").to_string(), "1");
        assert_eq!(q("1+0*i+0*j+0*k").to_string(), "1");
        assert_eq!(q("-1/2*j+3").to_string(), "3-1/2*j");
        assert_eq!(q("1*i").to_string(), "i");
        assert_eq!(q("2+-3*i").to_string(), "2-3*i");
        assert_eq!(q(" 1 + i - j + 4/6*k ").to_string(), "1+i-j+2/3*k");
        for bad in ["", "+", "1+", "2*x", "i*2", "1/0", "1//2"] {
            assert!(bad.parse::<Quaternion>().is_err(), "{bad:?}");
        }
    }

    #[test]
    fn sample_contract() {
        let a = sample_generic(5, 1);
        assert_eq!(a, sample_generic(5, 1));
        for seed in 0..200 {
            let x = sample_generic(seed, 1);
            assert!(!x.is_zero());
            for c in [&x.a, &x.b, &x.c, &x.d] {
                assert!(c.abs() <= Rational::from(1));
            }
            let y = sample_generic(seed, 3);
            for c in [&y.a, &y.b, &y.c, &y.d] {
                assert!(c.abs() <= Rational::from(3));
            }
        }
    }

    #[test]
    fn inverse_of_product_reverses() {
        let mut rng = sampler(3);
        for _ in 0..1000 {
            let x = Quaternion::sample(&mut rng, 4);
            let y = Quaternion::sample(&mut rng, 4);
            let lhs = (&x * &y).inv().unwrap();
            let rhs = &y.inv().unwrap() * &x.inv().unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn noncommutativity_witness() {
        let mut rng = sampler(9);
        let found = (0..100).any(|_| {
            let x = Quaternion::sample(&mut rng, 2);
            let y = Quaternion::sample(&mut rng, 2);
            &x * &y != &y * &x
        });
        assert!(found);
    }

    fn arb_rational() -> impl Strategy<Value = Rational> {
        (-1000i64..1000, 1i64..60).prop_map(|(p, q)| Rational::new(p, q).unwrap())
    }

    proptest! {
        #[test]
        fn text_round_trip(a in arb_rational(), b in arb_rational(), c in arb_rational(), d in arb_rational()) {
            let x = Quaternion::new(a, b, c, d);
            let printed = x.to_string();
            let back: Quaternion = printed.parse().unwrap();
            prop_assert_eq!(&back, &x);
            prop_assert_eq!(back.to_string(), printed);
        }

        #[test]
        fn ring_axioms(x in arb_rational(), y in arb_rational(), z in arb_rational(), w in arb_rational()) {
            let p = Quaternion::new(x.clone(), y.clone(), z.clone(), w.clone());
            let q = Quaternion::new(w, x, y, z);
            let r = Quaternion::new(Rational::from(2), Rational::from(-1), Rational::from(3), Rational::from(1));
            prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
            prop_assert_eq!(&p * &(q.clone() + &r), &p * &q + &(&p * &r));
            if !p.is_zero() {
                prop_assert!((&p * &p.inv().unwrap()).is_one());
            }
        }
    }
}
