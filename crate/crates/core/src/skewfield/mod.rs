//! Division-ring scalars.
//!
//! Every algorithm in this crate is generic over [`Scalar`]. Two exact
//! instances ship: [`Rational`] (commutative, used as an oracle against
//! determinant formulas) and [`Quaternion`] over the rationals, the
//! noncommutative workhorse.

mod quaternion;
mod rational;
pub mod symbolic;

pub use quaternion::{quat_inv, quat_mul, Quaternion};
pub use rational::Rational;
pub use symbolic::RatFunc;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// An element of a skew field with exact arithmetic.
///
/// Multiplication is not assumed to commute; every algorithm keeps track of
/// which side a coefficient is applied on.
pub trait Scalar:
    Clone
    + PartialEq
    + Eq
    + fmt::Debug
    + fmt::Display
    + FromStr<Err = Error>
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    /// Whether multiplication commutes for this scalar type.
    const COMMUTATIVE: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// Two-sided inverse; `ZeroInverse` on zero.
    fn inv(&self) -> Result<Self>;

    /// A nonzero element with small integer coordinates in `[-bound, bound]`.
    fn sample<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Self;
}

/// Deterministic seeded generator used by every sampling harness.
pub type Sampler = ChaCha8Rng;

pub fn sampler(seed: u64) -> Sampler {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Deterministic generic quaternion for `(seed, bound)`: integer components
/// in `[-bound, bound]`, never zero.
pub fn sample_generic(seed: u64, bound: i64) -> Quaternion {
    assert!(bound >= 1, "bound must be at least 1");
    Quaternion::sample(&mut sampler(seed), bound)
}

pub(crate) fn sample_int<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> i64 {
    rng.gen_range(-bound..=bound)
}
