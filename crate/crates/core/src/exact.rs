//! Exact integers and rationals, gcd, modular inverse and the sawtooth
//! function `((x))`.
//!
//! `Int` is an arbitrary-precision integer. The number-theoretic kernels are
//! written once over [`Word`] and instantiated either with `i128` (when every
//! intermediate provably fits) or with `Int`; callers only ever see `Int` and
//! [`Rat`].

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Int = BigInt;

/// Magnitudes below this bound take the `i128` fast path. With `|x| < 2^40`
/// every cubic expression in the kernels stays below `2^127`.
const SMALL_LIMIT: i128 = 1 << 40;

/// Integer carrier for the generic kernels.
pub(crate) trait Word: Integer + Signed + Clone + From<i64> + Into<BigInt> {}

impl Word for i64 {}
impl Word for i128 {}
impl Word for BigInt {}

pub(crate) fn small(x: &Int) -> Option<i128> {
    x.to_i128().filter(|v| v.abs() < SMALL_LIMIT)
}

#[inline]
pub(crate) fn w<T: Word>(v: i64) -> T {
    T::from(v)
}

/// Exact rational in lowest terms with a positive denominator.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rat(BigRational);

impl Rat {
    /// Panics if `den` is zero.
    pub fn new(num: Int, den: Int) -> Self {
        Rat(BigRational::new(num, den))
    }

    pub fn zero() -> Self {
        Rat(BigRational::zero())
    }

    pub fn from_int(n: Int) -> Self {
        Rat(BigRational::from_integer(n))
    }

    /// Build from a fraction whose gcd is already known to be one and whose
    /// denominator is positive. Skips the normalizing gcd.
    pub(crate) fn from_reduced(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Self {
        let (num, den) = (num.into(), den.into());
        debug_assert!(den.is_positive());
        debug_assert!(num.gcd(&den).is_one());
        Rat(BigRational::new_raw(num, den))
    }

    /// Reduce `num/den` over a [`Word`] and convert.
    pub(crate) fn from_word<T: Word>(num: T, den: T) -> Self {
        let g = num.gcd(&den);
        let (mut num, mut den) = (num / g.clone(), den / g);
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        Rat::from_reduced(num, den)
    }

    pub fn numer(&self) -> &Int {
        self.0.numer()
    }

    pub fn denom(&self) -> &Int {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal {0:?}")]
pub struct ParseRatError(String);

impl FromStr for Rat {
    type Err = ParseRatError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let bad = || ParseRatError(s.to_owned());
        match s.split_once('/') {
            None => Ok(Rat::from_int(s.parse().map_err(|_| bad())?)),
            Some((n, d)) => {
                let n: Int = n.parse().map_err(|_| bad())?;
                let d: Int = d.parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                Ok(Rat::new(n, d))
            }
        }
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl Add for Rat {
    type Output = Rat;
    fn add(self, rhs: Rat) -> Rat {
        Rat(self.0 + rhs.0)
    }
}

impl Sub for Rat {
    type Output = Rat;
    fn sub(self, rhs: Rat) -> Rat {
        Rat(self.0 - rhs.0)
    }
}

impl Mul for Rat {
    type Output = Rat;
    fn mul(self, rhs: Rat) -> Rat {
        Rat(self.0 * rhs.0)
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl Sum for Rat {
    fn sum<I: Iterator<Item = Rat>>(iter: I) -> Rat {
        iter.fold(Rat::zero(), Add::add)
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Rat {
        Rat::from_int(n.into())
    }
}

/// Nonnegative greatest common divisor; `gcd(0, 0) = 0`.
pub fn gcd(x: &Int, y: &Int) -> Int {
    x.gcd(y)
}

pub(crate) fn coprime_or_err(x: &Int, y: &Int) -> Result<()> {
    let g = gcd(x, y);
    if g.is_one() {
        Ok(())
    } else {
        Err(Error::NotCoprime {
            x: x.clone(),
            y: y.clone(),
            gcd: g,
        })
    }
}

/// Inverse of `b` modulo `a` for `0 <= b < a`, `gcd(a, b) = 1`.
pub(crate) fn inverse_in<T: Word>(b: T, a: T) -> T {
    // Invariant: old_s * b == old_r (mod a).
    let (mut old_r, mut r) = (b, a.clone());
    let (mut old_s, mut s) = (T::one(), T::zero());
    while !r.is_zero() {
        let q = old_r.div_floor(&r);
        let next_r = old_r - q.clone() * r.clone();
        old_r = std::mem::replace(&mut r, next_r);
        let next_s = old_s - q * s.clone();
        old_s = std::mem::replace(&mut s, next_s);
    }
    debug_assert!(old_r.is_one() || a.is_one());
    old_s.mod_floor(&a)
}

/// `b'` with `0 <= b' < a` and `b * b' = 1 (mod a)`. Returns 0 when `a = 1`.
pub fn mod_inverse(b: &Int, a: &Int) -> Result<Int> {
    if *a < Int::one() {
        return Err(Error::OutOfRange {
            name: "modulus",
            min: Int::one(),
            value: a.clone(),
        });
    }
    coprime_or_err(b, a)?;
    if a.is_one() {
        return Ok(Int::zero());
    }
    if let (Some(bs), Some(as_)) = (b.to_i128(), small(a)) {
        return Ok(inverse_in(bs.rem_euclid(as_), as_).into());
    }
    Ok(inverse_in(b.mod_floor(a), a.clone()))
}

/// `2q * ((p/q))`, i.e. `2 (p mod q) - q`, or 0 when `q | p`.
#[inline]
pub(crate) fn doubled_sawtooth<T: Word>(p: &T, q: &T) -> T {
    let r = p.mod_floor(q);
    if r.is_zero() {
        r
    } else {
        r.clone() + r - q.clone()
    }
}

/// The sawtooth `((p/q))`: `p/q - floor(p/q) - 1/2`, and 0 when `q | p`.
///
/// Panics if `q < 1`.
pub fn sawtooth(p: &Int, q: &Int) -> Rat {
    assert!(q.is_positive(), "sawtooth requires a positive denominator");
    Rat::new(doubled_sawtooth(p, q), q * 2)
}
