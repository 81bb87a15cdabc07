//! Dedekind sums `s(a;b)` and Dedekind–Rademacher sums `D(a;b,c)`.
//!
//! Here `a` is always the modulus:
//!
//! ```text
//! s(a;b)   = sum_{k=1}^{a-1} ((k/a)) ((bk/a))
//! D(a;b,c) = (1/a) sum_{k=1}^{a-1} cot(pi bk/a) cot(pi ck/a)
//!          = 4 sum_{k=1}^{a-1} ((bk/a)) ((ck/a))
//! ```
//!
//! Exact values come from the sawtooth form. The cotangent form is kept as a
//! floating-point cross-check only.

use std::f64::consts::PI;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{coprime_or_err, gcd, inverse_in, small, w, Int, Rat, Word};

/// Largest modulus accepted by [`rademacher_sum_float`].
pub const FLOAT_MODULUS_LIMIT: u64 = 1_000_000;

/// Moduli below this bound use `i64` in the naive loops; the accumulated
/// sum is bounded by `a^3`.
const NAIVE_I64_LIMIT: i128 = 1 << 20;

fn check_modulus(a: &Int) -> Result<()> {
    if a.is_positive() {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            name: "modulus",
            min: Int::one(),
            value: a.clone(),
        })
    }
}

/// `sum_{k=1}^{a-1} (2 (m1 k mod a) - a)(2 (m2 k mod a) - a)` for multipliers
/// already reduced into `[1, a)` and coprime to `a`. This is `4a^2` times the
/// sawtooth product sum.
fn doubled_product_sum<T: Word>(a: &T, m1: &T, m2: &T) -> T {
    let mut acc = T::zero();
    let (mut r1, mut r2) = (m1.clone(), m2.clone());
    let mut k = T::one();
    while k < *a {
        debug_assert!(!r1.is_zero() && !r2.is_zero());
        let u = r1.clone() + r1.clone() - a.clone();
        let v = r2.clone() + r2.clone() - a.clone();
        acc = acc + u * v;
        r1 = r1 + m1.clone();
        if r1 >= *a {
            r1 = r1 - a.clone();
        }
        r2 = r2 + m2.clone();
        if r2 >= *a {
            r2 = r2 - a.clone();
        }
        k = k + T::one();
    }
    acc
}

/// Runs `doubled_product_sum` in the narrowest integer type that cannot
/// overflow and returns `sum / (4a^2) * scale`.
fn naive_sum(a: &Int, m1: &Int, m2: &Int, scale: i64) -> Rat {
    let m1 = m1.mod_floor(a);
    let m2 = m2.mod_floor(a);
    if a.is_one() {
        return Rat::zero();
    }
    match (small(a), small(&m1), small(&m2)) {
        (Some(av), Some(x), Some(y)) if av < NAIVE_I64_LIMIT => {
            let (av, x, y) = (av as i64, x as i64, y as i64);
            Rat::from_word(doubled_product_sum(&av, &x, &y) * scale, 4 * av * av)
        }
        (Some(av), Some(x), Some(y)) => Rat::from_word(
            doubled_product_sum(&av, &x, &y) * scale as i128,
            4 * av * av,
        ),
        _ => Rat::new(doubled_product_sum(a, &m1, &m2) * scale, a * a * 4),
    }
}

/// Dedekind sum `s(a;b)` by direct summation over `k = 1..a-1`. O(a).
pub fn dedekind_sum(a: &Int, b: &Int) -> Result<Rat> {
    check_modulus(a)?;
    coprime_or_err(a, b)?;
    Ok(naive_sum(a, &Int::one(), b, 1))
}

/// `12 a s(a;b)` for `0 <= b < a`, `gcd(a, b) = 1`.
///
/// Walks the Euclidean chain `(a, b) -> (b, a mod b) -> ... -> (1, 0)` and
/// back-substitutes two-term reciprocity, which in scaled form reads
/// `b T(a,b) = a^2 + b^2 + 1 - 3ab - a T(b, a mod b)`. Every division is exact.
pub(crate) fn scaled_dedekind<T: Word>(a: T, b: T) -> T {
    let mut chain = Vec::new();
    let (mut x, mut y) = (a, b);
    while !x.is_one() {
        debug_assert!(!y.is_zero());
        let r = x.mod_floor(&y);
        chain.push((x, y.clone()));
        x = y;
        y = r;
    }
    chain.into_iter().rev().fold(T::zero(), |t, (x, y)| {
        let num = x.clone() * x.clone() + y.clone() * y.clone() + T::one()
            - w::<T>(3) * x.clone() * y.clone()
            - x * t;
        debug_assert!(num.is_multiple_of(&y));
        num / y
    })
}

/// Dedekind sum `s(a;b)` in O(log a) steps via two-term reciprocity.
pub fn dedekind_sum_fast(a: &Int, b: &Int) -> Result<Rat> {
    check_modulus(a)?;
    coprime_or_err(a, b)?;
    if let (Some(av), Some(bv)) = (small(a), b.to_i128()) {
        let t = scaled_dedekind(av, bv.rem_euclid(av));
        return Ok(Rat::from_word(t, 12 * av));
    }
    let t = scaled_dedekind(a.clone(), b.mod_floor(a));
    Ok(Rat::new(t, a * 12))
}

fn check_rademacher_args(a: &Int, b: &Int, c: &Int) -> Result<()> {
    check_modulus(a)?;
    coprime_or_err(a, b)?;
    coprime_or_err(a, c)
}

/// `3a D(a;b,c)` via `D(a;b,c) = 4 s(a; b'c mod a)` with `b b' = 1 (mod a)`.
fn scaled_rademacher<T: Word>(a: T, b: T, c: T) -> T {
    if a.is_one() {
        return T::zero();
    }
    let b_inv = inverse_in(b.mod_floor(&a), a.clone());
    let m = (b_inv * c.mod_floor(&a)).mod_floor(&a);
    scaled_dedekind(a, m)
}

/// Dedekind–Rademacher sum `D(a;b,c)`, reduced to a single Dedekind sum
/// through the inverse of `b` modulo `a`.
pub fn rademacher_sum(a: &Int, b: &Int, c: &Int) -> Result<Rat> {
    check_rademacher_args(a, b, c)?;
    if let (Some(av), Some(bv), Some(cv)) = (small(a), b.to_i128(), c.to_i128()) {
        let (bv, cv) = (bv.rem_euclid(av), cv.rem_euclid(av));
        return Ok(Rat::from_word(scaled_rademacher(av, bv, cv), 3 * av));
    }
    let t = scaled_rademacher(a.clone(), b.clone(), c.clone());
    Ok(Rat::new(t, a * 3))
}

/// `D(a;b,c)` as `4 sum ((bk/a))((ck/a))` summed directly. O(a).
pub fn rademacher_sum_naive(a: &Int, b: &Int, c: &Int) -> Result<Rat> {
    check_rademacher_args(a, b, c)?;
    Ok(naive_sum(a, b, c, 4))
}

/// Cotangents `cot(pi j / a)` for one modulus, shared across many `(b, c)`.
#[derive(Debug, Clone)]
pub struct CotangentTable {
    modulus: usize,
    cot: Vec<f64>,
}

impl CotangentTable {
    pub fn new(modulus: usize) -> Self {
        assert!(modulus >= 1);
        let step = PI / modulus as f64;
        let cot = (0..modulus)
            .map(|j| if j == 0 { f64::NAN } else { 1.0 / (step * j as f64).tan() })
            .collect();
        CotangentTable { modulus, cot }
    }

    pub fn modulus(&self) -> usize {
        self.modulus
    }

    /// `(1/a) sum_{k=1}^{a-1} cot(pi bk/a) cot(pi ck/a)` for `b`, `c` coprime
    /// to the modulus. `cot` has period `pi`, so `bk` is looked up mod `a`.
    pub fn rademacher_sum(&self, b: u64, c: u64) -> f64 {
        let a = self.modulus;
        let (b, c) = ((b % a as u64) as usize, (c % a as u64) as usize);
        let (mut rb, mut rc) = (b, c);
        let mut acc = 0.0;
        for _ in 1..a {
            acc += self.cot[rb] * self.cot[rc];
            rb += b;
            if rb >= a {
                rb -= a;
            }
            rc += c;
            if rc >= a {
                rc -= a;
            }
        }
        acc / a as f64
    }
}

/// Floating-point evaluation of the literal cotangent sum `D(a;b,c)`.
pub fn rademacher_sum_float(a: &Int, b: &Int, c: &Int) -> Result<f64> {
    check_rademacher_args(a, b, c)?;
    let modulus = a
        .to_u64()
        .filter(|&v| v <= FLOAT_MODULUS_LIMIT)
        .ok_or_else(|| Error::FloatLimit {
            value: a.clone(),
            limit: FLOAT_MODULUS_LIMIT,
        })?;
    let rb = b.mod_floor(a).to_u64().expect("residue below modulus");
    let rc = c.mod_floor(a).to_u64().expect("residue below modulus");
    Ok(CotangentTable::new(modulus as usize).rademacher_sum(rb, rc))
}

/// `b^2 + 1 = 0 (mod a)`. Equivalent to `s(a;b) = 0`.
pub fn s_zero_condition(a: &Int, b: &Int) -> Result<bool> {
    check_modulus(a)?;
    coprime_or_err(a, b)?;
    Ok((b * b + 1u32).mod_floor(a).is_zero())
}

/// `b^2 + c^2 = 0 (mod a)`. Equivalent to `D(a;b,c) = 0`.
pub fn d_zero_condition(a: &Int, b: &Int, c: &Int) -> Result<bool> {
    check_rademacher_args(a, b, c)?;
    Ok((b * b + c * c).mod_floor(a).is_zero())
}

/// `D(a;b,c) + D(b;c,a) + D(c;a,b) - ((a^2+b^2+c^2)/(3abc) - 1)`, which the
/// reciprocity law says is identically zero.
pub fn reciprocity_defect(a: &Int, b: &Int, c: &Int) -> Result<Rat> {
    for v in [a, b, c] {
        if !v.is_positive() {
            return Err(Error::OutOfRange {
                name: "argument",
                min: Int::one(),
                value: v.clone(),
            });
        }
    }
    for (x, y) in [(a, b), (b, c), (c, a)] {
        let g = gcd(x, y);
        if !g.is_one() {
            return Err(Error::NotPairwiseCoprime {
                triple: format!("[{a}, {b}, {c}]"),
                x: x.clone(),
                y: y.clone(),
                gcd: g,
            });
        }
    }
    let lhs = rademacher_sum(a, b, c)? + rademacher_sum(b, c, a)? + rademacher_sum(c, a, b)?;
    let abc = a * b * c;
    let rhs = Rat::new(a * a + b * b + c * c, abc * 3) - Rat::from(1);
    Ok(lhs - rhs)
}
