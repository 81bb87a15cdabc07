//! Sparse integer polynomials in the variables `a`, `b`, `c`.
//!
//! Grammar accepted by [`parse`]:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := ['-'] atom ['^' nat]
//! atom   := nat | 'a' | 'b' | 'c' | '(' expr ')'
//! ```
//!
//! Whitespace may separate tokens. `-a^2` reads as `-(a^2)`. Juxtaposition
//! such as `2a` is rejected.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Pow, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::Int;
use crate::markov::Triple;

/// Exponents of `a`, `b`, `c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub [u32; 3]);

impl Monomial {
    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    fn mul(self, other: Monomial) -> Monomial {
        let [x, y, z] = self.0;
        let [u, v, w] = other.0;
        Monomial([x + u, y + v, z + w])
    }
}

/// Graded lexicographic: total degree first, then exponents of `a`, `b`, `c`.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Int>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn constant(n: impl Into<Int>) -> Self {
        let mut p = Polynomial::zero();
        p.add_term(Monomial::default(), n.into());
        p
    }

    /// `index` 0, 1, 2 selects `a`, `b`, `c`.
    pub fn var(index: usize) -> Self {
        let mut e = [0; 3];
        e[index] = 1;
        let mut p = Polynomial::zero();
        p.add_term(Monomial(e), Int::one());
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Int)>) -> Self {
        let mut p = Polynomial::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, coeff: Int) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_insert_with(Int::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    /// Terms in ascending graded-lex order; no coefficient is zero.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Int)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<u64> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn pow(&self, exp: u32) -> Polynomial {
        let mut result = Polynomial::constant(1);
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn evaluate(&self, t: &Triple) -> Int {
        self.evaluate_at([&t.a, &t.b, &t.c])
    }

    pub fn evaluate_at(&self, point: [&Int; 3]) -> Int {
        self.terms
            .iter()
            .map(|(m, coeff)| {
                m.0.iter()
                    .zip(point)
                    .filter(|(&e, _)| e > 0)
                    .fold(coeff.clone(), |acc, (&e, x)| acc * Pow::pow(x, e))
            })
            .sum()
    }

    pub fn subtract_const(&self, n: &Int) -> Polynomial {
        let mut p = self.clone();
        p.add_term(Monomial::default(), -n);
        p
    }

    pub fn is_nonneg_coeffs(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// The value of a constant polynomial (0 for the zero polynomial).
    pub fn is_const(&self) -> Option<Int> {
        match self.terms.len() {
            0 => Some(Int::zero()),
            1 => self.terms.get(&Monomial::default()).cloned(),
            _ => None,
        }
    }

    /// `f(ka, kb, kc)`: each coefficient times `k^degree`.
    pub fn scale_vars(&self, k: &Int) -> Polynomial {
        Polynomial::from_terms(
            self.terms
                .iter()
                .map(|(m, c)| (*m, c * Pow::pow(k, m.degree()))),
        )
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, coeff)) in self.terms.iter().rev().enumerate() {
            let neg = coeff.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = coeff.abs();
            let mut factors = Vec::new();
            if !mag.is_one() || m.degree() == 0 {
                factors.push(mag.to_string());
            }
            for (name, &e) in ["a", "b", "c"].iter().zip(&m.0) {
                match e {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut p = self.clone();
        for (m, c) in &rhs.terms {
            p.add_term(*m, c.clone());
        }
        p
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut p = self.clone();
        for (m, c) in &rhs.terms {
            p.add_term(*m, -c);
        }
        p
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut p = Polynomial::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                p.add_term(m1.mul(*m2), c1 * c2);
            }
        }
        p
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl FromStr for Polynomial {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse(s)
    }
}

pub fn parse(text: &str) -> Result<Polynomial> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let poly = p.expr()?;
    match p.peek() {
        None => Ok(poly),
        Some(b')') => Err(p.syntax("unmatched ')'")),
        Some(_) => Err(p.syntax("expected an operator or end of input")),
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    /// Next non-whitespace byte, leaving `pos` on it.
    fn peek(&mut self) -> Option<u8> {
        while let Some(c) = self.src.get(self.pos) {
            if c.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                return Some(*c);
            }
        }
        None
    }

    fn syntax(&self, msg: impl Into<String>) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn describe(&mut self) -> String {
        match self.peek() {
            None => "end of input".to_owned(),
            Some(c) if c.is_ascii_graphic() => format!("'{}'", c as char),
            Some(c) => format!("byte 0x{c:02x}"),
        }
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.factor()?;
                }
                Some(c) if c.is_ascii_alphanumeric() || c == b'(' => {
                    return Err(self.syntax("implicit multiplication is not supported; use '*'"));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let negate = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let mut base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            base = base.pow(self.exponent()?);
        }
        Ok(if negate { -base } else { base })
    }

    fn exponent(&mut self) -> Result<u32> {
        let start = match self.peek() {
            Some(c) if c.is_ascii_digit() => self.pos,
            Some(b'-') => {
                return Err(Error::Exponent {
                    pos: self.pos,
                    msg: "exponents must be nonnegative".to_owned(),
                })
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'(' => {
                return Err(Error::Exponent {
                    pos: self.pos,
                    msg: "exponents must be integer literals".to_owned(),
                })
            }
            _ => {
                let found = self.describe();
                return Err(self.syntax(format!("expected an exponent, found {found}")));
            }
        };
        let digits = self.digits();
        if matches!(self.src.get(self.pos), Some(b'.') | Some(b'/')) {
            return Err(Error::Exponent {
                pos: start,
                msg: "exponents must be integers".to_owned(),
            });
        }
        digits.parse().map_err(|_| Error::Exponent {
            pos: start,
            msg: format!("exponent {digits} is too large"),
        })
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let n: Int = self.digits().parse().expect("ascii digits");
                Ok(Polynomial::constant(n))
            }
            Some(c @ (b'a' | b'b' | b'c')) => {
                self.pos += 1;
                Ok(Polynomial::var((c - b'a') as usize))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    let found = self.describe();
                    return Err(self.syntax(format!("expected ')', found {found}")));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_alphabetic() => Err(self.syntax(format!(
                "unknown variable '{}'; only a, b, c are allowed",
                c as char
            ))),
            _ => {
                let found = self.describe();
                Err(self.syntax(format!(
                    "expected a number, a variable or '(', found {found}"
                )))
            }
        }
    }
}
