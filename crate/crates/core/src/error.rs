use thiserror::Error;

use crate::exact::Int;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("gcd({x}, {y}) = {gcd} != 1 (arguments must be coprime)")]
    NotCoprime { x: Int, y: Int, gcd: Int },

    /// `triple` is the offending triple as printed text.
    #[error("{triple} is not pairwise coprime: gcd({x}, {y}) = {gcd}")]
    NotPairwiseCoprime {
        triple: String,
        x: Int,
        y: Int,
        gcd: Int,
    },

    #[error("[{a}, {b}, {c}] is not a Markov triple (a^2+b^2+c^2 != 3abc)")]
    NotMarkov { a: Int, b: Int, c: Int },

    #[error("{name} must be at least {min}, got {value}")]
    OutOfRange { name: &'static str, min: Int, value: Int },

    #[error("modulus {value} exceeds the floating-point evaluation limit {limit}")]
    FloatLimit { value: Int, limit: u64 },

    #[error("bound {bound} exceeds the brute-force limit {limit}")]
    BoundTooLarge { bound: u64, limit: u64 },

    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("exponent error at position {pos}: {msg}")]
    Exponent { pos: usize, msg: String },
}

impl Error {
    /// Parse failures are usage errors; everything else is a violated
    /// mathematical precondition.
    pub fn is_usage(&self) -> bool {
        matches!(self, Error::Syntax { .. } | Error::Exponent { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
