//! Exact Dedekind and Dedekind–Rademacher sums, Markov triples, and the
//! Diophantine equation `a^2 + b^2 + c^2 = abc f(a,b,c)`.
//!
//! - [`exact`]: integers, normalized rationals, gcd, modular inverse, sawtooth.
//! - [`dedekind`]: `s(a;b)`, `D(a;b,c)`, zero conditions, reciprocity.
//! - [`markov`]: Markov triples, Vieta tree, equivalence sweep.
//! - [`poly`]: polynomials in `a`, `b`, `c` and their text grammar.
//! - [`solver`]: the Markov-triple reduction and a brute-force oracle.
//! - [`cli`]: the `markov-dedekind` command line.

pub mod cli;
pub mod dedekind;
pub mod error;
pub mod exact;
pub mod markov;
pub mod poly;
pub mod solver;

pub use error::{Error, Result};
pub use exact::{Int, Rat};
pub use markov::Triple;
pub use poly::Polynomial;
