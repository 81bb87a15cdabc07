//! Positive-integer solutions of `a^2 + b^2 + c^2 = abc f(a,b,c)`.
//!
//! Writing a solution as `k (a0, b0, c0)` with `k = gcd(a, b, c)`, the core
//! solves `a0^2 + b0^2 + c0^2 = a0 b0 c0 k f(k a0, k b0, k c0)` and is pairwise
//! coprime, so it is a Markov triple with `k f(k a0, k b0, k c0) = 3`. Hence
//! `k` is 1 (with `f = 3`) or 3 (with `f = 1`) and [`solve`] only has to walk
//! Markov triples.

use std::collections::BTreeSet;

use num_integer::Integer;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::Int;
use crate::markov::{enumerate_markov, Triple};
use crate::poly::Polynomial;

/// Largest bound accepted by [`solve_bruteforce`].
pub const BRUTEFORCE_LIMIT: u64 = 500;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GcdReduction {
    pub k: Int,
    pub core: Triple,
}

pub fn gcd_reduce(t: &Triple) -> GcdReduction {
    let k = t.a.gcd(&t.b).gcd(&t.c);
    let core = Triple {
        a: &t.a / &k,
        b: &t.b / &k,
        c: &t.c / &k,
    };
    GcdReduction { k, core }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    /// `f - 3` is a nonzero polynomial with nonnegative coefficients, so
    /// `f > 3` at every positive point and neither branch can fire.
    ProvablyEmpty,
    /// `f = 3`: the solutions are exactly the Markov triples.
    SolutionsAreMarkov,
    /// `f = 1`: the solutions are exactly three times the Markov triples.
    SolutionsAre3Markov,
    Unknown,
}

pub fn precheck(f: &Polynomial) -> Verdict {
    if let Some(n) = f.is_const() {
        if n == Int::from(3) {
            return Verdict::SolutionsAreMarkov;
        }
        if n.is_one() {
            return Verdict::SolutionsAre3Markov;
        }
    }
    let g = f.subtract_const(&Int::from(3));
    if !g.is_zero() && g.is_nonneg_coeffs() {
        Verdict::ProvablyEmpty
    } else {
        Verdict::Unknown
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveReport {
    pub f: Polynomial,
    pub bound: u64,
    /// All solutions, ascending.
    pub solutions: Vec<Triple>,
    /// Solutions with `gcd = 1`: Markov triples with `f = 3`.
    pub branch_k1: Vec<Triple>,
    /// Cores `(a0, b0, c0)` of the `gcd = 3` solutions, `f(3a0, 3b0, 3c0) = 1`.
    pub branch_k3: Vec<Triple>,
    pub precheck_verdict: Verdict,
}

/// `a^2 + b^2 + c^2 == abc f(a,b,c)`.
pub fn satisfies(f: &Polynomial, t: &Triple) -> bool {
    let (a, b, c) = (&t.a, &t.b, &t.c);
    a * a + b * b + c * c == a * b * c * f.evaluate(t)
}

/// Every solution with all components at most `bound`, as ordered triples.
pub fn solve(f: &Polynomial, bound: u64) -> SolveReport {
    let markov = enumerate_markov(&Int::from(bound));
    let three = Int::from(3);
    let one = Int::one();

    let branch_k1: Vec<Triple> = markov
        .iter()
        .flat_map(Triple::permutations)
        .filter(|p| f.evaluate(p) == three)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();

    let branch_k3: Vec<Triple> = markov
        .iter()
        .filter(|m| m.max_component() * 3u32 <= Int::from(bound))
        .flat_map(Triple::permutations)
        .filter(|p| f.evaluate(&p.scaled(&three)) == one)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();

    let solutions: Vec<Triple> = branch_k1
        .iter()
        .cloned()
        .chain(branch_k3.iter().map(|core| core.scaled(&three)))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    for s in &solutions {
        assert!(satisfies(f, s), "emitted {s} does not solve the equation");
    }

    SolveReport {
        f: f.clone(),
        bound,
        solutions,
        branch_k1,
        branch_k3,
        precheck_verdict: precheck(f),
    }
}

/// Scans the whole cube `[1, bound]^3`.
pub fn solve_bruteforce(f: &Polynomial, bound: u64) -> Result<Vec<Triple>> {
    if bound > BRUTEFORCE_LIMIT {
        return Err(Error::BoundTooLarge {
            bound,
            limit: BRUTEFORCE_LIMIT,
        });
    }
    let mut out = Vec::new();
    for a in 1..=bound {
        for b in 1..=bound {
            for c in 1..=bound {
                let t = Triple::from_u64(a, b, c);
                if satisfies(f, &t) {
                    out.push(t);
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::markov::{is_markov, pairwise_coprime};
    use crate::poly::parse;

    fn t(a: u64, b: u64, c: u64) -> Triple {
        Triple::from_u64(a, b, c)
    }

    fn perms(v: &[(u64, u64, u64)]) -> Vec<Triple> {
        let s: BTreeSet<Triple> = v.iter().flat_map(|&(a, b, c)| t(a, b, c).permutations()).collect();
        s.into_iter().collect()
    }

    #[test]
    fn gcd_reduce_examples() {
        assert_eq!(gcd_reduce(&t(3, 6, 15)), GcdReduction { k: 3.into(), core: t(1, 2, 5) });
        assert_eq!(gcd_reduce(&t(1, 2, 5)), GcdReduction { k: 1.into(), core: t(1, 2, 5) });
        assert_eq!(gcd_reduce(&t(6, 10, 15)), GcdReduction { k: 1.into(), core: t(6, 10, 15) });
    }

    #[test]
    fn precheck_examples() {
        assert_eq!(precheck(&parse("3 + a*b").unwrap()), Verdict::ProvablyEmpty);
        assert_eq!(precheck(&parse("3").unwrap()), Verdict::SolutionsAreMarkov);
        assert_eq!(precheck(&parse("1").unwrap()), Verdict::SolutionsAre3Markov);
        assert_eq!(precheck(&parse("4").unwrap()), Verdict::ProvablyEmpty);
        assert_eq!(precheck(&parse("a+b+c").unwrap()), Verdict::Unknown);
        assert_eq!(precheck(&parse("3 - a").unwrap()), Verdict::Unknown);
        assert_eq!(precheck(&parse("0").unwrap()), Verdict::Unknown);
    }

    #[test]
    fn solve_examples() {
        let r = solve(&parse("3").unwrap(), 30);
        assert_eq!(r.solutions, perms(&[(1, 1, 1), (1, 1, 2), (1, 2, 5), (1, 5, 13), (2, 5, 29)]));
        assert!(r.branch_k3.is_empty());

        let r = solve(&parse("1").unwrap(), 20);
        assert_eq!(r.solutions, perms(&[(3, 3, 3), (3, 3, 6), (3, 6, 15)]));
        assert_eq!(r.branch_k3, perms(&[(1, 1, 1), (1, 1, 2), (1, 2, 5)]));

        let r = solve(&parse("a+b+c").unwrap(), 100);
        assert_eq!(r.solutions, vec![t(1, 1, 1)]);

        let r = solve(&parse("4").unwrap(), 60);
        assert!(r.solutions.is_empty());
        assert_eq!(r.precheck_verdict, Verdict::ProvablyEmpty);
    }

    #[test]
    fn bruteforce_examples() {
        let f3 = parse("3").unwrap();
        assert_eq!(solve_bruteforce(&f3, 5).unwrap(), perms(&[(1, 1, 1), (1, 1, 2), (1, 2, 5)]));
        assert_eq!(solve_bruteforce(&parse("1").unwrap(), 3).unwrap(), vec![t(3, 3, 3)]);
        let fa = parse("a").unwrap();
        assert_eq!(solve_bruteforce(&fa, 10).unwrap(), solve(&fa, 10).solutions);
        assert!(matches!(
            solve_bruteforce(&f3, 501),
            Err(Error::BoundTooLarge { bound: 501, limit: 500 })
        ));
    }

    #[test]
    fn solutions_respect_the_reduction() {
        for f in ["3", "1", "a", "a*b*c", "2*a - b", "c - a*b + 2", "(a-b)^2 + 1"] {
            let f = parse(f).unwrap();
            let r = solve(&f, 60);
            assert_eq!(r.solutions, solve_bruteforce(&f, 60).unwrap(), "f = {f}");
            for s in &r.solutions {
                let GcdReduction { k, core } = gcd_reduce(s);
                assert!(k == 1.into() || k == 3.into());
                assert!(is_markov(&core.normalized()));
                if k == 1.into() {
                    assert!(pairwise_coprime(s));
                    assert_eq!(f.evaluate(s), 3.into());
                } else {
                    assert_eq!(f.evaluate(s), 1.into());
                }
            }
        }
    }
}
