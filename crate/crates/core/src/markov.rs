//! Markov triples: the equation `a^2 + b^2 + c^2 = 3abc`, the modular
//! condition, Vieta jumping, and an exhaustive check that the two agree on
//! pairwise coprime triples.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::dedekind::rademacher_sum;
use crate::error::{Error, Result};
use crate::exact::{gcd, Int};

/// Default seed for the verification sample.
pub const DEFAULT_SEED: u64 = 0xC0FFEE;

/// Default number of non-interesting triples whose Rademacher sums are
/// evaluated by [`verify_equivalence`].
pub const DEFAULT_SAMPLE: usize = 10_000;

/// An ordered triple of positive integers.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triple {
    pub a: Int,
    pub b: Int,
    pub c: Int,
}

impl Triple {
    pub fn new(a: Int, b: Int, c: Int) -> Result<Self> {
        for v in [&a, &b, &c] {
            if !v.is_positive() {
                return Err(Error::OutOfRange {
                    name: "triple component",
                    min: Int::one(),
                    value: v.clone(),
                });
            }
        }
        Ok(Triple { a, b, c })
    }

    /// Panics on a zero component.
    pub fn from_u64(a: u64, b: u64, c: u64) -> Self {
        assert!(a > 0 && b > 0 && c > 0, "triple components must be positive");
        Triple {
            a: a.into(),
            b: b.into(),
            c: c.into(),
        }
    }

    /// Sorted so that `a <= b <= c`.
    pub fn normalized(&self) -> Triple {
        let mut v = [self.a.clone(), self.b.clone(), self.c.clone()];
        v.sort();
        let [a, b, c] = v;
        Triple { a, b, c }
    }

    pub fn is_normalized(&self) -> bool {
        self.a <= self.b && self.b <= self.c
    }

    pub fn max_component(&self) -> &Int {
        (&self.a).max(&self.b).max(&self.c)
    }

    pub fn components(&self) -> [&Int; 3] {
        [&self.a, &self.b, &self.c]
    }

    /// Distinct orderings, ascending.
    pub fn permutations(&self) -> Vec<Triple> {
        let (a, b, c) = (&self.a, &self.b, &self.c);
        let mut out: Vec<Triple> = [(a, b, c), (a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)]
            .into_iter()
            .map(|(x, y, z)| Triple {
                a: x.clone(),
                b: y.clone(),
                c: z.clone(),
            })
            .collect();
        out.sort();
        out.dedup();
        out
    }

    pub fn scaled(&self, k: &Int) -> Triple {
        Triple {
            a: &self.a * k,
            b: &self.b * k,
            c: &self.c * k,
        }
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}, {}]", self.a, self.b, self.c)
    }
}

/// Serialized as a JSON array; components that do not fit a `u64` become
/// decimal strings.
impl Serialize for Triple {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(3))?;
        for v in self.components() {
            match v.to_u64() {
                Some(n) => seq.serialize_element(&n)?,
                None => seq.serialize_element(&v.to_string())?,
            }
        }
        seq.end()
    }
}

/// `a^2 + b^2 + c^2 = 3abc`.
pub fn is_markov(t: &Triple) -> bool {
    let (a, b, c) = (&t.a, &t.b, &t.c);
    a * a + b * b + c * c == a * b * c * 3u32
}

/// `a^2 + b^2 = 0 (mod c)`, `b^2 + c^2 = 0 (mod a)`, `c^2 + a^2 = 0 (mod b)`.
pub fn markov_condition(t: &Triple) -> bool {
    let (a, b, c) = (&t.a, &t.b, &t.c);
    let divides = |m: &Int, x: &Int, y: &Int| (x * x + y * y).is_multiple_of(m);
    divides(c, a, b) && divides(a, b, c) && divides(b, c, a)
}

pub fn pairwise_coprime(t: &Triple) -> bool {
    gcd(&t.a, &t.b).is_one() && gcd(&t.b, &t.c).is_one() && gcd(&t.c, &t.a).is_one()
}

/// The three Vieta jumps `(3bc-a, b, c)`, `(a, 3ac-b, c)`, `(a, b, 3ab-c)`,
/// each normalized.
pub fn vieta_neighbors(t: &Triple) -> Result<[Triple; 3]> {
    if !is_markov(t) {
        return Err(Error::NotMarkov {
            a: t.a.clone(),
            b: t.b.clone(),
            c: t.c.clone(),
        });
    }
    let (a, b, c) = (&t.a, &t.b, &t.c);
    let jump = |x: &Int, y: &Int, z: &Int| y * z * 3u32 - x;
    Ok([
        Triple {
            a: jump(a, b, c),
            b: b.clone(),
            c: c.clone(),
        }
        .normalized(),
        Triple {
            a: a.clone(),
            b: jump(b, a, c),
            c: c.clone(),
        }
        .normalized(),
        Triple {
            a: a.clone(),
            b: b.clone(),
            c: jump(c, a, b),
        }
        .normalized(),
    ])
}

/// All normalized Markov triples with largest component at most `bound`,
/// found breadth-first over the Vieta tree rooted at `(1, 1, 1)`.
///
/// A triple's parent (jump on its largest entry) never has a larger maximum,
/// so pruning children above `bound` loses nothing.
pub fn enumerate_markov(bound: &Int) -> BTreeSet<Triple> {
    let mut seen = BTreeSet::new();
    let root = Triple::from_u64(1, 1, 1);
    if *bound < Int::one() {
        return seen;
    }
    let mut queue = VecDeque::from([root.clone()]);
    seen.insert(root);
    while let Some(t) = queue.pop_front() {
        let children = vieta_neighbors(&t).expect("tree only holds Markov triples");
        for child in children {
            if child.max_component() <= bound && !seen.contains(&child) {
                seen.insert(child.clone());
                queue.push_back(child);
            }
        }
    }
    seen
}

/// Independent enumeration: for each `a <= b`, solve
/// `c^2 - 3ab c + (a^2 + b^2) = 0` over the integers.
///
/// If `c >= b` is a root then the other root `(a^2+b^2)/c <= 2b`, so
/// `c >= b(3a - 2)`; pairs with `b(3a - 2) > bound` are skipped.
pub fn enumerate_markov_oracle(bound: u64) -> BTreeSet<Triple> {
    let mut out = BTreeSet::new();
    let n = BigInt::from(bound);
    let mut a: u64 = 1;
    while a <= bound && (a == 1 || a.saturating_mul(3 * a - 2) <= bound) {
        let mut b = a;
        while b <= bound && (a == 1 || b.saturating_mul(3 * a - 2) <= bound) {
            let (ai, bi) = (BigInt::from(a), BigInt::from(b));
            let sum = &ai * &bi * 3u32;
            let disc = &sum * &sum - (&ai * &ai + &bi * &bi) * 4u32;
            if !disc.is_negative() {
                let root = disc.sqrt();
                if &root * &root == disc {
                    for c2 in [&sum - &root, &sum + &root] {
                        if c2.is_even() {
                            let c = c2 / 2u32;
                            if c >= bi && c <= n {
                                out.insert(Triple {
                                    a: ai.clone(),
                                    b: bi.clone(),
                                    c,
                                });
                            }
                        }
                    }
                }
            }
            b += 1;
        }
        a += 1;
    }
    out
}

/// Which half of an equivalence a triple broke.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Direction {
    /// Satisfies the Markov equation but not the modular condition.
    EquationWithoutCondition,
    /// Satisfies the modular condition but not the Markov equation.
    ConditionWithoutEquation,
    /// Satisfies the modular condition but some Rademacher sum is nonzero.
    ConditionWithoutZeroSums,
    /// All three Rademacher sums vanish but the modular condition fails.
    ZeroSumsWithoutCondition,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub triple: Triple,
    pub direction: Direction,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub bound: u64,
    /// Triples satisfying the Markov equation.
    pub eq1_set: BTreeSet<Triple>,
    /// Triples satisfying the modular condition.
    pub cond2_set: BTreeSet<Triple>,
    /// Evaluated triples whose three Rademacher sums all vanish.
    pub dzero_set: BTreeSet<Triple>,
    /// Number of triples whose Rademacher sums were computed.
    pub evaluated: usize,
    pub counterexamples: Vec<Counterexample>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
            && self.eq1_set == self.cond2_set
            && self.cond2_set == self.dzero_set
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub sample: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            sample: DEFAULT_SAMPLE,
            seed: DEFAULT_SEED,
        }
    }
}

/// Visits every normalized pairwise coprime triple with `c <= bound`.
fn for_each_coprime_triple(bound: u64, mut visit: impl FnMut(u64, u64, u64)) {
    for c in 1..=bound {
        for b in 1..=c {
            if b.gcd(&c) != 1 {
                continue;
            }
            for a in 1..=b {
                if a.gcd(&b) == 1 && a.gcd(&c) == 1 {
                    visit(a, b, c);
                }
            }
        }
    }
}

fn all_sums_vanish(t: &Triple) -> bool {
    let (a, b, c) = (&t.a, &t.b, &t.c);
    [(a, b, c), (b, c, a), (c, a, b)].into_iter().all(|(x, y, z)| {
        rademacher_sum(x, y, z)
            .expect("pairwise coprime arguments")
            .is_zero()
    })
}

/// [`verify_equivalence_with`] using the default sample size and seed.
pub fn verify_equivalence(bound: u64) -> VerifyReport {
    verify_equivalence_with(bound, VerifyOptions::default())
}

/// Scans all normalized pairwise coprime triples with `c <= bound`, checking
/// that the Markov equation and the modular condition select the same set.
///
/// Rademacher sums are evaluated on every triple that satisfies either, plus
/// a seeded sample of `opts.sample` of the remaining ones, and their joint
/// vanishing is compared against the modular condition.
pub fn verify_equivalence_with(bound: u64, opts: VerifyOptions) -> VerifyReport {
    let mut eq1_set = BTreeSet::new();
    let mut cond2_set = BTreeSet::new();
    let mut others = 0usize;
    let mut counterexamples = Vec::new();

    for_each_coprime_triple(bound, |a, b, c| {
        let t = Triple::from_u64(a, b, c);
        let eq1 = is_markov(&t);
        let cond2 = markov_condition(&t);
        match (eq1, cond2) {
            (true, false) => counterexamples.push(Counterexample {
                triple: t.clone(),
                direction: Direction::EquationWithoutCondition,
            }),
            (false, true) => counterexamples.push(Counterexample {
                triple: t.clone(),
                direction: Direction::ConditionWithoutEquation,
            }),
            _ => {}
        }
        if eq1 {
            eq1_set.insert(t.clone());
        }
        if cond2 {
            cond2_set.insert(t);
        }
        if !eq1 && !cond2 {
            others += 1;
        }
    });

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut picks = rand::seq::index::sample(&mut rng, others, opts.sample.min(others)).into_vec();
    picks.sort_unstable();

    let mut evaluated: BTreeSet<Triple> = eq1_set.union(&cond2_set).cloned().collect();
    let mut idx = 0usize;
    let mut next = picks.iter().peekable();
    for_each_coprime_triple(bound, |a, b, c| {
        if next.peek().is_none() {
            return;
        }
        let t = Triple::from_u64(a, b, c);
        if eq1_set.contains(&t) || cond2_set.contains(&t) {
            return;
        }
        if next.peek() == Some(&&idx) {
            evaluated.insert(t);
            next.next();
        }
        idx += 1;
    });

    let mut dzero_set = BTreeSet::new();
    for t in &evaluated {
        let dz = all_sums_vanish(t);
        let cond2 = cond2_set.contains(t);
        if cond2 && !dz {
            counterexamples.push(Counterexample {
                triple: t.clone(),
                direction: Direction::ConditionWithoutZeroSums,
            });
        }
        if dz && !cond2 {
            counterexamples.push(Counterexample {
                triple: t.clone(),
                direction: Direction::ZeroSumsWithoutCondition,
            });
        }
        if dz {
            dzero_set.insert(t.clone());
        }
    }
    counterexamples.sort_by(|x, y| (&x.triple, x.direction).cmp(&(&y.triple, y.direction)));

    VerifyReport {
        bound,
        eq1_set,
        cond2_set,
        dzero_set,
        evaluated: evaluated.len(),
        counterexamples,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn t(a: u64, b: u64, c: u64) -> Triple {
        Triple::from_u64(a, b, c)
    }

    fn set(v: &[(u64, u64, u64)]) -> BTreeSet<Triple> {
        v.iter().map(|&(a, b, c)| t(a, b, c)).collect()
    }

    #[test]
    fn predicates() {
        assert!(is_markov(&t(1, 1, 1)));
        assert!(is_markov(&t(1, 2, 5)));
        assert!(!is_markov(&t(1, 2, 3)));
        assert!(markov_condition(&t(1, 1, 1)));
        assert!(markov_condition(&t(1, 2, 5)));
        assert!(!markov_condition(&t(1, 2, 3)));
        assert!(pairwise_coprime(&t(1, 1, 1)));
        assert!(pairwise_coprime(&t(2, 5, 29)));
        assert!(!pairwise_coprime(&t(3, 3, 3)));
    }

    #[test]
    fn coprimality_hypothesis_is_needed() {
        let x = t(3, 3, 3);
        assert!(markov_condition(&x));
        assert!(!is_markov(&x));
        assert!(!pairwise_coprime(&x));
    }

    #[test]
    fn neighbors() {
        let [x, y, z] = vieta_neighbors(&t(1, 1, 1)).unwrap();
        assert_eq!((x.clone(), y, z), (t(1, 1, 2), t(1, 1, 2), t(1, 1, 2)));
        assert_eq!(vieta_neighbors(&t(1, 2, 5)).unwrap(), [t(2, 5, 29), t(1, 5, 13), t(1, 1, 2)]);
        assert_eq!(vieta_neighbors(&t(1, 1, 2)).unwrap(), [t(1, 2, 5), t(1, 2, 5), t(1, 1, 1)]);
        assert!(matches!(vieta_neighbors(&t(1, 2, 3)), Err(Error::NotMarkov { .. })));
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(enumerate_markov(&1.into()), set(&[(1, 1, 1)]));
        assert_eq!(enumerate_markov(&5.into()), set(&[(1, 1, 1), (1, 1, 2), (1, 2, 5)]));
        assert_eq!(
            enumerate_markov(&30.into()),
            set(&[(1, 1, 1), (1, 1, 2), (1, 2, 5), (1, 5, 13), (2, 5, 29)])
        );
        assert_eq!(enumerate_markov_oracle(5), set(&[(1, 1, 1), (1, 1, 2), (1, 2, 5)]));
        assert_eq!(enumerate_markov_oracle(2), set(&[(1, 1, 1), (1, 1, 2)]));
        assert_eq!(enumerate_markov_oracle(1), set(&[(1, 1, 1)]));
        assert!(enumerate_markov(&0.into()).is_empty());
    }

    /// Plain cube scan, no pruning.
    fn cube_scan(bound: u64) -> BTreeSet<Triple> {
        let mut out = BTreeSet::new();
        for c in 1..=bound {
            for b in 1..=c {
                for a in 1..=b {
                    if a * a + b * b + c * c == 3 * a * b * c {
                        out.insert(t(a, b, c));
                    }
                }
            }
        }
        out
    }

    #[test]
    fn oracle_pruning_matches_cube_scan() {
        for bound in [1, 2, 5, 13, 34, 89, 100, 200] {
            assert_eq!(enumerate_markov_oracle(bound), cube_scan(bound), "bound {bound}");
        }
    }

    #[test]
    fn verify_small_bounds() {
        for (bound, expected) in [
            (1, set(&[(1, 1, 1)])),
            (5, set(&[(1, 1, 1), (1, 1, 2), (1, 2, 5)])),
        ] {
            let r = verify_equivalence(bound);
            assert!(r.passed(), "{:?}", r.counterexamples);
            assert_eq!(r.eq1_set, expected);
            assert_eq!(r.cond2_set, expected);
            assert_eq!(r.dzero_set, expected);
        }
    }

    #[test]
    fn verify_is_deterministic() {
        let opts = VerifyOptions { sample: 50, seed: 7 };
        assert_eq!(verify_equivalence_with(40, opts), verify_equivalence_with(40, opts));
        assert!(verify_equivalence_with(40, opts).evaluated >= 50);
    }

    #[test]
    fn permutations_are_distinct() {
        assert_eq!(t(1, 1, 1).permutations().len(), 1);
        assert_eq!(t(1, 1, 2).permutations(), vec![t(1, 1, 2), t(1, 2, 1), t(2, 1, 1)]);
        assert_eq!(t(1, 2, 5).permutations().len(), 6);
    }

    #[test]
    fn triple_json() {
        assert_eq!(serde_json::to_string(&t(1, 2, 5)).unwrap(), "[1,2,5]");
        let big: Int = "100000000000000000000000".parse().unwrap();
        let x = Triple::new(Int::one(), Int::one(), big).unwrap();
        assert_eq!(serde_json::to_string(&x).unwrap(), "[1,1,\"100000000000000000000000\"]");
        assert!(Triple::new(Int::from(0), Int::one(), Int::one()).is_err());
    }

    #[test]
    fn markov_triples_are_pairwise_coprime() {
        for m in enumerate_markov(&1_000_000.into()) {
            assert!(pairwise_coprime(&m), "{m}");
        }
    }

    proptest! {
        #[test]
        fn condition_iff_equation_on_coprime(a in 1u64..=200, b in 1u64..=200, c in 1u64..=200) {
            let x = t(a, b, c);
            prop_assume!(pairwise_coprime(&x));
            prop_assert_eq!(is_markov(&x), markov_condition(&x));
        }

        #[test]
        fn vieta_closure(steps in proptest::collection::vec(0usize..3, 0..40)) {
            let mut cur = t(1, 1, 1);
            for s in steps {
                let nb = vieta_neighbors(&cur).unwrap();
                for n in &nb {
                    prop_assert!(is_markov(n));
                }
                cur = nb[s].clone();
            }
        }
    }
}
