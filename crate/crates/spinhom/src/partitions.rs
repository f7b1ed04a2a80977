//! Partitions, shape predicates and the small amount of arithmetic on them
//! the rest of the crate needs.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Index;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An odd prime, the characteristic everything is reduced modulo.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "usize", into = "usize")]
pub struct OddPrime(usize);

impl OddPrime {
    pub const THREE: OddPrime = OddPrime(3);
    pub const FIVE: OddPrime = OddPrime(5);
    pub const SEVEN: OddPrime = OddPrime(7);

    pub fn new(p: usize) -> Result<Self> {
        let prime = p >= 3 && p % 2 == 1 && (3..).step_by(2).take_while(|d| d * d <= p).all(|d| p % d != 0);
        if prime {
            Ok(OddPrime(p))
        } else {
            Err(Error::NotOddPrime(p))
        }
    }

    pub fn get(self) -> usize {
        self.0
    }

    /// The largest residue, `(p-1)/2`.
    pub fn half(self) -> usize {
        (self.0 - 1) / 2
    }
}

impl TryFrom<usize> for OddPrime {
    type Error = Error;
    fn try_from(p: usize) -> Result<Self> {
        OddPrime::new(p)
    }
}

impl From<OddPrime> for usize {
    fn from(p: OddPrime) -> usize {
        p.0
    }
}

impl fmt::Display for OddPrime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A weakly decreasing sequence of positive integers.
///
/// Trailing zeros are never stored. Indexing past the last part yields 0.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

static ZERO: usize = 0;

impl Partition {
    pub fn empty() -> Self {
        Partition { parts: vec![] }
    }

    /// Builds a partition from weakly decreasing parts; zeros are dropped.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        let parts: Vec<usize> = parts.into_iter().filter(|&x| x > 0).collect();
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotDecreasing(join_parts(&parts)));
        }
        Ok(Partition { parts })
    }

    /// Builds a partition from any multiset of parts by sorting them.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&x| x > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn into_parts(self) -> Vec<usize> {
        self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Length of row `r` (1-based); 0 beyond the last row.
    pub fn row(&self, r: usize) -> usize {
        if r == 0 {
            return 0;
        }
        self.parts.get(r - 1).copied().unwrap_or(0)
    }

    pub fn contains_part(&self, x: usize) -> bool {
        self.parts.contains(&x)
    }

    /// Whether the Young diagram of `other` lies inside that of `self`.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.parts.iter().zip(&self.parts).all(|(a, b)| a <= b)
    }

    pub fn is_strict(&self) -> bool {
        self.parts.windows(2).all(|w| w[0] > w[1])
    }

    pub fn is_p_strict(&self, p: OddPrime) -> bool {
        let p = p.get();
        self.parts.windows(2).all(|w| w[0] > w[1] || w[0] % p == 0)
    }

    pub fn is_restricted(&self, p: OddPrime) -> bool {
        let q = p.get();
        self.is_p_strict(p)
            && (1..=self.len()).all(|r| {
                let (a, gap) = (self.row(r), self.row(r) - self.row(r + 1));
                gap < q || (gap == q && a % q != 0)
            })
    }

    /// No part is repeated `p` or more times.
    pub fn is_p_regular(&self, p: OddPrime) -> bool {
        self.parts.chunk_by(|a, b| a == b).all(|run| run.len() < p.get())
    }

    /// Number of positive parts divisible by `p`.
    pub fn l_p(&self, p: OddPrime) -> usize {
        self.parts.iter().filter(|&&x| x % p.get() == 0).count()
    }

    pub fn require_strict(&self) -> Result<()> {
        if self.is_strict() {
            Ok(())
        } else {
            Err(Error::NotStrict(self.clone()))
        }
    }

    pub fn require_p_strict(&self, p: OddPrime) -> Result<()> {
        if self.is_p_strict(p) {
            Ok(())
        } else {
            Err(Error::NotPStrict(self.clone(), p.get()))
        }
    }

    pub fn require_restricted(&self, p: OddPrime) -> Result<()> {
        if self.is_restricted(p) {
            Ok(())
        } else {
            Err(Error::NotRestricted(self.clone(), p.get()))
        }
    }

    /// The multiset of distinct parts paired with multiplicities, largest first.
    pub fn multiplicities(&self) -> Vec<(usize, usize)> {
        self.parts.chunk_by(|a, b| a == b).map(|run| (run[0], run.len())).collect()
    }
}

impl Index<usize> for Partition {
    type Output = usize;

    /// 0-based part access returning 0 beyond the end.
    fn index(&self, i: usize) -> &usize {
        self.parts.get(i).unwrap_or(&ZERO)
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;
    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Vec<usize> {
        p.parts
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic order on the part sequences.
impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.parts.cmp(&other.parts)
    }
}

fn join_parts(parts: &[usize]) -> String {
    parts.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            write!(f, "∅")
        } else {
            write!(f, "{}", join_parts(&self.parts))
        }
    }
}

impl FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_partition(s)
    }
}

/// `a, a-3, ..., b` for `a >= b`, empty when `a < b`. Both ends may be
/// non-positive in family formulas; callers filter as needed.
pub fn step3(a: i64, b: i64) -> Vec<i64> {
    if a < b {
        return vec![];
    }
    debug_assert_eq!((a - b).rem_euclid(3), 0);
    (0..=(a - b) / 3).map(|k| a - 3 * k).collect()
}

/// Parses the canonical text form, accepting `a..b` for `a, a-3, ..., b`.
/// Parts are sorted; strictness is not checked here.
pub fn parse_partition(text: &str) -> Result<Partition> {
    let text = text.trim().trim_start_matches('(').trim_end_matches(')').trim();
    if text.is_empty() || text == "∅" {
        return Ok(Partition::empty());
    }
    let mut parts = Vec::new();
    for token in text.split(',') {
        let token = token.trim();
        if let Some((a, b)) = token.split_once("..") {
            let a = parse_part(a, token)?;
            let b = parse_part(b, token)?;
            if a < b {
                return Err(Error::Parse { token: token.into(), reason: "range must be descending" });
            }
            if (a - b) % 3 != 0 {
                return Err(Error::Parse { token: token.into(), reason: "range ends must agree mod 3" });
            }
            parts.extend((b..=a).rev().step_by(3));
        } else {
            parts.push(parse_part(token, token)?);
        }
    }
    Ok(Partition::from_unsorted(parts))
}

fn parse_part(s: &str, token: &str) -> Result<usize> {
    let value: i64 = s
        .trim()
        .parse()
        .map_err(|_| Error::Parse { token: token.into(), reason: "not an integer" })?;
    if value <= 0 {
        return Err(Error::Parse { token: token.into(), reason: "parts must be positive" });
    }
    Ok(value as usize)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShapeFlags {
    pub is_strict: bool,
    pub is_p_strict: bool,
    pub is_restricted: bool,
}

pub fn classify_shape(lambda: &Partition, p: OddPrime) -> ShapeFlags {
    ShapeFlags {
        is_strict: lambda.is_strict(),
        is_p_strict: lambda.is_p_strict(p),
        is_restricted: lambda.is_restricted(p),
    }
}

/// `λ + mμ`, componentwise.
pub fn scaled_add(lambda: &Partition, m: usize, mu: &Partition) -> Result<Partition> {
    let n = lambda.len().max(mu.len());
    Partition::new((0..n).map(|i| lambda[i] + m * mu[i]).collect())
}

/// Multiset union of parts.
pub fn join(lambda: &Partition, mu: &Partition) -> Partition {
    Partition::from_unsorted(lambda.parts().iter().chain(mu.parts()).copied().collect())
}

pub fn conjugate(alpha: &Partition) -> Partition {
    let cols = alpha[0];
    Partition { parts: (1..=cols).map(|c| alpha.parts().iter().take_while(|&&a| a >= c).count()).collect() }
}

/// Whether `mu` dominates `lambda`.
pub fn dominates(mu: &Partition, lambda: &Partition) -> Result<bool> {
    if mu.size() != lambda.size() {
        return Err(Error::SizeMismatch(mu.size(), lambda.size()));
    }
    let (mut a, mut b) = (0, 0);
    for i in 0..lambda.len().max(mu.len()) {
        a += lambda[i];
        b += mu[i];
        if a > b {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SpinParity {
    Even,
    Odd,
}

impl SpinParity {
    pub fn bit(self) -> usize {
        match self {
            SpinParity::Even => 0,
            SpinParity::Odd => 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParityStats {
    pub spin_parity: SpinParity,
    pub l_p: usize,
    pub length: usize,
}

pub fn parity_stats(lambda: &Partition, p: OddPrime) -> ParityStats {
    let evens = lambda.parts().iter().filter(|&&x| x % 2 == 0).count();
    ParityStats {
        spin_parity: if evens % 2 == 0 { SpinParity::Even } else { SpinParity::Odd },
        l_p: lambda.l_p(p),
        length: lambda.len(),
    }
}

/// Which parts may repeat during enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Repeats {
    Any,
    None,
    MultiplesOf(OddPrime),
}

/// Partitions of `n` in decreasing lexicographic order, with repeated parts
/// allowed as `repeats` says.
pub fn partitions_of(n: usize, repeats: Repeats) -> Vec<Partition> {
    fn go(rest: usize, max: usize, repeats: Repeats, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for x in (1..=max.min(rest)).rev() {
            let next_max = match repeats {
                Repeats::Any => x,
                Repeats::None => x - 1,
                Repeats::MultiplesOf(p) if x % p.get() == 0 => x,
                Repeats::MultiplesOf(_) => x - 1,
            };
            cur.push(x);
            go(rest - x, next_max, repeats, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, repeats, &mut Vec::new(), &mut out);
    out
}

pub fn strict_partitions(n: usize) -> Vec<Partition> {
    partitions_of(n, Repeats::None)
}

pub fn p_strict_partitions(n: usize, p: OddPrime) -> Vec<Partition> {
    partitions_of(n, Repeats::MultiplesOf(p))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn odd_primes() {
        assert!(OddPrime::new(3).is_ok());
        assert!(OddPrime::new(7).is_ok());
        assert!(OddPrime::new(2).is_err());
        assert!(OddPrime::new(9).is_err());
        assert!(OddPrime::new(1).is_err());
        assert_eq!(OddPrime::FIVE.half(), 2);
    }

    #[test]
    fn parse_ranges_and_sorting() {
        assert_eq!(pt("18,17..5,1").parts(), &[18, 17, 14, 11, 8, 5, 1]);
        assert_eq!(pt(""), Partition::empty());
        assert_eq!(pt("∅"), Partition::empty());
        assert_eq!(pt("5,3,4").parts(), &[5, 4, 3]);
        assert!(parse_partition("3,0").is_err());
        assert!(parse_partition("7..2").is_err());
        assert!(parse_partition("x").is_err());
        assert!(parse_partition("2..5").is_err());
        assert_eq!(pt("(5,2..2)").parts(), &[5, 2]);
    }

    #[test]
    fn display_round_trip() {
        for s in ["∅", "1", "8,6,4,2,1", "3,3,1"] {
            assert_eq!(pt(s).to_string(), s);
        }
    }

    #[test]
    fn shapes() {
        let p = OddPrime::THREE;
        let f = classify_shape(&pt("5,4,3,2,1"), p);
        assert!(f.is_strict && f.is_p_strict && f.is_restricted);
        let f = classify_shape(&pt("3,3"), p);
        assert!(!f.is_strict && f.is_p_strict);
        // the final gap 3 - 0 equals p with 3 divisible by p
        assert!(!f.is_restricted);
        let f = classify_shape(&pt("2,2"), p);
        assert!(!f.is_strict && !f.is_p_strict && !f.is_restricted);
        assert!(!pt("3").is_restricted(p));
        assert!(pt("2").is_restricted(p));
        assert!(!pt("4").is_restricted(p));
        assert!(pt("4,1").is_restricted(p));
        assert!(!pt("6,2").is_restricted(p));
    }

    #[test]
    fn scaled_add_and_join() {
        assert_eq!(scaled_add(&pt("4,1"), 3, &pt("1,1")).unwrap(), pt("7,4"));
        assert_eq!(scaled_add(&pt("2,1"), 3, &pt("2")).unwrap(), pt("8,1"));
        assert_eq!(scaled_add(&pt("5,2"), 0, &pt("9")).unwrap(), pt("5,2"));
        assert_eq!(join(&pt("4,1"), &pt("3")), pt("4,3,1"));
        assert_eq!(join(&pt("3,1"), &pt("3")), pt("3,3,1"));
        assert_eq!(join(&pt("3,1"), &Partition::empty()), pt("3,1"));
    }

    #[test]
    fn conjugates() {
        assert_eq!(conjugate(&pt("2,1")), pt("2,1"));
        assert_eq!(conjugate(&pt("3")), pt("1,1,1"));
        assert_eq!(conjugate(&pt("4,2,1")), pt("3,2,1,1"));
        assert_eq!(conjugate(&Partition::empty()), Partition::empty());
    }

    #[test]
    fn dominance() {
        assert!(dominates(&pt("3"), &pt("1,1,1")).unwrap());
        assert!(dominates(&pt("3,1"), &pt("3,1")).unwrap());
        assert!(!dominates(&pt("2,2"), &pt("3,1")).unwrap());
        assert!(dominates(&pt("2"), &pt("1")).is_err());
    }

    #[test]
    fn parities() {
        let p = OddPrime::THREE;
        let s = parity_stats(&pt("6"), p);
        assert_eq!((s.spin_parity, s.l_p), (SpinParity::Odd, 1));
        assert_eq!(parity_stats(&pt("5,1"), p).spin_parity, SpinParity::Even);
        assert_eq!(parity_stats(&pt("4,2"), p).spin_parity, SpinParity::Even);
    }

    #[test]
    fn enumeration_counts() {
        // partition numbers and distinct-part partition numbers
        let p: Vec<usize> = (0..=10).map(|n| partitions_of(n, Repeats::Any).len()).collect();
        assert_eq!(p, [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
        let q: Vec<usize> = (0..=10).map(|n| strict_partitions(n).len()).collect();
        assert_eq!(q, [1, 1, 1, 2, 2, 3, 4, 5, 6, 8, 10]);
        for n in 0..=12 {
            for l in p_strict_partitions(n, OddPrime::THREE) {
                assert!(l.is_p_strict(OddPrime::THREE));
                assert_eq!(l.size(), n);
            }
        }
    }

    #[test]
    fn p_regular() {
        assert!(pt("2,1").is_p_regular(OddPrime::THREE));
        assert!(!pt("1,1,1").is_p_regular(OddPrime::THREE));
        assert!(pt("2,2,1,1").is_p_regular(OddPrime::THREE));
    }
}
