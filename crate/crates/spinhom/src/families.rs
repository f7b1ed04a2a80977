//! Explicit partition families in characteristic 3: the degree-ratio pairs
//! `(λ_(l), μ_(l))`, the `σ(l)`/`τ(l)` extremal ladder, and the `(a_1,…,a_{l+1})`
//! perturbations of the staircase `(3l−1, 3l−4, …, 2)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dimensions::{ddeg, ddeg_ratio, degree_witness};
use crate::error::{Error, Result};
use crate::ladders::regularize;
use crate::partitions::{step3, OddPrime, Partition};

const P: OddPrime = OddPrime::THREE;

/// The paired degree families. The numbering skips 3.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DegreeFamily {
    D1,
    D2,
    D4,
    D5,
    D6,
    D7,
    D8,
    D9,
    D10,
    D11,
    D12,
}

impl DegreeFamily {
    pub const ALL: [DegreeFamily; 11] = [
        DegreeFamily::D1,
        DegreeFamily::D2,
        DegreeFamily::D4,
        DegreeFamily::D5,
        DegreeFamily::D6,
        DegreeFamily::D7,
        DegreeFamily::D8,
        DegreeFamily::D9,
        DegreeFamily::D10,
        DegreeFamily::D11,
        DegreeFamily::D12,
    ];

    pub fn number(self) -> usize {
        match self {
            DegreeFamily::D1 => 1,
            DegreeFamily::D2 => 2,
            DegreeFamily::D4 => 4,
            DegreeFamily::D5 => 5,
            DegreeFamily::D6 => 6,
            DegreeFamily::D7 => 7,
            DegreeFamily::D8 => 8,
            DegreeFamily::D9 => 9,
            DegreeFamily::D10 => 10,
            DegreeFamily::D11 => 11,
            DegreeFamily::D12 => 12,
        }
    }

    pub fn id(self) -> String {
        format!("deglem{}", self.number())
    }

    pub fn defined_at(self, l: usize) -> bool {
        match self {
            DegreeFamily::D1 | DegreeFamily::D2 | DegreeFamily::D11 => l >= 3,
            DegreeFamily::D4 => l >= 7,
            DegreeFamily::D5 => l >= 4,
            DegreeFamily::D6 => l == 4 || l >= 7,
            DegreeFamily::D7 => l >= 6,
            DegreeFamily::D8 => l >= 2,
            DegreeFamily::D9 | DegreeFamily::D12 => l >= 1,
            DegreeFamily::D10 => l >= 6,
        }
    }

    /// `(λ_(l), μ_(l))`.
    pub fn pair(self, l: usize) -> Result<(Partition, Partition)> {
        if !self.defined_at(l) {
            return Err(Error::FamilyRange { id: self.id(), l });
        }
        let l = l as i64;
        let (lam, mu) = match self {
            DegreeFamily::D1 => (d1_lambda(l), build(&[&[3 * l + 4], &step3(3 * l - 2, 7), &[3, 1]])),
            DegreeFamily::D2 => (build(&[&step3(3 * l, 3)]), build(&[&[3 * l - 1, 3 * l - 2], &step3(3 * l - 6, 3)])),
            DegreeFamily::D4 => (
                build(&[&[3 * l - 1, 3 * l - 2], &step3(3 * l - 6, 3)]),
                build(&[&[3 * l - 1, 3 * l - 2, 3 * l - 7, 3 * l - 8], &step3(3 * l - 12, 3)]),
            ),
            DegreeFamily::D5 | DegreeFamily::D6 => {
                let top = if self == DegreeFamily::D5 { 3 * l } else { 3 * l + 1 };
                (
                    build(&[&[top, 3 * l - 3, 3 * l - 7, 3 * l - 8], &step3(3 * l - 12, 3)]),
                    build(&[&[top, 3 * l - 3, 3 * l - 5], &step3(3 * l - 9, 6), &[2]]),
                )
            }
            DegreeFamily::D7 => (
                build(&[&[3 * l - 1, 3 * l - 2, 3 * l - 7, 3 * l - 8], &step3(3 * l - 12, 3)]),
                build(&[&[3 * l - 1, 3 * l - 2, 3 * l - 6, 3 * l - 8], &step3(3 * l - 12, 6), &[2]]),
            ),
            DegreeFamily::D8 => {
                let lam = build(&[&[3 * l, 3 * l - 4, 3 * l - 5], &step3(3 * l - 9, 3)]);
                let mu = if l <= 7 {
                    build(&[&[3 * l - 1, 3 * l - 2], &step3(3 * l - 6, 3)])
                } else {
                    build(&[&[3 * l, 3 * l - 3, 3 * l - 5], &step3(3 * l - 9, 6), &[2]])
                };
                (lam, mu)
            }
            DegreeFamily::D9 => (
                build(&[&[6 * l + 6], &step3(6 * l + 4, 3 * l + 7), &[3 * l + 3], &step3(3 * l + 1, 4)]),
                build(&[&[6 * l + 6], &step3(6 * l + 4, 3 * l + 4), &[3 * l], &step3(3 * l - 2, 4)]),
            ),
            DegreeFamily::D10 => {
                let head = step3(6 * l - 4, 3 * l + 5);
                let tail = step3(3 * l - 4, 2);
                (
                    build(&[&head, &[3 * l + 2, 3 * l], &tail]),
                    build(&[&head, &[3 * l + 3, 3 * l - 1], &tail]),
                )
            }
            DegreeFamily::D11 => {
                let lam = build(&[&[3 * l], &step3(3 * l - 2, 4), &[3, 1]]);
                let mu = if l >= 4 { d1_lambda(l) } else { build(&[&[13, 7, 4]]) };
                (lam, mu)
            }
            DegreeFamily::D12 => (build(&[&[3 * l], &step3(3 * l - 2, 1)]), build(&[&step3(3 * l + 1, 4)])),
        };
        debug_assert_eq!(lam.size(), mu.size());
        Ok((lam, mu))
    }

    /// The closed form for `R_{l+1}/R_l` with `R_l = ddeg λ_(l) / ddeg μ_(l)`, or
    /// for `R_l` itself when [`DegreeFamily::ratio_is_direct`].
    pub fn closed_form(self, l: usize) -> Option<BigRational> {
        let l = l as i64;
        let f = |num: &[(i64, u32)], den: &[(i64, u32)]| Some(quotient(num, den));
        match self {
            DegreeFamily::D1 if l >= 3 => f(&[(l + 1, 1), (3 * l + 1, 1), (3 * l + 8, 1)], &[(l, 1), (3 * l + 5, 1), (3 * l + 7, 1)]),
            DegreeFamily::D2 if l >= 3 => {
                f(&[(l, 2), (6 * l - 5, 1), (6 * l - 1, 1)], &[(2 * l - 1, 2), (3 * l - 2, 1), (3 * l + 2, 1)])
            }
            DegreeFamily::D4 if l >= 7 => f(
                &[(l - 2, 2), (2 * l - 1, 2), (6 * l - 17, 1), (6 * l - 13, 1), (6 * l - 11, 1), (6 * l - 7, 1)],
                &[(2 * l - 5, 2), (2 * l - 3, 2), (3 * l - 8, 1), (3 * l - 4, 1), (6 * l - 5, 1), (6 * l - 1, 1)],
            ),
            DegreeFamily::D5 if l >= 4 => f(
                &[
                    (l - 3, 1),
                    (l, 3),
                    (2 * l - 5, 2),
                    (2 * l - 1, 1),
                    (3 * l - 7, 1),
                    (3 * l - 5, 1),
                    (3 * l - 4, 2),
                    (3 * l + 5, 1),
                    (6 * l - 11, 2),
                    (6 * l - 7, 1),
                    (6 * l + 1, 1),
                ],
                &[
                    (l - 2, 4),
                    (l + 2, 1),
                    (2 * l - 3, 2),
                    (3 * l - 8, 1),
                    (3 * l - 1, 1),
                    (3 * l + 1, 2),
                    (6 * l - 17, 1),
                    (6 * l - 13, 1),
                    (6 * l - 5, 2),
                    (6 * l - 1, 1),
                ],
            ),
            DegreeFamily::D6 if l >= 7 => f(
                &[
                    (l - 3, 1),
                    (l - 1, 2),
                    (l, 1),
                    (l + 2, 1),
                    (2 * l - 5, 2),
                    (3 * l - 7, 1),
                    (3 * l - 5, 1),
                    (3 * l - 1, 2),
                    (3 * l + 1, 1),
                    (3 * l + 4, 1),
                    (6 * l - 11, 2),
                    (6 * l - 7, 1),
                ],
                &[
                    (l - 2, 4),
                    (l + 1, 2),
                    (2 * l - 3, 1),
                    (3 * l - 8, 1),
                    (3 * l - 2, 3),
                    (3 * l + 7, 1),
                    (6 * l - 17, 1),
                    (6 * l - 13, 1),
                    (6 * l - 5, 1),
                    (6 * l - 1, 1),
                ],
            ),
            DegreeFamily::D7 if l >= 6 => f(
                &[
                    (l - 4, 1),
                    (l - 1, 3),
                    (l + 1, 1),
                    (2 * l - 5, 2),
                    (3 * l - 10, 1),
                    (3 * l - 8, 1),
                    (3 * l - 4, 1),
                    (3 * l - 1, 1),
                    (3 * l + 2, 1),
                    (6 * l - 1, 1),
                ],
                &[
                    (l - 3, 1),
                    (l - 2, 2),
                    (l, 3),
                    (2 * l - 1, 1),
                    (3 * l - 11, 2),
                    (3 * l - 5, 1),
                    (3 * l + 5, 1),
                    (6 * l - 13, 1),
                    (6 * l - 7, 1),
                ],
            ),
            DegreeFamily::D8 if l >= 8 => f(
                &[
                    (l - 3, 1),
                    (l, 3),
                    (2 * l - 3, 2),
                    (2 * l + 1, 1),
                    (3 * l - 7, 1),
                    (3 * l - 5, 1),
                    (3 * l - 2, 2),
                    (3 * l - 1, 1),
                    (3 * l + 5, 1),
                ],
                &[
                    (l - 2, 1),
                    (l - 1, 3),
                    (l + 2, 1),
                    (2 * l - 1, 2),
                    (3 * l - 8, 2),
                    (3 * l + 1, 3),
                    (6 * l - 7, 1),
                ],
            ),
            DegreeFamily::D9 if l >= 1 => f(
                &[(l + 1, 1), (3 * l - 1, 1), (6 * l + 7, 1), (9 * l + 8, 1), (9 * l + 10, 1)],
                &[(3 * l, 1), (l + 2, 1), (6 * l + 1, 1), (9 * l + 7, 2)],
            ),
            DegreeFamily::D10 if l >= 6 => f(
                &[(l + 1, 1), (3 * l - 4, 1), (6 * l - 1, 1), (9 * l - 1, 1)],
                &[(l - 1, 1), (3 * l - 1, 1), (6 * l + 5, 1), (9 * l - 2, 1)],
            ),
            DegreeFamily::D11 if l >= 4 => f(
                &[(l, 1), (3 * l + 7, 1), (3 * l + 10, 1), (6 * l + 5, 1)],
                &[(l + 2, 1), (3 * l + 2, 1), (3 * l + 11, 1), (6 * l + 1, 1)],
            ),
            DegreeFamily::D12 if l >= 1 => {
                let num: Vec<(i64, u32)> = step3(6 * l - 1, 3 * l + 5).into_iter().map(|x| (x, 1)).collect();
                let den: Vec<(i64, u32)> = step3(6 * l - 2, 3 * l + 4).into_iter().map(|x| (x, 1)).collect();
                f(&num, &den)
            }
            _ => None,
        }
    }

    pub fn ratio_is_direct(self) -> bool {
        matches!(self, DegreeFamily::D9 | DegreeFamily::D10 | DegreeFamily::D12)
    }

    /// Whether `λ_(l)` and `μ_(l)` share a regularisation.
    pub fn claims_same_reg(self) -> bool {
        !matches!(self, DegreeFamily::D12)
    }
}

impl fmt::Display for DegreeFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "deglem{}", self.number())
    }
}

impl FromStr for DegreeFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        DegreeFamily::ALL
            .into_iter()
            .find(|d| d.id() == s)
            .ok_or_else(|| Error::UnknownFamily(s.to_string()))
    }
}

fn d1_lambda(l: i64) -> Partition {
    build(&[&step3(3 * l + 1, 10), &[6, 4, 3, 1]])
}

/// Concatenates and validates; every family member is strict with positive parts.
fn build(chunks: &[&[i64]]) -> Partition {
    let parts: Vec<usize> = chunks
        .iter()
        .flat_map(|c| c.iter())
        .map(|&x| usize::try_from(x).ok().filter(|&x| x > 0).expect("family part must be positive"))
        .collect();
    let lam = Partition::new(parts).expect("family parts must decrease");
    debug_assert!(lam.is_strict());
    lam
}

fn quotient(num: &[(i64, u32)], den: &[(i64, u32)]) -> BigRational {
    let prod = |fs: &[(i64, u32)]| fs.iter().fold(BigInt::one(), |acc, &(b, e)| acc * BigInt::from(b).pow(e));
    BigRational::new(prod(num), prod(den))
}

/// `σ(l) = (3l−2, 3l−5, …, 7, 6, 4, 3, 1)`.
pub fn sigma(l: usize) -> Partition {
    let l = l as i64;
    build(&[&step3(3 * l - 2, 7), &[6, 4, 3, 1]])
}

/// `τ(l) = (3l−1, 3l−4, …, 8, 6, 5, 3, 2)`.
pub fn tau(l: usize) -> Partition {
    let l = l as i64;
    build(&[&step3(3 * l - 1, 8), &[6, 5, 3, 2]])
}

/// Named families, as printed by the command-line `family` subcommand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Degree(DegreeFamily),
    Sigma,
    Tau,
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sigma" | "σ" => Ok(Family::Sigma),
            "tau" | "τ" => Ok(Family::Tau),
            _ => s.parse().map(Family::Degree),
        }
    }
}

/// The members of `family` at `l`: one partition for `σ`/`τ`, `[λ, μ]` otherwise.
pub fn family_members(family: &Family, l: usize) -> Result<Vec<Partition>> {
    match family {
        Family::Sigma | Family::Tau if l == 0 => Err(Error::FamilyRange { id: format!("{family:?}").to_lowercase(), l }),
        Family::Sigma => Ok(vec![sigma(l)]),
        Family::Tau => Ok(vec![tau(l)]),
        Family::Degree(d) => d.pair(l).map(|(a, b)| vec![a, b]),
    }
}

/// All `a ∈ {0,1,2}^{l+1}` satisfying the admissibility rules, with the
/// resulting strict `λ_r = 3(l−r)+2+a_r`.
pub fn staircase_perturbations(l: usize) -> Vec<(Vec<u8>, Partition)> {
    fn go(l: usize, a: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        let r = a.len() + 1;
        if r == l + 2 {
            let last_zero = a[l] == 0;
            if !last_zero && a[3..].iter().any(|&x| x != 1) {
                out.push(a.clone());
            }
            return;
        }
        let prev = a.last().copied();
        for v in 0..=2u8 {
            // a_{r-1} = 0 forces a_r = 2, and a_r = 2 needs a_{r-1} = 0
            if prev == Some(0) && v != 2 {
                continue;
            }
            if v == 2 && r >= 2 && prev != Some(0) {
                continue;
            }
            a.push(v);
            go(l, a, out);
            a.pop();
        }
    }
    if l < 3 {
        return vec![];
    }
    let mut tuples = Vec::new();
    go(l, &mut Vec::with_capacity(l + 1), &mut tuples);
    tuples
        .into_iter()
        .map(|a| {
            let parts: Vec<i64> = a.iter().enumerate().map(|(k, &x)| 3 * (l - k) as i64 - 1 + x as i64).collect();
            let lam = build(&[&parts.into_iter().filter(|&x| x > 0).collect::<Vec<_>>()]);
            (a, lam)
        })
        .collect()
}

/// One checked claim: `lhs` against `rhs`, rendered for TSV output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaRow {
    pub lemma: String,
    pub l: usize,
    pub lhs: String,
    pub rhs: String,
    pub ok: bool,
}

fn row(lemma: String, l: usize, lhs: impl fmt::Display, rhs: impl fmt::Display, ok: bool) -> LemmaRow {
    LemmaRow { lemma, l, lhs: lhs.to_string(), rhs: rhs.to_string(), ok }
}

fn ratio_at(d: DegreeFamily, l: usize) -> Result<BigRational> {
    let (lam, mu) = d.pair(l)?;
    ddeg_ratio(&lam, &mu, P)
}

/// Every claim about the family `d` for `l ≤ max_l`.
pub fn degree_family_rows(d: DegreeFamily, max_l: usize) -> Result<Vec<LemmaRow>> {
    let mut rows = Vec::new();
    let id = d.id();
    for l in (1..=max_l).filter(|&l| d.defined_at(l)) {
        let (lam, mu) = d.pair(l)?;
        if d.claims_same_reg() {
            let (a, b) = (regularize(&lam, P)?, regularize(&mu, P)?);
            let ok = a == b;
            rows.push(row(format!("{id}/reg"), l, a, b, ok));
        }
        let (x, y) = (ddeg(&lam, P)?, ddeg(&mu, P)?);
        let (label, ok) = match d {
            DegreeFamily::D1 if l == 3 => ("ddeg=", x == y),
            DegreeFamily::D12 if l == 1 => ("ddeg=", x == y),
            _ => ("ddeg>", x > y),
        };
        rows.push(row(format!("{id}/{label}"), l, x, y, ok));
        if let Some(expected) = d.closed_form(l) {
            let actual = if d.ratio_is_direct() {
                ratio_at(d, l)?
            } else if d.defined_at(l + 1) {
                ratio_at(d, l + 1)? / ratio_at(d, l)?
            } else {
                continue;
            };
            let ok = actual == expected;
            rows.push(row(format!("{id}/ratio"), l, actual, expected, ok));
        }
    }
    if d == DegreeFamily::D1 && max_l >= 3 {
        let (lam, _) = d.pair(3)?;
        let alt: Partition = build(&[&[13, 7, 4]]);
        let (a, b) = (regularize(&lam, P)?, regularize(&alt, P)?);
        rows.push(row(format!("{id}/reg(13,7,4)"), 3, a.clone(), b.clone(), a == b));
        let (x, y) = (ddeg(&lam, P)?, ddeg(&alt, P)?);
        rows.push(row(format!("{id}/ddeg>(13,7,4)"), 3, x.clone(), y.clone(), x > y));
    }
    Ok(rows)
}

pub fn degree_lemma_rows(max_l: usize) -> Result<Vec<LemmaRow>> {
    let per: Vec<Vec<LemmaRow>> =
        DegreeFamily::ALL.par_iter().map(|&d| degree_family_rows(d, max_l)).collect::<Result<_>>()?;
    Ok(per.into_iter().flatten().collect())
}

/// For each admissible perturbation with `3 ≤ l ≤ max_l`, whether a degree
/// witness exists.
pub fn staircase_witness_rows(max_l: usize) -> Result<Vec<LemmaRow>> {
    let cases: Vec<(usize, Vec<u8>, Partition)> = (3..=max_l)
        .flat_map(|l| staircase_perturbations(l).into_iter().map(move |(a, lam)| (l, a, lam)))
        .collect();
    cases
        .into_par_iter()
        .map(|(l, a, lam)| {
            let w = degree_witness(&lam, P)?;
            let tuple: String = a.iter().map(|x| x.to_string()).collect();
            let rhs = w.as_ref().map_or("none".to_string(), |m| m.to_string());
            Ok(row(format!("0211deg/{tuple}"), l, lam, rhs, w.is_some()))
        })
        .collect()
}
