//! Exhaustive verification suites. Every check yields [`LemmaRow`]s; a row
//! aggregates one claim at one size `l` (a partition size `n`, a family index
//! or a wreath degree `d`), with `lhs` the number of instances examined and
//! `rhs` the failure count followed by the first counterexample.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bars::{bar_core, block_members, reg_preimages, same_block, BlockFilter};
use crate::branching::{eps_drop, extremal, ladder_obstruction, phi_hat, Direction};
use crate::classify::{
    classify_by_rules, homogeneity_obstruction, irreducible_module_list, listed_irreducible_modules, Status,
};
use crate::dimensions::{ddeg, regn_multiplicity, spin_dim};
use crate::error::{Error, Result};
use crate::families::{degree_lemma_rows, sigma, staircase_witness_rows, tau};
pub use crate::families::LemmaRow;
use crate::ladders::{check_ladder_identities, content, regularize};
use crate::partitions::{
    join, p_strict_partitions, partitions_of, scaled_add, step3, strict_partitions, OddPrime, Partition, Repeats,
    SpinParity,
};
use crate::tableaux::{count_sst, enumerate_sst, find_patterned_tableau, residue_word};
use crate::wreath::{bundled_decomp_matrix, wreath_cartan0, wreath_cartan_p};

const P3: OddPrime = OddPrime::THREE;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Suite {
    Ladders,
    Branching,
    Blocks,
    Degrees,
    Tableaux,
    Wreath,
    Classification,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Ladders,
        Suite::Branching,
        Suite::Blocks,
        Suite::Degrees,
        Suite::Tableaux,
        Suite::Wreath,
        Suite::Classification,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Ladders => "ladders",
            Suite::Branching => "branching",
            Suite::Blocks => "blocks",
            Suite::Degrees => "degrees",
            Suite::Tableaux => "tableaux",
            Suite::Wreath => "wreath",
            Suite::Classification => "classification",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse { token: s.to_string(), reason: "unknown suite" })
    }
}

/// `lemma`, `l`, `lhs`, `rhs`, `ok`, tab separated.
pub fn tsv_line(row: &LemmaRow) -> String {
    format!("{}\t{}\t{}\t{}\t{}", row.lemma, row.l, row.lhs, row.rhs, if row.ok { "ok" } else { "FAIL" })
}

pub const TSV_HEADER: &str = "lemma\tl\tlhs\trhs\tok";

/// Applies `check` to every item; `None` means the claim does not apply.
fn exhaustive<T, F>(lemma: &str, l: usize, items: &[T], check: F) -> Result<LemmaRow>
where
    T: fmt::Display + Sync,
    F: Fn(&T) -> Result<Option<bool>> + Sync,
{
    let verdicts: Vec<Option<bool>> = items.par_iter().map(&check).collect::<Result<_>>()?;
    let checked = verdicts.iter().filter(|v| v.is_some()).count();
    let bad: Vec<usize> = (0..items.len()).filter(|&k| verdicts[k] == Some(false)).collect();
    let rhs = match bad.first() {
        None => "0".to_string(),
        Some(&k) => format!("{} first={}", bad.len(), items[k]),
    };
    Ok(LemmaRow { lemma: lemma.to_string(), l, lhs: checked.to_string(), rhs, ok: bad.is_empty() })
}

fn single(lemma: &str, l: usize, lhs: impl fmt::Display, rhs: impl fmt::Display, ok: bool) -> LemmaRow {
    LemmaRow { lemma: lemma.to_string(), l, lhs: lhs.to_string(), rhs: rhs.to_string(), ok }
}

pub fn all_ok(rows: &[LemmaRow]) -> bool {
    rows.iter().all(|r| r.ok)
}

// ladders

const IDENTITIES: [&str; 5] = ["arladd1", "lads", "lads-strict", "zzlem", "zzreglem"];

/// The ladder identities over all p-strict partitions of each `n ≤ max_n`.
pub fn ladder_identity_rows(p: OddPrime, max_n: usize) -> Result<Vec<LemmaRow>> {
    let mut rows = Vec::new();
    for n in 0..=max_n {
        let lams = p_strict_partitions(n, p);
        let checks: Vec<Vec<crate::ladders::IdentityCheck>> =
            lams.par_iter().map(|l| check_ladder_identities(l, p)).collect::<Result<_>>()?;
        for id in IDENTITIES {
            let mut checked = 0;
            let mut bad = Vec::new();
            for (lam, cs) in lams.iter().zip(&checks) {
                let mine: Vec<_> = cs.iter().filter(|c| c.identity == id).collect();
                if mine.is_empty() {
                    continue;
                }
                checked += 1;
                if let Some(c) = mine.iter().find(|c| !c.ok) {
                    bad.push(format!("{lam}@{}", c.l));
                }
            }
            if checked == 0 {
                continue;
            }
            let rhs = bad.first().map_or("0".to_string(), |b| format!("{} first={b}", bad.len()));
            rows.push(single(id, n, checked, rhs, bad.is_empty()));
        }
    }
    Ok(rows)
}

/// `λ^reg` is restricted and has the content of `λ`.
pub fn regularisation_rows(p: OddPrime, max_n: usize) -> Result<Vec<LemmaRow>> {
    (0..=max_n)
        .map(|n| {
            exhaustive("reg", n, &strict_partitions(n), |l| {
                let r = regularize(l, p)?;
                Ok(Some(r.is_restricted(p) && content(&r, p)? == content(l, p)?))
            })
        })
        .collect()
}

// branching

/// At the top residue a ladder obstruction is equivalent to `ε̂_i(λ) > ε_i(λ^reg)`.
pub fn dn1_rows(p: OddPrime, max_n: usize) -> Result<Vec<LemmaRow>> {
    let i = p.half();
    (0..=max_n)
        .map(|n| {
            exhaustive("dn1", n, &strict_partitions(n), |l| {
                Ok(Some(ladder_obstruction(l, i, p)? == eps_drop(l, i, p)?))
            })
        })
        .collect()
}

/// A ladder obstruction implies `ε̂_i(λ) > ε_i(λ^reg)`, at `i = 0` (`dn0`) and
/// at every residue (`dnall`).
pub fn dn_implication_rows(p: OddPrime, max_n: usize) -> Result<Vec<LemmaRow>> {
    let mut rows = Vec::new();
    for n in 0..=max_n {
        let lams = strict_partitions(n);
        rows.push(exhaustive("dn0", n, &lams, |l| Ok(Some(!ladder_obstruction(l, 0, p)? || eps_drop(l, 0, p)?)))?);
        rows.push(exhaustive("dnall", n, &lams, |l| {
            for i in 0..=p.half() {
                if ladder_obstruction(l, i, p)? && !eps_drop(l, i, p)? {
                    return Ok(Some(false));
                }
            }
            Ok(Some(true))
        })?);
    }
    Ok(rows)
}

fn up_zero_one(lambda: &Partition) -> Option<Partition> {
    let a = extremal(lambda, 0, P3, Direction::Up).ok()?.result;
    Some(extremal(&a, 1, P3, Direction::Up).ok()?.result)
}

/// For strict `λ` with no part `≡ 1 (mod 3)`, `(λ^{+0})^{+1}` has no such part,
/// has one more row than `λ`, and ends in 2.
pub fn l110222_rows(max_n: usize) -> Result<Vec<LemmaRow>> {
    let mut rows = Vec::new();
    for n in 0..=max_n {
        let lams: Vec<Partition> =
            strict_partitions(n).into_iter().filter(|l| l.parts().iter().all(|x| x % 3 != 1)).collect();
        rows.push(exhaustive("L110222", n, &lams, |l| {
            Ok(Some(up_zero_one(l).is_some_and(|m| m.parts().iter().all(|x| x % 3 != 1))))
        })?);
        rows.push(exhaustive("L110222_2", n, &lams, |l| {
            Ok(Some(up_zero_one(l).is_some_and(|m| m.len() == l.len() + 1 && m.parts().last() == Some(&2))))
        })?);
    }
    Ok(rows)
}

/// `σ(l)^{+1} = τ(l)` and `τ(l)^{+0} = σ(l+1)`.
pub fn sigma_tau_rows(max_l: usize) -> Result<Vec<LemmaRow>> {
    let show = |r: std::result::Result<Partition, Error>| r.map_or_else(|e| e.to_string(), |m| m.to_string());
    let mut rows = Vec::new();
    for l in 1..=max_l {
        let a = extremal(&sigma(l), 1, P3, Direction::Up).map(|x| x.result);
        let ok = a.as_ref().is_ok_and(|m| *m == tau(l));
        rows.push(single("casefourlem/sigma+1", l, show(a), tau(l), ok));
        let b = extremal(&tau(l), 0, P3, Direction::Up).map(|x| x.result);
        let ok = b.as_ref().is_ok_and(|m| *m == sigma(l + 1));
        rows.push(single("casefourlem/tau+0", l, show(b), sigma(l + 1), ok));
    }
    Ok(rows)
}

// blocks

/// `same_block` agrees with equality of residue content.
pub fn block_content_rows(p: OddPrime, max_n: usize) -> Result<Vec<LemmaRow>> {
    (0..=max_n)
        .map(|n| {
            let lams = p_strict_partitions(n, p);
            exhaustive("block=content", n, &lams, |a| {
                for b in &lams {
                    if same_block(a, b, p)? != (content(a, p)? == content(b, p)?) {
                        return Ok(Some(false));
                    }
                }
                Ok(Some(true))
            })
        })
        .collect()
}

/// The blocks of size `n` partition the p-strict partitions of `n`.
pub fn block_partition_rows(p: OddPrime, max_n: usize) -> Result<Vec<LemmaRow>> {
    let mut rows = Vec::new();
    for n in 0..=max_n {
        let all = p_strict_partitions(n, p);
        let cores: BTreeSet<_> = all.iter().map(|l| bar_core(l, p)).collect::<Result<_>>()?;
        let mut seen = BTreeSet::new();
        let mut total = 0;
        for c in &cores {
            let members = block_members(&c.core, c.weight, p, BlockFilter::PStrict)?;
            total += members.len();
            seen.extend(members);
        }
        let ok = total == all.len() && seen == all.iter().cloned().collect();
        rows.push(single("block-partition", n, total, all.len(), ok));
    }
    Ok(rows)
}

fn staircase(l: usize) -> Partition {
    Partition::new(step3(3 * l as i64 - 2, 1).into_iter().map(|x| x as usize).collect()).expect("staircase")
}

fn triple_parts(beta: &Partition) -> Partition {
    Partition::new(beta.parts().iter().map(|x| 3 * x).collect()).expect("scaled partition")
}

/// The p-strict block of `(3l−2,…,4,1)` of weight `d` is `{(ν+3α)⊔3β}`.
pub fn three_strict_nu_rows(max_l: usize, max_d: usize) -> Result<Vec<LemmaRow>> {
    let mut rows = Vec::new();
    for l in 1..=max_l {
        let nu = staircase(l);
        for d in 0..=max_d.min(l) {
            let mut expected = BTreeSet::new();
            for a in 0..=d {
                for alpha in partitions_of(a, Repeats::Any).into_iter().filter(|x| x.len() <= l) {
                    for beta in partitions_of(d - a, Repeats::Any) {
                        expected.insert(join(&scaled_add(&nu, 3, &alpha)?, &triple_parts(&beta)));
                    }
                }
            }
            let got: BTreeSet<_> = block_members(&nu, d, P3, BlockFilter::PStrict)?.into_iter().collect();
            rows.push(single(&format!("3strictnu/d={d}"), l, got.len(), expected.len(), got == expected));
        }
    }
    Ok(rows)
}

/// The regularisation fibre of `ν⊔(3d)` and its multiplicity sum `2d+1`.
pub fn l210322_rows(max_l: usize, max_d: usize) -> Result<Vec<LemmaRow>> {
    let mut rows = Vec::new();
    for l in 1..=max_l {
        let nu = staircase(l);
        for d in 1..=max_d.min(l) {
            let mu = join(&nu, &Partition::new(vec![3 * d])?);
            let got: BTreeSet<_> = reg_preimages(&mu, P3)?.into_iter().collect();
            let expected: BTreeSet<_> = (0..=d)
                .map(|i| {
                    let tail = if i == 0 { Partition::empty() } else { Partition::new(vec![3 * i])? };
                    Ok(join(&scaled_add(&nu, 3, &Partition::new(vec![1; d - i])?)?, &tail))
                })
                .collect::<Result<_>>()?;
            rows.push(single(&format!("L210322/fibre d={d}"), l, got.len(), expected.len(), got == expected));
            let mut sum = BigUint::ZERO;
            for lam in &got {
                let m = regn_multiplicity(lam, P3)?;
                sum += m.s_to_d * m.p_to_s;
            }
            let ok = sum == BigUint::from(2 * d + 1);
            rows.push(single(&format!("L210322/sum d={d}"), l, sum, 2 * d + 1, ok));
        }
    }
    Ok(rows)
}

// degrees

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::from(1u8), |acc, k| acc * BigUint::from(k))
}

/// `Σ dim² = n!`, with odd `λ` counted at half weight.
pub fn sum_of_squares_rows(max_n: usize) -> Result<Vec<LemmaRow>> {
    (0..=max_n)
        .map(|n| {
            let mut total = BigUint::ZERO;
            for l in strict_partitions(n) {
                let d = spin_dim(&l)?.dim;
                let sq = &d * &d;
                total += match crate::partitions::parity_stats(&l, P3).spin_parity {
                    SpinParity::Even => sq,
                    SpinParity::Odd => sq >> 1,
                };
            }
            let ok = total == factorial(n);
            Ok(single("sum-of-squares", n, total, factorial(n), ok))
        })
        .collect()
}

/// The bar-length count equals the number of enumerated standard shifted tableaux.
pub fn shifted_count_rows(max_n: usize) -> Result<Vec<LemmaRow>> {
    (0..=max_n)
        .map(|n| {
            exhaustive("g=#SST", n, &strict_partitions(n), |l| {
                let counted = enumerate_sst(l)?.count();
                Ok(Some(spin_dim(l)?.g == BigUint::from(counted)))
            })
        })
        .collect()
}

/// `ddeg(λ) · [S^λ : D^{λ^reg}] = dim S^λ`.
pub fn ddeg_rows(p: OddPrime, max_n: usize) -> Result<Vec<LemmaRow>> {
    (0..=max_n)
        .map(|n| {
            exhaustive("ddeg", n, &strict_partitions(n), |l| {
                Ok(Some(ddeg(l, p)? * regn_multiplicity(l, p)?.s_to_d == spin_dim(l)?.dim))
            })
        })
        .collect()
}

// tableaux

/// Streaming enumeration yields distinct standard tableaux, as many as the
/// memoised count.
pub fn sst_rows(max_n: usize) -> Result<Vec<LemmaRow>> {
    (0..=max_n)
        .map(|n| {
            exhaustive("sst-enumeration", n, &strict_partitions(n), |l| {
                let all: Vec<_> = enumerate_sst(l)?.collect();
                let distinct: BTreeSet<_> = all.iter().map(|t| t.rows().to_vec()).collect();
                let ok = all.iter().all(|t| t.is_standard() && t.shape() == *l)
                    && distinct.len() == all.len()
                    && BigUint::from(all.len()) == count_sst(l)?;
                Ok(Some(ok))
            })
        })
        .collect()
}

/// A standard tableau of `ν+(3^d)` extending `ν` whose residue triples are
/// `{0,0,1}`.
pub fn patterned_rows(ls: &[usize], max_d: usize) -> Result<Vec<LemmaRow>> {
    let mut rows = Vec::new();
    for &l in ls {
        let nu = staircase(l);
        for d in 1..=max_d.min(l) {
            let lam = scaled_add(&nu, 3, &Partition::new(vec![1; d])?)?;
            let found = find_patterned_tableau(&lam, &nu, P3)?;
            let ok = found.as_ref().is_some_and(|t| {
                t.shape() == lam
                    && residue_word(t, P3)[nu.size()..].chunks(3).all(|tr| {
                        let mut tr = tr.to_vec();
                        tr.sort_unstable();
                        tr == [0, 0, 1]
                    })
            });
            let lhs = found.map_or("none".to_string(), |t| format!("{:?}", t.rows()));
            rows.push(single(&format!("fsnon0/d={d}"), l, lhs, lam, ok));
        }
    }
    Ok(rows)
}

// wreath

/// `c_{ν,ν} = 2d+1` exactly for `(d)` and `(1^d)`, and exceeds it otherwise.
pub fn cartan0_rows(max_d: usize) -> Result<Vec<LemmaRow>> {
    (1..=max_d)
        .map(|d| {
            let bound = BigUint::from(2 * d + 1);
            exhaustive("L210322_5", d, &partitions_of(d, Repeats::Any), |nu| {
                let c = wreath_cartan0(nu, nu)?;
                let extreme = nu.len() == 1 || nu.len() == d;
                Ok(Some(if extreme { c == bound } else { c > bound }))
            })
        })
        .collect()
}

/// `c̄_{μ,μ} > 2d+1` for every 3-regular `μ ⊢ d`, `3 ≤ d ≤ 6`.
pub fn cartan_p_rows(max_d: usize) -> Result<Vec<LemmaRow>> {
    (3..=max_d.min(6))
        .map(|d| {
            let dm = bundled_decomp_matrix(d).expect("bundled degrees");
            let cols: Vec<Partition> = dm.columns().into_iter().collect();
            let bound = BigUint::from(2 * d + 1);
            exhaustive("L210322_2", d, &cols, |mu| Ok(Some(wreath_cartan_p(mu, &dm)? > bound)))
        })
        .collect()
}

// classification

fn statuses(n: usize) -> Result<Vec<(Partition, Status)>> {
    strict_partitions(n).into_par_iter().map(|l| Ok((l.clone(), classify_by_rules(&l)?.status))).collect()
}

/// Proven homogeneous partitions carry no obstruction certificate.
pub fn soundness_rows(max_n: usize) -> Result<Vec<LemmaRow>> {
    (0..=max_n)
        .map(|n| {
            exhaustive("soundness", n, &strict_partitions(n), |l| {
                if classify_by_rules(l)?.status != Status::ProvenHomogeneous {
                    return Ok(None);
                }
                Ok(Some(homogeneity_obstruction(l)?.is_none()))
            })
        })
        .collect()
}

/// Removing every strictly removable `i`-node from a proven homogeneous
/// partition never gives a proven non-homogeneous one.
pub fn restriction_closure_rows(max_n: usize) -> Result<Vec<LemmaRow>> {
    (0..=max_n)
        .map(|n| {
            exhaustive("T300921", n, &strict_partitions(n), |l| {
                if classify_by_rules(l)?.status != Status::ProvenHomogeneous {
                    return Ok(None);
                }
                for i in 0..=P3.half() {
                    let down = extremal(l, i, P3, Direction::Down)?.result;
                    if classify_by_rules(&down)?.status == Status::ProvenNotHomogeneous {
                        return Ok(Some(false));
                    }
                }
                Ok(Some(true))
            })
        })
        .collect()
}

/// With no strictly addable `i`-node, `λ` and `λ^{−i}` are homogeneous together
/// whenever both verdicts are proven.
pub fn c081021_rows(max_n: usize) -> Result<Vec<LemmaRow>> {
    (0..=max_n)
        .map(|n| {
            exhaustive("C081021", n, &strict_partitions(n), |l| {
                let a = classify_by_rules(l)?.status;
                let mut applied = false;
                for i in 0..=P3.half() {
                    if phi_hat(l, i, P3)? != 0 {
                        continue;
                    }
                    let b = classify_by_rules(&extremal(l, i, P3, Direction::Down)?.result)?.status;
                    if a.is_proven() && b.is_proven() {
                        applied = true;
                        if a.homogeneous() != b.homogeneous() {
                            return Ok(Some(false));
                        }
                    }
                }
                Ok(applied.then_some(true))
            })
        })
        .collect()
}

/// Homogeneous partitions, proven or conjectural, have `l_3 ≤ 1`.
pub fn l3_rows(max_n: usize) -> Result<Vec<LemmaRow>> {
    let mut rows = Vec::new();
    for n in 0..=max_n {
        let all = statuses(n)?;
        let hom: Vec<Partition> = all.into_iter().filter(|(_, s)| s.homogeneous()).map(|(l, _)| l).collect();
        rows.push(exhaustive("l3<=1", n, &hom, |l| Ok(Some(l.l_p(P3) <= 1)))?);
    }
    Ok(rows)
}

/// The irreducible non-special modules derived from the homogeneity verdicts
/// are exactly the listed ones.
pub fn module_list_rows(max_n: usize) -> Result<Vec<LemmaRow>> {
    (1..=max_n)
        .map(|n| {
            let got = irreducible_module_list(n)?;
            let want = listed_irreducible_modules(n);
            Ok(single("mainmodule", n, got.join(" "), want.join(" "), got == want))
        })
        .collect()
}

/// How many partitions of each size get each status.
pub fn status_census(max_n: usize) -> Result<BTreeMap<Status, usize>> {
    let mut out = BTreeMap::new();
    for n in 0..=max_n {
        for (_, s) in statuses(n)? {
            *out.entry(s).or_insert(0) += 1;
        }
    }
    Ok(out)
}

/// Runs `suite` at prime `p` up to size `max_n`. Checks stated only in
/// characteristic 3 run only when `p = 3`; fixed-range checks keep their own
/// ranges.
pub fn run_suite(suite: Suite, p: OddPrime, max_n: usize) -> Result<Vec<LemmaRow>> {
    let three = p == P3;
    let mut rows = Vec::new();
    match suite {
        Suite::Ladders => {
            rows.extend(ladder_identity_rows(p, max_n)?);
            rows.extend(regularisation_rows(p, max_n)?);
        }
        Suite::Branching => {
            rows.extend(dn1_rows(p, max_n)?);
            rows.extend(dn_implication_rows(p, max_n)?);
            if three {
                rows.extend(l110222_rows(max_n)?);
                rows.extend(sigma_tau_rows(8)?);
            }
        }
        Suite::Blocks => {
            rows.extend(block_content_rows(p, max_n.min(16))?);
            rows.extend(block_partition_rows(p, max_n.min(16))?);
            if three {
                rows.extend(three_strict_nu_rows(4, 3)?);
                rows.extend(l210322_rows(4, 3)?);
            }
        }
        Suite::Degrees => {
            rows.extend(sum_of_squares_rows(max_n.min(10))?);
            rows.extend(shifted_count_rows(max_n.min(12))?);
            rows.extend(ddeg_rows(p, max_n)?);
            if three {
                rows.extend(degree_lemma_rows(12)?);
                rows.extend(staircase_witness_rows(8)?);
            }
        }
        Suite::Tableaux => {
            rows.extend(sst_rows(max_n.min(12))?);
            if three {
                rows.extend(patterned_rows(&[3, 4], 3)?);
            }
        }
        Suite::Wreath => {
            rows.extend(cartan0_rows(max_n.min(8))?);
            if three {
                rows.extend(cartan_p_rows(max_n.min(6))?);
            }
        }
        Suite::Classification => {
            if three {
                rows.extend(soundness_rows(max_n)?);
                rows.extend(restriction_closure_rows(max_n)?);
                rows.extend(c081021_rows(max_n)?);
                rows.extend(l3_rows(max_n)?);
                rows.extend(module_list_rows(max_n.min(20))?);
            }
        }
    }
    Ok(rows)
}
