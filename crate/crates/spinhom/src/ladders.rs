//! Residues, ladders, regularisation and the per-ladder node statistics.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::branching::{boundary_nodes, Mode};
use crate::error::Result;
use crate::partitions::{OddPrime, Partition};

/// A node of a Young diagram, 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Node {
    pub row: usize,
    pub col: usize,
}

impl Node {
    pub fn new(row: usize, col: usize) -> Self {
        debug_assert!(row >= 1 && col >= 1);
        Node { row, col }
    }

    pub fn residue(self, p: OddPrime) -> usize {
        residue(self.row, self.col, p)
    }

    pub fn ladder(self, p: OddPrime) -> usize {
        ladder_index(self.row, self.col, p)
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

/// Residue of node `(r, c)`: the folded column residue, independent of `r`.
pub fn residue(_r: usize, c: usize, p: OddPrime) -> usize {
    let p = p.get();
    let b = (c - 1) % p;
    b.min(p - 1 - b)
}

pub fn ladder_index(r: usize, c: usize, p: OddPrime) -> usize {
    let p = p.get();
    (p - 1) * c / p + (p - 1) * (r - 1)
}

/// Nodes of `λ` in row order.
pub fn nodes(lambda: &Partition) -> impl Iterator<Item = Node> + '_ {
    lambda
        .parts()
        .iter()
        .enumerate()
        .flat_map(|(i, &len)| (1..=len).map(move |c| Node::new(i + 1, c)))
}

/// Residue counts, indexed by residue `0..=(p-1)/2`.
pub fn content(lambda: &Partition, p: OddPrime) -> Result<Vec<usize>> {
    lambda.require_p_strict(p)?;
    Ok(content_unchecked(lambda, p))
}

pub(crate) fn content_unchecked(lambda: &Partition, p: OddPrime) -> Vec<usize> {
    let mut counts = vec![0; p.half() + 1];
    for &len in lambda.parts() {
        for c in 1..=len {
            counts[residue(1, c, p)] += 1;
        }
    }
    counts
}

/// Number of nodes of non-zero residue; `λ` is p-odd when this is odd.
pub fn nonzero_residue_nodes(lambda: &Partition, p: OddPrime) -> usize {
    let c = content_unchecked(lambda, p);
    c[1..].iter().sum()
}

/// The nodes of ladder `l` with column at most `max_col`, leftmost first.
pub fn ladder_nodes(l: usize, p: OddPrime, max_col: usize) -> Vec<Node> {
    let q = p.get();
    let mut out = Vec::new();
    for r in 1..=l / (q - 1) + 1 {
        let m = l - (q - 1) * (r - 1);
        // columns c >= 1 with floor((q-1)c/q) = m
        let lo = (m * q).div_ceil(q - 1).max(1);
        let hi = ((m + 1) * q - 1) / (q - 1);
        for c in lo..=hi.min(max_col) {
            out.push(Node::new(r, c));
        }
    }
    out.sort_by_key(|n| (n.col, n.row));
    out
}

pub fn ladder_counts(lambda: &Partition, p: OddPrime) -> BTreeMap<usize, usize> {
    let mut counts = BTreeMap::new();
    for node in nodes(lambda) {
        *counts.entry(node.ladder(p)).or_insert(0) += 1;
    }
    counts
}

/// Moves every node to the leftmost positions of its ladder.
pub fn regularize(lambda: &Partition, p: OddPrime) -> Result<Partition> {
    lambda.require_p_strict(p)?;
    Ok(regularize_unchecked(lambda, p))
}

pub(crate) fn regularize_unchecked(lambda: &Partition, p: OddPrime) -> Partition {
    let mut rows: Vec<usize> = Vec::new();
    for (l, k) in ladder_counts(lambda, p) {
        for node in ladder_nodes(l, p, usize::MAX).into_iter().take(k) {
            if rows.len() < node.row {
                rows.resize(node.row, 0);
            }
            rows[node.row - 1] = rows[node.row - 1].max(node.col);
        }
    }
    let result = Partition::new(rows).expect("regularisation yields a partition");
    debug_assert_eq!(result.size(), lambda.size());
    result
}

/// Per-ladder node statistics.
///
/// `add`/`rem` count strictly addable/removable nodes and are `None` unless
/// `λ` is strict; `badd`/`brem` use the p-strict sense. `str` is defined for
/// `l ≡ 0 mod p-1` and `zz` for `l ≢ 0 mod (p-1)/2`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LadderStats {
    pub l: i64,
    pub lad: usize,
    pub add: Option<usize>,
    pub badd: usize,
    pub rem: Option<usize>,
    pub brem: usize,
    pub str_: Option<usize>,
    pub zz: Option<usize>,
}

/// Every statistic for every ladder of one partition.
#[derive(Clone, Debug)]
pub struct LadderTable {
    p: OddPrime,
    strict: bool,
    lad: Vec<usize>,
    add: Vec<usize>,
    badd: Vec<usize>,
    rem: Vec<usize>,
    brem: Vec<usize>,
    str_: Vec<usize>,
    zz: Vec<usize>,
}

impl LadderTable {
    pub fn new(lambda: &Partition, p: OddPrime) -> Result<Self> {
        lambda.require_p_strict(p)?;
        let top = ladder_index(lambda.len() + 2, lambda.row(1) + 2, p) + 1;
        let strict = lambda.is_strict();
        let mut t = LadderTable {
            p,
            strict,
            lad: vec![0; top],
            add: vec![0; top],
            badd: vec![0; top],
            rem: vec![0; top],
            brem: vec![0; top],
            str_: vec![0; top],
            zz: vec![0; top],
        };
        for node in nodes(lambda) {
            t.lad[node.ladder(p)] += 1;
        }
        for i in 0..=p.half() {
            let (a, r) = boundary_nodes(lambda, i, p, Mode::PStrict)?;
            a.iter().for_each(|n| t.badd[n.ladder(p)] += 1);
            r.iter().for_each(|n| t.brem[n.ladder(p)] += 1);
            if strict {
                let (a, r) = boundary_nodes(lambda, i, p, Mode::Strict)?;
                a.iter().for_each(|n| t.add[n.ladder(p)] += 1);
                r.iter().for_each(|n| t.rem[n.ladder(p)] += 1);
            }
        }
        for r in 1..=lambda.len() {
            let c = lambda.row(r);
            let l = ladder_index(r, c, p);
            if lambda.row(r + 1) + 1 == c {
                t.zz[l] += 1;
                if r >= 2 && c % p.get() == 0 && lambda.row(r - 1) == c + 1 {
                    t.str_[l] += 1;
                }
            }
        }
        Ok(t)
    }

    fn get(v: &[usize], l: i64) -> usize {
        if l < 0 {
            0
        } else {
            v.get(l as usize).copied().unwrap_or(0)
        }
    }

    /// One past the largest ladder that can carry a non-zero statistic.
    pub fn span(&self) -> i64 {
        self.lad.len() as i64
    }

    pub fn lad(&self, l: i64) -> usize {
        Self::get(&self.lad, l)
    }
    pub fn badd(&self, l: i64) -> usize {
        Self::get(&self.badd, l)
    }
    pub fn brem(&self, l: i64) -> usize {
        Self::get(&self.brem, l)
    }
    pub fn add(&self, l: i64) -> Option<usize> {
        self.strict.then(|| Self::get(&self.add, l))
    }
    pub fn rem(&self, l: i64) -> Option<usize> {
        self.strict.then(|| Self::get(&self.rem, l))
    }
    pub fn str_(&self, l: i64) -> Option<usize> {
        let q = self.p.get() as i64 - 1;
        (l.rem_euclid(q) == 0).then(|| Self::get(&self.str_, l))
    }
    pub fn zz(&self, l: i64) -> Option<usize> {
        let h = self.p.half() as i64;
        (l.rem_euclid(h) != 0).then(|| Self::get(&self.zz, l))
    }

    pub fn stats(&self, l: i64) -> LadderStats {
        LadderStats {
            l,
            lad: self.lad(l),
            add: self.add(l),
            badd: self.badd(l),
            rem: self.rem(l),
            brem: self.brem(l),
            str_: self.str_(l),
            zz: self.zz(l),
        }
    }
}

pub fn ladder_stats(lambda: &Partition, p: OddPrime, l: i64) -> Result<LadderStats> {
    Ok(LadderTable::new(lambda, p)?.stats(l))
}

/// One evaluated instance of a ladder identity (or inequality).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub identity: String,
    pub l: i64,
    pub lhs: i64,
    pub rhs: i64,
    pub ok: bool,
}

/// Evaluates every applicable ladder identity at every relevant ladder.
///
/// `arladd1` and `lads` need `λ` p-strict; `lads-strict` needs `λ` strict;
/// `zzlem` and `zzreglem` only exist for `p >= 5`.
pub fn check_ladder_identities(lambda: &Partition, p: OddPrime) -> Result<Vec<IdentityCheck>> {
    let t = LadderTable::new(lambda, p)?;
    let reg = if p.get() >= 5 { Some(LadderTable::new(&regularize_unchecked(lambda, p), p)?) } else { None };
    let pp = p.get() as i64;
    let (q, h) = (pp - 1, p.half() as i64);
    let lad = |l: i64| t.lad(l) as i64;
    let mut out = Vec::new();
    let mut push = |identity: &str, l: i64, lhs: i64, rhs: i64, ok: bool| {
        out.push(IdentityCheck { identity: identity.into(), l, lhs, rhs, ok });
    };
    for l in 0..t.span() + q {
        let delta = (l == 0) as i64;
        if l % q == h {
            let lhs = t.brem(l - q) as i64 - t.badd(l) as i64;
            let rhs = if pp == 3 {
                lad(l) - lad(l - 1) + lad(l - 2)
            } else {
                lad(l) - lad(l - 1) - lad(l - pp + 2) + lad(l - pp + 1)
            };
            push("arladd1", l, lhs, rhs, lhs == rhs);
        }
        if l % q == 0 {
            // at p = 3 the two middle terms name the same ladder
            let base = lad(l) - 2 * lad(l - 1) - 2 * lad(l - pp + 2) + lad(l - pp + 1) - delta;
            let lhs = t.brem(l - q) as i64 - t.badd(l) as i64;
            push("lads", l, lhs, base, lhs == base);
            if let (Some(rem), Some(add)) = (t.rem(l - q), t.add(l)) {
                let str_l = t.str_(l).unwrap() as i64;
                let str_k = t.str_(l - q).unwrap() as i64;
                let lhs = rem as i64 - add as i64;
                let rhs = base - str_l + str_k;
                push("lads-strict", l, lhs, rhs, lhs == rhs);
            }
        }
        if let Some(reg) = &reg {
            if l % h != 0 {
                let k = l - (2 * l) % q;
                let zz = |m: i64| t.zz(m).unwrap() as i64;
                let lhs = t.brem(k) as i64 - t.badd(l) as i64;
                let rhs = if l % q != 1 {
                    lad(l) - lad(l - 1) - lad(k + 1) + lad(k) - zz(k) + zz(l - q)
                } else {
                    lad(l) - lad(l - 1) + lad(k) - zz(k) + zz(l - q)
                };
                push("zzlem", l, lhs, rhs, lhs == rhs);
                let (a, b) = (reg.zz(l).unwrap() as i64, zz(l));
                push("zzreglem", l, a, b, a <= b);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::p_strict_partitions;

    fn pt(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn row_string(lambda: &Partition, r: usize, f: impl Fn(usize, usize) -> usize) -> String {
        (1..=lambda.row(r)).map(|c| f(r, c).to_string()).collect()
    }

    #[test]
    fn residue_diagram_p5() {
        let p = OddPrime::FIVE;
        let l = pt("8,7,3");
        let rows: Vec<String> = (1..=3).map(|r| row_string(&l, r, |r, c| residue(r, c, p))).collect();
        assert_eq!(rows, ["01210012", "0121001", "012"]);
        assert_eq!(residue(1, 4, p), 1);
        assert_eq!(nonzero_residue_nodes(&l, p), 11);
    }

    #[test]
    fn ladder_diagram_p3() {
        let p = OddPrime::THREE;
        let l = pt("12,7,2");
        let rows: Vec<String> = (1..=3).map(|r| row_string(&l, r, |r, c| ladder_index(r, c, p))).collect();
        assert_eq!(rows, ["012234456678", "2344566", "45"]);
        assert_eq!(ladder_index(1, 1, p), 0);
        assert_eq!(ladder_index(2, 1, p), 2);
        assert_eq!(ladder_index(1, 5, p), 3);
    }

    #[test]
    fn residues_small() {
        assert_eq!(residue(2, 1, OddPrime::THREE), 0);
        assert_eq!(residue(1, 3, OddPrime::THREE), 0);
        assert_eq!(content(&pt("2,1"), OddPrime::THREE).unwrap(), vec![2, 1]);
        assert_eq!(content(&Partition::empty(), OddPrime::THREE).unwrap(), vec![0, 0]);
        assert!(content(&pt("2,2"), OddPrime::THREE).is_err());
    }

    #[test]
    fn ladders_share_a_residue() {
        for p in [OddPrime::THREE, OddPrime::FIVE, OddPrime::SEVEN] {
            let mut seen = BTreeMap::new();
            for r in 1..=40 {
                for c in 1..=40 {
                    let res = *seen.entry(ladder_index(r, c, p)).or_insert(residue(r, c, p));
                    assert_eq!(res, residue(r, c, p));
                }
            }
        }
    }

    #[test]
    fn ladder_nodes_match_index() {
        for p in [OddPrime::THREE, OddPrime::FIVE, OddPrime::SEVEN] {
            for l in 0..30 {
                let mut brute: Vec<Node> = (1..=30)
                    .flat_map(|r| (1..=60).map(move |c| Node::new(r, c)))
                    .filter(|n| n.ladder(p) == l)
                    .collect();
                brute.sort_by_key(|n| (n.col, n.row));
                assert_eq!(ladder_nodes(l, p, usize::MAX), brute);
            }
        }
    }

    #[test]
    fn regularisation_example() {
        let p = OddPrime::THREE;
        assert_eq!(regularize(&pt("12,7,2"), p).unwrap(), pt("8,6,4,2,1"));
        assert_eq!(regularize(&pt("8,6,4,2,1"), p).unwrap(), pt("8,6,4,2,1"));
        assert_eq!(regularize(&pt("3"), p).unwrap(), pt("2,1"));
    }

    /// Fills each ladder greedily from an explicit node list, leftmost first.
    fn reg_oracle(lambda: &Partition, p: OddPrime) -> Partition {
        let mut all: Vec<Node> = (1..=40).flat_map(|r| (1..=60).map(move |c| Node::new(r, c))).collect();
        all.sort_by_key(|n| (n.ladder(p), n.col));
        let mut rows = vec![0usize; 41];
        let mut counts = ladder_counts(lambda, p);
        for n in all {
            if let Some(k) = counts.get_mut(&n.ladder(p)) {
                if *k > 0 {
                    *k -= 1;
                    rows[n.row - 1] += 1;
                }
            }
        }
        Partition::from_unsorted(rows)
    }

    #[test]
    fn regularisation_matches_greedy_fill() {
        let p = OddPrime::THREE;
        assert_eq!(reg_oracle(&pt("9,7"), p), regularize(&pt("9,7"), p).unwrap());
        for n in 0..=14 {
            for l in p_strict_partitions(n, p) {
                assert_eq!(reg_oracle(&l, p), regularize(&l, p).unwrap(), "{l}");
            }
        }
    }

    #[test]
    fn regularisation_properties() {
        for (p, max) in [(OddPrime::THREE, 20), (OddPrime::FIVE, 16)] {
            for n in 0..=max {
                for l in p_strict_partitions(n, p) {
                    let r = regularize(&l, p).unwrap();
                    assert!(r.is_restricted(p), "{l} -> {r}");
                    assert_eq!(ladder_counts(&l, p), ladder_counts(&r, p));
                    assert_eq!(regularize(&r, p).unwrap(), r);
                    if l.is_restricted(p) {
                        assert_eq!(r, l);
                    }
                }
            }
        }
    }

    #[test]
    fn stats_examples() {
        let p = OddPrime::THREE;
        let t = LadderTable::new(&pt("5,4,3,2,1"), p).unwrap();
        let l51 = ladder_index(5, 1, p) as i64;
        assert!(t.rem(l51).unwrap() >= 1);
        assert_eq!(t.lad(-1), 0);
        let e = ladder_stats(&Partition::empty(), p, 4).unwrap();
        assert_eq!((e.lad, e.badd, e.brem, e.add, e.rem), (0, 0, 0, Some(0), Some(0)));
        let t = LadderTable::new(&pt("9,5,4,2"), p).unwrap();
        let zero_adds: usize = (0..t.span()).filter(|l| l % 2 == 0).map(|l| t.add(l).unwrap()).sum();
        assert_eq!(zero_adds, 5);
    }

    #[test]
    fn identities_on_small_cases() {
        let p = OddPrime::THREE;
        assert!(check_ladder_identities(&Partition::empty(), p).unwrap().iter().all(|c| c.ok));
        let checks = check_ladder_identities(&pt("3,2,1"), p).unwrap();
        let lads0 = checks.iter().find(|c| c.identity == "lads" && c.l == 0).unwrap();
        assert!(lads0.ok);
        assert!(checks.iter().all(|c| c.ok), "{checks:?}");
    }

    #[test]
    fn identities_exhaustive_small() {
        for (p, max) in [(OddPrime::THREE, 16), (OddPrime::FIVE, 13), (OddPrime::SEVEN, 12)] {
            for n in 0..=max {
                for l in p_strict_partitions(n, p) {
                    for c in check_ladder_identities(&l, p).unwrap() {
                        assert!(c.ok, "p={p} {l}: {c:?}");
                    }
                }
            }
        }
    }
}
