//! p-bar removal, p-bar cores, blocks and regularisation fibres.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ladders::{content_unchecked, ladder_counts, ladder_index};
use crate::partitions::{OddPrime, Partition};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BarRemoval {
    /// Replace part `row` (1-based) by itself minus `p`.
    Decrease(usize),
    /// Delete the two parts in these rows, which sum to `p`.
    DeletePair(usize, usize),
}

/// Every way of removing one p-bar. Equal parts give one entry.
pub fn bar_removals(lambda: &Partition, p: OddPrime) -> Result<Vec<(BarRemoval, Partition)>> {
    lambda.require_p_strict(p)?;
    Ok(bar_removals_unchecked(lambda, p))
}

fn bar_removals_unchecked(lambda: &Partition, p: OddPrime) -> Vec<(BarRemoval, Partition)> {
    let q = p.get();
    let parts = lambda.parts();
    let mut out = Vec::new();
    for (i, &x) in parts.iter().enumerate() {
        if i > 0 && parts[i - 1] == x {
            continue;
        }
        if x >= q && (x % q == 0 || !lambda.contains_part(x - q)) {
            let mut next = parts.to_vec();
            next[i] = x - q;
            out.push((BarRemoval::Decrease(i + 1), Partition::from_unsorted(next)));
        }
    }
    for (i, &x) in parts.iter().enumerate() {
        for (j, &y) in parts.iter().enumerate().skip(i + 1) {
            if x + y == q {
                let next = parts.iter().enumerate().filter(|&(k, _)| k != i && k != j).map(|(_, &v)| v).collect();
                out.push((BarRemoval::DeletePair(i + 1, j + 1), Partition::from_unsorted(next)));
            }
        }
    }
    debug_assert!(out.iter().all(|(_, r)| r.is_p_strict(p)));
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BarCoreResult {
    pub core: Partition,
    pub weight: usize,
}

pub fn bar_core(lambda: &Partition, p: OddPrime) -> Result<BarCoreResult> {
    lambda.require_p_strict(p)?;
    let mut cur = lambda.clone();
    let mut weight = 0;
    while let Some((_, next)) = bar_removals_unchecked(&cur, p).into_iter().next() {
        cur = next;
        weight += 1;
    }
    Ok(BarCoreResult { core: cur, weight })
}

pub fn is_bar_core(lambda: &Partition, p: OddPrime) -> bool {
    lambda.is_p_strict(p) && bar_removals_unchecked(lambda, p).is_empty()
}

/// Whether two p-strict partitions of the same size share a p-bar core.
pub fn same_block(lambda: &Partition, mu: &Partition, p: OddPrime) -> Result<bool> {
    if lambda.size() != mu.size() {
        return Err(Error::SizeMismatch(lambda.size(), mu.size()));
    }
    Ok(bar_core(lambda, p)?.core == bar_core(mu, p)?.core)
}

/// Whether two p-strict partitions have the same residue content.
pub fn same_content(lambda: &Partition, mu: &Partition, p: OddPrime) -> Result<bool> {
    lambda.require_p_strict(p)?;
    mu.require_p_strict(p)?;
    Ok(content_unchecked(lambda, p) == content_unchecked(mu, p))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BlockFilter {
    PStrict,
    Strict,
    Restricted,
}

/// Partitions obtained from `lambda` by adding one p-bar.
fn bar_additions(lambda: &Partition, p: OddPrime) -> Vec<Partition> {
    let q = p.get();
    let mut candidates = Vec::new();
    let mut values: Vec<usize> = lambda.parts().to_vec();
    values.dedup();
    values.push(0);
    for &x in &values {
        let mut next = lambda.parts().to_vec();
        match next.iter().position(|&v| v == x) {
            Some(i) => next[i] = x + q,
            None => next.push(q),
        }
        candidates.push(Partition::from_unsorted(next));
    }
    for a in 1..=q / 2 {
        let mut next = lambda.parts().to_vec();
        next.extend([a, q - a]);
        candidates.push(Partition::from_unsorted(next));
    }
    candidates.retain(|mu| mu.is_p_strict(p) && bar_removals_unchecked(mu, p).iter().any(|(_, r)| r == lambda));
    candidates
}

/// All partitions with p-bar core `core` and weight `d` passing `filter`,
/// in decreasing lexicographic order.
pub fn block_members(core: &Partition, d: usize, p: OddPrime, filter: BlockFilter) -> Result<Vec<Partition>> {
    if !is_bar_core(core, p) {
        return Err(Error::NotBarCore(core.clone(), p.get()));
    }
    let mut level: BTreeSet<Partition> = BTreeSet::from([core.clone()]);
    for _ in 0..d {
        level = level.iter().flat_map(|l| bar_additions(l, p)).collect();
    }
    let keep = |l: &Partition| match filter {
        BlockFilter::PStrict => true,
        BlockFilter::Strict => l.is_strict(),
        BlockFilter::Restricted => l.is_restricted(p),
    };
    Ok(level.into_iter().rev().filter(keep).collect())
}

/// Strict partitions with the same ladder counts as `target`, i.e. the strict
/// `λ` with `λ^reg` equal to the regularisation of `target`.
pub(crate) fn strict_with_ladder_counts(target: &Partition, p: OddPrime) -> Vec<Partition> {
    let counts = ladder_counts(target, p);
    let top = counts.keys().next_back().map_or(0, |&l| l + 1);
    let want: Vec<usize> = (0..top).map(|l| counts.get(&l).copied().unwrap_or(0)).collect();

    struct Search<'a> {
        p: OddPrime,
        want: &'a [usize],
        have: Vec<usize>,
        rows: Vec<usize>,
        out: Vec<Partition>,
    }

    impl Search<'_> {
        fn go(&mut self, remaining: usize) {
            if remaining == 0 {
                if self.have == self.want {
                    self.out.push(Partition::new(self.rows.clone()).unwrap());
                }
                return;
            }
            let q = self.p.get();
            let r = self.rows.len() + 1;
            let max = self.rows.last().map_or(remaining, |&x| x.saturating_sub(1)).min(remaining);
            let mut added = Vec::new();
            for c in 1..=max {
                let l = ladder_index(r, c, self.p);
                if l >= self.want.len() || self.have[l] == self.want[l] {
                    break;
                }
                self.have[l] += 1;
                added.push(l);
                // ladders below (q-1)r receive nothing from later rows
                let lo = (q - 1) * (r - 1);
                let hi = ((q - 1) * r).min(self.want.len());
                if (lo..hi).all(|k| self.have[k] == self.want[k]) || remaining == c {
                    self.rows.push(c);
                    self.go(remaining - c);
                    self.rows.pop();
                }
            }
            for l in added {
                self.have[l] -= 1;
            }
        }
    }

    let mut s = Search { p, want: &want, have: vec![0; top], rows: Vec::new(), out: Vec::new() };
    s.go(target.size());
    s.out.sort_by(|a, b| b.cmp(a));
    s.out
}

/// All strict `λ` with `λ^reg = μ`.
pub fn reg_preimages(mu: &Partition, p: OddPrime) -> Result<Vec<Partition>> {
    mu.require_restricted(p)?;
    Ok(strict_with_ladder_counts(mu, p))
}
