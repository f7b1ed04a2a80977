//! Standard shifted tableaux, their residue words, and the search for
//! tableaux whose tail is filled by row triples.

use std::collections::{HashMap, HashSet};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ladders::{residue, Node};
use crate::partitions::{OddPrime, Partition};

/// Entries stored row by row in unshifted coordinates: `rows[r-1][c-1] = t(r,c)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ShiftedTableau {
    rows: Vec<Vec<usize>>,
}

impl ShiftedTableau {
    /// Checks shape and both standardness inequalities.
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self> {
        let shape = Partition::new(rows.iter().map(Vec::len).collect())?;
        shape.require_strict()?;
        let n = shape.size();
        let mut seen = vec![false; n + 1];
        for row in &rows {
            for &x in row {
                if x == 0 || x > n || std::mem::replace(&mut seen[x], true) {
                    return Err(Error::Parse { token: x.to_string(), reason: "entries must be 1..=n, each once" });
                }
            }
        }
        let t = ShiftedTableau { rows };
        if !t.is_standard() {
            return Err(Error::Parse { token: format!("{:?}", t.rows), reason: "not standard" });
        }
        Ok(t)
    }

    pub fn shape(&self) -> Partition {
        Partition::new(self.rows.iter().map(Vec::len).collect()).expect("tableau rows decrease")
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    /// `t(r,c)`, 1-based.
    pub fn entry(&self, r: usize, c: usize) -> Option<usize> {
        self.rows.get(r.checked_sub(1)?)?.get(c.checked_sub(1)?).copied()
    }

    /// `t(r,c) < t(r,c+1)` and `t(r,c+1) < t(r+1,c)` wherever defined.
    pub fn is_standard(&self) -> bool {
        self.rows.iter().enumerate().all(|(i, row)| {
            row.windows(2).all(|w| w[0] < w[1])
                && self.rows.get(i + 1).is_none_or(|below| below.iter().enumerate().all(|(j, &x)| row[j + 1] < x))
        })
    }

    /// The node holding each entry, indexed by entry − 1.
    pub fn positions(&self) -> Vec<Node> {
        let n: usize = self.rows.iter().map(Vec::len).sum();
        let mut pos = vec![Node { row: 0, col: 0 }; n];
        for (i, row) in self.rows.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                pos[x - 1] = Node { row: i + 1, col: j + 1 };
            }
        }
        pos
    }
}

/// `i^t`: entry `k` is the residue of the node holding `k`.
pub fn residue_word(t: &ShiftedTableau, p: OddPrime) -> Vec<usize> {
    t.positions().into_iter().map(|n| residue(n.row, n.col, p)).collect()
}

fn tableau_from_removals(shape: &Partition, removed: &[Node]) -> ShiftedTableau {
    let mut rows: Vec<Vec<usize>> = shape.parts().iter().map(|&a| vec![0; a]).collect();
    let n = removed.len();
    for (k, node) in removed.iter().enumerate() {
        rows[node.row - 1][node.col - 1] = n - k;
    }
    let t = ShiftedTableau { rows };
    assert!(t.is_standard(), "corner removal produced a non-standard tableau");
    t
}

/// Rows whose last node can be removed leaving a strict partition.
fn corner_rows(parts: &[usize]) -> Vec<usize> {
    (0..parts.len()).filter(|&r| r + 1 == parts.len() || parts[r] - 1 > parts[r + 1]).collect()
}

/// Streams every standard shifted tableau of a strict shape. The largest entry
/// is placed in a corner, trying corners top row first, and the rest recursively.
pub struct SstIter {
    shape: Partition,
    parts: Vec<usize>,
    removed: Vec<Node>,
    stack: Vec<(Vec<usize>, usize)>,
    started: bool,
}

impl SstIter {
    fn undo(&mut self) {
        let node = self.removed.pop().expect("undo without removal");
        if node.row > self.parts.len() {
            self.parts.push(1);
        } else {
            self.parts[node.row - 1] += 1;
        }
    }
}

impl Iterator for SstIter {
    type Item = ShiftedTableau;

    fn next(&mut self) -> Option<ShiftedTableau> {
        if !self.started {
            self.started = true;
            if self.parts.is_empty() {
                return Some(ShiftedTableau { rows: vec![] });
            }
            self.stack.push((corner_rows(&self.parts), 0));
        }
        loop {
            let (corners, idx) = self.stack.last_mut()?;
            if *idx < corners.len() {
                let r = corners[*idx];
                *idx += 1;
                self.removed.push(Node { row: r + 1, col: self.parts[r] });
                self.parts[r] -= 1;
                if self.parts[r] == 0 {
                    self.parts.pop();
                }
                if self.parts.is_empty() {
                    let t = tableau_from_removals(&self.shape, &self.removed);
                    self.undo();
                    return Some(t);
                }
                self.stack.push((corner_rows(&self.parts), 0));
            } else {
                self.stack.pop();
                if self.stack.is_empty() {
                    return None;
                }
                self.undo();
            }
        }
    }
}

pub fn enumerate_sst(lambda: &Partition) -> Result<SstIter> {
    lambda.require_strict()?;
    Ok(SstIter {
        shape: lambda.clone(),
        parts: lambda.parts().to_vec(),
        removed: Vec::new(),
        stack: Vec::new(),
        started: false,
    })
}

/// Number of standard shifted tableaux, by memoised corner removal.
pub fn count_sst(lambda: &Partition) -> Result<BigUint> {
    fn go(parts: &mut Vec<usize>, memo: &mut HashMap<Vec<usize>, BigUint>) -> BigUint {
        if parts.is_empty() {
            return BigUint::one();
        }
        if let Some(v) = memo.get(parts) {
            return v.clone();
        }
        let mut total = BigUint::zero();
        for r in corner_rows(parts) {
            parts[r] -= 1;
            let popped = parts[r] == 0;
            if popped {
                parts.pop();
            }
            total += go(parts, memo);
            if popped {
                parts.push(1);
            } else {
                parts[r] += 1;
            }
        }
        memo.insert(parts.clone(), total.clone());
        total
    }
    lambda.require_strict()?;
    Ok(go(&mut lambda.parts().to_vec(), &mut HashMap::new()))
}

/// A standard shifted `λ`-tableau whose entries `1..=|prefix|` fill `prefix`
/// and whose later entries come in consecutive triples, each filling three
/// adjacent nodes of one row with residues a permutation of `(0,0,1)`.
pub fn find_patterned_tableau(lambda: &Partition, prefix: &Partition, p: OddPrime) -> Result<Option<ShiftedTableau>> {
    lambda.require_strict()?;
    prefix.require_strict()?;
    if !lambda.contains(prefix) {
        return Err(Error::NotContained(prefix.clone(), lambda.clone()));
    }
    for r in 1..=lambda.len() {
        let len = lambda.row(r) - prefix.row(r);
        if len % 3 != 0 {
            return Err(Error::MalformedRegion { row: r, len });
        }
    }

    fn triple_ok(r: usize, c: usize, p: OddPrime) -> bool {
        let mut res: Vec<usize> = (c..c + 3).map(|x| residue(r, x, p)).collect();
        res.sort_unstable();
        res == [0, 0, 1]
    }

    fn go(
        cur: &mut Vec<usize>,
        target: &[usize],
        p: OddPrime,
        steps: &mut Vec<usize>,
        dead: &mut HashSet<Vec<usize>>,
    ) -> bool {
        if cur.as_slice() == target {
            return true;
        }
        if dead.contains(cur) {
            return false;
        }
        for j in 0..target.len() {
            let have = cur[j];
            if have + 3 > target[j] {
                continue;
            }
            // each of the three intermediate shapes must stay strict
            if j > 0 && have + 3 >= cur[j - 1] {
                continue;
            }
            if have == 0 && j > 0 && cur[j - 1] == 0 {
                continue;
            }
            if !triple_ok(j + 1, have + 1, p) {
                continue;
            }
            cur[j] += 3;
            steps.push(j);
            if go(cur, target, p, steps, dead) {
                return true;
            }
            steps.pop();
            cur[j] -= 3;
        }
        dead.insert(cur.clone());
        false
    }

    let target = lambda.parts().to_vec();
    let mut cur: Vec<usize> = (1..=target.len()).map(|r| prefix.row(r)).collect();
    let mut steps = Vec::new();
    if !go(&mut cur, &target, p, &mut steps, &mut HashSet::new()) {
        return Ok(None);
    }
    let head = enumerate_sst(prefix)?.next().expect("every strict shape has a tableau");
    let mut rows: Vec<Vec<usize>> = (0..target.len()).map(|r| head.rows.get(r).cloned().unwrap_or_default()).collect();
    let mut next = prefix.size() + 1;
    for j in steps {
        rows[j].extend(next..next + 3);
        next += 3;
    }
    let t = ShiftedTableau::new(rows)?;
    Ok(Some(t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dimensions::spin_dim;
    use crate::ladders::content;
    use crate::partitions::{scaled_add, step3, strict_partitions};

    fn pt(s: &str) -> Partition {
        s.parse().unwrap()
    }

    const P: OddPrime = OddPrime::THREE;

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_sst(&pt("5")).unwrap().count(), 1);
        assert_eq!(enumerate_sst(&pt("2,1")).unwrap().count(), 1);
        assert_eq!(enumerate_sst(&pt("3,2,1")).unwrap().count(), 2);
        assert_eq!(enumerate_sst(&Partition::empty()).unwrap().count(), 1);
        assert!(enumerate_sst(&pt("2,2")).is_err());
    }

    #[test]
    fn counts_match_bar_length_formula() {
        for n in 0..=12 {
            for l in strict_partitions(n) {
                let g = spin_dim(&l).unwrap().g;
                let mut seen = HashSet::new();
                for t in enumerate_sst(&l).unwrap() {
                    assert!(t.is_standard());
                    assert_eq!(t.shape(), l);
                    assert!(seen.insert(t));
                }
                assert_eq!(BigUint::from(seen.len()), g, "{l}");
                assert_eq!(count_sst(&l).unwrap(), g);
            }
        }
    }

    #[test]
    fn enumeration_order_is_fixed() {
        let all: Vec<ShiftedTableau> = enumerate_sst(&pt("3,2,1")).unwrap().collect();
        // (3,1) is the only corner of (3,2,1); the first split is at entry 4
        assert_eq!(all[0].rows(), &[vec![1, 2, 4], vec![3, 5], vec![6]]);
        assert_eq!(all[1].rows(), &[vec![1, 2, 3], vec![4, 5], vec![6]]);
    }

    #[test]
    fn residue_words() {
        let t = enumerate_sst(&pt("2,1")).unwrap().next().unwrap();
        assert_eq!(residue_word(&t, P), vec![0, 1, 0]);
        let t = enumerate_sst(&pt("7")).unwrap().next().unwrap();
        assert_eq!(residue_word(&t, P), vec![0, 1, 0, 0, 1, 0, 0]);
        for l in strict_partitions(9) {
            let c = content(&l, P).unwrap();
            for t in enumerate_sst(&l).unwrap().take(20) {
                let mut counts = vec![0; P.half() + 1];
                for i in residue_word(&t, P) {
                    counts[i] += 1;
                }
                assert_eq!(counts, c);
            }
        }
    }

    #[test]
    fn validation() {
        assert!(ShiftedTableau::new(vec![vec![1, 2], vec![3]]).is_ok());
        assert!(ShiftedTableau::new(vec![vec![1, 3], vec![2]]).is_err());
        assert!(ShiftedTableau::new(vec![vec![1, 2], vec![2]]).is_err());
        assert_eq!(ShiftedTableau::new(vec![vec![1, 2], vec![3]]).unwrap().entry(2, 1), Some(3));
    }

    fn staircase(l: i64) -> Partition {
        Partition::new(step3(3 * l - 2, 1).into_iter().map(|x| x as usize).collect()).unwrap()
    }

    #[test]
    fn rock_patterned_tableaux() {
        for l in [3usize, 4] {
            let nu = staircase(l as i64);
            for d in 1..=l.min(3) {
                let lam = scaled_add(&nu, 3, &Partition::new(vec![1; d]).unwrap()).unwrap();
                let t = find_patterned_tableau(&lam, &nu, P).unwrap().expect("patterned tableau");
                assert_eq!(t.shape(), lam);
                let word = residue_word(&t, P);
                for tr in word[nu.size()..].chunks(3) {
                    let mut tr = tr.to_vec();
                    tr.sort_unstable();
                    assert_eq!(tr, [0, 0, 1]);
                }
            }
        }
    }

    #[test]
    fn patterned_edge_cases() {
        let l = pt("5,3,1");
        assert!(find_patterned_tableau(&l, &l, P).unwrap().is_some());
        assert!(matches!(find_patterned_tableau(&pt("5,3,1"), &pt("4,3"), P), Err(Error::MalformedRegion { .. })));
        assert!(find_patterned_tableau(&pt("3"), &pt("4"), P).is_err());
        assert!(find_patterned_tableau(&pt("4,3"), &pt("4"), P).unwrap().is_some());
        assert!(find_patterned_tableau(&pt("3"), &Partition::empty(), OddPrime::FIVE).unwrap().is_none());
    }
}
