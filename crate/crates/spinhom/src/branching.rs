//! Addable and removable nodes, signatures and the crystal-style operators.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ladders::{regularize_unchecked, residue, Node};
use crate::partitions::{parity_stats, OddPrime, Partition, SpinParity};

/// Which shapes count as valid after adding or removing nodes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mode {
    Strict,
    PStrict,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Direction {
    Down,
    Up,
}

fn check_residue(i: usize, p: OddPrime) -> Result<()> {
    if i > p.half() {
        Err(Error::ResidueOutOfRange { i, p: p.get() })
    } else {
        Ok(())
    }
}

fn pair_ok(a: usize, b: usize, mode: Mode, p: OddPrime) -> bool {
    a >= b
        && (a > b
            || a == 0
            || match mode {
                Mode::Strict => false,
                Mode::PStrict => a % p.get() == 0,
            })
}

/// For each row, how many trailing `i`-nodes may be changed (0, 1 or 2) and
/// which of those choices extend to a valid shape for the whole diagram.
fn feasible_tails(lambda: &Partition, i: usize, p: OddPrime, mode: Mode, dir: Direction) -> Vec<(usize, Vec<bool>)> {
    let rows = match dir {
        Direction::Down => lambda.len(),
        Direction::Up => lambda.len() + 2,
    };
    let base: Vec<usize> = (1..=rows).map(|r| lambda.row(r)).collect();
    let max_k: Vec<usize> = base
        .iter()
        .map(|&b| {
            let mut t = 0;
            while t < 2 {
                let col = match dir {
                    Direction::Down if t < b => b - t,
                    Direction::Down => break,
                    Direction::Up => b + t + 1,
                };
                if residue(1, col, p) != i {
                    break;
                }
                t += 1;
            }
            t
        })
        .collect();
    let len = |r: usize, k: usize| match dir {
        Direction::Down => base[r] - k,
        Direction::Up => base[r] + k,
    };
    let mut fwd = vec![[false; 3]; rows];
    let mut bwd = vec![[false; 3]; rows];
    for r in 0..rows {
        for k in 0..=max_k[r] {
            fwd[r][k] = r == 0 || (0..=max_k[r - 1]).any(|j| fwd[r - 1][j] && pair_ok(len(r - 1, j), len(r, k), mode, p));
        }
    }
    for r in (0..rows).rev() {
        for k in 0..=max_k[r] {
            bwd[r][k] = if r + 1 == rows {
                pair_ok(len(r, k), 0, mode, p)
            } else {
                (0..=max_k[r + 1]).any(|j| bwd[r + 1][j] && pair_ok(len(r, k), len(r + 1, j), mode, p))
            };
        }
    }
    (0..rows)
        .map(|r| (base[r], (0..=max_k[r]).map(|k| fwd[r][k] && bwd[r][k]).collect()))
        .collect()
}

fn qualifying(lambda: &Partition, i: usize, p: OddPrime, mode: Mode, dir: Direction) -> Vec<Node> {
    let mut out = Vec::new();
    for (r, (base, ok)) in feasible_tails(lambda, i, p, mode, dir).into_iter().enumerate() {
        for t in 1..ok.len() {
            if ok[t..].iter().any(|&b| b) {
                let col = match dir {
                    Direction::Down => base - t + 1,
                    Direction::Up => base + t,
                };
                out.push(Node::new(r + 1, col));
            }
        }
    }
    out.sort_by_key(|n| (n.col, n.row));
    out
}

/// Addable and removable `i`-nodes of `λ` in the sense of `mode`, each list
/// in ascending column order. A node qualifies iff some set of `i`-nodes
/// containing it can be added (removed) leaving a valid shape.
pub fn boundary_nodes(lambda: &Partition, i: usize, p: OddPrime, mode: Mode) -> Result<(Vec<Node>, Vec<Node>)> {
    check_residue(i, p)?;
    match mode {
        Mode::Strict => lambda.require_strict()?,
        Mode::PStrict => lambda.require_p_strict(p)?,
    }
    Ok((qualifying(lambda, i, p, mode, Direction::Up), qualifying(lambda, i, p, mode, Direction::Down)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignatureReport {
    pub boundary: Vec<(Node, Sign)>,
    pub reduced: Vec<Sign>,
    pub normals: Vec<Node>,
    pub conormals: Vec<Node>,
    pub eps: usize,
    pub phi: usize,
}

pub fn sign_string(signs: impl IntoIterator<Item = Sign>) -> String {
    signs
        .into_iter()
        .map(|s| match s {
            Sign::Plus => '+',
            Sign::Minus => '-',
        })
        .collect()
}

impl SignatureReport {
    pub fn raw(&self) -> String {
        sign_string(self.boundary.iter().map(|&(_, s)| s))
    }

    pub fn reduced_string(&self) -> String {
        sign_string(self.reduced.iter().copied())
    }
}

/// The `i`-signature of a restricted p-strict partition.
pub fn signature(mu: &Partition, i: usize, p: OddPrime) -> Result<SignatureReport> {
    mu.require_restricted(p)?;
    let (adds, rems) = boundary_nodes(mu, i, p, Mode::PStrict)?;
    let mut boundary: Vec<(Node, Sign)> = adds
        .into_iter()
        .map(|n| (n, Sign::Plus))
        .chain(rems.into_iter().map(|n| (n, Sign::Minus)))
        .collect();
    boundary.sort_by_key(|(n, _)| n.col);
    assert!(boundary.windows(2).all(|w| w[0].0.col < w[1].0.col), "two boundary nodes share a column");

    // cancel "+-" pairs: a stack of unmatched plus signs
    let mut normals = Vec::new();
    let mut pluses: Vec<Node> = Vec::new();
    for &(n, s) in &boundary {
        match s {
            Sign::Plus => pluses.push(n),
            Sign::Minus => {
                if pluses.pop().is_none() {
                    normals.push(n);
                }
            }
        }
    }
    let conormals = pluses;
    let reduced = std::iter::repeat_n(Sign::Minus, normals.len())
        .chain(std::iter::repeat_n(Sign::Plus, conormals.len()))
        .collect();
    Ok(SignatureReport { boundary, reduced, eps: normals.len(), phi: conormals.len(), normals, conormals })
}

fn with_row_changed(lambda: &Partition, row: usize, delta: isize) -> Partition {
    let mut parts = lambda.parts().to_vec();
    if parts.len() < row {
        parts.resize(row, 0);
    }
    parts[row - 1] = parts[row - 1].checked_add_signed(delta).expect("row length stays non-negative");
    Partition::new(parts).expect("single-node change keeps a partition")
}

/// Removes the rightmost normal `i`-node.
pub fn tilde_e(mu: &Partition, i: usize, p: OddPrime) -> Result<Partition> {
    let sig = signature(mu, i, p)?;
    let node = sig.normals.last().ok_or(Error::NoNormalNode(i))?;
    Ok(with_row_changed(mu, node.row, -1))
}

/// Adds the leftmost conormal `i`-node.
pub fn tilde_f(mu: &Partition, i: usize, p: OddPrime) -> Result<Partition> {
    let sig = signature(mu, i, p)?;
    let node = sig.conormals.first().ok_or(Error::NoConormalNode(i))?;
    Ok(with_row_changed(mu, node.row, 1))
}

pub fn epsilon(mu: &Partition, i: usize, p: OddPrime) -> Result<usize> {
    Ok(signature(mu, i, p)?.eps)
}

pub fn phi(mu: &Partition, i: usize, p: OddPrime) -> Result<usize> {
    Ok(signature(mu, i, p)?.phi)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremalResult {
    pub result: Partition,
    pub count: usize,
}

/// `λ^{-i}` (Down) or `λ^{+i}` (Up) together with the number of nodes moved.
pub fn extremal(lambda: &Partition, i: usize, p: OddPrime, dir: Direction) -> Result<ExtremalResult> {
    let (adds, rems) = boundary_nodes(lambda, i, p, Mode::Strict)?;
    let (nodes, sign) = match dir {
        Direction::Down => (rems, -1isize),
        Direction::Up => (adds, 1),
    };
    let mut parts = lambda.parts().to_vec();
    for n in &nodes {
        if parts.len() < n.row {
            parts.resize(n.row, 0);
        }
        parts[n.row - 1] = parts[n.row - 1].checked_add_signed(sign).unwrap();
    }
    match Partition::new(parts) {
        Ok(result) if result.is_strict() => Ok(ExtremalResult { result, count: nodes.len() }),
        _ => Err(Error::InvalidExtremal(lambda.clone(), i)),
    }
}

/// `ε̂_i(λ)`: the number of strictly removable `i`-nodes.
pub fn eps_hat(lambda: &Partition, i: usize, p: OddPrime) -> Result<usize> {
    Ok(boundary_nodes(lambda, i, p, Mode::Strict)?.1.len())
}

/// `φ̂_i(λ)`: the number of strictly addable `i`-nodes.
pub fn phi_hat(lambda: &Partition, i: usize, p: OddPrime) -> Result<usize> {
    Ok(boundary_nodes(lambda, i, p, Mode::Strict)?.0.len())
}

/// `μ↓i` (Down) or `μ↑i` (Up): apply the tilde operator until it is undefined.
pub fn normal_extremal(mu: &Partition, i: usize, p: OddPrime, dir: Direction) -> Result<Partition> {
    let sig = signature(mu, i, p)?;
    type Step = fn(&Partition, usize, OddPrime) -> Result<Partition>;
    let (steps, op): (usize, Step) = match dir {
        Direction::Down => (sig.eps, tilde_e),
        Direction::Up => (sig.phi, tilde_f),
    };
    let mut cur = mu.clone();
    for _ in 0..steps {
        cur = op(&cur, i, p)?;
    }
    Ok(cur)
}

/// Strict partitions obtained by moving one `i`-node, with coefficient 2
/// exactly when `λ` is odd and the result even.
pub fn branch_multiset(lambda: &Partition, i: usize, p: OddPrime, dir: Direction) -> Result<Vec<(Partition, u8)>> {
    check_residue(i, p)?;
    lambda.require_strict()?;
    let odd = parity_stats(lambda, p).spin_parity == SpinParity::Odd;
    let mut out = Vec::new();
    for r in 1..=lambda.len() + 1 {
        let len = lambda.row(r);
        let (col, delta) = match dir {
            Direction::Down if len > 0 => (len, -1),
            Direction::Down => continue,
            Direction::Up => (len + 1, 1),
        };
        if residue(r, col, p) != i {
            continue;
        }
        let mut parts = lambda.parts().to_vec();
        if parts.len() < r {
            parts.push(0);
        }
        parts[r - 1] = parts[r - 1].checked_add_signed(delta).unwrap();
        if let Ok(mu) = Partition::new(parts) {
            if mu.is_strict() {
                let even = parity_stats(&mu, p).spin_parity == SpinParity::Even;
                out.push((mu, if odd && even { 2 } else { 1 }));
            }
        }
    }
    Ok(out)
}

/// A strictly removable `i`-node together with a strictly addable `i`-node
/// in a ladder of larger index.
pub fn ladder_obstruction(lambda: &Partition, i: usize, p: OddPrime) -> Result<bool> {
    let (adds, rems) = boundary_nodes(lambda, i, p, Mode::Strict)?;
    let top_add = adds.iter().map(|n| n.ladder(p)).max();
    Ok(rems.iter().any(|r| top_add.is_some_and(|a| a > r.ladder(p))))
}

/// `ε̂_i(λ) > ε_i(λ^reg)`.
pub fn eps_drop(lambda: &Partition, i: usize, p: OddPrime) -> Result<bool> {
    let reg = regularize_unchecked(lambda, p);
    Ok(eps_hat(lambda, i, p)? > epsilon(&reg, i, p)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::{p_strict_partitions, strict_partitions};

    fn pt(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn nodes(v: &[(usize, usize)]) -> Vec<Node> {
        v.iter().map(|&(r, c)| Node::new(r, c)).collect()
    }

    #[test]
    fn boundary_example_pstrict() {
        let (a, r) = boundary_nodes(&pt("5,4,3,2,1"), 0, OddPrime::THREE, Mode::PStrict).unwrap();
        assert_eq!(a, nodes(&[(4, 3), (1, 6), (1, 7)]));
        assert_eq!(r, nodes(&[(5, 1), (2, 4)]));
    }

    #[test]
    fn boundary_example_strict() {
        let (a, r) = boundary_nodes(&pt("9,5,4,2"), 0, OddPrime::THREE, Mode::Strict).unwrap();
        assert_eq!(a.len(), 5);
        assert_eq!(r, nodes(&[(3, 4), (1, 9)]));
    }

    #[test]
    fn boundary_of_empty() {
        let p = OddPrime::THREE;
        assert_eq!(boundary_nodes(&Partition::empty(), 0, p, Mode::PStrict).unwrap(), (nodes(&[(1, 1)]), vec![]));
        assert_eq!(boundary_nodes(&Partition::empty(), 1, p, Mode::PStrict).unwrap(), (vec![], vec![]));
        assert!(boundary_nodes(&Partition::empty(), 2, p, Mode::PStrict).is_err());
        assert!(boundary_nodes(&pt("3,3"), 0, p, Mode::Strict).is_err());
    }

    /// Tries every subset of candidate nodes directly.
    fn boundary_oracle(lambda: &Partition, i: usize, p: OddPrime, mode: Mode) -> (Vec<Node>, Vec<Node>) {
        let valid = |l: &Partition| match mode {
            Mode::Strict => l.is_strict(),
            Mode::PStrict => l.is_p_strict(p),
        };
        let mut cand_add = Vec::new();
        let mut cand_rem = Vec::new();
        for r in 1..=lambda.len() + 2 {
            let b = lambda.row(r);
            for c in (b + 1)..=(b + 3) {
                if residue(r, c, p) == i {
                    cand_add.push(Node::new(r, c));
                }
            }
            for c in b.saturating_sub(2).max(1)..=b {
                if residue(r, c, p) == i {
                    cand_rem.push(Node::new(r, c));
                }
            }
        }
        let apply = |set: &[Node], sign: isize| -> Option<Partition> {
            let mut rows: Vec<Vec<bool>> = (1..=lambda.len() + 3).map(|r| (1..=lambda.row(1) + 4).map(|c| c <= lambda.row(r)).collect()).collect();
            for n in set {
                rows[n.row - 1][n.col - 1] = sign > 0;
            }
            let lens: Vec<usize> = rows
                .iter()
                .map(|row| {
                    let len = row.iter().take_while(|&&b| b).count();
                    if row[len..].iter().any(|&b| b) {
                        usize::MAX
                    } else {
                        len
                    }
                })
                .collect();
            if lens.contains(&usize::MAX) || lens.windows(2).any(|w| w[0] < w[1]) {
                return None;
            }
            Partition::new(lens).ok()
        };
        let pick = |cands: &[Node], sign: isize| -> Vec<Node> {
            let mut out: Vec<Node> = cands
                .iter()
                .copied()
                .filter(|&n| {
                    let others: Vec<Node> = cands.iter().copied().filter(|&m| m != n).collect();
                    (0..1u32 << others.len()).any(|mask| {
                        let mut set: Vec<Node> = vec![n];
                        set.extend(others.iter().enumerate().filter(|(j, _)| mask >> j & 1 == 1).map(|(_, &m)| m));
                        apply(&set, sign).is_some_and(|l| valid(&l))
                    })
                })
                .collect();
            out.sort_by_key(|n| (n.col, n.row));
            out
        };
        (pick(&cand_add, 1), pick(&cand_rem, -1))
    }

    #[test]
    fn boundary_matches_subset_oracle() {
        let p = OddPrime::THREE;
        for n in 0..=10 {
            for l in p_strict_partitions(n, p) {
                for i in 0..=1 {
                    assert_eq!(boundary_nodes(&l, i, p, Mode::PStrict).unwrap(), boundary_oracle(&l, i, p, Mode::PStrict), "{l} i={i}");
                    if l.is_strict() {
                        assert_eq!(boundary_nodes(&l, i, p, Mode::Strict).unwrap(), boundary_oracle(&l, i, p, Mode::Strict), "{l} i={i}");
                    }
                }
            }
        }
    }

    #[test]
    fn signature_example() {
        let p = OddPrime::THREE;
        let s = signature(&pt("5,4,3,2,1"), 0, p).unwrap();
        assert_eq!(s.raw(), "-+-++");
        assert_eq!(s.reduced_string(), "-++");
        assert_eq!(s.normals, nodes(&[(5, 1)]));
        assert_eq!(s.conormals, nodes(&[(1, 6), (1, 7)]));
        assert_eq!(tilde_e(&pt("5,4,3,2,1"), 0, p).unwrap(), pt("5,4,3,2"));
        assert_eq!(tilde_f(&pt("5,4,3,2,1"), 0, p).unwrap(), pt("6,4,3,2,1"));
        assert_eq!(normal_extremal(&pt("5,4,3,2,1"), 0, p, Direction::Down).unwrap(), pt("5,4,3,2"));
        assert_eq!(normal_extremal(&pt("5,4,3,2,1"), 0, p, Direction::Up).unwrap(), pt("7,4,3,2,1"));
        let e = signature(&Partition::empty(), 0, p).unwrap();
        assert_eq!((e.raw().as_str(), e.phi, e.eps), ("+", 1, 0));
        assert!(tilde_e(&Partition::empty(), 0, p).is_err());
        assert!(signature(&pt("3"), 0, p).is_err());
    }

    #[test]
    fn tilde_operators_are_inverse() {
        let p = OddPrime::THREE;
        let s = signature(&pt("4,1"), 1, p).unwrap();
        assert_eq!(s.eps + s.phi, s.reduced.len());
        for n in 0..=12 {
            for mu in p_strict_partitions(n, p).into_iter().filter(|m| m.is_restricted(p)) {
                for i in 0..=1 {
                    if let Ok(l) = tilde_e(&mu, i, p) {
                        assert!(l.is_restricted(p));
                        assert_eq!(tilde_f(&l, i, p).unwrap(), mu);
                    }
                    if let Ok(l) = tilde_f(&mu, i, p) {
                        assert!(l.is_restricted(p));
                        assert_eq!(tilde_e(&l, i, p).unwrap(), mu);
                    }
                }
            }
        }
    }

    #[test]
    fn extremal_example() {
        let p = OddPrime::THREE;
        let down = extremal(&pt("9,5,4,2"), 0, p, Direction::Down).unwrap();
        assert_eq!((down.result, down.count), (pt("8,5,3,2"), 2));
        let up = extremal(&pt("9,5,4,2"), 0, p, Direction::Up).unwrap();
        assert_eq!((up.result, up.count), (pt("10,7,4,3,1"), 5));
    }

    #[test]
    fn branching_multisets() {
        let p = OddPrime::THREE;
        assert_eq!(branch_multiset(&pt("2,1"), 0, p, Direction::Down).unwrap(), vec![(pt("2"), 1)]);
        assert_eq!(branch_multiset(&Partition::empty(), 0, p, Direction::Up).unwrap(), vec![(pt("1"), 1)]);
        for (mu, coeff) in branch_multiset(&pt("6"), 0, p, Direction::Up).unwrap() {
            let flips = parity_stats(&mu, p).spin_parity == SpinParity::Even;
            assert_eq!(coeff == 2, flips, "{mu}");
        }
    }

    #[test]
    fn nonzero_residues_do_not_depend_on_mode() {
        for (p, max) in [(OddPrime::THREE, 14), (OddPrime::FIVE, 12)] {
            for n in 0..=max {
                for l in strict_partitions(n) {
                    for i in 1..=p.half() {
                        assert_eq!(boundary_nodes(&l, i, p, Mode::Strict).unwrap(), boundary_nodes(&l, i, p, Mode::PStrict).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn obstruction_needs_a_removable_node() {
        assert!(!ladder_obstruction(&Partition::empty(), 0, OddPrime::THREE).unwrap());
        assert!(!ladder_obstruction(&pt("1"), 1, OddPrime::THREE).unwrap());
    }
}
