//! Littlewood–Richardson coefficients and the diagonal Cartan invariants of
//! the wreath superalgebra, in characteristic 0 and, through an ingested
//! decomposition matrix, in characteristic `p`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{OnceLock, RwLock};

use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partitions::{conjugate, partitions_of, OddPrime, Partition, Repeats};

type LrKey = (Partition, Partition, Partition);

fn lr_memo() -> &'static RwLock<HashMap<LrKey, u64>> {
    static MEMO: OnceLock<RwLock<HashMap<LrKey, u64>>> = OnceLock::new();
    MEMO.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Counts LR fillings of `ν/α` with content `β`: rows weakly increase,
/// columns strictly increase, and the right-to-left, top-to-bottom reading
/// word is a lattice word.
fn lr_fillings(alpha: &Partition, beta: &Partition, nu: &Partition) -> u64 {
    struct Fill<'a> {
        alpha: &'a Partition,
        nu: &'a Partition,
        beta: &'a Partition,
        grid: Vec<Vec<usize>>,
        used: Vec<usize>,
    }

    impl Fill<'_> {
        // fills row r (0-based) from column c leftwards, columns are 0-based
        fn go(&mut self, r: usize, c: Option<usize>) -> u64 {
            let Some(c) = c else {
                return self.next_row(r + 1);
            };
            if c < self.alpha[r] {
                return self.next_row(r + 1);
            }
            let right = if c + 1 < self.nu[r] { self.grid[r][c + 1] } else { usize::MAX };
            let above = if r > 0 && c >= self.alpha[r - 1] { self.grid[r - 1][c] } else { 0 };
            let mut total = 0;
            for v in (above + 1)..=right.min(self.beta.len()) {
                let k = v - 1;
                if self.used[k] == self.beta[k] || (k > 0 && self.used[k] + 1 > self.used[k - 1]) {
                    continue;
                }
                self.used[k] += 1;
                self.grid[r][c] = v;
                total += self.go(r, c.checked_sub(1));
                self.used[k] -= 1;
            }
            self.grid[r][c] = 0;
            total
        }

        fn next_row(&mut self, r: usize) -> u64 {
            if r == self.nu.len() {
                return 1;
            }
            let start = self.nu[r].checked_sub(1);
            if self.nu[r] == self.alpha[r] {
                return self.next_row(r + 1);
            }
            self.go(r, start)
        }
    }

    let grid = nu.parts().iter().map(|&a| vec![0; a]).collect();
    let mut f = Fill { alpha, nu, beta, grid, used: vec![0; beta.len()] };
    f.next_row(0)
}

/// `c^ν_{αβ}`.
pub fn lr2(alpha: &Partition, beta: &Partition, nu: &Partition) -> u64 {
    if alpha.size() + beta.size() != nu.size() || !nu.contains(alpha) || !nu.contains(beta) {
        return 0;
    }
    let key = (alpha.clone(), beta.clone(), nu.clone());
    if let Some(&v) = lr_memo().read().expect("lr memo poisoned").get(&key) {
        return v;
    }
    let v = lr_fillings(alpha, beta, nu);
    *lr_memo().write().expect("lr memo poisoned").entry(key).or_insert(v)
}

/// `c^ν_{αβγ} = Σ_σ c^σ_{αβ} c^ν_{σγ}`.
pub fn lr3(alpha: &Partition, beta: &Partition, gamma: &Partition, nu: &Partition) -> u64 {
    let m = alpha.size() + beta.size();
    if m + gamma.size() != nu.size() {
        return 0;
    }
    partitions_of(m, Repeats::Any)
        .into_iter()
        .filter(|s| nu.contains(s) && s.contains(alpha) && s.contains(beta))
        .map(|s| lr2(alpha, beta, &s) * lr2(&s, gamma, nu))
        .sum()
}

/// All `(α, β, γ)` with `|α|+|β|+|γ| = d`.
fn triples(d: usize) -> Vec<(Partition, Partition, Partition)> {
    let by_size: Vec<Vec<Partition>> = (0..=d).map(|k| partitions_of(k, Repeats::Any)).collect();
    let mut out = Vec::new();
    for a in 0..=d {
        for b in 0..=d - a {
            let c = d - a - b;
            for x in &by_size[a] {
                for y in &by_size[b] {
                    for z in &by_size[c] {
                        out.push((x.clone(), y.clone(), z.clone()));
                    }
                }
            }
        }
    }
    out
}

/// `Σ_{α,β,γ} c^ν_{αβγ} c^π_{αβ′γ}`.
pub fn wreath_cartan0(nu: &Partition, pi: &Partition) -> Result<BigUint> {
    if nu.size() != pi.size() {
        return Err(Error::SizeMismatch(nu.size(), pi.size()));
    }
    let mut total = BigUint::zero();
    for (a, b, g) in triples(nu.size()) {
        let x = lr3(&a, &b, &g, nu);
        if x == 0 {
            continue;
        }
        total += BigUint::from(x) * BigUint::from(lr3(&a, &conjugate(&b), &g, pi));
    }
    Ok(total)
}

/// Decomposition numbers `d_{λμ}` of the symmetric group of degree `d`, with
/// `μ` p-regular.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompMatrix {
    pub p: OddPrime,
    pub d: usize,
    entries: BTreeMap<(Partition, Partition), u64>,
}

impl DecompMatrix {
    pub fn entry(&self, lambda: &Partition, mu: &Partition) -> u64 {
        self.entries.get(&(lambda.clone(), mu.clone())).copied().unwrap_or(0)
    }

    pub fn columns(&self) -> BTreeSet<Partition> {
        self.entries.keys().map(|(_, m)| m.clone()).collect()
    }

    pub fn rows(&self) -> BTreeSet<Partition> {
        self.entries.keys().map(|(l, _)| l.clone()).collect()
    }

    /// Nonzero entries of column `μ`.
    pub fn column(&self, mu: &Partition) -> Vec<(Partition, u64)> {
        self.entries.iter().filter(|((_, m), _)| m == mu).map(|((l, _), &v)| (l.clone(), v)).collect()
    }

    /// Nonzero entries of row `λ`.
    pub fn column_entries_of_row(&self, lambda: &Partition) -> Vec<(Partition, u64)> {
        self.entries.iter().filter(|((l, _), _)| l == lambda).map(|((_, m), &v)| (m.clone(), v)).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

fn parse_entry_partition(s: &str, line: usize) -> Result<Partition> {
    s.trim().parse().map_err(|e: Error| Error::DecompParse { line, msg: e.to_string() })
}

fn parse_mult(s: &str, line: usize) -> Result<u64> {
    s.trim().parse().map_err(|_| Error::DecompParse { line, msg: format!("bad multiplicity {:?}", s.trim()) })
}

/// Reads the line format `p=3 d=<int>` followed by
/// `<λ> : <μ>=<mult>, <μ>=<mult>, …`.
pub fn ingest_decomp_matrix(source: &str) -> Result<DecompMatrix> {
    let mut header: Option<(OddPrime, usize)> = None;
    let mut entries = BTreeMap::new();
    for (k, raw) in source.lines().enumerate() {
        let line = k + 1;
        let text = raw.split('#').next().unwrap_or("").trim();
        if text.is_empty() {
            continue;
        }
        let Some((p, d)) = header else {
            let mut p = None;
            let mut d = None;
            for tok in text.split_whitespace() {
                match tok.split_once('=') {
                    Some(("p", v)) => p = v.parse::<usize>().ok().and_then(|v| OddPrime::new(v).ok()),
                    Some(("d", v)) => d = v.parse::<usize>().ok(),
                    _ => return Err(Error::DecompParse { line, msg: format!("unexpected header token {tok:?}") }),
                }
            }
            match (p, d) {
                (Some(p), Some(d)) => header = Some((p, d)),
                _ => return Err(Error::DecompParse { line, msg: "header must be `p=<odd prime> d=<int>`".into() }),
            }
            continue;
        };
        let (lhs, rhs) =
            text.split_once(':').ok_or_else(|| Error::DecompParse { line, msg: "missing ':'".into() })?;
        let lambda = parse_entry_partition(lhs, line)?;
        if lambda.size() != d {
            return Err(Error::DecompParse { line, msg: format!("{lambda} is not a partition of {d}") });
        }
        // "μ1=m1, μ2=m2" splits on '=' into μ1 | "m1, μ2" | m2
        let pieces: Vec<&str> = rhs.split('=').collect();
        if pieces.len() < 2 {
            return Err(Error::DecompParse { line, msg: "expected <partition>=<mult>".into() });
        }
        let mut mu = parse_entry_partition(pieces[0], line)?;
        for (j, piece) in pieces[1..].iter().enumerate() {
            let (mult, next) = if j + 2 == pieces.len() {
                (parse_mult(piece, line)?, None)
            } else {
                let (m, rest) = piece
                    .split_once(',')
                    .ok_or_else(|| Error::DecompParse { line, msg: "missing ',' between entries".into() })?;
                (parse_mult(m, line)?, Some(parse_entry_partition(rest, line)?))
            };
            if !mu.is_p_regular(p) {
                return Err(Error::DecompInvalid(format!("column {mu} is not {}-regular", p.get())));
            }
            if mu.size() != d {
                return Err(Error::DecompParse { line, msg: format!("{mu} is not a partition of {d}") });
            }
            if mult > 0 && entries.insert((lambda.clone(), mu.clone()), mult).is_some() {
                return Err(Error::DecompParse { line, msg: format!("repeated column {mu}") });
            }
            if let Some(n) = next {
                mu = n;
            }
        }
    }
    let Some((p, d)) = header else {
        return Err(Error::DecompParse { line: 0, msg: "missing header".into() });
    };
    let m = DecompMatrix { p, d, entries };
    for mu in m.columns() {
        let v = m.entry(&mu, &mu);
        if v != 1 {
            return Err(Error::DecompInvalid(format!("d_{{{mu},{mu}}} = {v}")));
        }
    }
    Ok(m)
}

/// The 3-modular decomposition matrix of the symmetric group of degree `d`,
/// for `1 ≤ d ≤ 6`.
pub fn bundled_decomp_matrix(d: usize) -> Option<DecompMatrix> {
    let text = match d {
        1 => include_str!("../data/decomp_p3_d1.txt"),
        2 => include_str!("../data/decomp_p3_d2.txt"),
        3 => include_str!("../data/decomp_p3_d3.txt"),
        4 => include_str!("../data/decomp_p3_d4.txt"),
        5 => include_str!("../data/decomp_p3_d5.txt"),
        6 => include_str!("../data/decomp_p3_d6.txt"),
        _ => return None,
    };
    Some(ingest_decomp_matrix(text).expect("bundled decomposition data is well formed"))
}

/// `c̄_{μ,μ} = Σ_{ν,π} d_{νμ} c_{ν,π} d_{πμ}`.
pub fn wreath_cartan_p(mu: &Partition, dm: &DecompMatrix) -> Result<BigUint> {
    let col = dm.column(mu);
    if col.is_empty() {
        return Err(Error::MissingColumn(mu.clone()));
    }
    let mut total = BigUint::zero();
    for (nu, a) in &col {
        for (pi, b) in &col {
            total += wreath_cartan0(nu, pi)? * BigUint::from(a * b);
        }
    }
    Ok(total)
}
