//! Homogeneity and irreducibility verdicts in characteristic 3.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bars::is_bar_core;
use crate::branching::{eps_drop, extremal, ladder_obstruction, normal_extremal, Direction};
use crate::dimensions::degree_witness;
use crate::error::{Error, Result};
use crate::ladders::regularize;
use crate::partitions::{conjugate, parity_stats, strict_partitions, OddPrime, Partition, SpinParity};

const P: OddPrime = OddPrime::THREE;

/// The exceptional homogeneous partitions that are neither special, rows, nor
/// cores joined with `(3)`.
pub const H3: [&[usize]; 10] = [
    &[2, 1],
    &[3, 2, 1],
    &[4, 3, 2],
    &[4, 3, 2, 1],
    &[5, 3, 2, 1],
    &[5, 4, 3, 1],
    &[5, 4, 3, 2],
    &[5, 4, 3, 2, 1],
    &[7, 4, 3, 2, 1],
    &[8, 5, 3, 2, 1],
];

/// `λ = ν + 3α` with `ν` the 3-bar core of the same length and residue class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecialDecomposition {
    pub core: Partition,
    pub alpha: Partition,
    pub residue_class: usize,
}

pub fn special_decompose(lambda: &Partition) -> Result<Option<SpecialDecomposition>> {
    lambda.require_strict()?;
    let class = lambda.parts().last().map_or(1, |&x| x % 3);
    if class == 0 || lambda.parts().iter().any(|&x| x % 3 != class) {
        return Ok(None);
    }
    let l = lambda.len();
    let core: Vec<usize> = (0..l).map(|r| 3 * (l - 1 - r) + class).collect();
    let alpha: Vec<usize> = lambda.parts().iter().zip(&core).map(|(&a, &c)| (a - c) / 3).collect();
    let core = Partition::new(core)?;
    debug_assert!(is_bar_core(&core, P));
    Ok(Some(SpecialDecomposition { core, alpha: Partition::new(alpha)?, residue_class: class }))
}

fn hook(alpha: &Partition, conj: &Partition, r: usize, c: usize) -> usize {
    alpha.row(r) - c + conj.row(c) - r + 1
}

fn v3(mut x: usize) -> u32 {
    let mut k = 0;
    while x % 3 == 0 {
        x /= 3;
        k += 1;
    }
    k
}

/// Hook lengths `h(r,c)` and `h(s,c)` share their 3-adic valuation for all
/// `r < s` and `c ≤ α_s`.
pub fn carter3(alpha: &Partition) -> bool {
    let conj = conjugate(alpha);
    (1..=alpha.len()).all(|s| {
        (1..=alpha.row(s)).all(|c| {
            let v = v3(hook(alpha, &conj, s, c));
            (1..s).all(|r| v3(hook(alpha, &conj, r, c)) == v)
        })
    })
}

/// A reason `λ` cannot be homogeneous.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Certificate {
    /// A removable `i`-node lies in a shorter ladder than some addable `i`-node.
    LadderObstruction(usize),
    /// `ε̂_i(λ) > ε_i(λ^reg)`.
    EpsMismatch(usize),
    /// `(λ^{−i})^reg ≠ (λ^reg)^{↓i}`.
    RestrictionMismatch(usize),
    /// A strict `μ` with the same regularisation and smaller `ddeg`.
    DegreeWitness(Partition),
}

pub fn homogeneity_obstruction(lambda: &Partition) -> Result<Option<Certificate>> {
    lambda.require_strict()?;
    let reg = regularize(lambda, P)?;
    let residues = 0..=P.half();
    for i in residues.clone() {
        if ladder_obstruction(lambda, i, P)? {
            return Ok(Some(Certificate::LadderObstruction(i)));
        }
    }
    for i in residues.clone() {
        if eps_drop(lambda, i, P)? {
            return Ok(Some(Certificate::EpsMismatch(i)));
        }
    }
    for i in residues {
        // an undefined `λ^{-i}` gives no certificate here
        let Ok(down) = extremal(lambda, i, P, Direction::Down) else { continue };
        if regularize(&down.result, P)? != normal_extremal(&reg, i, P, Direction::Down)? {
            return Ok(Some(Certificate::RestrictionMismatch(i)));
        }
    }
    Ok(degree_witness(lambda, P)?.map(Certificate::DegreeWitness))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Status {
    ProvenHomogeneous,
    ProvenNotHomogeneous,
    ConjecturallyHomogeneous,
    ConjecturallyNotHomogeneous,
}

impl Status {
    pub fn is_proven(self) -> bool {
        matches!(self, Status::ProvenHomogeneous | Status::ProvenNotHomogeneous)
    }

    pub fn homogeneous(self) -> bool {
        matches!(self, Status::ProvenHomogeneous | Status::ConjecturallyHomogeneous)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum Reason {
    H1Row,
    H2CoreJoin3,
    H3Exceptional,
    BarCoreWeight0,
    SpecialL1,
    SpecialRect12,
    SpecialRectNot,
    SpecialLastColGe3,
    SpecialTwoColsLen2,
    SpecialKnownSmall,
    CarterConjecture,
    ObstructionCertificate(usize),
    DegreeWitness(Partition),
    TheoremList,
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Reason::H1Row => "H1_row",
            Reason::H2CoreJoin3 => "H2_core_join_3",
            Reason::H3Exceptional => "H3_exceptional",
            Reason::BarCoreWeight0 => "BarCore_weight0",
            Reason::SpecialL1 => "Special_l1",
            Reason::SpecialRect12 => "Special_rect_1_2",
            Reason::SpecialRectNot => "Special_rect_not",
            Reason::SpecialLastColGe3 => "Special_lastcol_ge3",
            Reason::SpecialTwoColsLen2 => "Special_two_cols_len2",
            Reason::SpecialKnownSmall => "Special_known_small",
            Reason::CarterConjecture => "Carter_conjecture",
            Reason::ObstructionCertificate(i) => return write!(f, "Obstruction_certificate({i})"),
            Reason::DegreeWitness(mu) => return write!(f, "Degree_witness({mu})"),
            Reason::TheoremList => "Theorem_list",
        };
        f.write_str(s)
    }
}

impl FromStr for Reason {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let plain = [
            Reason::H1Row,
            Reason::H2CoreJoin3,
            Reason::H3Exceptional,
            Reason::BarCoreWeight0,
            Reason::SpecialL1,
            Reason::SpecialRect12,
            Reason::SpecialRectNot,
            Reason::SpecialLastColGe3,
            Reason::SpecialTwoColsLen2,
            Reason::SpecialKnownSmall,
            Reason::CarterConjecture,
            Reason::TheoremList,
        ];
        if let Some(r) = plain.into_iter().find(|r| r.to_string() == s) {
            return Ok(r);
        }
        let bad = || Error::Parse { token: s.to_string(), reason: "unknown verdict reason" };
        if let Some(arg) = s.strip_prefix("Obstruction_certificate(").and_then(|t| t.strip_suffix(')')) {
            return arg.parse().map(Reason::ObstructionCertificate).map_err(|_| bad());
        }
        if let Some(arg) = s.strip_prefix("Degree_witness(").and_then(|t| t.strip_suffix(')')) {
            return arg.parse().map(Reason::DegreeWitness);
        }
        Err(bad())
    }
}

impl From<Reason> for String {
    fn from(r: Reason) -> String {
        r.to_string()
    }
}

impl TryFrom<String> for Reason {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Verdict {
    pub status: Status,
    pub reason: Reason,
}

impl Verdict {
    fn proven(homogeneous: bool, reason: Reason) -> Self {
        let status = if homogeneous { Status::ProvenHomogeneous } else { Status::ProvenNotHomogeneous };
        Verdict { status, reason }
    }
}

fn in_h2(lambda: &Partition) -> bool {
    lambda.contains_part(3) && {
        let rest: Vec<usize> = lambda.parts().iter().copied().filter(|&x| x != 3).collect();
        is_bar_core(&Partition::from_unsorted(rest), P)
    }
}

pub fn in_h3(lambda: &Partition) -> bool {
    H3.contains(&lambda.parts())
}

/// Verdict for `λ = ν + 3α` from the shape of `α` alone.
fn special_verdict(alpha: &Partition) -> Verdict {
    let conj = conjugate(alpha);
    let a1 = alpha.row(1);
    let rect = alpha.parts().iter().all(|&x| x == a1);
    let carter = carter3(alpha);
    if alpha.is_empty() {
        return Verdict::proven(true, Reason::BarCoreWeight0);
    }
    if alpha.len() == 1 {
        return Verdict::proven(true, Reason::SpecialL1);
    }
    if alpha.parts() == [1, 1] {
        return Verdict::proven(true, Reason::SpecialRect12);
    }
    if rect {
        debug_assert!(!carter);
        return Verdict::proven(false, Reason::SpecialRectNot);
    }
    // columns a1 and a1-1 are the last two
    if conj.row(a1) >= 3 {
        debug_assert!(!carter);
        return Verdict::proven(false, Reason::SpecialLastColGe3);
    }
    if a1 >= 2 && conj.row(a1) == 2 && conj.row(a1 - 1) == 2 {
        debug_assert!(!carter);
        return Verdict::proven(false, Reason::SpecialTwoColsLen2);
    }
    if alpha.parts() == [2, 1] || alpha.parts() == [3, 1] {
        return Verdict::proven(carter, Reason::SpecialKnownSmall);
    }
    let status = if carter { Status::ConjecturallyHomogeneous } else { Status::ConjecturallyNotHomogeneous };
    Verdict { status, reason: Reason::CarterConjecture }
}

/// Membership-only verdict; non-homogeneous non-special partitions get
/// [`Reason::TheoremList`].
pub fn classify_by_rules(lambda: &Partition) -> Result<Verdict> {
    if let Some(sd) = special_decompose(lambda)? {
        return Ok(special_verdict(&sd.alpha));
    }
    let parts = lambda.parts();
    if parts.len() == 1 && parts[0] % 3 == 0 && parts[0] >= 6 {
        return Ok(Verdict::proven(true, Reason::H1Row));
    }
    if in_h2(lambda) {
        return Ok(Verdict::proven(true, Reason::H2CoreJoin3));
    }
    if in_h3(lambda) {
        return Ok(Verdict::proven(true, Reason::H3Exceptional));
    }
    Ok(Verdict::proven(false, Reason::TheoremList))
}

/// As [`classify_by_rules`], but a non-homogeneous verdict carries the first
/// certificate found, when there is one.
pub fn classify_homogeneous(lambda: &Partition) -> Result<Verdict> {
    let v = classify_by_rules(lambda)?;
    if v.reason != Reason::TheoremList {
        return Ok(v);
    }
    let reason = match homogeneity_obstruction(lambda)? {
        Some(Certificate::DegreeWitness(mu)) => Reason::DegreeWitness(mu),
        Some(Certificate::LadderObstruction(i) | Certificate::EpsMismatch(i) | Certificate::RestrictionMismatch(i)) => {
            Reason::ObstructionCertificate(i)
        }
        None => Reason::TheoremList,
    };
    Ok(Verdict { reason, ..v })
}

/// Verdicts for every strict partition of `n`, in decreasing lexicographic order.
pub fn classify_all(n: usize) -> Result<Vec<(Partition, Verdict)>> {
    strict_partitions(n)
        .into_par_iter()
        .map(|l| classify_homogeneous(&l).map(|v| (l, v)))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Context {
    Supermodule,
    SnModule,
    AnModule,
}

impl FromStr for Context {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "super" | "supermodule" => Ok(Context::Supermodule),
            "sn" => Ok(Context::SnModule),
            "an" => Ok(Context::AnModule),
            _ => Err(Error::Parse { token: s.to_string(), reason: "context must be super, sn or an" }),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Irreducibility {
    Irreducible,
    Reducible,
    ConjecturallyIrreducible,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IrredVerdict {
    pub context: Context,
    /// The characteristic-0 modules labelled by `λ` in this context.
    pub labels: Vec<String>,
    pub irreducible: Irreducibility,
}

/// The module label for `λ` in `context`: `S^λ`, `S^{λ,±}`, `T^λ` or `T^{λ,±}`.
pub fn module_label(lambda: &Partition, context: Context) -> String {
    let even = parity_stats(lambda, P).spin_parity == SpinParity::Even;
    let paired = match context {
        Context::Supermodule => return format!("S({lambda})"),
        Context::SnModule => !even,
        Context::AnModule => even,
    };
    let letter = if context == Context::SnModule { 'S' } else { 'T' };
    if paired {
        format!("{letter}^({lambda}),±")
    } else {
        format!("{letter}^({lambda})")
    }
}

pub fn classify_irreducible(lambda: &Partition, context: Context) -> Result<IrredVerdict> {
    let v = classify_by_rules(lambda)?;
    let even = parity_stats(lambda, P).spin_parity == SpinParity::Even;
    let lp = lambda.l_p(P);
    // even λ tolerates l_3 = 1 for supermodules and for A_n, odd λ for S_n
    let bound = match (context, even) {
        (Context::Supermodule, true) | (Context::SnModule, false) | (Context::AnModule, true) => 1,
        _ => 0,
    };
    let irreducible = if lp > bound || !v.status.homogeneous() {
        Irreducibility::Reducible
    } else if v.status.is_proven() {
        Irreducibility::Irreducible
    } else {
        Irreducibility::ConjecturallyIrreducible
    };
    Ok(IrredVerdict { context, labels: vec![module_label(lambda, context)], irreducible })
}

/// The modules of size `n` listed as irreducible mod 3 outside the special
/// family: `S^{(6a),±}`, `T^{(6a−3),±}`, `S^{ν⊔(3),±}` for odd cores,
/// `T^{ν⊔(3),±}` for even cores, and the small cases.
pub fn listed_irreducible_modules(n: usize) -> Vec<String> {
    let mut out = Vec::new();
    let row = |m: usize| Partition::new(vec![m]).expect("row");
    if n > 0 && n % 6 == 0 {
        out.push(module_label(&row(n), Context::SnModule));
    }
    if n % 6 == 3 {
        out.push(module_label(&row(n), Context::AnModule));
    }
    if n >= 3 {
        for nu in strict_partitions(n - 3) {
            if nu.contains_part(3) || !is_bar_core(&nu, P) {
                continue;
            }
            let lam = Partition::from_unsorted(nu.parts().iter().copied().chain([3]).collect());
            let ctx = match parity_stats(&nu, P).spin_parity {
                SpinParity::Odd => Context::SnModule,
                SpinParity::Even => Context::AnModule,
            };
            out.push(module_label(&lam, ctx));
        }
    }
    let small: [(&[usize], Context); 11] = [
        (&[2, 1], Context::SnModule),
        (&[2, 1], Context::AnModule),
        (&[3, 2, 1], Context::SnModule),
        (&[4, 3, 2], Context::AnModule),
        (&[4, 3, 2, 1], Context::AnModule),
        (&[5, 3, 2, 1], Context::SnModule),
        (&[5, 4, 3, 1], Context::SnModule),
        (&[5, 4, 3, 2], Context::AnModule),
        (&[5, 4, 3, 2, 1], Context::AnModule),
        (&[7, 4, 3, 2, 1], Context::AnModule),
        (&[8, 5, 3, 2, 1], Context::AnModule),
    ];
    for (parts, ctx) in small {
        if parts.iter().sum::<usize>() == n {
            out.push(module_label(&Partition::new(parts.to_vec()).expect("listed partition"), ctx));
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Irreducible verdicts for non-special strict partitions of `n`, as labels.
pub fn irreducible_module_list(n: usize) -> Result<Vec<String>> {
    let mut out = Vec::new();
    for lam in strict_partitions(n) {
        if special_decompose(&lam)?.is_some() {
            continue;
        }
        for ctx in [Context::SnModule, Context::AnModule] {
            if classify_irreducible(&lam, ctx)?.irreducible == Irreducibility::Irreducible {
                out.push(module_label(&lam, ctx));
            }
        }
    }
    out.sort();
    Ok(out)
}
