use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use spinhom::bars::{bar_core, block_members, BlockFilter};
use spinhom::branching::{
    branch_multiset, eps_hat, extremal, normal_extremal, phi_hat, signature, Direction,
};
use spinhom::classify::{
    classify_homogeneous, classify_irreducible, special_decompose, Irreducibility, IrredVerdict, Status, Verdict,
};
use spinhom::dimensions::{ddeg, degree_witness_in, regn_multiplicity, spin_dim, RegnMultiplicities, WitnessScope};
use spinhom::families::{family_members, Family};
use spinhom::ladders::regularize;
use spinhom::partitions::strict_partitions;
use spinhom::tableaux::{count_sst, enumerate_sst, find_patterned_tableau};
use spinhom::verify::{all_ok, run_suite, tsv_line, LemmaRow, Suite, TSV_HEADER};
use spinhom::wreath::{bundled_decomp_matrix, ingest_decomp_matrix, lr2, lr3, wreath_cartan0, wreath_cartan_p};
use spinhom::{Error, Partition};

use crate::{Cli, Command, DirArg, FilterArg, Format, HomFilter, ScopeArg, SpecialArg};

pub enum Failure {
    Domain(Error),
    Io(String, std::io::Error),
    /// The rendered report of a suite with failing rows.
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type Out = Result<String, Failure>;

fn json<T: Serialize>(x: &T) -> String {
    serde_json::to_string(x).expect("reports serialise") + "\n"
}

/// `text` for text and tsv output, the JSON rendering of `value` otherwise.
fn emit<T: Serialize>(format: Format, value: &T, text: impl FnOnce() -> String) -> String {
    match format {
        Format::Json => json(value),
        Format::Text | Format::Tsv => text(),
    }
}

fn lines<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string() + "\n").collect()
}

#[derive(Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchReport {
    pub partition: Partition,
    pub i: usize,
    /// Present when the partition is restricted p-strict.
    pub signature: Option<String>,
    pub reduced: Option<String>,
    pub eps: Option<usize>,
    pub phi: Option<usize>,
    pub normal_extremal: Option<Partition>,
    /// Present when the partition is strict.
    pub eps_hat: Option<usize>,
    pub phi_hat: Option<usize>,
    pub extremal: Option<Partition>,
    pub multiset: Vec<(Partition, u8)>,
}

#[derive(Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DdegReport {
    #[serde(with = "spinhom::decimal")]
    pub ddeg: num_bigint::BigUint,
    pub multiplicities: RegnMultiplicities,
}

#[derive(Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SstReport {
    #[serde(with = "spinhom::decimal")]
    pub count: num_bigint::BigUint,
    pub tableaux: Vec<Vec<Vec<usize>>>,
}

#[derive(Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerateRow {
    pub partition: Partition,
    pub verdict: Verdict,
}

fn conjectural(status: Status) -> bool {
    !status.is_proven()
}

fn branch(cli: &Cli, lambda: &Partition, i: usize, dir: DirArg) -> Out {
    let (dir, sign) = match dir {
        DirArg::Down => (Direction::Down, "-"),
        DirArg::Up => (Direction::Up, "+"),
    };
    let p = cli.p;
    if i > p.half() {
        return Err(Error::ResidueOutOfRange { i, p: p.get() }.into());
    }
    let sig = lambda.is_restricted(p).then(|| signature(lambda, i, p)).transpose()?;
    let strict = lambda.is_strict();
    let report = BranchReport {
        partition: lambda.clone(),
        i,
        signature: sig.as_ref().map(|s| s.raw()),
        reduced: sig.as_ref().map(|s| s.reduced_string()),
        eps: sig.as_ref().map(|s| s.eps),
        phi: sig.as_ref().map(|s| s.phi),
        normal_extremal: sig.is_some().then(|| normal_extremal(lambda, i, p, dir)).transpose()?,
        eps_hat: strict.then(|| eps_hat(lambda, i, p)).transpose()?,
        phi_hat: strict.then(|| phi_hat(lambda, i, p)).transpose()?,
        extremal: if strict { extremal(lambda, i, p, dir).ok().map(|e| e.result) } else { None },
        multiset: if strict { branch_multiset(lambda, i, p, dir)? } else { vec![] },
    };
    Ok(emit(cli.format, &report, || {
        let mut s = String::new();
        let show = |x: &Option<Partition>| x.as_ref().map_or("undefined".to_string(), |m| m.to_string());
        if let (Some(raw), Some(red)) = (&report.signature, &report.reduced) {
            let _ = writeln!(s, "signature\t{raw}\nreduced\t{red}");
            let _ = writeln!(s, "eps\t{}\nphi\t{}", report.eps.unwrap_or(0), report.phi.unwrap_or(0));
            let arrow = if sign == "-" { "↓" } else { "↑" };
            let _ = writeln!(s, "{arrow}{i}\t{}", show(&report.normal_extremal));
        }
        if strict {
            let _ = writeln!(s, "eps_hat\t{}\nphi_hat\t{}", report.eps_hat.unwrap_or(0), report.phi_hat.unwrap_or(0));
            let _ = writeln!(s, "{sign}{i}\t{}", show(&report.extremal));
            for (m, c) in &report.multiset {
                let _ = writeln!(s, "branch\t{m}\t{c}");
            }
        }
        s
    }))
}

fn cartan(cli: &Cli, nu: &Partition, pi: Option<&Partition>, char3: Option<&str>) -> Out {
    let value = match char3 {
        None => wreath_cartan0(nu, pi.unwrap_or(nu))?,
        Some(path) => {
            if pi.is_some_and(|x| x != nu) {
                return Err(Error::Parse { token: "--char3".into(), reason: "only diagonal invariants reduce mod 3" }.into());
            }
            let dm = if path.is_empty() {
                bundled_decomp_matrix(nu.size())
                    .ok_or_else(|| Error::DecompInvalid(format!("no bundled matrix for degree {}", nu.size())))?
            } else {
                let text = std::fs::read_to_string(path).map_err(|e| Failure::Io(path.to_string(), e))?;
                ingest_decomp_matrix(&text)?
            };
            wreath_cartan_p(nu, &dm)?
        }
    };
    Ok(emit(cli.format, &value.to_string(), || format!("{value}\n")))
}

fn classify(cli: &Cli, lambda: &Partition, context: Option<crate::ContextArg>) -> Out {
    let Some(ctx) = context else {
        let v = classify_homogeneous(lambda)?;
        let shown = (cli.include_conjectural || !conjectural(v.status)).then_some(&v);
        return Ok(emit(cli.format, &shown, || match shown {
            Some(v) => format!("{:?}\t{}\n", v.status, v.reason),
            None => "withheld\tconjectural verdict (use --include-conjectural)\n".to_string(),
        }));
    };
    let v: IrredVerdict = classify_irreducible(lambda, ctx.into())?;
    let withheld = v.irreducible == Irreducibility::ConjecturallyIrreducible && !cli.include_conjectural;
    let shown = (!withheld).then_some(&v);
    Ok(emit(cli.format, &shown, || match shown {
        Some(v) => format!("{}\t{:?}\n", v.labels.join(" "), v.irreducible),
        None => "withheld\tconjectural verdict (use --include-conjectural)\n".to_string(),
    }))
}

fn enumerate(cli: &Cli, n: usize, filter: HomFilter, special: SpecialArg, sample: Option<usize>) -> Out {
    let mut lams = Vec::new();
    for l in strict_partitions(n) {
        let is_special = special_decompose(&l)?.is_some();
        let keep = match special {
            SpecialArg::Include => true,
            SpecialArg::Exclude => !is_special,
            SpecialArg::Only => is_special,
        };
        if keep {
            lams.push(l);
        }
    }
    use rayon::prelude::*;
    let rows: Vec<EnumerateRow> = lams
        .into_par_iter()
        .map(|l| classify_homogeneous(&l).map(|verdict| EnumerateRow { partition: l, verdict }))
        .collect::<Result<_, _>>()?;
    let mut rows: Vec<EnumerateRow> = rows
        .into_iter()
        .filter(|r| cli.include_conjectural || !conjectural(r.verdict.status))
        .filter(|r| filter == HomFilter::All || r.verdict.status.homogeneous())
        .collect();
    if let Some(k) = sample {
        let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
        let mut picked: Vec<usize> = (0..rows.len()).collect::<Vec<_>>().choose_multiple(&mut rng, k).copied().collect();
        picked.sort_unstable();
        let mut all: Vec<Option<EnumerateRow>> = rows.into_iter().map(Some).collect();
        rows = picked.into_iter().filter_map(|k| all[k].take()).collect();
    }
    Ok(emit(cli.format, &rows, || {
        rows.iter().map(|r| format!("{}\t{:?}\t{}\n", r.partition, r.verdict.status, r.verdict.reason)).collect()
    }))
}

fn verify(cli: &Cli, suite: &str, max_n: usize) -> Out {
    let suites: Vec<Suite> = if suite == "all" { Suite::ALL.to_vec() } else { vec![suite.parse()?] };
    let mut rows: Vec<(Suite, LemmaRow)> = Vec::new();
    for s in suites {
        rows.extend(run_suite(s, cli.p, max_n)?.into_iter().map(|r| (s, r)));
    }
    let out = match cli.format {
        Format::Json => {
            let plain: Vec<&LemmaRow> = rows.iter().map(|(_, r)| r).collect();
            json(&plain)
        }
        Format::Text | Format::Tsv => {
            let mut s = format!("suite\t{TSV_HEADER}\n");
            for (suite, r) in &rows {
                let _ = writeln!(s, "{suite}\t{}", tsv_line(r));
            }
            s
        }
    };
    let plain: Vec<LemmaRow> = rows.into_iter().map(|(_, r)| r).collect();
    if all_ok(&plain) {
        Ok(out)
    } else {
        Err(Failure::Verification(out))
    }
}

pub fn run(cli: &Cli) -> Out {
    let p = cli.p;
    let f = cli.format;
    match &cli.command {
        Command::Reg { partition } => {
            let r = regularize(partition, p)?;
            Ok(emit(f, &r, || format!("{r}\n")))
        }
        Command::Core { partition } => {
            let c = bar_core(partition, p)?;
            Ok(emit(f, &c, || format!("core\t{}\nweight\t{}\n", c.core, c.weight)))
        }
        Command::Block { core, weight, filter } => {
            let filter = match filter {
                FilterArg::Strict => BlockFilter::Strict,
                FilterArg::Pstrict => BlockFilter::PStrict,
                FilterArg::Restricted => BlockFilter::Restricted,
            };
            let members = block_members(core, *weight, p, filter)?;
            Ok(emit(f, &members, || lines(&members)))
        }
        Command::Branch { partition, i, dir } => branch(cli, partition, *i, *dir),
        Command::Dim { partition } => {
            let d = spin_dim(partition)?;
            Ok(emit(f, &d, || format!("dim\t{}\ng\t{}\ntwo_exp\t{}\n", d.dim, d.g, d.two_exp)))
        }
        Command::Ddeg { partition } => {
            let r = DdegReport { ddeg: ddeg(partition, p)?, multiplicities: regn_multiplicity(partition, p)? };
            Ok(emit(f, &r, || {
                let m = &r.multiplicities;
                format!("ddeg\t{}\ns_to_d\t{}\np_to_s\t{}\nx\t{}\ny\t{}\n", r.ddeg, m.s_to_d, m.p_to_s, m.x, m.y)
            }))
        }
        Command::Witness { partition, scope } => {
            let scope = match scope {
                ScopeArg::Fibre => WitnessScope::Fibre,
                ScopeArg::Block => WitnessScope::Block,
            };
            let w = degree_witness_in(partition, p, scope)?;
            Ok(emit(f, &w, || w.as_ref().map_or("none\n".to_string(), |m| format!("{m}\n"))))
        }
        Command::Sst { partition, limit, prefix } => {
            if let Some(prefix) = prefix {
                let t = find_patterned_tableau(partition, prefix, p)?;
                let rows = t.map(|t| t.rows().to_vec());
                return Ok(emit(f, &rows, || {
                    rows.as_ref().map_or("none\n".to_string(), |r| r.iter().map(|row| format!("{row:?}\n")).collect())
                }));
            }
            let r = SstReport {
                count: count_sst(partition)?,
                tableaux: enumerate_sst(partition)?.take(*limit).map(|t| t.rows().to_vec()).collect(),
            };
            Ok(emit(f, &r, || {
                let mut s = format!("count\t{}\n", r.count);
                for t in &r.tableaux {
                    let _ = writeln!(s, "{t:?}");
                }
                s
            }))
        }
        Command::Lr { partitions } => {
            let c = match partitions.as_slice() {
                [a, b, nu] => lr2(a, b, nu),
                [a, b, g, nu] => lr3(a, b, g, nu),
                _ => unreachable!("clap bounds the argument count"),
            };
            Ok(emit(f, &c, || format!("{c}\n")))
        }
        Command::Cartan { nu, pi, char3 } => cartan(cli, nu, pi.as_ref(), char3.as_deref()),
        Command::Classify { partition, context } => classify(cli, partition, *context),
        Command::Enumerate { n, filter, special, sample } => enumerate(cli, *n, *filter, *special, *sample),
        Command::Family { id, l } => {
            let family: Family = id.parse()?;
            let members = family_members(&family, *l)?;
            Ok(emit(f, &members, || lines(&members)))
        }
        Command::Verify { suite, max_n } => verify(cli, suite, *max_n),
    }
}
