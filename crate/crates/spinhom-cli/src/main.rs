mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use spinhom::classify::Context;
use spinhom::{OddPrime, Partition};

use commands::Failure;

#[derive(Parser, Debug)]
#[command(name = "spinhom", version, about = "Strict partitions, spin blocks and homogeneity in characteristic 3")]
pub struct Cli {
    /// Odd prime characteristic.
    #[arg(long, global = true, default_value = "3", value_parser = parse_prime)]
    pub p: OddPrime,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Seed for every randomised choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Report conjectural verdicts instead of withholding them.
    #[arg(long, global = true)]
    pub include_conjectural: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Tsv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FilterArg {
    Strict,
    Pstrict,
    Restricted,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DirArg {
    Down,
    Up,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ScopeArg {
    Fibre,
    Block,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ContextArg {
    Super,
    Sn,
    An,
}

impl From<ContextArg> for Context {
    fn from(c: ContextArg) -> Context {
        match c {
            ContextArg::Super => Context::Supermodule,
            ContextArg::Sn => Context::SnModule,
            ContextArg::An => Context::AnModule,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum HomFilter {
    Homogeneous,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SpecialArg {
    Include,
    Exclude,
    Only,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Regularisation of a strict partition.
    Reg { partition: Partition },
    /// p-bar core and weight.
    Core { partition: Partition },
    /// Members of the block with the given core and weight.
    Block {
        #[arg(long)]
        core: Partition,
        #[arg(long)]
        weight: usize,
        #[arg(long, value_enum, default_value_t = FilterArg::Pstrict)]
        filter: FilterArg,
    },
    /// Signature, extremal partitions and branching multiset at residue `i`.
    Branch {
        partition: Partition,
        #[arg(long)]
        i: usize,
        #[arg(long, value_enum, default_value_t = DirArg::Down)]
        dir: DirArg,
    },
    /// Dimension from the bar-length formula.
    Dim { partition: Partition },
    /// `ddeg` and the regularisation multiplicities.
    Ddeg { partition: Partition },
    /// A strict partition with the same regularisation and smaller `ddeg`.
    Witness {
        partition: Partition,
        #[arg(long, value_enum, default_value_t = ScopeArg::Fibre)]
        scope: ScopeArg,
    },
    /// Standard shifted tableaux of a shape.
    Sst {
        partition: Partition,
        /// Print at most this many tableaux.
        #[arg(long, default_value_t = 20)]
        limit: usize,
        /// Instead, look for a tableau extending this prefix whose residue
        /// triples are {0,0,1}.
        #[arg(long)]
        prefix: Option<Partition>,
    },
    /// Littlewood–Richardson coefficient `c^ν_{αβ}` or `c^ν_{αβγ}`.
    Lr {
        #[arg(num_args = 3..=4, required = true)]
        partitions: Vec<Partition>,
    },
    /// Diagonal wreath Cartan invariant, or `c_{ν,π}` for two arguments.
    Cartan {
        nu: Partition,
        pi: Option<Partition>,
        /// Reduce mod 3 through a decomposition matrix; without a file the
        /// bundled matrices for degree at most 6 are used.
        #[arg(long, num_args = 0..=1, default_missing_value = "")]
        char3: Option<String>,
    },
    /// Homogeneity verdict, or irreducibility with `--context`.
    Classify {
        partition: Partition,
        #[arg(long, value_enum)]
        context: Option<ContextArg>,
    },
    /// Strict partitions of `n` with their verdicts.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = HomFilter::All)]
        filter: HomFilter,
        #[arg(long, value_enum, default_value_t = SpecialArg::Include)]
        special: SpecialArg,
        /// Keep a seeded random sample of this many rows.
        #[arg(long)]
        sample: Option<usize>,
    },
    /// Members of a named family at `l`.
    Family {
        id: String,
        #[arg(long)]
        l: usize,
    },
    /// Exhaustive verification suites as TSV.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 16)]
        max_n: usize,
    },
}

fn parse_prime(s: &str) -> Result<OddPrime, String> {
    let n: usize = s.parse().map_err(|_| format!("{s} is not an integer"))?;
    OddPrime::new(n).map_err(|e| e.to_string())
}

fn configure_threads() {
    if let Some(n) = std::env::var("SPINHOM_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        // a second initialisation only fails when a pool already exists
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    configure_threads();
    match commands::run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Io(path, e)) => {
            eprintln!("error: {}: {e}", PathBuf::from(path).display());
            ExitCode::from(1)
        }
        Err(Failure::Verification(out)) => {
            print!("{out}");
            ExitCode::from(2)
        }
    }
}
