use std::path::PathBuf;

use asmkit::algebra::{parse_rational, BigRational, Ring};
use asmkit::asm::{AsmClass, Statistic};
use asmkit::verify::Suite;
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug, Clone)]
#[command(
    name = "asmkit",
    version,
    about = "Exact enumeration of alternating-sign matrices and square-ice partition functions"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,

    /// Directory for cached enumeration results.
    #[arg(long, env = "ASMKIT_CACHE_DIR", global = true)]
    pub cache_dir: Option<PathBuf>,

    /// Worker threads; 0 picks one per core.
    #[arg(long, default_value_t = 0, global = true)]
    pub threads: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Count, and optionally list, the members of a class or the states of a lattice.
    Enumerate(EnumerateArgs),
    /// Refined counts by the row of the 1 in a boundary column.
    Refine(RefineArgs),
    /// Partition function of a lattice: state sum against the closed forms.
    Partition(PartitionArgs),
    /// Run the verification suites.
    Verify(VerifyArgs),
    /// Enumerated totals against the product formulas for sizes 1..=max-n.
    Table(TableArgs),
}

#[derive(Args, Debug, Clone)]
pub struct EnumerateArgs {
    #[arg(
        long,
        value_enum,
        required_unless_present = "boundary",
        conflicts_with = "boundary"
    )]
    pub class: Option<ClassArg>,
    #[arg(long, value_enum)]
    pub boundary: Option<BoundaryArg>,
    /// Size index: ASM order n, VSASM order 2n+1, OSASM order 2n, UASM 2n×n.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub n: u64,
    /// Print every member.
    #[arg(long)]
    pub list: bool,
}

#[derive(Args, Debug, Clone)]
pub struct RefineArgs {
    #[arg(long, value_enum)]
    pub class: ClassArg,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub n: u64,
    #[arg(long, value_enum, default_value_t = StatisticArg::FirstColumn)]
    pub statistic: StatisticArg,
    /// Weight per upward U-turn (UASM only); counts stay polynomials in y when absent.
    #[arg(long, value_parser = rational)]
    pub y: Option<BigRational>,
    /// Weight per −1 entry; for VSASMs, per −1 entry left of the centre column.
    #[arg(long, value_parser = rational)]
    pub x: Option<BigRational>,
}

#[derive(Args, Debug, Clone)]
pub struct PartitionArgs {
    #[arg(long, value_enum)]
    pub boundary: BoundaryArg,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub n: u64,
    /// Crossing parameter: `zeta6` or a nonzero rational.
    #[arg(long, value_parser = crossing, default_value = "zeta6")]
    pub a: Crossing,
    /// U-turn parameter (U-turn boundary only); drawn from the seed when absent.
    #[arg(long, value_parser = rational)]
    pub b: Option<BigRational>,
    /// Comma-separated spectral parameters u_1,...,u_2n; drawn from the seed when absent.
    #[arg(long, value_delimiter = ',', value_parser = rational)]
    pub u: Option<Vec<BigRational>>,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
}

#[derive(Args, Debug, Clone)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = SuiteArg::All)]
    pub suite: SuiteArg,
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_n: u64,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..))]
    pub samples: u64,
}

#[derive(Args, Debug, Clone)]
pub struct TableArgs {
    #[arg(long, value_enum)]
    pub class: ClassArg,
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_n: u64,
    #[arg(long, value_parser = rational)]
    pub y: Option<BigRational>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassArg {
    Asm,
    Vsasm,
    Osasm,
    Uasm,
}

impl From<ClassArg> for AsmClass {
    fn from(c: ClassArg) -> Self {
        match c {
            ClassArg::Asm => AsmClass::Asm,
            ClassArg::Vsasm => AsmClass::Vsasm,
            ClassArg::Osasm => AsmClass::Osasm,
            ClassArg::Uasm => AsmClass::Uasm,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundaryArg {
    Dwbc,
    Uturn,
    Os,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum StatisticArg {
    FirstColumn,
    LastColumn,
}

impl From<StatisticArg> for Statistic {
    fn from(s: StatisticArg) -> Self {
        match s {
            StatisticArg::FirstColumn => Statistic::FirstColumn,
            StatisticArg::LastColumn => Statistic::LastColumn,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum SuiteArg {
    Formulas,
    Functions,
    Identities,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Formulas => Suite::Formulas,
            SuiteArg::Functions => Suite::Functions,
            SuiteArg::Identities => Suite::Identities,
            SuiteArg::All => Suite::All,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Crossing {
    Zeta6,
    Rational(BigRational),
}

fn rational(s: &str) -> Result<BigRational, String> {
    parse_rational(s).ok_or_else(|| format!("`{s}` is not a rational number (p or p/q)"))
}

fn crossing(s: &str) -> Result<Crossing, String> {
    if s.eq_ignore_ascii_case("zeta6") {
        return Ok(Crossing::Zeta6);
    }
    let q = rational(s)?;
    if q.is_zero() {
        return Err("the crossing parameter must be nonzero".into());
    }
    Ok(Crossing::Rational(q))
}
