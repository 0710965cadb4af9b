use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "spw",
    version,
    about = "Exact sum-product workbench over prime fields"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Seed for every randomized routine.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SignArg {
    Plus,
    Minus,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Set operations: sums, differences, products, ratios, dilates, representation counts.
    Set(SetArgs),
    /// Additive or multiplicative energy.
    Energy(EnergyArgs),
    /// Constructive lemmas.
    #[command(subcommand)]
    Lemma(LemmaCommand),
    /// Proof-chain verifiers.
    Chain(ChainArgs),
    /// Minimum of max{|A+A|, |AA|} over n-subsets.
    Extremal(ExtremalArgs),
    /// Largest sizes with a proper ratio set.
    ScanRatio(ScanArgs),
}

/// Modulus and two operand sets.
///
/// Sets are comma lists (`1,2,5`), `@path` files with one residue per line,
/// or generators `ap:start,step,len` and `gp:start,ratio,len`.
#[derive(Args, Debug)]
pub struct Operands {
    #[arg(long)]
    pub p: u64,
    #[arg(long, allow_hyphen_values = true)]
    pub a: String,
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SetOp {
    Sum,
    Diff,
    Prod,
    Ratio,
    Dilate,
    Rep,
    Combo,
}

#[derive(Args, Debug)]
pub struct SetArgs {
    #[command(flatten)]
    pub sets: Operands,
    #[arg(long, value_enum)]
    pub op: SetOp,
    /// Signed terms for `combo`, e.g. `+a+a-b-b`.
    #[arg(long, allow_hyphen_values = true)]
    pub pattern: Option<String>,
    /// Multiplier for `dilate`.
    #[arg(long)]
    pub u: Option<u64>,
    /// Sign for `rep`.
    #[arg(long, value_enum, default_value_t = SignArg::Plus)]
    pub sign: SignArg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EnergyKindArg {
    Add,
    Mul,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Naive,
    Convolution,
}

#[derive(Args, Debug)]
pub struct EnergyArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long, allow_hyphen_values = true)]
    pub y: String,
    #[arg(long, allow_hyphen_values = true)]
    pub z: String,
    #[arg(long, value_enum)]
    pub kind: EnergyKindArg,
    #[arg(long, value_enum, default_value_t = MethodArg::Convolution)]
    pub method: MethodArg,
}

#[derive(Subcommand, Debug)]
pub enum LemmaCommand {
    /// Greedy cover of A by translates of ±B.
    Cover(CoverArgs),
    /// Subset of A minimizing the sumset ratio against each B.
    Katzshen(KatzShenArgs),
    /// Witness quadruple for A.
    Gk(GkArgs),
    /// Dilate minimizing the additive energy with A.
    Xi(SingleArgs),
    /// Dyadic bucket decomposition of A against B.
    Chang(PairArgs),
}

#[derive(Args, Debug)]
pub struct SingleArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long, allow_hyphen_values = true)]
    pub a: String,
}

#[derive(Args, Debug)]
pub struct PairArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long, allow_hyphen_values = true)]
    pub a: String,
    #[arg(long, allow_hyphen_values = true)]
    pub b: String,
}

#[derive(Args, Debug)]
pub struct CoverArgs {
    #[command(flatten)]
    pub sets: PairArgs,
    #[arg(long, value_enum, default_value_t = SignArg::Plus)]
    pub mode: SignArg,
}

#[derive(Args, Debug)]
pub struct KatzShenArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long, allow_hyphen_values = true)]
    pub a: String,
    /// One or more partner sets.
    #[arg(long, allow_hyphen_values = true, required = true)]
    pub b: Vec<String>,
    /// Allowed loss as `num/den`.
    #[arg(long, default_value = "1/2")]
    pub eps: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    PlusPlus,
    PlusMinus,
    Xi,
}

#[derive(Args, Debug)]
pub struct GkArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long, allow_hyphen_values = true)]
    pub a: String,
    #[arg(long, value_enum, default_value_t = VariantArg::PlusPlus)]
    pub variant: VariantArg,
    /// Probe sets; `A` itself when omitted.
    #[arg(long, allow_hyphen_values = true)]
    pub probe: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TheoremArg {
    #[value(name = "1.1")]
    Small,
    #[value(name = "1.2")]
    Large,
    #[value(name = "1.3")]
    UnbalancedSmall,
    #[value(name = "1.4")]
    Unbalanced,
    #[value(name = "1.5")]
    Balanced,
    #[value(name = "prop51")]
    Covering,
    #[value(name = "remark")]
    Energy,
}

#[derive(Args, Debug)]
pub struct ChainArgs {
    #[arg(long, value_enum)]
    pub theorem: TheoremArg,
    #[command(flatten)]
    pub sets: Operands,
    #[arg(long, value_enum, default_value_t = SignArg::Plus)]
    pub sign: SignArg,
    /// Fraction of A the extracted subset keeps, as `num/den`.
    #[arg(long, default_value = "1/2")]
    pub retention: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exhaustive,
    Anneal,
}

#[derive(Args, Debug)]
pub struct ExtremalArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t = ModeArg::Exhaustive)]
    pub mode: ModeArg,
    /// Annealing: evaluated states per chain.
    #[arg(long, default_value_t = 10_000)]
    pub iters: u64,
    #[arg(long, default_value_t = 2.0)]
    pub t0: f64,
    #[arg(long, default_value_t = 0.995)]
    pub cooling: f64,
    #[arg(long, default_value_t = 1)]
    pub chains: u64,
    /// Exhaustive: checkpoint file, resumed when present.
    #[arg(long)]
    pub cache: Option<PathBuf>,
    /// Exhaustive: worker threads (default: all cores).
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Args, Debug)]
pub struct ScanArgs {
    #[arg(long)]
    pub p: u64,
}
