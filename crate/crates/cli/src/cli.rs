use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Exact computations with Brauer-type diagram algebras and their
/// realization as centralizers of compact subgroups of Sp(2n, R) and SO(p, q).
#[derive(Parser, Debug)]
#[command(name = "cyclobrauer", version)]
pub struct Cli {
    /// Print a single JSON document instead of a table.
    #[arg(long, global = true)]
    pub json: bool,

    /// Include wall-clock timings in the report.
    #[arg(long, global = true)]
    pub timing: bool,

    /// Directory for cached results. Caching is off unless this flag or the
    /// environment variable is set.
    #[arg(long, global = true, env = "BRAUER_CACHE_DIR", value_name = "DIR")]
    pub cache_dir: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Labeled Brauer diagrams.
    #[command(subcommand)]
    Diagrams(DiagramsCmd),
    /// Cyclotomic and walled Brauer algebras.
    #[command(subcommand)]
    Algebra(AlgebraCmd),
    /// Tensor representations of Sp(2n, R) and SO(p, q).
    #[command(subcommand)]
    Rep(RepCmd),
    /// Run the acceptance table.
    Accept(AcceptArgs),
}

#[derive(Args, Debug, Clone, Copy)]
pub struct KM {
    /// Number of strands.
    #[arg(long)]
    pub k: usize,
    /// Label modulus (cyclic group order).
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    pub m: u32,
}

#[derive(Subcommand, Debug)]
pub enum DiagramsCmd {
    /// Number of diagrams of Br_{k,m}.
    Count(KM),
    /// All diagrams of Br_{k,m} in canonical order.
    Enumerate(KM),
    /// Concatenate diagram a (on top) with diagram b.
    Compose(Binary),
}

#[derive(Args, Debug)]
pub struct Binary {
    #[command(flatten)]
    pub km: KM,
    /// First factor, e.g. "t1-b2:1,t2-b1".
    #[arg(long)]
    pub a: String,
    /// Second factor.
    #[arg(long)]
    pub b: String,
}

#[derive(Subcommand, Debug)]
pub enum AlgebraCmd {
    /// Check every defining relation symbolically.
    Verify(KM),
    /// Product of two basis diagrams, with loop factors as δ-monomials.
    Mul(Binary),
    /// Walled Brauer basis, closure, and optionally the gl_n centralizer.
    Walled(WalledArgs),
}

#[derive(Args, Debug)]
pub struct WalledArgs {
    /// Strands left of the wall.
    #[arg(long)]
    pub s: usize,
    /// Strands right of the wall.
    #[arg(long)]
    pub t: usize,
    /// Also compare with the commutant of gl_n on V^{⊗s} ⊗ (V*)^{⊗t}.
    #[arg(long)]
    pub n: Option<usize>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupArg {
    Sp,
    So,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct GroupArgs {
    /// Group family.
    #[arg(long, value_enum)]
    pub group: GroupArg,
    /// Sp(2n, R): the n.
    #[arg(long)]
    pub n: Option<usize>,
    /// SO(p, q): the p.
    #[arg(long)]
    pub p: Option<usize>,
    /// SO(p, q): the q.
    #[arg(long)]
    pub q: Option<usize>,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct GroupK {
    #[command(flatten)]
    pub group: GroupArgs,
    /// Tensor power.
    #[arg(long)]
    pub k: usize,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct DecomposeArgs {
    /// Sp(2n, R): the n.
    #[arg(long)]
    pub n: usize,
    /// Tensor power.
    #[arg(long)]
    pub k: usize,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct KOnly {
    #[arg(long)]
    pub k: usize,
}

#[derive(Subcommand, Debug)]
pub enum RepCmd {
    /// Build and validate a group context.
    Context(GroupArgs),
    /// Measured and stated loop parameters.
    Deltas(GroupArgs),
    /// Rank of Φ on the basis diagrams of Br_{k,2}.
    PhiRank(GroupK),
    /// Compare the compact-group commutant with the image of Φ.
    Commutant(GroupK),
    /// Sector decomposition of the commutant for Sp(2n, R).
    Decompose(DecomposeArgs),
    /// Number of K-types against the number of bipartitions.
    Ktypes(GroupK),
    /// Integer dimension identities for a given k.
    Identity(KOnly),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProfileArg {
    Small,
    Full,
}

#[derive(Args, Debug)]
pub struct AcceptArgs {
    /// Size profile.
    #[arg(value_enum)]
    pub profile: Option<ProfileArg>,
    /// Size profile (alternative to the positional form).
    #[arg(long = "profile", value_enum, conflicts_with = "profile")]
    pub profile_flag: Option<ProfileArg>,
}
