//! Command-line front end: structure documents, command dispatch and JSON reports.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub mod commands;
pub mod document;
pub mod report;

/// Errors that end a run with exit code 2.
#[derive(Debug)]
pub enum CliError {
    Input(String),
    Core(stonesset::Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(msg) => f.write_str(msg),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<stonesset::Error> for CliError {
    fn from(e: stonesset::Error) -> Self {
        CliError::Core(e)
    }
}

#[derive(Parser)]
#[command(
    name = "stonesset",
    version,
    about = "Type spaces of finite structures as simplicial objects"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Clone)]
pub struct StructureArgs {
    /// Structure document (JSON).
    #[arg(long)]
    pub structure: PathBuf,
    /// Depth of the computation; see each command for its meaning.
    #[arg(long)]
    pub depth: Option<usize>,
    /// Largest number of tuples enumerated at one level.
    #[arg(long, default_value_t = 1_000_000)]
    pub budget: u128,
    #[arg(long, default_value_t = 8)]
    pub max_universe: usize,
}

#[derive(Args, Clone)]
pub struct ReductArgs {
    /// Relation to forget; repeatable.
    #[arg(long = "drop-relation")]
    pub drop_relation: Vec<String>,
    /// Parameters kept in the reduct, comma separated. All are kept by default.
    #[arg(long = "params-keep")]
    pub params_keep: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Mode {
    One,
    Count,
    Enumerate,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Class {
    All,
    Monotone,
}

#[derive(Subcommand)]
pub enum Command {
    /// Orbit counts of tuples up to `--depth` (default: universe size).
    Orbits(StructureArgs),
    /// Automorphism group over the parameters.
    Automorphisms(StructureArgs),
    /// Coherent section families of depth `--depth` (default: universe size).
    Sections {
        #[command(flatten)]
        common: StructureArgs,
        #[arg(long, value_enum, default_value = "count")]
        mode: Mode,
        #[arg(long = "index-class", value_enum, default_value = "all")]
        class: Class,
    },
    /// Elements fixed by every automorphism.
    InvariantWitnesses(StructureArgs),
    /// Compare invariant witnesses with full-depth families.
    BijectionCheck(StructureArgs),
    /// Whether every 1-type heads a coherent family of depth `--depth`.
    StableCheck(StructureArgs),
    /// Whether every type of a reduct is definable in the full language.
    RelativeStableCheck {
        #[command(flatten)]
        common: StructureArgs,
        #[command(flatten)]
        reduct: ReductArgs,
    },
    /// Product of two or three invariant types.
    Product {
        #[command(flatten)]
        common: StructureArgs,
        /// Realizing element of a factor, outermost first; repeat 2 or 3 times.
        #[arg(long, required = true, num_args = 1)]
        witness: Vec<String>,
    },
    /// Morley sequence of an invariant type.
    Morley {
        #[command(flatten)]
        common: StructureArgs,
        #[arg(long)]
        witness: String,
        #[arg(long)]
        steps: usize,
    },
    /// Generic stability of invariant types.
    Genstable {
        #[command(flatten)]
        common: StructureArgs,
        /// Restrict to one witness; all invariant witnesses by default.
        #[arg(long)]
        witness: Option<String>,
    },
    /// The reduct and its type-space morphism, built at `--depth`.
    Reduct {
        #[command(flatten)]
        common: StructureArgs,
        #[command(flatten)]
        reduct: ReductArgs,
    },
    /// Borel construction at level `--depth` (default 1).
    Borel(StructureArgs),
    /// Contractibility probe of a preset simplicial set.
    Sset {
        /// `simplex:k`, `boundary:k`, `circle`, `discrete:k` or `nerve-poset:a<b,..`.
        #[arg(long)]
        preset: Option<String>,
        /// Poset document whose nerve is probed.
        #[arg(long)]
        poset: Option<PathBuf>,
        #[arg(long, default_value_t = 2)]
        depth: usize,
        #[arg(long, default_value_t = 1_000_000)]
        budget: u128,
    },
    /// Parameter diagram of a subset through `--depth`.
    Diagram {
        #[command(flatten)]
        common: StructureArgs,
        /// Comma separated elements.
        #[arg(long)]
        subset: String,
    },
    /// Type of an element over a subset, as a lifting.
    LiftType {
        #[command(flatten)]
        common: StructureArgs,
        #[arg(long)]
        witness: String,
        #[arg(long)]
        subset: String,
    },
}

pub fn run(cli: Cli) -> Result<report::Report, CliError> {
    use commands as c;
    match cli.command {
        Command::Orbits(a) => c::orbits(&a),
        Command::Automorphisms(a) => c::automorphisms(&a),
        Command::Sections {
            common,
            mode,
            class,
        } => c::sections(&common, mode, class),
        Command::InvariantWitnesses(a) => c::invariant_witnesses(&a),
        Command::BijectionCheck(a) => c::bijection_check(&a),
        Command::StableCheck(a) => c::stable_check(&a),
        Command::RelativeStableCheck { common, reduct } => {
            c::relative_stable_check(&common, &reduct)
        }
        Command::Product { common, witness } => c::product(&common, &witness),
        Command::Morley {
            common,
            witness,
            steps,
        } => c::morley(&common, &witness, steps),
        Command::Genstable { common, witness } => c::genstable(&common, witness.as_deref()),
        Command::Reduct { common, reduct } => c::reduct(&common, &reduct),
        Command::Borel(a) => c::borel(&a),
        Command::Sset {
            preset,
            poset,
            depth,
            budget,
        } => c::sset(preset.as_deref(), poset.as_deref(), depth, budget),
        Command::Diagram { common, subset } => c::diagram(&common, &subset),
        Command::LiftType {
            common,
            witness,
            subset,
        } => c::lift_type(&common, &witness, &subset),
    }
}
