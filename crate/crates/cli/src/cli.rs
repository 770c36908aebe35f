use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "hilbcells", version, about = "Cells, Betti numbers and standard bases for Hilbert schemes of plane branches")]
pub struct Cli {
    /// Write the document here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Md,
}

#[derive(Debug, Args)]
pub struct SemigroupArgs {
    #[arg(long)]
    pub p: u32,
    #[arg(long)]
    pub q: u32,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the cells of Hilb^r with their dimensions.
    Cells {
        #[command(flatten)]
        semigroup: SemigroupArgs,
        #[arg(long)]
        r: u32,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Cross-check the enumeration against brute force.
        #[arg(long)]
        oracle: bool,
    },
    /// Euler and Betti numbers for r = 0..=r-max.
    Table {
        #[command(flatten)]
        semigroup: SemigroupArgs,
        #[arg(long)]
        r_max: u32,
        #[arg(long, value_enum, default_value = "md")]
        format: Format,
    },
    /// Division, standard-basis check, or coefficient solving over C[[G]].
    Stdbasis {
        /// Subalgebra generators, e.g. "t^3, t^4 + t^5".
        #[arg(long)]
        ring: String,
        /// Module generators; `solve` accepts symbolic coefficients.
        #[arg(long)]
        gens: String,
        /// Exactness horizon.
        #[arg(long, default_value_t = 40, global = true)]
        trunc: u32,
        #[arg(long, value_enum, default_value = "json", global = true)]
        format: Format,
        #[command(subcommand)]
        action: StdbasisAction,
    },
    /// Run the acceptance checks against the published tables.
    VerifyPaper {
        /// Start the cell-dimension sum at i = 1 instead of i = 0.
        #[arg(long)]
        sum_from_one: bool,
        #[arg(long, value_enum, default_value = "md")]
        format: Format,
    },
    /// Compare the cell dimension with the Pfister-Steenbrink formula.
    Counterexample {
        /// Semigroup and semimodule generators; defaults to <4,6,7> over <3,4>.
        #[arg(long, requires = "q", requires = "delta")]
        p: Option<u32>,
        #[arg(long)]
        q: Option<u32>,
        /// Generators of the semimodule, comma separated.
        #[arg(long, value_delimiter = ',')]
        delta: Option<Vec<i64>>,
        /// Replace the comparison formula by the cell windows.
        #[arg(long)]
        force_eq2_windows: bool,
        #[arg(long, value_enum, default_value = "md")]
        format: Format,
    },
}

#[derive(Debug, Subcommand)]
pub enum StdbasisAction {
    /// Check the standard-basis criterion and list S-process residues.
    Check,
    /// Divide f by the module generators.
    Reduce {
        #[arg(long)]
        f: String,
    },
    /// Force the symbolic coefficients so that every generator lies in C[[G]].
    Solve,
}
