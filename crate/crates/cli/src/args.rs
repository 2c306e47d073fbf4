use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "mcm", version, about = "Exact verification of Dickson-polynomial and MCM-polynomial identities over GF(2^m)")]
pub struct Cli {
    /// Emit one JSON object per report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run one verification, or the whole suite with `all`.
    Verify {
        check: CheckName,
        #[command(flatten)]
        p: Params,
        /// Largest n used by `verify all`.
        #[arg(long, default_value_t = 3)]
        max_n: u32,
        /// Limit the number of (c, j) pairs scanned by `stabilizer`.
        #[arg(long)]
        pairs: Option<usize>,
        /// Random points per identity in `dickson-relations`.
        #[arg(long, default_value_t = 16)]
        trials: usize,
    },
    /// Factorization types of x^(q+1)+x+1/a and C(x)+a, with orbit case.
    Correspond {
        #[command(flatten)]
        p: Params,
    },
    /// The q = 4 pairing table over GF(2^k), exhaustive in a.
    Quintic {
        #[arg(long, default_value_t = 1)]
        k: u32,
        #[arg(long)]
        mutate: bool,
    },
    /// Root-count distribution of C(x)+a over GF(q^m).
    Counts {
        #[arg(long, default_value_t = 2)]
        n: u32,
        #[arg(long, default_value = "1")]
        m: String,
        #[arg(long)]
        mutate: bool,
    },
    /// Whether C permutes GF(2^m), against gcd(2m, n) = 1.
    Permcheck {
        #[arg(long, default_value_t = 3)]
        n: u32,
        /// A value, a list `1,3,5`, or a range `1-10`.
        #[arg(long, default_value = "1")]
        m: String,
        #[arg(long)]
        mutate: bool,
    },
    /// Factorization type of a polynomial.
    Factor {
        /// `2^m` or `2^m/0xMODULUS`.
        #[arg(long)]
        field: String,
        /// Comma-separated hex coefficients, lowest degree first.
        #[arg(long)]
        poly: String,
    },
    /// Coefficients of the Dickson polynomial D_k over GF(2^n).
    Dickson {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        n: u32,
    },
    /// The root frame of x^(q+1)+ax+a over GF(2^k).
    Frame {
        #[arg(long, default_value_t = 2)]
        n: u32,
        #[arg(long, default_value_t = 1)]
        k: u32,
        #[arg(long, default_value = "0x1")]
        a: String,
        /// Include the roots and the (c, j) root table.
        #[arg(long)]
        dump: bool,
    },
}

#[derive(Args, Debug, Clone)]
pub struct Params {
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long)]
    pub m: Option<String>,
    /// Element of GF(2^k) in hex.
    #[arg(long, conflicts_with = "all_a")]
    pub a: Option<String>,
    /// Sweep every nonzero a in GF(2^k).
    #[arg(long)]
    pub all_a: bool,
    /// Perturb the expected side so the check must fail.
    #[arg(long)]
    pub mutate: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckName {
    MainIdentity,
    CjProduct,
    ETransforms,
    RootProduct,
    DicksonRelations,
    ClosedForms,
    Dihedral,
    ClassCounts,
    Stabilizer,
    Splitfield,
    SevenFormulas,
    OrbitStructure,
    Correspond,
    Quintic,
    Counts,
    Permcheck,
    All,
}
