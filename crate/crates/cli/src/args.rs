use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "keyforge", version, about = "Key polynomials and limit invariants of valuations on K[x]")]
pub struct Cli {
    /// Emit a single JSON document instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Run suites and searches on one thread.
    #[arg(long, global = true)]
    pub sequential: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Value of a polynomial.
    Eval {
        #[arg(short = 'f', value_name = "POLY")]
        f: String,
        config: PathBuf,
    },
    /// Expansion of f in powers of q and the truncated value.
    Expand {
        #[arg(short = 'f', value_name = "POLY")]
        f: String,
        #[arg(short = 'q', value_name = "POLY")]
        q: String,
        config: PathBuf,
    },
    /// epsilon(f), the argmax set I(f) and the derivative table.
    Epsilon {
        #[arg(short = 'f', value_name = "POLY")]
        f: String,
        config: PathBuf,
    },
    /// Decide whether q is an abstract key polynomial.
    Iskey {
        #[arg(short = 'q', value_name = "POLY")]
        q: String,
        /// Falsifier candidates.
        #[arg(long, default_value_t = 256)]
        budget: usize,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
        config: PathBuf,
    },
    /// Residual polynomial of f for the key phi and normalizer u.
    Residual {
        #[arg(short = 'f', value_name = "POLY")]
        f: String,
        #[arg(long, value_name = "POLY")]
        phi: String,
        #[arg(long, value_name = "POLY")]
        u: String,
        config: PathBuf,
    },
    /// Continuous chain commands; the config needs a limit_chain.
    Chain {
        #[command(subcommand)]
        command: ChainCommand,
    },
    /// Run the bundled property suites, and the configured valuation's own
    /// when a config is given.
    Selftest {
        /// Smaller sample counts.
        #[arg(long)]
        quick: bool,
        config: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct ChainArgs {
    /// Non-stable polynomial; defaults to the declared witness.
    #[arg(long, value_name = "POLY")]
    pub witness: Option<String>,
    /// Number of chain steps to materialize.
    #[arg(long, default_value_t = 6)]
    pub budget: usize,
    pub config: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum ChainCommand {
    /// t, alpha, b, delta, epsilon sequences and the boundedness class.
    Invariants(ChainArgs),
    /// Boundedness class of the chain values.
    Classify(ChainArgs),
    /// Check every limit identity that applies.
    Check(ChainArgs),
    /// Whether f stabilizes along the chain.
    Stable {
        #[arg(short = 'f', value_name = "POLY")]
        f: String,
        #[arg(long, default_value_t = 6)]
        budget: usize,
        config: PathBuf,
    },
}
