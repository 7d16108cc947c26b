//! Text format, commands and scaling harness behind the `hyperfactor`
//! binary.
//!
//! Exit codes are 0 on success, 2 for unusable input or flags, and 3 when
//! an internal consistency check fails.

pub mod bench;
pub mod commands;
pub mod format;

use std::io::Read;

use clap::{Parser, Subcommand, ValueEnum};

pub use commands::CliError;

#[derive(Parser, Debug)]
#[command(name = "hyperfactor", version, about = "Prime factorization of directed hypergraphs under the Cartesian product")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the prime factors and the coordinate table.
    Factor {
        /// Input file, or `-` for standard input.
        file: String,
        #[arg(long)]
        json: bool,
        /// Check the reconstruction and, for n <= 8, compare with exhaustive search.
        #[arg(long)]
        verify: bool,
    },
    /// Left-fold Cartesian product of the inputs.
    Product {
        #[arg(required = true, num_args = 2..)]
        files: Vec<String>,
    },
    /// Edge list of the 2-section.
    Section { file: String },
    /// Factor with all checks; optionally compare against expected factors.
    Verify {
        file: String,
        /// Expected prime factors, one file each.
        factors: Vec<String>,
    },
    /// Emit a reproducible random instance.
    Gen {
        /// Defaults to $HYPERFACTOR_SEED, then 0.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 6)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        r: usize,
        /// 1 for a prime, 2 or 3 for a product with n vertices in total.
        #[arg(long, default_value_t = 1)]
        factors: usize,
    },
    /// Time the pipeline over a doubling series of sizes.
    Bench {
        #[arg(long, value_enum, default_value_t = SeriesArg::BoundedRank)]
        series: SeriesArg,
        #[arg(long, default_value_t = 1)]
        repeats: usize,
        #[arg(long, default_value_t = 256)]
        min_n: usize,
        #[arg(long, default_value_t = 8192)]
        max_n: usize,
        #[arg(long, default_value_t = 3)]
        r: usize,
        #[arg(long)]
        seed: Option<u64>,
        /// Fail if the n = 4096 row exceeds the wall-time budget.
        #[arg(long)]
        assert_budget: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SeriesArg {
    BoundedRank,
    Hypercube,
}

/// Captured result of one invocation.
#[derive(Debug, Default)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn log2_exact(n: usize, flag: &str) -> Result<u32, CliError> {
    if n < 2 || !n.is_power_of_two() {
        return Err(CliError::Input(format!("{flag} must be a power of two >= 2, got {n}")));
    }
    Ok(n.trailing_zeros())
}

pub fn execute(command: Command, stdin: &mut dyn Read) -> Result<String, CliError> {
    match command {
        Command::Factor { file, json, verify } => commands::factor(&commands::load(&file, stdin)?, json, verify),
        Command::Product { files } => {
            let hs = files.iter().map(|f| commands::load(f, stdin)).collect::<Result<Vec<_>, _>>()?;
            Ok(commands::product(&hs))
        }
        Command::Section { file } => Ok(commands::section(&commands::load(&file, stdin)?)),
        Command::Verify { file, factors } => {
            let h = commands::load(&file, stdin)?;
            let claimed = factors.iter().map(|f| commands::load(f, stdin)).collect::<Result<Vec<_>, _>>()?;
            commands::verify(&h, &claimed)
        }
        Command::Gen { seed, n, r, factors } => commands::gen(commands::resolve_seed(seed)?, n, r, factors),
        Command::Bench { series, repeats, min_n, max_n, r, seed, assert_budget } => {
            let cfg = bench::BenchConfig {
                series: match series {
                    SeriesArg::BoundedRank => bench::Series::BoundedRank,
                    SeriesArg::Hypercube => bench::Series::Hypercube,
                },
                repeats,
                min_log2: log2_exact(min_n, "--min-n")?,
                max_log2: log2_exact(max_n, "--max-n")?,
                r,
                seed: commands::resolve_seed(seed)?,
            };
            let report = bench::run(&cfg)?;
            let mut out = bench::render(&report);
            if assert_budget {
                out.push_str(&bench::check_budget(&report)?);
            }
            Ok(out)
        }
    }
}

/// Parse arguments (including the program name) and run.
pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match execute(cli.command, stdin) {
        Ok(stdout) => Outcome { code: 0, stdout, stderr: String::new() },
        Err(e) => Outcome { code: e.exit_code(), stdout: String::new(), stderr: format!("hyperfactor: {e}\n") },
    }
}
