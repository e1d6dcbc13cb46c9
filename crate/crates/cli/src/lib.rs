//! File-based command-line access to the `pml` algorithms, instance
//! generation, self-checks and benchmarks.

pub mod bench;
pub mod checksum;
pub mod commands;
pub mod error;
pub mod gen;
pub mod io;
pub mod selftest;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use pml::detred::DetMethod;
use pml::polmat::Strategy;
use pml::tuning::{set_tuning, Tuning};

use bench::{BenchOp, BenchSpec};
use commands::*;
use error::{CliError, CliResult};
use gen::{GenParams, Kind, PrimeClass};

#[derive(Debug, Parser)]
#[command(name = "pml", version, about = "Polynomial matrix algorithms over prime fields")]
pub struct Cli {
    /// TOML file overriding the algorithm-selection thresholds.
    #[arg(long, global = true)]
    pub tuning: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Output {
    /// Write here instead of stdout.
    #[arg(short, long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct Randomness {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Fail with exit code 2 instead of falling back on non-generic input.
    #[arg(long)]
    pub no_fallback: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Product of two polynomial matrices.
    Mul {
        a: PathBuf,
        b: PathBuf,
        /// naive, roots, geometric, vandermonde or crt; automatic if omitted.
        #[arg(long)]
        strategy: Option<Strategy>,
        #[command(flatten)]
        out: Output,
    },
    /// Approximant basis of F at order sigma.
    Pmbasis {
        f: PathBuf,
        #[arg(long)]
        sigma: usize,
        /// Comma-separated shift, zero if omitted.
        #[arg(long, allow_hyphen_values = true)]
        shift: Option<String>,
        #[arg(long, value_enum, default_value_t = BasisAlgo::DivideConquer)]
        algo: BasisAlgo,
        #[command(flatten)]
        out: Output,
    },
    /// Interpolant basis from an evaluation file.
    Pmintbasis {
        e: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        shift: Option<String>,
        #[arg(long, value_enum, default_value_t = BasisAlgo::DivideConquer)]
        algo: BasisAlgo,
        #[command(flatten)]
        out: Output,
    },
    /// Minimal left kernel basis.
    Kernel {
        f: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        shift: Option<String>,
        #[arg(long, value_enum, default_value_t = KernelAlgo::Zls)]
        algo: KernelAlgo,
        #[arg(long, value_enum, default_value_t = FlavorArg::Approx)]
        flavor: FlavorArg,
        #[command(flatten)]
        out: Output,
    },
    /// Solve A u = f b; prints the column [u; f].
    Solve {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, value_enum, default_value_t = SolveAlgo::Dixon)]
        algo: SolveAlgo,
        #[command(flatten)]
        out: Output,
    },
    /// Determinant.
    Det {
        a: PathBuf,
        /// minors, eval or linsolve; chosen by dimension if omitted.
        #[arg(long)]
        algo: Option<DetMethod>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Row reduced basis of the row space.
    Reduce {
        a: PathBuf,
        #[arg(long, value_enum, default_value_t = ExpansionArg::Highorder)]
        expansion: ExpansionArg,
        #[command(flatten)]
        out: Output,
    },
    /// Res_z(F, G) for bivariate F, G.
    Resultant {
        f: PathBuf,
        g: PathBuf,
        #[arg(long, value_enum, default_value_t = ResultantAlgo::Villard)]
        algo: ResultantAlgo,
        /// Block size; ceil(n^0.4) if omitted.
        #[arg(long)]
        m: Option<usize>,
        #[command(flatten)]
        rand: Randomness,
        #[command(flatten)]
        out: Output,
    },
    /// Characteristic polynomial of A modulo P.
    Charpoly {
        a: PathBuf,
        p: PathBuf,
        #[arg(long, value_enum, default_value_t = CharpolyAlgo::Bsgs)]
        algo: CharpolyAlgo,
        /// Block size; ceil(n^(1/3)) if omitted.
        #[arg(long)]
        m: Option<usize>,
        #[command(flatten)]
        rand: Randomness,
        #[command(flatten)]
        out: Output,
    },
    /// Timing grid written as CSV.
    Bench {
        #[arg(value_enum)]
        op: BenchOp,
        /// Comma-separated algorithm names; the main algorithm if omitted.
        #[arg(long)]
        algo: Option<String>,
        #[arg(long, default_value = "8x4")]
        sizes: String,
        /// Degrees (orders for basis operations, n for resultant and charpoly).
        #[arg(long, default_value = "64")]
        degrees: String,
        #[arg(long, value_enum, default_value_t = PrimeClass::LargeNtt)]
        prime: PrimeClass,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        reps: usize,
        /// Also print a markdown table to stderr.
        #[arg(long)]
        markdown: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Oracle-equivalence suites; prints pass counts and a checksum.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Instances per suite.
        #[arg(long, default_value_t = 10)]
        cases: usize,
    },
    /// Random instance files.
    Gen {
        #[arg(value_enum)]
        kind: Kind,
        #[arg(long, default_value_t = 4)]
        m: usize,
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, default_value_t = 8)]
        d: usize,
        #[arg(long, value_enum, default_value_t = PrimeClass::LargeNtt)]
        prime: PrimeClass,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Directory for the files.
        #[arg(long, default_value = ".")]
        dir: PathBuf,
    },
}

fn shift_arg(s: &Option<String>) -> CliResult<Option<Vec<i64>>> {
    s.as_deref().map(io::parse_list).transpose()
}

fn list_usize(s: &str) -> CliResult<Vec<usize>> {
    io::parse_list(s)?
        .into_iter()
        .map(|v| usize::try_from(v).map_err(|_| CliError::Usage(format!("negative value {v}"))))
        .collect()
}

/// Runs one parsed command and returns its standard output.
pub fn execute(cmd: &Command) -> CliResult<String> {
    let emit = |out: &Output, text: String| -> CliResult<String> {
        match &out.out {
            Some(p) => io::write(p, &text).map(|_| String::new()),
            None => Ok(text),
        }
    };
    match cmd {
        Command::Mul { a, b, strategy, out } => emit(out, mul(&io::read_polmat(a)?, &io::read_polmat(b)?, *strategy)?),
        Command::Pmbasis { f, sigma, shift, algo, out } => {
            emit(out, approximant(&io::read_polmat(f)?, *sigma, shift_arg(shift)?, *algo)?)
        }
        Command::Pmintbasis { e, shift, algo, out } => {
            let ev = io::Evaluations::from_text(&io::read(e)?)?;
            emit(out, interpolant(&ev, shift_arg(shift)?, *algo)?)
        }
        Command::Kernel { f, shift, algo, flavor, out } => {
            emit(out, kernel(&io::read_polmat(f)?, shift_arg(shift)?, *algo, *flavor)?)
        }
        Command::Solve { a, b, algo, out } => emit(out, solve(&io::read_polmat(a)?, &io::read_polmat(b)?, *algo)?),
        Command::Det { a, algo, seed, out } => emit(out, det(&io::read_polmat(a)?, *algo, *seed)?),
        Command::Reduce { a, expansion, out } => emit(out, reduce(&io::read_polmat(a)?, *expansion)?),
        Command::Resultant { f, g, algo, m, rand, out } => emit(
            out,
            resultant_cmd(&io::read_bivar(f)?, &io::read_bivar(g)?, *algo, *m, rand.seed, !rand.no_fallback)?,
        ),
        Command::Charpoly { a, p, algo, m, rand, out } => emit(
            out,
            charpoly_cmd(&io::read_poly(a)?, &io::read_poly(p)?, *algo, *m, rand.seed, !rand.no_fallback)?,
        ),
        Command::Bench { op, algo, sizes, degrees, prime, seed, reps, markdown, out } => {
            let spec = BenchSpec {
                op: *op,
                algos: algo.as_deref().map_or(Vec::new(), |a| a.split(',').map(|s| s.trim().to_string()).collect()),
                sizes: io::parse_sizes(sizes)?,
                degrees: list_usize(degrees)?,
                prime: *prime,
                seed: *seed,
                reps: *reps,
                threads: bench::threads_from_env(),
            };
            let rows = bench::run_bench(&spec)?;
            if *markdown {
                eprint!("{}", bench::to_markdown(&rows));
            }
            emit(out, bench::to_csv(&rows))
        }
        Command::Selftest { seed, cases } => {
            let report = selftest::selftest(*seed, *cases);
            if report.all_passed() {
                Ok(report.to_text())
            } else {
                Err(CliError::Usage(format!("selftest failures\n{}", report.to_text())))
            }
        }
        Command::Gen { kind, m, n, d, prime, seed, dir } => {
            let files = gen::gen_instance(*kind, GenParams { m: *m, n: *n, d: *d, prime: *prime }, *seed)?;
            std::fs::create_dir_all(dir).map_err(|source| CliError::Io { path: dir.clone(), source })?;
            let mut names = String::new();
            for (name, text) in files {
                let path = dir.join(&name);
                io::write(&path, &text)?;
                names.push_str(&format!("{}\n", path.display()));
            }
            Ok(names)
        }
    }
}

fn load_tuning(path: &Path) -> CliResult<()> {
    Ok(set_tuning(Tuning::from_toml(&io::read(path)?)?)?)
}

/// Parses `args` (program name first), runs, prints, and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let result = cli.tuning.as_deref().map_or(Ok(()), load_tuning).and_then(|_| execute(&cli.command));
    match result {
        Ok(text) => {
            print!("{text}");
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
