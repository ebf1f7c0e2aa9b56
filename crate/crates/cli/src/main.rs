use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};

use catalan_paths::catalan::{catalan_upto, CatalanTable};
use catalan_paths::exact::{to_decimal, ExactInt, ExactRat};
use catalan_paths::figure::{figure_afinal_csv, FigureRequest, DEFAULT_SIZES, MAX_DIGITS};
use catalan_paths::paths::{
    average_length, path_count, summed_length_closed, summed_length_recursive,
};
use catalan_paths::series::kernels::{leaf_path_kernel, order_for};
use catalan_paths::tree::{oracle_path_stats, Bounds, ENUM_BOUND_ENV, PAIR_BOUND_ENV};
use catalan_paths::verify::{run_suite, Suite, VerifyOptions};
use catalan_paths::{Error, Exec};

const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_DOMAIN: u8 = 2;
const EXIT_RESOURCE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "catalan-paths",
    version,
    about = "Exact leaf-to-leaf path lengths on ordered Catalan trees"
)]
struct Cli {
    /// Run every loop on one thread.
    #[arg(long, global = true)]
    sequential: bool,

    /// Largest n enumerated exhaustively.
    #[arg(long, global = true, env = ENUM_BOUND_ENV, default_value_t = Bounds::default().enumeration)]
    enum_bound: usize,

    /// Largest n for exhaustive leaf-pair aggregation.
    #[arg(long, global = true, env = PAIR_BOUND_ENV, default_value_t = Bounds::default().pairwise)]
    pair_bound: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print C_0 through C_N, one per line.
    Catalan { n: usize },
    /// Summed and average path length for leaves r apart in trees with n internal vertices.
    Avg {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long, value_enum, default_value_t = Method::Closed)]
        method: Method,
        /// Truncation order for the series method.
        #[arg(long, default_value_t = 64)]
        order: usize,
        #[arg(long, default_value_t = 6)]
        digits: usize,
    },
    /// Write A_n(r) against r for several n, plus the n -> inf limit, as CSV.
    FigureAfinal {
        #[arg(long = "n", value_delimiter = ',', default_values_t = DEFAULT_SIZES)]
        sizes: Vec<usize>,
        /// Last r; defaults to the largest n.
        #[arg(long)]
        rmax: Option<usize>,
        /// Output file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 6)]
        digits: usize,
    },
    /// Run a verification suite and report each check.
    Verify {
        #[arg(long, value_enum)]
        suite: SuiteArg,
        /// Series truncation order.
        #[arg(long, default_value_t = 64)]
        order: usize,
        /// Size bound for the suite (oracle n, bridge n, partial-sum index).
        #[arg(long)]
        nmax: Option<usize>,
        /// Test hook: add one to C_k before checking the identities suite.
        #[arg(long, hide = true)]
        corrupt_catalan: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Closed,
    Recursive,
    Oracle,
    Series,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Identities,
    Oracle,
    Series,
    Asymptotics,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::Identities => Suite::Identities,
            SuiteArg::Oracle => Suite::Oracle,
            SuiteArg::Series => Suite::Series,
            SuiteArg::Asymptotics => Suite::Asymptotics,
        }
    }
}

enum Failure {
    Lib(Error),
    Io(String),
    Verify,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verify) => ExitCode::from(EXIT_VERIFY_FAILED),
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_VERIFY_FAILED)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Domain(_) => EXIT_DOMAIN,
                Error::Resource { .. } => EXIT_RESOURCE,
                Error::Inconsistent(_) => EXIT_VERIFY_FAILED,
            })
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let exec = if cli.sequential {
        Exec::Sequential
    } else {
        Exec::default()
    };
    let bounds = Bounds {
        enumeration: cli.enum_bound,
        pairwise: cli.pair_bound,
    };
    match cli.command {
        Command::Catalan { n } => {
            for c in catalan_upto(n).iter().take(n + 1) {
                println!("{c}");
            }
        }
        Command::Avg {
            n,
            r,
            method,
            order,
            digits,
        } => println!("{}", avg(n, r, method, order, digits, &bounds)?),
        Command::FigureAfinal {
            sizes,
            rmax,
            out,
            digits,
        } => {
            let req = FigureRequest {
                sizes,
                r_max: rmax,
                digits,
            };
            let csv = figure_afinal_csv(&req, exec)?;
            match out {
                None => print!("{csv}"),
                Some(path) => std::fs::write(&path, csv)
                    .map_err(|e| Failure::Io(format!("cannot write {}: {e}", path.display())))?,
            }
        }
        Command::Verify {
            suite,
            order,
            nmax,
            corrupt_catalan,
        } => {
            let catalan_override = corrupt_catalan.map(|k| {
                let mut values = catalan_upto(k.max(1)).to_vec();
                values[k] += 1;
                Arc::new(CatalanTable::from_values(values))
            });
            let opts = VerifyOptions {
                order,
                nmax,
                bounds,
                catalan_override,
            };
            let report = run_suite(suite.into(), &opts);
            println!("{report}");
            if !report.passed() {
                return Err(Failure::Verify);
            }
        }
    }
    Ok(())
}

fn avg(
    n: usize,
    r: usize,
    method: Method,
    order: usize,
    digits: usize,
    bounds: &Bounds,
) -> Result<String, Error> {
    if digits > MAX_DIGITS {
        return Err(Error::Domain(format!(
            "at most {MAX_DIGITS} decimal digits, got {digits}"
        )));
    }
    let count = path_count(n, r)?;
    let sum = match method {
        Method::Closed => summed_length_closed(n, r)?,
        Method::Recursive => summed_length_recursive(n, r)?,
        Method::Oracle => oracle_path_stats(n, r, bounds)?.sum,
        Method::Series => {
            let needed = order_for(n, r - 1);
            if needed > order {
                return Err(Error::Resource {
                    what: "series order n + r - 1",
                    value: needed,
                    bound: order,
                });
            }
            leaf_path_kernel(needed).coeff2_int(n, r - 1)?
        }
    };
    let average = ExactRat::new(sum.clone(), count.clone());
    if matches!(method, Method::Closed) && average != average_length(n, r)? {
        return Err(Error::Inconsistent(format!(
            "closed average for n = {n}, r = {r} disagrees with S / count"
        )));
    }
    Ok(render(&sum, &count, &average, digits))
}

fn render(sum: &ExactInt, count: &ExactInt, average: &ExactRat, digits: usize) -> String {
    format!(
        "S={sum} count={count} A={}/{} (~{})",
        average.numer(),
        average.denom(),
        to_decimal(average, digits)
    )
}
