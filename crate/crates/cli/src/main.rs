//! `agbound`: compute, tabulate and verify maximal dimensions of compact
//! subvarieties.
//!
//! Exit codes: 0 on success, 1 when a verified claim fails or a table
//! disagrees with its fixture, 2 on usage errors.

mod output;
mod schema;

use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{CommandFactory, Parser, Subcommand, ValueEnum};

use agbound::{GenusRange, VerificationReport};

use crate::output::Format;

#[derive(Debug, Parser)]
#[command(
    name = "agbound",
    version,
    about = "Maximal dimensions of compact subvarieties of A_g and M_g^ct"
)]
struct Cli {
    /// Output format (default depends on the command).
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Worker threads for exhaustive checks (default: available parallelism).
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,

    /// Write output to PATH instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Stamp output with the generation time (breaks byte-identical output).
    #[arg(long, global = true)]
    timestamp: bool,

    /// Print the JSON schema of the command's output and exit.
    #[arg(long, global = true)]
    schema: bool,

    /// Lift the hard ceilings on range flags.
    #[arg(long, global = true)]
    unsafe_no_ceiling: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// dmax(g) for a single genus or an inclusive range `a..b`.
    Dmax {
        #[arg(value_name = "RANGE")]
        range: Option<GenusRange>,
    },
    /// The two summary tables.
    Tables {
        /// Compare against the embedded fixtures; exit 1 on any mismatch.
        #[arg(long)]
        check: bool,
        /// Also emit consequences of dmc(J(M_g^ct)) <= g - 1.
        #[arg(long)]
        conjectural: bool,
    },
    /// Run one of the exhaustive verifiers.
    Verify {
        #[arg(value_enum, value_name = "LEMMA")]
        lemma: Option<Lemma>,
        /// Upper end of the genus (or parameter) window.
        #[arg(long, value_name = "N")]
        g_max: Option<u64>,
        /// Largest multiset sum (lemma-N only).
        #[arg(long, value_name = "N")]
        sum_max: Option<u64>,
        /// Largest number of real factors (cor-decoupled only).
        #[arg(long, value_name = "N")]
        k_max: Option<u64>,
    },
    /// dmc(A_g), its classification case and the constructions reaching it.
    Explain {
        #[arg(value_name = "G")]
        g: Option<u64>,
    },
    /// Rows of the Satake classification.
    Catalog {
        /// Largest representation dimension to list.
        #[arg(long, value_name = "N", default_value_t = 64)]
        rep_dim_max: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[allow(clippy::enum_variant_names)]
enum Lemma {
    #[value(name = "lemma-dmax")]
    LemmaDmax,
    #[value(name = "lemma-N")]
    LemmaN,
    #[value(name = "claim-F")]
    ClaimF,
    #[value(name = "prop-estimate")]
    PropEstimate,
    #[value(name = "remark-domination")]
    RemarkDomination,
    #[value(name = "cor-C")]
    CorC,
    #[value(name = "cor-decoupled")]
    CorDecoupled,
    #[value(name = "thm-B")]
    ThmB,
    #[value(name = "non-decoupled")]
    NonDecoupled,
}

/// Default and ceiling of the main range flag.
struct Window {
    default: u64,
    ceiling: u64,
}

impl Lemma {
    fn g_window(self) -> Window {
        let (default, ceiling) = match self {
            Lemma::LemmaDmax => (4000, 20_000),
            Lemma::LemmaN => (60, 80),
            Lemma::ClaimF | Lemma::RemarkDomination => (64, 512),
            Lemma::PropEstimate => (2000, 50_000),
            Lemma::CorC => (23, 23),
            Lemma::CorDecoupled => (1024, 1 << 16),
            Lemma::ThmB => (500, 5000),
            Lemma::NonDecoupled => (60, 400),
        };
        Window { default, ceiling }
    }
}

const DMAX_ROWS_CEILING: u64 = 1_000_000;
const EXPLAIN_CEILING: u64 = 10_000;
const CATALOG_CEILING: u64 = 1 << 20;
const K_MAX_DEFAULT: u64 = 12;
const K_MAX_CEILING: u64 = 64;

/// An error that maps to exit code 2.
#[derive(Debug)]
struct UsageError(String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    anyhow::Error::new(UsageError(msg.into()))
}

/// Library errors caused by bad input are usage errors.
fn lib_err(e: agbound::Error) -> anyhow::Error {
    match e {
        agbound::Error::Domain { .. }
        | agbound::Error::InvalidCase { .. }
        | agbound::Error::Parse(_)
        | agbound::Error::Overflow(_) => usage(e.to_string()),
        other => anyhow::Error::new(other),
    }
}

fn ceiling(cli: &Cli, flag: &str, value: u64, max: u64) -> anyhow::Result<()> {
    if value > max && !cli.unsafe_no_ceiling {
        return Err(usage(format!(
            "{flag} {value} exceeds the ceiling {max}; pass --unsafe-no-ceiling to run anyway"
        )));
    }
    Ok(())
}

fn require<T>(value: Option<T>, name: &str) -> T {
    value.unwrap_or_else(|| {
        Cli::command()
            .error(
                clap::error::ErrorKind::MissingRequiredArgument,
                format!("the argument <{name}> is required"),
            )
            .exit()
    })
}

/// What a command produced.
struct Outcome {
    text: String,
    /// Diagnostics for standard error.
    notes: Vec<String>,
    ok: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome {
            text,
            notes: Vec::new(),
            ok: true,
        }
    }
}

fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            return Err(usage("--jobs must be at least 1"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .context("configuring the worker pool")?;
    }

    if cli.schema {
        let name = match cli.command {
            Command::Dmax { .. } => "dmax",
            Command::Tables { .. } => "tables",
            Command::Verify { .. } => "report",
            Command::Explain { .. } => "explain",
            Command::Catalog { .. } => "catalog",
        };
        return Ok(Outcome::ok(
            schema::get(name).expect("schema embedded").to_string(),
        ));
    }

    let stamp = cli.timestamp.then(output::unix_now);
    match &cli.command {
        Command::Dmax { range } => {
            let range = require(*range, "RANGE");
            ceiling(cli, "range length", range.len(), DMAX_ROWS_CEILING)?;
            let rows = range
                .iter()
                .map(|g| agbound::dmax(g).map(|d| (g, d)))
                .collect::<agbound::Result<Vec<_>>>()
                .map_err(lib_err)?;
            let format = cli.format.unwrap_or(Format::Markdown);
            Ok(Outcome::ok(output::dmax(&rows, format, stamp)?))
        }
        Command::Tables { check, conjectural } => {
            let set = agbound::tables::assemble_tables(*conjectural).map_err(lib_err)?;
            let format = cli.format.unwrap_or(Format::Markdown);
            let text = output::tables(&set, format, stamp)?;
            if !check {
                return Ok(Outcome::ok(text));
            }
            let mismatches = agbound::tables::check_tables(&set).map_err(lib_err)?;
            let ok = mismatches.is_empty();
            let mut notes: Vec<String> = mismatches
                .iter()
                .map(|m| format!("mismatch: {m}"))
                .collect();
            if ok {
                notes.push("check: every cell matches the fixtures".into());
            }
            Ok(Outcome { text, notes, ok })
        }
        Command::Verify {
            lemma,
            g_max,
            sum_max,
            k_max,
        } => {
            let lemma = require(*lemma, "LEMMA");
            let report = verify(cli, lemma, *g_max, *sum_max, *k_max)?;
            let ok = report.status.is_pass();
            let format = cli.format.unwrap_or(Format::Json);
            Ok(Outcome {
                text: output::report(&report, format, stamp)?,
                notes: Vec::new(),
                ok,
            })
        }
        Command::Explain { g } => {
            let g = require(*g, "G");
            if g < 1 {
                return Err(usage("explain requires g >= 1"));
            }
            ceiling(cli, "g", g, EXPLAIN_CEILING)?;
            let result = agbound::moduli::dmc_ag(g).map_err(lib_err)?;
            let format = cli.format.unwrap_or(Format::Markdown);
            Ok(Outcome::ok(output::explain(&result, format, stamp)?))
        }
        Command::Catalog { rep_dim_max } => {
            ceiling(cli, "--rep-dim-max", *rep_dim_max, CATALOG_CEILING)?;
            let cases = agbound::satake::catalog(*rep_dim_max);
            let format = cli.format.unwrap_or(Format::Json);
            Ok(Outcome::ok(output::catalog(
                &cases,
                *rep_dim_max,
                format,
                stamp,
            )?))
        }
    }
}

fn verify(
    cli: &Cli,
    lemma: Lemma,
    g_max: Option<u64>,
    sum_max: Option<u64>,
    k_max: Option<u64>,
) -> anyhow::Result<VerificationReport> {
    use agbound::{arith, efficiency, moduli, pairs, satake};

    if sum_max.is_some() && lemma != Lemma::LemmaN {
        return Err(usage("--sum-max applies only to lemma-N"));
    }
    if k_max.is_some() && lemma != Lemma::CorDecoupled {
        return Err(usage("--k-max applies only to cor-decoupled"));
    }
    if g_max.is_some() && lemma == Lemma::LemmaN {
        return Err(usage("lemma-N takes --sum-max, not --g-max"));
    }
    let window = lemma.g_window();
    let n = match lemma {
        Lemma::LemmaN => sum_max.unwrap_or(window.default),
        _ => g_max.unwrap_or(window.default),
    };
    let flag = if lemma == Lemma::LemmaN {
        "--sum-max"
    } else {
        "--g-max"
    };
    ceiling(cli, flag, n, window.ceiling)?;

    let report = match lemma {
        Lemma::LemmaDmax => arith::verify_superadditivity(n),
        Lemma::LemmaN => efficiency::verify_lemma_n(n).map(|mut r| {
            r.absorb(efficiency::verify_two_element_criterion(200));
            r.absorb(efficiency::verify_monotonicity(n.min(40)));
            r
        }),
        Lemma::ClaimF => pairs::verify_claim_f(n, n, n, n),
        Lemma::PropEstimate => pairs::verify_prop_estimate(n),
        Lemma::RemarkDomination => pairs::verify_remark_domination(n, n),
        Lemma::CorC => moduli::verify_cor_c(n),
        Lemma::CorDecoupled => {
            let k = k_max.unwrap_or(K_MAX_DEFAULT);
            ceiling(cli, "--k-max", k, K_MAX_CEILING)?;
            satake::verify_decoupled_bound(n, k)
        }
        Lemma::ThmB => moduli::verify_theorem_b(n),
        Lemma::NonDecoupled => efficiency::verify_two_factor_case(n, 12, n / 2),
    };
    report.map_err(lib_err)
}

fn emit(cli: &Cli, text: &str) -> anyhow::Result<()> {
    match &cli.out {
        Some(path) => {
            std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush().map_err(|e| anyhow!(e))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = run(&cli).and_then(|o| emit(&cli, &o.text).map(|()| o));
    match outcome {
        Ok(o) => {
            for note in &o.notes {
                eprintln!("{note}");
            }
            if o.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) if e.is::<UsageError>() => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
