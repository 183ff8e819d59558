//! Command-line front end: `count`, `verify`, `enumerate` and `orbits`.
//!
//! Exit codes: 0 success, 1 check failure, 2 budget exceeded, 3 usage error.

mod suites;

use std::ffi::OsString;
use std::io::Write;
use std::ops::RangeInclusive;

use clap::{Parser, Subcommand, ValueEnum};

pub use suites::{run_suite, Grid, Suite};

use crate::counting::count_row;
use crate::error::{Error, Result};
use crate::geometry::{enumerate_dl, enumerate_omega, VarietyCtx};
use crate::groups::{
    act_projective, enumerate_subgroup, orbits, point_key, rational_torus, torus_act, SimpleRootSubset, SubgroupKind,
};
use crate::report::Report;
use crate::Budget;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK: i32 = 1;
pub const EXIT_BUDGET: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "drinfeld", version, about = "Point counts and explicit quotient maps for Drinfeld half-spaces over finite fields")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Maximum number of points or group elements any enumeration may visit.
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Modulus of F_{q^m} over F_p, coefficients low to high, comma separated.
    #[arg(long, global = true, value_delimiter = ',')]
    pub modulus: Option<Vec<u32>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, clap::Args)]
pub struct Params {
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long)]
    pub q: Option<u64>,
    /// Extension degree `N` or inclusive range `A..B`.
    #[arg(long, value_parser = parse_m)]
    pub m: Option<RangeInclusive<u32>>,
    /// Index of the omitted simple root.
    #[arg(long)]
    pub i: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count table rows for Ω and DL over F_{q^m}.
    Count {
        #[command(flatten)]
        params: Params,
    },
    /// Run a verification suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[command(flatten)]
        params: Params,
        /// Restrict default grids to d <= 3, q <= 3, m <= 4.
        #[arg(long)]
        quick: bool,
    },
    /// List the points of Ω or DL.
    Enumerate {
        #[arg(value_enum)]
        what: Variety,
        #[command(flatten)]
        params: Params,
    },
    /// Orbit partition of Ω (or of DL for the torus).
    Orbits {
        #[arg(long, value_enum)]
        group: GroupName,
        #[command(flatten)]
        params: Params,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Variety {
    Omega,
    Dl,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GroupName {
    #[value(name = "U")]
    U,
    #[value(name = "B")]
    B,
    #[value(name = "U_I")]
    UI,
    #[value(name = "V_I")]
    VI,
    #[value(name = "P_I")]
    PI,
    #[value(name = "GL")]
    Gl,
    #[value(name = "SL")]
    Sl,
    /// Rational points of the torus, acting on DL.
    #[value(name = "T")]
    T,
}

fn parse_m(s: &str) -> std::result::Result<RangeInclusive<u32>, String> {
    let num = |t: &str| t.trim().parse::<u32>().map_err(|e| format!("bad extension degree {t:?}: {e}"));
    let range = match s.split_once("..") {
        Some((a, b)) => num(a)?..=num(b.trim_start_matches('='))?,
        None => {
            let n = num(s)?;
            n..=n
        }
    };
    if range.is_empty() || *range.start() == 0 {
        return Err(format!("empty or zero extension range {s:?}"));
    }
    Ok(range)
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Budget { .. } => EXIT_BUDGET,
        Error::NotPrime(_)
        | Error::NotPrimePower(_)
        | Error::ZeroDegree
        | Error::InvalidModulus(_)
        | Error::OutOfRange(_)
        | Error::Invalid(_)
        | Error::ContextMismatch(_) => EXIT_USAGE,
        _ => EXIT_CHECK,
    }
}

struct Run<'a> {
    budget: Budget,
    format: Format,
    modulus: Option<Vec<u32>>,
    out: &'a mut dyn Write,
}

impl Run<'_> {
    fn ctx(&self, d: usize, q: u64, m: u32) -> Result<VarietyCtx> {
        VarietyCtx::build(d, q, m, self.budget, self.modulus.clone())
    }

    fn emit(&mut self, text: &str) -> Result<()> {
        self.out.write_all(text.as_bytes()).map_err(|e| Error::Invalid(format!("write failed: {e}")))
    }
}

fn need<T: Clone>(v: &Option<T>, flag: &str) -> Result<T> {
    v.clone().ok_or_else(|| Error::Invalid(format!("missing --{flag}")))
}

fn single_m(params: &Params) -> Result<u32> {
    let r = need(&params.m, "m")?;
    if r.start() != r.end() {
        return Err(Error::Invalid("this command takes a single --m".into()));
    }
    Ok(*r.start())
}

/// Parses `args` (including the program name), runs the command and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    return EXIT_OK;
                }
                _ => EXIT_USAGE,
            };
            let _ = write!(err, "{e}");
            return code;
        }
    };
    if let Some(n) = cli.jobs {
        // Ignored if a global pool already exists (e.g. repeated calls in tests).
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    let mut budget = Budget::default();
    if let Some(b) = cli.budget {
        budget.points = b;
    }
    let mut run = Run { budget, format: cli.format, modulus: cli.modulus.clone(), out };
    match dispatch(&mut run, &cli.command) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn dispatch(run: &mut Run, command: &Command) -> Result<i32> {
    match command {
        Command::Count { params } => cmd_count(run, params),
        Command::Verify { suite, params, quick } => cmd_verify(run, *suite, params, *quick),
        Command::Enumerate { what, params } => cmd_enumerate(run, *what, params),
        Command::Orbits { group, params } => cmd_orbits(run, *group, params),
    }
}

fn cmd_count(run: &mut Run, params: &Params) -> Result<i32> {
    let (d, q) = (need(&params.d, "d")?, need(&params.q, "q")?);
    let ms = need(&params.m, "m")?;
    if run.modulus.is_some() && ms.start() != ms.end() {
        return Err(Error::Invalid("--modulus needs a single --m".into()));
    }
    let mut rows = Vec::new();
    let mut ok = true;
    for m in ms {
        let ctx = run.ctx(d, q, m)?;
        let stats = crate::counting::fiber_statistics(&ctx)?;
        let row = count_row(&ctx)?;
        ok &= row.omega_enum == row.omega_closed && stats.holds();
        rows.push(row);
    }
    let text = match run.format {
        Format::Csv => {
            let mut s = String::from(crate::counting::CountRow::CSV_HEADER);
            s.push('\n');
            for r in &rows {
                s.push_str(&r.to_csv());
                s.push('\n');
            }
            s
        }
        Format::Json => json(&rows)?,
    };
    run.emit(&text)?;
    Ok(if ok { EXIT_OK } else { EXIT_CHECK })
}

fn json<T: serde::Serialize>(v: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(v).map_err(|e| Error::Invalid(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn report_text(report: &Report, format: Format) -> Result<String> {
    match format {
        Format::Csv => Ok(report.to_string()),
        Format::Json => {
            let lines: Vec<serde_json::Value> = report
                .lines
                .iter()
                .map(|l| {
                    let params: serde_json::Map<String, serde_json::Value> =
                        l.params.iter().map(|(k, v)| (k.clone(), serde_json::Value::String(v.clone()))).collect();
                    serde_json::json!({ "name": l.name, "params": params, "pass": l.pass, "detail": l.detail })
                })
                .collect();
            json(&lines)
        }
    }
}

fn cmd_verify(run: &mut Run, suite: Suite, params: &Params, quick: bool) -> Result<i32> {
    let grid = Grid::from_params(params, quick);
    let report = run_suite(suite, &grid, run.budget, run.modulus.clone())?;
    let text = report_text(&report, run.format)?;
    run.emit(&text)?;
    Ok(if report.all_pass() { EXIT_OK } else { EXIT_CHECK })
}

fn cmd_enumerate(run: &mut Run, what: Variety, params: &Params) -> Result<i32> {
    let ctx = run.ctx(need(&params.d, "d")?, need(&params.q, "q")?, single_m(params)?)?;
    let rows: Vec<Vec<u32>> = match what {
        Variety::Omega => enumerate_omega(&ctx)?.iter().map(|p| ctx.codes(p.coords())).collect(),
        Variety::Dl => enumerate_dl(&ctx)?.iter().map(|v| ctx.codes(&v.0)).collect(),
    };
    let sep = if what == Variety::Omega { ":" } else { "," };
    let text = match run.format {
        Format::Csv => rows.iter().map(|r| join(r, sep) + "\n").collect(),
        Format::Json => json(&rows)?,
    };
    run.emit(&text)?;
    Ok(EXIT_OK)
}

fn join(codes: &[u32], sep: &str) -> String {
    codes.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(sep)
}

fn cmd_orbits(run: &mut Run, group: GroupName, params: &Params) -> Result<i32> {
    let d = need(&params.d, "d")?;
    let ctx = run.ctx(d, need(&params.q, "q")?, single_m(params)?)?;
    let subset = || -> Result<SimpleRootSubset> { SimpleRootSubset::maximal(d, need(&params.i, "i")?) };
    let (lines, sep): (Vec<Vec<Vec<u32>>>, &str) = if group == GroupName::T {
        let dl = enumerate_dl(&ctx)?;
        let t = rational_torus(&ctx);
        let parts = orbits(&dl, &t, |v| point_key(ctx.ext(), &v.0), |s, v| Ok(torus_act(&ctx, *s, v)))?;
        (parts.iter().map(|o| o.iter().map(|&n| ctx.codes(&dl[n].0)).collect()).collect(), ",")
    } else {
        let kind = match group {
            GroupName::U => SubgroupKind::U,
            GroupName::B => SubgroupKind::B,
            GroupName::UI => SubgroupKind::UI(subset()?),
            GroupName::VI => SubgroupKind::VI(subset()?),
            GroupName::PI => SubgroupKind::PI(subset()?),
            GroupName::Gl => SubgroupKind::GL,
            GroupName::Sl => SubgroupKind::SL,
            GroupName::T => unreachable!(),
        };
        let omega = enumerate_omega(&ctx)?;
        let elems = enumerate_subgroup(ctx.base(), d, &kind, run.budget)?;
        let parts = orbits(&omega, &elems, |p| point_key(ctx.ext(), p.coords()), |g, p| act_projective(&ctx, g, p))?;
        (parts.iter().map(|o| o.iter().map(|&n| ctx.codes(omega[n].coords())).collect()).collect(), ":")
    };
    let text = match run.format {
        Format::Csv => lines
            .iter()
            .map(|o| o.iter().map(|p| join(p, sep)).collect::<Vec<_>>().join(" ") + "\n")
            .collect(),
        Format::Json => json(&lines)?,
    };
    run.emit(&text)?;
    Ok(EXIT_OK)
}
