//! Command-line front end. [`run`] never panics on user input and returns
//! the exit code together with the text to print.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand};

use crate::algebra::{Ctx, FieldCtx, Poly};
use crate::cfe::{
    artin_step, cfe_expand, cfe_period_with_budget, cfe_reduce, DegreeStats, DEFAULT_BUDGET,
};
use crate::error::Error;
use crate::hecke::{
    cylinder_measure, escape_table, hecke_walk_explore, mass_constants, rows_to_csv, Chooser,
    CylinderSpec, HeckeRow, PARTIAL_SUM_CUTOFF,
};
use crate::laurent::Laurent;
use crate::natext::{coding_window, first_return_time, natext_step, natext_unstep, pair_make};
use crate::surd::Surd;

#[derive(Parser, Debug)]
#[command(name = "artin-cfe", about = "Continued fractions over F_q((1/Y))")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Field {
    /// Order of the (prime) coefficient field.
    #[arg(long)]
    q: u64,
}

#[derive(Args, Debug)]
struct SurdArg {
    /// Quadratic irrational `A|B|C|S`, each part a coefficient list.
    #[arg(long)]
    surd: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print `[a_0; a_1, ..., a_n]`.
    Expand {
        #[command(flatten)]
        field: Field,
        #[command(flatten)]
        surd: SurdArg,
        #[arg(long, default_value_t = 10)]
        digits: usize,
    },
    /// Print the preperiod, cycle and degrees.
    Period {
        #[command(flatten)]
        field: Field,
        #[command(flatten)]
        surd: SurdArg,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Degree statistics along the ray `P^n f` as CSV.
    HeckeScan {
        #[command(flatten)]
        field: Field,
        #[command(flatten)]
        surd: SurdArg,
        #[arg(long = "P")]
        p: String,
        #[arg(long)]
        nmax: usize,
        #[arg(long = "bigN", default_value_t = 0)]
        big_n: u64,
        #[arg(long)]
        out: Option<String>,
    },
    /// A non-backtracking Hecke walk as CSV; without a seed it always
    /// multiplies by P.
    HeckeWalk {
        #[command(flatten)]
        field: Field,
        #[command(flatten)]
        surd: SurdArg,
        #[arg(long = "P")]
        p: String,
        #[arg(long)]
        depth: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<String>,
    },
    /// Natural extension checks from the cycle entry of the surd.
    NatextCheck {
        #[command(flatten)]
        field: Field,
        #[command(flatten)]
        surd: SurdArg,
        #[arg(long, default_value_t = 10)]
        steps: usize,
    },
    /// Haar mass of a cylinder; digits separated by `;`.
    Cylinder {
        #[command(flatten)]
        field: Field,
        #[arg(long)]
        digits: String,
    },
    /// Exact cross-section mass constants.
    MeasureConstants {
        #[command(flatten)]
        field: Field,
    },
    /// Square root series of a polynomial.
    SqrtSeries {
        #[command(flatten)]
        field: Field,
        #[arg(long = "P")]
        p: String,
        /// Exclusive bound `k` of the known terms, printed as `O(Y^-k)`.
        #[arg(long, default_value_t = 16)]
        prec: usize,
    },
}

/// A failure tagged with the flag it came from.
struct Fail {
    code: i32,
    msg: String,
}

fn fail(flag: &str, e: impl std::fmt::Display) -> Fail {
    Fail {
        code: 1,
        msg: format!("error: --{flag}: {e}"),
    }
}

fn lib_fail(flag: &str, e: Error) -> Fail {
    match e {
        Error::IterationBudgetExceeded(_) => Fail {
            code: 2,
            msg: format!("error: --{flag}: {e}"),
        },
        e => fail(flag, e),
    }
}

fn field(f: &Field) -> Result<Ctx, Fail> {
    let bad = || fail("q", "q must be an odd prime in CLI mode");
    match FieldCtx::prime(f.q) {
        Ok(ctx) => Ok(ctx),
        Err(_) => Err(bad()),
    }
}

fn surd(ctx: &Ctx, s: &SurdArg) -> Result<Surd, Fail> {
    Surd::parse(ctx, &s.surd).map_err(|e| fail("surd", e))
}

fn poly(ctx: &Ctx, flag: &str, s: &str) -> Result<Poly, Fail> {
    Poly::parse(ctx, s).map_err(|e| fail(flag, e))
}

fn list(ps: &[Poly]) -> String {
    ps.iter()
        .map(|p| p.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

fn emit_csv(rows: &[HeckeRow], out: &Option<String>) -> Result<String, Fail> {
    let csv = rows_to_csv(rows);
    match out {
        None => Ok(csv),
        Some(path) => {
            std::fs::write(path, &csv).map_err(|e| fail("out", e))?;
            Ok(format!("wrote {} rows to {path}\n", rows.len()))
        }
    }
}

fn execute(cmd: Command) -> Result<String, Fail> {
    let mut out = String::new();
    match cmd {
        Command::Expand {
            field: f,
            surd: s,
            digits,
        } => {
            let ctx = field(&f)?;
            let x = surd(&ctx, &s)?;
            let d = cfe_expand(&x, digits);
            writeln!(out, "[{}; {}]", d[0], list(&d[1..])).unwrap();
        }
        Command::Period {
            field: f,
            surd: s,
            budget,
        } => {
            let ctx = field(&f)?;
            let x = surd(&ctx, &s)?;
            let c = cfe_period_with_budget(&x, budget).map_err(|e| lib_fail("budget", e))?;
            let stats = DegreeStats::of_cycle(&c.cycle);
            let degs: Vec<String> = stats.degs.iter().map(|d| d.to_string()).collect();
            writeln!(
                out,
                "pre=[{}] cycle=[{}] ell={} degs=[{}]",
                list(&c.preperiod),
                list(&c.cycle),
                stats.ell,
                degs.join(", ")
            )
            .unwrap();
        }
        Command::HeckeScan {
            field: f,
            surd: s,
            p,
            nmax,
            big_n,
            out: path,
        } => {
            let ctx = field(&f)?;
            let x = surd(&ctx, &s)?;
            let p = poly(&ctx, "P", &p)?;
            let rows = escape_table(&x, &p, nmax, big_n).map_err(|e| lib_fail("P", e))?;
            out = emit_csv(&rows, &path)?;
        }
        Command::HeckeWalk {
            field: f,
            surd: s,
            p,
            depth,
            seed,
            out: path,
        } => {
            let ctx = field(&f)?;
            let x = surd(&ctx, &s)?;
            let p = poly(&ctx, "P", &p)?;
            if depth == 0 {
                return Err(fail("depth", "depth must be at least 1"));
            }
            let chooser = seed.map_or(Chooser::AlwaysMultiply, Chooser::Seeded);
            let walk = hecke_walk_explore(&x, &p, depth, &chooser).map_err(|e| lib_fail("P", e))?;
            let rows: Vec<HeckeRow> = walk.into_iter().map(|(_, r)| r).collect();
            out = emit_csv(&rows, &path)?;
        }
        Command::NatextCheck {
            field: f,
            surd: s,
            steps,
        } => {
            let ctx = field(&f)?;
            let x = surd(&ctx, &s)?;
            let (_, entry) = cfe_reduce(&x).map_err(|e| lib_fail("surd", e))?;
            let p0 = pair_make(&entry).map_err(|e| lib_fail("surd", e))?;
            let window = coding_window(&p0, steps);
            let mut p = p0.clone();
            let mut plus = entry.clone();
            let (mut commutes, mut inverse) = (true, true);
            let mut times = Vec::with_capacity(steps);
            for _ in 0..steps {
                times.push(first_return_time(&p).to_string());
                let (a, next) = natext_step(&p);
                let (b, plus_next) = artin_step(&plus).map_err(|e| lib_fail("surd", e))?;
                commutes &= a == b && next.xi_plus == plus_next;
                inverse &= natext_unstep(&next) == (a, p.clone());
                plus = plus_next;
                p = next;
            }
            for _ in 0..steps {
                p = natext_unstep(&p).1;
            }
            writeln!(out, "entry={entry}").unwrap();
            writeln!(out, "window=[{}]", list(&window)).unwrap();
            writeln!(out, "return_times=[{}]", times.join(", ")).unwrap();
            writeln!(out, "commutes={commutes}").unwrap();
            writeln!(out, "inverse={inverse}").unwrap();
            writeln!(out, "round_trip={}", p == p0).unwrap();
        }
        Command::Cylinder { field: f, digits } => {
            let ctx = field(&f)?;
            let ds = digits
                .split(';')
                .map(|d| poly(&ctx, "digits", d.trim()))
                .collect::<Result<Vec<_>, _>>()?;
            let c = CylinderSpec::new(ds).map_err(|e| fail("digits", e))?;
            let m = cylinder_measure(&c);
            writeln!(out, "mass={}/{}", m.numer(), m.denom()).unwrap();
        }
        Command::MeasureConstants { field: f } => {
            let ctx = field(&f)?;
            let m = mass_constants(ctx.q());
            let r = |x: &num_rational::BigRational| format!("{}/{}", x.numer(), x.denom());
            writeln!(out, "series={}", r(&m.series)).unwrap();
            writeln!(
                out,
                "partial_sum_{PARTIAL_SUM_CUTOFF}={}",
                r(m.partial_sums.last().unwrap())
            )
            .unwrap();
            writeln!(out, "paper_mass={}", r(&m.stated_mass)).unwrap();
            writeln!(out, "stated_haar_multiple={}", r(&m.stated_haar_multiple)).unwrap();
            writeln!(out, "derived_haar_multiple={}", r(&m.derived_haar_multiple)).unwrap();
            writeln!(out, "match={}", !m.mismatch).unwrap();
        }
        Command::SqrtSeries { field: f, p, prec } => {
            let ctx = field(&f)?;
            let p = poly(&ctx, "P", &p)?;
            if prec < 1 {
                return Err(fail("prec", "precision must be positive"));
            }
            // known through Y^-(prec-1), like a surd embedding
            let half = p.deg().unwrap_or(0) / 2;
            let r = Laurent::from_poly(&p)
                .sqrt_with(prec + half)
                .map_err(|e| fail("P", e))?;
            writeln!(out, "{r}").unwrap();
        }
    }
    Ok(out)
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => (0, e.to_string()),
                _ => {
                    let line = e.to_string();
                    let first = line.lines().next().unwrap_or("error: invalid arguments");
                    (1, format!("{first}\n"))
                }
            };
        }
    };
    match execute(cli.command) {
        Ok(out) => (0, out),
        Err(f) => (f.code, format!("{}\n", f.msg)),
    }
}
