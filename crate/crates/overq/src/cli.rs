//! Argument parsing and subcommand dispatch.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};

use overq_core::identities::{gf_overline_total, Verifier};
use overq_core::qfunctions::over_qbinom_sum;
use overq_core::{BigRational, Error, QSeries};

use crate::output::{rational_string, report_json, report_text};
use crate::runner::{plan, run_checks, Selector};
use crate::table::{
    build_rows, render_csv, render_json, Source, TableFormat, TableKind, TableRequest,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "overq",
    version,
    about = "Overpartition generating functions: tables, coefficients and identity checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Tabulate a counting sequence for n = 1..n_max
    Table(TableArgs),
    /// Run identity checks
    Verify(VerifyArgs),
    /// Print one exact coefficient
    Coeff(CoeffArgs),
}

#[derive(Args, Debug)]
struct TableArgs {
    #[arg(long, value_enum)]
    kind: TableKind,
    /// ignored for d and overline_total
    #[arg(long, default_value_t = 0)]
    t: u32,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    n_max: u32,
    #[arg(long, value_enum, default_value_t = Source::Formula)]
    source: Source,
    #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
    format: TableFormat,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// th1, th2, bk, abr, oqbinom, relation, cases, proofchain, chu, corollary or all
    #[arg(long, value_parser = parse_selector)]
    check: Selector,
    #[arg(long, default_value_t = 8)]
    t_max: u32,
    #[arg(long, default_value_t = 60, value_parser = clap::value_parser!(i64).range(1..))]
    order: i64,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    format: ReportFormat,
}

fn parse_selector(s: &str) -> Result<Selector, String> {
    Selector::parse(s).ok_or_else(|| format!("unknown check `{s}`"))
}

/// Series whose coefficient `coeff` can report.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum GfSelector {
    Th1,
    Th2,
    Bk,
    Abr,
    OverlineTotal,
    OverQBinom(u32, u32),
}

fn parse_gf(s: &str) -> Result<GfSelector, String> {
    Ok(match s {
        "th1" => GfSelector::Th1,
        "th2" => GfSelector::Th2,
        "bk" => GfSelector::Bk,
        "abr" => GfSelector::Abr,
        "overline_total" => GfSelector::OverlineTotal,
        _ => {
            let inner = s
                .strip_prefix("oqbinom(")
                .and_then(|r| r.strip_suffix(')'))
                .ok_or_else(|| format!("unknown generating function `{s}`"))?;
            let (m, n) = inner
                .split_once(',')
                .ok_or_else(|| format!("expected oqbinom(M,N), got `{s}`"))?;
            let parse = |x: &str| {
                x.trim()
                    .parse::<u32>()
                    .map_err(|e| format!("bad oqbinom argument `{x}`: {e}"))
            };
            GfSelector::OverQBinom(parse(m)?, parse(n)?)
        }
    })
}

#[derive(Args, Debug)]
struct CoeffArgs {
    /// th1, th2, bk, abr, overline_total or oqbinom(M,N)
    #[arg(long, value_parser = parse_gf)]
    gf: GfSelector,
    #[arg(long, default_value_t = 0)]
    t: u32,
    #[arg(long)]
    n: u32,
}

/// Parses `args` (program name first), runs the subcommand and returns the
/// process exit code. Results go to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write, verifier: &Verifier) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(text.as_bytes());
            return if e.exit_code() == 0 {
                EXIT_OK
            } else {
                EXIT_USAGE
            };
        }
    };
    let result = match cli.command {
        Command::Table(a) => run_table(a, out, verifier),
        Command::Verify(a) => run_verify(a, out, verifier),
        Command::Coeff(a) => run_coeff(a, out, err, verifier),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn emit(out: &mut impl Write, text: &str) -> Result<(), Error> {
    out.write_all(text.as_bytes())
        .and_then(|_| out.flush())
        .map_err(|e| Error::Internal(format!("write failed: {e}")))
}

fn run_table(a: TableArgs, out: &mut impl Write, verifier: &Verifier) -> Result<i32, Error> {
    let req = TableRequest {
        kind: a.kind,
        t: a.t,
        n_max: a.n_max,
        source: a.source,
        format: a.format,
    };
    let rows = build_rows(&req, verifier.formulas())?;
    let text = match req.format {
        TableFormat::Csv => render_csv(&req, &rows),
        TableFormat::Json => render_json(&req, &rows),
    };
    emit(out, &text)?;
    Ok(
        if rows.iter().all(|r| r.matches()) || req.source != Source::Both {
            EXIT_OK
        } else {
            EXIT_MISMATCH
        },
    )
}

fn run_verify(a: VerifyArgs, out: &mut impl Write, verifier: &Verifier) -> Result<i32, Error> {
    let planned = plan(a.check, a.t_max);
    if planned.is_empty() {
        return Err(Error::Domain(format!(
            "no admissible parameter up to --t-max {}",
            a.t_max
        )));
    }
    let reports = run_checks(verifier, &planned, a.order);
    let text = match a.format {
        ReportFormat::Text => report_text(&reports),
        ReportFormat::Json => report_json(a.order, &reports),
    };
    emit(out, &text)?;
    Ok(if reports.iter().all(|r| r.passed()) {
        EXIT_OK
    } else {
        EXIT_MISMATCH
    })
}

fn coefficient(gf: GfSelector, t: u32, n: u32, verifier: &Verifier) -> Result<BigRational, Error> {
    let prec = i64::from(n) + 1;
    let f = verifier.formulas();
    let series: QSeries = match gf {
        GfSelector::Th1 => (f.g)(t, prec)?,
        GfSelector::Th2 => (f.pbar)(t, prec)?,
        GfSelector::Bk => (f.bk)(t, prec)?,
        GfSelector::Abr => (f.abr)(t, prec)?,
        GfSelector::OverlineTotal => gf_overline_total(prec)?,
        GfSelector::OverQBinom(m, k) => over_qbinom_sum(m, k).with_polynomial_prec(prec),
    };
    series.coeff(n.into())
}

fn run_coeff(
    a: CoeffArgs,
    out: &mut impl Write,
    err: &mut impl Write,
    verifier: &Verifier,
) -> Result<i32, Error> {
    let c = coefficient(a.gf, a.t, a.n, verifier)?;
    if !c.is_integer() {
        let _ = writeln!(err, "warning: coefficient of q^{} is not an integer", a.n);
    }
    emit(out, &format!("{}\n", rational_string(&c)))?;
    Ok(EXIT_OK)
}
