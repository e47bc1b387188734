//! Tabulation of counting sequences from closed forms and oracles.

use std::fmt::Write as _;

use clap::ValueEnum;
use serde::Serialize;
use serde_json::value::RawValue;

use overq_core::enumeration::{oracle_series, Oracle};
use overq_core::identities::{divisor_lambert_series, gf_overline_total, Formulas};
use overq_core::{BigRational, Error, QSeries};

use crate::output::{json_number, rational_string};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableKind {
    /// overpartitions with spread at most t
    #[value(name = "pbar")]
    Pbar,
    /// as pbar, largest part not overlined when the spread is exactly t
    #[value(name = "g")]
    G,
    /// partitions with spread at most t
    #[value(name = "p_bounded")]
    PBounded,
    /// partitions with spread exactly t
    #[value(name = "p_exact")]
    PExact,
    /// number of divisors
    #[value(name = "d")]
    D,
    /// all overpartitions
    #[value(name = "overline_total")]
    OverlineTotal,
}

impl TableKind {
    pub fn name(self) -> &'static str {
        match self {
            TableKind::Pbar => "pbar",
            TableKind::G => "g",
            TableKind::PBounded => "p_bounded",
            TableKind::PExact => "p_exact",
            TableKind::D => "d",
            TableKind::OverlineTotal => "overline_total",
        }
    }

    fn uses_t(self) -> bool {
        !matches!(self, TableKind::D | TableKind::OverlineTotal)
    }

    fn oracle(self, t: u32) -> Oracle {
        match self {
            TableKind::Pbar => Oracle::PbarBounded(t),
            TableKind::G => Oracle::G(t),
            TableKind::PBounded => Oracle::PBounded(t),
            TableKind::PExact => Oracle::PExact(t),
            TableKind::D => Oracle::Divisors,
            TableKind::OverlineTotal => Oracle::OverlineTotal,
        }
    }

    /// Closed-form series through `q^n_max`. Below each formula's domain
    /// the elementary closed forms take over: `g_0 = p_0 = p(n,0) = d(n)`
    /// and `p(n,1) = n - d(n)`.
    fn formula(self, formulas: &Formulas, t: u32, n_max: u32) -> Result<QSeries, Error> {
        let prec = i64::from(n_max) + 1;
        match (self, t) {
            (TableKind::Pbar, _) => (formulas.pbar)(t, prec),
            (TableKind::G | TableKind::PBounded | TableKind::PExact, 0) | (TableKind::D, _) => {
                Ok(divisor_lambert_series(prec))
            }
            (TableKind::G, _) => (formulas.g)(t, prec),
            (TableKind::PBounded, _) => (formulas.bk)(t, prec),
            (TableKind::PExact, 1) => {
                let n_series = QSeries::from_terms(
                    (1..prec).map(|n| (n, BigRational::from_integer(n.into()))),
                    prec,
                )?;
                Ok(&n_series - &divisor_lambert_series(prec))
            }
            (TableKind::PExact, _) => (formulas.abr)(t, prec),
            (TableKind::OverlineTotal, _) => gf_overline_total(prec),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Source {
    Formula,
    Oracle,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TableRequest {
    pub kind: TableKind,
    pub t: u32,
    pub n_max: u32,
    pub source: Source,
    pub format: TableFormat,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub n: u32,
    pub formula: Option<BigRational>,
    pub oracle: Option<BigRational>,
}

impl TableRow {
    pub fn matches(&self) -> bool {
        self.formula == self.oracle
    }
}

pub fn build_rows(req: &TableRequest, formulas: &Formulas) -> Result<Vec<TableRow>, Error> {
    if req.n_max < 1 {
        return Err(Error::Domain("--n-max must be at least 1".into()));
    }
    let formula = match req.source {
        Source::Formula | Source::Both => Some(req.kind.formula(formulas, req.t, req.n_max)?),
        Source::Oracle => None,
    };
    let oracle = match req.source {
        Source::Oracle | Source::Both => Some(oracle_series(req.kind.oracle(req.t), req.n_max)?),
        Source::Formula => None,
    };
    (1..=req.n_max)
        .map(|n| {
            let at = |s: &Option<QSeries>| s.as_ref().map(|s| s.coeff(n.into())).transpose();
            Ok(TableRow {
                n,
                formula: at(&formula)?,
                oracle: at(&oracle)?,
            })
        })
        .collect()
}

fn value_of(row: &TableRow) -> &BigRational {
    row.formula
        .as_ref()
        .or(row.oracle.as_ref())
        .expect("every row carries at least one value")
}

pub fn render_csv(req: &TableRequest, rows: &[TableRow]) -> String {
    let mut s = String::new();
    if req.source == Source::Both {
        s.push_str("n,formula,oracle,match\n");
        for r in rows {
            let f = r.formula.as_ref().map(rational_string).unwrap_or_default();
            let o = r.oracle.as_ref().map(rational_string).unwrap_or_default();
            let _ = writeln!(s, "{},{f},{o},{}", r.n, r.matches());
        }
    } else {
        s.push_str("n,value\n");
        for r in rows {
            let _ = writeln!(s, "{},{}", r.n, rational_string(value_of(r)));
        }
    }
    s
}

#[derive(Serialize)]
struct TableJson {
    kind: &'static str,
    t: Option<u32>,
    source: &'static str,
    rows: Vec<RowJson>,
}

#[derive(Serialize)]
#[serde(untagged)]
enum RowJson {
    Single {
        n: u32,
        value: Box<RawValue>,
    },
    Both {
        n: u32,
        formula: Box<RawValue>,
        oracle: Box<RawValue>,
        #[serde(rename = "match")]
        matched: bool,
    },
}

pub fn render_json(req: &TableRequest, rows: &[TableRow]) -> String {
    let rows = rows
        .iter()
        .map(|r| match req.source {
            Source::Both => RowJson::Both {
                n: r.n,
                formula: json_number(r.formula.as_ref().expect("formula column")),
                oracle: json_number(r.oracle.as_ref().expect("oracle column")),
                matched: r.matches(),
            },
            _ => RowJson::Single {
                n: r.n,
                value: json_number(value_of(r)),
            },
        })
        .collect();
    let doc = TableJson {
        kind: req.kind.name(),
        t: req.kind.uses_t().then_some(req.t),
        source: match req.source {
            Source::Formula => "formula",
            Source::Oracle => "oracle",
            Source::Both => "both",
        },
        rows,
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("table serialises");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn req(kind: TableKind, t: u32, n_max: u32, source: Source) -> TableRequest {
        TableRequest {
            kind,
            t,
            n_max,
            source,
            format: TableFormat::Csv,
        }
    }

    #[test]
    fn csv_layout() {
        let r = req(TableKind::G, 1, 4, Source::Formula);
        let rows = build_rows(&r, &Formulas::STANDARD).unwrap();
        assert_eq!(render_csv(&r, &rows), "n,value\n1,2\n2,4\n3,6\n4,8\n");
        let r = req(TableKind::D, 0, 3, Source::Both);
        let rows = build_rows(&r, &Formulas::STANDARD).unwrap();
        assert_eq!(
            render_csv(&r, &rows),
            "n,formula,oracle,match\n1,1,1,true\n2,2,2,true\n3,2,2,true\n"
        );
    }

    #[test]
    fn every_kind_agrees_with_its_oracle() {
        for kind in TableKind::value_variants() {
            for t in 0..4 {
                let r = req(*kind, t, 20, Source::Both);
                let rows = build_rows(&r, &Formulas::STANDARD).unwrap();
                assert!(rows.iter().all(TableRow::matches), "{kind:?} t={t}");
            }
        }
    }

    #[test]
    fn json_layout() {
        let r = req(TableKind::OverlineTotal, 0, 4, Source::Both);
        let rows = build_rows(&r, &Formulas::STANDARD).unwrap();
        let v: serde_json::Value = serde_json::from_str(&render_json(&r, &rows)).unwrap();
        assert_eq!(v["kind"], "overline_total");
        assert!(v["t"].is_null());
        assert_eq!(v["rows"][3]["formula"], 14);
        assert_eq!(v["rows"][3]["match"], true);
    }
}
