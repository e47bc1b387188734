//! End-to-end acceptance suite. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

use overq::table::{build_rows, Source, TableFormat, TableKind, TableRequest};
use overq::{run, EXIT_MISMATCH, EXIT_OK};
use overq_core::enumeration::{
    count_g, count_opbar_bounded, count_p_bounded_diff, count_p_exact_diff, divisor_count,
    is_perfect_square, over_qbinom_box_oracle,
};
use overq_core::identities::{
    check_oqbinom_pbar, check_pbar_g_relation, check_three_cases, gf_abr, gf_bk, gf_g, gf_pbar,
    gf_pbar_direct, proof_chain_theorem1, Formulas, Verifier,
};
use overq_core::qfunctions::{over_qbinom_rec, over_qbinom_sum, OverQBinomTable};
use overq_core::{
    BigInt, BigRational, CheckName, QSeries, Result as CoreResult, VerificationReport,
};

type Outcome = Result<String, String>;

struct Criterion {
    id: u32,
    title: &'static str,
    limit: Option<Duration>,
    body: fn() -> Outcome,
}

fn ensure(cond: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn coeff(s: &QSeries, n: u32) -> BigInt {
    s.int_coeff(n.into())
        .expect("integral coefficient inside the window")
}

fn require_pass(r: &VerificationReport) -> Result<(), String> {
    ensure(r.passed(), || {
        format!(
            "{} {}: {} {:?}",
            r.check,
            r.status.as_str(),
            r.message,
            r.first_mismatch
        )
    })
}

fn worked_constants() -> Outcome {
    let cases = [
        (TableKind::OverlineTotal, 0, 14, "overline_total(4)"),
        (TableKind::Pbar, 1, 10, "pbar_1(4)"),
        (TableKind::G, 1, 8, "g_1(4)"),
        (TableKind::PBounded, 1, 4, "p_1(4)"),
        (TableKind::PExact, 1, 1, "p(4,1)"),
        (TableKind::Pbar, 0, 6, "pbar_0(4)"),
        (TableKind::G, 0, 3, "g_0(4)"),
    ];
    for (kind, t, want, label) in cases {
        let req = TableRequest {
            kind,
            t,
            n_max: 4,
            source: Source::Both,
            format: TableFormat::Csv,
        };
        let rows = build_rows(&req, &Formulas::STANDARD).map_err(|e| format!("{label}: {e}"))?;
        let row = &rows[3];
        let want = Some(BigRational::from_integer(want.into()));
        ensure(row.formula == want && row.oracle == want, || {
            format!(
                "{label}: formula {:?}, oracle {:?}",
                row.formula, row.oracle
            )
        })?;
    }
    Ok(format!("{} constants, formula and oracle", cases.len()))
}

fn series_vs_oracle(
    what: &str,
    ts: std::ops::RangeInclusive<u32>,
    n_max: u32,
    gf: fn(u32, i64) -> CoreResult<QSeries>,
    oracle: fn(u32, u32) -> overq_core::BigUint,
) -> Result<usize, String> {
    let mut compared = 0;
    for t in ts {
        let s = gf(t, i64::from(n_max) + 1).map_err(|e| format!("{what} t={t}: {e}"))?;
        for n in 1..=n_max {
            let want = BigInt::from(oracle(n, t));
            let got = coeff(&s, n);
            ensure(got == want, || {
                format!("{what} t={t} n={n}: formula {got}, oracle {want}")
            })?;
            compared += 1;
        }
    }
    Ok(compared)
}

fn g_closed_form() -> Outcome {
    let k = series_vs_oracle("G_t", 1..=8, 60, gf_g, count_g)?;
    Ok(format!("{k} coefficients"))
}

fn pbar_closed_form() -> Outcome {
    let k = series_vs_oracle("P̄_t", 0..=8, 60, gf_pbar, count_opbar_bounded)?;
    for t in 0..=8 {
        let closed = gf_pbar(t, 61).map_err(|e| e.to_string())?;
        let direct = gf_pbar_direct(t, 61).map_err(|e| e.to_string())?;
        let agree = direct
            .equal_to_order(&closed, 60)
            .map_err(|e| e.to_string())?;
        ensure(agree.is_equal(), || format!("direct sum t={t}: {agree:?}"))?;
    }
    Ok(format!("{k} coefficients, direct sum t=0..8 to q^60"))
}

fn bounded_partitions() -> Outcome {
    let bk = series_vs_oracle("BK", 1..=8, 60, gf_bk, count_p_bounded_diff)?;
    let abr = series_vs_oracle("ABR", 2..=8, 60, gf_abr, count_p_exact_diff)?;
    for n in 1..=200u32 {
        let d = divisor_count(n.into()).map_err(|e| e.to_string())?;
        let p0 = count_p_exact_diff(n, 0);
        let p1 = count_p_exact_diff(n, 1);
        ensure(p0 == d.into(), || format!("p({n},0) = {p0}, d({n}) = {d}"))?;
        ensure(p1 == (u64::from(n) - d).into(), || {
            format!("p({n},1) = {p1}, n - d(n) = {}", u64::from(n) - d)
        })?;
    }
    Ok(format!(
        "{bk} + {abr} coefficients, p(n,0) and p(n,1) to n=200"
    ))
}

fn over_qbinomials() -> Outcome {
    let ints =
        |s: &QSeries| -> Vec<BigInt> { (0..s.prec()).map(|e| s.int_coeff(e).unwrap()).collect() };
    let mut table = OverQBinomTable::new();
    let mut sums = Vec::new();
    for m in 0..=12u32 {
        let mut row = Vec::new();
        for n in 0..=12u32 {
            let sum = ints(&over_qbinom_sum(m, n));
            ensure(sum == ints(&over_qbinom_rec(m, n)), || {
                format!("sum vs rec at ({m},{n})")
            })?;
            ensure(sum == table.coefficients(m, n), || {
                format!("sum vs memo at ({m},{n})")
            })?;
            ensure(sum == ints(&over_qbinom_box_oracle(m, n)), || {
                format!("sum vs box at ({m},{n})")
            })?;
            row.push(sum);
        }
        sums.push(row);
    }
    for (m, row) in sums.iter().enumerate() {
        for (n, sum) in row.iter().enumerate() {
            ensure(*sum == sums[n][m], || format!("asymmetric at ({m},{n})"))?;
        }
    }
    Ok("169 pairs, three routes agree, symmetric".into())
}

fn proof_chain_and_chu() -> Outcome {
    for t in 1..=6 {
        require_pass(&proof_chain_theorem1(t, 40))?;
    }
    let v = Verifier::default();
    for n in 0..=8 {
        require_pass(&v.run(CheckName::Chu, n, 40))?;
    }
    Ok("proof chain t=1..6, Chu n=0..8, order 40".into())
}

fn relations() -> Outcome {
    for t in 1..=8 {
        require_pass(&check_pbar_g_relation(t, 60))?;
    }
    for t in 0..=6 {
        require_pass(&check_oqbinom_pbar(t, 40))?;
    }
    for t in 1..=6 {
        require_pass(&check_three_cases(t, 40))?;
    }
    Ok("21 relation checks".into())
}

fn corollary() -> Outcome {
    let v = Verifier::default();
    for t in 0..=5 {
        require_pass(&v.check_corollary(t, 200))?;
        let s = gf_pbar(t, 201).map_err(|e| e.to_string())?;
        for n in 1..=200u32 {
            let c = coeff(&s, n);
            let d = BigInt::from(divisor_count(n.into()).map_err(|e| e.to_string())?);
            let four = BigInt::from(4);
            let rem = ((&c % &four) + &four) % &four;
            ensure(&c % 2 == BigInt::from(0), || {
                format!("t={t} n={n}: {c} is odd")
            })?;
            ensure(rem == (2 * d) % &four, || {
                format!("t={t} n={n}: {c} ≢ 2d(n) mod 4")
            })?;
            let by_four = rem == BigInt::from(0);
            ensure(by_four != is_perfect_square(n.into()), || {
                format!("t={t} n={n}: divisibility by 4 does not track squareness")
            })?;
        }
    }
    Ok("t=0..5, n=1..200".into())
}

fn arb_series() -> impl Strategy<Value = QSeries> {
    (-3i64..=3, prop::collection::vec(-4i64..=4, 1..8), 0i64..6).prop_map(|(lo, cs, extra)| {
        let terms: Vec<(i64, i64)> = cs
            .iter()
            .enumerate()
            .map(|(i, &c)| (lo + i as i64, c))
            .collect();
        QSeries::from_int_terms(&terms, lo + cs.len() as i64 + extra).unwrap()
    })
}

/// Integer tail living at or beyond a series' precision.
fn arb_tail() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-4i64..=4, 1..5)
}

fn with_tail(s: &QSeries, tail: &[i64]) -> QSeries {
    let mut terms: Vec<(i64, BigRational)> = s.terms().map(|(e, c)| (e, c.clone())).collect();
    let p = s.prec();
    terms.extend(
        tail.iter()
            .enumerate()
            .map(|(i, &c)| (p + i as i64, BigRational::from_integer(c.into()))),
    );
    QSeries::from_terms(terms, p + tail.len() as i64).unwrap()
}

fn agree_below(a: &QSeries, b: &QSeries, prec: i64) -> bool {
    prec <= a.lo().min(b.lo()) || a.equal_to_order(b, prec - 1).unwrap().is_equal()
}

fn config() -> Config {
    Config {
        cases: 500,
        failure_persistence: None,
        ..Config::default()
    }
}

fn engine_properties() -> Outcome {
    let mut runner = TestRunner::new(config());
    runner
        .run(&(arb_series(), arb_series(), arb_series()), |(a, b, c)| {
            let same = |x: &QSeries, y: &QSeries| agree_below(x, y, x.prec().min(y.prec()));
            prop_assert!(same(&(&a + &b), &(&b + &a)));
            prop_assert!(same(&(&a * &b), &(&b * &a)));
            prop_assert!(same(&(&(&a + &b) + &c), &(&a + &(&b + &c))));
            prop_assert!(same(&(&(&a * &b) * &c), &(&a * &(&b * &c))));
            prop_assert!(same(&(&a * &(&b + &c)), &(&(&a * &b) + &(&a * &c))));
            Ok(())
        })
        .map_err(|e| e.to_string())?;

    let mut runner = TestRunner::new(config());
    runner
        .run(&arb_series(), |a| {
            let Some(v) = a.valuation() else {
                prop_assert!(a.invert().is_err());
                return Ok(());
            };
            let b = a.invert().map_err(|e| TestCaseError::fail(e.to_string()))?;
            prop_assert_eq!((b.lo(), b.prec()), (-v, a.prec() - 2 * v));
            let p = &a * &b;
            prop_assert!(agree_below(&p, &QSeries::one(p.prec()), p.prec()));
            Ok(())
        })
        .map_err(|e| e.to_string())?;

    // Whatever lies beyond a series' precision must not reach below the
    // precision each operation claims, and the claims follow the stated
    // rules exactly.
    let mut runner = TestRunner::new(config());
    runner
        .run(
            &(arb_series(), arb_series(), arb_tail(), arb_tail()),
            |(a, b, ta, tb)| {
                let (xa, xb) = (with_tail(&a, &ta), with_tail(&b, &tb));

                let sum = &a + &b;
                prop_assert_eq!(sum.prec(), a.prec().min(b.prec()));
                prop_assert!(agree_below(&sum, &(&xa + &xb), sum.prec()));

                let prod = &a * &b;
                prop_assert_eq!(prod.prec(), (a.prec() + b.lo()).min(b.prec() + a.lo()));
                prop_assert!(agree_below(&prod, &(&xa * &xb), prod.prec()));

                if let Some(v) = a.valuation() {
                    let inv = a.invert().map_err(|e| TestCaseError::fail(e.to_string()))?;
                    prop_assert_eq!(inv.prec(), a.prec() - 2 * v);
                    let xinv = xa
                        .invert()
                        .map_err(|e| TestCaseError::fail(e.to_string()))?;
                    prop_assert!(agree_below(&inv, &xinv, inv.prec()));
                }
                Ok(())
            },
        )
        .map_err(|e| e.to_string())?;
    Ok("500 ring cases, 500 inversions, 500 precision re-derivations".into())
}

fn call(args: &[&str], verifier: &Verifier) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(
        std::iter::once("overq").chain(args.iter().copied()),
        &mut out,
        &mut err,
        verifier,
    );
    (code, String::from_utf8(out).expect("utf-8 output"))
}

fn check_schema(doc: &serde_json::Value) -> Result<(), String> {
    ensure(doc["order"].is_i64(), || "order is not an integer".into())?;
    let checks = doc["checks"].as_array().ok_or("checks is not an array")?;
    ensure(!checks.is_empty(), || "no checks".into())?;
    for c in checks {
        let obj = c.as_object().ok_or("check is not an object")?;
        ensure(obj.len() == 5, || format!("unexpected keys in {c}"))?;
        ensure(
            c["name"].is_string() && c["params"].is_object() && c["message"].is_string(),
            || format!("bad field types in {c}"),
        )?;
        ensure(
            matches!(c["status"].as_str(), Some("pass" | "fail" | "error")),
            || format!("bad status in {c}"),
        )?;
        let m = &c["first_mismatch"];
        ensure(
            m.is_null() || (m["exponent"].is_i64() && m["lhs"].is_string() && m["rhs"].is_string()),
            || format!("bad first_mismatch in {c}"),
        )?;
    }
    Ok(())
}

fn broken_g(t: u32, prec: i64) -> CoreResult<QSeries> {
    let good = gf_g(t, prec)?;
    Ok(&good + &QSeries::from_int_terms(&[(7, 1)], prec)?)
}

fn cli_contract() -> Outcome {
    let (code, out) = call(
        &["verify", "--check", "all", "--format", "json"],
        &Verifier::default(),
    );
    ensure(code == EXIT_OK, || format!("verify all exited {code}"))?;
    let doc: serde_json::Value = serde_json::from_str(&out).map_err(|e| e.to_string())?;
    check_schema(&doc)?;
    let order_pos = |k: &str| out.find(&format!("\"{k}\"")).unwrap_or(usize::MAX);
    ensure(
        order_pos("name") < order_pos("params")
            && order_pos("params") < order_pos("status")
            && order_pos("status") < order_pos("first_mismatch")
            && order_pos("first_mismatch") < order_pos("message"),
        || "keys out of documented order".into(),
    )?;
    let total = doc["checks"].as_array().map_or(0, Vec::len);

    let corrupted = Verifier::new(Formulas {
        g: broken_g,
        ..Formulas::STANDARD
    });
    let (code, out) = call(
        &["verify", "--check", "all", "--format", "json"],
        &corrupted,
    );
    ensure(code == EXIT_MISMATCH, || {
        format!("corrupted formula exited {code}")
    })?;
    let doc: serde_json::Value = serde_json::from_str(&out).map_err(|e| e.to_string())?;
    check_schema(&doc)?;
    let failing: Vec<&serde_json::Value> = doc["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["status"] == "fail")
        .collect();
    ensure(!failing.is_empty(), || "no failing check reported".into())?;
    ensure(
        failing.iter().all(|c| !c["first_mismatch"].is_null()),
        || "a failing check lacks first_mismatch".into(),
    )?;
    ensure(
        failing.iter().any(|c| c["first_mismatch"]["exponent"] == 7),
        || "corruption at q^7 not located".into(),
    )?;
    Ok(format!(
        "{total} checks pass; corrupted G_t fails {} checks",
        failing.len()
    ))
}

fn main() -> ExitCode {
    let criteria = [
        Criterion {
            id: 1,
            title: "worked constants",
            limit: Some(Duration::from_secs(1)),
            body: worked_constants,
        },
        Criterion {
            id: 2,
            title: "G_t closed form vs enumeration",
            limit: Some(Duration::from_secs(30)),
            body: g_closed_form,
        },
        Criterion {
            id: 3,
            title: "P̄_t closed form and direct sum",
            limit: None,
            body: pbar_closed_form,
        },
        Criterion {
            id: 4,
            title: "bounded-difference partitions",
            limit: None,
            body: bounded_partitions,
        },
        Criterion {
            id: 5,
            title: "over q-binomial coefficients",
            limit: Some(Duration::from_secs(10)),
            body: over_qbinomials,
        },
        Criterion {
            id: 6,
            title: "proof chain and q-Chu-Vandermonde",
            limit: None,
            body: proof_chain_and_chu,
        },
        Criterion {
            id: 7,
            title: "relations",
            limit: None,
            body: relations,
        },
        Criterion {
            id: 8,
            title: "parity and mod 4",
            limit: Some(Duration::from_secs(10)),
            body: corollary,
        },
        Criterion {
            id: 9,
            title: "series engine properties",
            limit: None,
            body: engine_properties,
        },
        Criterion {
            id: 10,
            title: "command-line contract",
            limit: None,
            body: cli_contract,
        },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.body)();
        let elapsed = start.elapsed();
        let outcome = match (outcome, c.limit) {
            (Ok(_), Some(limit)) if elapsed > limit => {
                Err(format!("took {elapsed:.2?}, limit {limit:?}"))
            }
            (o, _) => o,
        };
        match outcome {
            Ok(detail) => println!(
                "criterion {:>2} PASS  {} ({detail}; {elapsed:.2?})",
                c.id, c.title
            ),
            Err(why) => {
                failed += 1;
                println!(
                    "criterion {:>2} FAIL  {}: {why} ({elapsed:.2?})",
                    c.id, c.title
                );
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
