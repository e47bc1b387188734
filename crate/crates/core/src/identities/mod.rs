//! Generating functions as series constructors, and the checks that tie
//! them to each other and to the enumeration oracles.

mod proof_chain;

pub use proof_chain::{proof_chain_steps, ProofStep, PROOF_STEP_LABELS};

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::enumeration::{divisor_count, is_perfect_square, oracle_series, Oracle};
use crate::qfunctions::{pochhammer_inf, verify_chu, OverQBinomTable};
use crate::report::{CheckName, IdentityCheck, Mismatch, VerificationReport};
use crate::series::{QMonomial, QSeries};
use crate::{Error, Result};

fn domain(what: &str) -> Error {
    Error::Domain(String::from(what))
}

fn q(k: i64) -> QMonomial {
    QMonomial::q_pow(k)
}

fn neg_q(k: i64) -> QMonomial {
    QMonomial::neg_q_pow(k)
}

fn div_pos(s: QSeries, m: &QMonomial) -> QSeries {
    debug_assert!(m.exp() > 0);
    s.div_binomial(m)
        .expect("binomials with a positive power of q are invertible")
}

/// `(-q)_t / (q)_t`.
pub(crate) fn over_ratio(t: u32, prec: i64) -> QSeries {
    let mut s = QSeries::one(prec);
    for k in 1..=i64::from(t) {
        s = div_pos(s.mul_binomial(&neg_q(k)), &q(k));
    }
    s
}

/// `1 / (q)_t`.
fn inverse_q_factorial(t: u32, prec: i64) -> QSeries {
    (1..=i64::from(t)).fold(QSeries::one(prec), |s, k| div_pos(s, &q(k)))
}

/// `((-q)_n/(q)_n - 1) / (1 - q^n)`.
fn bounded_term(n: u32, prec: i64) -> QSeries {
    let ratio = &over_ratio(n, prec) - &QSeries::one(prec);
    div_pos(ratio, &q(i64::from(n)))
}

/// Partitions with spread at most `t`: `(1/(q)_t - 1) / (1 - q^t)`.
pub fn gf_bk(t: u32, prec: i64) -> Result<QSeries> {
    if t < 1 {
        return Err(domain("bounded-spread partition series needs t >= 1"));
    }
    let s = &inverse_q_factorial(t, prec) - &QSeries::one(prec);
    Ok(div_pos(s, &q(i64::from(t))))
}

/// Partitions with spread exactly `t >= 2`.
pub fn gf_abr(t: u32, prec: i64) -> Result<QSeries> {
    if t < 2 {
        return Err(domain(
            "exact-spread partition series needs t >= 2; use p(n,0) = d(n) and p(n,1) = n - d(n)",
        ));
    }
    let t = i64::from(t);
    let one = BigRational::from_integer(1.into());
    let base = QSeries::monomial(one.clone(), t - 1, prec).mul_binomial(&q(1));
    let base = div_pos(div_pos(base, &q(t)), &q(t - 1));
    let inv = inverse_q_factorial(t as u32, prec);
    let last = div_pos(QSeries::monomial(one, t, prec), &q(t - 1));
    Ok(&(&base - &(&base * &inv)) + &(&last * &inv))
}

/// `G_t(q) = ((-q)_t/(q)_t - 1) / (1 - q^t)` for `t >= 1`.
pub fn gf_g(t: u32, prec: i64) -> Result<QSeries> {
    if t < 1 {
        return Err(domain("G_t needs t >= 1"));
    }
    Ok(bounded_term(t, prec))
}

/// `sum_{m >= 1} q^m / (1 - q^m) = sum d(n) q^n`.
pub fn divisor_lambert_series(prec: i64) -> QSeries {
    let one = BigRational::from_integer(1.into());
    let mut s = QSeries::zero(prec);
    for m in 1..prec {
        let term = div_pos(QSeries::monomial(one.clone(), m, prec), &q(m));
        s = &s + &term;
    }
    s
}

/// `P̄_t(q) = 2(-1)^t (sum d(n) q^n + sum_{n=1}^t (-1)^n G_n(q))`.
pub fn gf_pbar(t: u32, prec: i64) -> Result<QSeries> {
    let mut s = divisor_lambert_series(prec);
    for n in 1..=t {
        let term = bounded_term(n, prec);
        s = if n % 2 == 0 { &s + &term } else { &s - &term };
    }
    Ok(s.scale_int(if t.is_multiple_of(2) { 2 } else { -2 }))
}

/// `q^m/(1-q^m) * prod_{j=1}^{k} (1+q^{m+j})/(1-q^{m+j})`, checked to have
/// valuation at least `m`.
fn smallest_part_block(m: i64, k: u32, prec: i64) -> Result<QSeries> {
    let one = BigRational::from_integer(1.into());
    let mut s = div_pos(QSeries::monomial(one, m, prec), &q(m));
    for j in 1..=i64::from(k) {
        s = div_pos(s.mul_binomial(&neg_q(m + j)), &q(m + j));
    }
    if s.valuation_bound() < m {
        return Err(Error::Internal(format!(
            "summand for smallest part {m} has valuation below {m}"
        )));
    }
    Ok(s)
}

/// `P̄_t` as the defining sum over the smallest part `m`.
pub fn gf_pbar_direct(t: u32, prec: i64) -> Result<QSeries> {
    let mut s = QSeries::zero(prec);
    for m in 1..prec {
        s = &s + &smallest_part_block(m, t, prec)?;
    }
    Ok(s.scale_int(2))
}

/// `G_t` as the defining sum over the smallest part `m`.
pub fn gf_g_direct(t: u32, prec: i64) -> Result<QSeries> {
    if t < 1 {
        return Err(domain("G_t needs t >= 1"));
    }
    let mut s = QSeries::zero(prec);
    for m in 1..prec {
        let block = smallest_part_block(m, t - 1, prec)?;
        s = &s + &div_pos(block, &q(m + i64::from(t)));
    }
    Ok(s.scale_int(2))
}

/// `(-q)_inf / (q)_inf = 1 + sum p̄(n) q^n`.
pub fn gf_overline_total(prec: i64) -> Result<QSeries> {
    if prec < 1 {
        return Err(domain("overpartition series needs prec >= 1"));
    }
    pochhammer_inf(&neg_q(1), prec)?.div(&pochhammer_inf(&q(1), prec)?)
}

/// Closed-form constructors consulted by the checks. Swapping one out lets
/// a harness confirm that a wrong formula is caught.
#[derive(Clone, Copy, Debug)]
pub struct Formulas {
    pub g: fn(u32, i64) -> Result<QSeries>,
    pub pbar: fn(u32, i64) -> Result<QSeries>,
    pub bk: fn(u32, i64) -> Result<QSeries>,
    pub abr: fn(u32, i64) -> Result<QSeries>,
}

impl Formulas {
    pub const STANDARD: Formulas = Formulas {
        g: gf_g,
        pbar: gf_pbar,
        bk: gf_bk,
        abr: gf_abr,
    };
}

impl Default for Formulas {
    fn default() -> Self {
        Formulas::STANDARD
    }
}

enum Outcome {
    Pass(String),
    Fail(Mismatch, String),
}

fn finish(check: IdentityCheck, run: impl FnOnce() -> Result<Outcome>) -> VerificationReport {
    match run() {
        Ok(Outcome::Pass(msg)) => VerificationReport::pass(check, msg),
        Ok(Outcome::Fail(m, msg)) => VerificationReport::fail(check, m, msg),
        Err(e) => VerificationReport::error(check, &e),
    }
}

/// Compares each `(label, lhs, rhs)` triple through `order`, stopping at
/// the first disagreement.
fn compare(pairs: &[(&str, &QSeries, &QSeries)], order: i64, pass: String) -> Result<Outcome> {
    for (label, lhs, rhs) in pairs {
        if let Some(m) = Mismatch::from_agreement(lhs.equal_to_order(rhs, order)?) {
            return Ok(Outcome::Fail(m, format!("{label} disagree")));
        }
    }
    Ok(Outcome::Pass(pass))
}

fn oracle_order(order: i64) -> Result<u32> {
    if order < 1 {
        return Err(domain("order must be at least 1"));
    }
    u32::try_from(order).map_err(|_| domain("order too large"))
}

fn min_t(t: u32, min: u32, what: &str) -> Result<()> {
    if t < min {
        return Err(Error::Domain(format!("{what} needs t >= {min}")));
    }
    Ok(())
}

/// Runs identity checks against a particular set of closed forms.
#[derive(Clone, Copy, Debug, Default)]
pub struct Verifier {
    formulas: Formulas,
}

impl Verifier {
    pub fn new(formulas: Formulas) -> Self {
        Self { formulas }
    }

    pub fn formulas(&self) -> &Formulas {
        &self.formulas
    }

    /// Dispatches a check by name, with `param` bound to its swept
    /// parameter.
    pub fn run(&self, name: CheckName, param: u32, order: i64) -> VerificationReport {
        match name {
            CheckName::Th1 => self.check_th1(param, order),
            CheckName::Th2 => self.check_th2(param, order),
            CheckName::Bk => self.check_bk(param, order),
            CheckName::Abr => self.check_abr(param, order),
            CheckName::Oqbinom => self.check_oqbinom_pbar(param, order),
            CheckName::Relation => self.check_pbar_g_relation(param, order),
            CheckName::Cases => self.check_three_cases(param, order),
            CheckName::ProofChain => self.proof_chain_theorem1(param, order),
            CheckName::Chu => verify_chu(
                &QMonomial::int(-1, 0).expect("nonzero"),
                param,
                &neg_q(1),
                order + 1,
            ),
            CheckName::Corollary => self.check_corollary(param, order),
        }
    }

    /// Closed form for `G_t` against its defining sum and `g_t(n)`.
    pub fn check_th1(&self, t: u32, order: i64) -> VerificationReport {
        let check = IdentityCheck::new(CheckName::Th1, &[("t", t.into())], order);
        finish(check, || {
            min_t(t, 1, "G_t")?;
            let n = oracle_order(order)?;
            let closed = (self.formulas.g)(t, order + 1)?;
            let direct = gf_g_direct(t, order + 1)?;
            let oracle = oracle_series(Oracle::G(t), n)?;
            compare(
                &[
                    ("closed form and smallest-part sum", &closed, &direct),
                    ("closed form and enumeration", &closed, &oracle),
                ],
                order,
                format!("G_{t} matches g_{t}(n) through q^{order}"),
            )
        })
    }

    /// Closed form for `P̄_t` against its defining sum and `p̄_t(n)`; the
    /// divisor Lambert series is also checked against `d(n)`.
    pub fn check_th2(&self, t: u32, order: i64) -> VerificationReport {
        let check = IdentityCheck::new(CheckName::Th2, &[("t", t.into())], order);
        finish(check, || {
            let n = oracle_order(order)?;
            let closed = (self.formulas.pbar)(t, order + 1)?;
            let direct = gf_pbar_direct(t, order + 1)?;
            let oracle = oracle_series(Oracle::PbarBounded(t), n)?;
            let lambert = divisor_lambert_series(order + 1);
            let divisors = oracle_series(Oracle::Divisors, n)?;
            compare(
                &[
                    ("divisor Lambert series and d(n)", &lambert, &divisors),
                    ("closed form and smallest-part sum", &closed, &direct),
                    ("closed form and enumeration", &closed, &oracle),
                ],
                order,
                format!("P̄_{t} matches p̄_{t}(n) through q^{order}"),
            )
        })
    }

    pub fn check_bk(&self, t: u32, order: i64) -> VerificationReport {
        let check = IdentityCheck::new(CheckName::Bk, &[("t", t.into())], order);
        finish(check, || {
            min_t(t, 1, "bounded-spread partitions")?;
            let n = oracle_order(order)?;
            let closed = (self.formulas.bk)(t, order + 1)?;
            let oracle = oracle_series(Oracle::PBounded(t), n)?;
            compare(
                &[("closed form and enumeration", &closed, &oracle)],
                order,
                format!("bounded-spread series matches p_{t}(n) through q^{order}"),
            )
        })
    }

    pub fn check_abr(&self, t: u32, order: i64) -> VerificationReport {
        let check = IdentityCheck::new(CheckName::Abr, &[("t", t.into())], order);
        finish(check, || {
            min_t(t, 2, "exact-spread partitions")?;
            let n = oracle_order(order)?;
            let closed = (self.formulas.abr)(t, order + 1)?;
            let oracle = oracle_series(Oracle::PExact(t), n)?;
            compare(
                &[("closed form and enumeration", &closed, &oracle)],
                order,
                format!("exact-spread series matches p(n,{t}) through q^{order}"),
            )
        })
    }

    /// `P̄_t + P̄_{t-1} = 2 G_t`.
    pub fn check_pbar_g_relation(&self, t: u32, order: i64) -> VerificationReport {
        let check = IdentityCheck::new(CheckName::Relation, &[("t", t.into())], order);
        finish(check, || {
            min_t(t, 1, "the P̄/G relation")?;
            oracle_order(order)?;
            let prec = order + 1;
            let lhs = &(self.formulas.pbar)(t, prec)? + &(self.formulas.pbar)(t - 1, prec)?;
            let rhs = (self.formulas.g)(t, prec)?.scale_int(2);
            compare(
                &[("P̄_t + P̄_(t-1) and 2 G_t", &lhs, &rhs)],
                order,
                format!("P̄_{t} + P̄_{} = 2 G_{t} through q^{order}", t - 1),
            )
        })
    }

    /// `P̄_t = 2 sum_{r >= 1} q^r/(1-q^r) [t+r-1, t]`, with the over
    /// q-binomial `[t+r-1, t]` keyed as `(M, N) = (r-1, t)`.
    pub fn check_oqbinom_pbar(&self, t: u32, order: i64) -> VerificationReport {
        let check = IdentityCheck::new(CheckName::Oqbinom, &[("t", t.into())], order);
        finish(check, || {
            oracle_order(order)?;
            let prec = order + 1;
            let mut table = OverQBinomTable::new();
            let sum = lambert_weighted_sum(prec, |r| table.series(r - 1, t))?.scale_int(2);
            let closed = (self.formulas.pbar)(t, prec)?;
            compare(
                &[("over q-binomial sum and closed form", &sum, &closed)],
                order,
                format!("over q-binomial expansion of P̄_{t} holds through q^{order}"),
            )
        })
    }

    /// The three-way split of overpartitions with spread at most `t`.
    pub fn check_three_cases(&self, t: u32, order: i64) -> VerificationReport {
        let check = IdentityCheck::new(CheckName::Cases, &[("t", t.into())], order);
        finish(check, || {
            min_t(t, 1, "the three-case split")?;
            oracle_order(order)?;
            let prec = order + 1;
            let pbar_t = (self.formulas.pbar)(t, prec)?;
            let pbar_prev = (self.formulas.pbar)(t - 1, prec)?;
            let half = BigRational::new(1.into(), 2.into());

            let case1 = &over_ratio(t, prec) - &QSeries::one(prec);
            let case2 = (&pbar_t - &pbar_prev).scale(&half);
            let mut case2_direct = QSeries::zero(prec);
            let t64 = i64::from(t);
            for m in 1..prec {
                let block = smallest_part_block(m, t - 1, prec)?;
                let one = BigRational::from_integer(1.into());
                let top = div_pos(QSeries::monomial(one, m + t64, prec), &q(m + t64));
                case2_direct = &case2_direct + &(&block * &top);
            }
            let case2_direct = case2_direct.scale_int(2);

            let mut table = OverQBinomTable::new();
            let case3 = lambert_weighted_sum(prec, |r| {
                &table.series(r, t)
                    - &table
                        .series(r, t - 1)
                        .with_polynomial_prec(i64::from(r) * t64 + 1)
            })?;
            let pieces = &(&case1 + &case2) + &case3;
            let shifted = (&pbar_t + &pbar_prev)
                .scale(&half)
                .shift(t64)
                .truncate(prec);

            compare(
                &[
                    ("case (2) sum and (P̄_t - P̄_(t-1))/2", &case2_direct, &case2),
                    ("sum of the three cases and P̄_t", &pieces, &pbar_t),
                    ("case (3) and q^t (P̄_t + P̄_(t-1))/2", &case3, &shifted),
                ],
                order,
                format!("three-case decomposition of P̄_{t} holds through q^{order}"),
            )
        })
    }

    /// Evaluates every displayed expression of the smallest-part proof of the
    /// closed form for `G_t` and requires them all to agree.
    pub fn proof_chain_theorem1(&self, t: u32, order: i64) -> VerificationReport {
        self.proof_chain_with(t, order, None)
    }

    /// Like [`Verifier::proof_chain_theorem1`], but multiplies the prefactor
    /// of step `perturb` by `1 + q`. Used to confirm that a broken step is
    /// reported.
    pub fn proof_chain_with(
        &self,
        t: u32,
        order: i64,
        perturb: Option<usize>,
    ) -> VerificationReport {
        let check = IdentityCheck::new(CheckName::ProofChain, &[("t", t.into())], order);
        finish(check, || {
            min_t(t, 1, "the proof chain")?;
            oracle_order(order)?;
            let mut steps = proof_chain_steps(t, order + 1)?;
            if let Some(k) = perturb {
                let step = steps
                    .get_mut(k)
                    .ok_or_else(|| Error::Domain(format!("no proof step {k}")))?;
                step.prefactor = step.prefactor.mul_binomial(&neg_q(1));
            }
            let values: Vec<QSeries> = steps.iter().map(ProofStep::value).collect();
            for (k, v) in values.iter().enumerate().skip(1) {
                if let Some(m) = Mismatch::from_agreement(v.equal_to_order(&values[0], order)?) {
                    return Ok(Outcome::Fail(
                        m,
                        format!(
                            "step ({}) disagrees with step ({})",
                            PROOF_STEP_LABELS[k], PROOF_STEP_LABELS[0]
                        ),
                    ));
                }
            }
            Ok(Outcome::Pass(format!(
                "all {} proof steps agree through q^{order}",
                values.len()
            )))
        })
    }

    /// Parity and mod-4 behaviour of `p̄_t(n)` for `1 <= n <= n_max`.
    pub fn check_corollary(&self, t: u32, n_max: i64) -> VerificationReport {
        let check = IdentityCheck::new(CheckName::Corollary, &[("t", t.into())], n_max);
        finish(check, || {
            let n_top = oracle_order(n_max)?;
            let series = (self.formulas.pbar)(t, n_max + 1)?;
            let four = BigInt::from(4);
            for n in 1..=n_top {
                let value = series.coeff(i64::from(n))?;
                if !value.is_integer() {
                    return Err(Error::Internal(format!(
                        "coefficient of q^{n} in P̄_{t} is {value}, not an integer"
                    )));
                }
                let value = value.to_integer();
                let residue = ((&value % &four) + &four) % &four;
                let d = divisor_count(u64::from(n))?;
                let expected = BigInt::from((2 * d) % 4);
                let square = is_perfect_square(u64::from(n));
                let fail = |msg: String| {
                    Ok(Outcome::Fail(
                        Mismatch {
                            exponent: i64::from(n),
                            lhs: BigRational::from_integer(residue.clone()),
                            rhs: BigRational::from_integer(expected.clone()),
                        },
                        msg,
                    ))
                };
                if (&value % 2u32) != BigInt::zero() {
                    return fail(format!("p̄_{t}({n}) = {value} is odd"));
                }
                if residue != expected {
                    return fail(format!("p̄_{t}({n}) = {value} is not 2 d({n}) mod 4"));
                }
                if residue.is_zero() == square {
                    return fail(format!(
                        "p̄_{t}({n}) = {value}: divisibility by 4 does not match squareness of {n}"
                    ));
                }
            }
            Ok(Outcome::Pass(format!(
                "p̄_{t}(n) even, = 2 d(n) mod 4, and 4 | p̄_{t}(n) iff n is not a square, for n <= {n_max}"
            )))
        })
    }
}

/// `sum_{r=1}^{prec-1} q^r/(1-q^r) f(r)` for exact polynomials `f(r)`; each
/// summand must have valuation at least `r`.
fn lambert_weighted_sum(prec: i64, mut f: impl FnMut(u32) -> QSeries) -> Result<QSeries> {
    let one = BigRational::from_integer(1.into());
    let mut s = QSeries::zero(prec);
    for r in 1..prec {
        let weight = div_pos(QSeries::monomial(one.clone(), r, prec), &q(r));
        let poly = f(r as u32).with_polynomial_prec(prec);
        let term = &weight * &poly;
        if term.valuation_bound() < r {
            return Err(Error::Internal(format!(
                "summand {r} has valuation below {r}"
            )));
        }
        s = &s + &term;
    }
    Ok(s)
}

pub fn check_th1(t: u32, order: i64) -> VerificationReport {
    Verifier::default().check_th1(t, order)
}

pub fn check_th2(t: u32, order: i64) -> VerificationReport {
    Verifier::default().check_th2(t, order)
}

pub fn check_bk(t: u32, order: i64) -> VerificationReport {
    Verifier::default().check_bk(t, order)
}

pub fn check_abr(t: u32, order: i64) -> VerificationReport {
    Verifier::default().check_abr(t, order)
}

pub fn check_pbar_g_relation(t: u32, order: i64) -> VerificationReport {
    Verifier::default().check_pbar_g_relation(t, order)
}

pub fn check_oqbinom_pbar(t: u32, order: i64) -> VerificationReport {
    Verifier::default().check_oqbinom_pbar(t, order)
}

pub fn check_three_cases(t: u32, order: i64) -> VerificationReport {
    Verifier::default().check_three_cases(t, order)
}

pub fn proof_chain_theorem1(t: u32, order: i64) -> VerificationReport {
    Verifier::default().proof_chain_theorem1(t, order)
}

pub fn check_corollary(t: u32, n_max: i64) -> VerificationReport {
    Verifier::default().check_corollary(t, n_max)
}
