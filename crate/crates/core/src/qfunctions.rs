//! q-Pochhammer symbols, Gaussian and over q-binomial coefficients, and a
//! truncated evaluator for basic hypergeometric series.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::report::{CheckName, IdentityCheck, Mismatch, VerificationReport};
use crate::series::{QMonomial, QSeries};
use crate::{Error, Result};

/// `(a; q)_n = prod_{k=0}^{n-1} (1 - a q^k)` as an exact Laurent polynomial
/// viewed to precision `prec`.
pub fn pochhammer(a: &QMonomial, n: u32, prec: i64) -> QSeries {
    let exps = (0..i64::from(n)).map(|k| a.exp() + k);
    let top: i64 = exps.clone().map(|e| e.max(0)).sum();
    let drop: i64 = exps.map(|e| (-e).max(0)).sum();
    // Every negative-exponent factor lowers the known window by its
    // exponent; start high enough that the product stays exact.
    let mut s = QSeries::one(top + drop + 1);
    for k in 0..i64::from(n) {
        s = s.mul_binomial(&a.shifted(k));
    }
    s.with_polynomial_prec(prec)
}

/// `(a; q)_inf` truncated below `q^prec`. Requires `a` to carry a positive
/// power of `q`.
pub fn pochhammer_inf(a: &QMonomial, prec: i64) -> Result<QSeries> {
    if a.exp() < 1 {
        return Err(Error::NonconvergentProduct { exponent: a.exp() });
    }
    let mut s = QSeries::one(prec);
    let mut k = 0;
    while a.exp() + k < prec {
        s = s.mul_binomial(&a.shifted(k));
        k += 1;
    }
    Ok(s)
}

fn divide_q_factorial(s: QSeries, n: u32) -> QSeries {
    (1..=i64::from(n)).fold(s, |acc, k| {
        acc.div_binomial(&QMonomial::q_pow(k))
            .expect("1 - q^k with k > 0 is always invertible")
    })
}

fn multiply_q_factorial(s: QSeries, n: u32) -> QSeries {
    (1..=i64::from(n)).fold(s, |acc, k| acc.mul_binomial(&QMonomial::q_pow(k)))
}

/// Gaussian polynomial `(q)_{M+N} / ((q)_M (q)_N)`, exact at precision
/// `M*N + 1`.
pub fn qbinom(m: u32, n: u32) -> QSeries {
    let prec = i64::from(m) * i64::from(n) + 1;
    let s = multiply_q_factorial(QSeries::one(prec), m + n);
    divide_q_factorial(divide_q_factorial(s, m), n)
}

/// Over q-binomial coefficient from its explicit finite sum
/// `sum_k q^{k(k+1)/2} (q)_{M+N-k} / ((q)_k (q)_{M-k} (q)_{N-k})`.
/// Exact at precision `M*N + 1`.
pub fn over_qbinom_sum(m: u32, n: u32) -> QSeries {
    let prec = i64::from(m) * i64::from(n) + 1;
    let mut total = QSeries::zero(prec);
    for k in 0..=m.min(n) {
        let mut term = multiply_q_factorial(QSeries::one(prec), m + n - k);
        term = divide_q_factorial(term, k);
        term = divide_q_factorial(term, m - k);
        term = divide_q_factorial(term, n - k);
        let lift = i64::from(k) * i64::from(k + 1) / 2;
        total = &total + &term.shift(lift);
    }
    total.truncate(prec)
}

/// Memo table for the over q-binomial recurrence, keyed by `(M, N)`.
///
/// `[M+N, N] = [M+N-1, N-1] + q^N [M+N-1, N] + q^N [M+N-2, N-1]`, with
/// `[M, 0] = [0, N] = 1`.
#[derive(Clone, Debug, Default)]
pub struct OverQBinomTable {
    cache: BTreeMap<(u32, u32), Vec<BigInt>>,
}

impl OverQBinomTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Coefficients of the polynomial, index = exponent, length `M*N + 1`.
    pub fn coefficients(&mut self, m: u32, n: u32) -> Vec<BigInt> {
        if let Some(v) = self.cache.get(&(m, n)) {
            return v.clone();
        }
        let v = if m == 0 || n == 0 {
            vec![BigInt::one()]
        } else {
            let same_top = self.coefficients(m, n - 1);
            let fewer = self.coefficients(m - 1, n);
            let both = self.coefficients(m - 1, n - 1);
            let shift = n as usize;
            let mut out = vec![BigInt::zero(); (m as usize) * (n as usize) + 1];
            for (i, c) in same_top.into_iter().enumerate() {
                out[i] += c;
            }
            for (i, c) in fewer.into_iter().enumerate() {
                out[i + shift] += c;
            }
            for (i, c) in both.into_iter().enumerate() {
                out[i + shift] += c;
            }
            out
        };
        self.cache.insert((m, n), v.clone());
        v
    }

    pub fn series(&mut self, m: u32, n: u32) -> QSeries {
        let prec = i64::from(m) * i64::from(n) + 1;
        let coeffs = self
            .coefficients(m, n)
            .into_iter()
            .map(BigRational::from_integer)
            .collect();
        QSeries::polynomial(0, coeffs, prec)
    }
}

/// Over q-binomial coefficient by memoized recursion. Exact at precision
/// `M*N + 1`.
pub fn over_qbinom_rec(m: u32, n: u32) -> QSeries {
    OverQBinomTable::new().series(m, n)
}

/// Parameters of `_{r+1}phi_s(a_0..a_r; b_1..b_s; q, z)` truncated below
/// `q^prec`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiSpec {
    pub upper: Vec<QMonomial>,
    pub lower: Vec<QMonomial>,
    pub argument: QMonomial,
    pub prec: i64,
}

impl PhiSpec {
    pub fn new(
        upper: Vec<QMonomial>,
        lower: Vec<QMonomial>,
        argument: QMonomial,
        prec: i64,
    ) -> Self {
        Self {
            upper,
            lower,
            argument,
            prec,
        }
    }

    /// Index of the last term that can be nonzero, when some upper
    /// parameter is `q^{-n}` with `n >= 0`.
    pub fn last_term(&self) -> Option<u64> {
        self.upper
            .iter()
            .filter(|a| a.is_pure_power() && a.exp() <= 0)
            .map(|a| (-a.exp()) as u64)
            .min()
    }

    fn validate(&self) -> Result<()> {
        if self.upper.is_empty() {
            return Err(Error::Domain(
                "phi needs at least one upper parameter".into(),
            ));
        }
        if let Some(b) = self
            .lower
            .iter()
            .find(|b| b.is_pure_power() && b.exp() <= 0)
        {
            return Err(Error::DivisionByZero(format!(
                "lower parameter {b} makes a denominator Pochhammer vanish"
            )));
        }
        Ok(())
    }

    fn balance(&self) -> i64 {
        self.lower.len() as i64 - (self.upper.len() as i64 - 1)
    }

    /// Lower bound on `val(term(m+1)) - val(term(m))`.
    fn growth_bound(&self, m: i64) -> i64 {
        self.argument.exp()
            + self.balance() * m
            + self.upper.iter().map(|a| (a.exp() + m).min(0)).sum::<i64>()
    }
}

const MAX_SLACK: i64 = 1 << 16;

/// Evaluates a basic hypergeometric series term by term.
///
/// Terminating series stop at their last nonzero term. Otherwise the
/// argument must carry a positive power of `q`, and summation stops once a
/// bound on all later term valuations reaches the precision. At most
/// `prec + 16` terms are examined before giving up.
pub fn phi(spec: &PhiSpec) -> Result<QSeries> {
    spec.validate()?;
    let last = spec.last_term();
    if last.is_none() && spec.argument.exp() < 1 {
        return Err(Error::NonconvergentPhi { horizon: 0 });
    }
    let horizon = spec.prec.max(0) as usize + 16;
    let mut slack = 16;
    loop {
        if let Some(s) = phi_with_slack(spec, slack, last, horizon)? {
            return Ok(s.truncate(spec.prec).normalized());
        }
        slack *= 2;
        if slack > MAX_SLACK {
            return Err(Error::Internal(format!(
                "phi could not reach precision {} with working slack {MAX_SLACK}",
                spec.prec
            )));
        }
    }
}

fn phi_with_slack(
    spec: &PhiSpec,
    slack: i64,
    last: Option<u64>,
    horizon: usize,
) -> Result<Option<QSeries>> {
    let work = spec.prec + slack;
    let balance = spec.balance();
    let sign = if balance % 2 == 0 { 1 } else { -1 };
    let mut term = QSeries::one(work);
    let mut sum = term.clone();
    let mut m: i64 = 0;
    loop {
        match last {
            Some(n) if m as u64 >= n => break,
            Some(_) => {}
            None => {
                if m as usize >= horizon {
                    return Err(Error::NonconvergentPhi { horizon });
                }
                if balance >= 0
                    && spec.growth_bound(m) >= 1
                    && term.valuation_bound() + spec.growth_bound(m) >= spec.prec
                {
                    break;
                }
            }
        }
        for a in &spec.upper {
            term = term.mul_binomial(&a.shifted(m));
        }
        term = term.div_binomial(&QMonomial::q_pow(m + 1))?;
        for b in &spec.lower {
            term = term.div_binomial(&b.shifted(m))?;
        }
        let step = QMonomial::int(sign, balance * m)?.times(&spec.argument);
        term = term.mul_monomial(&step);
        sum = &sum + &term;
        m += 1;
    }
    Ok((sum.prec() >= spec.prec).then_some(sum))
}

/// `(num; q)_n / (den; q)_n` to precision `prec`.
pub fn pochhammer_ratio(num: &QMonomial, den: &QMonomial, n: u32, prec: i64) -> Result<QSeries> {
    let mut s = pochhammer(num, n, prec);
    for k in 0..i64::from(n) {
        s = s.div_binomial(&den.shifted(k))?;
    }
    Ok(s.truncate(prec))
}

/// Checks `2phi1(a, q^{-n}; c; q, c q^n / a) = (c/a; q)_n / (c; q)_n`
/// through `q^{prec-1}`.
pub fn verify_chu(a: &QMonomial, n: u32, c: &QMonomial, prec: i64) -> VerificationReport {
    let check = IdentityCheck::new(CheckName::Chu, &[("n", i64::from(n))], prec - 1);
    let run = || -> Result<Option<Mismatch>> {
        let z = c.shifted(i64::from(n)).over(a);
        let spec = PhiSpec::new(
            vec![a.clone(), QMonomial::q_pow(-i64::from(n))],
            vec![c.clone()],
            z,
            prec,
        );
        let lhs = phi(&spec)?;
        let rhs = pochhammer_ratio(&c.over(a), c, n, prec)?;
        Ok(Mismatch::from_agreement(
            lhs.equal_to_order(&rhs, prec - 1)?,
        ))
    };
    match run() {
        Ok(None) => VerificationReport::pass(check, format!("a = {a}, c = {c}")),
        Ok(Some(m)) => VerificationReport::fail(
            check,
            m,
            format!("a = {a}, c = {c}: 2phi1 sum differs from the Pochhammer quotient"),
        ),
        Err(e) => VerificationReport::error(check, &e),
    }
}
