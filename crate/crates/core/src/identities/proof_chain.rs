//! The displayed expressions of the smallest-part proof of the closed form
//! for `G_t`, each evaluated as a series equal to `G_t / 2`.

use alloc::vec;
use alloc::vec::Vec;

use num_rational::BigRational;

use super::{div_pos, neg_q, over_ratio, q};
use crate::qfunctions::{phi, pochhammer_inf, PhiSpec};
use crate::series::{QMonomial, QSeries};
use crate::{Error, Result};

pub const PROOF_STEP_LABELS: [&str; 5] = ["i", "ii", "iii", "iv", "v"];

/// One expression of the chain, kept as `prefactor * body` so that a
/// prefactor can be perturbed on its own.
#[derive(Clone, Debug)]
pub struct ProofStep {
    pub label: &'static str,
    pub prefactor: QSeries,
    pub body: QSeries,
}

impl ProofStep {
    pub fn value(&self) -> QSeries {
        &self.prefactor * &self.body
    }
}

fn half() -> BigRational {
    BigRational::new(1.into(), 2.into())
}

/// `q (-q)_t / ((1+q) (q)_{t+1})`
pub(crate) fn leading_prefactor(t: i64, prec: i64) -> QSeries {
    let mut s = QSeries::monomial(BigRational::from_integer(1.into()), 1, prec);
    for k in 1..=t {
        s = s.mul_binomial(&neg_q(k));
    }
    s = div_pos(s, &neg_q(1));
    for k in 1..=t + 1 {
        s = div_pos(s, &q(k));
    }
    s
}

/// `sum_{m >= 1} (q)_{m-1} (-q)_{m+t-1} / ((q)_{m+t} (-q)_m) q^m`, each
/// summand obtained from the previous one by its term ratio
/// `q (1-q^m)(1+q^{m+t}) / ((1-q^{m+t+1})(1+q^{m+1}))`.
fn pochhammer_ratio_sum(t: i64, prec: i64) -> Result<QSeries> {
    let mut term = leading_prefactor(t, prec);
    let mut sum = QSeries::zero(prec);
    for m in 1..prec {
        if term.valuation_bound() < m {
            return Err(Error::Internal(alloc::format!(
                "Pochhammer-ratio summand {m} has valuation below {m}"
            )));
        }
        sum = &sum + &term;
        term = term.mul_binomial(&q(m)).mul_binomial(&neg_q(m + t));
        term = div_pos(div_pos(term, &q(m + t + 1)), &neg_q(m + 1));
        term = term.shift(1).truncate(prec);
    }
    Ok(sum)
}

/// The five expressions, in order, each equal to `G_t / 2`:
///
/// 1. the sum over the smallest part written with Pochhammer ratios,
/// 2. `q(-q)_t/((1+q)(q)_{t+1}) * 3phi2(q, q, -q^{t+1}; -q^2, q^{t+2}; q, q)`,
/// 3. the same prefactor times
///    `(q^{t+1})_inf (q^2)_inf / ((q^{t+2})_inf (q)_inf)` and
///    `3phi2(q, -q, q^{1-t}; -q^2, q^2; q, q^{t+1})`,
/// 4. `-(-q)_t / (2(1-q^t)(q)_t) * (2phi1(-1, q^{-t}; -q; q, q^{t+1}) - 1)`,
/// 5. `((-q)_t/(q)_t - 1) / (2(1-q^t))`.
pub fn proof_chain_steps(t: u32, prec: i64) -> Result<Vec<ProofStep>> {
    if t < 1 {
        return Err(Error::Domain("the proof chain needs t >= 1".into()));
    }
    let t = i64::from(t);
    let one = QSeries::one(prec);

    let step1 = ProofStep {
        label: "i",
        prefactor: one.clone(),
        body: pochhammer_ratio_sum(t, prec)?,
    };

    let lead = leading_prefactor(t, prec);
    let before = phi(&PhiSpec::new(
        vec![q(1), q(1), neg_q(t + 1)],
        vec![neg_q(2), q(t + 2)],
        q(1),
        prec,
    ))?;
    let step2 = ProofStep {
        label: "ii",
        prefactor: lead.clone(),
        body: before,
    };

    let products = (&pochhammer_inf(&q(t + 1), prec)? * &pochhammer_inf(&q(2), prec)?)
        .div(&(&pochhammer_inf(&q(t + 2), prec)? * &pochhammer_inf(&q(1), prec)?))?;
    let after = phi(&PhiSpec::new(
        vec![q(1), neg_q(1), q(1 - t)],
        vec![neg_q(2), q(2)],
        q(t + 1),
        prec,
    ))?;
    let step3 = ProofStep {
        label: "iii",
        prefactor: &lead * &products,
        body: after,
    };

    let chu = phi(&PhiSpec::new(
        vec![QMonomial::int(-1, 0)?, q(-t)],
        vec![neg_q(1)],
        q(t + 1),
        prec,
    ))?;
    let mut pre4 = over_ratio(t as u32, prec).scale(&-half());
    pre4 = div_pos(pre4, &q(t));
    let step4 = ProofStep {
        label: "iv",
        prefactor: pre4,
        body: &chu - &one,
    };

    let step5 = ProofStep {
        label: "v",
        prefactor: div_pos(one.scale(&half()), &q(t)),
        body: &over_ratio(t as u32, prec) - &one,
    };

    Ok(vec![step1, step2, step3, step4, step5])
}
