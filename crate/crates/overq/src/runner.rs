//! Expands a check selector into concrete checks and runs them.

use rayon::prelude::*;

use overq_core::identities::Verifier;
use overq_core::{CheckName, VerificationReport};

/// Which checks `verify` should run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Selector {
    One(CheckName),
    All,
}

impl Selector {
    pub fn parse(s: &str) -> Option<Selector> {
        if s == "all" {
            return Some(Selector::All);
        }
        CheckName::parse(s).map(Selector::One)
    }

    fn names(self) -> Vec<CheckName> {
        match self {
            Selector::One(n) => vec![n],
            Selector::All => CheckName::ALL.to_vec(),
        }
    }
}

/// Every `(check, parameter)` pair from each check's smallest admissible
/// parameter up to `t_max`. Checks whose range is empty are skipped.
pub fn plan(selector: Selector, t_max: u32) -> Vec<(CheckName, u32)> {
    selector
        .names()
        .into_iter()
        .flat_map(|name| (name.min_param()..=t_max).map(move |p| (name, p)))
        .collect()
}

/// Runs the planned checks in parallel. Reports come back ordered by check
/// name, then parameters, whatever order they finished in.
pub fn run_checks(
    verifier: &Verifier,
    planned: &[(CheckName, u32)],
    order: i64,
) -> Vec<VerificationReport> {
    let mut reports: Vec<VerificationReport> = planned
        .par_iter()
        .map(|&(name, param)| verifier.run(name, param, order))
        .collect();
    reports.sort_by(|a, b| {
        (a.check.name.as_str(), &a.check.params).cmp(&(b.check.name.as_str(), &b.check.params))
    });
    reports
}
