//! Named verification units and their outcomes.

use alloc::collections::BTreeMap;
use alloc::string::String;
use core::fmt;

use num_rational::BigRational;

use crate::series::Agreement;
use crate::Error;

/// Which identity or relation a check exercises.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CheckName {
    Th1,
    Th2,
    Bk,
    Abr,
    Oqbinom,
    Relation,
    Cases,
    ProofChain,
    Chu,
    Corollary,
}

impl CheckName {
    pub const ALL: [CheckName; 10] = [
        CheckName::Th1,
        CheckName::Th2,
        CheckName::Bk,
        CheckName::Abr,
        CheckName::Oqbinom,
        CheckName::Relation,
        CheckName::Cases,
        CheckName::ProofChain,
        CheckName::Chu,
        CheckName::Corollary,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckName::Th1 => "th1",
            CheckName::Th2 => "th2",
            CheckName::Bk => "bk",
            CheckName::Abr => "abr",
            CheckName::Oqbinom => "oqbinom",
            CheckName::Relation => "relation",
            CheckName::Cases => "cases",
            CheckName::ProofChain => "proofchain",
            CheckName::Chu => "chu",
            CheckName::Corollary => "corollary",
        }
    }

    pub fn parse(s: &str) -> Option<CheckName> {
        CheckName::ALL.into_iter().find(|c| c.as_str() == s)
    }

    /// Smallest admissible value of the swept parameter (`t`, or `n` for
    /// the q-Chu-Vandermonde instances).
    pub fn min_param(self) -> u32 {
        match self {
            CheckName::Th1
            | CheckName::Bk
            | CheckName::Relation
            | CheckName::Cases
            | CheckName::ProofChain => 1,
            CheckName::Abr => 2,
            CheckName::Th2 | CheckName::Oqbinom | CheckName::Chu | CheckName::Corollary => 0,
        }
    }

    /// Name of the swept parameter.
    pub fn param_name(self) -> &'static str {
        match self {
            CheckName::Chu => "n",
            _ => "t",
        }
    }
}

impl fmt::Display for CheckName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A named, parameterised verification unit.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct IdentityCheck {
    pub name: CheckName,
    pub params: BTreeMap<String, i64>,
    pub order: i64,
}

impl IdentityCheck {
    pub fn new(name: CheckName, params: &[(&str, i64)], order: i64) -> Self {
        Self {
            name,
            params: params.iter().map(|(k, v)| (String::from(*k), *v)).collect(),
            order,
        }
    }
}

impl fmt::Display for IdentityCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)?;
        for (k, v) in &self.params {
            write!(f, " {k}={v}")?;
        }
        write!(f, " order={}", self.order)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Error => "error",
        }
    }
}

/// First coefficient at which two sides of a check disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub exponent: i64,
    pub lhs: BigRational,
    pub rhs: BigRational,
}

/// Outcome of one [`IdentityCheck`]. A failing report always carries a
/// mismatch; passing and erroring reports never do.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub check: IdentityCheck,
    pub status: Status,
    pub first_mismatch: Option<Mismatch>,
    pub message: String,
}

impl VerificationReport {
    pub fn pass(check: IdentityCheck, message: impl Into<String>) -> Self {
        Self {
            check,
            status: Status::Pass,
            first_mismatch: None,
            message: message.into(),
        }
    }

    pub fn fail(check: IdentityCheck, mismatch: Mismatch, message: impl Into<String>) -> Self {
        Self {
            check,
            status: Status::Fail,
            first_mismatch: Some(mismatch),
            message: message.into(),
        }
    }

    pub fn error(check: IdentityCheck, err: &Error) -> Self {
        Self {
            check,
            status: Status::Error,
            first_mismatch: None,
            message: alloc::format!("{err}"),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

impl Mismatch {
    pub fn from_agreement(a: Agreement) -> Option<Mismatch> {
        match a {
            Agreement::Equal => None,
            Agreement::Differs { exponent, lhs, rhs } => Some(Mismatch { exponent, lhs, rhs }),
        }
    }
}
