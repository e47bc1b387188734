//! Brute-force partition and overpartition counting.
//!
//! Nothing here touches q-series algebra beyond packaging the final counts,
//! so these counts serve as ground truth for every closed form.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::series::QSeries;
use crate::{Error, Result};

/// A partition: a non-increasing list of positive parts.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PartitionInBox {
    parts: Vec<u32>,
}

impl PartitionInBox {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::Domain("partition parts must be positive".into()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Domain(
                "partition parts must be non-increasing".into(),
            ));
        }
        Ok(Self { parts })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn size(&self) -> u64 {
        self.parts.iter().map(|&p| u64::from(p)).sum()
    }

    pub fn largest(&self) -> Option<u32> {
        self.parts.first().copied()
    }

    pub fn smallest(&self) -> Option<u32> {
        self.parts.last().copied()
    }

    /// Distinct part values, largest first.
    pub fn distinct(&self) -> Vec<u32> {
        let mut d = self.parts.clone();
        d.dedup();
        d
    }

    /// Largest part minus smallest part; zero for the empty partition.
    pub fn spread(&self) -> u32 {
        match (self.largest(), self.smallest()) {
            (Some(a), Some(b)) => a - b,
            _ => 0,
        }
    }
}

/// A partition in which the first occurrence of some distinct parts is
/// overlined.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OverPartition {
    underlying: PartitionInBox,
    overlined: BTreeSet<u32>,
}

impl OverPartition {
    pub fn new(underlying: PartitionInBox, overlined: BTreeSet<u32>) -> Result<Self> {
        if let Some(v) = overlined.iter().find(|v| !underlying.parts.contains(v)) {
            return Err(Error::Domain(format!("overlined value {v} is not a part")));
        }
        Ok(Self {
            underlying,
            overlined,
        })
    }

    pub fn underlying(&self) -> &PartitionInBox {
        &self.underlying
    }

    pub fn is_overlined(&self, value: u32) -> bool {
        self.overlined.contains(&value)
    }
}

pub fn divisor_count(n: u64) -> Result<u64> {
    if n < 1 {
        return Err(Error::Domain("divisor count needs n >= 1".into()));
    }
    let mut count = 0;
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            count += if d * d == n { 1 } else { 2 };
        }
        d += 1;
    }
    Ok(count)
}

pub fn is_perfect_square(n: u64) -> bool {
    let r = n.sqrt();
    r * r == n
}

/// Walks partitions of `rem` (plus the already-placed parts on `stack`)
/// using part values `v, v-1, ..., smallest`, where at least one copy of
/// `smallest` has been reserved by the caller.
fn walk<F: FnMut(&[(u32, u32)])>(
    rem: u32,
    v: u32,
    smallest: u32,
    stack: &mut Vec<(u32, u32)>,
    visit: &mut F,
) {
    if v == smallest {
        if rem.is_multiple_of(smallest) {
            stack.push((smallest, 1 + rem / smallest));
            visit(stack);
            stack.pop();
        }
        return;
    }
    walk(rem, v - 1, smallest, stack, visit);
    for k in 1..=rem / v {
        stack.push((v, k));
        walk(rem - k * v, v - 1, smallest, stack, visit);
        stack.pop();
    }
}

/// Visits every partition of `n` with largest minus smallest part at most
/// `t`, as `(value, multiplicity)` pairs in decreasing value order.
pub fn for_each_bounded_partition<F: FnMut(&[(u32, u32)])>(n: u32, t: u32, mut visit: F) {
    let mut stack = Vec::new();
    for smallest in 1..=n {
        let top = smallest.saturating_add(t).min(n);
        walk(n - smallest, top, smallest, &mut stack, &mut visit);
    }
}

fn spread_of(parts: &[(u32, u32)]) -> u32 {
    parts[0].0 - parts[parts.len() - 1].0
}

fn sum_weights<F: Fn(&[(u32, u32)]) -> Option<u32>>(n: u32, t: u32, log2_weight: F) -> BigUint {
    let mut total = BigUint::zero();
    for_each_bounded_partition(n, t, |parts| {
        if let Some(w) = log2_weight(parts) {
            total += BigUint::one() << w;
        }
    });
    total
}

/// `p(n, t)`: partitions of `n` whose largest and smallest parts differ by
/// exactly `t`.
pub fn count_p_exact_diff(n: u32, t: u32) -> BigUint {
    sum_weights(n, t, |p| (spread_of(p) == t).then_some(0))
}

/// `p_t(n)`: partitions of `n` whose largest and smallest parts differ by at
/// most `t`.
pub fn count_p_bounded_diff(n: u32, t: u32) -> BigUint {
    sum_weights(n, t, |_| Some(0))
}

/// Number of overpartitions of `n`.
pub fn count_opbar_total(n: u32) -> BigUint {
    count_opbar_bounded(n, n.saturating_sub(1))
}

/// Overpartitions of `n` whose largest and smallest parts differ by at most
/// `t`. Each partition contributes `2^(distinct parts)`.
pub fn count_opbar_bounded(n: u32, t: u32) -> BigUint {
    sum_weights(n, t, |p| Some(p.len() as u32))
}

/// `g_t(n)`: like [`count_opbar_bounded`], except that when the spread is
/// exactly `t` the largest part may not be overlined.
pub fn count_g(n: u32, t: u32) -> BigUint {
    sum_weights(n, t, |p| {
        let d = p.len() as u32;
        Some(if spread_of(p) == t { d - 1 } else { d })
    })
}

/// All partitions of `n`, generated without any spread constraint.
pub fn partitions(n: u32) -> Vec<PartitionInBox> {
    fn rec(rem: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<PartitionInBox>) {
        if rem == 0 {
            out.push(PartitionInBox { parts: cur.clone() });
            return;
        }
        for p in (1..=max.min(rem)).rev() {
            cur.push(p);
            rec(rem - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Every overpartition of `n`, materialised one overline assignment at a
/// time. Exponential; meant for `n` up to about 15.
pub fn overpartitions(n: u32) -> Vec<OverPartition> {
    let mut out = Vec::new();
    for p in partitions(n) {
        let distinct = p.distinct();
        for mask in 0u32..(1 << distinct.len()) {
            let overlined = distinct
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, &v)| v)
                .collect();
            out.push(OverPartition {
                underlying: p.clone(),
                overlined,
            });
        }
    }
    out
}

/// [`count_opbar_bounded`] by explicit overpartition enumeration.
pub fn count_opbar_bounded_materialized(n: u32, t: u32) -> BigUint {
    overpartitions(n)
        .iter()
        .filter(|o| o.underlying.spread() <= t)
        .count()
        .into()
}

/// [`count_g`] by explicit overpartition enumeration.
pub fn count_g_materialized(n: u32, t: u32) -> BigUint {
    overpartitions(n)
        .iter()
        .filter(|o| {
            let spread = o.underlying.spread();
            let largest = o.underlying.largest().unwrap_or(0);
            spread < t || (spread == t && !o.is_overlined(largest))
        })
        .count()
        .into()
}

/// Generating polynomial of overpartitions with at most `n` parts, each at
/// most `m`, by walking every partition in the box. The empty
/// overpartition contributes 1.
pub fn over_qbinom_box_oracle(m: u32, n: u32) -> QSeries {
    fn rec(v: u32, slots: u32, size: usize, distinct: u32, acc: &mut [BigUint]) {
        if v == 0 || slots == 0 {
            acc[size] += BigUint::one() << distinct;
            return;
        }
        rec(v - 1, slots, size, distinct, acc);
        for k in 1..=slots {
            rec(v - 1, slots - k, size + (k * v) as usize, distinct + 1, acc);
        }
    }
    let degree = (m as usize) * (n as usize);
    let mut acc = vec![BigUint::zero(); degree + 1];
    rec(m, n, 0, 0, &mut acc);
    let coeffs = acc
        .into_iter()
        .map(|c| BigRational::from_integer(c.into()))
        .collect();
    QSeries::polynomial(0, coeffs, degree as i64 + 1)
}

/// A counting sequence that can be packed into a generating series.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Oracle {
    /// `p̄_t(n)`
    PbarBounded(u32),
    /// `g_t(n)`
    G(u32),
    /// `p_t(n)`
    PBounded(u32),
    /// `p(n, t)`
    PExact(u32),
    /// `d(n)`
    Divisors,
    /// `p̄(n)`
    OverlineTotal,
}

impl Oracle {
    pub fn count(self, n: u32) -> Result<BigUint> {
        Ok(match self {
            Oracle::PbarBounded(t) => count_opbar_bounded(n, t),
            Oracle::G(t) => count_g(n, t),
            Oracle::PBounded(t) => count_p_bounded_diff(n, t),
            Oracle::PExact(t) => count_p_exact_diff(n, t),
            Oracle::Divisors => divisor_count(u64::from(n))?.into(),
            Oracle::OverlineTotal => count_opbar_total(n),
        })
    }
}

/// `sum_{n=1}^{n_max} count(n) q^n` with precision `n_max + 1`.
pub fn oracle_series(oracle: Oracle, n_max: u32) -> Result<QSeries> {
    if n_max < 1 {
        return Err(Error::Domain("oracle series needs n_max >= 1".into()));
    }
    let mut coeffs = vec![BigRational::zero()];
    for n in 1..=n_max {
        coeffs.push(BigRational::from_integer(oracle.count(n)?.into()));
    }
    Ok(QSeries::polynomial(0, coeffs, i64::from(n_max) + 1))
}
