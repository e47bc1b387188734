//! Truncated Laurent series in `q` over exact rationals.
//!
//! A [`QSeries`] stores a dense window of coefficients for exponents in
//! `[lo, prec)`. Coefficients below `lo` are exactly zero, coefficients at or
//! above `prec` are unknown. Every operation states how the window of its
//! result is derived from the windows of its operands.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// A nonzero rational multiple of an integer power of `q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMonomial {
    coeff: BigRational,
    exp: i64,
}

impl QMonomial {
    pub fn new(coeff: BigRational, exp: i64) -> Result<Self> {
        if coeff.is_zero() {
            return Err(Error::ZeroMonomial);
        }
        Ok(Self { coeff, exp })
    }

    /// `c * q^exp` with an integer coefficient.
    pub fn int(coeff: i64, exp: i64) -> Result<Self> {
        Self::new(BigRational::from_integer(coeff.into()), exp)
    }

    /// `q^exp`.
    pub fn q_pow(exp: i64) -> Self {
        Self {
            coeff: BigRational::one(),
            exp,
        }
    }

    /// `-q^exp`.
    pub fn neg_q_pow(exp: i64) -> Self {
        Self {
            coeff: -BigRational::one(),
            exp,
        }
    }

    pub fn coeff(&self) -> &BigRational {
        &self.coeff
    }

    pub fn exp(&self) -> i64 {
        self.exp
    }

    /// True when the monomial is exactly `q^exp` (coefficient one).
    pub fn is_pure_power(&self) -> bool {
        self.coeff.is_one()
    }

    pub fn times(&self, other: &QMonomial) -> QMonomial {
        QMonomial {
            coeff: &self.coeff * &other.coeff,
            exp: self.exp + other.exp,
        }
    }

    pub fn over(&self, other: &QMonomial) -> QMonomial {
        QMonomial {
            coeff: &self.coeff / &other.coeff,
            exp: self.exp - other.exp,
        }
    }

    pub fn recip(&self) -> QMonomial {
        QMonomial {
            coeff: self.coeff.recip(),
            exp: -self.exp,
        }
    }

    /// `self * q^k`.
    pub fn shifted(&self, k: i64) -> QMonomial {
        QMonomial {
            coeff: self.coeff.clone(),
            exp: self.exp + k,
        }
    }

    pub fn pow(&self, n: u32) -> QMonomial {
        QMonomial {
            coeff: num_traits::pow(self.coeff.clone(), n as usize),
            exp: self.exp * i64::from(n),
        }
    }
}

impl Neg for QMonomial {
    type Output = QMonomial;
    fn neg(self) -> QMonomial {
        QMonomial {
            coeff: -self.coeff,
            exp: self.exp,
        }
    }
}

impl fmt::Display for QMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 0 {
            return write!(f, "{}", self.coeff);
        }
        let mag = self.coeff.abs();
        if self.coeff.is_negative() {
            f.write_str("-")?;
        }
        if !mag.is_one() {
            write!(f, "{mag}*")?;
        }
        match self.exp {
            1 => f.write_str("q"),
            e => write!(f, "q^{e}"),
        }
    }
}

/// Outcome of [`QSeries::equal_to_order`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Agreement {
    Equal,
    Differs {
        exponent: i64,
        lhs: BigRational,
        rhs: BigRational,
    },
}

impl Agreement {
    pub fn is_equal(&self) -> bool {
        matches!(self, Agreement::Equal)
    }
}

/// A truncated Laurent series `sum_{lo <= e < prec} c_e q^e + O(q^prec)`.
#[derive(Clone, Debug)]
pub struct QSeries {
    lo: i64,
    prec: i64,
    coeffs: Vec<BigRational>,
}

fn zeros(len: usize) -> Vec<BigRational> {
    vec![BigRational::zero(); len]
}

fn width(lo: i64, prec: i64) -> usize {
    debug_assert!(lo <= prec);
    (prec - lo) as usize
}

impl QSeries {
    fn raw(lo: i64, prec: i64, coeffs: Vec<BigRational>) -> Self {
        debug_assert_eq!(coeffs.len(), width(lo, prec));
        Self { lo, prec, coeffs }
    }

    /// The zero series known below `q^prec`.
    pub fn zero(prec: i64) -> Self {
        let lo = prec.min(0);
        Self::raw(lo, prec, zeros(width(lo, prec)))
    }

    pub fn one(prec: i64) -> Self {
        Self::monomial(BigRational::one(), 0, prec)
    }

    /// `c * q^exp + O(q^prec)`; the term is dropped when `exp >= prec`.
    pub fn monomial(coeff: BigRational, exp: i64, prec: i64) -> Self {
        let mut s = Self::zero(prec);
        if exp < prec {
            if exp < s.lo {
                s = s.lowered(exp);
            }
            let i = (exp - s.lo) as usize;
            s.coeffs[i] = coeff;
        }
        s
    }

    /// Builds a series from `(exponent, coefficient)` pairs. Repeated
    /// exponents are summed; gaps are zero.
    pub fn from_terms<I>(terms: I, prec: i64) -> Result<Self>
    where
        I: IntoIterator<Item = (i64, BigRational)>,
    {
        let terms: Vec<(i64, BigRational)> = terms.into_iter().collect();
        if let Some((e, _)) = terms.iter().find(|(e, _)| *e >= prec) {
            return Err(Error::WindowViolation { exponent: *e, prec });
        }
        let lo = terms
            .iter()
            .map(|(e, _)| *e)
            .min()
            .unwrap_or_else(|| prec.min(0));
        let mut coeffs = zeros(width(lo, prec));
        for (e, c) in terms {
            coeffs[(e - lo) as usize] += c;
        }
        Ok(Self::raw(lo, prec, coeffs))
    }

    /// Integer-coefficient convenience form of [`QSeries::from_terms`].
    pub fn from_int_terms(terms: &[(i64, i64)], prec: i64) -> Result<Self> {
        Self::from_terms(
            terms
                .iter()
                .map(|&(e, c)| (e, BigRational::from_integer(c.into()))),
            prec,
        )
    }

    /// An exact Laurent polynomial `sum_i coeffs[i] q^(lo+i)` viewed to
    /// precision `prec`. Terms at or above `prec` are discarded, the gap up
    /// to `prec` is zero filled.
    pub fn polynomial(lo: i64, coeffs: Vec<BigRational>, prec: i64) -> Self {
        let start = lo.min(prec);
        let mut out = zeros(width(start, prec));
        for (i, c) in coeffs.into_iter().enumerate() {
            let e = lo + i as i64;
            if e < prec {
                out[(e - start) as usize] = c;
            }
        }
        Self::raw(start, prec, out)
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    pub fn is_empty_window(&self) -> bool {
        self.lo == self.prec
    }

    /// Least exponent with a nonzero coefficient in the window.
    pub fn valuation(&self) -> Option<i64> {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .map(|i| self.lo + i as i64)
    }

    /// Lower bound on the true valuation: the valuation when known, the
    /// precision otherwise.
    pub fn valuation_bound(&self) -> i64 {
        self.valuation().unwrap_or(self.prec)
    }

    pub fn coeff(&self, e: i64) -> Result<BigRational> {
        if e >= self.prec {
            return Err(Error::PrecisionExceeded {
                exponent: e,
                prec: self.prec,
            });
        }
        Ok(self.at(e))
    }

    fn at(&self, e: i64) -> BigRational {
        if e < self.lo || e >= self.prec {
            BigRational::zero()
        } else {
            self.coeffs[(e - self.lo) as usize].clone()
        }
    }

    fn at_ref(&self, e: i64) -> Option<&BigRational> {
        if e < self.lo || e >= self.prec {
            None
        } else {
            Some(&self.coeffs[(e - self.lo) as usize])
        }
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigRational)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.lo + i as i64, c))
    }

    /// Extends the stored window down to `lo` (no-op if already lower).
    fn lowered(mut self, lo: i64) -> Self {
        if lo < self.lo {
            let mut coeffs = zeros((self.lo - lo) as usize);
            coeffs.append(&mut self.coeffs);
            self.coeffs = coeffs;
            self.lo = lo;
        }
        self
    }

    /// Drops stored leading zeros: the window then starts at the valuation,
    /// or at `min(lo, 0)` clamped up to 0 when the valuation is non-negative.
    pub fn normalized(&self) -> Self {
        let lo = self.valuation().unwrap_or(self.prec).min(self.lo.max(0));
        if lo <= self.lo {
            return self.clone();
        }
        let skip = (lo - self.lo) as usize;
        Self::raw(lo, self.prec, self.coeffs[skip..].to_vec())
    }

    /// Forgets every coefficient at or above `prec`.
    pub fn truncate(&self, prec: i64) -> Self {
        if prec >= self.prec {
            return self.clone();
        }
        let lo = self.lo.min(prec);
        let coeffs = (lo..prec).map(|e| self.at(e)).collect();
        Self::raw(lo, prec, coeffs)
    }

    /// Reinterprets an exact Laurent polynomial at a different precision.
    ///
    /// The caller guarantees every coefficient at or above `self.prec()` is
    /// zero; raising the precision then zero-fills the new part of the window.
    pub fn with_polynomial_prec(&self, prec: i64) -> Self {
        if prec <= self.prec {
            return self.truncate(prec);
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(width(self.lo, prec), BigRational::zero());
        Self::raw(self.lo, prec, coeffs)
    }

    pub fn add(&self, other: &QSeries) -> QSeries {
        let lo = self.lo.min(other.lo);
        let prec = self.prec.min(other.prec);
        let coeffs = (lo..prec)
            .map(|e| match (self.at_ref(e), other.at_ref(e)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => BigRational::zero(),
            })
            .collect();
        Self::raw(lo, prec, coeffs)
    }

    pub fn sub(&self, other: &QSeries) -> QSeries {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> QSeries {
        Self::raw(self.lo, self.prec, self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, s: &BigRational) -> QSeries {
        Self::raw(
            self.lo,
            self.prec,
            self.coeffs.iter().map(|c| c * s).collect(),
        )
    }

    pub fn scale_int(&self, s: i64) -> QSeries {
        self.scale(&BigRational::from_integer(s.into()))
    }

    /// Multiplies by `q^k`; both window ends move by `k`.
    pub fn shift(&self, k: i64) -> QSeries {
        Self::raw(self.lo + k, self.prec + k, self.coeffs.clone())
    }

    /// Multiplies by the exact monomial `m`.
    pub fn mul_monomial(&self, m: &QMonomial) -> QSeries {
        self.scale(&m.coeff).shift(m.exp)
    }

    /// Cauchy product. The result window is
    /// `[lo_a + lo_b, min(prec_a + lo_b, prec_b + lo_a))`.
    pub fn mul(&self, other: &QSeries) -> QSeries {
        let lo = self.lo + other.lo;
        let prec = (self.prec + other.lo).min(other.prec + self.lo);
        let n = width(lo, prec);
        let mut coeffs = zeros(n);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() || i >= n {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(n - i).enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        Self::raw(lo, prec, coeffs)
    }

    /// Multiplicative inverse. With `v` the valuation, the result window is
    /// `[-v, prec - 2v)`.
    pub fn invert(&self) -> Result<QSeries> {
        if self.is_empty_window() {
            return Err(Error::EmptyWindow);
        }
        let v = self.valuation().ok_or(Error::NotInvertible)?;
        let unit: Vec<&BigRational> = (v..self.prec)
            .map(|e| &self.coeffs[(e - self.lo) as usize])
            .collect();
        let n = unit.len();
        let lead_inv = unit[0].recip();
        let mut out: Vec<BigRational> = Vec::with_capacity(n);
        out.push(lead_inv.clone());
        for k in 1..n {
            let mut acc = BigRational::zero();
            for j in 1..=k {
                if !unit[j].is_zero() {
                    acc += unit[j] * &out[k - j];
                }
            }
            out.push(-(acc * &lead_inv));
        }
        Ok(Self::raw(-v, self.prec - 2 * v, out))
    }

    /// `self / other`, computed as `self * other^-1`.
    pub fn div(&self, other: &QSeries) -> Result<QSeries> {
        Ok(self.mul(&other.invert()?))
    }

    /// Multiplies by the exact binomial `1 - m`.
    pub fn mul_binomial(&self, m: &QMonomial) -> QSeries {
        let k = m.exp;
        let lo = self.lo.min(self.lo + k);
        let prec = self.prec.min(self.prec + k);
        let coeffs = (lo..prec)
            .map(|e| {
                let mut c = self.at(e);
                if let Some(prev) = self.at_ref(e - k) {
                    c -= prev * &m.coeff;
                }
                c
            })
            .collect();
        Self::raw(lo, prec, coeffs)
    }

    /// Divides by the exact binomial `1 - m`, expanding `1/(1 - m)` as a
    /// geometric series in the direction that converges.
    pub fn div_binomial(&self, m: &QMonomial) -> Result<QSeries> {
        let k = m.exp;
        if k == 0 {
            let d = BigRational::one() - &m.coeff;
            if d.is_zero() {
                return Err(Error::DivisionByZero(format!("factor 1 - ({m}) vanishes")));
            }
            return Ok(self.scale(&d.recip()));
        }
        if k < 0 {
            // 1 - c q^k = -c q^k (1 - c^{-1} q^{-k})
            let inv = m.recip();
            let factor = QMonomial {
                coeff: -m.coeff.recip(),
                exp: -k,
            };
            return self.mul_monomial(&factor).div_binomial(&inv);
        }
        let mut coeffs = self.coeffs.clone();
        let step = k as usize;
        for i in step..coeffs.len() {
            let (head, tail) = coeffs.split_at_mut(i);
            tail[0] += &head[i - step] * &m.coeff;
        }
        Ok(Self::raw(self.lo, self.prec, coeffs))
    }

    /// Compares coefficients for every exponent `e <= order`.
    pub fn equal_to_order(&self, other: &QSeries, order: i64) -> Result<Agreement> {
        for s in [self, other] {
            if order >= s.prec {
                return Err(Error::PrecisionExceeded {
                    exponent: order,
                    prec: s.prec,
                });
            }
        }
        for e in self.lo.min(other.lo)..=order {
            let (a, b) = (self.at(e), other.at(e));
            if a != b {
                return Ok(Agreement::Differs {
                    exponent: e,
                    lhs: a,
                    rhs: b,
                });
            }
        }
        Ok(Agreement::Equal)
    }

    /// True when every coefficient in the window is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Integer coefficients for exponents `lo..prec`, or `None` if some
    /// coefficient is not an integer.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    /// Integer coefficient of `q^e`, failing when out of range or not integral.
    pub fn int_coeff(&self, e: i64) -> Result<BigInt> {
        let c = self.coeff(e)?;
        if !c.is_integer() {
            return Err(Error::Internal(format!(
                "coefficient of q^{e} is {c}, expected an integer"
            )));
        }
        Ok(c.to_integer())
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let unit = mag.is_one();
            if !unit || e == 0 {
                write!(f, "{mag}")?;
            }
            match e {
                0 => {}
                1 => f.write_str("q")?,
                _ => write!(f, "q^{e}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(q^{})", self.prec)
    }
}

impl Add for &QSeries {
    type Output = QSeries;
    fn add(self, rhs: &QSeries) -> QSeries {
        QSeries::add(self, rhs)
    }
}

impl Sub for &QSeries {
    type Output = QSeries;
    fn sub(self, rhs: &QSeries) -> QSeries {
        QSeries::sub(self, rhs)
    }
}

impl Mul for &QSeries {
    type Output = QSeries;
    fn mul(self, rhs: &QSeries) -> QSeries {
        QSeries::mul(self, rhs)
    }
}

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        QSeries::neg(self)
    }
}
