//! Exact arithmetic for Laurent polynomials and truncated power series in `q`.
//!
//! Exponents live on a fixed quarter-integer grid ([`QExponent`]), which is
//! fine enough for every `q^{N^2/4}`-style prefactor this crate needs.
//! Coefficients are arbitrary-precision integers.
//!
//! Truncated series ([`QSeriesTruncated`]) carry a separate rational offset, so
//! that conformal weights with large denominators never touch the grid.

use std::collections::BTreeMap;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = Ratio<i64>;

/// An exponent of `q`, stored in quarter units.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QExponent(i64);

impl QExponent {
    pub const DENOMINATOR: i64 = 4;
    pub const ZERO: QExponent = QExponent(0);

    pub const fn from_quarters(quarters: i64) -> Self {
        QExponent(quarters)
    }

    pub const fn from_integer(n: i64) -> Self {
        QExponent(n * Self::DENOMINATOR)
    }

    /// `None` if the rational does not lie on the quarter grid.
    pub fn from_rational(r: Rational) -> Option<Self> {
        let scaled = r * Rational::from_integer(Self::DENOMINATOR);
        scaled.is_integer().then(|| QExponent(scaled.to_integer()))
    }

    pub const fn quarters(self) -> i64 {
        self.0
    }

    pub const fn is_integral(self) -> bool {
        self.0 % Self::DENOMINATOR == 0
    }

    pub fn to_integer(self) -> Option<i64> {
        self.is_integral().then_some(self.0 / Self::DENOMINATOR)
    }

    pub fn to_rational(self) -> Rational {
        Rational::new(self.0, Self::DENOMINATOR)
    }
}

impl Add for QExponent {
    type Output = QExponent;
    fn add(self, rhs: QExponent) -> QExponent {
        QExponent(self.0 + rhs.0)
    }
}

impl Sub for QExponent {
    type Output = QExponent;
    fn sub(self, rhs: QExponent) -> QExponent {
        QExponent(self.0 - rhs.0)
    }
}

impl Neg for QExponent {
    type Output = QExponent;
    fn neg(self) -> QExponent {
        QExponent(-self.0)
    }
}

impl fmt::Display for QExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.to_rational();
        if r.is_integer() {
            write!(f, "{}", r.to_integer())
        } else {
            write!(f, "{}/{}", r.numer(), r.denom())
        }
    }
}

/// A finite Laurent polynomial in `q` with exponents on the quarter grid.
///
/// Zero coefficients are never stored, so structural equality is polynomial
/// equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct QPolynomial {
    terms: BTreeMap<QExponent, BigInt>,
}

impl QPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(QExponent::ZERO, 1)
    }

    pub fn monomial(exponent: QExponent, coefficient: impl Into<BigInt>) -> Self {
        let mut p = Self::zero();
        p.add_term(exponent, coefficient.into());
        p
    }

    /// `q^n` for an integer `n`.
    pub fn q_pow(n: i64) -> Self {
        Self::monomial(QExponent::from_integer(n), 1)
    }

    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (QExponent, BigInt)>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// Builds `c_0 + c_1 q + c_2 q^2 + ...`.
    pub fn from_coefficients<I, T>(coefficients: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        Self::from_terms(
            coefficients
                .into_iter()
                .enumerate()
                .map(|(i, c)| (QExponent::from_integer(i as i64), c.into())),
        )
    }

    fn add_term(&mut self, exponent: QExponent, coefficient: BigInt) {
        if coefficient.is_zero() {
            return;
        }
        let entry = self.terms.entry(exponent).or_default();
        *entry += coefficient;
        if entry.is_zero() {
            self.terms.remove(&exponent);
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (QExponent, &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coefficient(&self, exponent: QExponent) -> BigInt {
        self.terms.get(&exponent).cloned().unwrap_or_default()
    }

    /// Coefficient of `q^n` for an integer `n`.
    pub fn coefficient_at(&self, n: i64) -> BigInt {
        self.coefficient(QExponent::from_integer(n))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_exponent(&self) -> Option<QExponent> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<QExponent> {
        self.terms.keys().next_back().copied()
    }

    pub fn is_integral_grid(&self) -> bool {
        self.terms.keys().all(|e| e.is_integral())
    }

    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// Multiplies by `q^e`.
    pub fn shift(&self, e: QExponent) -> Self {
        QPolynomial {
            terms: self.terms.iter().map(|(x, c)| (*x + e, c.clone())).collect(),
        }
    }

    pub fn shift_integer(&self, n: i64) -> Self {
        self.shift(QExponent::from_integer(n))
    }

    /// `p(q^{-1})`.
    pub fn substitute_inverse(&self) -> Self {
        QPolynomial {
            terms: self.terms.iter().map(|(x, c)| (-*x, c.clone())).collect(),
        }
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn scale(&self, factor: &BigInt) -> Self {
        if factor.is_zero() {
            return Self::zero();
        }
        QPolynomial {
            terms: self.terms.iter().map(|(x, c)| (*x, c * factor)).collect(),
        }
    }

    /// Dense coefficient vector `[c_0, ..., c_deg]` when every exponent is a
    /// nonnegative integer.
    pub fn dense_coefficients(&self) -> Option<Vec<BigInt>> {
        if !self.is_integral_grid() || self.min_exponent().is_some_and(|e| e.quarters() < 0) {
            return None;
        }
        let Some(top) = self.max_exponent() else {
            return Some(Vec::new());
        };
        let mut dense = vec![BigInt::zero(); (top.quarters() / QExponent::DENOMINATOR) as usize + 1];
        for (e, c) in &self.terms {
            dense[(e.quarters() / QExponent::DENOMINATOR) as usize] = c.clone();
        }
        Some(dense)
    }

    fn integral_span(&self) -> Option<(i64, usize)> {
        let lo = self.min_exponent()?.to_integer()?;
        let hi = self.max_exponent()?.to_integer()?;
        self.is_integral_grid().then_some((lo, (hi - lo) as usize + 1))
    }

    fn mul_ref(&self, rhs: &QPolynomial) -> QPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return QPolynomial::zero();
        }
        // Dense convolution when both factors are reasonably full integer-grid
        // polynomials; sparse accumulation otherwise.
        if let (Some((lo_a, span_a)), Some((lo_b, span_b))) = (self.integral_span(), rhs.integral_span()) {
            if span_a * span_b <= 4 * self.len() * rhs.len() {
                let mut a = vec![BigInt::zero(); span_a];
                for (e, c) in &self.terms {
                    a[(e.quarters() / 4 - lo_a) as usize] = c.clone();
                }
                let mut out = vec![BigInt::zero(); span_a + span_b - 1];
                for (e, c) in &rhs.terms {
                    let j = (e.quarters() / 4 - lo_b) as usize;
                    for (i, x) in a.iter().enumerate() {
                        if !x.is_zero() {
                            out[i + j] += x * c;
                        }
                    }
                }
                return QPolynomial::from_terms(
                    out.into_iter()
                        .enumerate()
                        .map(|(i, c)| (QExponent::from_integer(lo_a + lo_b + i as i64), c)),
                );
            }
        }
        let mut out = QPolynomial::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(*ea + *eb, ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let magnitude = c.abs();
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let unit = magnitude.is_one();
            if *e == QExponent::ZERO {
                write!(f, "{magnitude}")?;
                continue;
            }
            if !unit {
                write!(f, "{magnitude}*")?;
            }
            if *e == QExponent::from_integer(1) {
                write!(f, "q")?;
            } else if e.is_integral() {
                write!(f, "q^{e}")?;
            } else {
                write!(f, "q^({e})")?;
            }
        }
        Ok(())
    }
}

impl Add<&QPolynomial> for &QPolynomial {
    type Output = QPolynomial;
    fn add(self, rhs: &QPolynomial) -> QPolynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for QPolynomial {
    type Output = QPolynomial;
    fn add(mut self, rhs: QPolynomial) -> QPolynomial {
        self += &rhs;
        self
    }
}

impl AddAssign<&QPolynomial> for QPolynomial {
    fn add_assign(&mut self, rhs: &QPolynomial) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl AddAssign for QPolynomial {
    fn add_assign(&mut self, rhs: QPolynomial) {
        for (e, c) in rhs.terms {
            self.add_term(e, c);
        }
    }
}

impl Sub<&QPolynomial> for &QPolynomial {
    type Output = QPolynomial;
    fn sub(self, rhs: &QPolynomial) -> QPolynomial {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for QPolynomial {
    type Output = QPolynomial;
    fn sub(mut self, rhs: QPolynomial) -> QPolynomial {
        self -= &rhs;
        self
    }
}

impl SubAssign<&QPolynomial> for QPolynomial {
    fn sub_assign(&mut self, rhs: &QPolynomial) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, -c);
        }
    }
}

impl SubAssign for QPolynomial {
    fn sub_assign(&mut self, rhs: QPolynomial) {
        *self -= &rhs;
    }
}

impl Neg for QPolynomial {
    type Output = QPolynomial;
    fn neg(self) -> QPolynomial {
        QPolynomial {
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl Neg for &QPolynomial {
    type Output = QPolynomial;
    fn neg(self) -> QPolynomial {
        -self.clone()
    }
}

impl Mul<&QPolynomial> for &QPolynomial {
    type Output = QPolynomial;
    fn mul(self, rhs: &QPolynomial) -> QPolynomial {
        self.mul_ref(rhs)
    }
}

impl Mul for QPolynomial {
    type Output = QPolynomial;
    fn mul(self, rhs: QPolynomial) -> QPolynomial {
        self.mul_ref(&rhs)
    }
}

impl Sum for QPolynomial {
    fn sum<I: Iterator<Item = QPolynomial>>(iter: I) -> QPolynomial {
        iter.fold(QPolynomial::zero(), |acc, p| acc + p)
    }
}

impl<'a> Sum<&'a QPolynomial> for QPolynomial {
    fn sum<I: Iterator<Item = &'a QPolynomial>>(iter: I) -> QPolynomial {
        let mut acc = QPolynomial::zero();
        for p in iter {
            acc += p;
        }
        acc
    }
}

#[derive(Serialize, Deserialize)]
struct PolynomialJson {
    den: i64,
    terms: Vec<(i64, String)>,
}

impl Serialize for QPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        PolynomialJson {
            den: QExponent::DENOMINATOR,
            terms: self.terms.iter().map(|(e, c)| (e.quarters(), c.to_string())).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for QPolynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = PolynomialJson::deserialize(deserializer)?;
        if raw.den != QExponent::DENOMINATOR {
            return Err(D::Error::custom(format!("unsupported exponent denominator {}", raw.den)));
        }
        let mut terms = Vec::with_capacity(raw.terms.len());
        for (e, c) in raw.terms {
            let c: BigInt = c.parse().map_err(D::Error::custom)?;
            terms.push((QExponent::from_quarters(e), c));
        }
        Ok(QPolynomial::from_terms(terms))
    }
}

/// A power series `q^offset * (c_0 + c_1 q + ... + c_N q^N + O(q^{N+1}))`.
///
/// The order `N` is the last exponent for which the coefficient is known.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeriesTruncated {
    offset: Rational,
    coefficients: Vec<BigInt>,
}

impl QSeriesTruncated {
    pub fn new(offset: Rational, coefficients: Vec<BigInt>) -> Self {
        assert!(!coefficients.is_empty(), "a truncated series knows at least one coefficient");
        QSeriesTruncated { offset, coefficients }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Rational::zero(), vec![BigInt::zero(); order + 1])
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coefficients[0] = BigInt::one();
        s
    }

    /// Truncates an integer-grid polynomial with nonnegative exponents.
    pub fn from_polynomial(p: &QPolynomial, order: usize) -> Result<Self> {
        let mut s = Self::zero(order);
        for (e, c) in p.terms() {
            let n = e.to_integer().ok_or_else(|| {
                Error::InvalidWeight(format!("exponent {e} is not an integer"))
            })?;
            if n < 0 {
                return Err(Error::InvalidWeight(format!("negative exponent {n} in truncated series")));
            }
            if (n as usize) <= order {
                s.coefficients[n as usize] = c.clone();
            }
        }
        Ok(s)
    }

    pub fn order(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn offset(&self) -> Rational {
        self.offset
    }

    pub fn with_offset(mut self, offset: Rational) -> Self {
        self.offset = offset;
        self
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coefficients
    }

    pub fn coefficient(&self, n: usize) -> &BigInt {
        &self.coefficients[n]
    }

    /// Adds `c` to the coefficient of `q^{offset + n}`.
    pub fn add_to_coefficient(&mut self, n: usize, c: &BigInt) {
        self.coefficients[n] += c;
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(Zero::is_zero)
    }

    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.coefficients.iter().all(|c| !c.is_negative())
    }

    pub fn truncate(&self, order: usize) -> Self {
        let keep = order.min(self.order()) + 1;
        Self::new(self.offset, self.coefficients[..keep].to_vec())
    }

    /// Multiplies by `q^n`, keeping the order.
    pub fn shifted(&self, n: usize) -> Self {
        let mut s = Self::zero(self.order()).with_offset(self.offset);
        for (i, c) in self.coefficients.iter().enumerate() {
            if i + n > self.order() {
                break;
            }
            s.coefficients[i + n] = c.clone();
        }
        s
    }

    /// Multiplies in place by `1 - q^e` (`e >= 1`).
    pub fn mul_one_minus_q_pow(&mut self, e: usize) {
        assert!(e >= 1);
        for j in (e..self.coefficients.len()).rev() {
            let lower = self.coefficients[j - e].clone();
            self.coefficients[j] -= lower;
        }
    }

    /// Divides in place by `1 - q^e` (`e >= 1`).
    pub fn div_one_minus_q_pow(&mut self, e: usize) {
        assert!(e >= 1);
        for j in e..self.coefficients.len() {
            let lower = self.coefficients[j - e].clone();
            self.coefficients[j] += lower;
        }
    }

    /// Difference `self - other` over their common window, provided the two
    /// offsets differ by an integer. The result carries the smaller offset.
    pub fn aligned_difference(&self, other: &QSeriesTruncated) -> Option<QSeriesTruncated> {
        let gap = other.offset - self.offset;
        if !gap.is_integer() {
            return None;
        }
        let gap = gap.to_integer();
        let (base, self_start, other_start) = if gap >= 0 {
            (self.offset, 0i64, gap)
        } else {
            (other.offset, -gap, 0i64)
        };
        let top = (self_start + self.order() as i64).min(other_start + other.order() as i64);
        let at = |s: &QSeriesTruncated, start: i64, n: i64| -> BigInt {
            if n < start {
                BigInt::zero()
            } else {
                s.coefficients[(n - start) as usize].clone()
            }
        };
        let coefficients = (0..=top)
            .map(|n| at(self, self_start, n) - at(other, other_start, n))
            .collect();
        Some(QSeriesTruncated::new(base, coefficients))
    }

    /// True when the two series agree on every coefficient both know.
    pub fn agrees_with(&self, other: &QSeriesTruncated) -> bool {
        self.aligned_difference(other).is_some_and(|d| d.is_zero())
    }

    /// Drops leading zero coefficients into the offset.
    pub fn normalized(&self) -> QSeriesTruncated {
        let lead = self.coefficients.iter().position(|c| !c.is_zero()).unwrap_or(0);
        QSeriesTruncated::new(
            self.offset + Rational::from_integer(lead as i64),
            self.coefficients[lead..].to_vec(),
        )
    }

    fn assert_same_offset(&self, other: &QSeriesTruncated) {
        assert_eq!(
            self.offset, other.offset,
            "series with different offsets cannot be added; align them first"
        );
    }
}

impl Add<&QSeriesTruncated> for &QSeriesTruncated {
    type Output = QSeriesTruncated;
    fn add(self, rhs: &QSeriesTruncated) -> QSeriesTruncated {
        self.assert_same_offset(rhs);
        let order = self.order().min(rhs.order());
        let coefficients = (0..=order).map(|i| &self.coefficients[i] + &rhs.coefficients[i]).collect();
        QSeriesTruncated::new(self.offset, coefficients)
    }
}

impl Sub<&QSeriesTruncated> for &QSeriesTruncated {
    type Output = QSeriesTruncated;
    fn sub(self, rhs: &QSeriesTruncated) -> QSeriesTruncated {
        self.assert_same_offset(rhs);
        let order = self.order().min(rhs.order());
        let coefficients = (0..=order).map(|i| &self.coefficients[i] - &rhs.coefficients[i]).collect();
        QSeriesTruncated::new(self.offset, coefficients)
    }
}

impl Mul<&QSeriesTruncated> for &QSeriesTruncated {
    type Output = QSeriesTruncated;
    fn mul(self, rhs: &QSeriesTruncated) -> QSeriesTruncated {
        let order = self.order().min(rhs.order());
        let mut out = vec![BigInt::zero(); order + 1];
        for (i, a) in self.coefficients.iter().take(order + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coefficients.iter().take(order + 1 - i).enumerate() {
                out[i + j] += a * b;
            }
        }
        QSeriesTruncated::new(self.offset + rhs.offset, out)
    }
}

#[derive(Serialize, Deserialize)]
struct SeriesJson {
    offset: String,
    order: usize,
    coefficients: Vec<String>,
}

impl Serialize for QSeriesTruncated {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        SeriesJson {
            offset: self.offset.to_string(),
            order: self.order(),
            coefficients: self.coefficients.iter().map(|c| c.to_string()).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for QSeriesTruncated {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = SeriesJson::deserialize(deserializer)?;
        let offset: Rational = raw.offset.parse().map_err(|_| D::Error::custom("bad offset"))?;
        let coefficients = raw
            .coefficients
            .iter()
            .map(|c| c.parse::<BigInt>().map_err(D::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        if coefficients.len() != raw.order + 1 {
            return Err(D::Error::custom("order does not match coefficient count"));
        }
        Ok(QSeriesTruncated::new(offset, coefficients))
    }
}

/// `(q)_n = (1-q)(1-q^2)...(1-q^n)`. Returns the empty product `1` for
/// `n <= 0`; reciprocals with `n < 0` are handled by
/// [`reciprocal_pochhammer_series`].
pub fn finite_pochhammer(n: i64) -> QPolynomial {
    let mut dense = vec![BigInt::one()];
    for a in 1..=n.max(0) as usize {
        let mut next = vec![BigInt::zero(); dense.len() + a];
        for (i, c) in dense.iter().enumerate() {
            next[i] += c;
            next[i + a] -= c;
        }
        dense = next;
    }
    QPolynomial::from_coefficients(dense)
}

/// Gaussian binomial `[m; n]`, zero outside `0 <= n <= m`.
pub fn gaussian_binomial(m: i64, n: i64) -> QPolynomial {
    if m < 0 || n < 0 || n > m {
        return QPolynomial::zero();
    }
    let n = n.min(m - n) as usize;
    let rest = (m as usize) - n;
    // Invariant after step i: dense holds [rest + i; i].
    let mut dense = vec![BigInt::one()];
    for i in 1..=n {
        let e = rest + i;
        let mut next = vec![BigInt::zero(); dense.len() + e];
        for (j, c) in dense.iter().enumerate() {
            next[j] += c;
            next[j + e] -= c;
        }
        let degree = i * rest;
        let mut quotient = vec![BigInt::zero(); degree + 1];
        for j in 0..=degree {
            let mut c = next[j].clone();
            if j >= i {
                c += &quotient[j - i];
            }
            quotient[j] = c;
        }
        dense = quotient;
    }
    QPolynomial::from_coefficients(dense)
}

/// `[m; n]` truncated at `order`; zero outside `0 <= n <= m`.
pub fn gaussian_binomial_truncated(m: i64, n: i64, order: usize) -> QSeriesTruncated {
    let mut s = QSeriesTruncated::zero(order);
    if m < 0 || n < 0 || n > m {
        return s;
    }
    s.coefficients[0] = BigInt::one();
    let n = n.min(m - n) as usize;
    let rest = (m as usize) - n;
    for i in 1..=n {
        if rest + i <= order {
            s.mul_one_minus_q_pow(rest + i);
        }
        s.div_one_minus_q_pow(i);
    }
    s
}

/// Componentwise product of Gaussian binomials.
pub fn vector_gaussian_binomial(tops: &[i64], bottoms: &[i64]) -> Result<QPolynomial> {
    if tops.len() != bottoms.len() {
        return Err(Error::LengthMismatch { left: tops.len(), right: bottoms.len() });
    }
    let mut acc = QPolynomial::one();
    for (&m, &n) in tops.iter().zip(bottoms) {
        let factor = gaussian_binomial(m, n);
        if factor.is_zero() {
            return Ok(QPolynomial::zero());
        }
        acc = &acc * &factor;
    }
    Ok(acc)
}

/// `1/(q)_∞` through `q^order`, by counting partitions directly.
pub fn partition_series(order: usize) -> QSeriesTruncated {
    let mut counts = vec![BigInt::zero(); order + 1];
    counts[0] = BigInt::one();
    for part in 1..=order {
        for n in part..=order {
            let prev = counts[n - part].clone();
            counts[n] += prev;
        }
    }
    QSeriesTruncated::new(Rational::zero(), counts)
}

/// `1/(q)_n` through `q^order`, with `1/(q)_n := 0` for `n < 0`.
pub fn reciprocal_pochhammer_series(n: i64, order: usize) -> QSeriesTruncated {
    if n < 0 {
        return QSeriesTruncated::zero(order);
    }
    let mut s = QSeriesTruncated::one(order);
    for a in 1..=n as usize {
        s.div_one_minus_q_pow(a);
    }
    s
}

/// `p(q^{-1})`.
pub fn substitute_inverse(p: &QPolynomial) -> QPolynomial {
    p.substitute_inverse()
}

/// Serde helpers writing big integers as decimal strings.
pub mod decimal {
    use num_bigint::BigInt;
    use serde::ser::SerializeSeq;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn serialize_vec<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for c in v {
            seq.serialize_element(&c.to_string())?;
        }
        seq.end()
    }
}
