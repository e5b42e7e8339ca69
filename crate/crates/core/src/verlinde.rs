//! The level-`k` sl2 Verlinde ring on the basis `[0], ..., [k]`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::compositions::Composition;
use crate::error::{Error, Result};
use crate::kostka::restricted_fermionic;
use crate::qexact::decimal;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FusionVector {
    pub level: i64,
    #[serde(serialize_with = "decimal::serialize_vec")]
    pub coefficients: Vec<BigInt>,
}

impl FusionVector {
    pub fn zero(level: i64) -> Self {
        FusionVector { level, coefficients: vec![BigInt::zero(); level as usize + 1] }
    }

    /// The basis element `[a]`.
    pub fn basis(a: i64, level: i64) -> Result<Self> {
        check_label(a, level)?;
        let mut v = Self::zero(level);
        v.coefficients[a as usize] = BigInt::one();
        Ok(v)
    }

    pub fn coefficient(&self, a: i64) -> BigInt {
        self.coefficients.get(a as usize).cloned().unwrap_or_default()
    }

    pub fn multiply(&self, other: &FusionVector) -> Result<FusionVector> {
        if self.level != other.level {
            return Err(Error::LengthMismatch {
                left: self.coefficients.len(),
                right: other.coefficients.len(),
            });
        }
        let mut out = Self::zero(self.level);
        for (a, x) in self.coefficients.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (b, y) in other.coefficients.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let xy = x * y;
                for c in fusion_channels(a as i64, b as i64, self.level) {
                    out.coefficients[c as usize] += &xy;
                }
            }
        }
        Ok(out)
    }
}

impl fmt::Display for FusionVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coefficients
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(a, c)| if c.is_one() { format!("[{a}]") } else { format!("{c}[{a}]") })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

fn check_label(a: i64, level: i64) -> Result<()> {
    if level < 1 || a < 0 || a > level {
        return Err(Error::InvalidLabel(format!("[{a}] is not a basis element at level {level}")));
    }
    Ok(())
}

fn fusion_channels(a: i64, b: i64, k: i64) -> impl Iterator<Item = i64> {
    let top = (a + b).min(2 * k - a - b);
    ((a - b).abs()..=top).step_by(2)
}

/// `[a] [b] = sum [c]`, `|a-b| <= c <= min(a+b, 2k-a-b)`, `c = a+b mod 2`.
pub fn fuse_basic(a: i64, b: i64, k: i64) -> Result<FusionVector> {
    check_label(a, k)?;
    check_label(b, k)?;
    let mut v = FusionVector::zero(k);
    for c in fusion_channels(a, b, k) {
        v.coefficients[c as usize] += 1;
    }
    Ok(v)
}

/// `[1]^{m_1} ... [k]^{m_k}` in the basis. A factor `[k+1]` is zero in the
/// ring; parts beyond `k+1` are rejected.
pub fn structure_constants(m: &Composition, k: i64) -> Result<FusionVector> {
    if k < 1 {
        return Err(Error::InvalidLabel(format!("level {k} must be positive")));
    }
    let top = m.max_part() as i64;
    if top > k + 1 {
        return Err(Error::InvalidLabel(format!("m = {m} has a part above level {k} + 1")));
    }
    if top == k + 1 {
        return Ok(FusionVector::zero(k));
    }
    let mut acc = FusionVector::basis(0, k)?;
    for (i, &count) in m.parts().iter().enumerate() {
        if count == 0 {
            continue;
        }
        let factor = FusionVector::basis(i as i64 + 1, k)?;
        for _ in 0..count {
            acc = acc.multiply(&factor)?;
        }
    }
    Ok(acc)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Q1Entry {
    pub l: i64,
    #[serde(serialize_with = "decimal::serialize")]
    pub kostka_at_one: BigInt,
    #[serde(serialize_with = "decimal::serialize")]
    pub constant: BigInt,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Q1Report {
    pub m: String,
    pub k: i64,
    pub entries: Vec<Q1Entry>,
}

impl Q1Report {
    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }
}

/// Compares `K^{(k)}_{l,m}(1)` with `c_{l,m}` for every `l = 0..=k`.
pub fn q1_consistency(m: &Composition, k: i64) -> Result<Q1Report> {
    let constants = structure_constants(m, k)?;
    let entries = (0..=k)
        .map(|l| {
            let kostka_at_one = restricted_fermionic(l, m, k).eval_at_one();
            let constant = constants.coefficient(l);
            let pass = kostka_at_one == constant;
            Q1Entry { l, kostka_at_one, constant, pass }
        })
        .collect();
    Ok(Q1Report { m: m.to_string(), k, entries })
}
