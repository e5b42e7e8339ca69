//! Fusion multiplicity vectors `m = (m_1, ..., m_k)` and their statistics.
//!
//! `m_i` counts the copies of the `(i+1)`-dimensional irreducible in a fusion
//! product. Sizes are always weighted: `|m| = sum_i i * m_i`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Composition {
    parts: Vec<u32>,
}

impl Composition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::Parse("a composition needs width >= 1".into()));
        }
        Ok(Composition { parts })
    }

    pub fn zeros(width: usize) -> Self {
        Composition { parts: vec![0; width.max(1)] }
    }

    /// The composition of a single `pi_n` (`m_n = 1`).
    pub fn single(n: usize) -> Self {
        let mut c = Self::zeros(n);
        if n > 0 {
            c.parts[n - 1] = 1;
        }
        c
    }

    /// `(1^ones c)`: `ones` copies of `pi_1` and one `pi_c`.
    pub fn hook(ones: u32, c: usize) -> Self {
        let mut m = Self::zeros(c.max(1));
        m.parts[0] += ones;
        if c > 0 {
            m.parts[c - 1] += 1;
        }
        m
    }

    pub fn width(&self) -> usize {
        self.parts.len()
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// `m_alpha` with 1-based index; zero beyond the width.
    pub fn get(&self, alpha: usize) -> i64 {
        if alpha == 0 {
            return 0;
        }
        self.parts.get(alpha - 1).copied().unwrap_or(0) as i64
    }

    /// Index of the largest nonzero part, 0 for the zero composition.
    pub fn max_part(&self) -> usize {
        self.parts.iter().rposition(|&p| p != 0).map_or(0, |i| i + 1)
    }

    /// Number of fused factors, `sum_i m_i`.
    pub fn factor_count(&self) -> i64 {
        self.parts.iter().map(|&p| p as i64).sum()
    }

    /// Zero-pads (or trims trailing zeros) to `width`.
    pub fn padded(&self, width: usize) -> Result<Self> {
        if self.max_part() > width {
            return Err(Error::InvalidWeight(format!(
                "composition {self} has a part beyond width {width}"
            )));
        }
        let mut parts = self.parts.clone();
        parts.resize(width.max(1), 0);
        Ok(Composition { parts })
    }

    pub fn weighted_size(&self) -> i64 {
        self.parts
            .iter()
            .enumerate()
            .map(|(i, &p)| (i as i64 + 1) * p as i64)
            .sum()
    }

    /// `sum_{a,b} min(a,b) m_a n_b`.
    pub fn min_form(&self, other: &Composition) -> Result<i64> {
        if self.width() != other.width() {
            return Err(Error::LengthMismatch { left: self.width(), right: other.width() });
        }
        Ok(min_form_unchecked(&self.as_i64(), &other.as_i64()))
    }

    pub fn as_i64(&self) -> Vec<i64> {
        self.parts.iter().map(|&p| p as i64).collect()
    }

    /// `||m|| = (mAm - |m|) / 2`.
    pub fn norm_ss(&self) -> i64 {
        let twice = self_form(self) - self.weighted_size();
        assert!(twice % 2 == 0, "mAm - |m| is always even");
        twice / 2
    }

    /// Number of `alpha` with `m_alpha + ... + m_k` odd.
    pub fn parity_count(&self) -> i64 {
        let mut suffix = 0i64;
        let mut count = 0;
        for &p in self.parts.iter().rev() {
            suffix += p as i64;
            if suffix % 2 != 0 {
                count += 1;
            }
        }
        count
    }

    /// Top `q`-degree of the fusion product, `(mAm - p(m)) / 4`.
    pub fn top_degree_h(&self) -> i64 {
        let numerator = self_form(self) - self.parity_count();
        assert!(numerator % 4 == 0, "mAm = p(m) mod 4 fails for {self}");
        numerator / 4
    }

    /// Two-row shape and content describing `K_{l,m}` in partition notation.
    pub fn bridge_to_partition(&self, l: i64) -> Result<ShapeContent> {
        let size = self.weighted_size();
        if l < 0 || l > size || (size - l) % 2 != 0 {
            return Err(Error::InvalidWeight(format!("weight {l} is not valid for m = {self}")));
        }
        let shape = (((size + l) / 2) as usize, ((size - l) / 2) as usize);
        let mut content = Vec::new();
        for (i, &p) in self.parts.iter().enumerate().rev() {
            content.extend(std::iter::repeat_n(i as u32 + 1, p as usize));
        }
        Ok(ShapeContent { shape, content })
    }
}

/// Every composition of width exactly `width` with `0 < |m| <= max_size`,
/// in lexicographic order of parts.
pub fn compositions_up_to(max_size: i64, width: usize) -> Vec<Composition> {
    fn go(index: usize, budget: i64, parts: &mut Vec<u32>, out: &mut Vec<Composition>) {
        if index == parts.len() {
            if parts.iter().any(|&p| p != 0) {
                out.push(Composition { parts: parts.clone() });
            }
            return;
        }
        let weight = index as i64 + 1;
        for x in 0..=budget / weight {
            parts[index] = x as u32;
            go(index + 1, budget - weight * x, parts, out);
        }
        parts[index] = 0;
    }
    let mut out = Vec::new();
    if width > 0 {
        go(0, max_size, &mut vec![0; width], &mut out);
    }
    out
}

fn self_form(m: &Composition) -> i64 {
    let v = m.as_i64();
    min_form_unchecked(&v, &v)
}

pub(crate) fn min_form_unchecked(a: &[i64], b: &[i64]) -> i64 {
    let mut total = 0;
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            total += (i.min(j) as i64 + 1) * x * y;
        }
    }
    total
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let joined: Vec<String> = self.parts.iter().map(u32::to_string).collect();
        write!(f, "{}", joined.join(","))
    }
}

/// Parses either a multiplicity vector (`"2,1"` is `m_1 = 2, m_2 = 1`) or, when
/// any token contains `^`, partition notation (`"1^4,3"` is four `pi_1` and
/// one `pi_3`).
impl FromStr for Composition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty composition".into()));
        }
        let tokens: Vec<&str> = s.split(',').map(str::trim).collect();
        let number = |t: &str| -> Result<u32> {
            t.parse::<u32>().map_err(|_| Error::Parse(format!("bad composition token {t:?}")))
        };
        if !s.contains('^') {
            let parts = tokens.iter().map(|t| number(t)).collect::<Result<Vec<_>>>()?;
            return Composition::new(parts);
        }
        Composition::from_partition_notation(s)
    }
}

impl Composition {
    /// Parses a list of fusion factor sizes, `"1,1,3"` or `"1^2,3"`, into
    /// multiplicities.
    pub fn from_partition_notation(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty partition".into()));
        }
        let number = |t: &str| -> Result<u32> {
            t.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad partition token {t:?}")))
        };
        let mut parts: Vec<u32> = Vec::new();
        for t in s.split(',') {
            let (size, count) = match t.split_once('^') {
                Some((a, b)) => (number(a)?, number(b)?),
                None => (number(t)?, 1),
            };
            if size == 0 {
                return Err(Error::Parse("part sizes in partition notation must be positive".into()));
            }
            if parts.len() < size as usize {
                parts.resize(size as usize, 0);
            }
            parts[size as usize - 1] += count;
        }
        Composition::new(parts)
    }
}

/// Two-row shape `(lambda_1, lambda_2)` and a partition content.
///
/// `content[i]` is the letter filled in the `i`-th cell of the content
/// partition, so `content = [2, 1, 1]` means letter 1 twice, letters 2 and 3
/// once.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ShapeContent {
    pub shape: (usize, usize),
    pub content: Vec<u32>,
}

impl ShapeContent {
    pub fn new(shape: (usize, usize), content: Vec<u32>) -> Result<Self> {
        if shape.0 < shape.1 {
            return Err(Error::InvalidWeight(format!("shape {shape:?} is not a partition")));
        }
        if content.windows(2).any(|w| w[0] < w[1]) || content.contains(&0) {
            return Err(Error::InvalidWeight(format!("content {content:?} is not a partition")));
        }
        Ok(ShapeContent { shape, content })
    }

    pub fn size(&self) -> usize {
        self.shape.0 + self.shape.1
    }

    pub fn content_size(&self) -> usize {
        self.content.iter().map(|&c| c as usize).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(parts: &[u32]) -> Composition {
        Composition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn partition_notation() {
        let m = Composition::from_partition_notation("1,1,1,1").unwrap();
        assert_eq!(m.parts(), &[4]);
        assert_eq!(Composition::from_partition_notation("1^2, 3").unwrap().parts(), &[2, 0, 1]);
        assert_eq!("1^2,3".parse::<Composition>().unwrap().parts(), &[2, 0, 1]);
        assert!(Composition::from_partition_notation("1,x").is_err());
        assert!(Composition::from_partition_notation("0").is_err());
    }

    #[test]
    fn weighted_size_examples() {
        assert_eq!(m(&[2, 1]).weighted_size(), 4);
        assert_eq!(m(&[0, 0, 0]).weighted_size(), 0);
        assert_eq!(m(&[7]).weighted_size(), 7);
    }

    #[test]
    fn min_form_examples() {
        assert_eq!(m(&[2, 0]).min_form(&m(&[2, 0])).unwrap(), 4);
        assert_eq!(m(&[2, 1]).min_form(&m(&[2, 1])).unwrap(), 10);
        assert_eq!(m(&[1]).min_form(&m(&[0])).unwrap(), 0);
        assert!(matches!(m(&[1]).min_form(&m(&[1, 0])), Err(Error::LengthMismatch { .. })));
    }

    #[test]
    fn norm_and_parity_and_h() {
        assert_eq!(m(&[2, 1]).norm_ss(), 3);
        assert_eq!(m(&[2]).norm_ss(), 1);
        assert_eq!(m(&[0]).norm_ss(), 0);

        assert_eq!(m(&[2, 0]).parity_count(), 0);
        assert_eq!(m(&[1, 1]).parity_count(), 1);
        assert_eq!(m(&[0, 0, 0]).parity_count(), 0);

        assert_eq!(m(&[2]).top_degree_h(), 1);
        assert_eq!(m(&[4, 0]).top_degree_h(), 4);
        for n in 0..20u32 {
            let expect = (n as i64 * n as i64 - (n as i64 % 2)) / 4;
            assert_eq!(m(&[n]).top_degree_h(), expect);
        }
    }

    #[test]
    fn bridge_examples() {
        let sc = m(&[2, 1]).bridge_to_partition(0).unwrap();
        assert_eq!(sc.shape, (2, 2));
        assert_eq!(sc.content, vec![2, 1, 1]);
        let sc = m(&[2]).bridge_to_partition(2).unwrap();
        assert_eq!(sc.shape, (2, 0));
        assert_eq!(sc.content, vec![1, 1]);
        assert!(matches!(m(&[2]).bridge_to_partition(1), Err(Error::InvalidWeight(_))));
        assert!(m(&[2]).bridge_to_partition(4).is_err());
    }

    #[test]
    fn parsing() {
        assert_eq!("2,1".parse::<Composition>().unwrap(), m(&[2, 1]));
        assert_eq!("1^4,3".parse::<Composition>().unwrap(), m(&[4, 0, 1]));
        assert_eq!("1^3,1".parse::<Composition>().unwrap(), m(&[4]));
        assert_eq!("2^2".parse::<Composition>().unwrap(), m(&[0, 2]));
        assert!("2,x".parse::<Composition>().is_err());
        assert!("".parse::<Composition>().is_err());
        assert!("0^2".parse::<Composition>().is_err());
        assert_eq!(Composition::hook(3, 2), m(&[3, 1]));
        assert_eq!(Composition::hook(3, 1), m(&[4]));
    }

    #[test]
    fn enumeration() {
        let all = compositions_up_to(3, 2);
        assert_eq!(all, vec![m(&[0, 1]), m(&[1, 0]), m(&[1, 1]), m(&[2, 0]), m(&[3, 0])]);
        assert!(compositions_up_to(0, 3).is_empty());
    }

    #[test]
    fn padding() {
        assert_eq!(m(&[2, 1]).padded(4).unwrap(), m(&[2, 1, 0, 0]));
        assert_eq!(m(&[2, 1, 0]).padded(2).unwrap(), m(&[2, 1]));
        assert!(m(&[0, 1]).padded(1).is_err());
    }
}
