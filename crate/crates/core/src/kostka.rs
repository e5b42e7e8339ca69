//! Unrestricted and level-restricted sl2 Kostka polynomials, their reversals,
//! and weight characters of fusion products.
//!
//! Inputs outside the valid weight range (wrong parity, `l > |m|`, `l > k`)
//! give the zero polynomial so identity checks can sum over all weights.

use num_bigint::BigInt;

use crate::charge_oracle::kostka_sl2_oracle;
use crate::compositions::{min_form_unchecked, Composition};
use crate::error::{Error, Result};
use crate::qexact::{
    gaussian_binomial, gaussian_binomial_truncated, QExponent, QPolynomial,
    QSeriesTruncated,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RestrictionContext {
    pub k: i64,
    pub l: i64,
}

impl RestrictionContext {
    pub fn new(k: i64, l: i64) -> Result<Self> {
        if k < 1 || l < 0 || l > k {
            return Err(Error::InvalidWeight(format!("need 0 <= l <= k and k >= 1, got l={l}, k={k}")));
        }
        Ok(RestrictionContext { k, l })
    }
}

/// `v_alpha = max(0, alpha - k + l)` for `alpha = 1..k`.
pub fn restriction_vector(ctx: RestrictionContext) -> Vec<i64> {
    (1..=ctx.k).map(|a| (a - ctx.k + ctx.l).max(0)).collect()
}

/// Summation index `s` of the fermionic formula, width `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FermionicIndex {
    pub s: Vec<i64>,
}

/// All `s` with `2 * sum_a a s_a = |m| - l`.
pub fn fermionic_indices(l: i64, m: &Composition, k: i64) -> Vec<FermionicIndex> {
    let twice = m.weighted_size() - l;
    let mut out = Vec::new();
    if k < 1 || twice < 0 || twice % 2 != 0 {
        return out;
    }
    let mut s = vec![0i64; k as usize];
    fill_index(&mut s, k as usize, twice / 2, &mut out);
    out
}

fn fill_index(s: &mut Vec<i64>, alpha: usize, remaining: i64, out: &mut Vec<FermionicIndex>) {
    if alpha == 1 {
        s[0] = remaining;
        out.push(FermionicIndex { s: s.clone() });
        s[0] = 0;
        return;
    }
    let a = alpha as i64;
    for x in 0..=remaining / a {
        s[alpha - 1] = x;
        fill_index(s, alpha - 1, remaining - a * x, out);
    }
    s[alpha - 1] = 0;
}

/// Quadratic exponent `sAs + v.s` and binomial tops `A(m - 2s) - v + s`.
struct FermionicTerm {
    exponent: i64,
    tops: Vec<i64>,
}

fn fermionic_term(m: &[i64], v: &[i64], s: &[i64]) -> FermionicTerm {
    let exponent = min_form_unchecked(s, s) + v.iter().zip(s).map(|(a, b)| a * b).sum::<i64>();
    let diff: Vec<i64> = m.iter().zip(s).map(|(mi, si)| mi - 2 * si).collect();
    let tops = (0..s.len())
        .map(|a| {
            let row: i64 = diff.iter().enumerate().map(|(b, d)| (a.min(b) as i64 + 1) * d).sum();
            row - v[a] + s[a]
        })
        .collect();
    FermionicTerm { exponent, tops }
}

/// Pads `m` to width `k`, or `None` when `m` has a nonzero part beyond `k`.
fn padded_parts(m: &Composition, k: i64) -> Option<Vec<i64>> {
    m.padded(k as usize).ok().map(|p| p.as_i64())
}

/// `K^{(k)}_{l,m}(q)` by the fermionic formula.
pub fn restricted_fermionic(l: i64, m: &Composition, k: i64) -> QPolynomial {
    let Ok(ctx) = RestrictionContext::new(k, l) else {
        return QPolynomial::zero();
    };
    let Some(parts) = padded_parts(m, k) else {
        return QPolynomial::zero();
    };
    let v = restriction_vector(ctx);
    let mut total = QPolynomial::zero();
    for index in fermionic_indices(l, m, k) {
        let term = fermionic_term(&parts, &v, &index.s);
        if term.tops.iter().zip(&index.s).any(|(t, s)| t < s) {
            continue;
        }
        let mut product = QPolynomial::q_pow(term.exponent);
        for (&top, &bottom) in term.tops.iter().zip(&index.s) {
            product = &product * &gaussian_binomial(top, bottom);
        }
        total += product;
    }
    total
}

/// Smallest level at which `K^{(k)}_{l,m}` is expected to equal `K_{l,m}`.
fn stable_level(l: i64, m: &Composition) -> i64 {
    m.weighted_size().max(l).max(m.width() as i64).max(1)
}

/// `K_{l,m}(q)` as the large-level limit of the fermionic formula, checked at
/// two consecutive levels.
pub fn unrestricted(l: i64, m: &Composition) -> Result<QPolynomial> {
    if l < 0 || l > m.weighted_size() || (m.weighted_size() - l) % 2 != 0 {
        return Ok(QPolynomial::zero());
    }
    let k = stable_level(l, m);
    let low = restricted_fermionic(l, m, k);
    let high = restricted_fermionic(l, m, k + 1);
    if low != high {
        return Err(Error::Internal(format!(
            "fermionic formula did not stabilize for l={l}, m={m}: {low} vs {high}"
        )));
    }
    Ok(low)
}

/// `K_{l,m}` for every `l = 0..=|m|`, indexed by `l`.
pub fn unrestricted_table(m: &Composition) -> Result<Vec<QPolynomial>> {
    (0..=m.weighted_size()).map(|l| unrestricted(l, m)).collect()
}

/// Where the unrestricted polynomials in the alternating sum come from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum UnrestrictedSource {
    ChargeOracle,
    Fermionic,
}

impl UnrestrictedSource {
    pub fn kostka(self, l: i64, m: &Composition) -> Result<QPolynomial> {
        match self {
            UnrestrictedSource::ChargeOracle => Ok(kostka_sl2_oracle(l, m)),
            UnrestrictedSource::Fermionic => unrestricted(l, m),
        }
    }
}

/// `K^{(k)}_{l,m}` as a signed sum of unrestricted Kostka polynomials.
pub fn restricted_alternating(
    l: i64,
    m: &Composition,
    k: i64,
    source: UnrestrictedSource,
) -> Result<QPolynomial> {
    if RestrictionContext::new(k, l).is_err() {
        return Ok(QPolynomial::zero());
    }
    let size = m.weighted_size();
    let mut total = QPolynomial::zero();
    for i in 0i64.. {
        let plus = 2 * (k + 2) * i + l;
        let minus = 2 * (k + 2) * i - l - 2;
        if plus > size && (i == 0 || minus > size) {
            break;
        }
        if plus <= size {
            let kp = source.kostka(plus, m)?;
            total += kp.shift_integer((k + 2) * i * i + (l + 1) * i);
        }
        if i > 0 && minus <= size {
            let km = source.kostka(minus, m)?;
            total -= km.shift_integer((k + 2) * i * i - (l + 1) * i);
        }
    }
    Ok(total)
}

/// `q^{h(m)} K^{(k)}_{l,m}(q^{-1})`.
pub fn reversed_restricted(l: i64, m: &Composition, k: i64) -> Result<QPolynomial> {
    let reversed = restricted_fermionic(l, m, k)
        .substitute_inverse()
        .shift_integer(m.top_degree_h());
    if reversed.min_exponent().is_some_and(|e| e < QExponent::ZERO) {
        return Err(Error::Internal(format!(
            "reversed Kostka polynomial for l={l}, m={m}, k={k} has a negative exponent"
        )));
    }
    Ok(reversed)
}

/// The reversed polynomial through `q^order`, assembled term by term so that
/// only the low-degree end of each Gaussian binomial is ever expanded.
///
/// Uses `[P; s](q^{-1}) = q^{-s(P-s)} [P; s](q)` on each fermionic term.
pub fn reversed_restricted_truncated(
    l: i64,
    m: &Composition,
    k: i64,
    order: usize,
) -> Result<QSeriesTruncated> {
    let mut total = QSeriesTruncated::zero(order);
    let Ok(ctx) = RestrictionContext::new(k, l) else {
        return Ok(total);
    };
    let Some(parts) = padded_parts(m, k) else {
        return Ok(total);
    };
    let v = restriction_vector(ctx);
    let h = m.top_degree_h();
    for index in fermionic_indices(l, m, k) {
        let term = fermionic_term(&parts, &v, &index.s);
        if term.tops.iter().zip(&index.s).any(|(t, s)| t < s) {
            continue;
        }
        let spread: i64 = term.tops.iter().zip(&index.s).map(|(t, s)| s * (t - s)).sum();
        let shift = h - term.exponent - spread;
        if shift < 0 {
            return Err(Error::Internal(format!(
                "reversed term for l={l}, m={m}, k={k}, s={:?} has exponent {shift}",
                index.s
            )));
        }
        if shift as usize > order {
            continue;
        }
        let room = order - shift as usize;
        let mut product = QSeriesTruncated::one(room);
        for (&top, &bottom) in term.tops.iter().zip(&index.s) {
            product = &product * &gaussian_binomial_truncated(top, bottom, room);
        }
        for (n, c) in product.coefficients().iter().enumerate() {
            total.add_to_coefficient(n + shift as usize, c);
        }
    }
    Ok(total)
}

/// Graded character of the weight-`alpha` subspace of the fusion product,
/// `sum_{l >= |alpha|, l = alpha mod 2} K_{l,m}`.
pub fn fusion_weight_char(m: &Composition, alpha: i64) -> Result<QPolynomial> {
    let table = unrestricted_table(m)?;
    Ok(fusion_weight_char_from_table(&table, alpha))
}

/// Same as [`fusion_weight_char`], reading from a precomputed
/// [`unrestricted_table`].
pub fn fusion_weight_char_from_table(table: &[QPolynomial], alpha: i64) -> QPolynomial {
    let start = alpha.unsigned_abs() as usize;
    table.iter().skip(start).step_by(2).cloned().sum()
}

/// Closed form of the weight-`l` character of the fusion product
/// `(1^N (j+1))`.
pub fn fusion_char_hook(n: i64, j: i64, l: i64) -> QPolynomial {
    if n < 0 || j < 0 || (n + j + 1 - l).rem_euclid(2) != 0 {
        return QPolynomial::zero();
    }
    let mut total = QPolynomial::zero();
    for s in 0..=j {
        total += gaussian_binomial(n + 1, (n + j + 1 - l - 2 * s) / 2);
    }
    for s in 0..j {
        total -= gaussian_binomial(n, (n + j - 1 - l - 2 * s) / 2);
    }
    total
}

/// Reversed weight-`(2s+i)` character of `(1^{2n+i})`:
/// `q^{s(s+i)} [2n+i; n-s]`.
pub fn reversed_char_1n(n: i64, i: i64, s: i64) -> QPolynomial {
    gaussian_binomial(2 * n + i, n - s).shift_integer(s * (s + i))
}

/// `K^{(k)}_{l,m}(1)`.
pub fn value_at_one(p: &QPolynomial) -> BigInt {
    p.eval_at_one()
}

/// Maximum `q`-degree over all weight slices of the fusion product.
pub fn fusion_top_degree(m: &Composition) -> Result<Option<i64>> {
    let table = unrestricted_table(m)?;
    let size = m.weighted_size();
    let mut best: Option<i64> = None;
    for alpha in -size..=size {
        let slice = fusion_weight_char_from_table(&table, alpha);
        if let Some(e) = slice.max_exponent() {
            let e = e.to_integer().expect("Kostka polynomials live on the integer grid");
            best = Some(best.map_or(e, |b| b.max(e)));
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(parts: &[u32]) -> Composition {
        Composition::new(parts.to_vec()).unwrap()
    }

    fn poly(c: &[i64]) -> QPolynomial {
        QPolynomial::from_coefficients(c.iter().copied())
    }

    #[test]
    fn restriction_vectors() {
        let v = |k, l| restriction_vector(RestrictionContext::new(k, l).unwrap());
        assert_eq!(v(2, 0), vec![0, 0]);
        assert_eq!(v(2, 1), vec![0, 1]);
        assert_eq!(v(3, 3), vec![1, 2, 3]);
    }

    #[test]
    fn fermionic_examples() {
        let q24 = QPolynomial::q_pow(2) + QPolynomial::q_pow(4);
        assert_eq!(restricted_fermionic(0, &m(&[4, 0]), 2), q24);
        assert_eq!(restricted_fermionic(0, &m(&[4]), 2), q24);
        assert_eq!(restricted_fermionic(0, &m(&[2, 1]), 2), QPolynomial::q_pow(2));
        for l in 1..=4u32 {
            let single = Composition::single(l as usize);
            for k in l as i64..=5 {
                assert_eq!(restricted_fermionic(l as i64, &single, k), QPolynomial::one());
            }
        }
        assert!(restricted_fermionic(1, &m(&[2]), 2).is_zero());
        assert!(restricted_fermionic(0, &m(&[0, 0, 1]), 2).is_zero());
    }

    #[test]
    fn unrestricted_examples() {
        assert_eq!(
            unrestricted(0, &m(&[4])).unwrap(),
            QPolynomial::q_pow(2) + QPolynomial::q_pow(4)
        );
        assert_eq!(unrestricted(4, &m(&[2, 1])).unwrap(), QPolynomial::one());
        assert_eq!(unrestricted(0, &m(&[2, 1])).unwrap(), QPolynomial::q_pow(2));
        assert!(unrestricted(5, &m(&[2, 1])).unwrap().is_zero());
    }

    #[test]
    fn alternating_examples() {
        for source in [UnrestrictedSource::ChargeOracle, UnrestrictedSource::Fermionic] {
            assert_eq!(restricted_alternating(0, &m(&[2]), 1, source).unwrap(), QPolynomial::q_pow(1));
            assert!(restricted_alternating(0, &m(&[0, 1]), 1, source).unwrap().is_zero());
            assert!(restricted_alternating(1, &m(&[0, 1]), 1, source).unwrap().is_zero());
            assert_eq!(
                restricted_alternating(0, &m(&[4]), 2, source).unwrap(),
                QPolynomial::q_pow(2) + QPolynomial::q_pow(4)
            );
        }
    }

    #[test]
    fn reversed_examples() {
        assert_eq!(reversed_restricted(0, &m(&[4]), 2).unwrap(), poly(&[1, 0, 1]));
        assert_eq!(restricted_fermionic(0, &m(&[6]), 2), poly(&[0, 0, 0, 0, 0, 1, 1, 1, 0, 1]));
        assert_eq!(reversed_restricted(0, &m(&[6]), 2).unwrap(), poly(&[1, 0, 1, 1, 1]));
        assert_eq!(reversed_restricted(2, &m(&[2]), 2).unwrap(), QPolynomial::q_pow(1));
    }

    #[test]
    fn truncated_reversal_matches_exact() {
        for (l, parts, k) in [(0, vec![6], 2), (1, vec![5, 1], 2), (0, vec![7, 0, 1], 3), (2, vec![4, 1], 3)] {
            let comp = m(&parts);
            let exact = reversed_restricted(l, &comp, k).unwrap();
            for order in [0usize, 3, 8, 20] {
                let truncated = reversed_restricted_truncated(l, &comp, k, order).unwrap();
                assert_eq!(truncated, QSeriesTruncated::from_polynomial(&exact, order).unwrap());
            }
        }
    }

    #[test]
    fn fusion_weight_examples() {
        assert_eq!(fusion_weight_char(&m(&[2]), 0).unwrap(), poly(&[1, 1]));
        assert_eq!(fusion_weight_char(&m(&[2]), 2).unwrap(), QPolynomial::one());
        assert_eq!(fusion_weight_char(&m(&[2]), -2).unwrap(), QPolynomial::one());
        assert!(fusion_weight_char(&m(&[2]), 4).unwrap().is_zero());
    }

    #[test]
    fn hook_examples() {
        assert_eq!(fusion_char_hook(2, 1, 0), poly(&[1, 1, 2]));
        assert_eq!(fusion_char_hook(2, 1, 2), poly(&[1, 1, 1]));
        assert_eq!(fusion_char_hook(3, 0, 2), gaussian_binomial(4, 1));
        assert!(fusion_char_hook(2, 1, 1).is_zero());
    }

    #[test]
    fn reversed_char_examples() {
        assert_eq!(reversed_char_1n(1, 0, 0), poly(&[1, 1]));
        assert_eq!(reversed_char_1n(1, 0, 1), QPolynomial::q_pow(1));
        assert!(reversed_char_1n(1, 0, 2).is_zero());
    }

}
