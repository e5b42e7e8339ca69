//! Brute-force Kostka–Foulkes polynomials from semistandard tableaux and the
//! Lascoux–Schützenberger charge statistic.
//!
//! Independent of the fermionic and alternating-sum routes; used to check them.

use num_bigint::BigInt;

use crate::compositions::{Composition, ShapeContent};
use crate::error::{Error, Result};
use crate::qexact::QPolynomial;

/// A semistandard tableau of two-row shape, English convention.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tableau {
    pub top: Vec<u32>,
    pub bottom: Vec<u32>,
}

impl Tableau {
    /// Bottom row first, each row left to right.
    pub fn reading_word(&self) -> ReadingWord {
        ReadingWord(self.bottom.iter().chain(&self.top).copied().collect())
    }

    pub fn is_semistandard(&self) -> bool {
        self.top.len() >= self.bottom.len()
            && self.top.windows(2).all(|w| w[0] <= w[1])
            && self.bottom.windows(2).all(|w| w[0] <= w[1])
            && self.bottom.iter().zip(&self.top).all(|(b, t)| b > t)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReadingWord(pub Vec<u32>);

/// Letter multiplicities `[count of 1, count of 2, ...]` of a word.
fn letter_counts(word: &[u32]) -> Vec<usize> {
    let letters = word.iter().copied().max().unwrap_or(0) as usize;
    let mut counts = vec![0usize; letters];
    for &c in word {
        counts[c as usize - 1] += 1;
    }
    counts
}

/// All two-row semistandard tableaux of the given shape and content.
pub fn enumerate_ssyt(sc: &ShapeContent) -> Vec<Tableau> {
    let counts: Vec<usize> = sc.content.iter().map(|&c| c as usize).collect();
    let mut out = Vec::new();
    if sc.content_size() != sc.size() {
        return out;
    }
    let mut bottom_counts = vec![0usize; counts.len()];
    place_letter(&counts, sc.shape, 0, 0, 0, &mut bottom_counts, &mut out);
    out
}

// Letters are placed in increasing order. Letter `i` puts `b` copies in the
// bottom row and the rest in the top row; the bottom copies sit under top
// cells already holding smaller letters, which is exactly column strictness.
fn place_letter(
    counts: &[usize],
    shape: (usize, usize),
    letter: usize,
    top_len: usize,
    bottom_len: usize,
    bottom_counts: &mut Vec<usize>,
    out: &mut Vec<Tableau>,
) {
    if letter == counts.len() {
        if top_len == shape.0 && bottom_len == shape.1 {
            let mut top = Vec::with_capacity(shape.0);
            let mut bottom = Vec::with_capacity(shape.1);
            for (i, (&c, &b)) in counts.iter().zip(bottom_counts.iter()).enumerate() {
                let value = i as u32 + 1;
                top.extend(std::iter::repeat_n(value, c - b));
                bottom.extend(std::iter::repeat_n(value, b));
            }
            out.push(Tableau { top, bottom });
        }
        return;
    }
    let c = counts[letter];
    for b in 0..=c {
        let new_bottom = bottom_len + b;
        let new_top = top_len + c - b;
        if new_bottom > top_len || new_bottom > shape.1 || new_top > shape.0 {
            continue;
        }
        bottom_counts[letter] = b;
        place_letter(counts, shape, letter + 1, new_top, new_bottom, bottom_counts, out);
    }
    bottom_counts[letter] = 0;
}

/// Charge of a word with partition content.
///
/// Standard subwords are extracted repeatedly: take the rightmost `1`, then
/// scan leftwards (cyclically) for a `2`, then a `3`, and so on. The index
/// starts at 0 and increases by one each time the scan wraps around the end
/// of the word; the charge is the sum of indices over all subwords.
pub fn charge(word: &ReadingWord) -> Result<u64> {
    let w = &word.0;
    if w.contains(&0) {
        return Err(Error::InvalidWeight("letters must be positive".into()));
    }
    let counts = letter_counts(w);
    if counts.windows(2).any(|c| c[0] < c[1]) {
        return Err(Error::InvalidWeight(format!("word content {counts:?} is not a partition")));
    }
    let mut used = vec![false; w.len()];
    let mut remaining = w.len();
    let mut total = 0u64;
    while remaining > 0 {
        let letters = (1..=counts.len() as u32)
            .take_while(|&r| w.iter().zip(&used).any(|(&x, &u)| !u && x == r))
            .count() as u32;
        let mut pos = w
            .iter()
            .zip(&used)
            .rposition(|(&x, &u)| !u && x == 1)
            .expect("a partition-content word always has a free 1");
        used[pos] = true;
        remaining -= 1;
        let mut index = 0u64;
        for r in 2..=letters {
            let left = (0..pos).rev().find(|&p| !used[p] && w[p] == r);
            let found = match left {
                Some(p) => p,
                None => {
                    index += 1;
                    (pos + 1..w.len())
                        .rev()
                        .find(|&p| !used[p] && w[p] == r)
                        .expect("letter r present")
                }
            };
            total += index;
            used[found] = true;
            remaining -= 1;
            pos = found;
        }
    }
    Ok(total)
}

/// `K_{lambda, mu}(q) = sum_T q^{charge(T)}`.
pub fn kostka_foulkes(sc: &ShapeContent) -> QPolynomial {
    let mut p = QPolynomial::zero();
    for t in enumerate_ssyt(sc) {
        let c = charge(&t.reading_word()).expect("tableau reading words have partition content");
        p += QPolynomial::monomial(crate::qexact::QExponent::from_integer(c as i64), BigInt::from(1));
    }
    p
}

/// `K_{l,m}(q) = q^{||m||} K_{lambda R(m)}(q^{-1})`, zero on invalid weights.
pub fn kostka_sl2_oracle(l: i64, m: &Composition) -> QPolynomial {
    match m.bridge_to_partition(l) {
        Ok(sc) => kostka_foulkes(&sc).substitute_inverse().shift_integer(m.norm_ss()),
        Err(_) => QPolynomial::zero(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sc(shape: (usize, usize), content: &[u32]) -> ShapeContent {
        ShapeContent::new(shape, content.to_vec()).unwrap()
    }

    #[test]
    fn enumeration_examples() {
        let ts = enumerate_ssyt(&sc((2, 2), &[2, 1, 1]));
        assert_eq!(ts, vec![Tableau { top: vec![1, 1], bottom: vec![2, 3] }]);
        let ts = enumerate_ssyt(&sc((2, 2), &[1, 1, 1, 1]));
        assert_eq!(ts.len(), 2);
        assert!(ts.contains(&Tableau { top: vec![1, 2], bottom: vec![3, 4] }));
        assert!(ts.contains(&Tableau { top: vec![1, 3], bottom: vec![2, 4] }));
        assert!(enumerate_ssyt(&sc((2, 0), &[1, 1, 1])).is_empty());
        for t in enumerate_ssyt(&sc((5, 3), &[3, 2, 2, 1])) {
            assert!(t.is_semistandard());
        }
    }

    #[test]
    fn charge_examples() {
        assert_eq!(charge(&ReadingWord(vec![1, 1, 1])).unwrap(), 0);
        assert_eq!(charge(&ReadingWord(vec![3, 4, 1, 2])).unwrap(), 4);
        assert_eq!(charge(&ReadingWord(vec![2, 4, 1, 3])).unwrap(), 2);
        assert_eq!(charge(&ReadingWord(vec![2, 3, 1, 1])).unwrap(), 1);
        assert!(charge(&ReadingWord(vec![2, 2, 1])).is_err());
    }

    #[test]
    fn kostka_foulkes_examples() {
        assert_eq!(kostka_foulkes(&sc((2, 1), &[2, 1])), QPolynomial::one());
        assert_eq!(
            kostka_foulkes(&sc((2, 2), &[1, 1, 1, 1])),
            QPolynomial::q_pow(2) + QPolynomial::q_pow(4)
        );
        assert_eq!(kostka_foulkes(&sc((2, 2), &[2, 1, 1])), QPolynomial::q_pow(1));
        // One-row shape: K_{(n), mu} = q^{n(mu)}.
        assert_eq!(kostka_foulkes(&sc((3, 0), &[1, 1, 1])), QPolynomial::q_pow(3));
    }

    #[test]
    fn sl2_bridge_examples() {
        let m2 = Composition::new(vec![2]).unwrap();
        assert_eq!(kostka_sl2_oracle(0, &m2), QPolynomial::q_pow(1));
        assert_eq!(kostka_sl2_oracle(2, &m2), QPolynomial::one());
        assert!(kostka_sl2_oracle(1, &m2).is_zero());
        assert!(kostka_sl2_oracle(4, &m2).is_zero());
        let m21 = Composition::new(vec![2, 1]).unwrap();
        assert_eq!(kostka_sl2_oracle(0, &m21), QPolynomial::q_pow(2));
    }
}
