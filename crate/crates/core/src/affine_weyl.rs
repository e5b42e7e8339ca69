//! Shifted action of the affine Weyl group of sl2 on weights `(h0, K, d)`,
//! the BGG generators it produces, and the resulting Euler characteristic.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::compositions::Composition;
use crate::error::{Error, Result};
use crate::kostka::{fusion_weight_char_from_table, unrestricted_table};
use crate::qexact::QPolynomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AffineWeight {
    pub h0: i64,
    pub level: i64,
    pub d: i64,
}

impl AffineWeight {
    pub const RHO: AffineWeight = AffineWeight { h0: 1, level: 2, d: 0 };

    pub const fn new(h0: i64, level: i64, d: i64) -> Self {
        AffineWeight { h0, level, d }
    }
}

impl fmt::Display for AffineWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.h0, self.level, self.d)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    S0,
    S1,
}

/// `s0*(i,k,m) = (-i+2k+2, k, m+k-i+1)`, `s1*(i,k,m) = (-i-2, k, m)`.
pub fn shifted_reflection(gen: Generator, w: AffineWeight) -> AffineWeight {
    let AffineWeight { h0: i, level: k, d: m } = w;
    match gen {
        Generator::S0 => AffineWeight::new(-i + 2 * k + 2, k, m + k - i + 1),
        Generator::S1 => AffineWeight::new(-i - 2, k, m),
    }
}

/// A word in `s0, s1`, acting right to left.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylWord(pub Vec<Generator>);

impl WeylWord {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_reduced(&self) -> bool {
        self.0.windows(2).all(|g| g[0] != g[1])
    }

    pub fn act(&self, w: AffineWeight) -> AffineWeight {
        self.0.iter().rev().fold(w, |acc, &g| shifted_reflection(g, acc))
    }
}

/// The four families of reduced words.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Branch {
    /// `s0 (s1 s0)^n`
    A,
    /// `(s0 s1)^n`
    B,
    /// `s1 (s0 s1)^n`
    C,
    /// `(s1 s0)^n`
    D,
}

impl Branch {
    pub const ALL: [Branch; 4] = [Branch::A, Branch::B, Branch::C, Branch::D];

    pub fn word(self, n: usize) -> WeylWord {
        use Generator::{S0, S1};
        let (head, pair): (Option<Generator>, [Generator; 2]) = match self {
            Branch::A => (Some(S0), [S1, S0]),
            Branch::B => (None, [S0, S1]),
            Branch::C => (Some(S1), [S0, S1]),
            Branch::D => (None, [S1, S0]),
        };
        let mut letters: Vec<Generator> = head.into_iter().collect();
        for _ in 0..n {
            letters.extend_from_slice(&pair);
        }
        WeylWord(letters)
    }
}

/// Closed forms for the shifted action of the four reduced-word families.
pub fn closed_form_lemma_w(branch: Branch, n: i64, w: AffineWeight) -> AffineWeight {
    let AffineWeight { h0: i, level: k, d: m } = w;
    match branch {
        Branch::A => AffineWeight::new(
            -i - 2 + 2 * (n + 1) * (k + 2),
            k,
            m + (n + 1) * (n + 1) * (k + 2) - (n + 1) * (i + 1),
        ),
        Branch::B => AffineWeight::new(i + 2 * n * (k + 2), k, m + n * n * (k + 2) + n * (i + 1)),
        Branch::C => AffineWeight::new(-i - 2 - 2 * n * (k + 2), k, m + n * n * (k + 2) + n * (i + 1)),
        Branch::D => AffineWeight::new(i - 2 * n * (k + 2), k, m + n * n * (k + 2) - n * (i + 1)),
    }
}

/// Highest weights `w*(l,k,0)` over the Weyl elements of length `p`.
pub fn bgg_generators(p: usize, l: i64, k: i64) -> Vec<AffineWeight> {
    let base = AffineWeight::new(l, k, 0);
    if p == 0 {
        return vec![base];
    }
    let n = (p / 2) as i64;
    let branches = if p % 2 == 1 { [Branch::A, Branch::C] } else { [Branch::B, Branch::D] };
    branches.iter().map(|&b| closed_form_lemma_w(b, n, base)).collect()
}

/// `sum_p (-1)^p sum_{l(w)=p} q^{d(w*)} ch V_m^{-h0(w*)}`.
pub fn euler_characteristic_bgg(m: &Composition, l: i64, k: i64) -> Result<QPolynomial> {
    if k < 1 || l < 0 || l > k {
        return Ok(QPolynomial::zero());
    }
    let table = unrestricted_table(m)?;
    let size = m.weighted_size();
    let mut total = QPolynomial::zero();
    let mut p = 0usize;
    loop {
        let generators = bgg_generators(p, l, k);
        let reach = generators.iter().map(|g| g.h0.abs()).min().unwrap_or(i64::MAX);
        if reach > size {
            let next = bgg_generators(p + 1, l, k).iter().map(|g| g.h0.abs()).min().unwrap_or(i64::MAX);
            if next < reach {
                return Err(Error::Internal(format!(
                    "|h0| of BGG generators is not increasing at length {p} for l={l}, k={k}"
                )));
            }
            break;
        }
        let mut layer = QPolynomial::zero();
        for g in generators {
            let slice = fusion_weight_char_from_table(&table, -g.h0);
            layer += slice.shift_integer(g.d);
        }
        if p.is_multiple_of(2) {
            total += layer;
        } else {
            total -= layer;
        }
        p += 1;
    }
    Ok(total)
}

/// Whether the `p`-th homology of the single fusion factor `pi_n` against
/// the level-`k` weight-`l` module is one-dimensional (1) or zero (0).
pub fn homology_dim_predicate(p: i64, n: i64, l: i64, k: i64) -> i64 {
    let hit = if p % 2 == 0 { n == p * (k + 2) + l } else { n == p * (k + 2) + k - l };
    i64::from(hit)
}

/// Dimension `h0 + 1` of the irreducible carried by the length-`p` generator
/// that lands on the dominant side.
pub fn homology_module_dimension(p: usize, l: i64, k: i64) -> i64 {
    let base = AffineWeight::new(l, k, 0);
    let n = (p / 2) as i64;
    let w = if p.is_multiple_of(2) {
        closed_form_lemma_w(Branch::B, n, base)
    } else {
        closed_form_lemma_w(Branch::A, n, base)
    };
    w.h0 + 1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reflections() {
        let w = AffineWeight::new(5, 3, -2);
        assert_eq!(shifted_reflection(Generator::S1, w), AffineWeight::new(-7, 3, -2));
        assert_eq!(shifted_reflection(Generator::S0, AffineWeight::new(0, 1, 0)), AffineWeight::new(4, 1, 2));
        for g in [Generator::S0, Generator::S1] {
            assert_eq!(shifted_reflection(g, shifted_reflection(g, w)), w);
        }
    }

    #[test]
    fn closed_forms_small() {
        let w = AffineWeight::new(2, 3, 1);
        assert_eq!(closed_form_lemma_w(Branch::B, 0, w), w);
        assert_eq!(closed_form_lemma_w(Branch::D, 0, w), w);
        assert_eq!(closed_form_lemma_w(Branch::A, 0, w), shifted_reflection(Generator::S0, w));
        assert_eq!(closed_form_lemma_w(Branch::C, 0, w), shifted_reflection(Generator::S1, w));
        let (i, k, m) = (2, 3, 1);
        assert_eq!(
            closed_form_lemma_w(Branch::B, 1, w),
            AffineWeight::new(i + 2 * (k + 2), k, m + (k + 2) + (i + 1))
        );
        for b in Branch::ALL {
            for n in 0..4 {
                assert_eq!(closed_form_lemma_w(b, n, w), b.word(n as usize).act(w));
                assert!(b.word(n as usize).is_reduced());
            }
        }
    }

    #[test]
    fn generators() {
        assert_eq!(bgg_generators(0, 1, 3), vec![AffineWeight::new(1, 3, 0)]);
        let g1 = bgg_generators(1, 1, 3);
        assert!(g1.contains(&AffineWeight::new(-3, 3, 0)));
        assert!(g1.contains(&AffineWeight::new(-1 + 8, 3, 3)));
        let base = AffineWeight::new(0, 1, 0);
        let mut expect = vec![Branch::B.word(1).act(base), Branch::D.word(1).act(base)];
        let mut got = bgg_generators(2, 0, 1);
        expect.sort_by_key(|w| w.h0);
        got.sort_by_key(|w| w.h0);
        assert_eq!(got, expect);
    }

    #[test]
    fn euler_examples() {
        let m = |p: &[u32]| Composition::new(p.to_vec()).unwrap();
        assert_eq!(euler_characteristic_bgg(&m(&[2]), 0, 1).unwrap(), QPolynomial::q_pow(1));
        assert_eq!(
            euler_characteristic_bgg(&m(&[4]), 0, 2).unwrap(),
            QPolynomial::q_pow(2) + QPolynomial::q_pow(4)
        );
        assert!(euler_characteristic_bgg(&m(&[2]), 1, 1).unwrap().is_zero());
    }

    #[test]
    fn predicate() {
        for k in 1..5 {
            for l in 0..=k {
                assert_eq!(homology_dim_predicate(0, l, l, k), 1);
                assert_eq!(homology_dim_predicate(1, 2 * k + 2 - l, l, k), 1);
                assert_eq!(homology_dim_predicate(0, l + 1, l, k), 0);
                for p in 0..6 {
                    let expect = if p % 2 == 0 { p as i64 * (k + 2) + l + 1 } else { p as i64 * (k + 2) + k - l + 1 };
                    assert_eq!(homology_module_dimension(p, l, k), expect);
                }
            }
        }
    }
}
