//! Elements of the free brace algebra: finite rational combinations of
//! normal words, kept canonical (no zero coefficients).

mod hom;
mod leading;
mod product;

pub use hom::{apply_hom, Homomorphism};
pub use leading::{largest_merge, leading_of_image, leading_of_product};
pub use product::{normalize, normalize_with_budget, product, product_with_budget, product_words};

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::words::{Letter, NormalWord};

pub type Rational = num_rational::BigRational;

/// `n/d` as an exact rational.
pub fn rational(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn integer(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// An element of `Br(X)`. Terms are keyed by the word order, so the leading
/// term is the last map entry.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    terms: BTreeMap<NormalWord, Rational>,
}

impl Polynomial {
    pub fn zero() -> Polynomial {
        Polynomial::default()
    }

    pub fn word(w: NormalWord) -> Polynomial {
        Polynomial::monomial(w, Rational::one())
    }

    pub fn letter(x: Letter) -> Polynomial {
        Polynomial::word(NormalWord::letter(x))
    }

    pub fn monomial(w: NormalWord, c: Rational) -> Polynomial {
        let mut p = Polynomial::zero();
        p.add_term(w, c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (NormalWord, Rational)>) -> Polynomial {
        let mut p = Polynomial::zero();
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of stored (nonzero) terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in decreasing word order, leading term first.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&NormalWord, &Rational)> + ExactSizeIterator {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, w: &NormalWord) -> Option<&Rational> {
        self.terms.get(w)
    }

    /// Leading word and leading coefficient.
    pub fn leading(&self) -> Result<(&NormalWord, &Rational)> {
        self.terms.iter().next_back().ok_or(Error::ZeroPolynomial)
    }

    pub fn leading_word(&self) -> Option<&NormalWord> {
        self.terms.keys().next_back()
    }

    pub fn leading_coefficient(&self) -> Option<&Rational> {
        self.terms.values().next_back()
    }

    /// Degree of the leading word.
    pub fn degree(&self) -> Option<usize> {
        self.leading_word().map(NormalWord::degree)
    }

    /// Largest degree over all terms.
    pub fn max_degree(&self) -> usize {
        self.terms.keys().map(NormalWord::degree).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, w: NormalWord, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &Polynomial, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (w, a) in &other.terms {
            let term = if c.is_one() { a.clone() } else { a * c };
            self.add_term(w.clone(), term);
        }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial { terms: self.terms.iter().map(|(w, a)| (w.clone(), a * c)).collect() }
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Result<Polynomial> {
        let lc = self.leading_coefficient().ok_or(Error::ZeroPolynomial)?;
        Ok(self.scale(&lc.recip()))
    }

    pub fn letters(&self) -> BTreeSet<Letter> {
        let mut out = BTreeSet::new();
        for w in self.terms.keys() {
            w.for_each_letter(&mut |x| {
                out.insert(x);
            });
        }
        out
    }

    pub fn contains_letter(&self, x: Letter) -> bool {
        self.terms.keys().any(|w| w.contains(x))
    }

    pub fn map_letters(&self, f: &impl Fn(Letter) -> Letter) -> Polynomial {
        Polynomial::from_terms(self.terms.iter().map(|(w, c)| (w.map_letters(f), c.clone())))
    }

    /// Sum of all coefficients.
    pub fn coefficient_sum(&self) -> Rational {
        self.terms.values().fold(Rational::zero(), |acc, c| acc + c)
    }
}

impl From<NormalWord> for Polynomial {
    fn from(w: NormalWord) -> Polynomial {
        Polynomial::word(w)
    }
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out.add_scaled(rhs, &Rational::one());
        out
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Rational::one());
        out
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::text::Printer::default().polynomial(self))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::tests::{node, x};

    #[test]
    fn leading_term() {
        let f = Polynomial::word(node(&[x(1)], 2)) + Polynomial::word(node(&[x(2)], 1));
        let (w, c) = f.leading().unwrap();
        assert_eq!(w, &node(&[x(1)], 2));
        assert!(c.is_one());
        let g = Polynomial::monomial(x(1), rational(3, 2));
        assert_eq!(g.leading().unwrap(), (&x(1), &rational(3, 2)));
        assert_eq!(Polynomial::zero().leading(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn plumbing() {
        let f = Polynomial::from_terms([(x(1), integer(2)), (node(&[x(2)], 1), rational(-1, 3))]);
        let g = Polynomial::word(x(2));
        assert!((&f - &f).is_zero());
        assert_eq!(f.scale(&Rational::one()), f);
        assert_eq!(&(&f + &g) - &g, f);
        assert_eq!(f.scale(&Rational::zero()), Polynomial::zero());
        assert_eq!(-(-f.clone()), f);
        assert_eq!(f.degree(), Some(2));
        assert_eq!(f.monic().unwrap().leading_coefficient(), Some(&Rational::one()));
    }

    #[test]
    fn terms_descend() {
        let f = Polynomial::from_terms([(x(1), integer(1)), (x(2), integer(1)), (node(&[x(1)], 1), integer(1))]);
        let words: Vec<_> = f.terms().map(|(w, _)| w.clone()).collect();
        assert_eq!(words, vec![node(&[x(1)], 1), x(2), x(1)]);
    }
}
