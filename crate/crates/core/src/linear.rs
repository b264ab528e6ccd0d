//! Bracketed polynomials: finitely supported linear combinations of words
//! with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::order::OrderHandle;
use crate::terms::{Alphabet, Context, Word};

pub type Rational = BigRational;

pub fn rational(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// A linear combination of words. Zero coefficients are never stored, and
/// the support is kept in dT order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct LinComb {
    terms: BTreeMap<Word, Rational>,
}

impl LinComb {
    pub fn zero() -> Self {
        LinComb::default()
    }

    pub fn monomial(w: Word) -> Self {
        Self::term(rational(1), w)
    }

    pub fn term(c: Rational, w: Word) -> Self {
        let mut f = LinComb::zero();
        f.add_term(w, c);
        f
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Rational, Word)>) -> Self {
        let mut f = LinComb::zero();
        for (c, w) in terms {
            f.add_term(w, c);
        }
        f
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

    /// Terms in ascending dT order.
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (&Word, &Rational)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl DoubleEndedIterator<Item = &Word> {
        self.terms.keys()
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.terms.contains_key(w)
    }

    pub fn coefficient(&self, w: &Word) -> Rational {
        self.terms.get(w).cloned().unwrap_or_else(Rational::zero)
    }

    /// The single word of a monomial with coefficient 1.
    pub fn as_monomial(&self) -> Option<&Word> {
        match self.terms.iter().next() {
            Some((w, c)) if self.terms.len() == 1 && c.is_one() => Some(w),
            _ => None,
        }
    }

    pub fn add_term(&mut self, w: Word, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, g: &LinComb) -> LinComb {
        let mut out = self.clone();
        for (w, c) in &g.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, g: &LinComb) -> LinComb {
        let mut out = self.clone();
        for (w, c) in &g.terms {
            out.add_term(w.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> LinComb {
        self.scale(&-rational(1))
    }

    pub fn scale(&self, c: &Rational) -> LinComb {
        if c.is_zero() {
            return LinComb::zero();
        }
        LinComb {
            terms: self.terms.iter().map(|(w, d)| (w.clone(), d * c)).collect(),
        }
    }

    /// Concatenation extended bilinearly.
    pub fn mul(&self, g: &LinComb) -> LinComb {
        let mut out = LinComb::zero();
        for (u, c) in &self.terms {
            for (v, d) in &g.terms {
                out.add_term(u.concat(v), c * d);
            }
        }
        out
    }

    /// The bracket operator extended linearly.
    pub fn bracket(&self) -> LinComb {
        LinComb {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.bracket(), c.clone()))
                .collect(),
        }
    }

    /// Applies a word map to every support word, extended linearly.
    pub fn map_words(&self, f: impl Fn(&Word) -> Word) -> LinComb {
        let mut out = LinComb::zero();
        for (w, c) in &self.terms {
            out.add_term(f(w), c.clone());
        }
        out
    }

    /// `q|s`, the linear extension of filling a context.
    pub fn in_context(&self, q: &Context) -> LinComb {
        self.map_words(|w| q.fill(w))
    }

    /// Whether `Supp(self) ∩ Supp(g) = ∅`.
    pub fn is_direct_sum(&self, g: &LinComb) -> bool {
        let (small, large) = if self.len() <= g.len() {
            (self, g)
        } else {
            (g, self)
        };
        small.terms.keys().all(|w| !large.terms.contains_key(w))
    }

    /// `R_w(f) = c_w w - f`.
    pub fn r_w(&self, w: &Word) -> Result<LinComb, Error> {
        let c = self.terms.get(w).ok_or(Error::NotInSupport)?;
        Ok(LinComb::term(c.clone(), w.clone()).sub(self))
    }

    /// Leading monomial and coefficient. Zero and multiples of `1` lead
    /// with `1`.
    pub fn leading(&self, ord: OrderHandle) -> (Word, Rational) {
        let best = self.terms.iter().max_by(|a, b| ord.compare(a.0, b.0));
        match best {
            Some((w, c)) => (w.clone(), c.clone()),
            None => (Word::one(), Rational::zero()),
        }
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> PolyDisplay<'a> {
        PolyDisplay { f: self, alphabet }
    }
}

impl fmt::Debug for LinComb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}*{w:?}")?;
        }
        Ok(())
    }
}

pub struct PolyDisplay<'a> {
    f: &'a LinComb,
    alphabet: &'a Alphabet,
}

/// Canonical text: terms by descending dT order, unit coefficients omitted.
impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.f.is_zero() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.f.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            if w.is_one() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{}", w.display(self.alphabet))?;
            } else {
                write!(f, "{a}*{}", w.display(self.alphabet))?;
            }
        }
        Ok(())
    }
}
