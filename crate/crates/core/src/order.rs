//! Monomial orders on bracketed words.
//!
//! The built-in dT order compares by degree first; words of equal degree
//! are compared letter by letter from the left, where a generator beats a
//! bracket, generators follow the alphabet order, and two brackets compare
//! their contents by the same letter-wise rule (without consulting degree)
//! with a proper prefix being smaller.

use std::cmp::Ordering;

use serde::Serialize;

use crate::averaging::Family;
use crate::error::Error;
use crate::terms::{Alphabet, Letter, Word};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderHandle {
    #[default]
    Dt,
}

impl OrderHandle {
    pub fn compare(self, u: &Word, v: &Word) -> Ordering {
        match self {
            OrderHandle::Dt => dt_compare(u, v),
        }
    }

    /// The larger of two words.
    pub fn max<'a>(self, u: &'a Word, v: &'a Word) -> &'a Word {
        if self.compare(u, v) == Ordering::Less {
            v
        } else {
            u
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            OrderHandle::Dt => "dt",
        }
    }
}

pub(crate) fn dt_compare(u: &Word, v: &Word) -> Ordering {
    u.degree()
        .cmp(&v.degree())
        .then_with(|| seq_compare(u.letters(), v.letters()))
}

fn seq_compare(a: &[Letter], b: &[Letter]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        let o = letter_compare(x, y);
        if o != Ordering::Equal {
            return o;
        }
    }
    a.len().cmp(&b.len())
}

fn letter_compare(x: &Letter, y: &Letter) -> Ordering {
    match (x, y) {
        (Letter::Gen(i), Letter::Gen(j)) => i.cmp(j),
        (Letter::Gen(_), Letter::Br(_)) => Ordering::Greater,
        (Letter::Br(_), Letter::Gen(_)) => Ordering::Less,
        (Letter::Br(a), Letter::Br(b)) => seq_compare(a.letters(), b.letters()),
    }
}

/// Whether the chain of leftmost letters of `w` ends at a generator.
pub fn has_generator_spine(w: &Word) -> bool {
    match w.letters().first() {
        None => false,
        Some(Letter::Gen(_)) => true,
        Some(Letter::Br(inner)) => has_generator_spine(inner),
    }
}

/// How one averaging instance is oriented by the fixed pattern versus by
/// a monomial order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientationAudit {
    pub family: Family,
    pub u1: Word,
    pub u2: Word,
    pub pattern_lhs: Word,
    pub order_lhs: Word,
    pub agrees: bool,
}

impl OrientationAudit {
    pub fn to_json(&self, alphabet: &Alphabet) -> serde_json::Value {
        serde_json::json!({
            "family": self.family.name(),
            "u1": alphabet.print(&self.u1),
            "u2": alphabet.print(&self.u2),
            "pattern_lhs": alphabet.print(&self.pattern_lhs),
            "order_lhs": alphabet.print(&self.order_lhs),
            "agrees": self.agrees,
        })
    }
}

pub fn audit_orientation(
    family: Family,
    u1: &Word,
    u2: &Word,
    ord: OrderHandle,
) -> Result<OrientationAudit, Error> {
    let (pattern, other) = family.monomials(u1, u2);
    if pattern == other {
        return Err(Error::ZeroInstance);
    }
    let order_lhs = ord.max(&pattern, &other).clone();
    Ok(OrientationAudit {
        family,
        u1: u1.clone(),
        u2: u2.clone(),
        agrees: order_lhs == pattern,
        pattern_lhs: pattern,
        order_lhs,
    })
}
