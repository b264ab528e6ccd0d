//! Bracketed words: the free operated monoid over a finite ordered alphabet.
//!
//! A [`Word`] is a finite sequence of [`Letter`]s, each letter being either a
//! generator or a bracketed word. The empty sequence is the monoid identity
//! and prints as `1`. Occurrences of factors are addressed by [`Placement`]s,
//! which descend through bracket letters by index; one-hole words are
//! [`Context`]s.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;

/// One letter of a bracketed word.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Letter {
    /// Generator, stored as its index in the alphabet.
    Gen(u32),
    /// A bracketed word `[w]`.
    Br(Word),
}

/// A bracketed word. The derived degree is cached alongside the letters.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word {
    letters: Vec<Letter>,
    degree: u32,
}

impl Letter {
    pub fn degree(&self) -> u32 {
        match self {
            Letter::Gen(_) => 1,
            Letter::Br(w) => w.degree + 1,
        }
    }

    pub fn as_bracket(&self) -> Option<&Word> {
        match self {
            Letter::Br(w) => Some(w),
            Letter::Gen(_) => None,
        }
    }
}

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        let degree = letters.iter().map(Letter::degree).sum();
        Word { letters, degree }
    }

    /// The identity `1`.
    pub fn one() -> Self {
        Word::default()
    }

    pub fn gen(index: u32) -> Self {
        Word::new(vec![Letter::Gen(index)])
    }

    /// `[self]` as a one-letter word.
    pub fn bracket(&self) -> Self {
        Word::new(vec![Letter::Br(self.clone())])
    }

    /// `k`-fold iterated bracket; `bracket_pow(0)` is the word itself.
    pub fn bracket_pow(&self, k: usize) -> Self {
        let mut w = self.clone();
        for _ in 0..k {
            w = w.bracket();
        }
        w
    }

    pub fn concat(&self, other: &Word) -> Self {
        let mut letters = Vec::with_capacity(self.letters.len() + other.letters.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Word {
            letters,
            degree: self.degree + other.degree,
        }
    }

    pub fn concat_all<'a>(parts: impl IntoIterator<Item = &'a Word>) -> Self {
        let mut letters = Vec::new();
        for p in parts {
            letters.extend_from_slice(&p.letters);
        }
        Word::new(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.letters
    }

    pub fn is_one(&self) -> bool {
        self.letters.is_empty()
    }

    /// Number of generator occurrences plus bracket occurrences.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Number of top-level letters.
    pub fn breadth(&self) -> usize {
        self.letters.len()
    }

    /// Maximal bracket nesting depth.
    pub fn depth(&self) -> usize {
        self.letters
            .iter()
            .map(|l| match l {
                Letter::Gen(_) => 0,
                Letter::Br(w) => 1 + w.depth(),
            })
            .max()
            .unwrap_or(0)
    }

    /// Whether any bracket (at any depth) has empty content.
    pub fn has_empty_bracket(&self) -> bool {
        self.letters.iter().any(|l| match l {
            Letter::Gen(_) => false,
            Letter::Br(w) => w.is_one() || w.has_empty_bracket(),
        })
    }

    /// Whether the word belongs to the word set of `variant`.
    pub fn in_variant(&self, variant: Variant) -> bool {
        match variant {
            Variant::Unitary => true,
            Variant::Nonunitary => !self.is_one() && !self.has_empty_bracket(),
        }
    }

    /// Multiset of generator occurrences, indexed by generator.
    pub fn generator_counts(&self) -> Vec<u32> {
        fn walk(w: &Word, out: &mut Vec<u32>) {
            for l in &w.letters {
                match l {
                    Letter::Gen(g) => {
                        let g = *g as usize;
                        if out.len() <= g {
                            out.resize(g + 1, 0);
                        }
                        out[g] += 1;
                    }
                    Letter::Br(inner) => walk(inner, out),
                }
            }
        }
        let mut out = Vec::new();
        walk(self, &mut out);
        out
    }

    /// Largest generator index occurring in the word.
    pub fn max_generator(&self) -> Option<u32> {
        self.letters
            .iter()
            .filter_map(|l| match l {
                Letter::Gen(g) => Some(*g),
                Letter::Br(w) => w.max_generator(),
            })
            .max()
    }

    /// Replaces every generator `i` by `images[i]` (an operated-monoid
    /// morphism). Generators without an image are kept.
    pub fn substitute_generators(&self, images: &[Word]) -> Word {
        let mut letters = Vec::with_capacity(self.letters.len());
        for l in &self.letters {
            match l {
                Letter::Gen(g) => match images.get(*g as usize) {
                    Some(img) => letters.extend_from_slice(&img.letters),
                    None => letters.push(l.clone()),
                },
                Letter::Br(w) => letters.push(Letter::Br(w.substitute_generators(images))),
            }
        }
        Word::new(letters)
    }

    /// The letter sequence reached by following `path` through bracket letters.
    pub fn sequence_at(&self, path: &[usize]) -> Option<&[Letter]> {
        let mut cur = self;
        for &i in path {
            cur = cur.letters.get(i)?.as_bracket()?;
        }
        Some(&cur.letters)
    }

    /// Visits every letter sequence of the word (the top level and every
    /// bracket content) in pre-order together with its path.
    pub fn for_each_sequence<'a>(&'a self, f: &mut impl FnMut(&[usize], &'a [Letter])) {
        fn go<'a>(w: &'a Word, path: &mut Vec<usize>, f: &mut impl FnMut(&[usize], &'a [Letter])) {
            f(path, &w.letters);
            for (i, l) in w.letters.iter().enumerate() {
                if let Letter::Br(inner) = l {
                    path.push(i);
                    go(inner, path, f);
                    path.pop();
                }
            }
        }
        go(self, &mut Vec::new(), f)
    }

    /// Rebuilds the word with the sequence at `path` transformed by `edit`.
    fn edit_at(
        &self,
        path: &[usize],
        edit: &mut dyn FnMut(&[Letter]) -> Vec<Letter>,
    ) -> Option<Word> {
        match path.split_first() {
            None => Some(Word::new(edit(&self.letters))),
            Some((&i, rest)) => {
                let inner = self.letters.get(i)?.as_bracket()?;
                let replaced = inner.edit_at(rest, edit)?;
                let mut letters = self.letters.clone();
                letters[i] = Letter::Br(replaced);
                Some(Word::new(letters))
            }
        }
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> WordDisplay<'a> {
        WordDisplay {
            word: self,
            alphabet,
        }
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn go(w: &Word, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            if w.is_one() {
                return write!(f, "1");
            }
            for (i, l) in w.letters.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                match l {
                    Letter::Gen(g) => write!(f, "g{g}")?,
                    Letter::Br(inner) => {
                        write!(f, "[")?;
                        go(inner, f)?;
                        write!(f, "]")?;
                    }
                }
            }
            Ok(())
        }
        go(self, f)
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::Gen(g) => write!(f, "g{g}"),
            Letter::Br(w) => write!(f, "[{w:?}]"),
        }
    }
}

/// Words are ordered by the degree-then-lexicographic (dT) order so that
/// sorted containers of words are canonical.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        crate::order::dt_compare(self, other)
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// The word set a computation ranges over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// All words, including `1` and `[1]`.
    Unitary,
    /// Nonempty words without empty brackets.
    Nonunitary,
}

impl std::str::FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "unitary" => Ok(Variant::Unitary),
            "nonunitary" => Ok(Variant::Nonunitary),
            _ => Err(Error::Usage(format!("unknown variant `{s}`"))),
        }
    }
}

/// A finite, totally ordered set of generator names. Index order is the
/// alphabet order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self, Error> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, n) in names.iter().enumerate() {
            if !crate::syntax::is_identifier(n) || n == "1" {
                return Err(Error::Usage(format!("invalid generator name `{n}`")));
            }
            if names[..i].contains(n) {
                return Err(Error::Usage(format!("duplicate generator `{n}`")));
            }
        }
        Ok(Alphabet { names })
    }

    /// `x1, …, xk`; a single generator is named `x`.
    pub fn standard(k: usize) -> Self {
        let names = if k == 1 {
            vec!["x".to_string()]
        } else {
            (1..=k).map(|i| format!("x{i}")).collect()
        };
        Alphabet { names }
    }

    /// `x1, …, xk` regardless of `k` (metavariable alphabet of OPIs).
    pub fn indexed(k: usize) -> Self {
        Alphabet {
            names: (1..=k).map(|i| format!("x{i}")).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, g: u32) -> Option<&str> {
        self.names.get(g as usize).map(String::as_str)
    }

    pub fn index(&self, name: &str) -> Option<u32> {
        self.names.iter().position(|n| n == name).map(|i| i as u32)
    }

    pub fn parse(&self, text: &str) -> Result<Word, Error> {
        crate::syntax::parse_word(text, self)
    }

    pub fn print(&self, w: &Word) -> String {
        w.display(self).to_string()
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    alphabet: &'a Alphabet,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn go(w: &Word, a: &Alphabet, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            if w.is_one() {
                return write!(f, "1");
            }
            for (i, l) in w.letters.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                match l {
                    Letter::Gen(g) => match a.name(*g) {
                        Some(n) => write!(f, "{n}")?,
                        None => write!(f, "g{g}")?,
                    },
                    Letter::Br(inner) => {
                        write!(f, "[")?;
                        go(inner, a, f)?;
                        write!(f, "]")?;
                    }
                }
            }
            Ok(())
        }
        go(self.word, self.alphabet, f)
    }
}

/// One occurrence of a factor: the letters `start..start + len` of the
/// sequence reached by `path`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Placement {
    pub path: Vec<usize>,
    pub start: usize,
    pub len: usize,
}

impl Placement {
    pub fn new(path: Vec<usize>, start: usize, len: usize) -> Self {
        Placement { path, start, len }
    }

    /// The whole top-level sequence of `host`.
    pub fn whole(host: &Word) -> Self {
        Placement::new(Vec::new(), 0, host.breadth())
    }

    pub fn factor(&self, host: &Word) -> Result<Word, Error> {
        let seq = host
            .sequence_at(&self.path)
            .ok_or_else(|| Error::Unresolvable(self.clone()))?;
        seq.get(self.start..self.start + self.len)
            .map(|s| Word::new(s.to_vec()))
            .ok_or_else(|| Error::Unresolvable(self.clone()))
    }

    pub fn resolves_in(&self, host: &Word) -> bool {
        host.sequence_at(&self.path)
            .is_some_and(|s| self.start + self.len <= s.len())
    }

    /// The placement of the same factor inside `outer|host`.
    pub fn lift(&self, outer: &Context) -> Placement {
        let point = outer.hole();
        let mut path = point.path.clone();
        match self.path.split_first() {
            None => Placement::new(path, point.index + self.start, self.len),
            Some((&first, rest)) => {
                path.push(point.index + first);
                path.extend_from_slice(rest);
                Placement::new(path, self.start, self.len)
            }
        }
    }

    fn end(&self) -> usize {
        self.start + self.len
    }

    /// Whether `self`'s factor occurrence contains `other`'s.
    fn contains(&self, other: &Placement) -> bool {
        if other.path.len() < self.path.len() || other.path[..self.path.len()] != self.path[..] {
            return false;
        }
        if other.path.len() == self.path.len() {
            self.start <= other.start && other.end() <= self.end()
        } else {
            let i = other.path[self.path.len()];
            self.start <= i && i < self.end()
        }
    }
}

/// Replaces the factor at `p` by `replacement`.
pub fn substitute(host: &Word, p: &Placement, replacement: &Word) -> Result<Word, Error> {
    if !p.resolves_in(host) {
        return Err(Error::Unresolvable(p.clone()));
    }
    let (start, end) = (p.start, p.end());
    host.edit_at(&p.path, &mut |seq| {
        let mut out = Vec::with_capacity(seq.len() - (end - start) + replacement.breadth());
        out.extend_from_slice(&seq[..start]);
        out.extend_from_slice(replacement.letters());
        out.extend_from_slice(&seq[end..]);
        out
    })
    .ok_or_else(|| Error::Unresolvable(p.clone()))
}

/// All occurrences of the nonempty factor `u` in `host`, in canonical
/// `(path, start)` order.
pub fn subword_placements(host: &Word, u: &Word) -> Result<Vec<Placement>, Error> {
    if u.is_one() {
        return Err(Error::EmptyFactor);
    }
    let n = u.breadth();
    let mut out = Vec::new();
    host.for_each_sequence(&mut |path, seq| {
        if seq.len() < n {
            return;
        }
        for start in 0..=seq.len() - n {
            if seq[start..start + n] == *u.letters() {
                out.push(Placement::new(path.to_vec(), start, n));
            }
        }
    });
    out.sort();
    Ok(out)
}

/// Every nonempty factor occurrence in `host`, in canonical order.
pub fn all_placements(host: &Word) -> Vec<Placement> {
    let mut out = Vec::new();
    host.for_each_sequence(&mut |path, seq| {
        for start in 0..seq.len() {
            for end in start + 1..=seq.len() {
                out.push(Placement::new(path.to_vec(), start, end - start));
            }
        }
    });
    out.sort();
    out
}

/// How two factor occurrences in one host relate to each other.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PlacementRelation {
    Separated,
    Nested,
    Intersecting,
}

pub fn classify(host: &Word, p1: &Placement, p2: &Placement) -> Result<PlacementRelation, Error> {
    for p in [p1, p2] {
        if !p.resolves_in(host) {
            return Err(Error::Unresolvable(p.clone()));
        }
        if p.len == 0 {
            return Err(Error::EmptyFactor);
        }
    }
    if p1 == p2 {
        return Err(Error::IdenticalPlacements);
    }
    if p1.contains(p2) || p2.contains(p1) {
        return Ok(PlacementRelation::Nested);
    }
    if p1.path == p2.path && p1.start < p2.end() && p2.start < p1.end() {
        return Ok(PlacementRelation::Intersecting);
    }
    Ok(PlacementRelation::Separated)
}

/// An insertion point: position `index` within the sequence at `path`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point {
    pub path: Vec<usize>,
    pub index: usize,
}

impl Point {
    /// Document-order key: a point is later than another when its key is
    /// lexicographically larger.
    fn key(&self) -> Vec<usize> {
        let mut k = self.path.clone();
        k.push(self.index);
        k
    }

    /// Where this point moves after `n` letters are inserted at `at`,
    /// assuming this point is at or after `at` in document order.
    fn shifted_by_insert(&self, at: &Point, n: usize) -> Point {
        let d = at.path.len();
        let mut p = self.clone();
        if p.path.len() == d && p.path == at.path {
            if p.index >= at.index {
                p.index += n;
            }
        } else if p.path.len() > d && p.path[..d] == at.path[..] && p.path[d] >= at.index {
            p.path[d] += n;
        }
        p
    }

    /// Where this point moves after the `len` letters at `at` are removed.
    fn shifted_by_removal(&self, at: &Placement) -> Point {
        let d = at.path.len();
        let mut p = self.clone();
        if p.path == at.path {
            if p.index >= at.end() {
                p.index -= at.len;
            }
        } else if p.path.len() > d && p.path[..d] == at.path[..] && p.path[d] >= at.end() {
            p.path[d] -= at.len;
        }
        p
    }
}

fn insert_at(w: &Word, at: &Point, letters: &[Letter]) -> Word {
    w.edit_at(&at.path, &mut |seq| {
        let mut out = Vec::with_capacity(seq.len() + letters.len());
        out.extend_from_slice(&seq[..at.index]);
        out.extend_from_slice(letters);
        out.extend_from_slice(&seq[at.index..]);
        out
    })
    .expect("insertion point resolves")
}

/// A one-hole bracketed word `q`; `q|u` fills the hole with `u`.
///
/// Stored as the word with the hole deleted plus the hole's insertion
/// point, which makes the representation unique.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Context {
    skeleton: Word,
    hole: Point,
}

impl Context {
    /// The trivial context `⋆`.
    pub fn identity() -> Self {
        Context {
            skeleton: Word::one(),
            hole: Point {
                path: Vec::new(),
                index: 0,
            },
        }
    }

    pub fn new(skeleton: Word, hole: Point) -> Result<Self, Error> {
        match skeleton.sequence_at(&hole.path) {
            Some(seq) if hole.index <= seq.len() => Ok(Context { skeleton, hole }),
            _ => Err(Error::Unresolvable(Placement::new(
                hole.path, hole.index, 0,
            ))),
        }
    }

    /// The context `q` with `q|factor(p) = host`.
    pub fn from_placement(host: &Word, p: &Placement) -> Result<Self, Error> {
        let skeleton = substitute(host, p, &Word::one())?;
        Ok(Context {
            skeleton,
            hole: Point {
                path: p.path.clone(),
                index: p.start,
            },
        })
    }

    /// Every context whose skeleton is `w`, one per insertion point.
    pub fn all_with_skeleton(w: &Word) -> Vec<Context> {
        let mut out = Vec::new();
        w.for_each_sequence(&mut |path, seq| {
            for index in 0..=seq.len() {
                out.push(Context {
                    skeleton: w.clone(),
                    hole: Point {
                        path: path.to_vec(),
                        index,
                    },
                });
            }
        });
        out
    }

    pub fn skeleton(&self) -> &Word {
        &self.skeleton
    }

    pub fn hole(&self) -> &Point {
        &self.hole
    }

    /// Degree of the context, not counting the hole.
    pub fn degree(&self) -> u32 {
        self.skeleton.degree()
    }

    pub fn fill(&self, u: &Word) -> Word {
        insert_at(&self.skeleton, &self.hole, u.letters())
    }

    /// Where a word filled into the hole sits in the result.
    pub fn placement_of(&self, u: &Word) -> Placement {
        Placement::new(self.hole.path.clone(), self.hole.index, u.breadth())
    }

    /// `self|inner`: the context whose hole is `inner`'s hole.
    pub fn compose(&self, inner: &Context) -> Context {
        let skeleton = self.fill(&inner.skeleton);
        let mut path = self.hole.path.clone();
        let index = match inner.hole.path.split_first() {
            None => self.hole.index + inner.hole.index,
            Some((&first, rest)) => {
                path.push(self.hole.index + first);
                path.extend_from_slice(rest);
                inner.hole.index
            }
        };
        Context {
            skeleton,
            hole: Point { path, index },
        }
    }

    /// `[self]`.
    pub fn bracketed(&self) -> Context {
        let mut path = vec![0];
        path.extend_from_slice(&self.hole.path);
        Context {
            skeleton: self.skeleton.bracket(),
            hole: Point {
                path,
                index: self.hole.index,
            },
        }
    }
}

/// A bracketed word with two distinguishable holes `⋆1`, `⋆2`, the witness
/// shape of separated placements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoHoleWord {
    skeleton: Word,
    holes: [Point; 2],
    /// Whether `⋆1` precedes `⋆2` in document order (decides ties).
    first_leads: bool,
}

impl TwoHoleWord {
    /// For separated placements, the two-hole word `p` with
    /// `p|(factor(p1), factor(p2)) = host`.
    pub fn separated_witness(host: &Word, p1: &Placement, p2: &Placement) -> Result<Self, Error> {
        if classify(host, p1, p2)? != PlacementRelation::Separated {
            return Err(Error::NotSeparated);
        }
        let key = |p: &Placement| {
            Point {
                path: p.path.clone(),
                index: p.start,
            }
            .key()
        };
        let first_leads = key(p1) < key(p2);
        let (early, late) = if first_leads { (p1, p2) } else { (p2, p1) };
        let without_late = substitute(host, late, &Word::one())?;
        let skeleton = substitute(&without_late, early, &Word::one())?;
        let early_pt = Point {
            path: early.path.clone(),
            index: early.start,
        };
        let late_pt = Point {
            path: late.path.clone(),
            index: late.start,
        }
        .shifted_by_removal(early);
        let holes = if first_leads {
            [early_pt, late_pt]
        } else {
            [late_pt, early_pt]
        };
        Ok(TwoHoleWord {
            skeleton,
            holes,
            first_leads,
        })
    }

    pub fn skeleton(&self) -> &Word {
        &self.skeleton
    }

    pub fn fill(&self, a: &Word, b: &Word) -> Word {
        let (early, e, late, l) = if self.first_leads {
            (&self.holes[0], a, &self.holes[1], b)
        } else {
            (&self.holes[1], b, &self.holes[0], a)
        };
        let w = insert_at(&self.skeleton, late, l.letters());
        insert_at(&w, early, e.letters())
    }

    /// `p|(⋆1, b)` as a one-hole context.
    pub fn fill_second(&self, b: &Word) -> Context {
        let skeleton = insert_at(&self.skeleton, &self.holes[1], b.letters());
        let hole = if self.first_leads {
            self.holes[0].clone()
        } else {
            self.holes[0].shifted_by_insert(&self.holes[1], b.breadth())
        };
        Context { skeleton, hole }
    }

    /// `p|(a, ⋆2)` as a one-hole context.
    pub fn fill_first(&self, a: &Word) -> Context {
        let skeleton = insert_at(&self.skeleton, &self.holes[0], a.letters());
        let hole = if self.first_leads {
            self.holes[1].shifted_by_insert(&self.holes[0], a.breadth())
        } else {
            self.holes[1].clone()
        };
        Context { skeleton, hole }
    }
}

/// Generates all words of exactly `degree` over `k` generators, sorted in dT
/// order.
pub fn words_of_degree(degree: u32, k: usize, variant: Variant) -> Vec<Word> {
    let table = WordTable::build(degree, k, variant);
    table.words(degree).to_vec()
}

/// Every word of degree `<= bound`, ordered by degree and then dT.
pub fn enumerate_words(bound: u32, k: usize, variant: Variant) -> Vec<Word> {
    let table = WordTable::build(bound, k, variant);
    (0..=bound)
        .flat_map(|d| table.words(d).iter().cloned())
        .collect()
}

/// Memo table of letter sequences by degree.
struct WordTable {
    seqs: Vec<Vec<Word>>,
    variant: Variant,
}

impl WordTable {
    fn build(bound: u32, k: usize, variant: Variant) -> Self {
        let bound = bound as usize;
        // letters[j]: all letters of degree j
        let mut letters: Vec<Vec<Letter>> = vec![Vec::new(); bound + 1];
        let mut seqs: Vec<Vec<Word>> = vec![Vec::new(); bound + 1];
        seqs[0].push(Word::one());
        for d in 1..=bound {
            let mut ls: Vec<Letter> = if d == 1 {
                (0..k as u32).map(Letter::Gen).collect()
            } else {
                Vec::new()
            };
            for w in &seqs[d - 1] {
                if variant == Variant::Nonunitary && w.is_one() {
                    continue;
                }
                ls.push(Letter::Br(w.clone()));
            }
            letters[d] = ls;
            let mut out = Vec::new();
            for j in 1..=d {
                for l in &letters[j] {
                    for rest in &seqs[d - j] {
                        let mut v = Vec::with_capacity(rest.breadth() + 1);
                        v.push(l.clone());
                        v.extend_from_slice(rest.letters());
                        out.push(Word::new(v));
                    }
                }
            }
            out.sort();
            seqs[d] = out;
        }
        WordTable { seqs, variant }
    }

    fn words(&self, d: u32) -> &[Word] {
        if d == 0 && self.variant == Variant::Nonunitary {
            return &[];
        }
        &self.seqs[d as usize]
    }
}

/// Number of words of exactly `degree` over `k` generators, by the
/// convolution recurrence `s(d) = Σ l(j) s(d-j)`.
pub fn count_words(degree: u32, k: usize, variant: Variant) -> BigUint {
    let d = degree as usize;
    // s[n]: letter sequences of degree n (the empty one at n = 0)
    let mut s: Vec<BigUint> = vec![BigUint::one()];
    for n in 1..=d {
        let mut total = BigUint::zero();
        for j in 1..=n {
            let letters = if j == 1 {
                let empty_bracket = match variant {
                    Variant::Unitary => 1u32,
                    Variant::Nonunitary => 0,
                };
                BigUint::from(k) + BigUint::from(empty_bracket)
            } else {
                s[j - 1].clone()
            };
            total += letters * &s[n - j];
        }
        s.push(total);
    }
    if d == 0 && variant == Variant::Nonunitary {
        return BigUint::zero();
    }
    s.swap_remove(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alpha() -> Alphabet {
        Alphabet::new(["x", "y", "z"]).unwrap()
    }

    fn w(s: &str) -> Word {
        alpha().parse(s).unwrap()
    }

    #[test]
    fn degree_and_breadth() {
        assert_eq!(w("1").degree(), 0);
        assert_eq!(w("[[1]]").degree(), 2);
        assert_eq!(w("[x] [y]").degree(), 4);
        assert_eq!(w("1").breadth(), 0);
        assert_eq!(w("[[x] y]").breadth(), 1);
        assert_eq!(w("x [y] z").breadth(), 3);
        assert_eq!(w("[[x] y]").depth(), 2);
    }

    #[test]
    fn substitute_examples() {
        let host = w("[x]");
        let p = Placement::new(vec![0], 0, 1);
        assert_eq!(substitute(&host, &p, &w("y z")).unwrap(), w("[y z]"));

        let host = w("[x] [y]");
        let p = Placement::new(vec![], 0, 2);
        let r = substitute(&host, &p, &w("[[x] y]")).unwrap();
        assert_eq!(r, w("[[x] y]"));
        assert_eq!(r.breadth(), 1);

        let p = Placement::new(vec![], 1, 0);
        assert_eq!(substitute(&host, &p, &Word::one()).unwrap(), host);

        let bad = Placement::new(vec![5], 0, 1);
        assert!(matches!(
            substitute(&host, &bad, &Word::one()),
            Err(Error::Unresolvable(_))
        ));
    }

    #[test]
    fn subword_examples() {
        let ps = subword_placements(&w("[x] [x]"), &w("[x]")).unwrap();
        assert_eq!(
            ps,
            vec![Placement::new(vec![], 0, 1), Placement::new(vec![], 1, 1)]
        );
        let ps = subword_placements(&w("[[1]]"), &w("[1]")).unwrap();
        assert_eq!(ps, vec![Placement::new(vec![0], 0, 1)]);
        let ps = subword_placements(&w("x y z"), &w("y z")).unwrap();
        assert_eq!(ps, vec![Placement::new(vec![], 1, 2)]);
        assert!(matches!(
            subword_placements(&w("x"), &Word::one()),
            Err(Error::EmptyFactor)
        ));
    }

    #[test]
    fn subword_search_matches_brute_force() {
        let host = w("x y [x y] x y");
        let u = w("x y");
        let brute: Vec<Placement> = all_placements(&host)
            .into_iter()
            .filter(|p| p.factor(&host).unwrap() == u)
            .collect();
        assert_eq!(subword_placements(&host, &u).unwrap(), brute);
        assert_eq!(brute.len(), 3);
    }

    #[test]
    fn classify_examples() {
        let host = w("[x] [y]");
        let p1 = Placement::new(vec![], 0, 1);
        let p2 = Placement::new(vec![], 1, 1);
        assert_eq!(
            classify(&host, &p1, &p2).unwrap(),
            PlacementRelation::Separated
        );

        let host = w("[[x] y]");
        let whole = Placement::new(vec![], 0, 1);
        let inner = Placement::new(vec![0], 0, 1);
        assert_eq!(
            classify(&host, &whole, &inner).unwrap(),
            PlacementRelation::Nested
        );

        let host = w("x y z");
        let xy = Placement::new(vec![], 0, 2);
        let yz = Placement::new(vec![], 1, 2);
        assert_eq!(
            classify(&host, &xy, &yz).unwrap(),
            PlacementRelation::Intersecting
        );
        assert!(matches!(
            classify(&host, &xy, &xy),
            Err(Error::IdenticalPlacements)
        ));
    }

    #[test]
    fn separated_witness_adjacent_and_nested_paths() {
        let host = w("[x] [y] z");
        let p1 = Placement::new(vec![], 1, 1);
        let p2 = Placement::new(vec![], 0, 1);
        let t = TwoHoleWord::separated_witness(&host, &p1, &p2).unwrap();
        let a = p1.factor(&host).unwrap();
        let b = p2.factor(&host).unwrap();
        assert_eq!(t.fill(&a, &b), host);
        assert_eq!(
            t.fill_second(&b),
            Context::from_placement(&host, &p1).unwrap()
        );
        assert_eq!(
            t.fill_first(&a),
            Context::from_placement(&host, &p2).unwrap()
        );

        let host = w("x [y [z] x] y");
        let p1 = Placement::new(vec![], 0, 1);
        let p2 = Placement::new(vec![1, 1], 0, 1);
        let t = TwoHoleWord::separated_witness(&host, &p1, &p2).unwrap();
        let a = p1.factor(&host).unwrap();
        let b = p2.factor(&host).unwrap();
        assert_eq!(t.fill(&a, &b), host);
        assert_eq!(
            t.fill_second(&b),
            Context::from_placement(&host, &p1).unwrap()
        );
        assert_eq!(
            t.fill_first(&a),
            Context::from_placement(&host, &p2).unwrap()
        );
    }

    #[test]
    fn context_compose_and_lift() {
        let outer = Context::from_placement(&w("x [y z]"), &Placement::new(vec![1], 1, 1)).unwrap();
        let inner = Context::from_placement(&w("[x] y"), &Placement::new(vec![0], 0, 1)).unwrap();
        let u = w("z z");
        let composed = outer.compose(&inner);
        assert_eq!(composed.fill(&u), outer.fill(&inner.fill(&u)));
        let p = inner.placement_of(&u).lift(&outer);
        assert_eq!(p.factor(&composed.fill(&u)).unwrap(), u);
        assert_eq!(p, composed.placement_of(&u));
        assert_eq!(Context::identity().fill(&u), u);
        assert_eq!(inner.bracketed().fill(&u), inner.fill(&u).bracket());
    }

    #[test]
    fn enumeration_small_cases() {
        let a = Alphabet::standard(1);
        let got: Vec<String> = enumerate_words(1, 1, Variant::Unitary)
            .iter()
            .map(|x| a.print(x))
            .collect();
        assert_eq!(got, ["1", "[1]", "x"]);

        let deg2: Vec<String> = words_of_degree(2, 1, Variant::Unitary)
            .iter()
            .map(|x| a.print(x))
            .collect();
        let mut expected = vec!["x x", "x [1]", "[1] x", "[1] [1]", "[x]", "[[1]]"];
        expected.sort();
        let mut sorted = deg2.clone();
        sorted.sort();
        assert_eq!(sorted, expected);
        assert_eq!(enumerate_words(2, 1, Variant::Unitary).len(), 9);

        let non: Vec<String> = words_of_degree(2, 1, Variant::Nonunitary)
            .iter()
            .map(|x| a.print(x))
            .collect();
        let mut non_sorted = non;
        non_sorted.sort();
        assert_eq!(non_sorted, ["[x]", "x x"]);
        assert!(words_of_degree(0, 1, Variant::Nonunitary).is_empty());
    }

    #[test]
    fn counts() {
        let c: Vec<u64> = (0..4)
            .map(|d| count_words(d, 1, Variant::Unitary).try_into().unwrap())
            .collect();
        assert_eq!(c, [1, 2, 6, 22]);
        assert_eq!(count_words(0, 1, Variant::Nonunitary), BigUint::zero());
        assert_eq!(count_words(2, 1, Variant::Nonunitary), BigUint::from(2u32));
    }

    #[test]
    fn empty_alphabet_words_are_pure_brackets() {
        let ws = enumerate_words(3, 0, Variant::Unitary);
        assert!(ws.iter().all(|w| w.max_generator().is_none()));
        assert_eq!(ws.len(), 1 + 1 + 2 + 5);
    }
}
