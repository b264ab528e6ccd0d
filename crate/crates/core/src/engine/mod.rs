//! Linear term rewriting over bracketed words.
//!
//! A [`RewriteSystem`] is a set of rule families, one per identity. The
//! rules of a family are never materialized: [`find_redexes`] matches the
//! family's monomial shapes structurally against every factor of a word,
//! instantiates the identity with the bindings, and orients the instance
//! either by a fixed pattern side or by a monomial order.

mod closure;
mod confluence;

use std::sync::Arc;

use serde_json::{json, Map, Value};

use crate::error::Error;
use crate::linear::{LinComb, Rational};
use crate::opi::Opi;
use crate::order::OrderHandle;
use crate::terms::{Alphabet, Context, Letter, Placement, Variant, Word};

pub use closure::{closure, joinable, normalize, ClosureReport, Edge, Joinability, Normalization};
pub use confluence::{
    gs_verdict, local_confluence_report, ConfluenceReport, Fork, GsReport, IdealFailure, Verdict,
};

/// How the instances of an identity are turned into rules.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    /// The given monomial (in written order) is always the left-hand side.
    PatternSide(usize),
    /// The order-maximal monomial of each instance is the left-hand side.
    Order(OrderHandle),
}

impl Orientation {
    pub fn name(&self) -> String {
        match self {
            Orientation::PatternSide(0) => "scheme".to_string(),
            Orientation::PatternSide(i) => format!("scheme:{i}"),
            Orientation::Order(o) => format!("order({})", o.name()),
        }
    }

    pub fn order(&self) -> Option<OrderHandle> {
        match self {
            Orientation::Order(o) => Some(*o),
            Orientation::PatternSide(_) => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrientationSource {
    Scheme,
    Order,
}

/// One identity together with the indices of the monomials scanned for it.
#[derive(Clone, Debug)]
pub struct RuleFamily {
    opi: Opi,
    matchers: Vec<usize>,
}

impl RuleFamily {
    pub(crate) fn new(opi: Opi, matchers: Vec<usize>) -> Self {
        RuleFamily { opi, matchers }
    }

    pub fn opi(&self) -> &Opi {
        &self.opi
    }

    pub fn name(&self) -> &str {
        self.opi.name()
    }
}

#[derive(Clone, Debug)]
pub struct RewriteSystem {
    families: Vec<RuleFamily>,
    orientation: Orientation,
    variant: Variant,
    homogeneous: bool,
    nonincreasing: bool,
}

impl RewriteSystem {
    pub(crate) fn new(
        families: Vec<RuleFamily>,
        orientation: Orientation,
        variant: Variant,
        homogeneous: bool,
        nonincreasing: bool,
    ) -> Self {
        RewriteSystem {
            families,
            orientation,
            variant,
            homogeneous,
            nonincreasing,
        }
    }

    pub fn families(&self) -> &[RuleFamily] {
        &self.families
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    /// Every rule preserves degree and the generator multiset, so the
    /// reachable set of a monomial is finite.
    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous
    }

    /// No rule increases degree.
    pub fn is_nonincreasing(&self) -> bool {
        self.nonincreasing
    }
}

/// An oriented instance `lhs -> rhs` of one identity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RuleInstance {
    pub family: Arc<str>,
    pub args: Vec<Word>,
    pub lhs: Word,
    pub rhs: LinComb,
    pub source: OrientationSource,
}

impl RuleInstance {
    pub fn to_json(&self, alphabet: &Alphabet) -> Value {
        let mut m = Map::new();
        m.insert("family".into(), json!(&*self.family));
        for (i, a) in self.args.iter().enumerate() {
            m.insert(format!("u{}", i + 1), json!(alphabet.print(a)));
        }
        Value::Object(m)
    }
}

/// A rule applicable at a placement of a monomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Redex {
    pub rule: RuleInstance,
    pub placement: Placement,
}

/// One rewriting step applied to the support monomial `monomial` of a
/// polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub monomial: Word,
    pub redex: Redex,
}

/// Matches `pat[pi..]` against a prefix of `host[hi..]`, calling `k` with
/// the end position for every way of doing so. Generators of the pattern
/// are metavariables.
fn match_seq(
    pat: &[Letter],
    pi: usize,
    host: &[Letter],
    hi: usize,
    binds: &mut Vec<Option<Word>>,
    nonempty: bool,
    k: &mut dyn FnMut(usize, &mut Vec<Option<Word>>),
) {
    if pi == pat.len() {
        k(hi, binds);
        return;
    }
    match &pat[pi] {
        Letter::Gen(m) => {
            let m = *m as usize;
            if let Some(v) = &binds[m] {
                let n = v.breadth();
                if host.len() - hi >= n && host[hi..hi + n] == *v.letters() {
                    match_seq(pat, pi + 1, host, hi + n, binds, nonempty, k);
                }
                return;
            }
            let min = usize::from(nonempty);
            for len in min..=host.len() - hi {
                binds[m] = Some(Word::new(host[hi..hi + len].to_vec()));
                match_seq(pat, pi + 1, host, hi + len, binds, nonempty, k);
            }
            binds[m] = None;
        }
        Letter::Br(inner) => {
            let Some(Letter::Br(content)) = host.get(hi) else {
                return;
            };
            let content = content.letters();
            match_seq(
                inner.letters(),
                0,
                content,
                0,
                binds,
                nonempty,
                &mut |end, b| {
                    if end == content.len() {
                        match_seq(pat, pi + 1, host, hi + 1, b, nonempty, k);
                    }
                },
            );
        }
    }
}

/// Orients one instance found by matching monomial `matcher` of `family`
/// at a factor equal to `factor`.
fn orient(
    family: &RuleFamily,
    matcher: usize,
    args: Vec<Word>,
    factor: &Word,
    orientation: Orientation,
) -> Option<RuleInstance> {
    let s = family.opi.instantiate_unchecked(&args);
    if s.is_zero() {
        return None;
    }
    let (lead, c, source) = match orientation {
        Orientation::PatternSide(i) => {
            debug_assert_eq!(i, matcher);
            let c = s.coefficient(factor);
            (factor.clone(), c, OrientationSource::Scheme)
        }
        Orientation::Order(ord) => {
            let (lead, c) = s.leading(ord);
            (lead, c, OrientationSource::Order)
        }
    };
    if lead != *factor || c == Rational::from_integer(0.into()) {
        return None;
    }
    let rhs = LinComb::monomial(lead.clone()).sub(&s.scale(&c.recip()));
    debug_assert!(!rhs.contains(&lead));
    Some(RuleInstance {
        family: family.opi.shared_name(),
        args,
        lhs: lead,
        rhs,
        source,
    })
}

/// All redexes of `w`, sorted by placement; within a placement, families
/// keep their order in the system.
pub fn find_redexes(w: &Word, sys: &RewriteSystem) -> Vec<Redex> {
    let nonempty = sys.variant == Variant::Nonunitary;
    let mut out: Vec<Redex> = Vec::new();
    w.for_each_sequence(&mut |path, seq| {
        for start in 0..seq.len() {
            let before = out.len();
            for family in &sys.families {
                let arity = family.opi.arity();
                for &mi in &family.matchers {
                    let pattern = family.opi.terms()[mi].1.letters();
                    let mut binds = vec![None; arity];
                    let mut found: Vec<(usize, Vec<Word>)> = Vec::new();
                    match_seq(
                        pattern,
                        0,
                        seq,
                        start,
                        &mut binds,
                        nonempty,
                        &mut |end, b| {
                            if end > start {
                                let args =
                                    b.iter().map(|o| o.clone().unwrap_or_default()).collect();
                                found.push((end, args));
                            }
                        },
                    );
                    for (end, args) in found {
                        let factor = Word::new(seq[start..end].to_vec());
                        let Some(rule) = orient(family, mi, args, &factor, sys.orientation) else {
                            continue;
                        };
                        let placement = Placement::new(path.to_vec(), start, end - start);
                        let dup = out[before..]
                            .iter()
                            .any(|r| r.placement == placement && r.rule.rhs == rule.rhs);
                        if !dup {
                            out.push(Redex { rule, placement });
                        }
                    }
                }
            }
        }
    });
    // stable: families stay in system order within one placement
    out.sort_by(|a, b| a.placement.cmp(&b.placement));
    out
}

/// Applies `redex` to the support monomial `t` of `f`:
/// `c_t·q|rhs − R_t(f)`.
pub fn rewrite_once(f: &LinComb, t: &Word, redex: &Redex) -> Result<LinComb, Error> {
    let c = f.coefficient(t);
    if c == Rational::from_integer(0.into()) {
        return Err(Error::StaleChoice);
    }
    match redex.placement.factor(t) {
        Ok(ref u) if *u == redex.rule.lhs => {}
        _ => return Err(Error::StaleChoice),
    }
    let q = Context::from_placement(t, &redex.placement)?;
    let mut g = f.clone();
    g.add_term(t.clone(), -c.clone());
    Ok(g.add(&redex.rule.rhs.in_context(&q).scale(&c)))
}

/// All one-step reducts of `f`, by descending support monomial.
pub fn one_step_reducts(f: &LinComb, sys: &RewriteSystem) -> Vec<(Step, LinComb)> {
    let mut out = Vec::new();
    for t in f.support().rev() {
        for redex in find_redexes(t, sys) {
            let g = rewrite_once(f, t, &redex).expect("fresh redex applies");
            out.push((
                Step {
                    monomial: t.clone(),
                    redex,
                },
                g,
            ));
        }
    }
    out
}

impl Step {
    pub fn to_json(&self, from: &LinComb, to: &LinComb, alphabet: &Alphabet) -> Value {
        json!({
            "from": from.display(alphabet).to_string(),
            "monomial": alphabet.print(&self.monomial),
            "rule": self.redex.rule.to_json(alphabet),
            "placement": self.redex.placement,
            "to": to.display(alphabet).to_string(),
        })
    }
}

#[cfg(test)]
mod tests;
