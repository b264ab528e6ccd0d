//! Operated polynomial identities and the rewriting systems they induce.
//!
//! An [`Opi`] is a bracketed polynomial over the metavariables
//! `x1, …, xk`. Instantiating it replaces each metavariable by a word;
//! [`to_system`] turns a set of identities into a [`RewriteSystem`] whose
//! rules are the oriented instances.

use std::sync::Arc;

use crate::engine::{Orientation, RewriteSystem, RuleFamily};
use crate::error::Error;
use crate::linear::{rational, LinComb, Rational};
use crate::syntax::parse_poly_terms;
use crate::terms::{Alphabet, Variant, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Opi {
    name: Arc<str>,
    arity: usize,
    /// Terms in the order they were written; words are monomials over the
    /// metavariables, with generator `i` standing for `x{i+1}`.
    terms: Vec<(Rational, Word)>,
}

impl Opi {
    /// Builds an identity from written terms, merging repeated monomials
    /// at their first position and dropping cancelled ones.
    pub fn new(
        name: impl Into<String>,
        arity: usize,
        written: impl IntoIterator<Item = (Rational, Word)>,
    ) -> Result<Self, Error> {
        let name: String = name.into();
        let mut terms: Vec<(Rational, Word)> = Vec::new();
        for (c, w) in written {
            if let Some(g) = w.max_generator() {
                if g as usize >= arity {
                    return Err(Error::Usage(format!(
                        "metavariable x{} exceeds arity {arity} of `{name}`",
                        g + 1
                    )));
                }
            }
            match terms.iter_mut().find(|(_, v)| *v == w) {
                Some((d, _)) => *d += c,
                None => terms.push((c, w)),
            }
        }
        terms.retain(|(c, _)| *c != rational(0));
        Ok(Opi {
            name: name.into(),
            arity,
            terms,
        })
    }

    /// Parses the body in polynomial syntax over `x1..xk`.
    pub fn parse(name: impl Into<String>, arity: usize, body: &str) -> Result<Self, Error> {
        let terms = parse_poly_terms(body, &Alphabet::indexed(arity))?;
        Opi::new(name, arity, terms)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub(crate) fn shared_name(&self) -> Arc<str> {
        self.name.clone()
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Monomials in written order.
    pub fn terms(&self) -> &[(Rational, Word)] {
        &self.terms
    }

    pub fn body(&self) -> LinComb {
        LinComb::from_terms(self.terms.iter().cloned())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Metavariables (as generator indices) occurring anywhere in the body.
    pub fn used_metavariables(&self) -> Vec<u32> {
        let mut used = vec![false; self.arity];
        for (_, w) in &self.terms {
            for (g, &n) in w.generator_counts().iter().enumerate() {
                if n > 0 {
                    used[g] = true;
                }
            }
        }
        (0..self.arity as u32)
            .filter(|&g| used[g as usize])
            .collect()
    }

    /// `φ(u1, …, uk)`.
    pub fn instantiate(&self, args: &[Word]) -> Result<LinComb, Error> {
        if args.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                got: args.len(),
            });
        }
        Ok(self.instantiate_unchecked(args))
    }

    pub(crate) fn instantiate_unchecked(&self, args: &[Word]) -> LinComb {
        let mut out = LinComb::zero();
        for (c, w) in &self.terms {
            out.add_term(w.substitute_generators(args), c.clone());
        }
        out
    }

    /// Whether every monomial has the same bracket count and the same
    /// metavariable multiset, so instances preserve degree and generators.
    pub fn is_homogeneous(&self) -> bool {
        let shape = |w: &Word| {
            let mut counts = w.generator_counts();
            counts.resize(self.arity, 0);
            let brackets = w.degree() - counts.iter().sum::<u32>();
            (brackets, counts)
        };
        let mut shapes = self.terms.iter().map(|(_, w)| shape(w));
        match shapes.next() {
            None => true,
            Some(first) => shapes.all(|s| s == first),
        }
    }

    /// Whether every instance has degree at most that of monomial `i`.
    fn dominated_by(&self, i: usize) -> bool {
        let stat = |w: &Word| {
            let mut counts = w.generator_counts();
            counts.resize(self.arity, 0);
            let brackets = w.degree() - counts.iter().sum::<u32>();
            (brackets, counts)
        };
        let (b0, c0) = stat(&self.terms[i].1);
        self.terms.iter().all(|(_, w)| {
            let (b, c) = stat(w);
            b <= b0 && c.iter().zip(&c0).all(|(x, y)| x <= y)
        })
    }
}

fn m(arity: usize, text: &str) -> Word {
    crate::syntax::parse_word(text, &Alphabet::indexed(arity)).expect("built-in monomial")
}

/// Names accepted by [`builtin`].
pub const BUILTIN_NAMES: &[&str] = &[
    "differential",
    "rota_baxter",
    "reynolds",
    "averaging_phi",
    "averaging_psi",
    "averaging_varphi",
    "averaging",
    "averaging_novarphi",
];

/// The example identities. `rota_baxter` takes the weight λ; `averaging`
/// is the set {φ, ψ, φ′} and `averaging_novarphi` is {φ, ψ}.
pub fn builtin(name: &str, param: Option<Rational>) -> Result<Vec<Opi>, Error> {
    let one = || rational(1);
    let neg = || rational(-1);
    let single = |o: Result<Opi, Error>| o.map(|o| vec![o]);
    match name {
        "differential" => single(Opi::new(
            "differential",
            2,
            [
                (one(), m(2, "[x1 x2]")),
                (neg(), m(2, "[x1] x2")),
                (neg(), m(2, "x1 [x2]")),
            ],
        )),
        "rota_baxter" => {
            let lambda = param.ok_or_else(|| Error::MissingParameter(name.to_string()))?;
            single(Opi::new(
                "rota_baxter",
                2,
                [
                    (one(), m(2, "[x1] [x2]")),
                    (neg(), m(2, "[x1 [x2]]")),
                    (neg(), m(2, "[[x1] x2]")),
                    (-lambda, m(2, "[x1 x2]")),
                ],
            ))
        }
        "reynolds" => single(Opi::new(
            "reynolds",
            2,
            [
                (one(), m(2, "[[x1] [x2]]")),
                (one(), m(2, "[x1] [x2]")),
                (neg(), m(2, "[x1 [x2]]")),
                (neg(), m(2, "[[x1] x2]")),
            ],
        )),
        "averaging_phi" => single(averaging_phi()),
        "averaging_psi" => single(averaging_psi()),
        "averaging_varphi" => single(averaging_varphi()),
        "averaging" => Ok(vec![
            averaging_phi()?,
            averaging_psi()?,
            averaging_varphi()?,
        ]),
        "averaging_novarphi" => Ok(vec![averaging_phi()?, averaging_psi()?]),
        _ => Err(Error::UnknownBuiltin(name.to_string())),
    }
}

fn averaging_phi() -> Result<Opi, Error> {
    Opi::new(
        "phi",
        2,
        [
            (rational(1), m(2, "[x1] [x2]")),
            (rational(-1), m(2, "[[x1] x2]")),
        ],
    )
}

fn averaging_psi() -> Result<Opi, Error> {
    Opi::new(
        "psi",
        2,
        [
            (rational(1), m(2, "[x1 [x2]]")),
            (rational(-1), m(2, "[[x1] x2]")),
        ],
    )
}

fn averaging_varphi() -> Result<Opi, Error> {
    Opi::new(
        "varphi",
        2,
        [
            (rational(1), m(2, "[[[x1] x2]]")),
            (rational(-1), m(2, "[[[x1]] x2]")),
        ],
    )
}

/// Builds the rewriting system of a set of identities. Each identity gets
/// one structural matcher per monomial it may be oriented from.
pub fn to_system(
    opis: &[Opi],
    orientation: Orientation,
    variant: Variant,
) -> Result<RewriteSystem, Error> {
    let mut families = Vec::with_capacity(opis.len());
    let mut homogeneous = true;
    let mut nonincreasing = true;
    for opi in opis {
        if opi.is_zero() {
            return Err(Error::ZeroIdentity(opi.name().to_string()));
        }
        let matchers: Vec<usize> = match orientation {
            Orientation::PatternSide(i) => {
                if i >= opi.terms.len() {
                    return Err(Error::PatternIndex {
                        name: opi.name().to_string(),
                        index: i,
                    });
                }
                nonincreasing &= opi.dominated_by(i);
                vec![i]
            }
            Orientation::Order(_) => (0..opi.terms.len()).collect(),
        };
        let used = opi.used_metavariables();
        for &i in &matchers {
            let counts = opi.terms[i].1.generator_counts();
            if used
                .iter()
                .any(|&g| counts.get(g as usize).copied().unwrap_or(0) == 0)
            {
                return Err(Error::UnboundMetavariable {
                    name: opi.name().to_string(),
                });
            }
        }
        homogeneous &= opi.is_homogeneous();
        families.push(RuleFamily::new(opi.clone(), matchers));
    }
    Ok(RewriteSystem::new(
        families,
        orientation,
        variant,
        homogeneous,
        nonincreasing,
    ))
}
