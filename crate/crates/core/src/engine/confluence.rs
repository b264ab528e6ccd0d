use serde_json::{json, Value};

use super::closure::{closure_with, normalize_with, RedexCache};
use super::{Orientation, RewriteSystem, Step};
use crate::error::Error;
use crate::exec::Execution;
use crate::linear::LinComb;
use crate::terms::{enumerate_words, Alphabet, Word};

/// A pair of one-step reducts of a word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fork {
    pub word: Word,
    pub left: LinComb,
    pub right: LinComb,
    pub left_step: Step,
    pub right_step: Step,
}

impl Fork {
    pub fn to_json(&self, alphabet: &Alphabet) -> Value {
        json!({
            "word": alphabet.print(&self.word),
            "left": self.left.display(alphabet).to_string(),
            "right": self.right.display(alphabet).to_string(),
            "left_rule": self.left_step.redex.rule.to_json(alphabet),
            "left_placement": self.left_step.redex.placement,
            "right_rule": self.right_step.redex.rule.to_json(alphabet),
            "right_placement": self.right_step.redex.placement,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Confluent,
    NotConfluent,
    Unknown,
}

impl Verdict {
    pub fn as_bool(self) -> Option<bool> {
        match self {
            Verdict::Confluent => Some(true),
            Verdict::NotConfluent => Some(false),
            Verdict::Unknown => None,
        }
    }
}

/// Bounded local-confluence check over all words up to a degree.
#[derive(Clone, Debug)]
pub struct ConfluenceReport {
    pub degree_bound: u32,
    pub generators: usize,
    pub orientation: Orientation,
    pub words_checked: usize,
    pub forks_checked: usize,
    pub offenders: Vec<Fork>,
    pub unknowns: Vec<Fork>,
    /// Words whose reachable graph contains a cycle.
    pub cyclic_words: Vec<Word>,
    pub truncated_words: Vec<Word>,
    pub max_vertices: usize,
}

impl ConfluenceReport {
    pub fn verdict(&self) -> Verdict {
        if !self.offenders.is_empty() {
            Verdict::NotConfluent
        } else if !self.unknowns.is_empty() {
            Verdict::Unknown
        } else {
            Verdict::Confluent
        }
    }

    pub fn is_confluent(&self) -> bool {
        self.verdict() == Verdict::Confluent
    }

    pub fn to_json(&self, alphabet: &Alphabet) -> Value {
        let forks = |v: &[Fork]| v.iter().map(|f| f.to_json(alphabet)).collect::<Vec<_>>();
        let words = |v: &[Word]| v.iter().map(|w| alphabet.print(w)).collect::<Vec<_>>();
        json!({
            "verdict": self.verdict().as_bool().map_or(json!("unknown"), |b| json!(b)),
            "degree_bound": self.degree_bound,
            "generators": self.generators,
            "orientation": self.orientation.name(),
            "words_checked": self.words_checked,
            "forks_checked": self.forks_checked,
            "offenders": forks(&self.offenders),
            "unknowns": forks(&self.unknowns),
            "cyclic_words": words(&self.cyclic_words),
            "truncated_words": words(&self.truncated_words),
            "max_vertices": self.max_vertices,
        })
    }
}

struct WordCheck {
    forks: usize,
    offenders: Vec<Fork>,
    unknowns: Vec<Fork>,
    cyclic: bool,
    truncated: bool,
    vertices: usize,
}

fn check_word(w: &Word, sys: &RewriteSystem, budget: usize) -> WordCheck {
    let mut cache = RedexCache::default();
    let report = closure_with(&LinComb::monomial(w.clone()), sys, budget, &mut cache);
    let succ = report.successors();
    let root_edges: Vec<_> = report.edges.iter().filter(|e| e.from == 0).collect();
    let reach: Vec<Vec<bool>> = root_edges
        .iter()
        .map(|e| report.reachable_from(e.to, &succ))
        .collect();
    let mut check = WordCheck {
        forks: 0,
        offenders: Vec::new(),
        unknowns: Vec::new(),
        cyclic: report.has_cycle(),
        truncated: report.truncated,
        vertices: report.vertices.len(),
    };
    for i in 0..root_edges.len() {
        for j in i + 1..root_edges.len() {
            check.forks += 1;
            let (a, b) = (root_edges[i], root_edges[j]);
            if a.to == b.to || reach[i].iter().zip(&reach[j]).any(|(x, y)| *x && *y) {
                continue;
            }
            let fork = Fork {
                word: w.clone(),
                left: report.vertices[a.to].clone(),
                right: report.vertices[b.to].clone(),
                left_step: a.step.clone(),
                right_step: b.step.clone(),
            };
            if report.truncated {
                check.unknowns.push(fork);
            } else {
                check.offenders.push(fork);
            }
        }
    }
    check
}

/// Checks every fork of every word of degree at most `degree_bound` over
/// `generators` generators. Monomial sources suffice for the linear
/// rewriting relation.
pub fn local_confluence_report(
    degree_bound: u32,
    generators: usize,
    sys: &RewriteSystem,
    budget: usize,
    exec: Execution,
) -> ConfluenceReport {
    let words = enumerate_words(degree_bound, generators, sys.variant());
    let checks = exec.map(&words, |w| check_word(w, sys, budget));
    let mut report = ConfluenceReport {
        degree_bound,
        generators,
        orientation: sys.orientation(),
        words_checked: words.len(),
        forks_checked: 0,
        offenders: Vec::new(),
        unknowns: Vec::new(),
        cyclic_words: Vec::new(),
        truncated_words: Vec::new(),
        max_vertices: 0,
    };
    for (w, c) in words.iter().zip(checks) {
        report.forks_checked += c.forks;
        report.offenders.extend(c.offenders);
        report.unknowns.extend(c.unknowns);
        if c.cyclic {
            report.cyclic_words.push(w.clone());
        }
        if c.truncated {
            report.truncated_words.push(w.clone());
        }
        report.max_vertices = report.max_vertices.max(c.vertices);
    }
    report
}

/// A word whose normal form failed the ideal check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealFailure {
    pub word: Word,
    pub normal_form: Option<LinComb>,
    /// What `w − nf(w)` normalizes to, or the error met on the way.
    pub residue: Result<LinComb, Error>,
}

/// Bounded Gröbner–Shirshov check: local confluence together with
/// `w − nf(w) →* 0` for every word up to the bound.
#[derive(Clone, Debug)]
pub struct GsReport {
    pub confluence: ConfluenceReport,
    pub ideal_failures: Vec<IdealFailure>,
    pub irreducible_words: usize,
}

impl GsReport {
    /// `None` when some fork could not be decided within the budget.
    pub fn verdict(&self) -> Option<bool> {
        if !self.ideal_failures.is_empty() {
            return Some(false);
        }
        self.confluence.verdict().as_bool()
    }

    pub fn label(&self) -> String {
        format!("GS basis up to degree {}", self.confluence.degree_bound)
    }

    pub fn to_json(&self, alphabet: &Alphabet) -> Value {
        json!({
            "label": self.label(),
            "verdict": self.verdict().map_or(json!("unknown"), |b| json!(b)),
            "confluence": self.confluence.to_json(alphabet),
            "ideal_failures": self.ideal_failures.iter().map(|f| json!({
                "word": alphabet.print(&f.word),
                "nf": f.normal_form.as_ref().map(|g| g.display(alphabet).to_string()),
                "residue": match &f.residue {
                    Ok(r) => json!(r.display(alphabet).to_string()),
                    Err(e) => json!({ "error": e.to_string() }),
                },
            })).collect::<Vec<_>>(),
            "irreducible_words": self.irreducible_words,
        })
    }
}

pub fn gs_verdict(
    degree_bound: u32,
    generators: usize,
    sys: &RewriteSystem,
    budget: usize,
    exec: Execution,
) -> Result<GsReport, Error> {
    if sys.orientation().order().is_none() {
        return Err(Error::OrderModeRequired);
    }
    let confluence = local_confluence_report(degree_bound, generators, sys, budget, exec);
    let words = enumerate_words(degree_bound, generators, sys.variant());
    let checks = exec.map(&words, |w| {
        let mut cache = RedexCache::default();
        let irreducible = cache.get(w, sys).is_empty();
        let f = LinComb::monomial(w.clone());
        let failure = match normalize_with(&f, sys, budget, &mut cache) {
            Err(e) => Some(IdealFailure {
                word: w.clone(),
                normal_form: None,
                residue: Err(e),
            }),
            Ok(n) => {
                let diff = f.sub(&n.normal_form);
                let residue = normalize_with(&diff, sys, budget, &mut cache).map(|r| r.normal_form);
                match residue {
                    Ok(ref r) if r.is_zero() => None,
                    _ => Some(IdealFailure {
                        word: w.clone(),
                        normal_form: Some(n.normal_form),
                        residue,
                    }),
                }
            }
        };
        (irreducible, failure)
    });
    let irreducible_words = checks.iter().filter(|(irr, _)| *irr).count();
    let ideal_failures = checks.into_iter().filter_map(|(_, f)| f).collect();
    Ok(GsReport {
        confluence,
        ideal_failures,
        irreducible_words,
    })
}
