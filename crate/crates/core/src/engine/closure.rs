use std::collections::{HashMap, HashSet, VecDeque};

use serde_json::{json, Value};

use super::{find_redexes, rewrite_once, Redex, RewriteSystem, Step};
use crate::error::Error;
use crate::linear::LinComb;
use crate::terms::{Alphabet, Word};

#[derive(Clone, Debug)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub step: Step,
}

/// The reachable one-step graph of a polynomial. Vertices are numbered in
/// breadth-first discovery order; vertex 0 is the root.
#[derive(Clone, Debug)]
pub struct ClosureReport {
    pub vertices: Vec<LinComb>,
    pub edges: Vec<Edge>,
    /// Vertices without outgoing edges.
    pub normal_forms: Vec<usize>,
    /// Vertices of one directed cycle, if any was found.
    pub cycle: Option<Vec<usize>>,
    /// The vertex budget cut the exploration short.
    pub truncated: bool,
}

impl ClosureReport {
    pub fn root(&self) -> &LinComb {
        &self.vertices[0]
    }

    pub fn has_cycle(&self) -> bool {
        self.cycle.is_some()
    }

    pub fn budget_used(&self) -> usize {
        self.vertices.len()
    }

    pub fn normal_form_values(&self) -> Vec<&LinComb> {
        self.normal_forms
            .iter()
            .map(|&i| &self.vertices[i])
            .collect()
    }

    pub fn successors(&self) -> Vec<Vec<usize>> {
        let mut succ = vec![Vec::new(); self.vertices.len()];
        for e in &self.edges {
            succ[e.from].push(e.to);
        }
        succ
    }

    /// Vertices reachable from `start` (inclusive), as a membership mask.
    pub fn reachable_from(&self, start: usize, succ: &[Vec<usize>]) -> Vec<bool> {
        let mut seen = vec![false; self.vertices.len()];
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(v) = stack.pop() {
            for &t in &succ[v] {
                if !seen[t] {
                    seen[t] = true;
                    stack.push(t);
                }
            }
        }
        seen
    }

    pub fn index_of(&self, f: &LinComb) -> Option<usize> {
        self.vertices.iter().position(|v| v == f)
    }

    pub fn to_json(&self, alphabet: &Alphabet) -> Value {
        let show = |i: usize| self.vertices[i].display(alphabet).to_string();
        json!({
            "root": show(0),
            "vertices": (0..self.vertices.len()).map(show).collect::<Vec<_>>(),
            "edges": self.edges.iter().map(|e| json!({
                "from": show(e.from),
                "monomial": alphabet.print(&e.step.monomial),
                "rule": e.step.redex.rule.to_json(alphabet),
                "placement": e.step.redex.placement,
                "to": show(e.to),
            })).collect::<Vec<_>>(),
            "normal_forms": self.normal_forms.iter().map(|&i| show(i)).collect::<Vec<_>>(),
            "has_cycle": self.has_cycle(),
            "cycle": self.cycle.as_ref().map(|c| c.iter().map(|&i| show(i)).collect::<Vec<_>>()),
            "truncated": self.truncated,
            "budget_used": self.budget_used(),
        })
    }
}

/// Per-word redex cache for one exploration.
#[derive(Default)]
pub(crate) struct RedexCache {
    map: HashMap<Word, Vec<Redex>>,
}

impl RedexCache {
    pub(crate) fn get(&mut self, w: &Word, sys: &RewriteSystem) -> &[Redex] {
        self.map
            .entry(w.clone())
            .or_insert_with(|| find_redexes(w, sys))
    }
}

pub(crate) fn reducts_cached(
    f: &LinComb,
    sys: &RewriteSystem,
    cache: &mut RedexCache,
) -> Vec<(Step, LinComb)> {
    let mut out = Vec::new();
    for t in f.support().rev() {
        for redex in cache.get(t, sys).to_vec() {
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

/// Breadth-first exploration of everything reachable from `f`, keeping at
/// most `budget` vertices.
pub fn closure(f: &LinComb, sys: &RewriteSystem, budget: usize) -> ClosureReport {
    closure_with(f, sys, budget, &mut RedexCache::default())
}

pub(crate) fn closure_with(
    f: &LinComb,
    sys: &RewriteSystem,
    budget: usize,
    cache: &mut RedexCache,
) -> ClosureReport {
    let budget = budget.max(1);
    let mut vertices = vec![f.clone()];
    let mut index: HashMap<LinComb, usize> = HashMap::new();
    index.insert(f.clone(), 0);
    let mut edges = Vec::new();
    let mut out_degree = vec![0usize];
    let mut truncated = false;
    let mut queue = VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        let current = vertices[v].clone();
        for (step, g) in reducts_cached(&current, sys, cache) {
            out_degree[v] += 1;
            let to = match index.get(&g) {
                Some(&i) => i,
                None => {
                    if vertices.len() >= budget {
                        truncated = true;
                        continue;
                    }
                    let i = vertices.len();
                    index.insert(g.clone(), i);
                    vertices.push(g);
                    out_degree.push(0);
                    queue.push_back(i);
                    i
                }
            };
            edges.push(Edge { from: v, to, step });
        }
    }
    let normal_forms = (0..vertices.len())
        .filter(|&i| out_degree[i] == 0)
        .collect();
    let mut report = ClosureReport {
        vertices,
        edges,
        normal_forms,
        cycle: None,
        truncated,
    };
    report.cycle = find_cycle(&report.successors());
    report
}

/// One directed cycle of the graph, by iterative depth-first search.
fn find_cycle(succ: &[Vec<usize>]) -> Option<Vec<usize>> {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        New,
        Active,
        Done,
    }
    let n = succ.len();
    let mut mark = vec![Mark::New; n];
    for root in 0..n {
        if mark[root] != Mark::New {
            continue;
        }
        let mut stack: Vec<(usize, usize)> = vec![(root, 0)];
        mark[root] = Mark::Active;
        while let Some(&mut (v, ref mut next)) = stack.last_mut() {
            if let Some(&t) = succ[v].get(*next) {
                *next += 1;
                match mark[t] {
                    Mark::New => {
                        mark[t] = Mark::Active;
                        stack.push((t, 0));
                    }
                    Mark::Active => {
                        let pos = stack.iter().position(|&(u, _)| u == t).expect("on stack");
                        return Some(stack[pos..].iter().map(|&(u, _)| u).collect());
                    }
                    Mark::Done => {}
                }
            } else {
                mark[v] = Mark::Done;
                stack.pop();
            }
        }
    }
    None
}

/// Result of the deterministic normalization strategy.
#[derive(Clone, Debug)]
pub struct Normalization {
    pub normal_form: LinComb,
    /// `(from, step, to)` for every step taken.
    pub trace: Vec<(LinComb, Step, LinComb)>,
}

impl Normalization {
    pub fn trace_json(&self, alphabet: &Alphabet) -> Value {
        Value::Array(
            self.trace
                .iter()
                .map(|(from, step, to)| step.to_json(from, to, alphabet))
                .collect(),
        )
    }
}

/// Rewrites the dT-greatest reducible support monomial at its first redex
/// until no redex remains. Fails after `budget` steps or when a state
/// repeats.
pub fn normalize(f: &LinComb, sys: &RewriteSystem, budget: usize) -> Result<Normalization, Error> {
    normalize_with(f, sys, budget, &mut RedexCache::default())
}

pub(crate) fn normalize_with(
    f: &LinComb,
    sys: &RewriteSystem,
    budget: usize,
    cache: &mut RedexCache,
) -> Result<Normalization, Error> {
    let mut current = f.clone();
    let mut seen: HashSet<LinComb> = HashSet::from([current.clone()]);
    let mut trace = Vec::new();
    loop {
        let mut chosen = None;
        for t in current.support().rev() {
            if let Some(r) = cache.get(t, sys).first() {
                chosen = Some((t.clone(), r.clone()));
                break;
            }
        }
        let Some((t, redex)) = chosen else {
            return Ok(Normalization {
                normal_form: current,
                trace,
            });
        };
        if trace.len() >= budget {
            return Err(Error::BudgetExhausted(budget));
        }
        let next = rewrite_once(&current, &t, &redex)?;
        let step = Step { monomial: t, redex };
        trace.push((current, step, next.clone()));
        if !seen.insert(next.clone()) {
            return Err(Error::CycleGuard { steps: trace.len() });
        }
        current = next;
    }
}

/// Three-valued joinability.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Joinability {
    Joinable(LinComb),
    NotJoinable,
    Unknown,
}

impl Joinability {
    pub fn is_joinable(&self) -> bool {
        matches!(self, Joinability::Joinable(_))
    }
}

/// Decides `f ↓ g` by intersecting the reachable sets. The witness is the
/// first common reduct in `f`'s exploration order.
pub fn joinable(f: &LinComb, g: &LinComb, sys: &RewriteSystem, budget: usize) -> Joinability {
    let mut cache = RedexCache::default();
    let cf = closure_with(f, sys, budget, &mut cache);
    let cg = closure_with(g, sys, budget, &mut cache);
    let reach_g: HashSet<&LinComb> = cg.vertices.iter().collect();
    match cf.vertices.iter().find(|v| reach_g.contains(v)) {
        Some(w) => Joinability::Joinable(w.clone()),
        None if cf.truncated || cg.truncated => Joinability::Unknown,
        None => Joinability::NotJoinable,
    }
}

#[cfg(test)]
mod tests {
    use super::find_cycle;

    #[test]
    fn cycle_detection() {
        assert_eq!(find_cycle(&[vec![1], vec![2], vec![]]), None);
        assert_eq!(find_cycle(&[vec![1], vec![0]]), Some(vec![0, 1]));
        let c = find_cycle(&[vec![1, 2], vec![], vec![3], vec![2]]).unwrap();
        assert_eq!(c, vec![2, 3]);
        assert_eq!(find_cycle(&[vec![1, 1], vec![]]), None);
    }
}
