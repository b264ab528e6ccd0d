//! `opgs`: batch front end for the bracketed-word rewriting engine.
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 budget exceeded or
//! undecided verdict, 3 invariant violation.

use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};

use opgs::averaging::{
    basis_audit, build_system, irr_count, irr_enumerate, random_assignments, EvalAlgebra, Family,
};
use opgs::engine::{
    closure, gs_verdict, joinable, local_confluence_report, normalize, one_step_reducts,
    Joinability, Orientation, RewriteSystem, Verdict,
};
use opgs::opi::{builtin, to_system, Opi};
use opgs::order::audit_orientation;
use opgs::syntax::parse_poly;
use opgs::terms::{
    classify, count_words, subword_placements, Placement, PlacementRelation, TwoHoleWord,
};
use opgs::{Alphabet, Error, Execution, LinComb, OrderHandle, Rational, Variant, Word};

#[derive(Parser)]
#[command(
    name = "opgs",
    version,
    about = "Rewriting workbench for bracketed words"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Args)]
struct Opts {
    /// averaging, averaging-novarphi, differential, rb:<weight>, reynolds, or an OPI JSON file
    #[arg(long, global = true, default_value = "averaging")]
    system: String,
    #[arg(long, global = true, value_enum, default_value_t = Mode::Order)]
    mode: Mode,
    #[arg(long, global = true, default_value = "unitary")]
    variant: Variant,
    #[arg(long, global = true, default_value_t = 4)]
    max_degree: u32,
    /// Number of generators; words use x1..xK (or x when K = 1)
    #[arg(long, global = true, default_value_t = 2)]
    generators: usize,
    /// Comma-separated generator names, overriding --generators
    #[arg(long, global = true)]
    alphabet: Option<String>,
    /// Step budget for normalization and vertex budget for closures
    #[arg(long, global = true, default_value_t = 1_000_000, visible_aliases = ["max-steps", "max-vertices"])]
    budget: usize,
    #[arg(long, global = true)]
    json: bool,
    /// Print every rewriting step
    #[arg(long, global = true)]
    trace: bool,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Run sweeps on one thread
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Scheme,
    Order,
}

#[derive(Subcommand)]
enum Command {
    /// Normal form under the deterministic strategy
    Normalize { poly: String },
    /// All one-step reducts
    Reducts { poly: String },
    /// Everything reachable, with normal forms and cycles
    Closure { poly: String },
    /// Whether two polynomials have a common reduct
    Joinable { f: String, g: String },
    /// Bounded local confluence over all words up to --max-degree
    Confluence,
    /// Bounded Gröbner–Shirshov verdict (order mode)
    Gs,
    /// Pattern-irreducible words up to --max-degree
    Basis {
        /// Counts per degree instead of the words
        #[arg(long)]
        count: bool,
        /// Compare pattern and engine irreducibility on every word
        #[arg(long, conflicts_with = "count")]
        audit: bool,
    },
    /// Ideal membership by normalization
    Member { poly: String },
    /// Pattern versus order orientation of one averaging instance
    Orient {
        family: Family,
        u1: String,
        u2: String,
    },
    /// Placements of a factor in a host word
    Placements { host: String, factor: String },
    /// Relation of two placements, written PATH:START:LEN with PATH dot-separated
    Relation {
        host: String,
        p1: String,
        p2: String,
    },
    /// Evaluation invariance of every rewrite edge up to --max-degree
    EvalCheck {
        /// Assignments per edge
        #[arg(long, default_value_t = 20)]
        assignments: usize,
        #[arg(long, default_value_t = 3)]
        dimension: usize,
    },
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    kind: &'static str,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            kind: "usage",
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let (code, kind) = match e {
            Error::BudgetExhausted(_) => (2, "budget"),
            Error::CycleGuard { .. } => (2, "cycle"),
            Error::Syntax { .. } | Error::UnknownGenerator { .. } => (1, "parse"),
            _ => (1, "usage"),
        };
        Failure {
            code,
            kind,
            message: e.to_string(),
        }
    }
}

/// What a command prints and how it exits.
struct Output {
    json: Value,
    text: String,
    code: u8,
}

impl Output {
    fn ok(json: Value, text: impl Into<String>) -> Self {
        Output {
            json,
            text: text.into(),
            code: 0,
        }
    }

    fn with_code(mut self, code: u8) -> Self {
        self.code = code;
        self
    }
}

struct Env {
    opts: Opts,
    alphabet: Alphabet,
    averaging: Option<Vec<Family>>,
    opis: Vec<Opi>,
}

#[derive(Deserialize)]
struct OpiFile {
    name: String,
    arity: usize,
    body: String,
}

impl Env {
    fn new(opts: Opts) -> Result<Self, Failure> {
        let alphabet = match &opts.alphabet {
            Some(names) => Alphabet::new(names.split(',').map(str::trim))?,
            None => Alphabet::standard(opts.generators),
        };
        let (averaging, opis) = match opts.system.as_str() {
            "averaging" => (Some(Family::ALL.to_vec()), builtin("averaging", None)?),
            "averaging-novarphi" => (
                Some(vec![Family::Phi, Family::Psi]),
                builtin("averaging_novarphi", None)?,
            ),
            "differential" | "reynolds" => (None, builtin(&opts.system, None)?),
            s if s.starts_with("rb:") => {
                let weight: Rational = s[3..]
                    .parse()
                    .map_err(|_| Failure::usage(format!("bad weight in `{s}`")))?;
                (None, builtin("rota_baxter", Some(weight))?)
            }
            path => (None, load_opis(path)?),
        };
        Ok(Env {
            opts,
            alphabet,
            averaging,
            opis,
        })
    }

    fn orientation(&self) -> Orientation {
        match self.opts.mode {
            Mode::Scheme => Orientation::PatternSide(0),
            Mode::Order => Orientation::Order(OrderHandle::Dt),
        }
    }

    fn system(&self) -> Result<RewriteSystem, Failure> {
        Ok(to_system(
            &self.opis,
            self.orientation(),
            self.opts.variant,
        )?)
    }

    fn averaging_system(&self, what: &str) -> Result<RewriteSystem, Failure> {
        match &self.averaging {
            Some(families) => Ok(build_system(
                families,
                self.orientation(),
                self.opts.variant,
            )),
            None => Err(Failure::usage(format!("{what} needs an averaging system"))),
        }
    }

    fn exec(&self) -> Execution {
        if self.opts.sequential {
            Execution::Sequential
        } else {
            Execution::Parallel
        }
    }

    /// Generators of the sweep alphabet.
    fn k(&self) -> usize {
        self.alphabet.len()
    }

    fn poly(&self, text: &str) -> Result<LinComb, Failure> {
        Ok(parse_poly(text, &self.alphabet)?)
    }

    fn word(&self, text: &str) -> Result<Word, Failure> {
        Ok(self.alphabet.parse(text)?)
    }

    fn show(&self, f: &LinComb) -> String {
        f.display(&self.alphabet).to_string()
    }
}

fn load_opis(path: &str) -> Result<Vec<Opi>, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("unknown system `{path}`: {e}")))?;
    let value: Value =
        serde_json::from_str(&text).map_err(|e| Failure::usage(format!("{path}: {e}")))?;
    let items = match value {
        Value::Array(items) => items,
        other => vec![other],
    };
    items
        .into_iter()
        .map(|v| {
            let f: OpiFile =
                serde_json::from_value(v).map_err(|e| Failure::usage(format!("{path}: {e}")))?;
            Ok(Opi::parse(f.name, f.arity, &f.body)?)
        })
        .collect()
}

fn parse_placement(text: &str) -> Result<Placement, Failure> {
    let bad = || Failure::usage(format!("placement `{text}` is not PATH:START:LEN"));
    let parts: Vec<&str> = text.split(':').collect();
    let [path, start, len] = parts[..] else {
        return Err(bad());
    };
    let path = if path.is_empty() {
        Vec::new()
    } else {
        path.split('.')
            .map(|p| p.parse().map_err(|_| bad()))
            .collect::<Result<_, _>>()?
    };
    Ok(Placement::new(
        path,
        start.parse().map_err(|_| bad())?,
        len.parse().map_err(|_| bad())?,
    ))
}

fn show_placement(p: &Placement) -> String {
    let path: Vec<String> = p.path.iter().map(|i| i.to_string()).collect();
    format!("{}:{}:{}", path.join("."), p.start, p.len)
}

fn verdict_json(v: Option<bool>) -> Value {
    v.map_or(json!("unknown"), |b| json!(b))
}

fn verdict_text(v: Option<bool>) -> String {
    v.map_or("unknown".to_string(), |b| b.to_string())
}

fn run(cmd: Command, env: &Env) -> Result<Output, Failure> {
    let budget = env.opts.budget;
    match cmd {
        Command::Normalize { poly } => {
            let f = env.poly(&poly)?;
            let sys = env.system()?;
            let n = normalize(&f, &sys, budget)?;
            let mut out = json!({
                "input": env.show(&f),
                "normal_form": env.show(&n.normal_form),
                "steps": n.trace.len(),
            });
            let mut text = String::new();
            if env.opts.trace {
                out["trace"] = n.trace_json(&env.alphabet);
                for (from, step, to) in &n.trace {
                    let rule = &step.redex.rule;
                    let args: Vec<String> =
                        rule.args.iter().map(|a| env.alphabet.print(a)).collect();
                    let _ = writeln!(
                        text,
                        "{} -> {}  [{}({}) at {}]",
                        env.show(from),
                        env.show(to),
                        rule.family,
                        args.join(", "),
                        show_placement(&step.redex.placement)
                    );
                }
            }
            text.push_str(&env.show(&n.normal_form));
            Ok(Output::ok(out, text))
        }
        Command::Reducts { poly } => {
            let f = env.poly(&poly)?;
            let sys = env.system()?;
            let reducts = one_step_reducts(&f, &sys);
            let json = Value::Array(
                reducts
                    .iter()
                    .map(|(step, g)| step.to_json(&f, g, &env.alphabet))
                    .collect(),
            );
            let text = reducts
                .iter()
                .map(|(step, g)| {
                    format!(
                        "{}  [{} at {}]",
                        env.show(g),
                        step.redex.rule.family,
                        show_placement(&step.redex.placement)
                    )
                })
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Output::ok(json, text))
        }
        Command::Closure { poly } => {
            let f = env.poly(&poly)?;
            let c = closure(&f, &env.system()?, budget);
            let nfs: Vec<String> = c.normal_form_values().iter().map(|g| env.show(g)).collect();
            let text = format!(
                "vertices: {}\nedges: {}\nnormal forms: {}\nhas cycle: {}\ntruncated: {}",
                c.vertices.len(),
                c.edges.len(),
                if nfs.is_empty() {
                    "none".to_string()
                } else {
                    nfs.join(", ")
                },
                c.has_cycle(),
                c.truncated
            );
            let code = if c.truncated { 2 } else { 0 };
            Ok(Output::ok(c.to_json(&env.alphabet), text).with_code(code))
        }
        Command::Joinable { f, g } => {
            let (f, g) = (env.poly(&f)?, env.poly(&g)?);
            let j = joinable(&f, &g, &env.system()?, budget);
            let (verdict, witness) = match &j {
                Joinability::Joinable(w) => (Some(true), Some(env.show(w))),
                Joinability::NotJoinable => (Some(false), None),
                Joinability::Unknown => (None, None),
            };
            let mut text = format!("joinable: {}", verdict_text(verdict));
            if let Some(w) = &witness {
                let _ = write!(text, "\nwitness: {w}");
            }
            let code = if verdict.is_none() { 2 } else { 0 };
            Ok(Output::ok(
                json!({ "joinable": verdict_json(verdict), "witness": witness }),
                text,
            )
            .with_code(code))
        }
        Command::Confluence => {
            let sys = env.system()?;
            let r = local_confluence_report(env.opts.max_degree, env.k(), &sys, budget, env.exec());
            let v = r.verdict().as_bool();
            let mut text = format!("locally confluent: {}", verdict_text(v));
            let _ = write!(
                text,
                "\nwords: {}, forks: {}, offenders: {}, unknown: {}",
                r.words_checked,
                r.forks_checked,
                r.offenders.len(),
                r.unknowns.len()
            );
            for f in &r.offenders {
                let _ = write!(
                    text,
                    "\n  {}: {} <- -> {}",
                    env.alphabet.print(&f.word),
                    env.show(&f.left),
                    env.show(&f.right)
                );
            }
            let code = if r.verdict() == Verdict::Unknown {
                2
            } else {
                0
            };
            Ok(Output::ok(r.to_json(&env.alphabet), text).with_code(code))
        }
        Command::Gs => {
            let r = gs_verdict(
                env.opts.max_degree,
                env.k(),
                &env.system()?,
                budget,
                env.exec(),
            )?;
            let text = format!(
                "{}: {}\nlocally confluent: {}\nideal check failures: {}\nirreducible words: {}",
                r.label(),
                verdict_text(r.verdict()),
                verdict_text(r.confluence.verdict().as_bool()),
                r.ideal_failures.len(),
                r.irreducible_words
            );
            let code = if r.verdict().is_none() { 2 } else { 0 };
            Ok(Output::ok(r.to_json(&env.alphabet), text).with_code(code))
        }
        Command::Basis { count, audit } => basis(env, count, audit),
        Command::Member { poly } => {
            let f = env.poly(&poly)?;
            let sys = env.system()?;
            let nf = normalize(&f, &sys, budget)?.normal_form;
            let degree = f.support().map(Word::degree).max().unwrap_or(0);
            let k = env.k().max(
                f.support()
                    .filter_map(Word::max_generator)
                    .max()
                    .map_or(0, |g| g as usize + 1),
            );
            let confluent = local_confluence_report(degree, k, &sys, budget, env.exec()).verdict()
                == Verdict::Confluent;
            let member = confluent.then(|| nf.is_zero());
            let text = match member {
                Some(b) => format!("member: {b}"),
                None => format!(
                    "member: unknown (normal form {}; confluence not established up to degree {degree})",
                    env.show(&nf)
                ),
            };
            let json = json!({
                "member": verdict_json(member),
                "normal_form": env.show(&nf),
                "confluent_up_to_degree": confluent.then_some(degree),
            });
            Ok(Output::ok(json, text).with_code(if member.is_none() { 2 } else { 0 }))
        }
        Command::Orient { family, u1, u2 } => {
            let a = audit_orientation(family, &env.word(&u1)?, &env.word(&u2)?, OrderHandle::Dt)?;
            let text = format!(
                "pattern lhs: {}\norder lhs: {}\nagrees: {}",
                env.alphabet.print(&a.pattern_lhs),
                env.alphabet.print(&a.order_lhs),
                a.agrees
            );
            Ok(Output::ok(a.to_json(&env.alphabet), text))
        }
        Command::Placements { host, factor } => {
            let ps = subword_placements(&env.word(&host)?, &env.word(&factor)?)?;
            let text = ps.iter().map(show_placement).collect::<Vec<_>>().join("\n");
            Ok(Output::ok(json!(ps), text))
        }
        Command::Relation { host, p1, p2 } => {
            let w = env.word(&host)?;
            let (p1, p2) = (parse_placement(&p1)?, parse_placement(&p2)?);
            let rel = classify(&w, &p1, &p2)?;
            let name = match rel {
                PlacementRelation::Separated => "separated",
                PlacementRelation::Nested => "nested",
                PlacementRelation::Intersecting => "intersecting",
            };
            let mut json = json!({ "relation": name });
            let mut text = name.to_string();
            if rel == PlacementRelation::Separated {
                let two = TwoHoleWord::separated_witness(&w, &p1, &p2)?;
                let mut names = env.alphabet.names().to_vec();
                names.extend(["_1".to_string(), "_2".to_string()]);
                let holes = Alphabet::new(names)?;
                let k = env.k() as u32;
                let skeleton = holes.print(&two.fill(&Word::gen(k), &Word::gen(k + 1)));
                json["skeleton"] = json!(skeleton);
                let _ = write!(text, "\nskeleton: {skeleton}");
            }
            Ok(Output::ok(json, text))
        }
        Command::EvalCheck {
            assignments,
            dimension,
        } => eval_check(env, assignments, dimension),
    }
}

fn basis(env: &Env, count: bool, audit: bool) -> Result<Output, Failure> {
    let (d, k, variant) = (env.opts.max_degree, env.k(), env.opts.variant);
    if audit {
        let sys = env.averaging_system("basis --audit")?;
        let report = basis_audit(d, k, &sys, env.opts.budget, env.exec());
        let rows: Vec<Value> = report
            .rows
            .iter()
            .map(|r| r.to_json(&env.alphabet))
            .collect();
        let mismatches: Vec<String> = report
            .mismatches()
            .map(|r| env.alphabet.print(&r.word))
            .collect();
        let violations = report.violations().count();
        let cycles = report.cycles().count();
        let text = format!(
            "words: {}\nmismatches: {}{}\ncycles: {cycles}\nviolations: {violations}",
            report.rows.len(),
            mismatches.len(),
            if mismatches.is_empty() {
                String::new()
            } else {
                format!(" ({})", mismatches.join(", "))
            }
        );
        let code = if violations > 0 { 3 } else { 0 };
        return Ok(Output::ok(Value::Array(rows), text).with_code(code));
    }
    if count {
        let rows: Vec<Value> = (0..=d)
            .map(|n| {
                json!({
                    "degree": n,
                    "words": count_words(n, k, variant).to_string(),
                    "irreducible": irr_count(n, k, variant),
                })
            })
            .collect();
        let text = rows
            .iter()
            .map(|r| {
                format!(
                    "{}\t{}\t{}",
                    r["degree"],
                    r["words"].as_str().unwrap_or(""),
                    r["irreducible"]
                )
            })
            .collect::<Vec<_>>()
            .join("\n");
        return Ok(Output::ok(
            Value::Array(rows),
            format!("degree\twords\tirreducible\n{text}"),
        ));
    }
    let words: Vec<String> = irr_enumerate(d, k, variant)
        .iter()
        .map(|w| env.alphabet.print(w))
        .collect();
    let text = words.join("\n");
    Ok(Output::ok(json!(words), text))
}

fn eval_check(env: &Env, assignments: usize, dimension: usize) -> Result<Output, Failure> {
    let sys = env.averaging_system("eval-check")?;
    let alg = EvalAlgebra::new(dimension)?;
    let k = env.k();
    let words = opgs::terms::enumerate_words(env.opts.max_degree, k, env.opts.variant);
    let seed = env.opts.seed;
    let results = env.exec().map(&words, |w| {
        let c = closure(&LinComb::monomial(w.clone()), &sys, env.opts.budget);
        let asg = random_assignments(seed ^ w.degree() as u64, assignments, k, dimension);
        let bad = c
            .edges
            .iter()
            .filter(|e| {
                asg.iter().any(|a| {
                    alg.eval(&c.vertices[e.from], a).ok() != alg.eval(&c.vertices[e.to], a).ok()
                })
            })
            .count();
        (c.edges.len(), bad, c.truncated)
    });
    let edges: usize = results.iter().map(|r| r.0).sum();
    let failures: usize = results.iter().map(|r| r.1).sum();
    let truncated = results.iter().filter(|r| r.2).count();
    let json = json!({
        "words": words.len(),
        "edges": edges,
        "assignments_per_edge": assignments,
        "dimension": dimension,
        "failures": failures,
        "truncated_words": truncated,
    });
    let text =
        format!("edges checked: {edges}\nfailures: {failures}\ntruncated closures: {truncated}");
    let code = if failures > 0 {
        3
    } else if truncated > 0 {
        2
    } else {
        0
    };
    Ok(Output::ok(json, text).with_code(code))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let json = cli.opts.json;
    let result = Env::new(cli.opts).and_then(|env| run(cli.command, &env));
    match result {
        Ok(out) => {
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&out.json).expect("serializable")
                );
            } else if !out.text.is_empty() {
                println!("{}", out.text);
            }
            ExitCode::from(out.code)
        }
        Err(f) => {
            if json {
                let err = json!({ "error": { "kind": f.kind, "message": f.message } });
                println!(
                    "{}",
                    serde_json::to_string_pretty(&err).expect("serializable")
                );
            } else {
                eprintln!("error: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}
