//! The averaging identities
//!
//! ```text
//! φ(x1, x2)  = [x1] [x2]   − [[x1] x2]
//! ψ(x1, x2)  = [x1 [x2]]   − [[x1] x2]
//! φ′(x1, x2) = [[[x1] x2]] − [[[x1]] x2]
//! ```
//!
//! their rewriting systems, the irreducible-word basis of the free
//! averaging algebra, and a concrete averaging algebra used as an
//! evaluation oracle.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::engine::{find_redexes, normalize, Orientation, RewriteSystem};
use crate::error::Error;
use crate::exec::Execution;
use crate::linear::{LinComb, Rational};
use crate::opi::{builtin, to_system, Opi};
use crate::terms::{enumerate_words, words_of_degree, Alphabet, Letter, Variant, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Phi,
    Psi,
    Varphi,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::Phi, Family::Psi, Family::Varphi];

    pub fn name(self) -> &'static str {
        match self {
            Family::Phi => "phi",
            Family::Psi => "psi",
            Family::Varphi => "varphi",
        }
    }

    /// The two monomials of the instance at `(u1, u2)`: the written
    /// left-hand side first.
    pub fn monomials(self, u1: &Word, u2: &Word) -> (Word, Word) {
        let b1 = u1.bracket();
        let tail = b1.concat(u2).bracket();
        match self {
            Family::Phi => (b1.concat(&u2.bracket()), tail),
            Family::Psi => (u1.concat(&u2.bracket()).bracket(), tail),
            Family::Varphi => (tail.bracket(), b1.bracket().concat(u2).bracket()),
        }
    }

    pub fn opi(self) -> Opi {
        let name = match self {
            Family::Phi => "averaging_phi",
            Family::Psi => "averaging_psi",
            Family::Varphi => "averaging_varphi",
        };
        builtin(name, None).expect("built-in").remove(0)
    }
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "phi" | "φ" => Ok(Family::Phi),
            "psi" | "ψ" => Ok(Family::Psi),
            "varphi" | "φ′" => Ok(Family::Varphi),
            _ => Err(Error::Usage(format!("unknown family `{s}`"))),
        }
    }
}

/// The rewriting system of the given families. `Orientation::PatternSide(0)`
/// orients every instance by its written left-hand side.
pub fn build_system(
    families: &[Family],
    orientation: Orientation,
    variant: Variant,
) -> RewriteSystem {
    let opis: Vec<Opi> = families.iter().map(|f| f.opi()).collect();
    to_system(&opis, orientation, variant).expect("averaging identities are well-formed")
}

fn nonempty_ok(u: &Word, variant: Variant) -> bool {
    variant == Variant::Unitary || !u.is_one()
}

/// Whether `w` avoids the three excluded shapes `[u1][u2]`, `[u1[u2]]` and
/// `[[[u1]u2]]`, with `u1, u2` ranging over the words of `variant`. Shapes
/// whose instance is the zero polynomial are not excluded.
pub fn irr_pattern(w: &Word, variant: Variant) -> bool {
    let phi = contains_phi_shape(w, variant);
    let psi = contains_psi_shape(w, variant);
    let varphi = contains_varphi_shape(w, variant);
    if variant == Variant::Unitary && varphi {
        // [[[u1] u2]] is already [u1' [u2']] with u1' = 1, u2' = [u1] u2
        debug_assert!(psi, "varphi shape not subsumed in {w:?}");
    }
    !(phi || psi || varphi)
}

fn any_sequence(w: &Word, pred: &mut impl FnMut(&[Letter]) -> bool) -> bool {
    let mut found = false;
    w.for_each_sequence(&mut |_, seq| found = found || pred(seq));
    found
}

fn contains_phi_shape(w: &Word, variant: Variant) -> bool {
    any_sequence(w, &mut |seq| {
        seq.windows(2).any(|p| match (&p[0], &p[1]) {
            (Letter::Br(a), Letter::Br(b)) => nonempty_ok(a, variant) && nonempty_ok(b, variant),
            _ => false,
        })
    })
}

fn contains_psi_shape(w: &Word, variant: Variant) -> bool {
    any_sequence(w, &mut |seq| {
        seq.iter().any(|l| {
            let Some(content) = l.as_bracket() else {
                return false;
            };
            let Some((Letter::Br(u2), u1)) = content.letters().split_last() else {
                return false;
            };
            let nonzero = !(u1.is_empty() && u2.is_one());
            nonzero && nonempty_ok(&Word::new(u1.to_vec()), variant) && nonempty_ok(u2, variant)
        })
    })
}

fn contains_varphi_shape(w: &Word, variant: Variant) -> bool {
    any_sequence(w, &mut |seq| {
        seq.iter().any(|l| {
            let Some([Letter::Br(mid)]) = l.as_bracket().map(|c| c.letters()) else {
                return false;
            };
            let Some((Letter::Br(u1), u2)) = mid.letters().split_first() else {
                return false;
            };
            !u2.is_empty() && nonempty_ok(u1, variant)
        })
    })
}

/// Pattern-irreducible words of degree at most `bound`, in enumeration
/// order.
pub fn irr_enumerate(bound: u32, generators: usize, variant: Variant) -> Vec<Word> {
    enumerate_words(bound, generators, variant)
        .into_iter()
        .filter(|w| irr_pattern(w, variant))
        .collect()
}

pub fn irr_count(degree: u32, generators: usize, variant: Variant) -> usize {
    words_of_degree(degree, generators, variant)
        .iter()
        .filter(|w| irr_pattern(w, variant))
        .count()
}

/// Rational vectors with the pointwise product and the averaging operator
/// `A(v) = v[0]·(1, …, 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvalAlgebra {
    dimension: usize,
}

impl EvalAlgebra {
    pub fn new(dimension: usize) -> Result<Self, Error> {
        if dimension == 0 {
            return Err(Error::DimensionMismatch {
                expected: 1,
                got: 0,
            });
        }
        let alg = EvalAlgebra { dimension };
        let mut rng = ChaCha8Rng::seed_from_u64(dimension as u64);
        for _ in 0..8 {
            let u = random_vector(&mut rng, dimension);
            let v = random_vector(&mut rng, dimension);
            let lhs = alg.mul(&alg.op(&u), &alg.op(&v));
            assert_eq!(lhs, alg.op(&alg.mul(&alg.op(&u), &v)));
            assert_eq!(lhs, alg.op(&alg.mul(&u, &alg.op(&v))));
        }
        Ok(alg)
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn unit(&self) -> Vec<Rational> {
        vec![Rational::one(); self.dimension]
    }

    pub fn mul(&self, u: &[Rational], v: &[Rational]) -> Vec<Rational> {
        u.iter().zip(v).map(|(a, b)| a * b).collect()
    }

    pub fn op(&self, v: &[Rational]) -> Vec<Rational> {
        vec![v[0].clone(); self.dimension]
    }

    fn eval_word(&self, w: &Word, assignment: &[Vec<Rational>]) -> Result<Vec<Rational>, Error> {
        let mut acc = self.unit();
        for l in w.letters() {
            let v = match l {
                Letter::Gen(g) => {
                    let v = assignment
                        .get(*g as usize)
                        .ok_or(Error::MissingAssignment(*g))?;
                    if v.len() != self.dimension {
                        return Err(Error::DimensionMismatch {
                            expected: self.dimension,
                            got: v.len(),
                        });
                    }
                    v.clone()
                }
                Letter::Br(inner) => self.op(&self.eval_word(inner, assignment)?),
            };
            acc = self.mul(&acc, &v);
        }
        Ok(acc)
    }

    /// Evaluates `f` with generator `i` sent to `assignment[i]`.
    pub fn eval(&self, f: &LinComb, assignment: &[Vec<Rational>]) -> Result<Vec<Rational>, Error> {
        let mut out = vec![Rational::zero(); self.dimension];
        for (w, c) in f.iter() {
            for (o, x) in out.iter_mut().zip(self.eval_word(w, assignment)?) {
                *o += c * x;
            }
        }
        Ok(out)
    }

    /// Whether `f` vanishes under every assignment.
    pub fn vanishes(&self, f: &LinComb, assignments: &[Vec<Vec<Rational>>]) -> Result<bool, Error> {
        for a in assignments {
            if self.eval(f, a)?.iter().any(|x| !x.is_zero()) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn random_vector(rng: &mut impl Rng, n: usize) -> Vec<Rational> {
    (0..n)
        .map(|_| {
            Rational::new(
                rng.gen_range(-9i64..=9).into(),
                rng.gen_range(1i64..=5).into(),
            )
        })
        .collect()
}

/// `count` seeded assignments of `generators` random rational vectors.
pub fn random_assignments(
    seed: u64,
    count: usize,
    generators: usize,
    dimension: usize,
) -> Vec<Vec<Vec<Rational>>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            (0..generators)
                .map(|_| random_vector(&mut rng, dimension))
                .collect()
        })
        .collect()
}

/// The quotient product `nf(f·g)`.
pub fn nf_product(
    f: &LinComb,
    g: &LinComb,
    sys: &RewriteSystem,
    budget: usize,
) -> Result<LinComb, Error> {
    Ok(normalize(&f.mul(g), sys, budget)?.normal_form)
}

/// The quotient operator `nf([f])`.
pub fn nf_bracket(f: &LinComb, sys: &RewriteSystem, budget: usize) -> Result<LinComb, Error> {
    Ok(normalize(&f.bracket(), sys, budget)?.normal_form)
}

/// Ideal membership by normalization; decisive only where the system is
/// confluent on the degrees involved.
pub fn member(f: &LinComb, sys: &RewriteSystem, budget: usize) -> Result<bool, Error> {
    Ok(normalize(f, sys, budget)?.normal_form.is_zero())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditRow {
    pub word: Word,
    pub pattern_irr: bool,
    pub engine_irr: bool,
    /// The normal form, or the normalization error (a cycle in Scheme mode).
    pub normal_form: Result<LinComb, Error>,
    pub nf_irreducible: bool,
    /// `w − nf(w)` vanishes in the evaluation algebra.
    pub coset_sound: bool,
}

impl AuditRow {
    pub fn is_mismatch(&self) -> bool {
        self.pattern_irr != self.engine_irr
    }

    pub fn to_json(&self, alphabet: &Alphabet) -> Value {
        let nf = match &self.normal_form {
            Ok(f) => f.display(alphabet).to_string(),
            Err(Error::CycleGuard { .. }) => "cycle".to_string(),
            Err(e) => e.to_string(),
        };
        json!({
            "degree": self.word.degree(),
            "word": alphabet.print(&self.word),
            "pattern_irr": self.pattern_irr,
            "engine_irr": self.engine_irr,
            "nf": nf,
        })
    }
}

#[derive(Clone, Debug)]
pub struct BasisAudit {
    pub rows: Vec<AuditRow>,
}

impl BasisAudit {
    pub fn mismatches(&self) -> impl Iterator<Item = &AuditRow> {
        self.rows.iter().filter(|r| r.is_mismatch())
    }

    pub fn cycles(&self) -> impl Iterator<Item = &AuditRow> {
        self.rows.iter().filter(|r| r.normal_form.is_err())
    }

    /// Rows whose normal form is reducible or not in the word's coset.
    pub fn violations(&self) -> impl Iterator<Item = &AuditRow> {
        self.rows
            .iter()
            .filter(|r| r.normal_form.is_ok() && !(r.nf_irreducible && r.coset_sound))
    }
}

/// Compares engine irreducibility with [`irr_pattern`] on every word up to
/// `bound`, normalizing each word along the way.
pub fn basis_audit(
    bound: u32,
    generators: usize,
    sys: &RewriteSystem,
    budget: usize,
    exec: Execution,
) -> BasisAudit {
    let alg = EvalAlgebra::new(3).expect("dimension 3");
    let assignments = random_assignments(0, 4, generators, 3);
    let words = enumerate_words(bound, generators, sys.variant());
    let rows = exec.map(&words, |w| {
        let normal_form =
            normalize(&LinComb::monomial(w.clone()), sys, budget).map(|n| n.normal_form);
        let (nf_irreducible, coset_sound) = match &normal_form {
            Ok(nf) => (
                nf.support().all(|t| find_redexes(t, sys).is_empty()),
                alg.vanishes(&LinComb::monomial(w.clone()).sub(nf), &assignments)
                    .expect("complete assignment"),
            ),
            Err(_) => (false, false),
        };
        AuditRow {
            word: w.clone(),
            pattern_irr: irr_pattern(w, sys.variant()),
            engine_irr: find_redexes(w, sys).is_empty(),
            normal_form,
            nf_irreducible,
            coset_sound,
        }
    });
    BasisAudit { rows }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear::rational;
    use crate::order::OrderHandle;
    use crate::syntax::parse_poly;

    fn a() -> Alphabet {
        Alphabet::new(["x", "y", "x1", "x2"]).unwrap()
    }

    fn w(s: &str) -> Word {
        a().parse(s).unwrap()
    }

    fn p(s: &str) -> LinComb {
        parse_poly(s, &a()).unwrap()
    }

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| rational(x)).collect()
    }

    #[test]
    fn monomials_match_builtins() {
        let (u1, u2) = (w("x"), w("[y] x"));
        for f in Family::ALL {
            let (l, r) = f.monomials(&u1, &u2);
            let s = f.opi().instantiate(&[u1.clone(), u2.clone()]).unwrap();
            assert_eq!(s, LinComb::monomial(l).sub(&LinComb::monomial(r)));
        }
    }

    #[test]
    fn irr_pattern_examples() {
        use Variant::*;
        assert!(irr_pattern(&w("[[1] x]"), Unitary));
        assert!(!irr_pattern(&w("[x [y]]"), Unitary));
        assert!(irr_pattern(&w("[[x]]"), Nonunitary));
        assert!(!irr_pattern(&w("[[x]]"), Unitary));
        assert!(irr_pattern(&w("[[1]]"), Unitary));
        assert!(!irr_pattern(&w("[1] [1]"), Unitary));
        assert!(!irr_pattern(&w("[[[x] y]]"), Nonunitary));
        assert!(irr_pattern(&w("[[[x]]]"), Nonunitary));
        assert!(irr_pattern(&w("x [[x] y] x"), Nonunitary));
    }

    #[test]
    fn irr_counts() {
        let a1 = Alphabet::standard(1);
        let two: Vec<String> = irr_enumerate(2, 1, Variant::Unitary)
            .iter()
            .filter(|w| w.degree() == 2)
            .map(|w| a1.print(w))
            .collect();
        assert_eq!(two, ["[1] x", "[[1]]", "[x]", "x [1]", "x x"]);
        assert_eq!(irr_count(2, 1, Variant::Unitary), 5);
        assert_eq!(irr_count(2, 1, Variant::Nonunitary), 2);
        assert_eq!(irr_count(0, 1, Variant::Unitary), 1);
    }

    #[test]
    fn eval_examples() {
        let alg = EvalAlgebra::new(2).unwrap();
        let asg = [v(&[2, 3]), v(&[-1, 5])];
        assert_eq!(alg.eval(&p("x"), &asg).unwrap(), v(&[2, 3]));
        assert_eq!(alg.eval(&p("[x]"), &asg).unwrap(), v(&[2, 2]));
        assert_eq!(alg.eval(&p("1"), &asg).unwrap(), v(&[1, 1]));
        assert_eq!(alg.eval(&p("[x] [y] - [[x] y]"), &asg).unwrap(), v(&[0, 0]));
        assert_eq!(alg.eval(&p("x2"), &asg), Err(Error::MissingAssignment(3)));
        assert_eq!(
            alg.eval(&p("x"), &[v(&[1])]),
            Err(Error::DimensionMismatch {
                expected: 2,
                got: 1
            })
        );
        assert!(EvalAlgebra::new(0).is_err());
    }

    #[test]
    fn quotient_arithmetic() {
        let sys = build_system(
            &Family::ALL,
            Orientation::Order(OrderHandle::Dt),
            Variant::Unitary,
        );
        assert_eq!(
            nf_product(&p("[x]"), &p("[y]"), &sys, 100).unwrap(),
            p("[[x] y]")
        );
        assert_eq!(nf_bracket(&p("x"), &sys, 100).unwrap(), p("[x]"));
        let f = p("[x] [y] + 2 x");
        assert_eq!(
            nf_product(&p("1"), &f, &sys, 100).unwrap(),
            normalize(&f, &sys, 100).unwrap().normal_form
        );
        assert!(member(&p("[x] [y] - [[x] y]"), &sys, 100).unwrap());
        assert!(!member(&p("x"), &sys, 100).unwrap());
        let scheme = build_system(&Family::ALL, Orientation::PatternSide(0), Variant::Unitary);
        assert!(member(&p("[[x1] [x2]] - [[[x1] x2]]"), &scheme, 100).unwrap());
    }

    #[test]
    fn empty_alphabet_audit() {
        let sys = build_system(
            &Family::ALL,
            Orientation::Order(OrderHandle::Dt),
            Variant::Unitary,
        );
        let audit = basis_audit(3, 0, &sys, 1000, Execution::Sequential);
        assert_eq!(audit.rows.len(), 1 + 1 + 2 + 5);
        assert!(audit
            .rows
            .iter()
            .all(|r| r.word.generator_counts().is_empty()));
    }
}
